//! Root vectors along a reduced word and the PBW bases `F^low`, `F^up`.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rootdata::{word_to_json, RootVec, WeylWord};
use crate::scalars::RatFunc;
use crate::uqfull::QuantumGroup;
use crate::uqminus::FElement;

/// A composition `c ∈ Z_{≥0}^ℓ`; the derived order is the left
/// lexicographic order.
pub type Composition = Vec<i64>;

/// Reduced word with its positive roots and root vectors
/// `F_{β_k} = T_{i_1} ⋯ T_{i_{k-1}}(f_{i_k})`.
pub struct PbwChart {
    word: WeylWord,
    roots: Vec<RootVec>,
    rootvecs: Vec<FElement>,
    powers: RwLock<HashMap<(usize, i64), FElement>>,
    lows: RwLock<HashMap<Composition, FElement>>,
}

impl std::fmt::Debug for PbwChart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PbwChart({:?})", self.word)
    }
}

/// Right lexicographic comparison: compare from the last entry.
pub fn right_lex_less(a: &[i64], b: &[i64]) -> bool {
    a.iter().rev().lt(b.iter().rev())
}

pub fn reversed(c: &[i64]) -> Composition {
    c.iter().rev().copied().collect()
}

/// `∏_k ∏_{j=1}^{c_k} (1 - q_{i_k}^{2j})`, the reciprocal of the PBW norm.
pub fn inverse_norm(qg: &QuantumGroup, word: &[usize], c: &[i64]) -> RatFunc {
    let mut acc = RatFunc::one();
    for (k, &ck) in c.iter().enumerate() {
        let d = qg.cartan().d(word[k]);
        for j in 1..=ck {
            acc = &acc * &(&RatFunc::one() - &RatFunc::q_pow(2 * d * j));
        }
    }
    acc
}

impl PbwChart {
    pub fn new(qg: &QuantumGroup, word: &[usize]) -> Result<Self> {
        let roots = qg.cartan().positive_roots_along(word)?;
        let mut rootvecs = Vec::with_capacity(word.len());
        for k in 0..word.len() {
            let img = qg.braid_word(&word[..k], 1, &qg.f(word[k]));
            let x = img.to_fminus().ok_or_else(|| {
                Error::Assertion(format!("root vector {} of {:?} is not in U_q^-: {img}", k + 1, word))
            })?;
            rootvecs.push(x);
        }
        Ok(PbwChart {
            word: word.to_vec(),
            roots,
            rootvecs,
            powers: RwLock::new(HashMap::new()),
            lows: RwLock::new(HashMap::new()),
        })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }

    pub fn rootvecs(&self) -> &[FElement] {
        &self.rootvecs
    }

    /// Weight `ν` (with `wt = -ν`) of `F^low(c)`.
    pub fn weight_of(&self, c: &[i64]) -> RootVec {
        let n = self.roots.first().map_or(0, |r| r.len());
        let mut nu = vec![0; n];
        for (k, &ck) in c.iter().enumerate() {
            for (i, x) in self.roots[k].iter().enumerate() {
                nu[i] += ck * x;
            }
        }
        nu
    }

    /// Every `c` with `Σ c_k β_k = ν`, in left lexicographic order.
    pub fn compositions(&self, nu: &[i64]) -> Vec<Composition> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.len()];
        let mut rem = nu.to_vec();
        self.compose(0, &mut rem, &mut cur, &mut out);
        out.sort();
        out
    }

    fn compose(&self, k: usize, rem: &mut Vec<i64>, cur: &mut Composition, out: &mut Vec<Composition>) {
        if k == self.len() {
            if rem.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let beta = &self.roots[k];
        let mut n = 0;
        loop {
            cur[k] = n;
            self.compose(k + 1, rem, cur, out);
            if beta.iter().zip(rem.iter()).any(|(b, r)| r < b) {
                break;
            }
            for (r, b) in rem.iter_mut().zip(beta) {
                *r -= b;
            }
            n += 1;
        }
        for (r, b) in rem.iter_mut().zip(beta) {
            *r += b * n;
        }
        cur[k] = 0;
    }

    /// All nonzero weights `ν` of height at most `max_height` occurring in
    /// the chart, in increasing (height, lexicographic) order.
    pub fn weights_up_to(&self, max_height: i64) -> Vec<RootVec> {
        let n = self.roots.first().map_or(0, |r| r.len());
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![(0usize, vec![0i64; n])];
        while let Some((k, nu)) = stack.pop() {
            if k == self.len() {
                if nu.iter().any(|&x| x != 0) {
                    seen.insert((nu.iter().sum::<i64>(), nu));
                }
                continue;
            }
            let mut cur = nu;
            loop {
                stack.push((k + 1, cur.clone()));
                let next: RootVec = cur.iter().zip(&self.roots[k]).map(|(a, b)| a + b).collect();
                if next.iter().sum::<i64>() > max_height {
                    break;
                }
                cur = next;
            }
        }
        seen.into_iter().map(|(_, nu)| nu).collect()
    }

    /// Divided power `F_{β_k}^{(n)}`.
    fn divided_power(&self, qg: &QuantumGroup, k: usize, n: i64) -> FElement {
        if n == 0 {
            return FElement::one();
        }
        if let Some(x) = self.powers.read().unwrap().get(&(k, n)) {
            return x.clone();
        }
        let d = qg.cartan().d(self.word[k]);
        let prev = self.divided_power(qg, k, n - 1);
        // F^{(n)} = F^{(n-1)} F / [n]
        let qn = crate::scalars::qint(n, d).to_ratfunc();
        let x = qg.f_mul(&prev, &self.rootvecs[k]).scale(&qn.inv().unwrap());
        self.powers.write().unwrap().entry((k, n)).or_insert(x).clone()
    }

    /// `F^low(c) = F_{β_1}^{(c_1)} ⋯ F_{β_ℓ}^{(c_ℓ)}`.
    pub fn f_low(&self, qg: &QuantumGroup, c: &[i64]) -> Result<FElement> {
        if c.len() != self.len() {
            return Err(Error::Precondition(format!(
                "composition of length {} for a chart of length {}",
                c.len(),
                self.len()
            )));
        }
        if let Some(x) = self.lows.read().unwrap().get(c) {
            return Ok(x.clone());
        }
        let mut acc = FElement::one();
        for (k, &ck) in c.iter().enumerate() {
            if ck > 0 {
                acc = qg.f_mul(&acc, &self.divided_power(qg, k, ck));
            }
        }
        Ok(self.lows.write().unwrap().entry(c.to_vec()).or_insert(acc).clone())
    }

    /// `F^up(c) = F^low(c) / (F^low(c), F^low(c))_L`, with the norm taken
    /// from the closed product formula and checked against the form.
    pub fn f_up(&self, qg: &QuantumGroup, c: &[i64]) -> Result<FElement> {
        let low = self.f_low(qg, c)?;
        let inv = inverse_norm(qg, &self.word, c);
        let direct = qg.form_l(&low, &low);
        if &direct * &inv != RatFunc::one() {
            return Err(Error::Assertion(format!(
                "PBW norm mismatch at c={c:?}: form gives {direct}, product formula gives 1/({inv})"
            )));
        }
        Ok(low.scale(&inv))
    }

    /// Coordinates of `x` in the dual PBW basis together with the residual
    /// `x - Σ coeffs[c] F^up(c)` (zero iff `x` lies in the subalgebra).
    pub fn expand(&self, qg: &QuantumGroup, x: &FElement) -> Result<PbwCoeffs> {
        let mut coeffs = BTreeMap::new();
        let mut recon = FElement::zero();
        for (nu, comp) in x.homogeneous_components(qg.rank()) {
            for c in self.compositions(&nu) {
                let k = qg.form_l(&comp, &self.f_low(qg, &c)?);
                if !k.is_zero() {
                    recon = recon.add(&self.f_up(qg, &c)?.scale(&k));
                    coeffs.insert(c, k);
                }
            }
        }
        let residual = qg.f_reduce(&x.sub(&recon));
        Ok(PbwCoeffs { word: self.word.clone(), coeffs, residual })
    }

    /// `Σ coeffs[c] F^up(c)`.
    pub fn assemble(&self, qg: &QuantumGroup, coeffs: &BTreeMap<Composition, RatFunc>) -> Result<FElement> {
        let mut x = FElement::zero();
        for (c, k) in coeffs {
            x = x.add(&self.f_up(qg, c)?.scale(k));
        }
        Ok(x)
    }
}

/// Dual PBW coordinates `x = Σ coeffs[c] F^up(c, i)` (+ residual).
#[derive(Clone, Debug, PartialEq)]
pub struct PbwCoeffs {
    pub word: WeylWord,
    pub coeffs: BTreeMap<Composition, RatFunc>,
    pub residual: FElement,
}

impl PbwCoeffs {
    pub fn to_json(&self) -> Value {
        json!({
            "word": word_to_json(&self.word),
            "coeffs": self.coeffs.iter().map(|(c, k)| json!([c, k.to_json()])).collect::<Vec<_>>(),
            "residual_zero": self.residual.is_empty(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanDatum;

    fn setup(name: &str, word: &[usize]) -> (QuantumGroup, PbwChart) {
        let qg = QuantumGroup::new(CartanDatum::builtin(name).unwrap());
        let ch = PbwChart::new(&qg, word).unwrap();
        (qg, ch)
    }

    fn q(k: i64) -> RatFunc {
        RatFunc::q_pow(k)
    }

    #[test]
    fn a2_root_vectors() {
        let (qg, ch) = setup("A2", &[0, 1, 0]);
        let expect = FElement::word(&[1, 0]).sub(&FElement::word(&[0, 1]).scale(&q(1)));
        assert_eq!(ch.rootvecs()[0], FElement::word(&[0]));
        assert!(qg.f_equal(&ch.rootvecs()[1], &expect));
        assert_eq!(ch.rootvecs()[2], FElement::word(&[1]));
        assert!(PbwChart::new(&qg, &[0, 0]).is_err());
    }

    #[test]
    fn a2_pbw_elements() {
        let (qg, ch) = setup("A2", &[0, 1, 0]);
        let d = &RatFunc::one() - &q(2);
        assert_eq!(ch.f_low(&qg, &[0, 0, 0]).unwrap(), FElement::one());
        assert_eq!(ch.f_low(&qg, &[1, 0, 1]).unwrap(), FElement::word(&[0, 1]));
        assert_eq!(ch.f_up(&qg, &[1, 0, 1]).unwrap(), FElement::word(&[0, 1]).scale(&(&d * &d)));
        let expect = FElement::word(&[1, 0]).sub(&FElement::word(&[0, 1]).scale(&q(1))).scale(&d);
        assert!(qg.f_equal(&ch.f_up(&qg, &[0, 1, 0]).unwrap(), &expect));
    }

    #[test]
    fn compositions_in_order() {
        let (_, ch) = setup("A2", &[0, 1, 0]);
        assert_eq!(ch.compositions(&[1, 1]), vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert_eq!(ch.compositions(&[0, 0]), vec![vec![0, 0, 0]]);
        assert_eq!(ch.compositions(&[1, 0]), vec![vec![1, 0, 0]]);
        assert_eq!(ch.weights_up_to(2), vec![vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn expansion_examples() {
        let (qg, ch) = setup("A2", &[0, 1, 0]);
        let d = &RatFunc::one() - &q(2);
        let d2 = &d * &d;
        let e = ch.expand(&qg, &FElement::word(&[0, 1])).unwrap();
        assert_eq!(e.coeffs, BTreeMap::from([(vec![1, 0, 1], d2.inv().unwrap())]));
        assert!(e.residual.is_empty());
        let e = ch.expand(&qg, &FElement::word(&[1, 0])).unwrap();
        let expect = BTreeMap::from([
            (vec![0, 1, 0], d.inv().unwrap()),
            (vec![1, 0, 1], q(1).checked_div(&d2).unwrap()),
        ]);
        assert_eq!(e.coeffs, expect);
        assert!(e.residual.is_empty());
        let up = ch.f_up(&qg, &[0, 1, 0]).unwrap();
        let e = ch.expand(&qg, &up).unwrap();
        assert_eq!(e.coeffs, BTreeMap::from([(vec![0, 1, 0], RatFunc::one())]));
    }

    #[test]
    fn residual_outside_subalgebra() {
        let (qg, ch) = setup("A2", &[0]);
        let e = ch.expand(&qg, &FElement::word(&[1])).unwrap();
        assert!(e.coeffs.is_empty());
        assert!(!e.residual.is_empty());
    }
}
