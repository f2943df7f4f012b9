//! Checks for the quantum twist map `Θ_{w^{-1}}` on `U_q^-(w)`: root
//! vectors, dual PBW reversal, the dual canonical basis bijection, the
//! reverse-lex coefficient table and the cofinite part.

use serde_json::{json, Value};

use crate::dcb::{dcb_slice, DcbSlice, LaurentMatrix};
use crate::error::{Error, Result};
use std::collections::HashMap;

use crate::pbw::{inverse_norm, reversed, right_lex_less, Composition, PbwChart};
use crate::rootdata::{word_to_json, RootVec, WeylWord};
use crate::scalars::{qfactorial, RatFunc};
use crate::uqfull::{QuantumGroup, UqElement};
use crate::uqminus::{DualVector, FElement};

pub fn reversed_word(w: &[usize]) -> WeylWord {
    w.iter().rev().copied().collect()
}

/// `Θ_{w^{-1}}(x)` computed in the full algebra, where `word` is a reduced
/// word of `w`; fails if the image leaves `U_q^-`. Slow once the images of
/// the generators mix `e`'s and `f`'s.
pub fn theta_inverse_direct(qg: &QuantumGroup, word: &[usize], x: &FElement) -> Result<FElement> {
    let y = qg.theta(&reversed_word(word), &qg.lift(x));
    y.to_fminus()
        .ok_or_else(|| Error::Assertion(format!("Θ_(w^-1) of an element of U_q^-(w) left U_q^-: {y}")))
}

/// `Θ_{w^{-1}}` on `U_q^-(w)` through dual PBW coordinates: only the root
/// vectors go through the full algebra, the rest is anti-multiplicativity.
pub struct TwistMap<'a> {
    qg: &'a QuantumGroup,
    chart: &'a PbwChart,
    images: Vec<FElement>,
}

impl<'a> TwistMap<'a> {
    pub fn new(qg: &'a QuantumGroup, chart: &'a PbwChart) -> Result<Self> {
        let images = chart
            .rootvecs()
            .iter()
            .map(|f| theta_inverse_direct(qg, chart.word(), f))
            .collect::<Result<Vec<_>>>()?;
        Ok(TwistMap { qg, chart, images })
    }

    pub fn images(&self) -> &[FElement] {
        &self.images
    }

    pub fn apply(&self, x: &FElement) -> Result<FElement> {
        let qg = self.qg;
        let exp = self.chart.expand(qg, x)?;
        if !exp.residual.is_empty() {
            return Err(Error::Precondition(format!("element is not in U_q^-(w) for w = {:?}", self.chart.word())));
        }
        let mut powers: HashMap<(usize, i64), FElement> = HashMap::new();
        let mut out = FElement::zero();
        for (c, k) in &exp.coeffs {
            let mut term = FElement::one();
            for j in (0..c.len()).rev() {
                if c[j] == 0 {
                    continue;
                }
                let p = match powers.get(&(j, c[j])) {
                    Some(p) => p.clone(),
                    None => {
                        let mut p = FElement::one();
                        for _ in 0..c[j] {
                            p = qg.f_mul(&p, &self.images[j]);
                        }
                        let fact = qfactorial(c[j], qg.cartan().d(self.chart.word()[j])).to_ratfunc();
                        let p = p.scale(&fact.inv()?);
                        powers.insert((j, c[j]), p.clone());
                        p
                    }
                };
                term = qg.f_mul(&term, &p);
            }
            let scale = k * &inverse_norm(qg, self.chart.word(), c);
            out = out.add(&term.scale(&scale));
        }
        Ok(qg.f_reduce(&out))
    }
}

/// `Θ_{w^{-1}}(x)` for `x ∈ U_q^-(w)`, where `word` is a reduced word of `w`.
pub fn theta_inverse(qg: &QuantumGroup, word: &[usize], x: &FElement) -> Result<FElement> {
    let chart = PbwChart::new(qg, word)?;
    TwistMap::new(qg, &chart)?.apply(x)
}

fn same(qg: &QuantumGroup, x: &FElement, y: &FElement) -> Result<(DualVector, DualVector, bool)> {
    let a = qg.dual_vector(x)?;
    let b = qg.dual_vector(y)?;
    let eq = a == b;
    Ok((a, b, eq))
}

/// `Θ_{w^{-1}}(T_{i_1}⋯T_{i_{k-1}}(f_{i_k})) = T_{i_ℓ}⋯T_{i_{k+1}}(f_{i_k})`
/// for every `k`; one flag per `k`.
pub fn verify_rootvector_images(qg: &QuantumGroup, word: &[usize]) -> Result<Vec<bool>> {
    let chart = PbwChart::new(qg, word)?;
    let mut out = Vec::with_capacity(word.len());
    for k in 0..word.len() {
        let lhs = theta_inverse_direct(qg, word, &chart.rootvecs()[k])?;
        let rhs = qg
            .braid_word(&reversed_word(&word[k + 1..]), 1, &qg.f(word[k]))
            .to_fminus()
            .ok_or_else(|| Error::Assertion(format!("root vector of the reversed word left U_q^- at k={}", k + 1)))?;
        out.push(same(qg, &lhs, &rhs)?.2);
    }
    Ok(out)
}

/// `Θ_{w^{-1}}(F^up(c, i)) = F^up(c^rev, i^rev)`.
pub fn verify_pbw_reversal(qg: &QuantumGroup, word: &[usize], c: &[i64]) -> Result<bool> {
    let chart = PbwChart::new(qg, word)?;
    let rev = PbwChart::new(qg, &reversed_word(word))?;
    verify_pbw_reversal_in(qg, &chart, &rev, c)
}

pub fn verify_pbw_reversal_in(qg: &QuantumGroup, chart: &PbwChart, rev: &PbwChart, c: &[i64]) -> Result<bool> {
    let lhs = theta_inverse(qg, chart.word(), &chart.f_up(qg, c)?)?;
    let rhs = rev.f_up(qg, &reversed(c))?;
    Ok(same(qg, &lhs, &rhs)?.2)
}

#[derive(Clone, Debug)]
pub struct TwistEntry {
    pub label: Composition,
    pub lhs: DualVector,
    pub rhs: DualVector,
    pub equal: bool,
    pub sigma_commutes: bool,
}

#[derive(Clone, Debug)]
pub struct TwistReport {
    pub word: WeylWord,
    pub nu: RootVec,
    pub entries: Vec<TwistEntry>,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.equal && e.sigma_commutes)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "word": word_to_json(&self.word),
            "weight": self.nu.iter().map(|x| -x).collect::<Vec<_>>(),
            "passed": self.passed(),
            "labels": self.entries.iter().map(|e| json!({
                "c": e.label,
                "c_rev": reversed(&e.label),
                "lhs": e.lhs.to_json(),
                "rhs": e.rhs.to_json(),
                "equal": e.equal,
                "sigma_commutes": e.sigma_commutes,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Weight of the reversed slice: `ν' = -w^{-1} ν`.
pub fn reversed_weight(qg: &QuantumGroup, word: &[usize], nu: &[i64]) -> RootVec {
    qg.cartan().act_root(&reversed_word(word), nu).iter().map(|x| -x).collect()
}

/// Both slices of a twist comparison.
pub fn twist_slices(qg: &QuantumGroup, word: &[usize], nu: &[i64]) -> Result<(PbwChart, DcbSlice, PbwChart, DcbSlice)> {
    let chart = PbwChart::new(qg, word)?;
    let rev = PbwChart::new(qg, &reversed_word(word))?;
    let slice = dcb_slice(qg, &chart, nu)?;
    let rslice = dcb_slice(qg, &rev, &reversed_weight(qg, word, nu))?;
    if rslice.labels.len() != slice.labels.len() {
        return Err(Error::Assertion("reversed slice has a different size".into()));
    }
    Ok((chart, slice, rev, rslice))
}

/// `Θ_{w^{-1}}(G^up(b(c, i))) = G^up(b(c^rev, i^rev))` for every label of
/// the slice, plus `Θσ = σΘ` on each element.
pub fn verify_dcb_twist(qg: &QuantumGroup, word: &[usize], nu: &[i64]) -> Result<TwistReport> {
    let (chart, slice, _rev, rslice) = twist_slices(qg, word, nu)?;
    let theta = TwistMap::new(qg, &chart)?;
    let mut entries = Vec::new();
    for (c, g) in slice.labels.iter().zip(&slice.elements) {
        let lhs = theta.apply(g)?;
        let rhs = rslice
            .element(&reversed(c))
            .ok_or_else(|| Error::Assertion(format!("reversed label of {c:?} missing")))?;
        let (a, b, equal) = same(qg, &lhs, rhs)?;
        let ts = theta.apply(&qg.sigma(g)?)?;
        let st = qg.sigma(&lhs)?;
        let sigma_commutes = qg.f_equal(&ts, &st);
        entries.push(TwistEntry { label: c.clone(), lhs: a, rhs: b, equal, sigma_commutes });
    }
    Ok(TwistReport { word: word.to_vec(), nu: nu.to_vec(), entries })
}

/// `[F^up(c, i) : G^up(b(c', i))]` against its reversed counterpart.
#[derive(Clone, Debug)]
pub struct RevLexTable {
    pub word: WeylWord,
    pub nu: RootVec,
    pub labels: Vec<Composition>,
    /// `coeffs[c][c']` in the chart of `i`
    pub coeffs: LaurentMatrix,
    pub reversal_ok: bool,
    pub support_ok: bool,
}

impl RevLexTable {
    pub fn passed(&self) -> bool {
        self.reversal_ok && self.support_ok
    }

    pub fn to_json(&self) -> Value {
        let mut rows = Vec::new();
        for (a, c) in self.labels.iter().enumerate() {
            for (b, c2) in self.labels.iter().enumerate() {
                if !self.coeffs[a][b].is_zero() {
                    rows.push(json!({"c": c, "c_prime": c2, "coeff": self.coeffs[a][b].to_json()}));
                }
            }
        }
        json!({
            "word": word_to_json(&self.word),
            "weight": self.nu.iter().map(|x| -x).collect::<Vec<_>>(),
            "passed": self.passed(),
            "reversal": self.reversal_ok,
            "support": self.support_ok,
            "coefficients": rows,
        })
    }
}

pub fn reverse_coeff_table(qg: &QuantumGroup, word: &[usize], nu: &[i64]) -> Result<RevLexTable> {
    let (_chart, slice, _rev, rslice) = twist_slices(qg, word, nu)?;
    let coeffs = slice.inverse_expansion();
    let rcoeffs = rslice.inverse_expansion();
    let mut reversal_ok = true;
    let mut support_ok = true;
    for (a, c) in slice.labels.iter().enumerate() {
        let ra = rslice.position(&reversed(c)).ok_or_else(|| Error::Assertion("reversed label missing".into()))?;
        for (b, c2) in slice.labels.iter().enumerate() {
            let rb = rslice.position(&reversed(c2)).ok_or_else(|| Error::Assertion("reversed label missing".into()))?;
            let x = &coeffs[a][b];
            if x != &rcoeffs[ra][rb] {
                reversal_ok = false;
            }
            if a == b {
                support_ok &= x.is_one();
            } else if !x.is_zero() {
                support_ok &= c2 < c && right_lex_less(c2, c) && x.min_exp().is_some_and(|e| e >= 1);
            }
        }
    }
    Ok(RevLexTable { word: word.to_vec(), nu: nu.to_vec(), labels: slice.labels, coeffs, reversal_ok, support_ok })
}

/// Outcome of the cofinite check for one element.
#[derive(Clone, Debug)]
pub struct CofiniteReport {
    pub word: WeylWord,
    /// `β_w = -w^{-1} wt x`
    pub beta: RootVec,
    pub sign: i64,
    pub q_exponent: i64,
    /// the dual canonical basis element `Z` with
    /// `Θ_{w^{-1}}(x) = ± q^e Z^∨ t_β`
    pub remainder: FElement,
    /// `Z = *(T_w^{-1} x)`
    pub matches_reflection: bool,
    /// label of `Z` in the comparison slice
    pub label: Option<Composition>,
}

impl CofiniteReport {
    pub fn passed(&self) -> bool {
        self.matches_reflection && self.label.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "word": word_to_json(&self.word),
            "beta": self.beta,
            "sign": self.sign,
            "q_exponent": self.q_exponent,
            "remainder": self.remainder.to_json(),
            "matches_reflection": self.matches_reflection,
            "label": self.label,
            "passed": self.passed(),
        })
    }
}

/// For `x ∈ U_q^- ∩ T_w(U_q^-)`, strip the predicted scalar and `t_β` from
/// `Θ_{w^{-1}}(x)`, apply ∨, and locate the remainder in the dual canonical
/// basis slice of `chart` (whose subalgebra must contain the weight).
pub fn cofinite_twist_check(qg: &QuantumGroup, w: &[usize], x: &FElement, chart: &PbwChart) -> Result<CofiniteReport> {
    let c = qg.cartan();
    c.check_word(w)?;
    let n = qg.rank();
    let nu = x
        .weight(n)
        .ok_or_else(|| Error::Precondition("cofinite check needs a homogeneous element".into()))?;
    let pulled = qg.braid_word(w, -1, &qg.lift(x));
    let pulled = pulled
        .to_fminus()
        .ok_or_else(|| Error::Precondition(format!("element is not in T_w(U_q^-): T_w^-1(x) = {pulled}")))?;
    let beta = c.act_root(&reversed_word(w), &nu);
    if beta.iter().any(|&b| b < 0) {
        return Err(Error::Assertion(format!("β = {beta:?} is not in Q_+")));
    }
    let ht: i64 = beta.iter().sum();
    let sign = if ht % 2 == 0 { 1 } else { -1 };
    let bb = c.root_pair(&beta, &beta);
    let q_exponent = bb / 2 - c.rho_pair(&beta);
    let y = qg.theta(&reversed_word(w), &qg.lift(x));
    let scalar = &RatFunc::from_int(sign) * &RatFunc::q_pow(q_exponent);
    let stripped = qg
        .mul(&y, &UqElement::k(beta.iter().map(|b| -b).collect()))
        .scale(&scalar.inv()?);
    let remainder = qg
        .vee(&stripped)
        .to_fminus()
        .ok_or_else(|| Error::Assertion(format!("Θ_(w^-1)(x) is not of the form Z^∨ t_β: {y}")))?;
    let remainder = qg.f_reduce(&remainder);
    let matches_reflection = qg.f_equal(&remainder, &pulled.star());
    let label = if remainder.is_empty() {
        None
    } else {
        let znu = remainder.weight(n).ok_or_else(|| Error::Assertion("remainder is inhomogeneous".into()))?;
        if znu.iter().all(|&a| a == 0) {
            (remainder == FElement::one()).then(Vec::new)
        } else {
            let slice = dcb_slice(qg, chart, &znu)?;
            slice.labels.iter().zip(&slice.elements).find(|(_, g)| qg.f_equal(g, &remainder)).map(|(l, _)| l.clone())
        }
    };
    Ok(CofiniteReport { word: w.to_vec(), beta, sign, q_exponent, remainder, matches_reflection, label })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanDatum;
    use crate::scalars::LaurentPoly;

    fn qg(name: &str) -> QuantumGroup {
        QuantumGroup::new(CartanDatum::builtin(name).unwrap())
    }

    #[test]
    fn twist_map_matches_direct() {
        for (name, w, h) in [("A2", vec![0, 1], 3), ("A2", vec![0, 1, 0], 3), ("B2", vec![0, 1], 2), ("B2", vec![1, 0, 1], 2)] {
            let g = qg(name);
            let ch = PbwChart::new(&g, &w).unwrap();
            let tm = TwistMap::new(&g, &ch).unwrap();
            for nu in ch.weights_up_to(h) {
                for c in ch.compositions(&nu) {
                    let x = ch.f_up(&g, &c).unwrap();
                    let a = tm.apply(&x).unwrap();
                    let b = theta_inverse_direct(&g, &w, &x).unwrap();
                    assert!(g.f_equal(&a, &b), "{name} {w:?} {c:?}");
                }
            }
        }
    }

    #[test]
    fn twist_map_rejects_outside() {
        let g = qg("A2");
        let ch = PbwChart::new(&g, &[0]).unwrap();
        let tm = TwistMap::new(&g, &ch).unwrap();
        assert!(tm.apply(&FElement::word(&[1])).is_err());
    }

    #[test]
    fn rootvectors_a2() {
        let g = qg("A2");
        assert_eq!(verify_rootvector_images(&g, &[0, 1, 0]).unwrap(), vec![true; 3]);
        assert_eq!(verify_rootvector_images(&g, &[0, 1]).unwrap(), vec![true; 2]);
        assert_eq!(verify_rootvector_images(&g, &[1]).unwrap(), vec![true]);
    }

    #[test]
    fn pbw_reversal() {
        let g = qg("A2");
        assert!(verify_pbw_reversal(&g, &[0, 1, 0], &[1, 0, 1]).unwrap());
        assert!(verify_pbw_reversal(&g, &[0, 1, 0], &[0, 0, 0]).unwrap());
        let b = qg("B2");
        assert!(verify_pbw_reversal(&b, &[0, 1, 0, 1], &[1, 0, 0, 0]).unwrap());
        assert!(verify_pbw_reversal(&b, &[0, 1, 0, 1], &[0, 1, 1, 0]).unwrap());
    }

    #[test]
    fn dcb_twist_a2() {
        let g = qg("A2");
        let r = verify_dcb_twist(&g, &[0, 1, 0], &[1, 1]).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        let r = verify_dcb_twist(&g, &[0, 1, 0], &[1, 0]).unwrap();
        assert!(r.passed());
        let t = reverse_coeff_table(&g, &[0, 1, 0], &[1, 1]).unwrap();
        assert!(t.passed());
        assert_eq!(t.coeffs[1][0], LaurentPoly::q_pow(1));
    }

    #[test]
    fn cofinite_a2() {
        let g = qg("A2");
        let chart = PbwChart::new(&g, &[0, 1, 0]).unwrap();
        let d = &RatFunc::one() - &RatFunc::q_pow(2);
        let x = FElement::word(&[1]).scale(&d);
        let r = cofinite_twist_check(&g, &[0], &x, &chart).unwrap();
        assert_eq!(r.beta, vec![1, 1]);
        assert_eq!((r.sign, r.q_exponent), (1, -1));
        let expect = FElement::word(&[1, 0]).sub(&FElement::word(&[0, 1]).scale(&RatFunc::q_pow(1))).scale(&d);
        assert!(g.f_equal(&r.remainder, &expect));
        assert!(r.passed());
        assert!(matches!(
            cofinite_twist_check(&g, &[0], &FElement::word(&[0]), &chart),
            Err(Error::Precondition(_))
        ));
        let r = cofinite_twist_check(&g, &[0], &FElement::one(), &chart).unwrap();
        assert!(r.passed() && r.beta == vec![0, 0]);
    }
}
