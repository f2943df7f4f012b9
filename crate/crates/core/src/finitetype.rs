//! Finite type: the longest element, the diagram automorphism `θ` and the
//! identity `θ ∘ * = Θ_{w_0}` with its consequences for canonical bases.

use serde_json::{json, Value};

use crate::dcb::{canonical_low_slice, dcb_slice, low_coefficients};
use crate::error::{Error, Result};
use crate::pbw::{reversed, right_lex_less, PbwChart};
use crate::rootdata::{word_to_json, CartanDatum, RootVec, WeylWord};
use crate::twist::reversed_word;
use crate::uqfull::{QuantumGroup, UqElement, UqMonomial};
use crate::uqminus::{FElement, Word};

const STEP_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTypeData {
    pub w0word: WeylWord,
    /// `-w_0(α_i) = α_{θ(i)}`
    pub theta: Vec<usize>,
}

impl FiniteTypeData {
    pub fn new(c: &CartanDatum) -> Result<Self> {
        let w0word = longest_word(c)?;
        let theta = dynkin_theta_from(c, &w0word)?;
        Ok(FiniteTypeData { w0word, theta })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "w0": word_to_json(&self.w0word),
            "theta": self.theta.iter().map(|i| i + 1).collect::<Vec<_>>(),
        })
    }
}

fn is_positive(b: &[i64]) -> bool {
    b.iter().all(|&x| x >= 0)
}

/// A reduced word of `w_0`, built by appending any `s_i` that increases
/// the length.
pub fn longest_word(c: &CartanDatum) -> Result<WeylWord> {
    if c.corank() > 0 {
        return Err(Error::NotFiniteType);
    }
    let mut w = Vec::new();
    loop {
        let next = (0..c.rank()).find(|&i| is_positive(&c.act_root(&w, &c.simple_root(i))));
        match next {
            Some(i) => w.push(i),
            None => break,
        }
        if w.len() > STEP_CAP {
            return Err(Error::NotFiniteType);
        }
    }
    Ok(w)
}

pub fn dynkin_theta(c: &CartanDatum) -> Result<Vec<usize>> {
    dynkin_theta_from(c, &longest_word(c)?)
}

fn dynkin_theta_from(c: &CartanDatum, w0: &[usize]) -> Result<Vec<usize>> {
    let theta: Vec<usize> = (0..c.rank())
        .map(|i| {
            let img: RootVec = c.act_root(w0, &c.simple_root(i)).iter().map(|x| -x).collect();
            (0..c.rank())
                .find(|&j| img == c.simple_root(j))
                .ok_or_else(|| Error::Assertion(format!("-w0(α_{}) is not simple", i + 1)))
        })
        .collect::<Result<_>>()?;
    if (0..theta.len()).any(|i| theta[theta[i]] != i) {
        return Err(Error::Assertion("θ is not an involution".into()));
    }
    Ok(theta)
}

fn relabel(w: &[u8], theta: &[usize]) -> Word {
    w.iter().map(|&i| theta[i as usize] as u8).collect()
}

/// The automorphism `θ`: `e_i ↦ e_{θ(i)}`, `f_i ↦ f_{θ(i)}`,
/// `K_κ ↦ K_{-w_0 κ}`.
pub fn theta_auto(qg: &QuantumGroup, theta: &[usize], x: &UqElement) -> UqElement {
    let mut out = UqElement::zero();
    for (m, c) in x.terms() {
        let mut k = vec![0; m.k.len()];
        for (i, &a) in m.k.iter().enumerate() {
            k[theta[i]] = a;
        }
        out.add_term(UqMonomial { f: relabel(&m.f, theta), k, e: relabel(&m.e, theta) }, c);
    }
    qg.reduce(&out)
}

/// `(θ ∘ *)(x)` on `U_q^-`.
pub fn theta_star(qg: &QuantumGroup, theta: &[usize], x: &FElement) -> FElement {
    let mut out = FElement::zero();
    for (w, c) in x.star().terms() {
        out.add_term(relabel(w, theta), c);
    }
    qg.f_reduce(&out)
}

/// `T_w(x_i) = x_j` whenever `w(α_i) = α_j`, over every prefix `w` of `word`.
pub fn verify_simple_images(qg: &QuantumGroup, word: &[usize]) -> bool {
    let c = qg.cartan();
    (0..=word.len()).all(|k| {
        let w = &word[..k];
        (0..c.rank()).all(|i| match c.simple_image(w, i) {
            Some(j) => qg.braid_word(w, 1, &qg.f(i)) == qg.f(j) && qg.braid_word(w, 1, &qg.e(i)) == qg.e(j),
            None => true,
        })
    })
}

#[derive(Clone, Debug)]
pub struct ThetaStarSlice {
    pub nu: RootVec,
    pub labels: Vec<Vec<i64>>,
    /// `(θ∘*)(G^up(c)) = G^up(c^rev)` per label
    pub upper: Vec<bool>,
    /// `(θ∘*)(G^low(c)) = G^low(c^rev)` per label
    pub lower: Vec<bool>,
    pub coefficients_reverse: bool,
    pub support: bool,
}

impl ThetaStarSlice {
    pub fn passed(&self) -> bool {
        self.upper.iter().chain(&self.lower).all(|&b| b) && self.coefficients_reverse && self.support
    }
}

#[derive(Clone, Debug)]
pub struct ThetaStarReport {
    pub data: FiniteTypeData,
    pub word: WeylWord,
    pub monomials_checked: usize,
    pub monomial_failures: Vec<String>,
    pub simple_images: bool,
    pub slices: Vec<ThetaStarSlice>,
}

impl ThetaStarReport {
    pub fn passed(&self) -> bool {
        self.monomial_failures.is_empty() && self.simple_images && self.slices.iter().all(|s| s.passed())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "finite_type": self.data.to_json(),
            "word": word_to_json(&self.word),
            "monomials_checked": self.monomials_checked,
            "monomial_failures": self.monomial_failures,
            "simple_images": self.simple_images,
            "slices": self.slices.iter().map(|s| json!({
                "weight": s.nu.iter().map(|x| -x).collect::<Vec<_>>(),
                "labels": s.labels,
                "upper": s.upper,
                "lower": s.lower,
                "coefficients_reverse": s.coefficients_reverse,
                "support": s.support,
                "passed": s.passed(),
            })).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

fn words_up_to(rank: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..rank {
                let mut v: Word = w.clone();
                v.push(i as u8);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `θ ∘ * = Θ_{w_0}` on f- and e-monomials of length at most
/// `monomial_len` and on every `t_i`; the two corollaries on every slice of
/// the chart of `word` (a reduced word of `w_0`) up to `height`.
pub fn verify_theta_star(
    qg: &QuantumGroup,
    word: Option<&[usize]>,
    monomial_len: usize,
    height: i64,
) -> Result<ThetaStarReport> {
    let c = qg.cartan();
    let data = FiniteTypeData::new(c)?;
    let word = word.map(|w| w.to_vec()).unwrap_or_else(|| data.w0word.clone());
    if word.len() != data.w0word.len() || !c.is_reduced(&word) || !c.word_equal(&word, &data.w0word) {
        return Err(Error::Precondition("the chart word must be a reduced word of w0".into()));
    }
    let theta = &data.theta;
    let n = qg.rank();
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut samples: Vec<(String, UqElement)> = Vec::new();
    for w in words_up_to(n, monomial_len) {
        let label: String = w.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        samples.push((format!("f[{label}]"), qg.f_word(&w)));
        if !w.is_empty() {
            samples.push((format!("e[{label}]"), qg.e_word(&w)));
        }
    }
    for i in 0..n {
        samples.push((format!("t{}", i + 1), qg.t(i, 1)));
    }
    for (name, x) in &samples {
        checked += 1;
        let lhs = theta_auto(qg, theta, &qg.star(x));
        let rhs = qg.theta(&data.w0word, x);
        if lhs != rhs {
            failures.push(name.clone());
        }
    }
    let simple_images = verify_simple_images(qg, &word);
    let chart = PbwChart::new(qg, &word)?;
    let rword = reversed_word(&word);
    let rchart = PbwChart::new(qg, &rword)?;
    let mut slices = Vec::new();
    for nu in chart.weights_up_to(height) {
        let slice = dcb_slice(qg, &chart, &nu)?;
        // θ∘* preserves weights up to relabeling by θ
        let mut rnu = vec![0; nu.len()];
        for (i, &a) in nu.iter().enumerate() {
            rnu[theta[i]] = a;
        }
        let rslice = dcb_slice(qg, &rchart, &rnu)?;
        let lows = canonical_low_slice(qg, &chart, &slice)?;
        let rlows = canonical_low_slice(qg, &rchart, &rslice)?;
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for (a, l) in slice.labels.iter().enumerate() {
            let ra = rslice.position(&reversed(l)).ok_or_else(|| Error::Assertion("reversed label missing".into()))?;
            upper.push(qg.f_equal(&theta_star(qg, theta, &slice.elements[a]), &rslice.elements[ra]));
            lower.push(qg.f_equal(&theta_star(qg, theta, &lows[a]), &rlows[ra]));
        }
        let m = low_coefficients(&slice);
        let rm = low_coefficients(&rslice);
        let mut coefficients_reverse = true;
        let mut support = true;
        for (a, l) in slice.labels.iter().enumerate() {
            let ra = rslice.position(&reversed(l)).unwrap();
            for (b, l2) in slice.labels.iter().enumerate() {
                let rb = rslice.position(&reversed(l2)).unwrap();
                coefficients_reverse &= m[a][b] == rm[ra][rb];
                if a == b {
                    support &= m[a][b].is_one();
                } else if !m[a][b].is_zero() {
                    support &= l < l2 && right_lex_less(l, l2);
                }
            }
        }
        slices.push(ThetaStarSlice { nu, labels: slice.labels, upper, lower, coefficients_reverse, support });
    }
    Ok(ThetaStarReport { data, word, monomials_checked: checked, monomial_failures: failures, simple_images, slices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::LaurentPoly;

    fn cd(name: &str) -> CartanDatum {
        CartanDatum::builtin(name).unwrap()
    }

    #[test]
    fn longest_words() {
        assert_eq!(longest_word(&cd("A1")).unwrap(), vec![0]);
        assert_eq!(longest_word(&cd("A2")).unwrap().len(), 3);
        assert_eq!(longest_word(&cd("B2")).unwrap().len(), 4);
        assert_eq!(longest_word(&cd("A3")).unwrap().len(), 6);
        assert_eq!(longest_word(&cd("G2")).unwrap().len(), 6);
        assert_eq!(longest_word(&cd("F4")).unwrap().len(), 24);
        let aff = CartanDatum::new("A1^(1)", vec![vec![2, -2], vec![-2, 2]], vec![1, 1]).unwrap();
        assert!(matches!(longest_word(&aff), Err(Error::NotFiniteType)));
    }

    #[test]
    fn theta_permutations() {
        assert_eq!(dynkin_theta(&cd("A2")).unwrap(), vec![1, 0]);
        assert_eq!(dynkin_theta(&cd("B2")).unwrap(), vec![0, 1]);
        assert_eq!(dynkin_theta(&cd("A1")).unwrap(), vec![0]);
        assert_eq!(dynkin_theta(&cd("D5")).unwrap(), vec![0, 1, 2, 4, 3]);
    }

    #[test]
    fn theta_examples() {
        let qg = QuantumGroup::new(cd("A2"));
        let th = dynkin_theta(qg.cartan()).unwrap();
        assert_eq!(theta_auto(&qg, &th, &qg.f_word(&[0, 1])), qg.f_word(&[1, 0]));
        assert_eq!(theta_auto(&qg, &th, &qg.t(0, 1)), qg.t(1, 1));
        let x = FElement::word(&[0, 1]);
        assert!(qg.f_equal(&theta_star(&qg, &th, &x), &x));
        assert_eq!(qg.theta(&[0, 1, 0], &qg.f(0)), qg.f(1));
    }

    #[test]
    fn theta_star_a2() {
        let qg = QuantumGroup::new(cd("A2"));
        let r = verify_theta_star(&qg, Some(&[0, 1, 0]), 4, 3).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        let chart = PbwChart::new(&qg, &[0, 1, 0]).unwrap();
        let s = dcb_slice(&qg, &chart, &[1, 1]).unwrap();
        assert_eq!(low_coefficients(&s)[0][1], LaurentPoly::q_pow(1));
    }
}
