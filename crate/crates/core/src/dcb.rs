//! Dual canonical basis slices of `U_q^-(w)` by the σ-triangularity solve,
//! and the dual lower canonical basis.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::pbw::{Composition, PbwChart};
use crate::rootdata::{word_to_json, RootVec, WeylWord};
use crate::scalars::{LaurentPoly, RatFunc};
use crate::uqfull::QuantumGroup;
use crate::uqminus::FElement;

pub type LaurentMatrix = Vec<Vec<LaurentPoly>>;

/// `R_{c,c'}`: coefficient of `F^up(c')` in `σ(F^up(c))`, rows and columns
/// indexed by the left-lex sorted compositions of `ν`.
pub fn sigma_matrix(qg: &QuantumGroup, chart: &PbwChart, nu: &[i64]) -> Result<(Vec<Composition>, LaurentMatrix)> {
    let labels = chart.compositions(nu);
    if labels.is_empty() {
        return Err(Error::Precondition(format!("weight {nu:?} does not occur in the chart")));
    }
    let n = labels.len();
    let mut r = vec![vec![LaurentPoly::zero(); n]; n];
    for (a, c) in labels.iter().enumerate() {
        let s = qg.sigma(&chart.f_up(qg, c)?)?;
        let mut recon = FElement::zero();
        for (b, c2) in labels.iter().enumerate() {
            let k = qg.form_l(&s, &chart.f_low(qg, c2)?);
            let l = k.to_laurent().ok_or_else(|| {
                Error::Assertion(format!("R entry at ({c:?}, {c2:?}) is not a Laurent polynomial: {k}"))
            })?;
            if !k.is_zero() {
                recon = recon.add(&chart.f_up(qg, c2)?.scale(&k));
            }
            r[a][b] = l;
        }
        if !qg.f_equal(&recon, &s) {
            return Err(Error::Assertion(format!("σ(F^up({c:?})) leaves the subalgebra")));
        }
    }
    for a in 0..n {
        if !r[a][a].is_one() {
            return Err(Error::Assertion(format!("R diagonal at {:?} is {}", labels[a], r[a][a])));
        }
        for b in a + 1..n {
            if !r[a][b].is_zero() {
                return Err(Error::Assertion(format!("R not lower triangular at ({:?}, {:?})", labels[a], labels[b])));
            }
        }
    }
    let rb: LaurentMatrix = r.iter().map(|row| row.iter().map(|x| x.bar()).collect()).collect();
    let prod = mat_mul(&r, &rb);
    for (a, row) in prod.iter().enumerate() {
        for (b, x) in row.iter().enumerate() {
            let ok = if a == b { x.is_one() } else { x.is_zero() };
            if !ok {
                return Err(Error::Assertion("R · bar(R) is not the identity".into()));
            }
        }
    }
    Ok((labels, r))
}

pub fn mat_mul(a: &LaurentMatrix, b: &LaurentMatrix) -> LaurentMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![LaurentPoly::zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(aik * &b[k][j]);
                }
            }
        }
    }
    out
}

/// The unique unitriangular `P` with off-diagonal entries in `qZ[q]` and
/// `bar(P) R = P`.
pub fn triangular_solve(r: &LaurentMatrix) -> Result<LaurentMatrix> {
    let n = r.len();
    let mut p = vec![vec![LaurentPoly::zero(); n]; n];
    for c in 0..n {
        p[c][c] = LaurentPoly::one();
        for c1 in (0..c).rev() {
            let mut alpha = LaurentPoly::zero();
            for c2 in c1 + 1..=c {
                if !p[c][c2].is_zero() && !r[c2][c1].is_zero() {
                    alpha = &alpha + &(&p[c][c2].bar() * &r[c2][c1]);
                }
            }
            if alpha.bar() != -&alpha {
                return Err(Error::Assertion(format!("triangular solve: α = {alpha} is not bar-antisymmetric")));
            }
            if !alpha.is_integral() {
                return Err(Error::Assertion(format!("triangular solve: α = {alpha} is not integral")));
            }
            p[c][c1] = alpha.positive_part();
        }
    }
    Ok(p)
}

/// Inverse of a lower unitriangular matrix.
pub fn unitriangular_inverse(p: &LaurentMatrix) -> LaurentMatrix {
    let n = p.len();
    let mut inv = vec![vec![LaurentPoly::zero(); n]; n];
    for i in 0..n {
        inv[i][i] = LaurentPoly::one();
        for j in 0..i {
            let mut acc = LaurentPoly::zero();
            for k in j..i {
                if !p[i][k].is_zero() && !inv[k][j].is_zero() {
                    acc = &acc + &(&p[i][k] * &inv[k][j]);
                }
            }
            inv[i][j] = -&acc;
        }
    }
    inv
}

/// One weight slice of the dual canonical basis of `U_q^-(w)`.
#[derive(Clone, Debug)]
pub struct DcbSlice {
    pub word: WeylWord,
    pub nu: RootVec,
    pub labels: Vec<Composition>,
    /// `p_{c,c'}` with `G^up(c) = Σ p_{c,c'} F^up(c')`
    pub pmatrix: LaurentMatrix,
    pub elements: Vec<FElement>,
}

impl DcbSlice {
    pub fn position(&self, c: &[i64]) -> Option<usize> {
        self.labels.iter().position(|l| l == c)
    }

    pub fn element(&self, c: &[i64]) -> Option<&FElement> {
        self.position(c).map(|k| &self.elements[k])
    }

    /// `[F^up(c) : G^up(c')]`, i.e. `P^{-1}`.
    pub fn inverse_expansion(&self) -> LaurentMatrix {
        unitriangular_inverse(&self.pmatrix)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "word": word_to_json(&self.word),
            "weight": self.nu.iter().map(|x| -x).collect::<Vec<_>>(),
            "labels": self.labels,
            "pmatrix": self.pmatrix.iter().map(|row| row.iter().map(|x| x.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "elements": self.elements.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Compute the slice of weight `-ν` and check σ-invariance of every
/// element directly.
pub fn dcb_slice(qg: &QuantumGroup, chart: &PbwChart, nu: &[i64]) -> Result<DcbSlice> {
    let (labels, r) = sigma_matrix(qg, chart, nu)?;
    let p = triangular_solve(&r)?;
    let mut elements = Vec::with_capacity(labels.len());
    for (a, c) in labels.iter().enumerate() {
        let mut g = FElement::zero();
        for (b, c2) in labels.iter().enumerate() {
            if !p[a][b].is_zero() {
                g = g.add(&chart.f_up(qg, c2)?.scale(&p[a][b].to_ratfunc()));
            }
        }
        let g = qg.f_reduce(&g);
        if qg.sigma(&g)? != g {
            return Err(Error::Assertion(format!("G^up({c:?}) is not σ-invariant")));
        }
        elements.push(g);
    }
    let pinv = unitriangular_inverse(&p);
    for (a, row) in pinv.iter().enumerate() {
        for x in &row[..a] {
            if !x.is_zero() && x.min_exp().unwrap_or(1) < 1 {
                return Err(Error::Assertion(format!("inverse expansion of F^up({:?}) leaves qZ[q]", labels[a])));
            }
        }
    }
    Ok(DcbSlice { word: chart.word().to_vec(), nu: nu.to_vec(), labels, pmatrix: p, elements })
}

/// `G^low(c) = Σ m_{c,c'} F^low(c')` with `M = (P^{-1})^T`, checked
/// against `(G^low(c), G^up(c'))_L = δ`.
pub fn canonical_low_slice(qg: &QuantumGroup, chart: &PbwChart, slice: &DcbSlice) -> Result<Vec<FElement>> {
    let pinv = slice.inverse_expansion();
    let n = slice.labels.len();
    let mut lows = Vec::with_capacity(n);
    for a in 0..n {
        let mut g = FElement::zero();
        for b in 0..n {
            let m = &pinv[b][a];
            if !m.is_zero() {
                g = g.add(&chart.f_low(qg, &slice.labels[b])?.scale(&m.to_ratfunc()));
            }
        }
        let g = qg.f_reduce(&g);
        if g.bar() != g {
            return Err(Error::Assertion(format!("G^low({:?}) is not bar-invariant", slice.labels[a])));
        }
        lows.push(g);
    }
    for a in 0..n {
        for b in 0..n {
            let v = qg.form_l(&lows[a], &slice.elements[b]);
            let ok = if a == b { v.is_one() } else { v.is_zero() };
            if !ok {
                return Err(Error::Assertion(format!(
                    "(G^low({:?}), G^up({:?}))_L = {v}",
                    slice.labels[a], slice.labels[b]
                )));
            }
        }
    }
    Ok(lows)
}

/// `(G^low(c) : F^low(c'))` as a matrix: the transpose of `P^{-1}`.
pub fn low_coefficients(slice: &DcbSlice) -> LaurentMatrix {
    let pinv = slice.inverse_expansion();
    let n = pinv.len();
    (0..n).map(|a| (0..n).map(|b| pinv[b][a].clone()).collect()).collect()
}

pub fn laurent_to_ratfunc_matrix(m: &LaurentMatrix) -> Vec<Vec<RatFunc>> {
    m.iter().map(|row| row.iter().map(|x| x.to_ratfunc()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanDatum;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, num_rational::BigRational::from_integer(c.into()))))
    }

    #[test]
    fn solve_examples() {
        let id = vec![vec![LaurentPoly::one(), LaurentPoly::zero()], vec![LaurentPoly::zero(), LaurentPoly::one()]];
        assert_eq!(triangular_solve(&id).unwrap(), id);
        let r = vec![vec![LaurentPoly::one(), LaurentPoly::zero()], vec![lp(&[(-1, 1), (1, -1)]), LaurentPoly::one()]];
        assert_eq!(triangular_solve(&r).unwrap()[1][0], lp(&[(1, -1)]));
        let r = vec![vec![LaurentPoly::one(), LaurentPoly::zero()], vec![lp(&[(3, 1), (-3, -1)]), LaurentPoly::one()]];
        assert_eq!(triangular_solve(&r).unwrap()[1][0], lp(&[(3, 1)]));
        let bad = vec![vec![LaurentPoly::one(), LaurentPoly::zero()], vec![lp(&[(1, 1)]), LaurentPoly::one()]];
        assert!(triangular_solve(&bad).is_err());
    }

    #[test]
    fn a2_slice() {
        let qg = QuantumGroup::new(CartanDatum::builtin("A2").unwrap());
        let ch = PbwChart::new(&qg, &[0, 1, 0]).unwrap();
        let (labels, r) = sigma_matrix(&qg, &ch, &[1, 1]).unwrap();
        assert_eq!(labels, vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert_eq!(r[1][0], lp(&[(-1, 1), (1, -1)]));
        let s = dcb_slice(&qg, &ch, &[1, 1]).unwrap();
        assert_eq!(s.pmatrix[1][0], lp(&[(1, -1)]));
        let d = &RatFunc::one() - &RatFunc::q_pow(2);
        let f12 = FElement::word(&[0, 1]);
        let f21 = FElement::word(&[1, 0]);
        let g010 = f21.sub(&f12.scale(&RatFunc::q_pow(1))).scale(&d);
        let g101 = f12.sub(&f21.scale(&RatFunc::q_pow(1))).scale(&d);
        assert!(qg.f_equal(&s.elements[0], &g010));
        assert!(qg.f_equal(&s.elements[1], &g101));
        let lows = canonical_low_slice(&qg, &ch, &s).unwrap();
        assert!(qg.f_equal(&lows[1], &f12));
        assert!(qg.f_equal(&lows[0], &f21));
        assert_eq!(low_coefficients(&s)[0][1], lp(&[(1, 1)]));
    }

    #[test]
    fn simple_slice() {
        let qg = QuantumGroup::new(CartanDatum::builtin("A2").unwrap());
        let ch = PbwChart::new(&qg, &[0, 1, 0]).unwrap();
        let s = dcb_slice(&qg, &ch, &[1, 0]).unwrap();
        let d = &RatFunc::one() - &RatFunc::q_pow(2);
        assert_eq!(s.elements[0], FElement::word(&[0]).scale(&d));
        assert_eq!(canonical_low_slice(&qg, &ch, &s).unwrap()[0], FElement::word(&[0]));
    }
}
