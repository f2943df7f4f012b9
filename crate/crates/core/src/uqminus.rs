//! The negative half `U_q^-`: f-word combinations, q-derivations, the form
//! `( , )_L`, dual vectors and the dual bar-involution σ.
//!
//! Each weight space `U_q^-_{-ν}` is described by its words, the scaled
//! Gram matrix `N(w, v) = D_ν (f_w, f_v)_L` with `D_ν = ∏ (1 - q_i^2)^{ν_i}`
//! (a Laurent polynomial), and a basis of standard words: the
//! lexicographically first words whose f-monomials are linearly
//! independent. Every word rewrites uniquely in the standard words, which
//! gives a canonical form for elements without rewriting Serre relations.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rootdata::RootVec;
use crate::scalars::RatFunc;
use crate::uqfull::QuantumGroup;

/// A word in the generators (0-based letters).
pub type Word = Vec<u8>;

/// Element of `U_q^-` as a combination of f-words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FElement {
    terms: BTreeMap<Word, RatFunc>,
}

impl FElement {
    pub fn zero() -> Self {
        FElement::default()
    }

    pub fn one() -> Self {
        FElement::monomial(Vec::new(), RatFunc::one())
    }

    pub fn monomial(w: Word, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FElement { terms }
    }

    pub fn word(w: &[u8]) -> Self {
        FElement::monomial(w.to_vec(), RatFunc::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, RatFunc)>>(it: I) -> Self {
        let mut x = FElement::zero();
        for (w, c) in it {
            x.add_term(w, &c);
        }
        x
    }

    pub fn add_term(&mut self, w: Word, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot = &*slot + c;
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, RatFunc> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when no terms are stored (structural; see
    /// [`QuantumGroup::f_is_zero`] for the test in `U_q^-`).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &FElement) -> FElement {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &FElement) -> FElement {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), &-c);
        }
        r
    }

    pub fn neg(&self) -> FElement {
        FElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &RatFunc) -> FElement {
        if s.is_zero() {
            return FElement::zero();
        }
        FElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect() }
    }

    /// Conjugate the coefficients only (f-words are bar-invariant).
    pub fn bar(&self) -> FElement {
        FElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.bar())).collect() }
    }

    /// The anti-involution `*`, reversing every word.
    pub fn star(&self) -> FElement {
        FElement::from_terms(self.terms.iter().map(|(w, c)| (w.iter().rev().copied().collect(), c.clone())))
    }

    /// Concatenation product in the free algebra.
    pub fn concat(&self, o: &FElement) -> FElement {
        let mut r = FElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                r.add_term(w, &(c1 * c2));
            }
        }
        r
    }

    /// `ν` with `wt x = -ν`, if every word has the same content.
    pub fn weight(&self, rank: usize) -> Option<RootVec> {
        let mut it = self.terms.keys().map(|w| word_content(w, rank));
        let first = it.next().unwrap_or_else(|| vec![0; rank]);
        it.all(|c| c == first).then_some(first)
    }

    pub fn homogeneous_components(&self, rank: usize) -> BTreeMap<RootVec, FElement> {
        let mut out: BTreeMap<RootVec, FElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(word_content(w, rank)).or_default().add_term(w.clone(), c);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| json!([w.iter().map(|&i| i as usize + 1).collect::<Vec<_>>(), c.to_json()]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<FElement> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("element must be an array of terms".into()))?;
        let mut x = FElement::zero();
        for t in arr {
            let pair = t
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse("term must be [word, ratfunc]".into()))?;
            let w = parse_json_word(&pair[0])?;
            x.add_term(w, &RatFunc::from_json(&pair[1])?);
        }
        Ok(x)
    }
}

pub(crate) fn parse_json_word(v: &Value) -> Result<Word> {
    v.as_array()
        .ok_or_else(|| Error::Parse("word must be an integer array".into()))?
        .iter()
        .map(|x| match x.as_u64() {
            Some(k) if (1..=255).contains(&k) => Ok((k - 1) as u8),
            _ => Err(Error::Parse(format!("bad word letter {x}"))),
        })
        .collect()
}

pub(crate) fn word_json(w: &[u8]) -> Value {
    json!(w.iter().map(|&i| i as usize + 1).collect::<Vec<_>>())
}

impl std::fmt::Debug for FElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

impl std::fmt::Display for FElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for &i in w {
                write!(f, " f{}", i + 1)?;
            }
        }
        Ok(())
    }
}

pub fn word_content(w: &[u8], rank: usize) -> RootVec {
    let mut c = vec![0; rank];
    for &i in w {
        c[i as usize] += 1;
    }
    c
}

/// Canonical form of a homogeneous `x ∈ U_q^-`: the pairings `(x, f_v)_L`
/// for every word `v` of the weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualVector {
    /// `ν` with `wt x = -ν`.
    pub nu: RootVec,
    pub entries: BTreeMap<Word, RatFunc>,
}

impl DualVector {
    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|c| c.is_zero())
    }

    pub fn bar(&self) -> DualVector {
        DualVector { nu: self.nu.clone(), entries: self.entries.iter().map(|(w, c)| (w.clone(), c.bar())).collect() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "weight": self.nu.iter().map(|x| -x).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|(w, c)| json!([word_json(w), c.to_json()])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<DualVector> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("dual vector must be an object".into()))?;
        let nu = obj
            .get("weight")
            .and_then(|w| w.as_array())
            .ok_or_else(|| Error::Parse("dual vector needs \"weight\"".into()))?
            .iter()
            .map(|x| x.as_i64().map(|k| -k).ok_or_else(|| Error::Parse("weight entries must be integers".into())))
            .collect::<Result<Vec<_>>>()?;
        let mut entries = BTreeMap::new();
        for t in obj
            .get("entries")
            .and_then(|e| e.as_array())
            .ok_or_else(|| Error::Parse("dual vector needs \"entries\"".into()))?
        {
            let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse("entry must be [word, ratfunc]".into()))?;
            entries.insert(parse_json_word(&pair[0])?, RatFunc::from_json(&pair[1])?);
        }
        Ok(DualVector { nu, entries })
    }
}

// ---- modular arithmetic for rank detection ----

const P: u64 = (1 << 61) - 1;
/// Evaluation point for `q` when selecting standard words.
const Q_POINT: u64 = 1_000_003_457;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, P - 2)
}

fn qpow_mod(k: i64) -> u64 {
    if k >= 0 {
        powmod(Q_POINT, k as u64)
    } else {
        invmod(powmod(Q_POINT, (-k) as u64))
    }
}

/// One way of deleting a letter from a word.
#[derive(Clone, Debug)]
struct Deletion {
    letter: u8,
    /// index of the shortened word in the space of weight `ν - α_letter`
    rest: u32,
    /// `Σ_{m<p} (α_letter, α_{v_m})`
    left: i64,
}

/// The weight space `U_q^-_{-ν}`.
pub struct WeightSpace {
    pub nu: RootVec,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    deletions: Vec<Vec<Deletion>>,
    /// Gram matrix modulo `P` at `q = Q_POINT`, row-major.
    modp: Vec<u64>,
    basis: Vec<usize>,
    basis_pos: Vec<Option<usize>>,
    d_nu: RatFunc,
    rows: RwLock<HashMap<usize, Arc<Vec<RatFunc>>>>,
    gram_inv: OnceLock<Vec<Vec<RatFunc>>>,
    rewrites: RwLock<HashMap<usize, Arc<Vec<(usize, RatFunc)>>>>,
}

impl std::fmt::Debug for WeightSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WeightSpace(nu={:?}, words={}, dim={})", self.nu, self.words.len(), self.basis.len())
    }
}

impl WeightSpace {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_words(&self) -> Vec<&Word> {
        self.basis.iter().map(|&b| &self.words[b]).collect()
    }

    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// `D_ν = ∏ (1 - q_i^2)^{ν_i}`.
    pub fn scale_factor(&self) -> &RatFunc {
        &self.d_nu
    }
}

/// All words with letter multiplicities `nu`, in lexicographic order.
pub fn words_of_weight(nu: &[i64]) -> Vec<Word> {
    let mut out = Vec::new();
    let mut rem: Vec<i64> = nu.to_vec();
    let total: i64 = nu.iter().sum();
    let mut cur = Vec::with_capacity(total as usize);
    fn go(rem: &mut Vec<i64>, cur: &mut Word, left: i64, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i as u8);
                go(rem, cur, left - 1, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    go(&mut rem, &mut cur, total, &mut out);
    out
}

fn one_minus_q2d(d: i64) -> RatFunc {
    &RatFunc::one() - &RatFunc::q_pow(2 * d)
}

/// Exact Gauss-Jordan inverse over `Q(q)`.
pub(crate) fn invert_matrix(m: &[Vec<RatFunc>]) -> Result<Vec<Vec<RatFunc>>> {
    let n = m.len();
    let mut a: Vec<Vec<RatFunc>> = m.to_vec();
    let mut inv: Vec<Vec<RatFunc>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect()).collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Assertion("singular Gram matrix on standard words".into()))?;
        a.swap(col, p);
        inv.swap(col, p);
        let piv = a[col][col].inv()?;
        for c in 0..n {
            a[col][c] = &a[col][c] * &piv;
            inv[col][c] = &inv[col][c] * &piv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                if !a[col][c].is_zero() {
                    let t = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &t;
                }
                if !inv[col][c].is_zero() {
                    let t = &f * &inv[col][c];
                    inv[r][c] = &inv[r][c] - &t;
                }
            }
        }
    }
    Ok(inv)
}

impl QuantumGroup {
    /// The weight space of weight `-ν`, built on first use.
    pub fn space(&self, nu: &[i64]) -> Arc<WeightSpace> {
        if let Some(s) = self.spaces.read().unwrap().get(nu) {
            return s.clone();
        }
        let built = Arc::new(self.build_space(nu));
        self.spaces.write().unwrap().entry(nu.to_vec()).or_insert(built).clone()
    }

    fn build_space(&self, nu: &[i64]) -> WeightSpace {
        let c = self.cartan();
        let n = c.rank();
        assert!(nu.len() == n && nu.iter().all(|&x| x >= 0), "weight space needs ν in Q_+");
        let words = words_of_weight(nu);
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let nw = words.len();
        let mut subspaces: Vec<Option<Arc<WeightSpace>>> = vec![None; n];
        for i in 0..n {
            if nu[i] > 0 {
                let mut sub = nu.to_vec();
                sub[i] -= 1;
                subspaces[i] = Some(self.space(&sub));
            }
        }
        let deletions: Vec<Vec<Deletion>> = words
            .iter()
            .map(|v| {
                (0..v.len())
                    .map(|p| {
                        let a = v[p] as usize;
                        let mut rest = v.clone();
                        rest.remove(p);
                        let sub = subspaces[a].as_ref().unwrap();
                        Deletion {
                            letter: v[p],
                            rest: sub.index[&rest] as u32,
                            left: v[..p].iter().map(|&m| c.root_form(a, m as usize)).sum(),
                        }
                    })
                    .collect()
            })
            .collect();
        let mut modp = vec![0u64; nw * nw];
        if nw == 1 && words[0].is_empty() {
            modp[0] = 1;
        } else {
            for (wi, w) in words.iter().enumerate() {
                let a = w[0] as usize;
                let sub = subspaces[a].as_ref().unwrap();
                let rest_idx = sub.index[&w[1..]];
                let sub_n = sub.words.len();
                let sub_row = &sub.modp[rest_idx * sub_n..(rest_idx + 1) * sub_n];
                for (vi, dels) in deletions.iter().enumerate() {
                    let mut acc = 0u64;
                    for d in dels {
                        if d.letter as usize == a {
                            acc = addmod(acc, mulmod(qpow_mod(-d.left), sub_row[d.rest as usize]));
                        }
                    }
                    modp[wi * nw + vi] = acc;
                }
            }
        }
        // Lexicographically first independent rows.
        let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut basis = Vec::new();
        for wi in 0..nw {
            let mut row = modp[wi * nw..(wi + 1) * nw].to_vec();
            for (pc, prow) in &echelon {
                let f = row[*pc];
                if f != 0 {
                    for k in 0..nw {
                        if prow[k] != 0 {
                            row[k] = addmod(row[k], P - mulmod(f, prow[k]));
                        }
                    }
                }
            }
            if let Some(pc) = row.iter().position(|&x| x != 0) {
                let inv = invmod(row[pc]);
                row.iter_mut().for_each(|x| *x = mulmod(*x, inv));
                echelon.push((pc, row));
                basis.push(wi);
            }
        }
        let mut basis_pos = vec![None; nw];
        for (k, &b) in basis.iter().enumerate() {
            basis_pos[b] = Some(k);
        }
        let d_nu = (0..n).fold(RatFunc::one(), |acc, i| &acc * &one_minus_q2d(c.d(i)).pow(nu[i]).unwrap());
        WeightSpace {
            nu: nu.to_vec(),
            words,
            index,
            deletions,
            modp,
            basis,
            basis_pos,
            d_nu,
            rows: RwLock::new(HashMap::new()),
            gram_inv: OnceLock::new(),
            rewrites: RwLock::new(HashMap::new()),
        }
    }

    /// Row `v ↦ N(w, v)` of the scaled Gram matrix for the word with index
    /// `wi` in `space`.
    pub(crate) fn gram_row(&self, space: &WeightSpace, wi: usize) -> Arc<Vec<RatFunc>> {
        if let Some(r) = space.rows.read().unwrap().get(&wi) {
            return r.clone();
        }
        let w = &space.words[wi];
        let row: Vec<RatFunc> = if w.is_empty() {
            vec![RatFunc::one()]
        } else {
            let a = w[0];
            let mut sub = space.nu.clone();
            sub[a as usize] -= 1;
            let subspace = self.space(&sub);
            let sub_row = self.gram_row(&subspace, subspace.index[&w[1..]]);
            space
                .deletions
                .iter()
                .map(|dels| {
                    let mut acc = RatFunc::zero();
                    for d in dels {
                        if d.letter == a {
                            let v = &sub_row[d.rest as usize];
                            if !v.is_zero() {
                                acc = &acc + &v.mul_q_pow(-d.left);
                            }
                        }
                    }
                    acc
                })
                .collect()
        };
        let row = Arc::new(row);
        space.rows.write().unwrap().entry(wi).or_insert(row).clone()
    }

    fn gram_inverse<'a>(&self, space: &'a WeightSpace) -> &'a Vec<Vec<RatFunc>> {
        space.gram_inv.get_or_init(|| {
            let g: Vec<Vec<RatFunc>> = space
                .basis
                .iter()
                .map(|&b| {
                    let row = self.gram_row(space, b);
                    space.basis.iter().map(|&b2| row[b2].clone()).collect()
                })
                .collect();
            invert_matrix(&g).expect("standard words are independent")
        })
    }

    /// Coordinates of the word with index `wi` in the standard words, as
    /// pairs (word index, coefficient).
    pub(crate) fn rewrite_index(&self, space: &WeightSpace, wi: usize) -> Arc<Vec<(usize, RatFunc)>> {
        if space.basis_pos[wi].is_some() {
            return Arc::new(vec![(wi, RatFunc::one())]);
        }
        if let Some(r) = space.rewrites.read().unwrap().get(&wi) {
            return r.clone();
        }
        let ginv = self.gram_inverse(space);
        let pairings: Vec<RatFunc> = space.basis.iter().map(|&b| self.gram_row(space, b)[wi].clone()).collect();
        let mut out = Vec::new();
        for (k, &b) in space.basis.iter().enumerate() {
            let mut acc = RatFunc::zero();
            for (kk, p) in pairings.iter().enumerate() {
                if !p.is_zero() && !ginv[k][kk].is_zero() {
                    acc = &acc + &(&ginv[k][kk] * p);
                }
            }
            if !acc.is_zero() {
                out.push((b, acc));
            }
        }
        let out = Arc::new(out);
        space.rewrites.write().unwrap().entry(wi).or_insert(out).clone()
    }

    /// Rewrite a word in the standard words of its weight.
    pub fn rewrite_word(&self, w: &[u8]) -> Vec<(Word, RatFunc)> {
        let space = self.space(&word_content(w, self.rank()));
        let wi = space.index[w];
        self.rewrite_index(&space, wi).iter().map(|(b, c)| (space.words[*b].clone(), c.clone())).collect()
    }

    /// Canonical form: every word replaced by its standard-word expansion.
    pub fn f_reduce(&self, x: &FElement) -> FElement {
        let mut out = FElement::zero();
        for (w, c) in x.terms() {
            for (b, k) in self.rewrite_word(w) {
                out.add_term(b, &(c * &k));
            }
        }
        out
    }

    pub fn f_mul(&self, x: &FElement, y: &FElement) -> FElement {
        self.f_reduce(&x.concat(y))
    }

    pub fn f_is_zero(&self, x: &FElement) -> bool {
        self.f_reduce(x).is_empty()
    }

    pub fn f_equal(&self, x: &FElement, y: &FElement) -> bool {
        self.f_is_zero(&x.sub(y))
    }

    /// The q-derivation `e'_i` (`right = false`) or `_i e'` (`right = true`).
    pub fn eprime(&self, i: usize, right: bool, x: &FElement) -> FElement {
        let c = self.cartan();
        let mut out = FElement::zero();
        for (w, coef) in x.terms() {
            for p in 0..w.len() {
                if w[p] as usize != i {
                    continue;
                }
                let range = if right { &w[p + 1..] } else { &w[..p] };
                let e: i64 = range.iter().map(|&m| c.root_form(i, m as usize)).sum();
                let mut rest = w.clone();
                rest.remove(p);
                out.add_term(rest, &coef.mul_q_pow(-e));
            }
        }
        out
    }

    /// `Σ_v y_v N(w, v)` for each word `w` occurring in `x`, summed with
    /// the coefficients of `x`; i.e. `D_ν (x, y)_L` for homogeneous
    /// components of weight `-ν`.
    fn scaled_pairing(&self, space: &WeightSpace, x: &FElement, y: &FElement) -> RatFunc {
        let yv: Vec<(usize, &RatFunc)> = y.terms().iter().map(|(w, c)| (space.index[w], c)).collect();
        let mut acc = RatFunc::zero();
        for (w, cx) in x.terms() {
            let row = self.gram_row(space, space.index[w]);
            let mut inner = RatFunc::zero();
            for (vi, cy) in &yv {
                let n = &row[*vi];
                if !n.is_zero() {
                    inner = &inner + &(n * cy);
                }
            }
            if !inner.is_zero() {
                acc = &acc + &(cx * &inner);
            }
        }
        acc
    }

    /// The form `( , )_L`.
    pub fn form_l(&self, x: &FElement, y: &FElement) -> RatFunc {
        let n = self.rank();
        let xs = x.homogeneous_components(n);
        let ys = y.homogeneous_components(n);
        let mut acc = RatFunc::zero();
        for (nu, xc) in &xs {
            let Some(yc) = ys.get(nu) else { continue };
            let space = self.space(nu);
            let s = self.scaled_pairing(&space, xc, yc);
            if !s.is_zero() {
                acc = &acc + &s.checked_div(space.scale_factor()).unwrap();
            }
        }
        acc
    }

    /// The dual vector of a homogeneous element, computed directly from the
    /// Gram rows of every word that occurs.
    pub fn dual_vector(&self, x: &FElement) -> Result<DualVector> {
        let nu = x
            .weight(self.rank())
            .ok_or_else(|| Error::Precondition("dual vector of an inhomogeneous element".into()))?;
        let space = self.space(&nu);
        let nw = space.words.len();
        let mut acc = vec![RatFunc::zero(); nw];
        for (w, c) in x.terms() {
            let row = self.gram_row(&space, space.index[w]);
            for (a, r) in acc.iter_mut().zip(row.iter()) {
                if !r.is_zero() {
                    *a = &*a + &(c * r);
                }
            }
        }
        let d = space.scale_factor();
        let entries =
            space.words.iter().cloned().zip(acc).map(|(w, a)| (w, a.checked_div(d).unwrap())).collect();
        Ok(DualVector { nu, entries })
    }

    /// Recover an element from its pairings with the f-words, solving on the
    /// standard words and checking every other entry.
    pub fn to_word_form(&self, v: &DualVector) -> Result<FElement> {
        let space = self.space(&v.nu);
        if v.entries.len() != space.words.len() || v.entries.keys().any(|w| !space.index.contains_key(w)) {
            return Err(Error::Precondition("dual vector does not cover its weight space".into()));
        }
        let d = space.scale_factor();
        let rhs: Vec<RatFunc> = space.basis.iter().map(|&b| &v.entries[&space.words[b]] * d).collect();
        let ginv = self.gram_inverse(&space);
        let mut x = FElement::zero();
        for (k, &b) in space.basis.iter().enumerate() {
            let mut acc = RatFunc::zero();
            for (kk, r) in rhs.iter().enumerate() {
                if !r.is_zero() && !ginv[k][kk].is_zero() {
                    acc = &acc + &(&ginv[k][kk] * r);
                }
            }
            x.add_term(space.words[b].clone(), &acc);
        }
        let check = if x.is_empty() {
            DualVector {
                nu: v.nu.clone(),
                entries: space.words.iter().map(|w| (w.clone(), RatFunc::zero())).collect(),
            }
        } else {
            self.dual_vector(&x)?
        };
        if check.entries != v.entries {
            return Err(Error::Inconsistent("vector is not the dual vector of any element".into()));
        }
        Ok(x)
    }

    /// The dual bar-involution, via its closed formula.
    pub fn sigma(&self, x: &FElement) -> Result<FElement> {
        let c = self.cartan();
        let mut out = FElement::zero();
        for (nu, comp) in x.homogeneous_components(self.rank()) {
            let ht: i64 = nu.iter().sum();
            let e = c.root_pair(&nu, &nu) / 2 + c.rho_pair(&nu);
            let sign = if ht % 2 == 0 { 1 } else { -1 };
            let s = RatFunc::monomial(sign.into(), e);
            out = out.add(&comp.star().bar().scale(&s));
        }
        Ok(self.f_reduce(&out))
    }

    /// Standard words of the weight space, as f-elements.
    pub fn standard_basis(&self, nu: &[i64]) -> Vec<FElement> {
        self.space(nu).basis_words().into_iter().map(|w| FElement::word(w)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::rootdata::CartanDatum;

    fn qg(name: &str) -> QuantumGroup {
        QuantumGroup::new(CartanDatum::builtin(name).unwrap())
    }

    fn q(k: i64) -> RatFunc {
        RatFunc::q_pow(k)
    }

    fn w(s: &[u8]) -> FElement {
        FElement::word(&s.iter().map(|x| x - 1).collect::<Vec<_>>())
    }

    #[test]
    fn eprime_examples() {
        let g = qg("A2");
        assert_eq!(g.eprime(0, false, &w(&[1, 2])), w(&[2]));
        assert_eq!(g.eprime(0, false, &w(&[2, 1])), w(&[2]).scale(&q(1)));
        assert!(g.eprime(0, false, &w(&[2])).is_empty());
    }

    #[test]
    fn form_examples() {
        let g = qg("A2");
        let d = &RatFunc::one() - &q(2);
        assert_eq!(g.form_l(&w(&[1]), &w(&[1])), d.inv().unwrap());
        assert!(g.form_l(&w(&[1]), &w(&[2])).is_zero());
        assert_eq!(g.form_l(&w(&[1, 2]), &w(&[2, 1])), q(1).checked_div(&(&d * &d)).unwrap());
    }

    #[test]
    fn serre_element_vanishes() {
        let g = qg("A2");
        let two = &q(1) + &q(-1);
        let s = w(&[1, 1, 2]).sub(&w(&[1, 2, 1]).scale(&two)).add(&w(&[2, 1, 1]));
        assert!(g.dual_vector(&s).unwrap().is_zero());
        assert!(g.f_is_zero(&s));
        assert!(!g.f_equal(&w(&[1, 2]), &w(&[2, 1])));
    }

    #[test]
    fn dual_vector_of_generator() {
        let g = qg("A2");
        let dv = g.dual_vector(&w(&[1])).unwrap();
        assert_eq!(dv.entries.len(), 1);
        assert_eq!(dv.entries[&vec![0u8]], (&RatFunc::one() - &q(2)).inv().unwrap());
    }

    #[test]
    fn sigma_examples() {
        let g = qg("A2");
        assert_eq!(g.sigma(&w(&[1])).unwrap(), w(&[1]).scale(&-q(2)));
        assert_eq!(g.sigma(&w(&[1, 2])).unwrap(), w(&[2, 1]).scale(&q(3)));
        assert_eq!(g.sigma(&FElement::one()).unwrap(), FElement::one());
        let b = qg("B2");
        assert_eq!(b.sigma(&w(&[1])).unwrap(), w(&[1]).scale(&-q(4)));
    }

    #[test]
    fn word_form_round_trip() {
        let g = qg("A2");
        let d = &RatFunc::one() - &q(2);
        let d2 = &d * &d;
        let mut entries = BTreeMap::new();
        entries.insert(vec![0, 1], d2.inv().unwrap());
        entries.insert(vec![1, 0], q(1).checked_div(&d2).unwrap());
        let v = DualVector { nu: vec![1, 1], entries };
        assert_eq!(g.to_word_form(&v).unwrap(), w(&[1, 2]));
        let zero = DualVector { nu: vec![1, 1], entries: [(vec![0, 1], RatFunc::zero()), (vec![1, 0], RatFunc::zero())].into() };
        assert!(g.to_word_form(&zero).unwrap().is_empty());
        // a vector outside the image: Serre relations make entries dependent
        let mut bad = g.dual_vector(&w(&[1, 1, 2])).unwrap();
        bad.entries.insert(vec![0, 1, 0], RatFunc::from_int(7));
        assert!(matches!(g.to_word_form(&bad), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn dimensions_match_partition_counts() {
        let g = qg("A2");
        assert_eq!(g.space(&[2, 1]).dim(), 2);
        assert_eq!(g.space(&[2, 2]).dim(), 3);
        let b = qg("B2");
        // roots α1, α1+α2, α1+2α2, α2
        assert_eq!(b.space(&[1, 2]).dim(), 3);
        assert_eq!(b.space(&[2, 2]).dim(), 4);
    }

    #[test]
    fn rewrites_preserve_dual_vectors() {
        let g = qg("B2");
        for w in words_of_weight(&[2, 3]) {
            let x = FElement::word(&w);
            let r = g.f_reduce(&x);
            assert_eq!(g.dual_vector(&x).unwrap(), g.dual_vector(&r).unwrap());
        }
    }
}
