//! The full algebra `U_q` in the triangular basis `F K_κ E`, with the
//! product by commutation, the involutions ∨, bar, *, φ, the antipode and
//! Lusztig's braid operators.
//!
//! Elements produced by [`QuantumGroup`] are always in canonical form: the
//! f-part and e-part of every monomial are standard words (see
//! [`crate::uqminus`]), so two elements are equal iff their term maps are.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;

use crate::rootdata::{CartanDatum, RootVec};
use crate::scalars::{qfactorial, RatFunc};
use crate::uqminus::{word_content, FElement, WeightSpace, Word};

/// `F · K_κ · E` with `K_κ = ∏ t_i^{κ_i}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct UqMonomial {
    pub f: Word,
    pub k: RootVec,
    pub e: Word,
}

impl UqMonomial {
    pub fn unit(rank: usize) -> Self {
        UqMonomial { f: Vec::new(), k: vec![0; rank], e: Vec::new() }
    }

    /// Weight `-|F| + |E|` in root coordinates.
    pub fn weight(&self) -> RootVec {
        let n = self.k.len();
        let mut w = vec![0; n];
        for &i in &self.f {
            w[i as usize] -= 1;
        }
        for &i in &self.e {
            w[i as usize] += 1;
        }
        w
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UqElement {
    terms: BTreeMap<UqMonomial, RatFunc>,
}

impl UqElement {
    pub fn zero() -> Self {
        UqElement::default()
    }

    pub fn one(rank: usize) -> Self {
        UqElement::monomial(UqMonomial::unit(rank), RatFunc::one())
    }

    pub fn scalar(c: RatFunc, rank: usize) -> Self {
        UqElement::monomial(UqMonomial::unit(rank), c)
    }

    pub fn monomial(m: UqMonomial, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        UqElement { terms }
    }

    pub fn f(i: usize, rank: usize) -> Self {
        UqElement::monomial(UqMonomial { f: vec![i as u8], k: vec![0; rank], e: Vec::new() }, RatFunc::one())
    }

    pub fn e(i: usize, rank: usize) -> Self {
        UqElement::monomial(UqMonomial { f: Vec::new(), k: vec![0; rank], e: vec![i as u8] }, RatFunc::one())
    }

    pub fn k(kappa: RootVec) -> Self {
        UqElement::monomial(UqMonomial { f: Vec::new(), k: kappa, e: Vec::new() }, RatFunc::one())
    }

    pub fn from_felement(x: &FElement, rank: usize) -> Self {
        let mut r = UqElement::zero();
        for (w, c) in x.terms() {
            r.add_term(UqMonomial { f: w.clone(), k: vec![0; rank], e: Vec::new() }, c);
        }
        r
    }

    pub fn add_term(&mut self, m: UqMonomial, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = &*slot + c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<UqMonomial, RatFunc> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &UqElement) -> UqElement {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &UqElement) -> UqElement {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), &-c);
        }
        r
    }

    pub fn neg(&self) -> UqElement {
        UqElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &RatFunc) -> UqElement {
        if s.is_zero() {
            return UqElement::zero();
        }
        UqElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// The element as a member of `U_q^-` when every monomial is a pure
    /// f-word (exact for canonical forms).
    pub fn to_fminus(&self) -> Option<FElement> {
        let mut x = FElement::zero();
        for (m, c) in &self.terms {
            if !m.e.is_empty() || m.k.iter().any(|&a| a != 0) {
                return None;
            }
            x.add_term(m.f.clone(), c);
        }
        Some(x)
    }

    /// Split off a common factor `K_κ` on the right: returns `(x, κ)` with
    /// `self = x K_κ` and `x ∈ U_q^-`, if such a factorization exists.
    pub fn split_fminus_k(&self) -> Option<(FElement, RootVec)> {
        let mut kappa: Option<&RootVec> = None;
        let mut x = FElement::zero();
        for (m, c) in &self.terms {
            if !m.e.is_empty() {
                return None;
            }
            match kappa {
                None => kappa = Some(&m.k),
                Some(k) if k != &m.k => return None,
                _ => {}
            }
            x.add_term(m.f.clone(), c);
        }
        Some((x, kappa.cloned().unwrap_or_default()))
    }
}

impl fmt::Debug for UqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for &i in &m.f {
                write!(f, " f{}", i + 1)?;
            }
            for (i, &a) in m.k.iter().enumerate() {
                if a != 0 {
                    write!(f, " t{}^{}", i + 1, a)?;
                }
            }
            for &i in &m.e {
                write!(f, " e{}", i + 1)?;
            }
        }
        Ok(())
    }
}

/// A Chevalley generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    F(u8),
    E(u8),
}

type BraidKey = (Vec<(u8, bool)>, Gen);

/// Cartan datum plus the write-once caches shared by every computation.
pub struct QuantumGroup {
    cartan: CartanDatum,
    pub(crate) spaces: RwLock<HashMap<RootVec, Arc<WeightSpace>>>,
    order_memo: RwLock<HashMap<(Word, Word), Arc<UqElement>>>,
    braid_memo: RwLock<HashMap<BraidKey, Arc<UqElement>>>,
}

impl fmt::Debug for QuantumGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuantumGroup({})", self.cartan.name())
    }
}

fn insert_once<K: std::hash::Hash + Eq, V: Clone>(lock: &RwLock<HashMap<K, V>>, k: K, v: V) -> V {
    lock.write().unwrap().entry(k).or_insert(v).clone()
}

impl QuantumGroup {
    pub fn new(cartan: CartanDatum) -> Self {
        QuantumGroup {
            cartan,
            spaces: RwLock::new(HashMap::new()),
            order_memo: RwLock::new(HashMap::new()),
            braid_memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn one(&self) -> UqElement {
        UqElement::one(self.rank())
    }

    pub fn f(&self, i: usize) -> UqElement {
        UqElement::f(i, self.rank())
    }

    pub fn e(&self, i: usize) -> UqElement {
        UqElement::e(i, self.rank())
    }

    /// `t_i^{±1}`.
    pub fn t(&self, i: usize, power: i64) -> UqElement {
        let mut k = vec![0; self.rank()];
        k[i] = power;
        UqElement::k(k)
    }

    /// An f-word as an element of `U_q` (canonical form).
    pub fn f_word(&self, w: &[u8]) -> UqElement {
        self.reduce(&UqElement::from_felement(&FElement::word(w), self.rank()))
    }

    pub fn e_word(&self, w: &[u8]) -> UqElement {
        let m = UqMonomial { f: Vec::new(), k: vec![0; self.rank()], e: w.to_vec() };
        self.reduce(&UqElement::monomial(m, RatFunc::one()))
    }

    pub fn lift(&self, x: &FElement) -> UqElement {
        self.reduce(&UqElement::from_felement(x, self.rank()))
    }

    fn push_reduced(&self, out: &mut UqElement, f: &[u8], k: &RootVec, e: &[u8], c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let fr = self.rewrite_word(f);
        let er = self.rewrite_word(e);
        for (fw, fc) in &fr {
            let c1 = c * fc;
            for (ew, ec) in &er {
                out.add_term(UqMonomial { f: fw.clone(), k: k.clone(), e: ew.clone() }, &(&c1 * ec));
            }
        }
    }

    /// Canonical form (standard words in both halves).
    pub fn reduce(&self, x: &UqElement) -> UqElement {
        let mut out = UqElement::zero();
        for (m, c) in x.terms() {
            self.push_reduced(&mut out, &m.f, &m.k, &m.e, c);
        }
        out
    }

    /// `E · F` for an e-word `E` and an f-word `F`, in canonical form.
    fn normal_order(&self, e: &[u8], f: &[u8]) -> Arc<UqElement> {
        let key = (e.to_vec(), f.to_vec());
        if let Some(r) = self.order_memo.read().unwrap().get(&key) {
            return r.clone();
        }
        let n = self.rank();
        let c = &self.cartan;
        let mut out = UqElement::zero();
        if e.is_empty() || f.is_empty() {
            self.push_reduced(&mut out, f, &vec![0; n], e, &RatFunc::one());
        } else {
            let a = e[0] as usize;
            let rest = self.normal_order(&e[1..], f);
            let da = c.d(a);
            // 1 / (q_a - q_a^{-1})
            let inv_diff = (&RatFunc::q_pow(da) - &RatFunc::q_pow(-da)).inv().unwrap();
            for (m, coef) in rest.terms() {
                // e_a F'' = F'' e_a + commutator terms
                let kp = c.simple_pair(a, &m.k);
                let mut ew = Vec::with_capacity(m.e.len() + 1);
                ew.push(a as u8);
                ew.extend_from_slice(&m.e);
                self.push_reduced(&mut out, &m.f, &m.k, &ew, &coef.mul_q_pow(-kp));
                let mut tail = vec![0i64; n];
                for p in (0..m.f.len()).rev() {
                    if m.f[p] as usize == a {
                        let s = c.simple_pair(a, &tail);
                        let mut fw = m.f.clone();
                        fw.remove(p);
                        let base = coef * &inv_diff;
                        let mut kplus = m.k.clone();
                        kplus[a] += 1;
                        self.push_reduced(&mut out, &fw, &kplus, &m.e, &base.mul_q_pow(-s));
                        let mut kminus = m.k.clone();
                        kminus[a] -= 1;
                        self.push_reduced(&mut out, &fw, &kminus, &m.e, &-&base.mul_q_pow(s));
                    }
                    tail[m.f[p] as usize] += 1;
                }
            }
        }
        insert_once(&self.order_memo, key, Arc::new(out))
    }

    /// Product in `U_q`.
    pub fn mul(&self, x: &UqElement, y: &UqElement) -> UqElement {
        let c = &self.cartan;
        let mut out = UqElement::zero();
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                let c12 = c1 * c2;
                let mid = self.normal_order(&m1.e, &m2.f);
                for (m, cm) in mid.terms() {
                    let fc = word_content(&m.f, self.rank());
                    let ec = word_content(&m.e, self.rank());
                    let exp = -c.root_pair(&m1.k, &fc) - c.root_pair(&m2.k, &ec);
                    let mut f = m1.f.clone();
                    f.extend_from_slice(&m.f);
                    let mut e = m.e.clone();
                    e.extend_from_slice(&m2.e);
                    let k: RootVec = (0..self.rank()).map(|i| m1.k[i] + m.k[i] + m2.k[i]).collect();
                    self.push_reduced(&mut out, &f, &k, &e, &(&c12 * cm).mul_q_pow(exp));
                }
            }
        }
        out
    }

    pub fn mul_all(&self, xs: &[&UqElement]) -> UqElement {
        xs.iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    /// Apply the Q(q)-linear (anti-)homomorphism determined by generator and
    /// `K` images.
    fn apply_hom(
        &self,
        x: &UqElement,
        anti: bool,
        gen: &dyn Fn(Gen) -> Arc<UqElement>,
        kimg: &dyn Fn(&RootVec) -> UqElement,
    ) -> UqElement {
        let mut fcache: HashMap<Word, UqElement> = HashMap::new();
        let mut ecache: HashMap<Word, UqElement> = HashMap::new();
        let word_image = |w: &[u8], is_f: bool, cache: &mut HashMap<Word, UqElement>| -> UqElement {
            // products of prefixes, reusing shared prefixes
            let mut start = w.len();
            while start > 0 && !cache.contains_key(&w[..start]) {
                start -= 1;
            }
            let mut acc = if start == 0 { self.one() } else { cache[&w[..start]].clone() };
            for p in start..w.len() {
                let g = if is_f { gen(Gen::F(w[p])) } else { gen(Gen::E(w[p])) };
                acc = if anti { self.mul(&g, &acc) } else { self.mul(&acc, &g) };
                cache.insert(w[..=p].to_vec(), acc.clone());
            }
            acc
        };
        let mut out = UqElement::zero();
        for (m, c) in x.terms() {
            let fi = word_image(&m.f, true, &mut fcache);
            let ei = word_image(&m.e, false, &mut ecache);
            let ki = kimg(&m.k);
            let prod = if anti {
                self.mul(&self.mul(&ei, &ki), &fi)
            } else {
                self.mul(&self.mul(&fi, &ki), &ei)
            };
            out = out.add(&prod.scale(c));
        }
        out
    }

    fn neg_k(k: &RootVec) -> RootVec {
        k.iter().map(|a| -a).collect()
    }

    /// The algebra involution ∨.
    pub fn vee(&self, x: &UqElement) -> UqElement {
        let n = self.rank();
        self.apply_hom(
            x,
            false,
            &|g| {
                Arc::new(match g {
                    Gen::F(i) => UqElement::e(i as usize, n),
                    Gen::E(i) => UqElement::f(i as usize, n),
                })
            },
            &|k| UqElement::k(Self::neg_k(k)),
        )
    }

    /// The Q-algebra involution bar (coefficients conjugated, `K` inverted).
    pub fn bar(&self, x: &UqElement) -> UqElement {
        let mut out = UqElement::zero();
        for (m, c) in x.terms() {
            out.add_term(UqMonomial { f: m.f.clone(), k: Self::neg_k(&m.k), e: m.e.clone() }, &c.bar());
        }
        self.reduce(&out)
    }

    /// The anti-involution `*`.
    pub fn star(&self, x: &UqElement) -> UqElement {
        let n = self.rank();
        self.apply_hom(
            x,
            true,
            &|g| {
                Arc::new(match g {
                    Gen::F(i) => UqElement::f(i as usize, n),
                    Gen::E(i) => UqElement::e(i as usize, n),
                })
            },
            &|k| UqElement::k(Self::neg_k(k)),
        )
    }

    /// The anti-involution φ.
    pub fn phi(&self, x: &UqElement) -> UqElement {
        let n = self.rank();
        self.apply_hom(
            x,
            true,
            &|g| {
                Arc::new(match g {
                    Gen::F(i) => UqElement::e(i as usize, n),
                    Gen::E(i) => UqElement::f(i as usize, n),
                })
            },
            &|k| UqElement::k(k.clone()),
        )
    }

    /// The antipode: `S(e_i) = -e_i t_i`, `S(f_i) = -t_i^{-1} f_i`,
    /// `S(K) = K^{-1}`, extended anti-multiplicatively.
    pub fn antipode(&self, x: &UqElement) -> UqElement {
        let imgs: HashMap<Gen, Arc<UqElement>> = (0..self.rank())
            .flat_map(|i| {
                let se = self.mul(&self.e(i), &self.t(i, 1)).neg();
                let sf = self.mul(&self.t(i, -1), &self.f(i)).neg();
                [(Gen::E(i as u8), Arc::new(se)), (Gen::F(i as u8), Arc::new(sf))]
            })
            .collect();
        self.apply_hom(x, true, &|g| imgs[&g].clone(), &|k| UqElement::k(Self::neg_k(k)))
    }

    /// `Σ coef · x^{(a)} y x^{(b)}`-type sums used by the braid formulas:
    /// the word `i^{a} j i^{b}` with the divided-power normalization.
    fn divided_sandwich(&self, i: usize, j: usize, a: i64, b: i64, is_f: bool) -> UqElement {
        let d = self.cartan.d(i);
        let norm = (&qfactorial(a, d) * &qfactorial(b, d)).to_ratfunc().inv().unwrap();
        let mut w: Word = vec![i as u8; a as usize];
        w.push(j as u8);
        w.extend(std::iter::repeat_n(i as u8, b as usize));
        let m = if is_f {
            UqMonomial { f: w, k: vec![0; self.rank()], e: Vec::new() }
        } else {
            UqMonomial { f: Vec::new(), k: vec![0; self.rank()], e: w }
        };
        self.reduce(&UqElement::monomial(m, norm))
    }

    /// Image of a generator under a single `T_i` (`inverse = false`) or
    /// `T_i^{-1}`.
    fn braid_generator(&self, i: usize, inverse: bool, g: Gen) -> UqElement {
        let c = &self.cartan;
        let di = c.d(i);
        match g {
            Gen::E(j) if j as usize == i => {
                if inverse {
                    self.mul(&self.t(i, -1), &self.f(i)).neg()
                } else {
                    self.mul(&self.f(i), &self.t(i, 1)).neg()
                }
            }
            Gen::F(j) if j as usize == i => {
                if inverse {
                    self.mul(&self.e(i), &self.t(i, 1)).neg()
                } else {
                    self.mul(&self.t(i, -1), &self.e(i)).neg()
                }
            }
            Gen::E(j) => {
                let m = -c.a(i, j as usize);
                let mut out = UqElement::zero();
                for r in 0..=m {
                    let s = m - r;
                    let sign = if r % 2 == 0 { 1 } else { -1 };
                    let coef = RatFunc::monomial(BigInt::from(sign), -di * r);
                    // T_i: e_i^{(s)} e_j e_i^{(r)};  T_i^{-1}: e_i^{(r)} e_j e_i^{(s)}
                    let (a, b) = if inverse { (r, s) } else { (s, r) };
                    out = out.add(&self.divided_sandwich(i, j as usize, a, b, false).scale(&coef));
                }
                out
            }
            Gen::F(j) => {
                let m = -c.a(i, j as usize);
                let mut out = UqElement::zero();
                for r in 0..=m {
                    let s = m - r;
                    let sign = if r % 2 == 0 { 1 } else { -1 };
                    let coef = RatFunc::monomial(BigInt::from(sign), di * r);
                    // T_i: f_i^{(r)} f_j f_i^{(s)};  T_i^{-1}: f_i^{(s)} f_j f_i^{(r)}
                    let (a, b) = if inverse { (s, r) } else { (r, s) };
                    out = out.add(&self.divided_sandwich(i, j as usize, a, b, true).scale(&coef));
                }
                out
            }
        }
    }

    /// Image of a generator under the composite `ops[0] ∘ ops[1] ∘ …`,
    /// where `(i, true)` is `T_i` and `(i, false)` is `T_i^{-1}`.
    fn braid_image(&self, ops: &[(u8, bool)], g: Gen) -> Arc<UqElement> {
        if ops.is_empty() {
            return Arc::new(match g {
                Gen::F(i) => self.f(i as usize),
                Gen::E(i) => self.e(i as usize),
            });
        }
        let key = (ops.to_vec(), g);
        if let Some(r) = self.braid_memo.read().unwrap().get(&key) {
            return r.clone();
        }
        let img = if ops.len() == 1 {
            self.braid_generator(ops[0].0 as usize, !ops[0].1, g)
        } else {
            let inner = self.braid_image(&ops[1..], g);
            self.apply_ops(&ops[..1], &inner)
        };
        insert_once(&self.braid_memo, key, Arc::new(img))
    }

    fn apply_ops(&self, ops: &[(u8, bool)], x: &UqElement) -> UqElement {
        if ops.is_empty() {
            return x.clone();
        }
        let letters: Vec<usize> = ops.iter().map(|o| o.0 as usize).collect();
        self.apply_hom(
            x,
            false,
            &|g| self.braid_image(ops, g),
            &|k| UqElement::k(self.cartan.act_root(&letters, k)),
        )
    }

    /// `T_i` (`sign > 0`) or `T_i^{-1}`.
    pub fn braid(&self, i: usize, sign: i32, x: &UqElement) -> UqElement {
        self.apply_ops(&[(i as u8, sign > 0)], x)
    }

    fn word_ops(w: &[usize], sign: i32) -> Vec<(u8, bool)> {
        if sign > 0 {
            w.iter().map(|&i| (i as u8, true)).collect()
        } else {
            w.iter().rev().map(|&i| (i as u8, false)).collect()
        }
    }

    /// `T_{w_1} ∘ … ∘ T_{w_ℓ}` for `sign > 0`, and its inverse
    /// `T_{w_ℓ}^{-1} ∘ … ∘ T_{w_1}^{-1}` otherwise.
    pub fn braid_word(&self, w: &[usize], sign: i32, x: &UqElement) -> UqElement {
        self.apply_ops(&Self::word_ops(w, sign), x)
    }

    /// Image of a single generator under `braid_word` (memoized).
    pub fn braid_word_generator(&self, w: &[usize], sign: i32, g: Gen) -> Arc<UqElement> {
        self.braid_image(&Self::word_ops(w, sign), g)
    }

    /// The twist `Θ_w = T_w ∘ S ∘ ∨`, an anti-automorphism.
    pub fn theta(&self, w: &[usize], x: &UqElement) -> UqElement {
        let c = &self.cartan;
        let n = self.rank();
        let mut imgs: HashMap<Gen, Arc<UqElement>> = HashMap::new();
        for j in 0..n {
            let wa = c.act_root(w, &c.simple_root(j));
            // Θ(f_j) = T_w(-e_j t_j) = -T_w(e_j) K_{wα_j}
            let te = self.braid_word_generator(w, 1, Gen::E(j as u8));
            imgs.insert(Gen::F(j as u8), Arc::new(self.mul(&te, &UqElement::k(wa.clone())).neg()));
            // Θ(e_j) = T_w(-t_j^{-1} f_j) = -K_{-wα_j} T_w(f_j)
            let tf = self.braid_word_generator(w, 1, Gen::F(j as u8));
            imgs.insert(Gen::E(j as u8), Arc::new(self.mul(&UqElement::k(Self::neg_k(&wa)), &tf).neg()));
        }
        // Θ(K_κ) = T_w(K_κ) = K_{wκ}
        self.apply_hom(x, true, &|g| imgs[&g].clone(), &|k| UqElement::k(c.act_root(w, k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qg(name: &str) -> QuantumGroup {
        QuantumGroup::new(CartanDatum::builtin(name).unwrap())
    }

    fn q(k: i64) -> RatFunc {
        RatFunc::q_pow(k)
    }

    #[test]
    fn commutation_examples() {
        let g = qg("A2");
        let ef = g.mul(&g.e(0), &g.f(0));
        let inv = (&q(1) - &q(-1)).inv().unwrap();
        let expect = g
            .mul(&g.f(0), &g.e(0))
            .add(&g.t(0, 1).scale(&inv))
            .sub(&g.t(0, -1).scale(&inv));
        assert_eq!(ef, expect);
        assert_eq!(g.mul(&g.e(0), &g.f(1)), g.mul(&g.f(1), &g.e(0)));
        let te = g.mul(&g.t(0, 1), &g.e(0));
        assert_eq!(te, g.mul(&g.e(0), &g.t(0, 1)).scale(&q(2)));
    }

    #[test]
    fn involution_examples() {
        let g = qg("A2");
        assert_eq!(g.star(&g.f_word(&[0, 1])), g.f_word(&[1, 0]));
        assert_eq!(g.vee(&g.f_word(&[0, 1])), g.e_word(&[0, 1]));
        assert_eq!(g.bar(&g.f(0).scale(&q(1))), g.f(0).scale(&q(-1)));
    }

    #[test]
    fn antipode_examples() {
        let g = qg("A2");
        assert_eq!(g.antipode(&g.f(0)), g.mul(&g.t(0, -1), &g.f(0)).neg());
        let lhs = g.antipode(&g.e_word(&[0, 1]));
        let rhs = g.mul(&g.e_word(&[1, 0]), &UqElement::k(vec![1, 1])).scale(&q(-1));
        assert_eq!(lhs, rhs);
        let x = g.f_word(&[0, 1]);
        let sv = |y: &UqElement| g.antipode(&g.vee(y));
        assert_eq!(sv(&sv(&x)), x);
    }

    #[test]
    fn braid_examples() {
        let g = qg("A2");
        assert_eq!(g.braid(0, 1, &g.f(0)), g.mul(&g.t(0, -1), &g.e(0)).neg());
        let expect = g.f_word(&[1, 0]).sub(&g.f_word(&[0, 1]).scale(&q(1)));
        assert_eq!(g.braid(0, 1, &g.f(1)), expect);
        let expect = g.f_word(&[0, 1]).sub(&g.f_word(&[1, 0]).scale(&q(1)));
        assert_eq!(g.braid(0, -1, &g.f(1)), expect);
        assert_eq!(g.braid_word(&[0, 1], 1, &g.f(0)), g.f(1));
        assert_eq!(g.braid_word(&[], 1, &g.f(0)), g.f(0));
        assert_eq!(g.braid_word(&[0, 1, 0], 1, &g.f(1)), g.braid_word(&[1, 0, 1], 1, &g.f(1)));
    }

    #[test]
    fn theta_examples() {
        let g = qg("A2");
        let w0 = [0, 1, 0];
        assert_eq!(g.theta(&w0, &g.f(0)), g.f(1));
        assert_eq!(g.theta(&w0, &g.f_word(&[0, 1])), g.f_word(&[0, 1]));
        assert_eq!(g.theta(&[], &g.f(0)), g.mul(&g.e(0), &g.t(0, 1)).neg());
    }
}
