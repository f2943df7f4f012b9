//! Exact coefficients: integer polynomials in `q`, the field `Q(q)` of
//! rational functions, Laurent polynomials with rational coefficients, and
//! the usual q-integers.
//!
//! Every value is kept in a canonical form so that structural equality and
//! hashing coincide with mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Dense polynomial in `q` with integer coefficients (little-endian, no
/// trailing zeros; the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = c;
        Poly(v)
    }

    pub fn from_coeffs(mut v: Vec<BigInt>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Poly(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.0.last()
    }

    /// True for `c * q^k`.
    pub fn is_monomial(&self) -> bool {
        match (self.valuation(), self.degree()) {
            (Some(v), Some(d)) => v == d,
            _ => false,
        }
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        Poly(v)
    }

    /// Divide by `q^k`; the caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Poly {
        if k == 0 {
            return self.clone();
        }
        Poly(self.0[k..].to_vec())
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|a| a * c).collect())
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly(self.0.iter().map(|a| a / c).collect())
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lc().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    fn add_ref(&self, other: &Poly) -> Poly {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut v = long.0.clone();
        for (a, b) in v.iter_mut().zip(short.0.iter()) {
            *a += b;
        }
        Poly::from_coeffs(v)
    }

    fn sub_ref(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.0.get(k);
            let b = other.0.get(k);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(v)
    }

    fn mul_ref(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(v)
    }

    /// Pseudo-remainder of `self` by a nonzero `b`.
    fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.lc().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc().unwrap().clone();
            r = r.scale(&lb).sub_ref(&b.scale(&lr).shift_up(dr - db));
        }
        r
    }

    /// Exact quotient `self / b` in `Z[q]`; `b` must divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lc().unwrap();
        let mut r = self.clone();
        let Some(dr) = r.degree() else {
            return Poly::zero();
        };
        if dr < db {
            panic!("div_exact: divisor does not divide dividend");
        }
        let mut quot = vec![BigInt::zero(); dr - db + 1];
        while let Some(dr) = r.degree() {
            assert!(dr >= db, "div_exact: nonzero remainder");
            let (t, rem) = r.lc().unwrap().div_rem(lb);
            assert!(rem.is_zero(), "div_exact: non-integral quotient");
            r = r.sub_ref(&b.scale(&t).shift_up(dr - db));
            quot[dr - db] = t;
        }
        Poly::from_coeffs(quot)
    }

    /// Greatest common divisor in `Q[q]`, returned primitive with positive
    /// leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let v = self.valuation().unwrap().min(other.valuation().unwrap());
        let mut a = self.shift_down(self.valuation().unwrap()).primitive();
        let mut b = other.shift_down(other.valuation().unwrap()).primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                a = Poly::one();
                break;
            }
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive().shift_up(v)
    }

    /// `q^deg * p(1/q)` for `deg >= degree`.
    fn reflect(&self, deg: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); deg + 1];
        for (k, c) in self.0.iter().enumerate() {
            v[deg - k] = c.clone();
        }
        Poly::from_coeffs(v)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(f, c, k as i64, var, first)?;
            first = false;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| json!([k, bigint_to_json(c)]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Poly> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("polynomial must be an array".into()))?;
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut last: Option<usize> = None;
        for t in arr {
            let pair = t
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse("polynomial term must be [degree, coeff]".into()))?;
            let deg = pair[0]
                .as_u64()
                .ok_or_else(|| Error::Parse("degree must be a nonnegative integer".into()))?
                as usize;
            if last.is_some_and(|l| l >= deg) {
                return Err(Error::Parse("polynomial terms must be strictly increasing".into()));
            }
            last = Some(deg);
            let c = bigint_from_json(&pair[1])?;
            if c.is_zero() {
                return Err(Error::Parse("zero coefficient in polynomial".into()));
            }
            coeffs.resize(deg + 1, BigInt::zero());
            coeffs[deg] = c;
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "q")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "q")
    }
}

fn write_term<C: fmt::Display + Signed + One + PartialEq>(
    f: &mut fmt::Formatter<'_>,
    c: &C,
    exp: i64,
    var: &str,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { "-" } else { "+" })?;
    }
    let unit = abs.is_one();
    match exp {
        0 => write!(f, "{abs}"),
        1 if unit => write!(f, "{var}"),
        1 => write!(f, "{abs}*{var}"),
        _ if unit => write!(f, "{var}^{exp}"),
        _ => write!(f, "{abs}*{var}^{exp}"),
    }
}

pub(crate) fn bigint_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => Value::String(c.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    if let Some(s) = v.as_str() {
        return s.parse::<BigInt>().map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")));
    }
    Err(Error::Parse(format!("expected integer, found {v}")))
}

/// Element of `Q(q)` in canonical form: `num/den` with `num, den` in `Z[q]`
/// coprime in `Q[q]`, the joint content of `(num, den)` equal to one, and a
/// positive leading coefficient on `den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RatFunc { num: Poly::constant(n), den: Poly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        RatFunc::normalized(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
    }

    /// `c * q^k` for any integer `k`.
    pub fn monomial(c: BigInt, k: i64) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        if k >= 0 {
            RatFunc { num: Poly::monomial(c, k as usize), den: Poly::one() }
        } else {
            RatFunc { num: Poly::constant(c), den: Poly::monomial(BigInt::one(), (-k) as usize) }
        }
    }

    pub fn q_pow(k: i64) -> Self {
        RatFunc::monomial(BigInt::one(), k)
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// `num / den`, put into canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::normalized(num, den))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a single term, i.e. the value is a
    /// Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    fn normalized(mut num: Poly, mut den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero();
        }
        let v = num.valuation().unwrap().min(den.valuation().unwrap());
        if v > 0 {
            num = num.shift_down(v);
            den = den.shift_down(v);
        }
        if !den.is_monomial() && !num.is_monomial() {
            let g = num.gcd(&den);
            if g.degree().unwrap_or(0) > 0 {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        let mut c = num.content().gcd(&den.content());
        if den.lc().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        RatFunc { num, den }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self * &other.inv()?)
    }

    /// Substitution `q -> 1/q`.
    pub fn bar(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let d = self.num.degree().unwrap().max(self.den.degree().unwrap());
        RatFunc::normalized(self.num.reflect(d), self.den.reflect(d))
    }

    pub fn pow(&self, n: i64) -> Result<RatFunc> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Multiply by `q^k`.
    pub fn mul_q_pow(&self, k: i64) -> RatFunc {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        if k > 0 {
            RatFunc::normalized(self.num.shift_up(k as usize), self.den.clone())
        } else {
            RatFunc::normalized(self.num.clone(), self.den.shift_up((-k) as usize))
        }
    }

    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if !self.is_laurent() {
            return None;
        }
        let shift = self.den.valuation().unwrap() as i64;
        let c = self.den.lc().unwrap();
        let mut terms = BTreeMap::new();
        for (k, a) in self.num.coeffs().iter().enumerate() {
            if !a.is_zero() {
                terms.insert(k as i64 - shift, BigRational::new(a.clone(), c.clone()));
            }
        }
        Some(LaurentPoly { terms })
    }

    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }

    pub fn from_json(v: &Value) -> Result<RatFunc> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("ratfunc must be an object".into()))?;
        let get = |k: &str| obj.get(k).ok_or_else(|| Error::Parse(format!("ratfunc missing {k:?}")));
        RatFunc::new(Poly::from_json(get("num")?)?, Poly::from_json(get("den")?)?)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.to_laurent() {
            return fmt::Display::fmt(&l, f);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::normalized(self.num.add_ref(&o.num), self.den.clone());
        }
        let num = self.num.mul_ref(&o.den).add_ref(&o.num.mul_ref(&self.den));
        RatFunc::normalized(num, self.den.mul_ref(&o.den))
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul_ref(&o.num), den: Poly::one() };
        }
        RatFunc::normalized(self.num.mul_ref(&o.num), self.den.mul_ref(&o.den))
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.scale(&BigInt::from(-1)), den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! owned_binops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl AddAssign<&$t> for $t {
            fn add_assign(&mut self, o: &$t) {
                *self = &*self + o;
            }
        }
        impl SubAssign<&$t> for $t {
            fn sub_assign(&mut self, o: &$t) {
                *self = &*self - o;
            }
        }
    };
}
owned_binops!(RatFunc);
owned_binops!(LaurentPoly);

/// Laurent polynomial in `q` with rational coefficients; no stored
/// coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(BigRational::one(), 0)
    }

    pub fn from_int(n: i64) -> Self {
        LaurentPoly::monomial(BigRational::from_integer(BigInt::from(n)), 0)
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn q_pow(exp: i64) -> Self {
        LaurentPoly::monomial(BigRational::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Membership in `q Z[q]`.
    pub fn in_q_zq(&self) -> bool {
        self.is_integral() && self.min_exp().is_none_or(|e| e >= 1)
    }

    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Terms of strictly positive degree.
    pub fn positive_part(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.range(1..).map(|(e, c)| (*e, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    pub fn mul_q_pow(&self, k: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, a)| (e + k, a.clone())).collect() }
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let Some(lo) = self.min_exp() else {
            return RatFunc::zero();
        };
        let hi = self.max_exp().unwrap();
        let l = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e - lo) as usize] = c.numer() * (&l / c.denom());
        }
        let num = Poly::from_coeffs(coeffs);
        let (num, den) = if lo >= 0 {
            (num.shift_up(lo as usize), Poly::constant(l))
        } else {
            (num, Poly::monomial(l, (-lo) as usize))
        };
        RatFunc::normalized(num, den)
    }

    /// Evaluate at an integer point (used for sanity checks only).
    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!([e, bigint_to_json(c.numer()), bigint_to_json(c.denom())]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<LaurentPoly> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("laurent polynomial must be an array".into()))?;
        let mut terms = BTreeMap::new();
        let mut last: Option<i64> = None;
        for t in arr {
            let tri = t
                .as_array()
                .filter(|p| p.len() == 3)
                .ok_or_else(|| Error::Parse("laurent term must be [exp, num, den]".into()))?;
            let e = tri[0].as_i64().ok_or_else(|| Error::Parse("exponent must be an integer".into()))?;
            if last.is_some_and(|l| l >= e) {
                return Err(Error::Parse("laurent terms must be strictly increasing".into()));
            }
            last = Some(e);
            let n = bigint_from_json(&tri[1])?;
            let d = bigint_from_json(&tri[2])?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let c = BigRational::new(n, d);
            if c.is_zero() {
                return Err(Error::Parse("zero coefficient in laurent polynomial".into()));
            }
            terms.insert(e, c);
        }
        Ok(LaurentPoly { terms })
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            write_term(f, c, *e, "q", n == 0)?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c);
        }
        r
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, &-c);
        }
        r
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, &(c1 * c2));
            }
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(l: LaurentPoly) -> RatFunc {
        l.to_ratfunc()
    }
}

/// Symmetric q-integer `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn qint(n: i64, d: i64) -> LaurentPoly {
    assert!(d > 0, "qint needs a positive symmetrizer");
    if n < 0 {
        return -qint(-n, d);
    }
    LaurentPoly::from_terms((0..n).map(|k| (d * (n - 1 - 2 * k), BigRational::one())))
}

/// `[n]_{q^d}! = [1][2]...[n]`.
pub fn qfactorial(n: i64, d: i64) -> LaurentPoly {
    assert!(n >= 0, "qfactorial of a negative integer");
    (1..=n).fold(LaurentPoly::one(), |acc, k| &acc * &qint(k, d))
}

/// Symmetric Gaussian binomial `[m choose n]_{q^d}` for `n >= 0` and any
/// integer `m`.
pub fn qbinom(m: i64, n: i64, d: i64) -> LaurentPoly {
    assert!(n >= 0, "qbinom needs n >= 0");
    if m < 0 {
        let b = qbinom(n - m - 1, n, d);
        return if n % 2 == 0 { b } else { -b };
    }
    if n > m {
        return LaurentPoly::zero();
    }
    let mut row = vec![LaurentPoly::one()];
    for k in 1..=m {
        let mut next = vec![LaurentPoly::one(); (k + 1) as usize];
        for j in 1..k {
            let a = row[j as usize].mul_q_pow(-d * j);
            let b = row[(j - 1) as usize].mul_q_pow(d * (k - j));
            next[j as usize] = &a + &b;
        }
        row = next;
    }
    row[n as usize].clone()
}

/// Ordinary integer binomial coefficient with `(m choose 2)` semantics for
/// any integer `m` (used by the T-system exponent).
pub fn int_binom(m: i64, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    let mut num = 1i64;
    let mut den = 1i64;
    for j in 0..k {
        num *= m - j;
        den *= j + 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> RatFunc {
        RatFunc::q_pow(k)
    }

    fn one_minus_q2() -> RatFunc {
        &RatFunc::one() - &q(2)
    }

    #[test]
    fn inverse_of_one_minus_q2() {
        let a = one_minus_q2();
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn additive_inverse() {
        let a = &q(1) - &q(-1);
        let b = &q(-1) - &q(1);
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn like_terms() {
        let x = one_minus_q2().inv().unwrap();
        let two = RatFunc::from_int(2).checked_div(&one_minus_q2()).unwrap();
        assert_eq!(&x + &x, two);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(RatFunc::zero().inv(), Err(Error::DivisionByZero));
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn bar_examples() {
        let a = &q(2) - &q(-1);
        assert_eq!(a.bar(), &q(-2) - &q(1));
        // 1/(1-q^2) -> q^2/(q^2-1) = -q^2/(1-q^2)
        let x = one_minus_q2().inv().unwrap();
        let expect = (-&q(2)).checked_div(&one_minus_q2()).unwrap();
        assert_eq!(x.bar(), expect);
        assert_eq!(RatFunc::from_int(5).bar(), RatFunc::from_int(5));
    }

    #[test]
    fn canonical_form_of_denominator() {
        // (2 - 2q^2) / (4 q^3 - 4 q) == -1/(2q)
        let num = Poly::from_coeffs(vec![2.into(), 0.into(), (-2).into()]);
        let den = Poly::from_coeffs(vec![0.into(), (-4).into(), 0.into(), 4.into()]);
        let r = RatFunc::new(num, den).unwrap();
        assert_eq!(r.num(), &Poly::constant((-1).into()));
        assert_eq!(r.den(), &Poly::monomial(2.into(), 1));
    }

    #[test]
    fn qint_examples() {
        assert_eq!(qint(1, 1), LaurentPoly::one());
        assert_eq!(qint(2, 1), &LaurentPoly::q_pow(1) + &LaurentPoly::q_pow(-1));
        let three = LaurentPoly::from_terms([(2, 1.into()), (0, 1.into()), (-2, 1.into())].map(|(e, c): (i64, i64)| (e, BigRational::from_integer(c.into()))));
        assert_eq!(qint(3, 1), three);
        assert_eq!(qint(-3, 2), -qint(3, 2));
        assert_eq!(qint(0, 1), LaurentPoly::zero());
    }

    #[test]
    fn qint_times_difference() {
        for d in 1..=3 {
            let diff = &LaurentPoly::q_pow(d) - &LaurentPoly::q_pow(-d);
            for n in -12..=12 {
                let lhs = &qint(n, d) * &diff;
                let rhs = &LaurentPoly::q_pow(d * n) - &LaurentPoly::q_pow(-d * n);
                assert_eq!(lhs, rhs, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(qfactorial(0, 1), LaurentPoly::one());
        assert_eq!(qfactorial(2, 1), qint(2, 1));
        assert_eq!(qbinom(2, 1, 1), qint(2, 1));
        // [m choose n] [n]! [m-n]! = [m]!
        for d in 1..=2 {
            for m in 0..7 {
                for n in 0..=m {
                    let lhs = &(&qbinom(m, n, d) * &qfactorial(n, d)) * &qfactorial(m - n, d);
                    assert_eq!(lhs, qfactorial(m, d));
                }
            }
        }
        // negative upper index: [-1 choose n] = (-1)^n
        assert_eq!(qbinom(-1, 3, 1), LaurentPoly::from_int(-1));
    }

    #[test]
    fn laurent_ratfunc_roundtrip() {
        let l = LaurentPoly::from_terms([(-3, BigRational::new(1.into(), 2.into())), (2, BigRational::from_integer((-7).into()))]);
        let r = l.to_ratfunc();
        assert!(r.is_laurent());
        assert_eq!(r.to_laurent().unwrap(), l);
    }

    #[test]
    fn json_round_trip() {
        let r = (&q(3) - &RatFunc::from_int(2)).checked_div(&(&one_minus_q2() * &q(-1))).unwrap();
        let v = r.to_json();
        assert_eq!(RatFunc::from_json(&v).unwrap(), r);
        let big = RatFunc::from_bigint("123456789012345678901234567890".parse().unwrap());
        assert_eq!(RatFunc::from_json(&big.to_json()).unwrap(), big);
        let l = LaurentPoly::from_terms([(-1, BigRational::new(3.into(), 4.into())), (5, BigRational::one())]);
        assert_eq!(l.to_json().to_string(), "[[-1,3,4],[5,1,1]]");
        assert_eq!(LaurentPoly::from_json(&l.to_json()).unwrap(), l);
    }

    #[test]
    fn gcd_cancels_common_factor() {
        // (1-q^4)/(1-q^2) = 1+q^2
        let a = &RatFunc::one() - &q(4);
        let b = one_minus_q2();
        assert_eq!(a.checked_div(&b).unwrap(), &RatFunc::one() + &q(2));
    }
}
