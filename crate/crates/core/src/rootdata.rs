//! Symmetrizable Cartan data, weights, root-lattice vectors and Weyl group
//! words.
//!
//! Indices are 0-based internally; JSON and CLI use 1-based indices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A word in the simple reflections (0-based letters).
pub type WeylWord = Vec<usize>;

/// An element of the root lattice in the basis of simple roots.
pub type RootVec = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    name: String,
    gcm: Vec<Vec<i64>>,
    sym: Vec<i64>,
    /// Auxiliary coordinates of each simple root (empty rows when the GCM is
    /// nonsingular).
    aux: Vec<Vec<i64>>,
    corank: usize,
}

impl fmt::Debug for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CartanDatum({})", self.name)
    }
}

/// Element of the weight lattice: coordinates in the fundamental weights,
/// followed by the auxiliary coordinates of a singular GCM.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

fn rank_of(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[rank][col];
                for c in 0..ncols {
                    let t = &f * &m[rank][c];
                    m[r][c] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solve `A x = b` over the rationals for a full-column-rank `A`; `None` if
/// inconsistent.
fn solve_rational(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigRational>> = (0..nrows)
        .map(|r| {
            let mut row: Vec<BigRational> =
                a[r].iter().map(|&x| BigRational::from_integer(x.into())).collect();
            row.push(BigRational::from_integer(b[r].into()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        for c in 0..=ncols {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=ncols {
                    let t = &f * &m[rank][c];
                    m[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if (rank..nrows).any(|r| !m[r][ncols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

impl CartanDatum {
    /// Validate and build a datum from a generalized Cartan matrix and its
    /// symmetrizer.
    pub fn new(name: impl Into<String>, gcm: Vec<Vec<i64>>, sym: Vec<i64>) -> Result<Self> {
        let n = gcm.len();
        let bad = |m: String| Err(Error::InvalidCartan(m));
        if n == 0 {
            return bad("empty index set".into());
        }
        if sym.len() != n || gcm.iter().any(|r| r.len() != n) {
            return bad("matrix and symmetrizer sizes disagree".into());
        }
        for i in 0..n {
            if sym[i] <= 0 {
                return bad(format!("symmetrizer entry d_{} must be positive", i + 1));
            }
            if gcm[i][i] != 2 {
                return bad(format!("diagonal entry a_{0}{0} must be 2", i + 1));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if gcm[i][j] > 0 {
                    return bad(format!("off-diagonal a_{}{} is positive", i + 1, j + 1));
                }
                if (gcm[i][j] == 0) != (gcm[j][i] == 0) {
                    return bad(format!("a_{0}{1} and a_{1}{0} disagree on vanishing", i + 1, j + 1));
                }
                if sym[i] * gcm[i][j] != sym[j] * gcm[j][i] {
                    return bad(format!("d_i a_ij = d_j a_ji fails at ({}, {})", i + 1, j + 1));
                }
            }
        }
        // Columns of the GCM are the fundamental-weight coordinates of the
        // simple roots; add a unit auxiliary coordinate to every root whose
        // column is dependent on the earlier ones.
        let mut cols: Vec<Vec<BigRational>> = Vec::new();
        let mut aux_for: Vec<Option<usize>> = vec![None; n];
        let mut corank = 0;
        for j in 0..n {
            let col: Vec<BigRational> =
                (0..n).map(|i| BigRational::from_integer(gcm[i][j].into())).collect();
            let mut trial = cols.clone();
            trial.push(col.clone());
            if rank_of(&trial) > cols.len() {
                cols = trial;
            } else {
                aux_for[j] = Some(corank);
                corank += 1;
            }
        }
        let aux = aux_for
            .iter()
            .map(|a| {
                let mut row = vec![0; corank];
                if let Some(t) = a {
                    row[*t] = 1;
                }
                row
            })
            .collect();
        Ok(CartanDatum { name: name.into(), gcm, sym, aux, corank })
    }

    /// Built-in finite types (`A1`..`A8`, `B2`.., `C2`.., `D4`.., `F4`,
    /// `G2`) and `A1xA1`.
    pub fn builtin(name: &str) -> Result<Self> {
        let unknown = || Error::InvalidCartan(format!("unknown Cartan type {name:?}"));
        match name {
            "G2" => return CartanDatum::new(name, vec![vec![2, -3], vec![-1, 2]], vec![1, 3]),
            "F4" => {
                let gcm = vec![
                    vec![2, -1, 0, 0],
                    vec![-1, 2, -1, 0],
                    vec![0, -2, 2, -1],
                    vec![0, 0, -1, 2],
                ];
                return CartanDatum::new(name, gcm, vec![2, 2, 1, 1]);
            }
            "A1xA1" => return CartanDatum::new(name, vec![vec![2, 0], vec![0, 2]], vec![1, 1]),
            _ => {}
        }
        let (kind, rank) = name.split_at(1);
        let n: usize = rank.parse().map_err(|_| unknown())?;
        if !(1..=8).contains(&n) {
            return Err(unknown());
        }
        let mut gcm = vec![vec![0i64; n]; n];
        for i in 0..n {
            gcm[i][i] = 2;
            if i + 1 < n {
                gcm[i][i + 1] = -1;
                gcm[i + 1][i] = -1;
            }
        }
        let mut sym = vec![1i64; n];
        match kind {
            "A" => {}
            "B" if n >= 2 => {
                gcm[n - 1][n - 2] = -2;
                sym = vec![2; n];
                sym[n - 1] = 1;
            }
            "C" if n >= 2 => {
                gcm[n - 2][n - 1] = -2;
                sym[n - 1] = 2;
            }
            "D" if n >= 4 => {
                gcm[n - 2][n - 1] = 0;
                gcm[n - 1][n - 2] = 0;
                gcm[n - 3][n - 1] = -1;
                gcm[n - 1][n - 3] = -1;
            }
            _ => return Err(unknown()),
        }
        CartanDatum::new(name, gcm, sym)
    }

    /// Accepts `"A2"`, `{"type": "A2"}` or `{"gcm": [[..]], "sym": [..]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        if let Some(s) = v.as_str() {
            return CartanDatum::builtin(s);
        }
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidCartan("expected a type name or an object".into()))?;
        if let Some(t) = obj.get("type") {
            if obj.len() != 1 {
                return Err(Error::InvalidCartan("\"type\" cannot be combined with other keys".into()));
            }
            let s = t.as_str().ok_or_else(|| Error::InvalidCartan("\"type\" must be a string".into()))?;
            return CartanDatum::builtin(s);
        }
        if let Some(k) = obj.keys().find(|k| *k != "gcm" && *k != "sym") {
            return Err(Error::InvalidCartan(format!("unknown key {k:?}")));
        }
        let ints = |v: &Value| -> Result<Vec<i64>> {
            v.as_array()
                .ok_or_else(|| Error::InvalidCartan("expected an integer array".into()))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::InvalidCartan("expected an integer".into())))
                .collect()
        };
        let gcm_v = obj.get("gcm").ok_or_else(|| Error::InvalidCartan("missing \"gcm\"".into()))?;
        let gcm = gcm_v
            .as_array()
            .ok_or_else(|| Error::InvalidCartan("\"gcm\" must be an array of rows".into()))?
            .iter()
            .map(ints)
            .collect::<Result<Vec<_>>>()?;
        let sym = match obj.get("sym") {
            Some(s) => ints(s)?,
            None => return Err(Error::InvalidCartan("missing \"sym\"".into())),
        };
        CartanDatum::new("custom", gcm, sym)
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "gcm": self.gcm, "sym": self.sym})
    }

    /// Parse a Cartan spec given on the command line: a built-in name or
    /// inline JSON.
    pub fn parse(spec: &str) -> Result<Self> {
        let t = spec.trim();
        if t.starts_with('{') {
            let v: Value = serde_json::from_str(t).map_err(|e| Error::InvalidCartan(e.to_string()))?;
            CartanDatum::from_json(&v)
        } else {
            CartanDatum::builtin(t)
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.gcm.len()
    }

    pub fn corank(&self) -> usize {
        self.corank
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.gcm[i][j]
    }

    pub fn d(&self, i: usize) -> i64 {
        self.sym[i]
    }

    pub fn gcm(&self) -> &[Vec<i64>] {
        &self.gcm
    }

    pub fn sym(&self) -> &[i64] {
        &self.sym
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i + 1, rank: self.rank() })
        }
    }

    pub fn check_word(&self, w: &[usize]) -> Result<()> {
        w.iter().try_for_each(|&i| self.check_index(i))
    }

    /// Order of `s_i s_j` (2, 3, 4, 6, or 0 for infinite).
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        match self.a(i, j) * self.a(j, i) {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => 0,
        }
    }

    // ---- root lattice ----

    pub fn simple_root(&self, i: usize) -> RootVec {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn zero_root(&self) -> RootVec {
        vec![0; self.rank()]
    }

    /// `(α_i, α_j) = d_i a_ij`.
    pub fn root_form(&self, i: usize, j: usize) -> i64 {
        self.sym[i] * self.gcm[i][j]
    }

    /// Symmetric form on the root lattice.
    pub fn root_pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    s += ai * bj * self.root_form(i, j);
                }
            }
        }
        s
    }

    /// `(α_i, β)` for a root-lattice vector β.
    pub fn simple_pair(&self, i: usize, b: &[i64]) -> i64 {
        b.iter().enumerate().map(|(j, &bj)| bj * self.root_form(i, j)).sum()
    }

    /// `⟨β, h_i⟩`.
    pub fn coroot_pair(&self, b: &[i64], i: usize) -> i64 {
        b.iter().enumerate().map(|(j, &bj)| bj * self.gcm[i][j]).sum()
    }

    /// `(β, ρ) = Σ_j d_j β_j`.
    pub fn rho_pair(&self, b: &[i64]) -> i64 {
        b.iter().zip(&self.sym).map(|(x, d)| x * d).sum()
    }

    pub fn height(b: &[i64]) -> i64 {
        b.iter().sum()
    }

    pub fn reflect_root(&self, i: usize, b: &[i64]) -> RootVec {
        let c = self.coroot_pair(b, i);
        let mut r = b.to_vec();
        r[i] -= c;
        r
    }

    /// Act by `s_{w_1} ∘ … ∘ s_{w_ℓ}` on a root-lattice vector.
    pub fn act_root(&self, w: &[usize], b: &[i64]) -> RootVec {
        w.iter().rev().fold(b.to_vec(), |acc, &i| self.reflect_root(i, &acc))
    }

    // ---- weight lattice ----

    pub fn weight_dim(&self) -> usize {
        self.rank() + self.corank
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut v = vec![0; self.weight_dim()];
        v[i] = 1;
        Weight(v)
    }

    pub fn rho(&self) -> Weight {
        let mut v = vec![0; self.weight_dim()];
        v[..self.rank()].iter_mut().for_each(|x| *x = 1);
        Weight(v)
    }

    pub fn zero_weight(&self) -> Weight {
        Weight(vec![0; self.weight_dim()])
    }

    pub fn weight_from_fundamental(&self, coords: &[i64]) -> Result<Weight> {
        if coords.len() != self.rank() {
            return Err(Error::Parse(format!(
                "weight needs {} fundamental coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        let mut v = coords.to_vec();
        v.resize(self.weight_dim(), 0);
        Ok(Weight(v))
    }

    pub fn simple_root_weight(&self, j: usize) -> Weight {
        let mut v: Vec<i64> = (0..self.rank()).map(|i| self.gcm[i][j]).collect();
        v.extend(self.aux[j].iter().copied());
        Weight(v)
    }

    pub fn root_to_weight(&self, b: &[i64]) -> Weight {
        let mut acc = self.zero_weight();
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                acc = acc.add(&self.simple_root_weight(j).scale(bj));
            }
        }
        acc
    }

    /// Root-lattice coordinates of a weight, if it lies in the root lattice.
    pub fn weight_to_root(&self, w: &Weight) -> Option<RootVec> {
        let x = self.weight_in_root_span(w)?;
        x.iter().map(|c| if c.is_integer() { c.to_integer().try_into().ok() } else { None }).collect()
    }

    fn weight_in_root_span(&self, w: &Weight) -> Option<Vec<BigRational>> {
        let n = self.rank();
        let rows: Vec<Vec<i64>> = (0..self.weight_dim())
            .map(|r| (0..n).map(|j| self.simple_root_weight(j).0[r]).collect())
            .collect();
        solve_rational(&rows, &w.0)
    }

    /// `⟨λ, h_i⟩`.
    pub fn pairing(&self, l: &Weight, i: usize) -> i64 {
        l.0[i]
    }

    /// `(λ, μ)`. Defined whenever one argument lies in the rational span of
    /// the simple roots (always, for a nonsingular GCM).
    pub fn bilinear(&self, l: &Weight, m: &Weight) -> Result<BigRational> {
        let via = |x: &Weight, y: &Weight| -> Option<BigRational> {
            let c = self.weight_in_root_span(y)?;
            Some(c.iter().enumerate().fold(BigRational::zero(), |acc, (j, cj)| {
                acc + cj * BigRational::from_integer(BigInt::from(self.sym[j] * x.0[j]))
            }))
        };
        via(l, m).or_else(|| via(m, l)).ok_or_else(|| {
            Error::Precondition("bilinear form needs one argument in the span of the simple roots".into())
        })
    }

    pub fn reflect_weight(&self, i: usize, l: &Weight) -> Weight {
        l.sub(&self.simple_root_weight(i).scale(l.0[i]))
    }

    /// Act by `s_{w_1} ∘ … ∘ s_{w_ℓ}`.
    pub fn weyl_act(&self, w: &[usize], l: &Weight) -> Weight {
        w.iter().rev().fold(l.clone(), |acc, &i| self.reflect_weight(i, &acc))
    }

    pub fn is_dominant(&self, l: &Weight) -> bool {
        (0..self.rank()).all(|i| l.0[i] >= 0)
    }

    // ---- Weyl group words ----

    /// `β_k = s_{i_1} … s_{i_{k-1}} α_{i_k}` for every position.
    pub fn root_sequence(&self, w: &[usize]) -> Vec<RootVec> {
        (0..w.len()).map(|k| self.act_root(&w[..k], &self.simple_root(w[k]))).collect()
    }

    pub fn is_reduced(&self, w: &[usize]) -> bool {
        self.root_sequence(w).iter().all(|b| b.iter().all(|&x| x >= 0))
    }

    pub fn positive_roots_along(&self, w: &[usize]) -> Result<Vec<RootVec>> {
        self.check_word(w)?;
        let roots = self.root_sequence(w);
        if roots.iter().any(|b| b.iter().any(|&x| x < 0)) {
            return Err(Error::NotReduced(w.iter().map(|i| i + 1).collect()));
        }
        Ok(roots)
    }

    /// Reduced word for the same element, built letter by letter with the
    /// exchange condition.
    pub fn reduce_word(&self, w: &[usize]) -> WeylWord {
        let mut out: WeylWord = Vec::new();
        for &s in w {
            let image = self.act_root(&out, &self.simple_root(s));
            if image.iter().all(|&x| x >= 0) {
                out.push(s);
            } else {
                let target: RootVec = image.iter().map(|x| -x).collect();
                let k = self
                    .root_sequence(&out)
                    .iter()
                    .position(|b| *b == target)
                    .expect("exchange condition");
                out.remove(k);
            }
        }
        out
    }

    pub fn length(&self, w: &[usize]) -> usize {
        self.reduce_word(w).len()
    }

    /// Equality of Weyl group elements via the action on ρ.
    pub fn word_equal(&self, u: &[usize], w: &[usize]) -> bool {
        let r = self.rho();
        self.weyl_act(u, &r) == self.weyl_act(w, &r)
    }

    /// Weak right order: `ℓ(w) = ℓ(u) + ℓ(u^{-1} w)`.
    pub fn weak_order_leq(&self, u: &[usize], w: &[usize]) -> bool {
        let mut uinv_w: WeylWord = u.iter().rev().copied().collect();
        uinv_w.extend_from_slice(w);
        self.length(w) == self.length(u) + self.length(&uinv_w)
    }

    /// One reduced word for each element of length at most `max_len`, in
    /// order of length and then of word.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<WeylWord> {
        let r = self.rho();
        let mut seen = std::collections::HashSet::new();
        seen.insert(r.clone());
        let mut out = vec![Vec::new()];
        let mut layer: Vec<WeylWord> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for i in 0..self.rank() {
                    let mut v = w.clone();
                    v.push(i);
                    if self.is_reduced(&v) && seen.insert(self.weyl_act(&v, &r)) {
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// The simple reflection `s_j` with `w(α_i) = α_j`, if any.
    pub fn simple_image(&self, w: &[usize], i: usize) -> Option<usize> {
        let img = self.act_root(w, &self.simple_root(i));
        (0..self.rank()).find(|&j| img == self.simple_root(j))
    }
}

/// Parse a comma-separated 1-based word such as `1,2,1`.
pub fn parse_word(s: &str) -> Result<WeylWord> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| {
            let v: usize = x.trim().parse().map_err(|_| Error::Parse(format!("bad word letter {x:?}")))?;
            if v == 0 {
                return Err(Error::Parse("word letters are 1-based".into()));
            }
            Ok(v - 1)
        })
        .collect()
}

pub fn word_to_json(w: &[usize]) -> Value {
    json!(w.iter().map(|i| i + 1).collect::<Vec<_>>())
}

pub fn format_word(w: &[usize]) -> String {
    w.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

pub fn rational_to_i64(r: &BigRational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Half of an even integer, as used for `(β, β)/2`.
pub fn half(x: i64) -> i64 {
    debug_assert!(x % 2 == 0);
    x / 2
}

#[allow(dead_code)]
fn is_unit(r: &BigRational) -> bool {
    r.abs().is_one()
}
