//! Braided vector spaces and the braid group action on tensor powers.
//!
//! A braiding is stored column by column in the lexicographic pure-tensor
//! basis of V⊗V: column `a*dim + b` is the image of `e_a ⊗ e_b`. Basis
//! multi-indices of V⊗ⁿ are numbers in base `dim` with the first factor
//! most significant. Braid words act on the right, letters applied from
//! left to right.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{axpy_into, Dense, SparseVec};
use crate::rack::{Cocycle2, Rack};
use crate::scalar::{Field, FieldSpec, Scalar};

/// A word in σ_i^{±1} on `n` strands; `i` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub n: usize,
    pub letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<(usize, i8)>) -> Result<BraidWord> {
        for &(i, e) in &letters {
            if i == 0 || i >= n || (e != 1 && e != -1) {
                return Err(Error::Invalid(format!("letter s{i}^{e} not valid on {n} strands")));
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn empty(n: usize) -> BraidWord {
        BraidWord { n, letters: Vec::new() }
    }

    /// Parses whitespace-separated letters such as `s1 s2 s1^-1`.
    pub fn parse(n: usize, s: &str) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || Error::Invalid(format!("bad braid letter {tok:?}"));
            let body = tok.strip_prefix('s').or_else(|| tok.strip_prefix('σ')).ok_or_else(bad)?;
            let (idx, exp) = match body.split_once('^') {
                Some((a, b)) => (a, b.parse::<i64>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let i: usize = idx.parse().map_err(|_| bad())?;
            if exp == 0 {
                continue;
            }
            let e: i8 = if exp > 0 { 1 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push((i, e));
            }
        }
        BraidWord::new(n, letters)
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { n: self.n, letters: self.letters.iter().rev().map(|&(i, e)| (i, -e)).collect() }
    }

    pub fn concat(&self, o: &BraidWord) -> Result<BraidWord> {
        if self.n != o.n {
            return Err(Error::StrandMismatch { expected: self.n, got: o.n });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        Ok(BraidWord { n: self.n, letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.letters.iter().map(|&(i, e)| if e == 1 { format!("s{i}") } else { format!("s{i}^-1") }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Monomial action on V⊗V: basis index -> (target index, scalar).
pub type Monomial = Vec<(u32, Scalar)>;

#[derive(Clone, Debug)]
pub struct BraidedSpace {
    field: Field,
    dim: usize,
    fwd: Vec<SparseVec>,
    inv: Vec<SparseVec>,
    mono_fwd: Option<Monomial>,
    mono_inv: Option<Monomial>,
    grades: Option<Vec<i64>>,
    origin: Option<Cocycle2>,
    labels: Option<Vec<String>>,
}

fn monomial_of(cols: &[SparseVec]) -> Option<Monomial> {
    cols.iter().map(|c| if c.len() == 1 { Some((c[0].0 as u32, c[0].1.clone())) } else { None }).collect()
}

impl BraidedSpace {
    /// Validates invertibility and the Yang–Baxter equation.
    pub fn from_columns(field: &Field, dim: usize, cols: Vec<SparseVec>) -> Result<BraidedSpace> {
        let v = BraidedSpace::unchecked(field, dim, cols)?;
        if !v.satisfies_yang_baxter() {
            return Err(Error::YangBaxterFails);
        }
        Ok(v)
    }

    fn unchecked(field: &Field, dim: usize, cols: Vec<SparseVec>) -> Result<BraidedSpace> {
        let d2 = dim * dim;
        if cols.len() != d2 || cols.iter().any(|c| c.iter().any(|(i, _)| *i >= d2)) {
            return Err(Error::Invalid("braiding must be dim² × dim²".into()));
        }
        let cols: Vec<SparseVec> = cols
            .into_iter()
            .map(|c| {
                let mut m = BTreeMap::new();
                axpy_into(field, &mut m, &field.one(), &c);
                m.into_iter().collect()
            })
            .collect();
        let mono_fwd = monomial_of(&cols);
        let (inv, mono_inv) = match &mono_fwd {
            Some(m) => {
                let mut inv: Vec<SparseVec> = vec![Vec::new(); d2];
                for (j, (t, s)) in m.iter().enumerate() {
                    let slot = &mut inv[*t as usize];
                    if !slot.is_empty() {
                        return Err(Error::NotInvertible);
                    }
                    slot.push((j, field.inv(s).ok_or(Error::NotInvertible)?));
                }
                let mi = monomial_of(&inv);
                (inv, mi)
            }
            None => {
                let dense = Dense::from_columns(field, d2, &cols);
                let di = dense.inverse(field).ok_or(Error::NotInvertible)?;
                let inv = di.columns(field);
                let mi = monomial_of(&inv);
                (inv, mi)
            }
        };
        Ok(BraidedSpace {
            field: field.clone(),
            dim,
            fwd: cols,
            inv,
            mono_fwd,
            mono_inv,
            grades: None,
            origin: None,
            labels: None,
        })
    }

    /// Matrix given as (row, col, value) triplets: T e_col = Σ value e_row.
    pub fn from_triplets(field: &Field, dim: usize, triplets: &[(usize, usize, Scalar)]) -> Result<BraidedSpace> {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); dim * dim];
        for (r, c, x) in triplets {
            if *c >= dim * dim {
                return Err(Error::Invalid(format!("column {c} out of range")));
            }
            cols[*c].push((*r, x.clone()));
        }
        BraidedSpace::from_columns(field, dim, cols)
    }

    // ---- built-ins ----

    /// κ_ζ: one dimension, T = ζ.
    pub fn kappa_zeta(field: &Field, zeta: &Scalar) -> Result<BraidedSpace> {
        if field.is_zero(zeta) {
            return Err(Error::NotInvertible);
        }
        BraidedSpace::from_columns(field, 1, vec![vec![(0, zeta.clone())]])
    }

    /// κ_∧ with basis (v₁, v₋₁): swaps mixed tensors, v₋₁⊗v₋₁ ↦ −v₋₁⊗v₋₁.
    pub fn kappa_wedge(field: &Field) -> Result<BraidedSpace> {
        if field.characteristic() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let (o, m) = (field.one(), field.from_int(-1));
        let v = BraidedSpace::from_columns(field, 2, vec![vec![(0, o.clone())], vec![(2, o.clone())], vec![(1, o)], vec![(3, m)]])?;
        Ok(v.with_labels(vec!["v1".into(), "v-1".into()]))
    }

    /// κ_± with basis (v, v̲): v̲⊗v ↦ −v⊗v̲, other pure tensors swapped.
    pub fn kappa_pm(field: &Field) -> Result<BraidedSpace> {
        if field.characteristic() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let (o, m) = (field.one(), field.from_int(-1));
        let v = BraidedSpace::from_columns(field, 2, vec![vec![(0, o.clone())], vec![(2, o.clone())], vec![(1, m)], vec![(3, o)]])?;
        Ok(v.with_labels(vec!["v".into(), "v_".into()]))
    }

    /// κR(c): T(x⊗y) = c(x,y)·y⊗x^y.
    pub fn rack_space(c: &Cocycle2) -> BraidedSpace {
        let r = c.rack();
        let n = r.size();
        let cols: Vec<SparseVec> =
            (0..n * n).map(|j| vec![(j % n * n + r.op(j / n, j % n), c.value(j / n, j % n).clone())]).collect();
        let mut v = BraidedSpace::unchecked(c.field(), n, cols).expect("rack braidings are monomial and invertible");
        v.origin = Some(c.clone());
        v.labels = Some((0..n).map(|x| r.label(x)).collect());
        v
    }

    /// κR with the trivial cocycle.
    pub fn rack_plain(field: &Field, r: &Rack) -> BraidedSpace {
        BraidedSpace::rack_space(&Cocycle2::constant(r, field, &field.one()).expect("constant cocycle"))
    }

    /// κR_∧ = κ[R×𝒯₂](c_∧), graded by the 𝒯₂ coordinate (φ ↦ 0, ψ ↦ 1).
    pub fn rack_wedge(field: &Field, r: &Rack) -> Result<BraidedSpace> {
        let rt = Rack::product(r, &Rack::t2());
        let v = BraidedSpace::rack_space(&Cocycle2::wedge(&rt, field)?);
        let g = (0..rt.size()).map(|i| (i % 2) as i64).collect();
        v.graded(g)
    }

    /// κR_± = κ[R×𝒯₂](c_±), graded by the 𝒯₂ coordinate.
    pub fn rack_pm(field: &Field, r: &Rack) -> Result<BraidedSpace> {
        let rt = Rack::product(r, &Rack::t2());
        let v = BraidedSpace::rack_space(&Cocycle2::pm(&rt, field)?);
        let g = (0..rt.size()).map(|i| (i % 2) as i64).collect();
        v.graded(g)
    }

    /// V⊗W with the braiding (id⊗s⊗id)(T_V⊗T_W)(id⊗s⊗id); basis (v,w) at
    /// index v·dim W + w.
    pub fn tensor(v: &BraidedSpace, w: &BraidedSpace) -> Result<BraidedSpace> {
        if v.field != w.field {
            return Err(Error::FieldMismatch);
        }
        let f = &v.field;
        let (dv, dw) = (v.dim, w.dim);
        let d = dv * dw;
        let mut cols = Vec::with_capacity(d * d);
        for j in 0..d * d {
            let (x, y) = (j / d, j % d);
            let (v1, w1, v2, w2) = (x / dw, x % dw, y / dw, y % dw);
            let mut acc = BTreeMap::new();
            for (a, s) in &v.fwd[v1 * dv + v2] {
                for (b, t) in &w.fwd[w1 * dw + w2] {
                    let (a1, a2, b1, b2) = (a / dv, a % dv, b / dw, b % dw);
                    let idx = (a1 * dw + b1) * d + (a2 * dw + b2);
                    axpy_into(f, &mut acc, &f.mul(s, t), &[(idx, f.one())]);
                }
            }
            cols.push(acc.into_iter().collect());
        }
        let mut out = BraidedSpace::unchecked(f, d, cols)?;
        if let (Some(gv), Some(gw)) = (&v.grades, &w.grades) {
            out.grades = Some((0..d).map(|i| gv[i / dw] + gw[i % dw]).collect());
        }
        if let (Some(lv), Some(lw)) = (&v.labels, &w.labels) {
            out.labels = Some((0..d).map(|i| format!("{}*{}", lv[i / dw], lw[i % dw])).collect());
        }
        Ok(out)
    }

    /// Dual space in the dual basis: T^∨ = (T⁻¹)ᵗ, so that the braid
    /// group acts on (V^∨)⊗ⁿ by the contragredient representation.
    pub fn dual(&self) -> BraidedSpace {
        let d2 = self.dim * self.dim;
        let transpose = |cols: &[SparseVec]| -> Vec<SparseVec> {
            let mut out: Vec<SparseVec> = vec![Vec::new(); d2];
            for (j, c) in cols.iter().enumerate() {
                for (i, x) in c {
                    out[*i].push((j, x.clone()));
                }
            }
            out
        };
        let fwd = transpose(&self.inv);
        let inv = transpose(&self.fwd);
        BraidedSpace {
            field: self.field.clone(),
            dim: self.dim,
            mono_fwd: monomial_of(&fwd),
            mono_inv: monomial_of(&inv),
            fwd,
            inv,
            grades: self.grades.clone(),
            origin: self.origin.as_ref().map(|c| c.inverse()),
            labels: self.labels.clone(),
        }
    }

    /// U ⊕_{α,β} V: T_{U,V} = α·swap, T_{V,U} = β·swap.
    pub fn weighted_sum(u: &BraidedSpace, v: &BraidedSpace, alpha: &Scalar, beta: &Scalar) -> Result<BraidedSpace> {
        AddablePair::weighted(u, v, alpha, beta)?.direct_sum()
    }

    pub fn plain_sum(u: &BraidedSpace, v: &BraidedSpace) -> Result<BraidedSpace> {
        let one = u.field.one();
        BraidedSpace::weighted_sum(u, v, &one, &one)
    }

    /// Attaches one integer grade per basis element, checking that the
    /// braiding preserves total grades of pure tensors.
    pub fn graded(mut self, grades: Vec<i64>) -> Result<BraidedSpace> {
        if grades.len() != self.dim {
            return Err(Error::Invalid("one grade per basis element required".into()));
        }
        let d = self.dim;
        for (j, c) in self.fwd.iter().enumerate() {
            let g = grades[j / d] + grades[j % d];
            if c.iter().any(|(i, _)| grades[i / d] + grades[i % d] != g) {
                return Err(Error::GradeIncompatible);
            }
        }
        self.grades = Some(grades);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> BraidedSpace {
        if labels.len() == self.dim {
            self.labels = Some(labels);
        }
        self
    }

    // ---- accessors ----

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grades(&self) -> Option<&[i64]> {
        self.grades.as_deref()
    }

    pub fn origin(&self) -> Option<&Cocycle2> {
        self.origin.as_ref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Image of e_a ⊗ e_b (index a·dim + b) under T or T⁻¹.
    pub fn column(&self, j: usize, inverse: bool) -> &SparseVec {
        if inverse {
            &self.inv[j]
        } else {
            &self.fwd[j]
        }
    }

    /// Monomial description of T (and T⁻¹) when every column has one entry.
    pub fn monomial(&self, inverse: bool) -> Option<&Monomial> {
        if inverse {
            self.mono_inv.as_ref()
        } else {
            self.mono_fwd.as_ref()
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.mono_fwd.is_some()
    }

    pub fn is_permutational(&self) -> bool {
        self.fwd == self.inv
    }

    /// Nonzero entries of T as (row, col, value), sorted by column then row.
    pub fn triplets(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (j, c) in self.fwd.iter().enumerate() {
            for (i, x) in c {
                out.push((*i, j, x.clone()));
            }
        }
        out
    }

    /// Total grade of a basis multi-index of V⊗ⁿ.
    pub fn grade_of(&self, n: usize, idx: usize) -> Option<i64> {
        let g = self.grades.as_ref()?;
        let mut t = idx;
        let mut s = 0;
        for _ in 0..n {
            s += g[t % self.dim];
            t /= self.dim;
        }
        Some(s)
    }

    // ---- action ----

    /// σ_i^{±1} (1-based `i`) on the basis vector `idx` of V⊗ⁿ.
    pub fn act_basis(&self, n: usize, i: usize, inverse: bool, idx: usize) -> SparseVec {
        let d = self.dim;
        let w2 = d.pow((n - i - 1) as u32);
        let w1 = w2 * d;
        let a = idx / w1 % d;
        let b = idx / w2 % d;
        let base = idx - a * w1 - b * w2;
        self.column(a * d + b, inverse)
            .iter()
            .map(|(k, s)| (base + (k / d) * w1 + (k % d) * w2, s.clone()))
            .collect()
    }

    pub fn act_letter(&self, n: usize, i: usize, inverse: bool, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (t, c) in v {
            axpy_into(&self.field, &mut acc, c, &self.act_basis(n, i, inverse, *t));
        }
        acc.into_iter().collect()
    }

    /// Image of a vector of V⊗ⁿ under a braid word.
    pub fn braid_act(&self, w: &BraidWord, n: usize, v: &[(usize, Scalar)]) -> Result<SparseVec> {
        if w.n != n {
            return Err(Error::StrandMismatch { expected: n, got: w.n });
        }
        let total = (self.dim as u128).pow(n as u32);
        if let Some((t, _)) = v.iter().find(|(t, _)| *t as u128 >= total) {
            return Err(Error::Invalid(format!("basis index {t} outside V^{n}")));
        }
        let mut cur: SparseVec = {
            let mut m = BTreeMap::new();
            axpy_into(&self.field, &mut m, &self.field.one(), v);
            m.into_iter().collect()
        };
        for &(i, e) in &w.letters {
            cur = self.act_letter(n, i, e < 0, &cur);
        }
        Ok(cur)
    }

    /// Yang–Baxter on every basis vector of V⊗³.
    pub fn satisfies_yang_baxter(&self) -> bool {
        self.yang_baxter_on(0..self.dim.pow(3))
    }

    fn yang_baxter_on(&self, idxs: impl Iterator<Item = usize>) -> bool {
        let one = self.field.one();
        for t in idxs {
            let v = vec![(t, one.clone())];
            let lhs = self.act_letter(3, 1, false, &self.act_letter(3, 2, false, &self.act_letter(3, 1, false, &v)));
            let rhs = self.act_letter(3, 2, false, &self.act_letter(3, 1, false, &self.act_letter(3, 2, false, &v)));
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// Basis bijection `perm` (basis i of self ↦ basis perm[i] of other)
    /// intertwining the two braidings exactly.
    pub fn is_isomorphic_via(&self, other: &BraidedSpace, perm: &[usize]) -> bool {
        if self.dim != other.dim || self.field != other.field || perm.len() != self.dim {
            return false;
        }
        let d = self.dim;
        (0..d * d).all(|j| {
            let img = perm[j / d] * d + perm[j % d];
            let mut mine: SparseVec = self.fwd[j].iter().map(|(i, s)| (perm[i / d] * d + perm[i % d], s.clone())).collect();
            mine.sort_by_key(|p| p.0);
            mine == other.fwd[img]
        })
    }

    pub fn to_json(&self) -> Value {
        let trip: Vec<Value> =
            self.triplets().iter().map(|(r, c, x)| json!([r, c, self.field.to_json(x)])).collect();
        let mut v = json!({"field": self.field.spec(), "dim": self.dim, "braiding": trip});
        if let Some(g) = &self.grades {
            v["grades"] = json!(g);
        }
        if let Some(l) = &self.labels {
            v["labels"] = json!(l);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<BraidedSpace> {
        let bad = |m: String| Error::Invalid(format!("braided space JSON: {m}"));
        let spec: FieldSpec =
            serde_json::from_value(v.get("field").cloned().ok_or_else(|| bad("missing field".into()))?).map_err(|e| bad(e.to_string()))?;
        let field = Field::new(&spec)?;
        let dim = v.get("dim").and_then(|d| d.as_u64()).ok_or_else(|| bad("missing dim".into()))? as usize;
        let raw = v.get("braiding").and_then(|b| b.as_array()).ok_or_else(|| bad("missing braiding".into()))?;
        let mut trip = Vec::new();
        for t in raw {
            let a = t.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("triplet must be [row, col, scalar]".into()))?;
            let r = a[0].as_u64().ok_or_else(|| bad("row".into()))? as usize;
            let c = a[1].as_u64().ok_or_else(|| bad("col".into()))? as usize;
            trip.push((r, c, field.from_json(&a[2])?));
        }
        let mut s = BraidedSpace::from_triplets(&field, dim, &trip)?;
        if let Some(g) = v.get("grades") {
            let g: Vec<i64> = serde_json::from_value(g.clone()).map_err(|e| bad(e.to_string()))?;
            s = s.graded(g)?;
        }
        if let Some(l) = v.get("labels") {
            let l: Vec<String> = serde_json::from_value(l.clone()).map_err(|e| bad(e.to_string()))?;
            s = s.with_labels(l);
        }
        Ok(s)
    }
}

/// ∇(tuple; w) and tuple^w for the set-level action T(x,y) = (y, x^y).
pub fn nabla(c: &Cocycle2, tuple: &[usize], w: &BraidWord) -> Result<(Scalar, Vec<usize>)> {
    if w.n != tuple.len() {
        return Err(Error::StrandMismatch { expected: tuple.len(), got: w.n });
    }
    let r = c.rack();
    if tuple.iter().any(|&x| x >= r.size()) {
        return Err(Error::Invalid("tuple entry outside the rack".into()));
    }
    let f = c.field();
    let mut s = f.one();
    let mut t = tuple.to_vec();
    for &(i, e) in &w.letters {
        let (a, b) = (t[i - 1], t[i]);
        if e > 0 {
            s = f.mul(&s, c.value(a, b));
            t[i - 1] = b;
            t[i] = r.op(a, b);
        } else {
            let x = r.op_inv(b, a);
            s = f.mul(&s, &f.inv(c.value(x, a)).expect("cocycle values are units"));
            t[i - 1] = x;
            t[i] = a;
        }
    }
    Ok((s, t))
}

/// Braided spaces U, V with T_{U,V}: U⊗V → V⊗U and T_{V,U}: V⊗U → U⊗V.
/// Columns of `t_uv` are indexed by u·dim V + v with images indexed by
/// v·dim U + u, and symmetrically for `t_vu`.
#[derive(Clone, Debug)]
pub struct AddablePair {
    pub u: BraidedSpace,
    pub v: BraidedSpace,
    pub t_uv: Vec<SparseVec>,
    pub t_vu: Vec<SparseVec>,
}

impl AddablePair {
    /// Validates every hexagon; the failing diagram is named by the
    /// summand of (U⊕V)⊗³ on which the braid relation breaks.
    pub fn new(u: &BraidedSpace, v: &BraidedSpace, t_uv: Vec<SparseVec>, t_vu: Vec<SparseVec>) -> Result<AddablePair> {
        if u.field != v.field {
            return Err(Error::FieldMismatch);
        }
        let m = u.dim * v.dim;
        if t_uv.len() != m || t_vu.len() != m || t_uv.iter().chain(&t_vu).any(|c| c.iter().any(|(i, _)| *i >= m)) {
            return Err(Error::Invalid("mixed braidings must be (dim U·dim V)-square".into()));
        }
        let p = AddablePair { u: u.clone(), v: v.clone(), t_uv, t_vu };
        for (name, t) in [("T_UV", &p.t_uv), ("T_VU", &p.t_vu)] {
            if Dense::from_columns(&u.field, m, t).inverse(&u.field).is_none() {
                return Err(Error::AddableHexagonFails(format!("{name} is not invertible")));
            }
        }
        let sum = p.raw_sum()?;
        let du = u.dim;
        let d = sum.dim;
        for pattern in ["UUV", "UVU", "VUU", "VVU", "VUV", "UVV"] {
            let pat: Vec<bool> = pattern.chars().map(|c| c == 'V').collect();
            let idxs = (0..d.pow(3)).filter(|t| {
                let digits = [t / (d * d), t / d % d, t % d];
                digits.iter().zip(&pat).all(|(x, &is_v)| (*x >= du) == is_v)
            });
            if !sum.yang_baxter_on(idxs) {
                return Err(Error::AddableHexagonFails(pattern.into()));
            }
        }
        Ok(p)
    }

    /// (V, V) with T_{V,V} = T_V.
    pub fn auto(v: &BraidedSpace) -> Result<AddablePair> {
        AddablePair::new(v, v, v.fwd.clone(), v.fwd.clone())
    }

    /// Swaps scaled by α (U⊗V → V⊗U) and β (V⊗U → U⊗V).
    pub fn weighted(u: &BraidedSpace, v: &BraidedSpace, alpha: &Scalar, beta: &Scalar) -> Result<AddablePair> {
        let (du, dv) = (u.dim, v.dim);
        let t_uv = (0..du * dv).map(|j| vec![((j % dv) * du + j / dv, alpha.clone())]).collect();
        let t_vu = (0..du * dv).map(|j| vec![((j % du) * dv + j / du, beta.clone())]).collect();
        AddablePair::new(u, v, t_uv, t_vu)
    }

    fn raw_sum(&self) -> Result<BraidedSpace> {
        let (du, dv) = (self.u.dim, self.v.dim);
        let d = du + dv;
        let mut cols = Vec::with_capacity(d * d);
        for j in 0..d * d {
            let (a, b) = (j / d, j % d);
            let col: SparseVec = match (a < du, b < du) {
                (true, true) => self.u.fwd[a * du + b].iter().map(|(k, s)| ((k / du) * d + k % du, s.clone())).collect(),
                (false, false) => {
                    let jj = (a - du) * dv + (b - du);
                    self.v.fwd[jj].iter().map(|(k, s)| ((du + k / dv) * d + du + k % dv, s.clone())).collect()
                }
                (true, false) => self.t_uv[a * dv + (b - du)].iter().map(|(k, s)| ((du + k / du) * d + k % du, s.clone())).collect(),
                (false, true) => self.t_vu[(a - du) * du + b].iter().map(|(k, s)| ((k / dv) * d + du + k % dv, s.clone())).collect(),
            };
            cols.push(col);
        }
        let mut out = BraidedSpace::unchecked(&self.u.field, d, cols)?;
        if let (Some(gu), Some(gv)) = (&self.u.grades, &self.v.grades) {
            out.grades = Some(gu.iter().chain(gv).copied().collect());
        }
        if let (Some(lu), Some(lv)) = (&self.u.labels, &self.v.labels) {
            out.labels = Some(lu.iter().chain(lv).cloned().collect());
        }
        Ok(out)
    }

    /// U ⊕ V with basis (U basis, then V basis).
    pub fn direct_sum(&self) -> Result<BraidedSpace> {
        let s = self.raw_sum()?;
        if let Some(g) = s.grades.clone() {
            return s.graded(g);
        }
        Ok(s)
    }
}

/// Whether r ↦ Σ_a a⁻¹·(r,a) intertwines κR(c) with κR_c, where A = μ_d.
pub fn rackify_embedding_check(c: &Cocycle2, d: u64) -> Result<bool> {
    let f = c.field();
    let rc = Rack::rackify(c, d)?;
    let big = BraidedSpace::rack_plain(f, &rc);
    let small = BraidedSpace::rack_space(c);
    let zeta = f.root_of_unity(d)?;
    let d = d as usize;
    let n = c.rack().size();
    let coef: Vec<Scalar> = (0..d).map(|i| f.pow(&zeta, -(i as i64)).expect("unit")).collect();
    // phi(e_r) = Σ_i ζ^{-i} e_{(r, ζ^i)}
    let phi = |r: usize| -> SparseVec { (0..d).map(|i| (r * d + i, coef[i].clone())).collect() };
    let nd = n * d;
    let phi2 = |v: &[(usize, Scalar)]| -> SparseVec {
        let mut acc = BTreeMap::new();
        for (j, s) in v {
            let (a, b) = (j / n, j % n);
            for (x, p) in phi(a) {
                for (y, q) in phi(b) {
                    axpy_into(f, &mut acc, &f.mul(s, &f.mul(&p, &q)), &[(x * nd + y, f.one())]);
                }
            }
        }
        acc.into_iter().collect()
    };
    for j in 0..n * n {
        let e = vec![(j, f.one())];
        let left = big.act_letter(2, 1, false, &phi2(&e));
        let right = phi2(&small.act_letter(2, 1, false, &e));
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}
