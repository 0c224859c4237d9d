//! Coinvariants H₀(Bₙ, V⊗ⁿ) and the graded algebra C(V).
//!
//! Two engines compute the same spaces. The linear engine quotients V⊗ⁿ by
//! span{σ_i v − v} for any braided space. The orbit engine handles κR(c): it
//! explores the Bₙ-orbits on Rⁿ breadth first, keeping a scalar potential per
//! tuple so that e_t ≡ φ(t)·e_rep in the quotient. An orbit survives iff no
//! edge contradicts the potentials, i.e. every cycle has label product 1.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::braided::BraidedSpace;
use crate::caps::{cap_check, pow_sat, Caps};
use crate::error::{Error, Result};
use crate::linalg::{axpy_into, Echelon, SparseVec};
use crate::rack::{Cocycle2, Rack};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    Linear,
    Orbit,
}

/// Base-`k` digits of `idx`, most significant first.
pub fn tuple_of(idx: usize, k: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    let mut t = idx;
    for slot in out.iter_mut().rev() {
        *slot = t % k;
        t /= k;
    }
    out
}

pub fn index_of(tuple: &[usize], k: usize) -> usize {
    tuple.iter().fold(0, |a, &x| a * k + x)
}

// ---------------------------------------------------------------------------
// Linear engine

/// V⊗ⁿ (or its grade-g part) modulo the braid relations.
#[derive(Clone, Debug)]
pub struct LinearCoinv {
    pub n: usize,
    pub grade: Option<i64>,
    dim_v: usize,
    ech: Echelon,
    basis: Vec<usize>,
}

impl LinearCoinv {
    pub fn compute(v: &BraidedSpace, n: usize, grade: Option<i64>, caps: &Caps) -> Result<LinearCoinv> {
        let d = v.dim();
        let total = pow_sat(d, n);
        cap_check("V^n basis (linear engine)", total, caps.linear_basis.max(1))?;
        let total = total as usize;
        let indices: Vec<usize> = match grade {
            None => (0..total).collect(),
            Some(g) => {
                if v.grades().is_none() {
                    return Err(Error::Invalid("grade restriction needs a graded space".into()));
                }
                (0..total).filter(|&t| v.grade_of(n, t) == Some(g)).collect()
            }
        };
        let f = v.field();
        let mut ech = Echelon::new(f);
        let one = f.one();
        for &t in &indices {
            for i in 1..n {
                let mut acc = BTreeMap::new();
                axpy_into(f, &mut acc, &one, &v.act_basis(n, i, false, t));
                axpy_into(f, &mut acc, &f.neg(&one), &[(t, one.clone())]);
                if !acc.is_empty() {
                    let rel: SparseVec = acc.into_iter().collect();
                    ech.insert(&rel);
                }
            }
        }
        let basis = indices.into_iter().filter(|t| !ech.is_pivot(*t)).collect();
        Ok(LinearCoinv { n, grade, dim_v: d, ech, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis of the quotient as pure-tensor multi-indices.
    pub fn basis_tuples(&self) -> Vec<Vec<usize>> {
        self.basis.iter().map(|&t| tuple_of(t, self.dim_v, self.n)).collect()
    }

    /// Coordinates of a vector of V⊗ⁿ in the quotient basis.
    pub fn coords(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.ech
            .reduce(v)
            .into_iter()
            .map(|(i, x)| (self.basis.binary_search(&i).expect("reduced vectors live on the quotient basis"), x))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Orbit engine

/// Arithmetic on edge labels; potentials live in the same group.
trait Labels: Sync {
    type L: Clone + PartialEq + Send + Sync;
    fn one(&self) -> Self::L;
    fn edge(&self, a: usize, b: usize) -> Self::L;
    fn div(&self, a: &Self::L, b: &Self::L) -> Self::L;
    fn scalar(&self, a: &Self::L) -> Scalar;
}

/// Labels ζ^k stored as exponents k mod d.
struct ExpLabels {
    d: u32,
    k: usize,
    table: Vec<u32>,
    powers: Vec<Scalar>,
}

impl Labels for ExpLabels {
    type L = u32;
    fn one(&self) -> u32 {
        0
    }
    fn edge(&self, a: usize, b: usize) -> u32 {
        self.table[a * self.k + b]
    }
    fn div(&self, a: &u32, b: &u32) -> u32 {
        (a + self.d - b) % self.d
    }
    fn scalar(&self, a: &u32) -> Scalar {
        self.powers[*a as usize].clone()
    }
}

struct ScalarLabels {
    field: Field,
    k: usize,
    table: Vec<Scalar>,
}

impl Labels for ScalarLabels {
    type L = Scalar;
    fn one(&self) -> Scalar {
        self.field.one()
    }
    fn edge(&self, a: usize, b: usize) -> Scalar {
        self.table[a * self.k + b].clone()
    }
    fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.field.div(a, b).expect("labels are units")
    }
    fn scalar(&self, a: &Scalar) -> Scalar {
        a.clone()
    }
}

const UNSEEN: u32 = u32::MAX;

enum Store<L> {
    Dense { orbit: Vec<u32>, pot: Vec<L> },
    Sparse(HashMap<usize, (u32, L)>),
}

impl<L: Clone> Store<L> {
    fn get(&self, t: usize) -> Option<(u32, &L)> {
        match self {
            Store::Dense { orbit, pot } => (orbit[t] != UNSEEN).then(|| (orbit[t], &pot[t])),
            Store::Sparse(m) => m.get(&t).map(|(o, l)| (*o, l)),
        }
    }
    fn set(&mut self, t: usize, o: u32, l: L) {
        match self {
            Store::Dense { orbit, pot } => {
                orbit[t] = o;
                pot[t] = l;
            }
            Store::Sparse(m) => {
                m.insert(t, (o, l));
            }
        }
    }
}

/// An edge t →σ_i t' whose label contradicts the potentials: the cycle
/// through it has label product `discrepancy` ≠ 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KillWitness {
    pub tuple: Vec<usize>,
    pub letter: usize,
    pub discrepancy: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitInfo {
    pub rep: Vec<usize>,
    pub size: usize,
    pub alive: bool,
    pub witness: Option<KillWitness>,
}

struct Raw<L> {
    store: Store<L>,
    orbits: Vec<OrbitInfo>,
}

fn explore<O: Labels>(
    ops: &O,
    rack: &Rack,
    n: usize,
    keep: &dyn Fn(&[usize]) -> bool,
    dense: bool,
    field: &Field,
) -> Raw<O::L> {
    let k = rack.size();
    let total = k.pow(n as u32);
    let mut store = if dense {
        Store::Dense { orbit: vec![UNSEEN; total], pot: vec![ops.one(); total] }
    } else {
        Store::Sparse(HashMap::new())
    };
    let weights: Vec<usize> = (0..n).map(|p| k.pow((n - 1 - p) as u32)).collect();
    let mut orbits = Vec::new();
    let mut queue = VecDeque::new();
    for seed in 0..total {
        if store.get(seed).is_some() {
            continue;
        }
        let st = tuple_of(seed, k, n);
        if !keep(&st) {
            continue;
        }
        let id = orbits.len() as u32;
        store.set(seed, id, ops.one());
        queue.push_back(seed);
        let mut size = 0usize;
        let mut witness = None;
        while let Some(t) = queue.pop_front() {
            size += 1;
            let pt = store.get(t).expect("visited").1.clone();
            for i in 1..n {
                let (w1, w2) = (weights[i - 1], weights[i]);
                let a = t / w1 % k;
                let b = t / w2 % k;
                let t2 = t - a * w1 - b * w2 + b * w1 + rack.op(a, b) * w2;
                // e_t ≡ λ e_{t2}, so φ(t2) = φ(t) / λ
                let want = ops.div(&pt, &ops.edge(a, b));
                match store.get(t2) {
                    None => {
                        store.set(t2, id, want);
                        queue.push_back(t2);
                    }
                    Some((_, have)) => {
                        if witness.is_none() && *have != want {
                            let disc = ops.scalar(&ops.div(have, &want));
                            witness = Some(KillWitness {
                                tuple: tuple_of(t, k, n),
                                letter: i,
                                discrepancy: field.display(&disc),
                            });
                        }
                    }
                }
            }
        }
        orbits.push(OrbitInfo { rep: st, size, alive: witness.is_none(), witness });
    }
    Raw { store, orbits }
}

enum Inner {
    Exp(ExpLabels, Raw<u32>),
    Gen(ScalarLabels, Raw<Scalar>),
}

/// Degree-n coinvariants of κR(c) by orbit exploration.
pub struct OrbitCoinv {
    pub n: usize,
    k: usize,
    field: Field,
    inner: Inner,
    /// orbit id -> position in the basis of surviving orbits
    position: Vec<Option<usize>>,
    alive: Vec<usize>,
}

/// A partition of R into unions of components with required counts.
#[derive(Clone, Debug)]
pub struct Multidegree {
    pub part_of: Vec<usize>,
    pub counts: Vec<usize>,
}

impl Multidegree {
    pub fn validate(&self, rack: &Rack) -> Result<()> {
        if self.part_of.len() != rack.size() {
            return Err(Error::Invalid("partition must label every rack element".into()));
        }
        if self.part_of.iter().any(|&p| p >= self.counts.len()) {
            return Err(Error::Invalid("partition label without a count".into()));
        }
        for comp in rack.components() {
            if comp.iter().any(|&x| self.part_of[x] != self.part_of[comp[0]]) {
                return Err(Error::Invalid("partition pieces must be unions of components".into()));
            }
        }
        Ok(())
    }

    fn matches(&self, t: &[usize]) -> bool {
        let mut c = vec![0usize; self.counts.len()];
        for &x in t {
            c[self.part_of[x]] += 1;
        }
        c == self.counts
    }

    fn count(&self) -> u128 {
        // multinomial(n; counts) · Π |part|^count
        let n: usize = self.counts.iter().sum();
        let mut sizes = vec![0usize; self.counts.len()];
        for &p in &self.part_of {
            sizes[p] += 1;
        }
        let mut acc: u128 = 1;
        let mut left = n as u128;
        for (c, s) in self.counts.iter().zip(&sizes) {
            for j in 0..*c as u128 {
                acc = acc.saturating_mul(left - j) / (j + 1);
            }
            left -= *c as u128;
            acc = acc.saturating_mul(pow_sat(*s, *c));
        }
        acc
    }
}

impl OrbitCoinv {
    pub fn compute(c: &Cocycle2, n: usize, multideg: Option<&Multidegree>, caps: &Caps) -> Result<OrbitCoinv> {
        let rack = c.rack();
        let k = rack.size();
        let f = c.field();
        let full = pow_sat(k, n);
        let (dense, keep): (bool, Box<dyn Fn(&[usize]) -> bool + Sync>) = match multideg {
            None => {
                cap_check("R^n tuples (orbit engine)", full, caps.orbit_tuples)?;
                (true, Box::new(|_: &[usize]| true))
            }
            Some(md) => {
                md.validate(rack)?;
                if md.counts.iter().sum::<usize>() != n {
                    return Err(Error::Invalid("multidegree must sum to n".into()));
                }
                let restricted = md.count();
                cap_check("R^n tuples of the multidegree (orbit engine)", restricted, caps.orbit_tuples)?;
                let md = md.clone();
                (full <= caps.orbit_tuples, Box::new(move |t: &[usize]| md.matches(t)))
            }
        };
        let inner = match c.cyclotomic_order() {
            Some(d) if d <= u32::MAX as u64 && f.root_of_unity(d).is_ok() => {
                let zeta = f.root_of_unity(d)?;
                let powers: Vec<Scalar> = (0..d as i64).map(|i| f.pow(&zeta, i).expect("unit")).collect();
                let pos: HashMap<&Scalar, u32> = powers.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
                let table = (0..k * k).map(|j| pos[c.value(j / k, j % k)]).collect();
                let ops = ExpLabels { d: d as u32, k, table, powers: powers.clone() };
                let raw = explore(&ops, rack, n, &*keep, dense, f);
                Inner::Exp(ops, raw)
            }
            _ => {
                let table = (0..k * k).map(|j| c.value(j / k, j % k).clone()).collect();
                let ops = ScalarLabels { field: f.clone(), k, table };
                let raw = explore(&ops, rack, n, &*keep, dense, f);
                Inner::Gen(ops, raw)
            }
        };
        let orbits = match &inner {
            Inner::Exp(_, r) => &r.orbits,
            Inner::Gen(_, r) => &r.orbits,
        };
        let mut position = vec![None; orbits.len()];
        let mut alive = Vec::new();
        for (i, o) in orbits.iter().enumerate() {
            if o.alive {
                position[i] = Some(alive.len());
                alive.push(i);
            }
        }
        Ok(OrbitCoinv { n, k, field: f.clone(), inner, position, alive })
    }

    pub fn dim(&self) -> usize {
        self.alive.len()
    }

    pub fn orbits(&self) -> &[OrbitInfo] {
        match &self.inner {
            Inner::Exp(_, r) => &r.orbits,
            Inner::Gen(_, r) => &r.orbits,
        }
    }

    /// Lexicographically minimal tuples of the surviving orbits, in order.
    pub fn basis_reps(&self) -> Vec<Vec<usize>> {
        let o = self.orbits();
        self.alive.iter().map(|&i| o[i].rep.clone()).collect()
    }

    /// Class of e_t: `None` if zero, else (basis position, coefficient).
    pub fn class_of_index(&self, t: usize) -> Option<(usize, Scalar)> {
        let (orb, coef) = match &self.inner {
            Inner::Exp(ops, r) => r.store.get(t).map(|(o, l)| (o, ops.scalar(l)))?,
            Inner::Gen(ops, r) => r.store.get(t).map(|(o, l)| (o, ops.scalar(l)))?,
        };
        self.position[orb as usize].map(|p| (p, coef))
    }

    pub fn class_of(&self, tuple: &[usize]) -> Result<Option<(usize, Scalar)>> {
        if tuple.len() != self.n || tuple.iter().any(|&x| x >= self.k) {
            return Err(Error::Invalid("tuple does not belong to this degree".into()));
        }
        Ok(self.class_of_index(index_of(tuple, self.k)))
    }

    /// Coordinates of Σ coef·e_t.
    pub fn coords(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (t, x) in v {
            if let Some((p, c)) = self.class_of_index(*t) {
                axpy_into(&self.field, &mut acc, x, &[(p, c)]);
            }
        }
        acc.into_iter().collect()
    }
}

// ---------------------------------------------------------------------------
// Degree of C(V)

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum DegResult {
    Exact(usize),
    ExceedsBound(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct DegReport {
    pub result: DegResult,
    /// dim C_n for n = 0, 1, ... as computed
    pub dims: Vec<usize>,
    pub engine: EngineKind,
    /// a-priori vanishing bound used, if any
    pub certified_bound: Option<usize>,
}

/// Degree-n coinvariant dimension with the orbit engine when `v` comes from
/// a rack, the linear engine otherwise.
pub fn coinv_dim(v: &BraidedSpace, n: usize, caps: &Caps) -> Result<(usize, EngineKind)> {
    match v.origin() {
        Some(c) => Ok((OrbitCoinv::compute(c, n, None, caps)?.dim(), EngineKind::Orbit)),
        None => Ok((LinearCoinv::compute(v, n, None, caps)?.dim(), EngineKind::Linear)),
    }
}

/// Vanishing bound from the pigeonhole principle: a quandle with c(r,r) ≠ 1
/// for all r has C_n = 0 for n > |R|.
pub fn certified_bound(c: &Cocycle2) -> Option<usize> {
    let r = c.rack();
    let f = c.field();
    (r.is_quandle() && (0..r.size()).all(|x| !f.is_one(c.value(x, x)))).then(|| r.size())
}

/// Largest n with C_n ≠ 0. C(V) is generated in degree 1, so the first
/// vanishing degree ends the search.
pub fn deg_coinv(v: &BraidedSpace, bound: usize, caps: &Caps) -> Result<DegReport> {
    if bound == 0 {
        return Err(Error::Invalid("bound must be at least 1".into()));
    }
    let cert = v.origin().and_then(certified_bound);
    let limit = cert.map_or(bound, |b| b + 1);
    let mut dims = Vec::new();
    let mut engine = EngineKind::Linear;
    for n in 0..=limit {
        let (d, e) = coinv_dim(v, n, caps)?;
        engine = e;
        dims.push(d);
        if d == 0 {
            return Ok(DegReport { result: DegResult::Exact(n - 1), dims, engine, certified_bound: cert });
        }
    }
    let result = match cert {
        // nonzero up to |R| and zero beyond by the certificate
        Some(b) => DegResult::Exact(b),
        None => DegResult::ExceedsBound(bound),
    };
    Ok(DegReport { result, dims, engine, certified_bound: cert })
}

// ---------------------------------------------------------------------------
// Central powers

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentralityData {
    pub x: usize,
    pub y: usize,
    pub q: usize,
    pub p: usize,
    pub p_y: usize,
    /// Π_{i<q} c(x_i, y)
    pub cycle_label: String,
    /// whether ∇(x, y, …, y; σ₁⋯σ_p) = 1 and the tuple becomes (y, …, y, x)
    pub commutes: bool,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// (𝔮(x,y), 𝔭(x,y)) with x_0 = x, x_{i+1} = x_i^y.
pub fn q_and_p(c: &Cocycle2, x: usize, y: usize) -> Result<(usize, usize, Scalar)> {
    let r = c.rack();
    let f = c.field();
    let mut cur = x;
    let mut prod = f.one();
    let mut q = 0;
    loop {
        prod = f.mul(&prod, c.value(cur, y));
        cur = r.op(cur, y);
        q += 1;
        if cur == x {
            break;
        }
    }
    let l = f.mult_order(&prod).ok_or(Error::NotCyclotomic)? as usize;
    Ok((q, q * l, prod))
}

/// P_y = lcm over x ∈ R of 𝔭(x, y).
pub fn p_of(c: &Cocycle2, y: usize) -> Result<usize> {
    let mut acc = 1;
    for x in 0..c.rack().size() {
        acc = lcm(acc, q_and_p(c, x, y)?.1);
    }
    Ok(acc)
}

pub fn central_powers(c: &Cocycle2, x: usize, y: usize) -> Result<CentralityData> {
    let k = c.rack().size();
    if x >= k || y >= k {
        return Err(Error::Invalid("element outside the rack".into()));
    }
    let (q, p, lab) = q_and_p(c, x, y)?;
    let p_y = p_of(c, y)?;
    let mut tuple = vec![y; p + 1];
    tuple[0] = x;
    let word = crate::braided::BraidWord::new(p + 1, (1..=p).map(|i| (i, 1)).collect())?;
    let (s, img) = crate::braided::nabla(c, &tuple, &word)?;
    let mut expect = vec![y; p + 1];
    expect[p] = x;
    let commutes = c.field().is_one(&s) && img == expect;
    Ok(CentralityData { x, y, q, p, p_y, cycle_label: c.field().display(&lab), commutes })
}

// ---------------------------------------------------------------------------
// Multiplication maps

/// Coinvariants of κR(c) in each degree 0..=top.
pub struct GradedOrbits {
    pub c: Cocycle2,
    pub degrees: Vec<OrbitCoinv>,
}

impl GradedOrbits {
    /// Degrees are independent and run on the rayon pool.
    pub fn compute(c: &Cocycle2, top: usize, caps: &Caps) -> Result<GradedOrbits> {
        cap_check("R^n tuples (orbit engine)", pow_sat(c.rack().size(), top), caps.orbit_tuples)?;
        let degrees: Result<Vec<OrbitCoinv>> =
            (0..=top).into_par_iter().map(|n| OrbitCoinv::compute(c, n, None, caps)).collect();
        Ok(GradedOrbits { c: c.clone(), degrees: degrees? })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim()).collect()
    }

    fn k(&self) -> usize {
        self.c.rack().size()
    }

    /// Coordinates of (Σ_s coef_s·e_s)·[t] in degree deg(s)+n, where each s
    /// is a tuple of the same length.
    fn left_mul(&self, h: &[(Vec<usize>, Scalar)], t: &[usize]) -> SparseVec {
        let k = self.k();
        let hn = h.first().map_or(0, |(s, _)| s.len());
        let target = &self.degrees[hn + t.len()];
        let tail = index_of(t, k);
        let shift = k.pow(t.len() as u32);
        let v: SparseVec = h.iter().map(|(s, x)| (index_of(s, k) * shift + tail, x.clone())).collect();
        target.coords(&v)
    }

    /// Coordinates of [t]·(Σ_s coef_s·e_s).
    fn right_mul(&self, t: &[usize], h: &[(Vec<usize>, Scalar)]) -> SparseVec {
        let k = self.k();
        let hn = h.first().map_or(0, |(s, _)| s.len());
        let target = &self.degrees[hn + t.len()];
        let head = index_of(t, k) * k.pow(hn as u32);
        let v: SparseVec = h.iter().map(|(s, x)| (head + index_of(s, k), x.clone())).collect();
        target.coords(&v)
    }

    /// Rank of left multiplication by h from degree n to degree n + deg h.
    pub fn mul_rank(&self, h: &[(Vec<usize>, Scalar)], n: usize, restrict: Option<&dyn Fn(&[usize]) -> bool>) -> usize {
        let f = &self.c.field().clone();
        let mut ech = Echelon::new(f);
        for rep in self.degrees[n].basis_reps() {
            if restrict.is_some_and(|r| !r(&rep)) {
                continue;
            }
            let col = self.left_mul(h, &rep);
            if !col.is_empty() {
                ech.insert(&col);
            }
        }
        ech.rank()
    }
}

/// h = Σ_{s ∈ support} s^m.
#[derive(Clone, Debug)]
pub struct CentralSpec {
    pub m: usize,
    pub support: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ControlRow {
    pub n: usize,
    pub dim_source: usize,
    pub dim_target: usize,
    pub rank: usize,
    pub ker: usize,
    pub coker: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ControlReport {
    pub m: usize,
    pub window: (usize, usize),
    pub rows: Vec<ControlRow>,
    pub central: bool,
    pub pass: bool,
}

/// Checks that m is divisible by the order d of the values of c on S × S
/// and by P_s for every s in S.
pub fn check_divisibility(c: &Cocycle2, support: &[usize], m: usize) -> Result<()> {
    let f = c.field();
    let mut d = 1usize;
    for &a in support {
        for &b in support {
            d = lcm(d, f.mult_order(c.value(a, b)).ok_or(Error::NotCyclotomic)? as usize);
        }
    }
    if m == 0 || !m.is_multiple_of(d) {
        return Err(Error::DivisibilityHypothesisFails(format!("m = {m} is not a positive multiple of d = {d}")));
    }
    for &s in support {
        let p = p_of(c, s)?;
        if !m.is_multiple_of(p) {
            return Err(Error::DivisibilityHypothesisFails(format!("m = {m} is not divisible by P_{s} = {p}")));
        }
    }
    Ok(())
}

/// Kernel and cokernel dimensions of multiplication by h = Σ s^m on C(κR(c))
/// in degrees 0..=big_n; PASS iff both vanish on [big_n − m, big_n] and h
/// commutes with every degree-1 generator.
pub fn one_controlled_check(c: &Cocycle2, spec: &CentralSpec, big_n: usize, caps: &Caps) -> Result<ControlReport> {
    let k = c.rack().size();
    let support: Vec<usize> = spec.support.clone().unwrap_or_else(|| (0..k).collect());
    if support.is_empty() || support.iter().any(|&s| s >= k) {
        return Err(Error::Invalid("support must be a nonempty subset of the rack".into()));
    }
    check_divisibility(c, &support, spec.m)?;
    let m = spec.m;
    let g = GradedOrbits::compute(c, big_n + m, caps)?;
    let f = c.field();
    let h: Vec<(Vec<usize>, Scalar)> = support.iter().map(|&s| (vec![s; m], f.one())).collect();
    let rows: Vec<ControlRow> = (0..=big_n)
        .into_par_iter()
        .map(|n| {
            let rank = g.mul_rank(&h, n, None);
            let (a, b) = (g.degrees[n].dim(), g.degrees[n + m].dim());
            ControlRow { n, dim_source: a, dim_target: b, rank, ker: a - rank, coker: b - rank }
        })
        .collect();
    let central = (0..k).all(|r| g.left_mul(&h, &[r]) == g.right_mul(&[r], &h));
    let lo = big_n.saturating_sub(m);
    let pass = central && rows[lo..].iter().all(|r| r.ker == 0 && r.coker == 0);
    Ok(ControlReport { m, window: (lo, big_n), rows, central, pass })
}

// ---------------------------------------------------------------------------
// Splitting for cocycles on R × 𝒯₂

#[derive(Clone, Debug, Serialize)]
pub struct SplitRow {
    pub n: usize,
    pub total: usize,
    pub phi_only: usize,
    pub psi_only: usize,
    pub mixed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub rows: Vec<SplitRow>,
    /// least n ≥ 2 with vanishing mixed coinvariants in every degree n..=N
    pub n0: Option<usize>,
    pub holds: bool,
}

/// Checks the hypotheses of the splitting theorem for c on R × 𝒯₂.
pub fn splitting_hypotheses(base: &Rack, c: &Cocycle2) -> Result<()> {
    let prod = Rack::product(base, &Rack::t2());
    if c.rack().rows() != prod.rows() {
        return Err(Error::HypothesisFails("cocycle must live on R × T2".into()));
    }
    if !base.is_quandle() {
        return Err(Error::HypothesisFails("R is not a quandle".into()));
    }
    if !base.hereditarily_connected()? {
        return Err(Error::HypothesisFails("R is not hereditarily connected".into()));
    }
    if c.cyclotomic_order().is_none() {
        return Err(Error::HypothesisFails("cocycle is not valued in roots of unity".into()));
    }
    let f = c.field();
    for r in 0..base.size() {
        let (phi, psi) = (2 * r, 2 * r + 1);
        if f.is_one(&f.mul(c.value(phi, psi), c.value(psi, phi))) {
            return Err(Error::HypothesisFails(format!(
                "c((r,phi),(r,psi))·c((r,psi),(r,phi)) = 1 for r = {}",
                base.label(r)
            )));
        }
    }
    Ok(())
}

/// Whether C(κ[R×𝒯₂](c)) splits into its pure-color parts from some degree
/// n₀ on, verified up to degree N. Holds iff n₀ exists and n₀ < N, so the
/// vanishing is seen in at least two consecutive degrees.
pub fn splitting_check(base: &Rack, c: &Cocycle2, big_n: usize, caps: &Caps) -> Result<SplitReport> {
    splitting_hypotheses(base, c)?;
    let g = GradedOrbits::compute(c, big_n, caps)?;
    let mut rows = Vec::new();
    for n in 1..=big_n {
        let reps = g.degrees[n].basis_reps();
        let mut row = SplitRow { n, total: reps.len(), phi_only: 0, psi_only: 0, mixed: 0 };
        for t in reps {
            let psi = t.iter().filter(|&&x| x % 2 == 1).count();
            match psi {
                0 => row.phi_only += 1,
                p if p == n => row.psi_only += 1,
                _ => row.mixed += 1,
            }
        }
        rows.push(row);
    }
    let mut n0 = None;
    for n in (2..=big_n).rev() {
        if rows[n - 1].mixed == 0 {
            n0 = Some(n);
        } else {
            break;
        }
    }
    let holds = n0.is_some_and(|x| x < big_n);
    Ok(SplitReport { rows, n0, holds })
}

// ---------------------------------------------------------------------------
// Multiplication by y^m on generating tuples

#[derive(Clone, Debug, Serialize)]
pub struct IsomRow {
    pub n: usize,
    pub dim_source: usize,
    pub dim_target: usize,
    /// per y: whether y^m· is a bijection between the generating parts
    pub bijective: Vec<bool>,
    /// whether y^m· gives the same matrix for every y
    pub all_equal: bool,
}

/// For n in `lo..=hi`, the maps M_{y^m}: C_n^× → C_{n+m}^× on the span of
/// generating tuples.
pub fn isom_powers_check(c: &Cocycle2, m: usize, lo: usize, hi: usize, caps: &Caps) -> Result<Vec<IsomRow>> {
    let r = c.rack();
    if !r.is_connected() {
        return Err(Error::HypothesisFails("rack is not connected".into()));
    }
    let g = GradedOrbits::compute(c, hi + m, caps)?;
    let f = c.field();
    let gens = |t: &[usize]| r.generates(t);
    let mut rows = Vec::new();
    for n in lo..=hi {
        let src: Vec<Vec<usize>> = g.degrees[n].basis_reps().into_iter().filter(|t| gens(t)).collect();
        let tgt: Vec<usize> = g.degrees[n + m]
            .basis_reps()
            .iter()
            .enumerate()
            .filter(|(_, t)| gens(t))
            .map(|(i, _)| i)
            .collect();
        let mut mats = Vec::new();
        let mut bij = Vec::new();
        for y in 0..r.size() {
            let h = vec![(vec![y; m], f.one())];
            let cols: Vec<SparseVec> = src.iter().map(|t| g.left_mul(&h, t)).collect();
            let mut ech = Echelon::new(f);
            for col in &cols {
                if !col.is_empty() {
                    ech.insert(col);
                }
            }
            let inside = cols.iter().all(|col| col.iter().all(|(i, _)| tgt.binary_search(i).is_ok()));
            bij.push(inside && ech.rank() == src.len() && src.len() == tgt.len());
            mats.push(cols);
        }
        let all_equal = mats.windows(2).all(|w| w[0] == w[1]);
        rows.push(IsomRow { n, dim_source: src.len(), dim_target: tgt.len(), bijective: bij, all_equal });
    }
    Ok(rows)
}
