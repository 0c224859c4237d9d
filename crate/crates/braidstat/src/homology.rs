//! Homology of braid groups with coefficients in V⊗ⁿ.
//!
//! H₀ and H₁ come from Fox calculus on the standard presentation. All
//! degrees come from the Salvetti resolution of the Artin group of type
//! A_{n−1}: one free generator e_Γ per subset Γ ⊆ {1, …, n−1}, with
//!
//!   ∂e_Γ = Σ_{σ∈Γ} Σ_{β} (−1)^{ℓ(β) + #{τ∈Γ : τ<σ}} β̃ · e_{Γ∖{σ}},
//!
//! where β runs over the minimal left coset representatives of W_{Γ∖{σ}}
//! in the parabolic subgroup W_Γ of Sₙ and β̃ is its positive braid lift.
//! Coefficients enter through the right action m ↦ m·β̃, and ∂² = 0 is
//! verified on every computation.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::braided::{BraidWord, BraidedSpace};
use crate::caps::{cap_check, pow_sat, Caps};
use crate::error::{Error, Result};
use crate::linalg::{axpy_into, Echelon, SparseVec};
use crate::rational::Q;
use crate::scalar::Field;

/// Basis of the coefficient module V⊗ⁿ, optionally one grade only.
struct Module<'a> {
    v: &'a BraidedSpace,
    n: usize,
    /// local position -> multi-index of V⊗ⁿ
    basis: Vec<usize>,
    /// multi-index -> local position (only when graded)
    position: Option<HashMap<usize, usize>>,
}

impl<'a> Module<'a> {
    fn new(v: &'a BraidedSpace, n: usize, grade: Option<i64>, cap: u128) -> Result<Module<'a>> {
        let total = pow_sat(v.dim(), n);
        match grade {
            None => {
                cap_check("dim V^n (homology)", total, cap)?;
                Ok(Module { v, n, basis: (0..total as usize).collect(), position: None })
            }
            Some(g) => {
                if v.grades().is_none() {
                    return Err(Error::Invalid("grade restriction needs a graded space".into()));
                }
                // enumerate only when the full power is within a generous bound
                cap_check("dim V^n before grade restriction (homology)", total, cap.saturating_mul(64))?;
                let basis: Vec<usize> = (0..total as usize).filter(|&t| v.grade_of(n, t) == Some(g)).collect();
                cap_check("graded piece of V^n (homology)", basis.len() as u128, cap)?;
                let position = basis.iter().enumerate().map(|(i, &t)| (t, i)).collect();
                Ok(Module { v, n, basis, position: Some(position) })
            }
        }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn local(&self, t: usize) -> usize {
        match &self.position {
            None => t,
            Some(p) => p[&t],
        }
    }

    /// m·w for the basis vector at local position `m`, in local coordinates.
    fn act(&self, w: &BraidWord, m: usize) -> SparseVec {
        let f = self.v.field();
        let img = self.v.braid_act(w, self.n, &[(self.basis[m], f.one())]).expect("strand count matches");
        img.into_iter().map(|(t, x)| (self.local(t), x)).collect()
    }
}

fn rank_of_columns(f: &Field, cols: &[SparseVec]) -> usize {
    let mut ech = Echelon::new(f);
    for c in cols {
        if !c.is_empty() {
            ech.insert(c);
        }
    }
    ech.rank()
}

// ---------------------------------------------------------------------------
// Fox calculus

#[derive(Clone, Debug, Serialize)]
pub struct FoxReport {
    pub n: usize,
    pub module_dim: usize,
    pub h0: usize,
    pub h1: usize,
}

/// Relators of the standard presentation of Bₙ as words r with r = 1.
pub fn braid_relators(n: usize) -> Vec<Vec<(usize, i8)>> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 1..n {
            if j == i + 1 {
                out.push(vec![(i, 1), (j, 1), (i, 1), (j, -1), (i, -1), (j, -1)]);
            } else {
                out.push(vec![(i, 1), (j, 1), (i, -1), (j, -1)]);
            }
        }
    }
    out
}

/// ∂r/∂σ_g as signed words: Σ prefixes before σ_g minus prefixes through σ_g⁻¹.
pub fn fox_derivative(r: &[(usize, i8)], g: usize) -> Vec<(i64, Vec<(usize, i8)>)> {
    let mut out = Vec::new();
    for (k, &(i, e)) in r.iter().enumerate() {
        if i != g {
            continue;
        }
        if e > 0 {
            out.push((1, r[..k].to_vec()));
        } else {
            out.push((-1, r[..=k].to_vec()));
        }
    }
    out
}

pub fn fox_h01(v: &BraidedSpace, n: usize, caps: &Caps) -> Result<FoxReport> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let md = Module::new(v, n, None, caps.homology_rank)?;
    let f = v.field();
    let d = md.dim();
    let gens = n - 1;
    cap_check("Fox chain rank", (gens.max(1) as u128) * d as u128, caps.homology_rank)?;
    // ∂₁: e_g ⊗ m ↦ m·σ_g − m
    let d1: Vec<SparseVec> = (0..gens * d)
        .into_par_iter()
        .map(|col| {
            let (g, m) = (col / d + 1, col % d);
            let mut acc = BTreeMap::new();
            axpy_into(f, &mut acc, &f.one(), &md.act(&BraidWord { n, letters: vec![(g, 1)] }, m));
            axpy_into(f, &mut acc, &f.from_int(-1), &[(m, f.one())]);
            acc.into_iter().collect()
        })
        .collect();
    let rels = braid_relators(n);
    let d2: Vec<SparseVec> = (0..rels.len() * d)
        .into_par_iter()
        .map(|col| {
            let (r, m) = (col / d, col % d);
            let mut acc = BTreeMap::new();
            for g in 1..n {
                for (s, w) in fox_derivative(&rels[r], g) {
                    let img = md.act(&BraidWord { n, letters: w }, m);
                    let shifted: SparseVec = img.into_iter().map(|(i, x)| ((g - 1) * d + i, x)).collect();
                    axpy_into(f, &mut acc, &f.from_int(s), &shifted);
                }
            }
            acc.into_iter().collect()
        })
        .collect();
    let r1 = rank_of_columns(f, &d1);
    let r2 = rank_of_columns(f, &d2);
    Ok(FoxReport { n, module_dim: d, h0: d - r1, h1: gens * d - r1 - r2 })
}

// ---------------------------------------------------------------------------
// Salvetti resolution

/// One term of ∂e_Γ: target Γ∖{σ}, sign and reduced word of β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SalvettiTerm {
    pub target: Vec<usize>,
    pub sign: i64,
    pub word: Vec<usize>,
}

/// Elements of the parabolic subgroup W_Γ ⊆ Sₙ with shortest words, found
/// by breadth-first search on w ↦ w∘s_i (i ∈ Γ).
fn parabolic_elements(n: usize, gamma: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::from([(id.clone(), Vec::new())]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let word = seen[&w].clone();
        for &i in gamma {
            let mut x = w.clone();
            x.swap(i - 1, i);
            if !seen.contains_key(&x) {
                let mut wd = word.clone();
                wd.push(i);
                seen.insert(x.clone(), wd);
                order.push(x.clone());
                queue.push_back(x);
            }
        }
    }
    order.into_iter().map(|w| {
        let wd = seen[&w].clone();
        (w, wd)
    }).collect()
}

/// The boundary of e_Γ in the Salvetti resolution for Bₙ.
pub fn salvetti_boundary(n: usize, gamma: &[usize]) -> Vec<SalvettiTerm> {
    let elems = parabolic_elements(n, gamma);
    let mut out = Vec::new();
    for (pos, &s) in gamma.iter().enumerate() {
        let target: Vec<usize> = gamma.iter().copied().filter(|&t| t != s).collect();
        let mu = pos as i64;
        for (w, word) in &elems {
            // minimal in its coset w·W_target: no right descent in target
            if target.iter().all(|&i| w[i - 1] < w[i]) {
                let sign = if (word.len() as i64 + mu) % 2 == 0 { 1 } else { -1 };
                out.push(SalvettiTerm { target: target.clone(), sign, word: word.clone() });
            }
        }
    }
    out
}

/// j-element subsets of {1, …, n−1} in lexicographic order.
pub fn cells(n: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, end: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for x in start..end {
            cur.push(x);
            rec(x + 1, end, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, j, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub n: usize,
    pub grade: Option<i64>,
    pub module_dim: usize,
    /// rank of the chain groups C_j, j = 0..=n−1
    pub chain_ranks: Vec<usize>,
    /// rank of ∂_j: C_j → C_{j−1}, j = 1..=n−1 (index 0 unused, always 0)
    pub boundary_ranks: Vec<usize>,
    /// dim H_j for j = 0..=i_max
    pub dims: Vec<usize>,
    /// Σ(−1)^j dim H_j = Σ(−1)^j dim C_j, meaningful when i_max = n−1
    pub euler_ok: Option<bool>,
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// dims of H_0..H_{i_max}(Bₙ, V⊗ⁿ) (or of its grade-g part).
pub fn resolution_homology(v: &BraidedSpace, n: usize, i_max: usize, grade: Option<i64>, caps: &Caps) -> Result<ResolutionReport> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    if n > caps.homology_strands {
        return Err(Error::SizeCapExceeded { what: "strands (homology)".into(), size: n as u128, cap: caps.homology_strands as u128 });
    }
    if i_max > n - 1 {
        return Err(Error::Invalid(format!("i_max must be at most n-1 = {}", n - 1)));
    }
    let md = Module::new(v, n, grade, caps.homology_rank)?;
    let f = v.field();
    let d = md.dim();
    let top = (i_max + 1).min(n - 1);
    let cell_lists: Vec<Vec<Vec<usize>>> = (0..n).map(|j| cells(n, j)).collect();
    let chain_ranks: Vec<usize> = cell_lists.iter().map(|c| c.len() * d).collect();
    for (j, r) in chain_ranks.iter().enumerate().take(top + 1) {
        cap_check(&format!("rank of C_{j} (homology)"), *r as u128, caps.homology_rank)?;
    }
    let index: Vec<HashMap<Vec<usize>, usize>> =
        cell_lists.iter().map(|c| c.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect()).collect();
    // columns of ∂_j for j = 1..=top
    let mut boundaries: Vec<Vec<SparseVec>> = vec![Vec::new()];
    for j in 1..=top {
        let terms: Vec<Vec<(usize, i64, BraidWord)>> = cell_lists[j]
            .iter()
            .map(|g| {
                salvetti_boundary(n, g)
                    .into_iter()
                    .map(|t| {
                        let w = BraidWord { n, letters: t.word.iter().map(|&i| (i, 1)).collect() };
                        (index[j - 1][&t.target], t.sign, w)
                    })
                    .collect()
            })
            .collect();
        let cols: Vec<SparseVec> = (0..cell_lists[j].len() * d)
            .into_par_iter()
            .map(|col| {
                let (c, m) = (col / d, col % d);
                let mut acc = BTreeMap::new();
                for (tgt, sign, w) in &terms[c] {
                    let img: SparseVec = md.act(w, m).into_iter().map(|(i, x)| (tgt * d + i, x)).collect();
                    axpy_into(f, &mut acc, &f.from_int(*sign), &img);
                }
                acc.into_iter().collect()
            })
            .collect();
        boundaries.push(cols);
    }
    // ∂_{j−1} ∘ ∂_j = 0
    for j in 2..=top {
        let (prev, cur) = (&boundaries[j - 1], &boundaries[j]);
        let bad = cur.par_iter().any(|col| {
            let mut acc = BTreeMap::new();
            for (i, x) in col {
                axpy_into(f, &mut acc, x, &prev[*i]);
            }
            !acc.is_empty()
        });
        if bad {
            return Err(Error::BoundaryNotSquareZero(j));
        }
    }
    let mut boundary_ranks = vec![0usize; n];
    let ranks: Vec<usize> = (1..=top).into_par_iter().map(|j| rank_of_columns(f, &boundaries[j])).collect();
    for (j, r) in (1..=top).zip(ranks) {
        boundary_ranks[j] = r;
    }
    let dims: Vec<usize> = (0..=i_max)
        .map(|j| chain_ranks[j] - boundary_ranks[j] - if j < n - 1 { boundary_ranks[j + 1] } else { 0 })
        .collect();
    let euler_ok = (i_max == n - 1).then(|| {
        let alt = |xs: &[usize]| xs.iter().enumerate().fold(0i64, |a, (j, &x)| if j % 2 == 0 { a + x as i64 } else { a - x as i64 });
        alt(&dims) == alt(&chain_ranks)
    });
    for (j, &h) in dims.iter().enumerate() {
        debug_assert!(h <= binom(n - 1, j) * d);
    }
    Ok(ResolutionReport { n, grade, module_dim: d, chain_ranks, boundary_ranks, dims, euler_ok })
}

// ---------------------------------------------------------------------------
// Predicted bounds

#[derive(Clone, Debug, Default)]
pub struct PredictInputs {
    pub d: Option<u64>,
    pub deg_v: Option<u64>,
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub q: Option<u64>,
    pub r_size: Option<u64>,
    pub g: Option<u64>,
    pub f: Option<u64>,
    pub j: Option<u64>,
    pub dim_m: Option<u64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PredictReport {
    /// H_p vanishes for p < this rational
    pub vanishing_threshold: Option<String>,
    pub vanishing_degrees: Option<Vec<u64>>,
    /// 2^{n−1}|R|^n, the coefficient of the χ(disc) bound
    pub disc_bound_coefficient: Option<String>,
    /// n − (n−d)/(2d+4), the exponent of q in the χ(disc) bound
    pub disc_bound_q_exponent: Option<String>,
    /// (2|R|)^{2d+4}
    pub power_saving_q_threshold: Option<String>,
    pub power_saving: Option<bool>,
    /// C(n−1, j)·dim M
    pub salvetti_bound: Option<String>,
    /// C(2g+f+n, 2g+f+j)·dim M
    pub surface_bound: Option<String>,
}

fn big_binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Nonnegative integers p with p < t.
fn below(t: &Q) -> Vec<u64> {
    if t.signum() <= 0 {
        return Vec::new();
    }
    let c = t.ceil();
    let top: u64 = c.try_into().unwrap_or(u64::MAX);
    (0..top).collect()
}

pub fn predict_bounds(inp: &PredictInputs) -> PredictReport {
    let mut out = PredictReport {
        vanishing_threshold: None,
        vanishing_degrees: None,
        disc_bound_coefficient: None,
        disc_bound_q_exponent: None,
        power_saving_q_threshold: None,
        power_saving: None,
        salvetti_bound: None,
        surface_bound: None,
    };
    if let Some(d) = inp.d {
        let deg_v = inp.deg_v.unwrap_or(1);
        if let Some(m) = inp.m.or(inp.n) {
            let t = Q::new(m as i64 - d as i64, (d + 2 * deg_v) as i64);
            out.vanishing_degrees = Some(below(&t));
            out.vanishing_threshold = Some(t.to_string());
        }
        if let Some(n) = inp.n {
            out.disc_bound_q_exponent = Some(Q::from_int(n as i64).sub(&Q::new(n as i64 - d as i64, (2 * d + 4) as i64)).to_string());
            if let Some(r) = inp.r_size {
                let coef = BigInt::from(2).pow((n.max(1) - 1) as u32) * BigInt::from(r).pow(n as u32);
                out.disc_bound_coefficient = Some(coef.to_string());
            }
        }
        if let Some(r) = inp.r_size {
            let thr = BigInt::from(2 * r).pow((2 * d + 4) as u32);
            if let Some(q) = inp.q {
                out.power_saving = Some(BigInt::from(q) > thr);
            }
            out.power_saving_q_threshold = Some(thr.to_string());
        }
    }
    if let (Some(n), Some(j)) = (inp.n, inp.j) {
        let dm = BigInt::from(inp.dim_m.unwrap_or(1));
        if n >= 1 {
            out.salvetti_bound = Some((big_binom(n - 1, j) * &dm).to_string());
        }
        let (g, f) = (inp.g.unwrap_or(0), inp.f.unwrap_or(0));
        out.surface_bound = Some((big_binom(2 * g + f + n, 2 * g + f + j) * dm).to_string());
    }
    out
}

/// Whether computed homology respects the vanishing theorem: H_p = 0 for
/// every p < (m − d)/(d + 2·deg V). Returns the offending degrees.
pub fn vanishing_violations(dims: &[usize], m: u64, d: u64, deg_v: u64) -> Vec<usize> {
    let t = Q::new(m as i64 - d as i64, (d + 2 * deg_v) as i64);
    let ok = below(&t);
    dims.iter().enumerate().filter(|(p, &h)| h != 0 && ok.contains(&(*p as u64))).map(|(p, _)| p).collect()
}
