//! Symmetric-group characters attached to permutational braided spaces.
//!
//! Traces of ∧^k of the permutation and standard representations come from
//! eigenvalue generating functions: a cycle of length ℓ contributes the
//! factor 1 − (−x)^ℓ to Σ_k tr(∧^k Perm) x^k, and Perm = std ⊕ 1 divides the
//! series by 1 + x. Hook characters χ_(n−i,1^i) are the traces of ∧^i std.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::braided::{BraidWord, BraidedSpace};
use crate::caps::{cap_check, pow_sat, Caps};
use crate::error::{Error, Result};
use crate::poly::{conf_enumerate, poly_factor, PolyFq};
use crate::rational::Q;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Perm,
    Std,
}

/// Partitions of n, lexicographically descending.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Normalizes a cycle type: drops zero parts, sorts descending.
pub fn cycle_type(parts: &[usize]) -> Vec<usize> {
    let mut ct: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
    ct.sort_unstable_by(|a, b| b.cmp(a));
    ct
}

pub fn format_cycle_type(ct: &[usize]) -> String {
    ct.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(".")
}

/// Coefficients of ∏_ℓ (1 − (−x)^ℓ).
pub fn perm_wedge_series(ct: &[usize]) -> Vec<i64> {
    let mut s = vec![1i64];
    for &l in ct {
        let mut next = vec![0i64; s.len() + l];
        let top = if l % 2 == 0 { -1 } else { 1 };
        for (i, &a) in s.iter().enumerate() {
            next[i] += a;
            next[i + l] += top * a;
        }
        s = next;
    }
    s
}

/// The perm series divided by 1 + x (exact: x = −1 is a root).
pub fn std_wedge_series(ct: &[usize]) -> Vec<i64> {
    let a = perm_wedge_series(ct);
    if a.len() < 2 {
        return Vec::new();
    }
    let mut b = vec![0i64; a.len() - 1];
    for k in 0..b.len() {
        b[k] = a[k] - if k > 0 { b[k - 1] } else { 0 };
    }
    b
}

/// tr(∧^k W)(σ) for σ of cycle type `ct`, W the permutation or standard
/// representation; zero for k beyond the dimension.
pub fn wedge_trace(ct: &[usize], k: usize, which: Which) -> i64 {
    let s = match which {
        Which::Perm => perm_wedge_series(ct),
        Which::Std => std_wedge_series(ct),
    };
    s.get(k).copied().unwrap_or(0)
}

/// Number of permutations of the given cycle type.
pub fn class_size(ct: &[usize]) -> u128 {
    let n: usize = ct.iter().sum();
    let mut num: u128 = (1..=n as u128).product();
    let mut i = 0;
    while i < ct.len() {
        let l = ct[i];
        let m = ct[i..].iter().take_while(|&&x| x == l).count();
        num /= (l as u128).pow(m as u32) * (1..=m as u128).product::<u128>();
        i += m;
    }
    num
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrRow {
    pub cycle_type: String,
    /// n · (1/n)Σ_k (−1)^k tr(∧^k std), kept integral
    pub n_times_value: i64,
    pub expected: i64,
}

/// The identity 1_irr = (1/n) Σ_{k<n} (−1)^k tr ∧^k std, row by row.
pub fn irr_identity_rows(n: usize) -> Result<Vec<IrrRow>> {
    if n == 0 || n > 12 {
        return Err(Error::Invalid("irr identity is checked for 1 <= n <= 12".into()));
    }
    Ok(partitions(n)
        .into_iter()
        .map(|ct| {
            let s: i64 = (0..n).map(|k| if k % 2 == 0 { 1 } else { -1 } * wedge_trace(&ct, k, Which::Std)).sum();
            let expected = if ct == [n] { 1 } else { 0 };
            IrrRow { cycle_type: format_cycle_type(&ct), n_times_value: s, expected }
        })
        .collect())
}

pub fn irr_identity_check(n: usize) -> Result<bool> {
    Ok(irr_identity_rows(n)?.iter().all(|r| r.n_times_value == r.expected * n as i64))
}

/// A positive braid word lifting a permutation of the given cycle type with
/// consecutive cycles: (a, a+1, …, a+ℓ−1) ↦ σ_a σ_{a+1} ⋯ σ_{a+ℓ−2}.
pub fn cycle_type_word(ct: &[usize]) -> BraidWord {
    let n: usize = ct.iter().sum();
    let mut letters = Vec::new();
    let mut a = 1;
    for &l in ct {
        for i in a..a + l - 1 {
            letters.push((i, 1i8));
        }
        a += l;
    }
    BraidWord { n, letters }
}

fn integer_of(f: &Field, x: &Scalar) -> Result<i64> {
    let c = f.coeffs(x);
    let rest_zero = c.iter().skip(1).all(|q| q.is_zero());
    let first = c.first().cloned().unwrap_or_else(Q::zero);
    let b = first.to_big();
    if rest_zero && b.is_integer() {
        b.to_integer().to_i64().ok_or_else(|| Error::Invalid("character value out of range".into()))
    } else {
        Err(Error::Invalid(format!("character value {} is not an integer", f.display(x))))
    }
}

/// Character of V⊗ⁿ at a permutation of cycle type `ct` (V permutational).
pub fn sn_character(v: &BraidedSpace, ct: &[usize], caps: &Caps) -> Result<i64> {
    if !v.is_permutational() {
        return Err(Error::NotPermutational);
    }
    let f = v.field();
    if f.characteristic() != 0 {
        return Err(Error::PositiveCharacteristic);
    }
    let n: usize = ct.iter().sum();
    let total = pow_sat(v.dim(), n);
    cap_check("dim V^n (character)", total, caps.linear_basis)?;
    let w = cycle_type_word(ct);
    let diag: Vec<Scalar> = (0..total as usize)
        .into_par_iter()
        .map(|t| {
            let img = v.braid_act(&w, n, &[(t, f.one())]).expect("strand count matches");
            img.into_iter().find(|(i, _)| *i == t).map(|(_, x)| x).unwrap_or_else(|| f.zero())
        })
        .collect();
    let tr = diag.iter().fold(f.zero(), |a, x| f.add(&a, x));
    integer_of(f, &tr)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct HookMultiplicity {
    pub partition: Vec<usize>,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Decomposition {
    pub n: usize,
    pub dim: u128,
    /// characters of V⊗ⁿ by cycle type, partitions descending
    pub character: Vec<(String, i64)>,
    /// hooks (n−i, 1^i) with nonzero multiplicity, partitions descending
    pub hooks: Vec<HookMultiplicity>,
    /// dimension left after removing the hook constituents
    pub non_hook_dim: u128,
    /// ⟨χ,χ⟩ − Σ mult²: zero iff V⊗ⁿ is a sum of hooks
    pub non_hook_norm: i64,
}

/// dim of the hook irreducible (n−i, 1^i) = C(n−1, i).
pub fn hook_dim(n: usize, i: usize) -> u128 {
    (0..i).fold(1u128, |a, j| a * (n - 1 - j) as u128 / (j + 1) as u128)
}

pub fn hook_partition(n: usize, i: usize) -> Vec<usize> {
    let mut p = vec![n - i];
    p.extend(std::iter::repeat_n(1, i));
    p
}

pub fn sn_decompose(v: &BraidedSpace, n: usize, caps: &Caps) -> Result<Decomposition> {
    if !v.is_permutational() {
        return Err(Error::NotPermutational);
    }
    if v.field().characteristic() != 0 {
        return Err(Error::PositiveCharacteristic);
    }
    if n == 0 || n > 8 {
        return Err(Error::Invalid("decomposition needs 1 <= n <= 8".into()));
    }
    let cts = partitions(n);
    let chars: Vec<i64> = cts.iter().map(|ct| sn_character(v, ct, caps)).collect::<Result<_>>()?;
    let order: i128 = (1..=n as i128).product();
    let inner = |a: &dyn Fn(usize) -> i64, b: &dyn Fn(usize) -> i64| -> Result<i64> {
        let s: i128 = (0..cts.len()).map(|i| class_size(&cts[i]) as i128 * a(i) as i128 * b(i) as i128).sum();
        if s % order != 0 {
            return Err(Error::Invalid("character inner product is not integral".into()));
        }
        Ok((s / order) as i64)
    };
    let chi = |i: usize| chars[i];
    let mut hooks = Vec::new();
    let mut hook_total: u128 = 0;
    let mut sq = 0i64;
    for i in 0..n {
        let h = |c: usize| wedge_trace(&cts[c], i, Which::Std);
        let m = inner(&chi, &h)?;
        if m != 0 {
            hooks.push(HookMultiplicity { partition: hook_partition(n, i), multiplicity: m });
            hook_total += m as u128 * hook_dim(n, i);
            sq += m * m;
        }
    }
    let norm = inner(&chi, &chi)?;
    let dim = pow_sat(v.dim(), n);
    Ok(Decomposition {
        n,
        dim,
        character: cts.iter().zip(&chars).map(|(ct, &x)| (format_cycle_type(ct), x)).collect(),
        hooks,
        non_hook_dim: dim - hook_total,
        non_hook_norm: norm - sq,
    })
}

/// Degrees of the irreducible factors of a squarefree polynomial.
pub fn factor_degrees(f: &PolyFq) -> Result<Vec<usize>> {
    let fac = poly_factor(f)?;
    if fac.iter().any(|(_, e)| *e > 1) {
        return Err(Error::NotSquarefree);
    }
    Ok(cycle_type(&fac.iter().map(|(p, _)| p.deg()).collect::<Vec<_>>()))
}

/// Σ_{gh=f} (−1)^{deg h} μ(h) from the irreducible factor degrees.
pub fn signed_mobius_convolution(degrees: &[usize]) -> i64 {
    let r = degrees.len();
    (0u64..1 << r)
        .map(|mask| {
            let (mut deg, mut cnt) = (0usize, 0usize);
            for (i, &d) in degrees.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    deg += d;
                    cnt += 1;
                }
            }
            if (deg + cnt) % 2 == 0 { 1 } else { -1 }
        })
        .sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceConvReport {
    pub q: u32,
    pub n: usize,
    pub polynomials: u64,
    /// Σ_{gh=f}(−1)^{deg h}μ(h) = 0 with an even-degree factor, d₂(f) otherwise
    pub convolution_ok: bool,
    /// tr(σ_f | κ_∧⊗ⁿ) equals the same values
    pub wedge_trace_ok: bool,
    /// tr(σ_f | κ_{−1}⊗ⁿ) = (−1)ⁿ μ(f)
    pub sign_trace_ok: bool,
    pub pass: bool,
}

/// Pointwise check over Conf^n(𝔽_q) of the convolution and trace identities.
pub fn trace_convolution_check(q: u32, n: usize, caps: &Caps) -> Result<TraceConvReport> {
    if n == 0 || n > 8 {
        return Err(Error::Invalid("trace convolution check needs 1 <= n <= 8".into()));
    }
    let fq = Field::finite(q)?;
    let rat = Field::rational();
    let wedge = BraidedSpace::kappa_wedge(&rat)?;
    let sign = BraidedSpace::kappa_zeta(&rat, &rat.from_int(-1))?;
    let mut wedge_chars = std::collections::HashMap::new();
    let mut sign_chars = std::collections::HashMap::new();
    for ct in partitions(n) {
        wedge_chars.insert(ct.clone(), sn_character(&wedge, &ct, caps)?);
        sign_chars.insert(ct.clone(), sn_character(&sign, &ct, caps)?);
    }
    let mut polys = Vec::new();
    let count = conf_enumerate(&fq, n, caps.stats_work, &mut |f| polys.push(f.clone()))?;
    let results: Vec<(bool, bool, bool)> = polys
        .par_iter()
        .map(|f| {
            let degs = factor_degrees(f).expect("squarefree by construction");
            let expected = if degs.iter().any(|d| d % 2 == 0) { 0 } else { 1i64 << degs.len() };
            let mu = if degs.len().is_multiple_of(2) { 1 } else { -1 };
            let sgn_n = if n.is_multiple_of(2) { 1 } else { -1 };
            (
                signed_mobius_convolution(&degs) == expected,
                wedge_chars[&degs] == expected,
                sign_chars[&degs] == sgn_n * mu,
            )
        })
        .collect();
    let c = results.iter().all(|r| r.0);
    let w = results.iter().all(|r| r.1);
    let s = results.iter().all(|r| r.2);
    Ok(TraceConvReport { q, n, polynomials: count, convolution_ok: c, wedge_trace_ok: w, sign_trace_ok: s, pass: c && w && s })
}
