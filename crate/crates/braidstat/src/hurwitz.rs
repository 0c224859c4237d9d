//! Nielsen tuples and their braid orbits.
//!
//! Tuples (r₁, …, rₙ) ∈ Rⁿ for a conjugacy-closed R ⊆ G, optionally with
//! product one, generating G, and a prescribed number of entries in each
//! conjugacy class of G inside R. The Hurwitz move σᵢ replaces
//! (rᵢ, rᵢ₊₁) by (rᵢ₊₁, rᵢ₊₁⁻¹ rᵢ rᵢ₊₁); orbits under these moves model the
//! connected components of Hurwitz spaces.
//!
//! Components defined over 𝔽_q are modelled as orbits fixed by the entrywise
//! q-power map. The model is exact for G = ℤ/2 and labelled "model"
//! elsewhere; whether inner twists are needed is not decided here.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::{cap_check, pow_sat, Caps};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Clone, Debug)]
pub struct NielsenClass {
    pub group: FiniteGroup,
    /// sorted, conjugacy-closed
    pub r: Vec<usize>,
    pub n: usize,
    pub product_one: bool,
    pub generating: bool,
    /// entries per G-conjugacy class inside R, in the order of [`classes_in`]
    pub multidegree: Option<Vec<usize>>,
}

/// The G-conjugacy classes contained in R, ordered by smallest element.
pub fn classes_in(g: &FiniteGroup, r: &[usize]) -> Vec<Vec<usize>> {
    g.conjugacy_classes().into_iter().filter(|c| r.contains(&c[0])).collect()
}

impl NielsenClass {
    pub fn new(group: &FiniteGroup, r: &[usize], n: usize, product_one: bool, generating: bool) -> Result<NielsenClass> {
        let mut r = r.to_vec();
        r.sort_unstable();
        r.dedup();
        if r.is_empty() {
            return Err(Error::Invalid("R must be nonempty".into()));
        }
        if r.iter().any(|&x| x >= group.size()) {
            return Err(Error::Invalid("R contains an element outside the group".into()));
        }
        if !group.is_conjugacy_closed(&r) {
            return Err(Error::NotConjugacyClosed);
        }
        Ok(NielsenClass { group: group.clone(), r, n, product_one, generating, multidegree: None })
    }

    pub fn with_multidegree(mut self, counts: Vec<usize>) -> Result<NielsenClass> {
        let k = classes_in(&self.group, &self.r).len();
        if counts.len() != k {
            return Err(Error::Invalid(format!("multidegree needs {k} entries, one per class in R")));
        }
        if counts.iter().sum::<usize>() != self.n {
            return Err(Error::Invalid("multidegree must sum to n".into()));
        }
        self.multidegree = Some(counts);
        Ok(self)
    }

    fn with_n(&self, n: usize) -> NielsenClass {
        NielsenClass { n, multidegree: None, ..self.clone() }
    }
}

fn tuple_product(g: &FiniteGroup, t: &[usize]) -> usize {
    t.iter().fold(g.identity(), |a, &x| g.mul(a, x))
}

/// Constrained tuples in lexicographic order (entries are group elements).
pub fn nielsen_tuples(nc: &NielsenClass, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let g = &nc.group;
    let k = nc.r.len();
    let n = nc.n;
    cap_check("|R|^n (Nielsen tuples)", pow_sat(k, n), caps.nielsen_tuples)?;
    let classes = classes_in(g, &nc.r);
    let class_of: HashMap<usize, usize> =
        classes.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&x| (x, i))).collect();
    let pos: HashMap<usize, usize> = nc.r.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut gen_cache: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut out = Vec::new();
    let free = if nc.product_one && n > 0 { n - 1 } else { n };
    let mut idx = vec![0usize; free];
    let total = pow_sat(k, free) as usize;
    for _ in 0..total {
        let mut t: Vec<usize> = idx.iter().map(|&i| nc.r[i]).collect();
        let ok_last = if nc.product_one && n > 0 {
            let last = g.inv(tuple_product(g, &t));
            if pos.contains_key(&last) {
                t.push(last);
                true
            } else {
                false
            }
        } else {
            !nc.product_one || tuple_product(g, &t) == g.identity()
        };
        if ok_last && keep(nc, &t, &class_of, &mut gen_cache) {
            out.push(t);
        }
        // odometer, last coordinate fastest
        for j in (0..free).rev() {
            idx[j] += 1;
            if idx[j] < k {
                break;
            }
            idx[j] = 0;
        }
    }
    Ok(out)
}

fn keep(nc: &NielsenClass, t: &[usize], class_of: &HashMap<usize, usize>, cache: &mut HashMap<Vec<usize>, bool>) -> bool {
    if let Some(md) = &nc.multidegree {
        let mut counts = vec![0usize; md.len()];
        for x in t {
            counts[class_of[x]] += 1;
        }
        if &counts != md {
            return false;
        }
    }
    if nc.generating {
        let mut s = t.to_vec();
        s.sort_unstable();
        s.dedup();
        let gen = *cache.entry(s.clone()).or_insert_with(|| nc.group.generates(&s));
        if !gen {
            return false;
        }
    }
    true
}

pub fn nielsen_count(nc: &NielsenClass, caps: &Caps) -> Result<u64> {
    Ok(nielsen_tuples(nc, caps)?.len() as u64)
}

/// #{t ∈ Rⁿ : t₁⋯tₙ = 1} by convolving the indicator of R in the group
/// algebra n times (no generating or multidegree constraint).
pub fn product_one_count_class_algebra(g: &FiniteGroup, r: &[usize], n: usize) -> BigInt {
    let mut v: Vec<BigInt> = vec![BigInt::from(0); g.size()];
    v[g.identity()] = BigInt::from(1);
    for _ in 0..n {
        let mut next = vec![BigInt::from(0); g.size()];
        for (a, x) in v.iter().enumerate() {
            if x.sign() == num_bigint::Sign::NoSign {
                continue;
            }
            for &s in r {
                next[g.mul(a, s)] += x;
            }
        }
        v = next;
    }
    v[g.identity()].clone()
}

/// σᵢ (i 1-based) applied to a tuple, or σᵢ⁻¹ when `inverse`.
pub fn hurwitz_move(g: &FiniteGroup, t: &[usize], i: usize, inverse: bool) -> Vec<usize> {
    let mut u = t.to_vec();
    let (a, b) = (t[i - 1], t[i]);
    if inverse {
        u[i - 1] = g.conj(b, g.inv(a));
        u[i] = a;
    } else {
        u[i - 1] = b;
        u[i] = g.conj(a, b);
    }
    u
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Orbit {
    pub size: usize,
    /// lexicographically smallest tuple of the orbit
    pub rep: Vec<usize>,
    pub product: usize,
    /// sorted elements of the subgroup generated by the entries
    pub subgroup_order: usize,
    pub subgroup: Vec<usize>,
    /// entries per G-conjugacy class inside R
    pub class_counts: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSet {
    pub n: usize,
    pub tuples: usize,
    pub orbits: Vec<Orbit>,
    /// the recorded invariants are constant on every orbit
    pub invariants_constant: bool,
    /// orbit index of each tuple, aligned with [`nielsen_tuples`]
    #[serde(skip)]
    pub orbit_of: Vec<usize>,
    #[serde(skip)]
    pub tuple_list: Vec<Vec<usize>>,
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

pub fn braid_orbits(nc: &NielsenClass, caps: &Caps) -> Result<OrbitSet> {
    let g = &nc.group;
    let tuples = nielsen_tuples(nc, caps)?;
    let index: HashMap<&[usize], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let n = nc.n;
    // neighbours under σ₁..σ_{n−1}; the constraints are braid invariant
    let edges: Vec<Vec<usize>> = tuples
        .par_iter()
        .map(|t| {
            (1..n)
                .map(|i| *index.get(hurwitz_move(g, t, i, false).as_slice()).expect("moves preserve the constrained set"))
                .collect()
        })
        .collect();
    let mut parent: Vec<usize> = (0..tuples.len()).collect();
    for (a, es) in edges.iter().enumerate() {
        for &b in es {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                // keep the smaller index as root: roots are lex-minimal
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi] = lo;
            }
        }
    }
    let classes = classes_in(g, &nc.r);
    let class_of: HashMap<usize, usize> =
        classes.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&x| (x, i))).collect();
    // subgroup and class counts depend only on the multiset of entries
    let multiset_invariants = |sorted: &[usize]| {
        let mut counts = vec![0usize; classes.len()];
        for x in sorted {
            counts[class_of[x]] += 1;
        }
        let mut s = sorted.to_vec();
        s.dedup();
        (g.subgroup(&s), counts)
    };
    let mut root_pos: HashMap<usize, usize> = HashMap::new();
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut orbit_of = vec![0usize; tuples.len()];
    let mut consistent = true;
    let mut cache: HashMap<Vec<usize>, (Vec<usize>, Vec<usize>)> = HashMap::new();
    for i in 0..tuples.len() {
        let r = find(&mut parent, i);
        let mut key = tuples[i].clone();
        key.sort_unstable();
        let (sub, counts) = cache.entry(key).or_insert_with_key(|k| multiset_invariants(k)).clone();
        let inv = (tuple_product(g, &tuples[i]), sub, counts);
        match root_pos.get(&r) {
            Some(&o) => {
                orbit_of[i] = o;
                let orb = &mut orbits[o];
                orb.size += 1;
                if orb.product != inv.0 || orb.subgroup != inv.1 || orb.class_counts != inv.2 {
                    consistent = false;
                }
            }
            None => {
                let o = orbits.len();
                root_pos.insert(r, o);
                orbit_of[i] = o;
                orbits.push(Orbit {
                    size: 1,
                    rep: tuples[r].clone(),
                    product: inv.0,
                    subgroup_order: inv.1.len(),
                    subgroup: inv.1,
                    class_counts: inv.2,
                });
            }
        }
    }
    Ok(OrbitSet { n, tuples: tuples.len(), orbits, invariants_constant: consistent, orbit_of, tuple_list: tuples })
}

#[derive(Clone, Debug, Serialize)]
pub struct QPowerReport {
    pub q: u64,
    pub orbits: usize,
    pub fixed: usize,
    /// the q-power map sends tuples into the constrained set and orbits to orbits
    pub descends: bool,
    /// "exact" for G = ℤ/2, "model" otherwise
    pub status: &'static str,
}

/// Entrywise q-power on orbits: the fixed count when it descends.
pub fn qpower_on_orbits(nc: &NielsenClass, q: u64, caps: &Caps) -> Result<QPowerReport> {
    let g = &nc.group;
    if nc.r.iter().any(|&x| !nc.r.contains(&g.pow(x, q))) {
        return Err(Error::QPowerLeavesR);
    }
    let os = braid_orbits(nc, caps)?;
    qpower_from_orbits(nc, &os, q)
}

fn qpower_from_orbits(nc: &NielsenClass, os: &OrbitSet, q: u64) -> Result<QPowerReport> {
    let g = &nc.group;
    if nc.r.iter().any(|&x| !nc.r.contains(&g.pow(x, q))) {
        return Err(Error::QPowerLeavesR);
    }
    let index: HashMap<&[usize], usize> = os.tuple_list.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut image: Vec<Option<usize>> = vec![None; os.orbits.len()];
    let mut descends = true;
    for (i, t) in os.tuple_list.iter().enumerate() {
        let u: Vec<usize> = t.iter().map(|&x| g.pow(x, q)).collect();
        match index.get(u.as_slice()) {
            None => {
                descends = false;
                break;
            }
            Some(&j) => {
                let (o, p) = (os.orbit_of[i], os.orbit_of[j]);
                match image[o] {
                    None => image[o] = Some(p),
                    Some(x) if x != p => {
                        descends = false;
                        break;
                    }
                    _ => {}
                }
            }
        }
    }
    let fixed = if descends { image.iter().enumerate().filter(|(o, im)| **im == Some(*o)).count() } else { 0 };
    let status = if g.size() == 2 { "exact" } else { "model" };
    Ok(QPowerReport { q, orbits: os.orbits.len(), fixed, descends, status })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentRow {
    pub n: usize,
    pub tuples: usize,
    pub orbits: usize,
    pub fixed_orbits: usize,
    pub descends: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentTable {
    pub q: u64,
    pub rows: Vec<ComponentRow>,
    /// smallest p such that orbit counts are p-periodic from `stable_from` on,
    /// with at least two full periods observed
    pub period: Option<usize>,
    pub stable_from: Option<usize>,
    /// a period was found and it divides |G|²
    pub periodic: bool,
}

/// Smallest period p of the tail of `c` with at least 2p observed values,
/// and the first index from which it holds.
pub fn eventual_period(c: &[usize]) -> Option<(usize, usize)> {
    for p in 1..=c.len() / 2 {
        // extend the periodic tail backwards as far as it goes
        let mut s = c.len() - p;
        while s > 0 && c[s - 1] == c[s - 1 + p] {
            s -= 1;
        }
        if c.len() - s >= 2 * p {
            return Some((p, s));
        }
    }
    None
}

/// Product-one, generating orbits for each n in the range, with q-power data.
pub fn component_table(g: &FiniteGroup, r: &[usize], ns: std::ops::RangeInclusive<usize>, q: u64, caps: &Caps) -> Result<ComponentTable> {
    let base = NielsenClass::new(g, r, 0, true, true)?;
    let mut rows = Vec::new();
    for n in ns.clone() {
        let nc = base.with_n(n);
        let os = braid_orbits(&nc, caps)?;
        let qp = qpower_from_orbits(&nc, &os, q)?;
        rows.push(ComponentRow { n, tuples: os.tuples, orbits: os.orbits.len(), fixed_orbits: qp.fixed, descends: qp.descends });
    }
    let counts: Vec<usize> = rows.iter().map(|r| r.orbits).collect();
    let ep = eventual_period(&counts);
    let gsq = g.size() * g.size();
    Ok(ComponentTable {
        q,
        period: ep.map(|(p, _)| p),
        stable_from: ep.map(|(_, s)| ns.start() + s),
        periodic: ep.is_some_and(|(p, _)| gsq.is_multiple_of(p)),
        rows,
    })
}

/// fixed_components · (qⁿ − qⁿ⁻¹), scaled by the counting convention factor.
pub fn point_estimate(q: u64, n: u32, fixed_components: u64, convention_factor: u64) -> Result<BigInt> {
    if q < 2 || n < 2 {
        return Err(Error::Invalid("point estimate needs q >= 2 and n >= 2".into()));
    }
    let qb = BigInt::from(q);
    Ok(BigInt::from(fixed_components) * BigInt::from(convention_factor) * (qb.pow(n) - qb.pow(n - 1)))
}

/// Quadratic covers y² = f with f monic squarefree of even degree n over
/// 𝔽_q, counted by direct enumeration.
pub fn z2_direct_model_count(q: u32, n: usize, caps: &Caps) -> Result<u64> {
    if n % 2 == 1 {
        return Err(Error::Invalid("the direct model needs even n".into()));
    }
    let f = crate::scalar::Field::finite(q)?;
    if f.characteristic() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    crate::poly::conf_enumerate(&f, n, caps.stats_work, &mut |_| {})
}
