//! Finite racks and quandles.
//!
//! Elements are `0..size`; `op(x, y)` is `x^y`. Structural questions about
//! the structure group are answered through the inner group Inn(R), which
//! has the same orbits on R.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scalar::{Field, Scalar};

/// Largest rack for which subracks are enumerated.
pub const HEREDITARY_LIMIT: usize = 12;

/// Largest rack for which bijection search is used for isomorphism tests.
pub const ISO_LIMIT: usize = 8;

/// Largest inner group materialized element by element.
pub const INN_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rack {
    n: usize,
    table: Vec<u32>,
    labels: Option<Vec<String>>,
}

/// Inner group data: translation generators, all elements, orbits.
#[derive(Clone, Debug, Serialize)]
pub struct InnData {
    pub generators: Vec<Vec<u32>>,
    pub elements: Vec<Vec<u32>>,
    pub components: Vec<Vec<usize>>,
    pub abelian: bool,
}

impl InnData {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RackReport {
    pub size: usize,
    pub quandle: bool,
    pub connected: bool,
    pub components: Vec<Vec<usize>>,
    pub inn_order: usize,
    pub inn_abelian: bool,
    pub hereditarily_connected: Option<bool>,
    pub ideals: Vec<Vec<usize>>,
    pub generates: Option<bool>,
}

impl Rack {
    /// Validates an operation table, reporting the first violated axiom.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Rack> {
        let n = rows.len();
        for r in rows {
            if r.len() != n || r.iter().any(|&v| v >= n) {
                return Err(Error::Invalid("rack table must be square over 0..size".into()));
            }
        }
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = rows[x][y] as u32;
            }
        }
        let r = Rack { n, table, labels: None };
        r.validate()?;
        Ok(r)
    }

    fn raw(n: usize, f: impl Fn(usize, usize) -> usize) -> Rack {
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = f(x, y) as u32;
            }
        }
        Rack { n, table, labels: None }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for y in 0..n {
            let mut hit = vec![false; n];
            for x in 0..n {
                hit[self.op(x, y)] = true;
            }
            if hit.iter().any(|h| !h) {
                return Err(Error::NotBijectiveColumn(y));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    if self.op(xy, z) != self.op(self.op(x, z), self.op(y, z)) {
                        return Err(Error::SelfDistributivityFails(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Rack> {
        if labels.len() != self.n {
            return Err(Error::Invalid("label count differs from rack size".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y] as usize
    }

    /// `x^{y^-1}`: the inverse of the translation by `y`.
    pub fn op_inv(&self, x: usize, y: usize) -> usize {
        (0..self.n).find(|&z| self.op(z, y) == x).expect("columns are bijections")
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| (0..self.n).map(|y| self.op(x, y)).collect()).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"size": self.n, "table": self.rows()});
        if let Some(l) = &self.labels {
            v["labels"] = json!(l);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Rack> {
        let bad = |m: String| Error::Invalid(format!("rack JSON: {m}"));
        let rows: Vec<Vec<usize>> =
            serde_json::from_value(v.get("table").cloned().ok_or_else(|| bad("missing table".into()))?)
                .map_err(|e| bad(e.to_string()))?;
        if let Some(s) = v.get("size") {
            if s.as_u64() != Some(rows.len() as u64) {
                return Err(bad("size differs from table".into()));
            }
        }
        let r = Rack::from_table(&rows)?;
        match v.get("labels") {
            Some(l) => {
                let l: Vec<String> = serde_json::from_value(l.clone()).map_err(|e| bad(e.to_string()))?;
                r.with_labels(l)
            }
            None => Ok(r),
        }
    }

    // ---- builders ----

    /// 𝒯_ν: x^y = x.
    pub fn trivial(nu: usize) -> Rack {
        Rack::raw(nu, |x, _| x)
    }

    /// ℤ/m with x^y = x + 1.
    pub fn cyclic(m: usize) -> Rack {
        Rack::raw(m, |x, _| (x + 1) % m)
    }

    /// The three-element quandle {J₁, J₂, J₃} where J₃ swaps J₁ and J₂.
    pub fn joyce() -> Rack {
        let r = Rack::raw(3, |x, y| match (x, y) {
            (0, 2) => 1,
            (1, 2) => 0,
            _ => x,
        });
        r.with_labels(vec!["J1".into(), "J2".into(), "J3".into()]).expect("three labels")
    }

    /// 𝒯₁ ∐ ℤ/2.
    pub fn s_wedge() -> Rack {
        Rack::disjoint_union(&Rack::trivial(1), &Rack::cyclic(2))
    }

    /// 𝒯₂ with elements φ, ψ.
    pub fn t2() -> Rack {
        Rack::trivial(2).with_labels(vec!["phi".into(), "psi".into()]).expect("two labels")
    }

    /// Conjugation rack x^y = y^-1 x y on a conjugacy-closed subset; the
    /// elements keep the order of `subset` after sorting.
    pub fn conj(g: &FiniteGroup, subset: &[usize]) -> Result<Rack> {
        let mut r: Vec<usize> = subset.to_vec();
        r.sort_unstable();
        r.dedup();
        if !g.is_conjugacy_closed(&r) {
            return Err(Error::NotConjugacyClosed);
        }
        let pos: BTreeMap<usize, usize> = r.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let rack = Rack::raw(r.len(), |x, y| pos[&g.conj(r[x], r[y])]);
        let labels = r.iter().map(|&x| g.label(x)).collect();
        rack.with_labels(labels)
    }

    /// Transpositions of S_n as a conjugation quandle.
    pub fn sn_transpositions(n: usize) -> Result<Rack> {
        let g = FiniteGroup::symmetric(n)?;
        let t = transpositions(&g);
        Rack::conj(&g, &t)
    }

    /// R ∐ S with R first; elements of one part act trivially on the other.
    pub fn disjoint_union(r: &Rack, s: &Rack) -> Rack {
        let (a, b) = (r.n, s.n);
        let u = Rack::raw(a + b, |x, y| match (x < a, y < a) {
            (true, true) => r.op(x, y),
            (false, false) => a + s.op(x - a, y - a),
            _ => x,
        });
        let labels = (0..a).map(|x| r.label(x)).chain((0..b).map(|y| s.label(y))).collect();
        u.with_labels(labels).expect("sizes match")
    }

    /// R × S with (x,y) at index x·|S| + y.
    pub fn product(r: &Rack, s: &Rack) -> Rack {
        let b = s.n;
        let p = Rack::raw(r.n * b, |x, y| r.op(x / b, y / b) * b + s.op(x % b, y % b));
        let labels = (0..r.n * b).map(|i| format!("({},{})", r.label(i / b), s.label(i % b))).collect();
        p.with_labels(labels).expect("sizes match")
    }

    /// R_c on R × μ_d where μ_d = {ζ^0, …, ζ^{d−1}} for the canonical
    /// primitive d-th root ζ; (r, ζ^i) sits at index r·d + i.
    pub fn rackify(c: &Cocycle2, d: u64) -> Result<Rack> {
        let f = c.field();
        let zeta = f.root_of_unity(d)?;
        let mu: Vec<Scalar> = (0..d as i64).map(|i| f.pow(&zeta, i).expect("unit")).collect();
        let r = c.rack();
        let n = r.n;
        let mut exps = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                exps[x * n + y] = mu.iter().position(|m| m == c.value(x, y)).ok_or(Error::CocycleNotValuedInA(x, y))?;
            }
        }
        let d = d as usize;
        let out = Rack::raw(n * d, |x, y| {
            let (r0, a) = (x / d, x % d);
            let s0 = y / d;
            r.op(r0, s0) * d + (a + exps[r0 * n + s0]) % d
        });
        let labels = (0..n * d).map(|i| format!("({},z^{})", r.label(i / d), i % d)).collect();
        out.with_labels(labels)
    }

    /// Ideals are subsets permuted by every translation.
    pub fn is_ideal(&self, s: &[usize]) -> bool {
        let set: BTreeSet<usize> = s.iter().copied().collect();
        s.iter().all(|&x| (0..self.n).all(|y| set.contains(&self.op(x, y))))
    }

    /// R/S: orbits of R under translations by elements of S, numbered by
    /// their smallest element. Returns the quotient and the projection.
    pub fn quotient(&self, s: &[usize]) -> Result<(Rack, Vec<usize>)> {
        if !self.is_ideal(s) {
            return Err(Error::NotAnIdeal);
        }
        let cls = self.orbits_under(s);
        let k = cls.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; k];
        for x in (0..self.n).rev() {
            rep[cls[x]] = x;
        }
        let q = Rack::raw(k, |a, b| cls[self.op(rep[a], rep[b])]);
        // well-definedness on every pair of representatives
        for x in 0..self.n {
            for y in 0..self.n {
                if cls[self.op(x, y)] != q.op(cls[x], cls[y]) {
                    return Err(Error::Invalid("quotient operation not well defined".into()));
                }
            }
        }
        q.validate()?;
        let labels = rep.iter().map(|&x| format!("[{}]", self.label(x))).collect();
        Ok((q.with_labels(labels)?, cls))
    }

    /// Orbit index of each element under the translations by `acting`,
    /// numbered in order of smallest element.
    fn orbits_under(&self, acting: &[usize]) -> Vec<usize> {
        let mut cls = vec![usize::MAX; self.n];
        let mut k = 0;
        for s in 0..self.n {
            if cls[s] != usize::MAX {
                continue;
            }
            cls[s] = k;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in acting {
                    for z in [self.op(x, y), self.op_inv(x, y)] {
                        if cls[z] == usize::MAX {
                            cls[z] = k;
                            stack.push(z);
                        }
                    }
                }
            }
            k += 1;
        }
        cls
    }

    // ---- structure ----

    pub fn is_quandle(&self) -> bool {
        (0..self.n).all(|x| self.op(x, x) == x)
    }

    /// Smallest subrack containing `x`, sorted.
    pub fn subrack_closure(&self, x: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        let mut list: Vec<usize> = Vec::new();
        for &a in x {
            if !inside[a] {
                inside[a] = true;
                list.push(a);
            }
        }
        let mut i = 0;
        // every pair (a, b) with a or b new is examined exactly once
        while i < list.len() {
            let a = list[i];
            for j in 0..=i {
                let b = list[j];
                for c in [self.op(a, b), self.op(b, a)] {
                    if !inside[c] {
                        inside[c] = true;
                        list.push(c);
                    }
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    pub fn generates(&self, x: &[usize]) -> bool {
        self.subrack_closure(x).len() == self.n
    }

    /// The permutation x ↦ x^y.
    pub fn translation(&self, y: usize) -> Vec<u32> {
        (0..self.n).map(|x| self.op(x, y) as u32).collect()
    }

    /// Components: orbits of the inner group, each sorted, ordered by
    /// smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.n).collect();
        group_by_class(&self.orbits_under(&all))
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Closure of the translations into an explicit permutation group.
    pub fn inner_group(&self) -> Result<InnData> {
        let gens: Vec<Vec<u32>> = (0..self.n).map(|y| self.translation(y)).collect();
        let elements = perm_closure(self.n, &gens)?;
        let abelian = gens.iter().all(|a| gens.iter().all(|b| compose(a, b) == compose(b, a)));
        Ok(InnData { generators: gens, elements, components: self.components(), abelian })
    }

    /// Order of the subgroup of Inn(R) generated by translations by `x`.
    pub fn inner_subgroup_order(&self, x: &[usize]) -> Result<usize> {
        let gens: Vec<Vec<u32>> = x.iter().map(|&y| self.translation(y)).collect();
        Ok(perm_closure(self.n, &gens)?.len())
    }

    /// Generation via the component and inner-group criterion.
    pub fn generates_by_criterion(&self, x: &[usize]) -> Result<bool> {
        let set: BTreeSet<usize> = x.iter().copied().collect();
        if !self.components().iter().all(|c| c.iter().any(|e| set.contains(e))) {
            return Ok(false);
        }
        let full = self.inner_group()?.order();
        Ok(self.inner_subgroup_order(x)? == full)
    }

    /// Every subrack (including the empty one), sorted by size then
    /// lexicographically.
    pub fn subracks(&self) -> Result<Vec<Vec<usize>>> {
        if self.n > HEREDITARY_LIMIT {
            return Err(Error::TooLargeForHereditaryTest(self.n));
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(Vec::new());
        let mut queue = VecDeque::from([Vec::new()]);
        while let Some(s) = queue.pop_front() {
            for x in 0..self.n {
                if s.binary_search(&x).is_ok() {
                    continue;
                }
                let mut t = s.clone();
                t.push(x);
                let c = self.subrack_closure(&t);
                if seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Restriction to a subset closed under the operation.
    pub fn subrack(&self, s: &[usize]) -> Rack {
        let pos: BTreeMap<usize, usize> = s.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let r = Rack::raw(s.len(), |a, b| pos[&self.op(s[a], s[b])]);
        match &self.labels {
            Some(l) => r.with_labels(s.iter().map(|&x| l[x].clone()).collect()).expect("sizes match"),
            None => r,
        }
    }

    pub fn hereditarily_connected(&self) -> Result<bool> {
        Ok(self.subracks()?.iter().filter(|s| !s.is_empty()).all(|s| self.subrack(s).is_connected()))
    }

    /// All ideals, i.e. unions of components, sorted by size then lex.
    pub fn ideals(&self) -> Vec<Vec<usize>> {
        let comps = self.components();
        let k = comps.len();
        let mut out = Vec::new();
        if k > 20 {
            return out;
        }
        for mask in 0u32..(1 << k) {
            let mut s: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).flat_map(|i| comps[i].clone()).collect();
            s.sort_unstable();
            out.push(s);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Flags and structural data. When `x` is given, generation is decided
    /// both by closure and by the criterion, and the two must agree.
    pub fn predicates(&self, x: Option<&[usize]>) -> Result<RackReport> {
        let inn = self.inner_group()?;
        let hereditarily_connected = if self.n <= HEREDITARY_LIMIT { Some(self.hereditarily_connected()?) } else { None };
        let generates = match x {
            Some(x) => {
                if let Some(&bad) = x.iter().find(|&&e| e >= self.n) {
                    return Err(Error::Invalid(format!("element {bad} outside the rack")));
                }
                let a = self.generates(x);
                let b = self.generates_by_criterion(x)?;
                if a != b {
                    return Err(Error::Invalid("closure and generation criterion disagree".into()));
                }
                Some(a)
            }
            None => None,
        };
        Ok(RackReport {
            size: self.n,
            quandle: self.is_quandle(),
            connected: self.is_connected(),
            components: inn.components.clone(),
            inn_order: inn.order(),
            inn_abelian: inn.abelian,
            hereditarily_connected,
            ideals: self.ideals(),
            generates,
        })
    }

    /// Some element acting trivially on the whole rack.
    pub fn trivially_acting_element(&self) -> Option<usize> {
        (0..self.n).find(|&s| (0..self.n).all(|x| self.op(x, s) == x))
    }

    /// A bijection `phi` with phi(x^y) = phi(x)^phi(y), by backtracking.
    pub fn isomorphism(&self, other: &Rack) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        assert!(self.n <= ISO_LIMIT, "isomorphism search is limited to {ISO_LIMIT} elements");
        let mut phi = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        if self.iso_search(other, 0, &mut phi, &mut used) {
            Some(phi)
        } else {
            None
        }
    }

    fn iso_search(&self, o: &Rack, k: usize, phi: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if k == self.n {
            return true;
        }
        for t in 0..self.n {
            if used[t] {
                continue;
            }
            phi[k] = t;
            used[t] = true;
            let ok = (0..=k).all(|a| {
                (0..=k).all(|b| {
                    let img = phi[self.op(a, b)];
                    img == usize::MAX || img == o.op(phi[a], phi[b])
                })
            }) && (0..=k).all(|a| (0..=k).all(|b| {
                // images already fixed must have fixed preimages
                let target = o.op(phi[a], phi[b]);
                match phi.iter().position(|&p| p == target) {
                    Some(pre) => pre == self.op(a, b),
                    None => true,
                }
            }));
            if ok && self.iso_search(o, k + 1, phi, used) {
                return true;
            }
            phi[k] = usize::MAX;
            used[t] = false;
        }
        false
    }
}

/// Transpositions of a symmetric group built by [`FiniteGroup::symmetric`].
pub fn transpositions(g: &FiniteGroup) -> Vec<usize> {
    (0..g.size())
        .filter(|&a| g.perm(a).iter().enumerate().filter(|(i, &p)| *i != p as usize).count() == 2)
        .collect()
}

fn group_by_class(cls: &[usize]) -> Vec<Vec<usize>> {
    let k = cls.iter().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); k];
    for (x, &c) in cls.iter().enumerate() {
        out[c].push(x);
    }
    out
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&i| b[i as usize]).collect()
}

fn perm_closure(n: usize, gens: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    let id: Vec<u32> = (0..n as u32).collect();
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if !seen.contains(&y) {
                if seen.len() >= INN_LIMIT {
                    return Err(Error::SizeCapExceeded {
                        what: "inner group order".into(),
                        size: seen.len() as u128 + 1,
                        cap: INN_LIMIT as u128,
                    });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// For every subgroup H, H ∩ R is empty or one H-conjugacy class.
///
/// Only subgroups generated by elements of R need checking: if H ∩ R
/// splits, so does it inside the subgroup it generates.
pub fn nonsplitting_check(g: &FiniteGroup, r: &[usize]) -> Result<bool> {
    if g.size() > 10_000 {
        return Err(Error::SizeCapExceeded { what: "group order".into(), size: g.size() as u128, cap: 10_000 });
    }
    if !g.is_conjugacy_closed(r) {
        return Err(Error::NotConjugacyClosed);
    }
    if !g.generates(r) {
        return Err(Error::NotGenerating);
    }
    let rset: BTreeSet<usize> = r.iter().copied().collect();
    for h in g.subgroups_generated_within(r) {
        let meet: Vec<usize> = h.iter().copied().filter(|x| rset.contains(x)).collect();
        if meet.is_empty() {
            continue;
        }
        let class: BTreeSet<usize> = h.iter().map(|&y| g.conj(meet[0], y)).collect();
        if class.len() != meet.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct GoursatReport {
    pub generates: bool,
    pub closure_generates: bool,
}

/// Generation of R × S by X via projections, under the hypotheses that R
/// is connected, Inn(S) is abelian and some element of S acts trivially.
/// `x` lists pairs (r, s). The answer is cross-checked by closure.
pub fn goursat_generates(r: &Rack, s: &Rack, x: &[(usize, usize)]) -> Result<GoursatReport> {
    if !r.is_connected() {
        return Err(Error::HypothesisFails("R is not connected".into()));
    }
    if !s.inner_group()?.abelian {
        return Err(Error::HypothesisFails("Inn(S) is not abelian".into()));
    }
    if s.trivially_acting_element().is_none() {
        return Err(Error::HypothesisFails("no element of S acts trivially".into()));
    }
    if x.iter().any(|&(a, b)| a >= r.size() || b >= s.size()) {
        return Err(Error::Invalid("pair outside R × S".into()));
    }
    let pr: Vec<usize> = x.iter().map(|p| p.0).collect();
    let ps: Vec<usize> = x.iter().map(|p| p.1).collect();
    let generates = r.generates(&pr) && s.generates(&ps);
    let prod = Rack::product(r, s);
    let idx: Vec<usize> = x.iter().map(|&(a, b)| a * s.size() + b).collect();
    let closure_generates = prod.generates(&idx);
    Ok(GoursatReport { generates, closure_generates })
}

/// Whether every product C × D of components is one component of R × S.
pub fn synchronized(r: &Rack, s: &Rack) -> bool {
    let prod = Rack::product(r, s);
    let comps = prod.components();
    let pc = comps.len();
    let expected = r.components().len() * s.components().len();
    pc == expected
}

/// A validated rack 2-cocycle c(r,s)·c(r^s,t) = c(r,t)·c(r^t,s^t).
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle2 {
    rack: Rack,
    field: Field,
    values: Vec<Scalar>,
    order: Option<u64>,
}

impl Cocycle2 {
    pub fn new(rack: &Rack, field: &Field, values: Vec<Scalar>) -> Result<Cocycle2> {
        let n = rack.size();
        if values.len() != n * n {
            return Err(Error::Invalid("cocycle table must be size × size".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if field.is_zero(&values[x * n + y]) {
                    return Err(Error::ZeroValue(x, y));
                }
            }
        }
        let c = |a: usize, b: usize| &values[a * n + b];
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    let lhs = field.mul(c(r, s), c(rack.op(r, s), t));
                    let rhs = field.mul(c(r, t), c(rack.op(r, t), rack.op(s, t)));
                    if lhs != rhs {
                        return Err(Error::CocycleIdentityFails(r, s, t));
                    }
                }
            }
        }
        let mut order = Some(1u64);
        for v in &values {
            order = match (order, field.mult_order(v)) {
                (Some(a), Some(b)) => Some(crate::rational::lcm_u64(a, b)),
                _ => None,
            };
        }
        Ok(Cocycle2 { rack: rack.clone(), field: field.clone(), values, order })
    }

    pub fn from_rows(rack: &Rack, field: &Field, rows: &[Vec<Scalar>]) -> Result<Cocycle2> {
        if rows.len() != rack.size() || rows.iter().any(|r| r.len() != rack.size()) {
            return Err(Error::Invalid("cocycle table must be size × size".into()));
        }
        Cocycle2::new(rack, field, rows.concat())
    }

    /// The constant cocycle λ.
    pub fn constant(rack: &Rack, field: &Field, lambda: &Scalar) -> Result<Cocycle2> {
        Cocycle2::new(rack, field, vec![lambda.clone(); rack.size() * rack.size()])
    }

    /// c_∧ on R × 𝒯₂: −1 when both second coordinates are ψ.
    /// `rack` must be a product built as `Rack::product(R, 𝒯₂)`.
    pub fn wedge(rack: &Rack, field: &Field) -> Result<Cocycle2> {
        Cocycle2::on_t2_factor(rack, field, |y, w| y == 1 && w == 1)
    }

    /// c_± on R × 𝒯₂: −1 when (y, w) = (ψ, φ).
    pub fn pm(rack: &Rack, field: &Field) -> Result<Cocycle2> {
        Cocycle2::on_t2_factor(rack, field, |y, w| y == 1 && w == 0)
    }

    fn on_t2_factor(rack: &Rack, field: &Field, neg: impl Fn(usize, usize) -> bool) -> Result<Cocycle2> {
        let n = rack.size();
        if !n.is_multiple_of(2) {
            return Err(Error::Invalid("rack is not of the form R × T2".into()));
        }
        if field.characteristic() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let (one, m1) = (field.one(), field.from_int(-1));
        let mut v = Vec::with_capacity(n * n);
        for x in 0..n {
            for z in 0..n {
                v.push(if neg(x % 2, z % 2) { m1.clone() } else { one.clone() });
            }
        }
        Cocycle2::new(rack, field, v)
    }

    /// e((x,y),(z,w)) = c(x,z)·d(y,w) on R × S.
    pub fn product(c: &Cocycle2, d: &Cocycle2) -> Result<Cocycle2> {
        if c.field != d.field {
            return Err(Error::FieldMismatch);
        }
        let prod = Rack::product(&c.rack, &d.rack);
        let b = d.rack.size();
        let n = prod.size();
        let mut v = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                v.push(c.field.mul(c.value(x / b, y / b), d.value(x % b, y % b)));
            }
        }
        Cocycle2::new(&prod, &c.field, v)
    }

    /// Pointwise inverse, the cocycle of the dual space.
    pub fn inverse(&self) -> Cocycle2 {
        let values = self.values.iter().map(|v| self.field.inv(v).expect("nonzero")).collect();
        Cocycle2 { rack: self.rack.clone(), field: self.field.clone(), values, order: self.order }
    }

    pub fn rack(&self) -> &Rack {
        &self.rack
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> &Scalar {
        &self.values[x * self.rack.size() + y]
    }

    /// Least d with every value a d-th root of unity, if any.
    pub fn cyclotomic_order(&self) -> Option<u64> {
        self.order
    }

    pub fn is_constant_one(&self) -> bool {
        self.values.iter().all(|v| self.field.is_one(v))
    }

    pub fn to_json(&self) -> Value {
        let n = self.rack.size();
        let rows: Vec<Value> = (0..n)
            .map(|x| Value::Array((0..n).map(|y| self.field.to_json(self.value(x, y))).collect()))
            .collect();
        json!({"field": self.field.spec(), "values": rows, "cyclotomic_order": self.order})
    }

    pub fn from_json(rack: &Rack, field: &Field, v: &Value) -> Result<Cocycle2> {
        let rows = v
            .get("values")
            .unwrap_or(v)
            .as_array()
            .ok_or_else(|| Error::Invalid("cocycle JSON: values must be an array of rows".into()))?;
        let mut parsed = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| Error::Invalid("cocycle JSON: row is not an array".into()))?;
            parsed.push(r.iter().map(|x| field.from_json(x)).collect::<Result<Vec<_>>>()?);
        }
        Cocycle2::from_rows(rack, field, &parsed)
    }
}
