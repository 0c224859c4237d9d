//! Finite groups as permutation groups.
//!
//! Elements are permutations of `0..degree`, listed in a fixed order.
//! Products act on the right: `(a*b)(i) = b(a(i))`, so conjugation
//! `x^y = y^-1 x y` is a right action. Small groups cache a full
//! multiplication table.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Perm = Vec<u16>;

/// Composition "apply `a`, then `b`".
pub fn perm_mul(a: &[u16], b: &[u16]) -> Perm {
    a.iter().map(|&i| b[i as usize]).collect()
}

pub fn perm_inv(a: &[u16]) -> Perm {
    let mut r = vec![0u16; a.len()];
    for (i, &j) in a.iter().enumerate() {
        r[j as usize] = i as u16;
    }
    r
}

/// Cycle notation with points numbered from 1, e.g. `(1 2)(3 4 5)`.
pub fn cycle_string(p: &[u16]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] as usize == s {
            continue;
        }
        let mut c = vec![s + 1];
        seen[s] = true;
        let mut j = p[s] as usize;
        while j != s {
            seen[j] = true;
            c.push(j + 1);
            j = p[j] as usize;
        }
        out.push('(');
        out.push_str(&c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Multiplication tables are cached up to this many elements.
const TABLE_LIMIT: usize = 2048;

/// Hard limit on the size of a group built by closure.
pub const GROUP_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    elems: Vec<Perm>,
    index: HashMap<Perm, usize>,
    identity: usize,
    inverse: Vec<usize>,
    table: Option<Vec<u32>>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, o: &Self) -> bool {
        self.elems == o.elems
    }
}

impl FiniteGroup {
    fn from_elements(degree: usize, elems: Vec<Perm>, labels: Option<Vec<String>>) -> FiniteGroup {
        let index: HashMap<Perm, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let id: Perm = (0..degree as u16).collect();
        let identity = index[&id];
        let inverse = elems.iter().map(|p| index[&perm_inv(p)]).collect();
        let mut g = FiniteGroup { degree, elems, index, identity, inverse, table: None, labels };
        if g.elems.len() <= TABLE_LIMIT {
            let n = g.elems.len();
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = g.index[&perm_mul(&g.elems[a], &g.elems[b])] as u32;
                }
            }
            g.table = Some(t);
        }
        g
    }

    /// Closure of permutation generators; elements sorted lexicographically.
    pub fn from_permutations(degree: usize, gens: &[Perm]) -> Result<FiniteGroup> {
        for g in gens {
            let mut s = g.clone();
            s.sort_unstable();
            if g.len() != degree || s != (0..degree as u16).collect::<Vec<_>>() {
                return Err(Error::Invalid(format!("not a permutation of 0..{degree}: {g:?}")));
            }
        }
        let id: Perm = (0..degree as u16).collect();
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = perm_mul(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > GROUP_LIMIT {
                        return Err(Error::SizeCapExceeded {
                            what: "group order".into(),
                            size: seen.len() as u128,
                            cap: GROUP_LIMIT as u128,
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(FiniteGroup::from_elements(degree, seen.into_iter().collect(), None))
    }

    /// A group from its multiplication table (`table[a][b] = a*b`),
    /// realized by the right regular representation; element order is kept.
    pub fn from_table(table: &[Vec<usize>]) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("multiplication table must be square over 0..n".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Invalid("table has no identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
            if !(0..n).any(|b| table[a][b] == e) {
                return Err(Error::Invalid(format!("element {a} has no inverse")));
            }
        }
        let elems: Vec<Perm> = (0..n).map(|g| (0..n).map(|h| table[h][g] as u16).collect()).collect();
        Ok(FiniteGroup::from_elements(n, elems, None))
    }

    pub fn symmetric(n: usize) -> Result<FiniteGroup> {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Perm = (0..n as u16).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n as u16).map(|i| (i + 1) % n as u16).collect());
        }
        FiniteGroup::from_permutations(n.max(1), &gens).map(|g| g.with_cycle_labels())
    }

    pub fn alternating(n: usize) -> Result<FiniteGroup> {
        let gens: Vec<Perm> = (2..n)
            .map(|k| {
                let mut p: Perm = (0..n as u16).collect();
                p[0] = 1;
                p[1] = k as u16;
                p[k] = 0;
                p
            })
            .collect();
        FiniteGroup::from_permutations(n.max(1), &gens).map(|g| g.with_cycle_labels())
    }

    /// ℤ/n with element i the rotation by i.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::Invalid("cyclic group of order 0".into()));
        }
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mut g = FiniteGroup::from_table(&table)?;
        g.labels = Some((0..n).map(|i| i.to_string()).collect());
        Ok(g)
    }

    /// Symmetries of the regular m-gon, of order 2m.
    pub fn dihedral(m: usize) -> Result<FiniteGroup> {
        if m < 3 {
            return Err(Error::Invalid("dihedral group needs m >= 3".into()));
        }
        let r: Perm = (0..m as u16).map(|i| (i + 1) % m as u16).collect();
        let s: Perm = (0..m as u16).map(|i| (m as u16 - i) % m as u16).collect();
        FiniteGroup::from_permutations(m, &[r, s]).map(|g| g.with_cycle_labels())
    }

    /// G × H acting on the disjoint union of the point sets.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let dg = g.degree;
        let mut elems = Vec::with_capacity(g.size() * h.size());
        let mut labels = Vec::new();
        for a in 0..g.size() {
            for b in 0..h.size() {
                let mut p = g.elems[a].clone();
                p.extend(h.elems[b].iter().map(|&x| x + dg as u16));
                elems.push(p);
                labels.push(format!("({},{})", g.label(a), h.label(b)));
            }
        }
        FiniteGroup::from_elements(dg + h.degree, elems, Some(labels))
    }

    fn with_cycle_labels(mut self) -> FiniteGroup {
        self.labels = Some(self.elems.iter().map(|p| cycle_string(p)).collect());
        self
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn perm(&self, a: usize) -> &Perm {
        &self.elems[a]
    }

    pub fn index_of(&self, p: &[u16]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elems.len() + b] as usize,
            None => self.index[&perm_mul(&self.elems[a], &self.elems[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut r = self.identity;
        let mut b = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// `y^-1 x y`.
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(y), x), y)
    }

    pub fn order_of(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.size()).fold(1, |l, a| crate::rational::lcm_u64(l, self.order_of(a)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size()).all(|a| (0..self.size()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugacy_class(&self, x: usize) -> Vec<usize> {
        let c: BTreeSet<usize> = (0..self.size()).map(|y| self.conj(x, y)).collect();
        c.into_iter().collect()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for x in 0..self.size() {
            if !seen[x] {
                let c = self.conjugacy_class(x);
                for &y in &c {
                    seen[y] = true;
                }
                out.push(c);
            }
        }
        out
    }

    pub fn is_conjugacy_closed(&self, r: &[usize]) -> bool {
        let set: BTreeSet<usize> = r.iter().copied().collect();
        r.iter().all(|&x| (0..self.size()).all(|y| set.contains(&self.conj(x, y))))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.size()).filter(|&i| seen[i]).collect()
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.subgroup(gens).len() == self.size()
    }

    /// All subgroups generated by subsets of `r`, each as a sorted element
    /// list, in discovery order (breadth first from the trivial subgroup).
    pub fn subgroups_generated_within(&self, r: &[usize]) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let start = vec![self.identity];
        seen.insert(start.clone());
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(h) = queue.pop_front() {
            let member: BTreeSet<usize> = h.iter().copied().collect();
            for &x in r {
                if member.contains(&x) {
                    continue;
                }
                let mut gens: Vec<usize> = h.iter().copied().filter(|y| r.contains(y)).collect();
                gens.push(x);
                let k = self.subgroup(&gens);
                if seen.insert(k.clone()) {
                    out.push(k.clone());
                    queue.push_back(k);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "generators": self.elems.to_vec(),
        })
    }

    /// Accepts `{"table": [[...]]}` or `{"degree": d, "generators": [[...]]}`
    /// (generators 0-based images).
    pub fn from_json(v: &Value) -> Result<FiniteGroup> {
        let bad = |m: &str| Error::Invalid(format!("group JSON: {m}"));
        if let Some(t) = v.get("table") {
            let table: Vec<Vec<usize>> = serde_json::from_value(t.clone()).map_err(|e| bad(&e.to_string()))?;
            return FiniteGroup::from_table(&table);
        }
        let gens: Vec<Vec<u16>> = serde_json::from_value(v.get("generators").cloned().ok_or_else(|| bad("missing generators"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let degree = match v.get("degree") {
            Some(d) => d.as_u64().ok_or_else(|| bad("degree"))? as usize,
            None => gens.first().map(|g| g.len()).ok_or_else(|| bad("no generators and no degree"))?,
        };
        FiniteGroup::from_permutations(degree, &gens)
    }
}
