//! Polynomials over finite fields and the arithmetic functions used in the
//! function-field statistics: factorization, Möbius and divisor functions,
//! resultants, discriminants, Jacobi symbols and multiplicative characters.
//!
//! Coefficients are element codes of the underlying [`Field`] (see
//! [`crate::scalar`]), stored low to high with no trailing zeros.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, FieldSpec, Fq, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyFq {
    field: Field,
    c: Vec<u32>,
}

/// Multiset of (degree, multiplicity) pairs, sorted.
pub type FactorizationType = Vec<(usize, u32)>;

fn trim(c: &mut Vec<u32>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

impl PolyFq {
    /// Builds a polynomial from element codes (low to high).
    pub fn new(field: &Field, coeffs: Vec<u32>) -> Result<PolyFq> {
        let fq = field.fq().ok_or_else(|| Error::Invalid("polynomials need a finite field".into()))?;
        if coeffs.iter().any(|&x| x >= fq.q) {
            return Err(Error::Invalid("coefficient code out of range".into()));
        }
        let mut c = coeffs;
        trim(&mut c);
        Ok(PolyFq { field: field.clone(), c })
    }

    /// Builds a polynomial over a prime field from integer coefficients.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> PolyFq {
        let c = coeffs
            .iter()
            .map(|&x| match field.from_int(x) {
                Scalar::Fin(v) => v,
                _ => unreachable!("finite field"),
            })
            .collect();
        PolyFq::new(field, c).expect("valid coefficients")
    }

    pub fn from_scalars(field: &Field, coeffs: &[Scalar]) -> Result<PolyFq> {
        let mut c = Vec::with_capacity(coeffs.len());
        for s in coeffs {
            c.push(field.to_u32(s).ok_or(Error::FieldMismatch)?);
        }
        PolyFq::new(field, c)
    }

    pub fn zero(field: &Field) -> PolyFq {
        PolyFq { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &Field) -> PolyFq {
        PolyFq { field: field.clone(), c: vec![fq_of(field).one_code()] }
    }

    /// The monomial `t`.
    pub fn t(field: &Field) -> PolyFq {
        PolyFq { field: field.clone(), c: vec![0, fq_of(field).one_code()] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn coeff_scalars(&self) -> Vec<Scalar> {
        self.c.iter().map(|&x| Scalar::Fin(x)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|&x| x == self.fq().one_code())
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.is_monic()
    }

    fn fq(&self) -> &Fq {
        fq_of(&self.field)
    }

    fn wrap(&self, c: Vec<u32>) -> PolyFq {
        let mut c = c;
        trim(&mut c);
        PolyFq { field: self.field.clone(), c }
    }

    pub fn add(&self, o: &PolyFq) -> PolyFq {
        self.wrap(p_add(self.fq(), &self.c, &o.c))
    }

    pub fn sub(&self, o: &PolyFq) -> PolyFq {
        self.wrap(p_sub(self.fq(), &self.c, &o.c))
    }

    pub fn mul(&self, o: &PolyFq) -> PolyFq {
        self.wrap(p_mul(self.fq(), &self.c, &o.c))
    }

    pub fn scale(&self, s: u32) -> PolyFq {
        let f = self.fq();
        self.wrap(self.c.iter().map(|&x| f.mul(x, s)).collect())
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, o: &PolyFq) -> (PolyFq, PolyFq) {
        let (q, r) = p_divrem(self.fq(), &self.c, &o.c);
        (self.wrap(q), self.wrap(r))
    }

    pub fn rem(&self, o: &PolyFq) -> PolyFq {
        self.divrem(o).1
    }

    pub fn monic(&self) -> PolyFq {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => self.scale(self.fq().inv(lc).expect("nonzero")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &PolyFq) -> PolyFq {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> PolyFq {
        let f = self.fq();
        let mut d = Vec::with_capacity(self.c.len().saturating_sub(1));
        for (i, &x) in self.c.iter().enumerate().skip(1) {
            d.push(f.mul(x, f.int_code(i as u64)));
        }
        self.wrap(d)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.fq();
        let mut acc = 0;
        for &c in self.c.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &num_bigint::BigUint, m: &PolyFq) -> PolyFq {
        let f = self.fq();
        let mut acc = vec![f.one_code()];
        acc = p_divrem(f, &acc, &m.c).1;
        let base = p_divrem(f, &self.c, &m.c).1;
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = p_divrem(f, &p_mul(f, &acc, &acc), &m.c).1;
            if e.bit(i) {
                acc = p_divrem(f, &p_mul(f, &acc, &base), &m.c).1;
            }
        }
        self.wrap(acc)
    }

    pub fn pow(&self, e: u32) -> PolyFq {
        let mut acc = PolyFq::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Canonical ordering: by degree, then lexicographic on the coefficient
    /// sequence (low to high) in canonical scalar order.
    pub fn canonical_cmp(&self, o: &PolyFq) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| self.c.cmp(&o.c))
    }

    pub fn is_squarefree(&self) -> bool {
        if self.deg() == 0 {
            return !self.is_zero();
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Integer coefficient list for JSON output (prime fields give residues,
    /// extension fields give element codes).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "field": self.field.spec(),
            "coeffs": self.c,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<PolyFq> {
        let spec: FieldSpec = serde_json::from_value(v.get("field").cloned().unwrap_or_default())
            .map_err(|e| Error::Invalid(e.to_string()))?;
        let field = Field::new(&spec)?;
        let coeffs: Vec<u32> = serde_json::from_value(v.get("coeffs").cloned().unwrap_or_default())
            .map_err(|e| Error::Invalid(e.to_string()))?;
        PolyFq::new(&field, coeffs)
    }

    /// Parses a comma-separated coefficient list, low to high.
    pub fn parse(field: &Field, s: &str) -> Result<PolyFq> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut c = Vec::new();
        for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let v = field.parse(part)?;
            c.push(field.to_u32(&v).ok_or(Error::FieldMismatch)?);
        }
        PolyFq::new(field, c)
    }
}

impl std::fmt::Display for PolyFq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, &x) in self.c.iter().enumerate().rev() {
            if x == 0 {
                continue;
            }
            let coef = self.field.display(&Scalar::Fin(x));
            let one = x == self.fq().one_code();
            let term = match (i, one) {
                (0, _) => coef,
                (1, true) => "t".to_string(),
                (1, false) => format!("{coef}*t"),
                (_, true) => format!("t^{i}"),
                (_, false) => format!("{coef}*t^{i}"),
            };
            parts.push(term);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn fq_of(field: &Field) -> &Fq {
    field.fq().expect("finite field")
}

impl Fq {
    pub(crate) fn one_code(&self) -> u32 {
        self.from_digits(&[1])
    }

    pub(crate) fn int_code(&self, n: u64) -> u32 {
        self.from_digits(&[(n % self.p as u64) as u32])
    }
}

fn p_add(f: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect()
}

fn p_sub(f: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), f.neg(*b.get(i).unwrap_or(&0))))
        .collect()
}

pub(crate) fn p_mul(f: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                r[i + j] = f.add(r[i + j], f.mul(x, y));
            }
        }
    }
    r
}

fn p_divrem(f: &Fq, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = f.inv(b[db]).expect("nonzero");
    let mut q = vec![0u32; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let c = f.mul(r[top], inv);
        q[top - db] = c;
        let nc = f.neg(c);
        for j in 0..=db {
            let idx = top - db + j;
            r[idx] = f.add(r[idx], f.mul(nc, b[j]));
        }
        trim(&mut r);
    }
    (q, r)
}

fn q_pow(q: u32, e: usize) -> num_bigint::BigUint {
    num_bigint::BigUint::from(q).pow(e as u32)
}

fn pth_root(f: &PolyFq) -> PolyFq {
    // f' = 0, so f = sum a_{ip} t^{ip}; coefficient roots via x^(q/p)
    let fq = f.fq();
    let p = fq.p as usize;
    let e = (fq.q / fq.p) as i64;
    let mut c = Vec::new();
    for i in (0..f.c.len()).step_by(p) {
        let s = f.field.pow(&Scalar::Fin(f.c[i]), e).expect("power");
        c.push(f.field.to_u32(&s).expect("finite"));
    }
    f.wrap(c)
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &PolyFq) -> Vec<(usize, PolyFq)> {
    let q = f.fq().q;
    let mut out = Vec::new();
    let mut h = f.clone();
    let t = PolyFq::t(&f.field);
    let mut xp = t.clone();
    let mut d = 0;
    while h.deg() >= 2 * (d + 1) {
        d += 1;
        xp = xp.pow_mod(&num_bigint::BigUint::from(q), &h);
        let g = h.gcd(&xp.sub(&t));
        if g.deg() > 0 {
            out.push((d, g.clone()));
            h = h.divrem(&g).0;
            xp = xp.rem(&h);
        }
    }
    if h.deg() > 0 {
        out.push((h.deg(), h));
    }
    out
}

/// Candidate polynomials of degree < n in canonical order, skipping constants.
fn candidates(field: &Field, n: usize) -> impl Iterator<Item = PolyFq> + '_ {
    let q = fq_of(field).q as u64;
    let total = q.saturating_pow(n as u32);
    (q..total).map(move |code| {
        let mut c = Vec::with_capacity(n);
        let mut x = code;
        for _ in 0..n {
            c.push((x % q) as u32);
            x /= q;
        }
        PolyFq::new(field, c).expect("valid")
    })
}

/// Equal-degree factorization, deterministic.
fn edf(f: &PolyFq, d: usize) -> Vec<PolyFq> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let fq = f.fq();
    let q = fq.q;
    let one = PolyFq::one(&f.field);
    for a in candidates(&f.field, n) {
        let g = if q % 2 == 1 {
            let e = (q_pow(q, d) - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&one)
        } else {
            // trace map a + a^2 + ... + a^(2^(kd-1))
            let bits = (fq.k as usize) * d;
            let mut acc = PolyFq::zero(&f.field);
            let mut cur = a.rem(f);
            for _ in 0..bits {
                acc = acc.add(&cur);
                cur = cur.mul(&cur).rem(f);
            }
            acc
        };
        let h = f.gcd(&g);
        if h.deg() > 0 && h.deg() < n {
            let other = f.divrem(&h).0;
            let mut out = edf(&h, d);
            out.extend(edf(&other, d));
            return out;
        }
    }
    unreachable!("some candidate splits a product of equal-degree factors")
}

fn merge_factors(mut a: Vec<(PolyFq, u32)>, b: Vec<(PolyFq, u32)>) -> Vec<(PolyFq, u32)> {
    for (p, e) in b {
        if let Some(x) = a.iter_mut().find(|(q, _)| *q == p) {
            x.1 += e;
        } else {
            a.push((p, e));
        }
    }
    a
}

fn factor_rec(f: &PolyFq) -> Vec<(PolyFq, u32)> {
    if f.deg() == 0 {
        return Vec::new();
    }
    let d = f.derivative();
    if d.is_zero() {
        let p = f.fq().p;
        return factor_rec(&pth_root(f)).into_iter().map(|(g, e)| (g, e * p)).collect();
    }
    let g = f.gcd(&d);
    if g.deg() == 0 {
        let mut out = Vec::new();
        for (deg, part) in ddf(f) {
            for h in edf(&part, deg) {
                out.push((h.monic(), 1));
            }
        }
        return out;
    }
    let rest = f.divrem(&g).0;
    merge_factors(factor_rec(&g), factor_rec(&rest))
}

/// Complete factorization into monic irreducibles, ordered by degree then
/// lexicographically.
pub fn poly_factor(f: &PolyFq) -> Result<Vec<(PolyFq, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = factor_rec(&f.monic());
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

pub fn factorization_type(f: &PolyFq) -> Result<FactorizationType> {
    let mut t: Vec<(usize, u32)> = poly_factor(f)?.iter().map(|(p, e)| (p.deg(), *e)).collect();
    t.sort();
    Ok(t)
}

pub fn is_irreducible(f: &PolyFq) -> bool {
    if f.deg() == 0 {
        return false;
    }
    matches!(poly_factor(f).as_deref(), Ok([(_, 1)]))
}

/// Resultant `Res(f, g) = lc(f)^deg g * prod_{f(a)=0} g(a)`, computed by the
/// Euclidean algorithm.
pub fn resultant(f: &PolyFq, g: &PolyFq) -> Result<Scalar> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(Scalar::Fin(res_rec(f.fq(), &f.c, &g.c)))
}

fn res_rec(fq: &Fq, a: &[u32], b: &[u32]) -> u32 {
    let n = a.len() - 1;
    if b.is_empty() {
        return if n == 0 { fq.one_code() } else { 0 };
    }
    let m = b.len() - 1;
    let pw = |x: u32, e: usize| -> u32 {
        let mut acc = fq.one_code();
        for _ in 0..e {
            acc = fq.mul(acc, x);
        }
        acc
    };
    if n == 0 {
        return pw(a[0], m);
    }
    if m == 0 {
        return pw(b[0], n);
    }
    let (_, r) = p_divrem(fq, b, a);
    if r.is_empty() {
        return 0;
    }
    let k = r.len() - 1;
    // Res(a,b) = lc(a)^(m-k) Res(a,r);  Res(a,r) = (-1)^(nk) Res(r,a)
    let mut s = fq.mul(pw(a[n], m - k), res_rec(fq, &r, a));
    if (n * k) % 2 == 1 {
        s = fq.neg(s);
    }
    s
}

/// `disc(f) = (-1)^(n(n-1)/2) Res(f, f')` for monic `f` of degree `n`.
pub fn discriminant(f: &PolyFq) -> Result<Scalar> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.deg();
    let r = resultant(f, &f.derivative())?;
    Ok(if (n * n.saturating_sub(1) / 2) % 2 == 1 { f.field.neg(&r) } else { r })
}

/// Legendre symbol `(g / P)` for monic irreducible `P`, by Euler's criterion.
pub fn legendre_irreducible(g: &PolyFq, p: &PolyFq) -> i32 {
    let q = g.fq().q;
    let e = (q_pow(q, p.deg()) - 1u32) / 2u32;
    let r = g.pow_mod(&e, p);
    if r.is_zero() {
        0
    } else if r.is_one() {
        1
    } else {
        -1
    }
}

/// Jacobi symbol `(g / h)` for monic squarefree `h` in odd characteristic.
pub fn jacobi_symbol(g: &PolyFq, h: &PolyFq) -> Result<i32> {
    if g.fq().p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !h.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if g.gcd(h).deg() > 0 {
        return Ok(0);
    }
    let mut s = 1;
    for (p, _) in poly_factor(h)? {
        s *= legendre_irreducible(g, &p);
    }
    Ok(s)
}

/// Multiplicative character of `F_q^×` sending the canonical generator to a
/// root of unity of the given order in a target field.
#[derive(Clone, Debug)]
pub struct CharSpec {
    pub source: Field,
    pub order: u64,
    pub target: Field,
    pub generator: Scalar,
    pub generator_image: Scalar,
}

#[derive(Serialize, Deserialize)]
struct CharSpecJson {
    q: u32,
    order: u64,
    generator: serde_json::Value,
    generator_image: serde_json::Value,
    target: FieldSpec,
}

impl CharSpec {
    pub fn new(source: &Field, order: u64, target: &Field, image: Scalar) -> Result<CharSpec> {
        let q = source.order().ok_or_else(|| Error::Invalid("character source must be finite".into()))?;
        if order == 0 || !(q as u64 - 1).is_multiple_of(order) {
            return Err(Error::Invalid(format!("character order {order} does not divide q-1")));
        }
        if target.mult_order(&image) != Some(order) {
            return Err(Error::NoRootOfUnityOfOrder(order));
        }
        Ok(CharSpec {
            source: source.clone(),
            order,
            target: target.clone(),
            generator: source.canonical_generator().expect("finite"),
            generator_image: image,
        })
    }

    /// Quadratic character with values in Q.
    pub fn quadratic(source: &Field) -> Result<CharSpec> {
        if source.characteristic() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let t = Field::rational();
        let m1 = t.from_int(-1);
        CharSpec::new(source, 2, &t, m1)
    }

    /// `χ(a)`; zero maps to zero.
    pub fn eval(&self, a: &Scalar) -> Scalar {
        match self.source.dlog(a) {
            None => self.target.zero(),
            Some(l) => self.target.pow(&self.generator_image, (l % self.order) as i64).expect("power"),
        }
    }

    /// Value as an integer for characters of order at most 2.
    pub fn eval_sign(&self, a: &Scalar) -> Option<i64> {
        let v = self.eval(a);
        if self.target.is_zero(&v) {
            Some(0)
        } else if self.target.is_one(&v) {
            Some(1)
        } else if v == self.target.from_int(-1) {
            Some(-1)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CharSpecJson {
            q: self.source.order().unwrap_or(0),
            order: self.order,
            generator: self.source.to_json(&self.generator),
            generator_image: self.target.to_json(&self.generator_image),
            target: self.target.spec().clone(),
        })
        .expect("serializable")
    }
}

#[derive(Clone, Debug)]
pub enum ArithFn {
    Mu,
    Omega,
    D(u32),
    OneIrr,
    ChiDisc(CharSpec),
    JacobiConv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithValue {
    Int(i64),
    Scalar(Scalar),
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Möbius function of a monic squarefree polynomial.
pub fn mu(f: &PolyFq) -> Result<i64> {
    let fac = poly_factor(f)?;
    if fac.iter().any(|(_, e)| *e > 1) {
        return Err(Error::NotSquarefree);
    }
    Ok(if fac.len() % 2 == 0 { 1 } else { -1 })
}

pub fn omega(f: &PolyFq) -> Result<i64> {
    Ok(poly_factor(f)?.len() as i64)
}

pub fn d_k(f: &PolyFq, k: u32) -> Result<i64> {
    let mut r = 1i64;
    for (_, e) in poly_factor(f)? {
        r *= binom(e as u64 + k as u64 - 1, k as u64 - 1) as i64;
    }
    Ok(r)
}

/// Pairwise Legendre symbols `L[i][j] = (P_i / P_j)`.
fn legendre_table(factors: &[PolyFq]) -> Vec<Vec<i32>> {
    factors
        .iter()
        .map(|a| factors.iter().map(|b| if a == b { 0 } else { legendre_irreducible(a, b) }).collect())
        .collect()
}

/// `Σ_{gh=f} (g/h)` over monic factorizations of a squarefree `f`.
pub fn jacobi_conv(f: &PolyFq) -> Result<i64> {
    if f.fq().p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let fac = poly_factor(f)?;
    if fac.iter().any(|(_, e)| *e > 1) {
        return Err(Error::NotSquarefree);
    }
    let ps: Vec<PolyFq> = fac.into_iter().map(|(p, _)| p).collect();
    Ok(jacobi_conv_from_factors(&ps))
}

pub(crate) fn jacobi_conv_from_factors(ps: &[PolyFq]) -> i64 {
    let l = legendre_table(ps);
    let r = ps.len();
    let mut total = 0i64;
    for mask in 0u64..(1u64 << r) {
        // g = product over mask, h = product over complement; (g/h) = prod_{i in g, j in h} (P_i/P_j)
        let mut s = 1i32;
        for i in 0..r {
            if mask >> i & 1 == 0 {
                continue;
            }
            for j in 0..r {
                if mask >> j & 1 == 0 {
                    s *= l[i][j];
                }
            }
        }
        total += s as i64;
    }
    total
}

pub fn arith_fn(f: &PolyFq, kind: &ArithFn) -> Result<ArithValue> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::Invalid("polynomial must be monic".into()));
    }
    let needs_sqf = matches!(kind, ArithFn::Mu | ArithFn::OneIrr | ArithFn::ChiDisc(_) | ArithFn::JacobiConv);
    if needs_sqf && !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(match kind {
        ArithFn::Mu => ArithValue::Int(mu(f)?),
        ArithFn::Omega => ArithValue::Int(omega(f)?),
        ArithFn::D(k) => ArithValue::Int(d_k(f, *k)?),
        ArithFn::OneIrr => ArithValue::Int(if poly_factor(f)?.len() == 1 { 1 } else { 0 }),
        ArithFn::ChiDisc(chi) => ArithValue::Scalar(chi.eval(&discriminant(f)?)),
        ArithFn::JacobiConv => ArithValue::Int(jacobi_conv(f)?),
    })
}

/// Monic polynomial of degree `n` with index `code` in the lexicographic
/// order on `(a_0, ..., a_{n-1})`.
pub fn monic_from_index(field: &Field, n: usize, code: u64) -> PolyFq {
    let fq = fq_of(field);
    let q = fq.q as u64;
    let mut c = vec![0u32; n + 1];
    let mut x = code;
    for i in (0..n).rev() {
        c[i] = (x % q) as u32;
        x /= q;
    }
    c[n] = fq.one_code();
    PolyFq { field: field.clone(), c }
}

pub fn monic_index(f: &PolyFq) -> u64 {
    let q = f.fq().q as u64;
    let n = f.deg();
    let mut x = 0u64;
    for i in 0..n {
        x = x * q + f.c[i] as u64;
    }
    x
}

pub fn conf_count_formula(q: u64, n: usize) -> u64 {
    match n {
        0 => 1,
        1 => q,
        _ => q.pow(n as u32) - q.pow(n as u32 - 1),
    }
}

/// Squarefree flags and factor counts for every monic polynomial of degree
/// `n`, computed by sieving products of irreducibles.
#[derive(Clone, Debug)]
pub struct MonicTable {
    pub field: Field,
    pub n: usize,
    /// 0 when not squarefree, otherwise the number of irreducible factors.
    pub omega: Vec<u8>,
    /// 1 when some irreducible factor has even degree.
    pub even_factor: Vec<u8>,
    /// Irreducible counts by degree 0..=n (index 0 unused).
    pub irreducible_counts: Vec<u64>,
}

impl MonicTable {
    pub fn build(field: &Field, n: usize, cap: u128) -> Result<MonicTable> {
        let fq = fq_of(field);
        let q = fq.q as u64;
        let size = (q as u128).pow(n as u32);
        if size > cap {
            return Err(Error::WorkCapExceeded { work: size, cap });
        }
        // irreducibles by degree
        let mut irr: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n + 1];
        for d in 1..=n {
            let total = q.pow(d as u32) as usize;
            let mut reducible = vec![false; total];
            let lower: Vec<&Vec<u32>> = irr[1..d].iter().flatten().collect();
            mark_products(fq, &lower, 0, vec![fq.one_code()], d, 0, &mut |c: &[u32]| {
                reducible[index_of(q, c) as usize] = true;
            }, true);
            for (code, r) in reducible.iter().enumerate() {
                if !*r {
                    irr[d].push(monic_from_index(field, d, code as u64).c);
                }
            }
        }
        let irreducible_counts = irr.iter().map(|v| v.len() as u64).collect();
        let total = q.pow(n as u32) as usize;
        let mut omega = vec![0u8; total];
        let mut even_factor = vec![0u8; total];
        let all: Vec<(usize, &Vec<u32>)> = irr.iter().enumerate().flat_map(|(d, v)| v.iter().map(move |p| (d, p))).collect();
        squarefree_products(fq, &all, 0, vec![fq.one_code()], n, 0, false, &mut |c: &[u32], k: u8, ev: bool| {
            let i = index_of(q, c) as usize;
            omega[i] = k;
            even_factor[i] = ev as u8;
        });
        Ok(MonicTable { field: field.clone(), n, omega, even_factor, irreducible_counts })
    }

    pub fn is_squarefree(&self, code: u64) -> bool {
        self.omega[code as usize] > 0 || self.n == 0
    }

    pub fn conf_count(&self) -> u64 {
        if self.n == 0 {
            return 1;
        }
        self.omega.iter().filter(|&&w| w > 0).count() as u64
    }
}

fn index_of(q: u64, c: &[u32]) -> u64 {
    let n = c.len() - 1;
    let mut x = 0u64;
    for &v in &c[..n] {
        x = x * q + v as u64;
    }
    x
}

#[allow(clippy::too_many_arguments)]
fn mark_products(
    fq: &Fq,
    irr: &[&Vec<u32>],
    start: usize,
    cur: Vec<u32>,
    target: usize,
    nfac: usize,
    visit: &mut dyn FnMut(&[u32]),
    need_two: bool,
) {
    let deg = cur.len() - 1;
    if deg == target {
        if !need_two || nfac >= 2 {
            visit(&cur);
        }
        return;
    }
    for i in start..irr.len() {
        let d = irr[i].len() - 1;
        if deg + d > target {
            // irreducibles are sorted by degree
            break;
        }
        let next = p_mul(fq, &cur, irr[i]);
        // repeated factors allowed: start again at i
        mark_products(fq, irr, i, next, target, nfac + 1, visit, need_two);
    }
}

#[allow(clippy::too_many_arguments)]
fn squarefree_products(
    fq: &Fq,
    irr: &[(usize, &Vec<u32>)],
    start: usize,
    cur: Vec<u32>,
    target: usize,
    nfac: u8,
    even: bool,
    visit: &mut dyn FnMut(&[u32], u8, bool),
) {
    let deg = cur.len() - 1;
    if deg == target {
        if target > 0 {
            visit(&cur, nfac, even);
        }
        return;
    }
    for i in start..irr.len() {
        let (d, p) = irr[i];
        if deg + d > target {
            break;
        }
        let next = p_mul(fq, &cur, p);
        squarefree_products(fq, irr, i + 1, next, target, nfac + 1, even || d % 2 == 0, visit);
    }
}

/// Visits every monic squarefree polynomial of degree `n` in lexicographic
/// order and returns the count.
pub fn conf_enumerate(field: &Field, n: usize, cap: u128, visitor: &mut dyn FnMut(&PolyFq)) -> Result<u64> {
    let q = fq_of(field).q as u64;
    let size = (q as u128).pow(n as u32);
    if size > cap {
        return Err(Error::WorkCapExceeded { work: size, cap });
    }
    let mut count = 0;
    for code in 0..q.pow(n as u32) {
        let f = monic_from_index(field, n, code);
        if f.is_squarefree() {
            visitor(&f);
            count += 1;
        }
    }
    Ok(count)
}

/// Number of monic irreducibles of degree `n`: `(1/n) Σ_{d|n} μ(d) q^{n/d}`.
pub fn necklace_count(q: u64, n: usize) -> u64 {
    let n64 = n as u64;
    let mut s: i128 = 0;
    for d in 1..=n64 {
        if n64.is_multiple_of(d) {
            s += int_mobius(d) as i128 * (q as i128).pow((n64 / d) as u32);
        }
    }
    (s / n as i128) as u64
}

pub fn int_mobius(n: u64) -> i64 {
    let mut n = n;
    let mut r = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            r = -r;
        }
        d += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}
