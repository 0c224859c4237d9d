//! Exact coefficient fields: prime fields, small extension fields, the
//! rationals and cyclotomic fields, all behind the [`Field`] handle.
//!
//! Scalars carry only their representation; arithmetic goes through the
//! field handle. Finite-field elements are integers whose base-`p` digits,
//! most significant first, are the coefficients `a_0, a_1, ..., a_{k-1}` of
//! the residue polynomial. With that encoding the integer order coincides
//! with the lexicographic order on coefficient sequences.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Cyclotomic {
        m: u32,
    },
    Prime {
        p: u32,
    },
    Extension {
        p: u32,
        k: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus_poly: Option<Vec<u32>>,
    },
}

impl FieldSpec {
    pub fn prime(p: u32) -> FieldSpec {
        FieldSpec::Prime { p }
    }

    pub fn extension(p: u32, k: u32) -> FieldSpec {
        FieldSpec::Extension { p, k, modulus_poly: None }
    }

    pub fn cyclotomic(m: u32) -> FieldSpec {
        FieldSpec::Cyclotomic { m }
    }

    /// Finite field of order `q`, prime or prime power.
    pub fn finite(q: u32) -> Result<FieldSpec> {
        let (p, k) = prime_power(q as u64).ok_or(Error::NonPrimeModulus(q as u64))?;
        Ok(if k == 1 { FieldSpec::prime(p as u32) } else { FieldSpec::extension(p as u32, k) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fin(u32),
    Rat(Q),
    Cyc(Vec<Q>),
}

const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Debug)]
pub(crate) struct Fq {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    /// Monic modulus, low-to-high, length k+1 (t - 0 for prime fields is unused).
    pub modulus: Vec<u32>,
    /// Weights p^(k-1-i) of digit i.
    weights: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
    generator: u32,
}

#[derive(Debug)]
enum Kind {
    Rational,
    Cyclotomic { m: u32, phi: Vec<i64>, roots: Vec<Vec<Q>> },
    Finite(Fq),
}

#[derive(Debug)]
struct Inner {
    spec: FieldSpec,
    kind: Kind,
}

/// Shared immutable handle to an exact field.
#[derive(Clone, Debug)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.spec() == other.spec()
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.spec().hash(state);
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    if r == 1 {
        Some((p, k))
    } else {
        None
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut r = n;
    for p in prime_factors(n) {
        r = r / p * (p - 1);
    }
    r
}

/// Integer cyclotomic polynomial, low-to-high.
pub fn cyclotomic_poly(m: u32) -> Vec<i64> {
    // t^m - 1 divided by all Phi_d with d | m, d < m
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let den = cyclotomic_poly(d);
            num = int_poly_div_exact(&num, &den);
        }
    }
    num
}

fn int_poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut q = vec![0i64; da - db + 1];
    for i in (0..=da - db).rev() {
        let c = r[i + db];
        q[i] = c;
        for j in 0..=db {
            r[i + j] -= c * b[j];
        }
    }
    q
}

// ---- small polynomial helpers over F_p used while building fields ----

fn fp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut r: Vec<u32> = r.into_iter().map(|v| v as u32).collect();
    fp_rem(&mut r, m, p);
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn fp_rem(r: &mut Vec<u32>, m: &[u32], p: u32) {
    fp_trim(r);
    let dm = m.len() - 1;
    let lc_inv = fp_inv(m[dm], p) as u64;
    let p64 = p as u64;
    while r.len() > dm && !r.is_empty() {
        let top = r.len() - 1;
        let c = r[top] as u64 * lc_inv % p64;
        for j in 0..=dm {
            let idx = top - dm + j;
            r[idx] = ((r[idx] as u64 + p64 - c * m[j] as u64 % p64) % p64) as u32;
        }
        fp_trim(r);
    }
}

fn fp_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut r = vec![0u32; n];
    for i in 0..n {
        let x = *a.get(i).unwrap_or(&0);
        let y = *b.get(i).unwrap_or(&0);
        r[i] = (x + p - y) % p;
    }
    fp_trim(&mut r);
    r
}

fn fp_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let mut r = a.clone();
        fp_rem(&mut r, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility over F_p by the Rabin test.
pub(crate) fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    let powq = |g: &Vec<u32>| -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut base = g.clone();
        let mut e = p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, f, p);
            }
            base = fp_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        acc
    };
    let mut h = x.clone();
    let mut pows = Vec::with_capacity(n);
    for _ in 0..n {
        h = powq(&h);
        pows.push(h.clone());
    }
    // x^(p^n) == x
    if fp_sub(&pows[n - 1], &x, p) != Vec::<u32>::new() {
        return false;
    }
    for l in prime_factors(n as u64) {
        let d = n / l as usize;
        let g = fp_gcd(f, &fp_sub(&pows[d - 1], &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    // lexicographic on (a_0, ..., a_{k-1}), a_0 most significant
    let total = (p as u64).pow(k);
    for code in 0..total {
        let mut digits = vec![0u32; k as usize];
        let mut c = code;
        for i in (0..k as usize).rev() {
            digits[i] = (c % p as u64) as u32;
            c /= p as u64;
        }
        let mut f = digits;
        f.push(1);
        if fp_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Fq {
    fn new(p: u32, k: u32, modulus: Vec<u32>) -> Result<Fq> {
        let q64 = (p as u64).checked_pow(k).ok_or(Error::FieldTooLarge(u64::MAX))?;
        if q64 > u32::MAX as u64 {
            return Err(Error::FieldTooLarge(q64));
        }
        if k > 1 && q64 > TABLE_LIMIT {
            return Err(Error::FieldTooLarge(q64));
        }
        let q = q64 as u32;
        let mut weights = vec![1u32; k as usize];
        for i in (0..k as usize).rev().skip(1) {
            weights[i] = weights[i + 1] * p;
        }
        let mut f = Fq {
            p,
            k,
            q,
            modulus,
            weights,
            exp: Vec::new(),
            log: Vec::new(),
            add: Vec::new(),
            generator: 0,
        };
        if q64 <= TABLE_LIMIT {
            f.build_tables();
        } else {
            f.generator = f.find_generator_slow();
        }
        Ok(f)
    }

    pub(crate) fn digits(&self, a: u32) -> Vec<u32> {
        let mut d = vec![0u32; self.k as usize];
        let mut a = a;
        for i in (0..self.k as usize).rev() {
            d[i] = a % self.p;
            a /= self.p;
        }
        d
    }

    pub(crate) fn from_digits(&self, d: &[u32]) -> u32 {
        let mut a = 0u32;
        for i in 0..self.k as usize {
            a += (d.get(i).copied().unwrap_or(0) % self.p) * self.weights[i];
        }
        a
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let mut da = self.digits(a);
        let mut db = self.digits(b);
        fp_trim(&mut da);
        fp_trim(&mut db);
        let r = fp_mulmod(&da, &db, &self.modulus, self.p);
        self.from_digits(&r)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let one = self.one();
        let mut acc = one;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn one(&self) -> u32 {
        self.weights[0]
    }

    fn find_generator_slow(&self) -> u32 {
        let n = self.q as u64 - 1;
        let fac = prime_factors(n);
        let one = self.one();
        for g in 1..self.q {
            if fac.iter().all(|&l| self.slow_pow(g, n / l) != one) {
                return g;
            }
        }
        one
    }

    fn build_tables(&mut self) {
        let g = self.find_generator_slow();
        self.generator = g;
        let n = self.q as usize - 1;
        let mut exp = vec![0u32; n.max(1)];
        let mut log = vec![0u32; self.q as usize];
        let mut x = self.one();
        for (i, e) in exp.iter_mut().enumerate().take(n) {
            *e = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, g);
        }
        self.exp = exp;
        self.log = log;
        if self.k > 1 && self.q <= 256 {
            let q = self.q as usize;
            let mut add = vec![0u32; q * q];
            for a in 0..q {
                let da = self.digits(a as u32);
                for b in 0..q {
                    let db = self.digits(b as u32);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
                    add[a * q + b] = self.from_digits(&s);
                }
            }
            self.add = add;
        }
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            let s = a as u64 + b as u64;
            return (s % self.p as u64) as u32;
        }
        if !self.add.is_empty() {
            return self.add[a as usize * self.q as usize + b as usize];
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&s)
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let d: Vec<u32> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.from_digits(&d)
    }

    #[inline]
    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.exp.is_empty() {
            return self.slow_mul(a, b);
        }
        let n = self.q as usize - 1;
        let i = self.log[a as usize] as usize + self.log[b as usize] as usize;
        self.exp[if i >= n { i - n } else { i }]
    }

    pub(crate) fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.exp.is_empty() {
            return Some(self.slow_pow(a, self.q as u64 - 2));
        }
        let n = self.q as usize - 1;
        let l = self.log[a as usize] as usize;
        Some(self.exp[(n - l) % n])
    }

    /// Discrete logarithm to the canonical generator.
    pub(crate) fn dlog(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if !self.log.is_empty() {
            return Some(self.log[a as usize] as u64);
        }
        let mut x = self.one();
        for i in 0..self.q as u64 - 1 {
            if x == a {
                return Some(i);
            }
            x = self.slow_mul(x, self.generator);
        }
        None
    }
}

impl Field {
    /// Builds a field from its description, validating it.
    pub fn new(spec: &FieldSpec) -> Result<Field> {
        let (spec, kind) = match spec {
            FieldSpec::Rational => (FieldSpec::Rational, Kind::Rational),
            FieldSpec::Cyclotomic { m } => {
                let m = *m;
                if m == 0 {
                    return Err(Error::Invalid("cyclotomic order must be at least 1".into()));
                }
                if m > 10_000 {
                    return Err(Error::FieldTooLarge(m as u64));
                }
                let phi = cyclotomic_poly(m);
                let deg = phi.len() - 1;
                // generator of all roots of unity in Q(zeta_m)
                let big_m = if m % 2 == 0 { m } else { 2 * m };
                let mut gen = vec![Q::zero(); deg];
                if deg == 1 {
                    // Q itself: zeta_m is 1 or -1
                    gen[0] = Q::from_int(-1);
                } else {
                    gen[1] = if m % 2 == 0 { Q::one() } else { Q::from_int(-1) };
                }
                let mut roots = Vec::with_capacity(big_m as usize);
                let mut x = {
                    let mut v = vec![Q::zero(); deg];
                    v[0] = Q::one();
                    v
                };
                for _ in 0..big_m {
                    roots.push(x.clone());
                    x = cyc_mul(&x, &gen, &phi);
                }
                (FieldSpec::Cyclotomic { m }, Kind::Cyclotomic { m, phi, roots })
            }
            FieldSpec::Prime { p } => {
                if !is_prime(*p as u64) {
                    return Err(Error::NonPrimeModulus(*p as u64));
                }
                let fq = Fq::new(*p, 1, vec![0, 1])?;
                (FieldSpec::Prime { p: *p }, Kind::Finite(fq))
            }
            FieldSpec::Extension { p, k, modulus_poly } => {
                if !is_prime(*p as u64) {
                    return Err(Error::NonPrimeModulus(*p as u64));
                }
                if *k == 0 {
                    return Err(Error::Invalid("extension degree must be at least 1".into()));
                }
                let modulus = match modulus_poly {
                    Some(f) => {
                        let mut f = f.clone();
                        if f.len() != *k as usize + 1
                            || f[*k as usize] % p != 1
                            || f.iter().any(|c| *c >= *p)
                            || !fp_is_irreducible(&f, *p)
                        {
                            f.truncate(*k as usize + 1);
                            return Err(Error::ReducibleModulusPoly(modulus_poly.clone().unwrap()));
                        }
                        f[*k as usize] = 1;
                        f
                    }
                    None => {
                        if (*p as u64).checked_pow(*k).is_none_or(|q| q > TABLE_LIMIT) {
                            return Err(Error::FieldTooLarge((*p as u64).saturating_pow(*k)));
                        }
                        smallest_irreducible(*p, *k)
                    }
                };
                let fq = Fq::new(*p, *k, modulus.clone())?;
                (FieldSpec::Extension { p: *p, k: *k, modulus_poly: Some(modulus) }, Kind::Finite(fq))
            }
        };
        Ok(Field { inner: Arc::new(Inner { spec, kind }) })
    }

    pub fn rational() -> Field {
        Field::new(&FieldSpec::Rational).expect("rational field")
    }

    pub fn cyclotomic(m: u32) -> Result<Field> {
        Field::new(&FieldSpec::cyclotomic(m))
    }

    pub fn finite(q: u32) -> Result<Field> {
        Field::new(&FieldSpec::finite(q)?)
    }

    /// Resolved description; extensions always carry their modulus.
    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub(crate) fn fq(&self) -> Option<&Fq> {
        match &self.inner.kind {
            Kind::Finite(f) => Some(f),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u32 {
        match &self.inner.kind {
            Kind::Finite(f) => f.p,
            _ => 0,
        }
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u32> {
        self.fq().map(|f| f.q)
    }

    /// Dimension over the prime field (finite) or over Q (characteristic 0).
    pub fn degree(&self) -> usize {
        match &self.inner.kind {
            Kind::Rational => 1,
            Kind::Cyclotomic { phi, .. } => phi.len() - 1,
            Kind::Finite(f) => f.k as usize,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.fq().is_some()
    }

    pub fn zero(&self) -> Scalar {
        match &self.inner.kind {
            Kind::Rational => Scalar::Rat(Q::zero()),
            Kind::Cyclotomic { phi, .. } => Scalar::Cyc(vec![Q::zero(); phi.len() - 1]),
            Kind::Finite(_) => Scalar::Fin(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_q(&Q::from_int(n)).expect("integers embed in every field")
    }

    /// Image of a rational number; fails when the denominator vanishes.
    pub fn from_q(&self, x: &Q) -> Result<Scalar> {
        match &self.inner.kind {
            Kind::Rational => Ok(Scalar::Rat(x.clone())),
            Kind::Cyclotomic { phi, .. } => {
                let mut v = vec![Q::zero(); phi.len() - 1];
                v[0] = x.clone();
                Ok(Scalar::Cyc(v))
            }
            Kind::Finite(f) => {
                let p = f.p as i64;
                let big = x.to_big();
                let n = big.numer() % num_bigint::BigInt::from(p);
                let d = big.denom() % num_bigint::BigInt::from(p);
                let n: i64 = (n.try_into().unwrap_or(0i64) % p + p) % p;
                let d: i64 = (d.try_into().unwrap_or(0i64) % p + p) % p;
                if d == 0 {
                    return Err(Error::Invalid(format!("denominator divisible by {p}")));
                }
                let c = (n as u64 * fp_inv(d as u32, f.p) as u64 % p as u64) as u32;
                Ok(Scalar::Fin(c * f.one()))
            }
        }
    }

    /// Element with the given coefficients in the canonical basis
    /// (powers of the generator `t`, low to high).
    pub fn from_coeffs(&self, c: &[Q]) -> Result<Scalar> {
        match &self.inner.kind {
            Kind::Rational => Ok(Scalar::Rat(c.first().cloned().unwrap_or_else(Q::zero))),
            Kind::Cyclotomic { phi, .. } => {
                let deg = phi.len() - 1;
                let mut v: Vec<Q> = c.to_vec();
                if v.len() < deg {
                    v.resize(deg, Q::zero());
                }
                Ok(Scalar::Cyc(cyc_reduce(v, phi)))
            }
            Kind::Finite(f) => {
                let p = f.p as i64;
                let mut digits = Vec::with_capacity(c.len());
                for x in c {
                    if !x.is_integer() {
                        return Err(Error::Invalid("finite-field coefficients must be integers".into()));
                    }
                    let v = x.floor() % num_bigint::BigInt::from(p);
                    let v: i64 = v.try_into().unwrap_or(0);
                    digits.push(((v % p + p) % p) as u32);
                }
                let mut m = digits;
                fp_rem(&mut m, &f.modulus, f.p);
                Ok(Scalar::Fin(f.from_digits(&m)))
            }
        }
    }

    /// Coefficients in the canonical basis, low to high.
    pub fn coeffs(&self, a: &Scalar) -> Vec<Q> {
        match (a, &self.inner.kind) {
            (Scalar::Rat(x), _) => vec![x.clone()],
            (Scalar::Cyc(v), _) => v.clone(),
            (Scalar::Fin(x), Kind::Finite(f)) => f.digits(*x).into_iter().map(|d| Q::from_int(d as i64)).collect(),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    /// The generator `t` of the field over its prime field (zeta for
    /// cyclotomic fields, the class of `t` for extensions).
    pub fn gen(&self) -> Scalar {
        match &self.inner.kind {
            Kind::Rational => self.one(),
            Kind::Cyclotomic { phi, m, .. } => {
                let deg = phi.len() - 1;
                if deg == 1 {
                    self.from_int(if *m == 1 { 1 } else { -1 })
                } else {
                    let mut v = vec![Q::zero(); deg];
                    v[1] = Q::one();
                    Scalar::Cyc(v)
                }
            }
            Kind::Finite(f) => {
                if f.k == 1 {
                    Scalar::Fin(0)
                } else {
                    Scalar::Fin(f.from_digits(&[0, 1]))
                }
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fin(x) => *x == 0,
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Cyc(v) => v.iter().all(Q::is_zero),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b, &self.inner.kind) {
            (Scalar::Fin(x), Scalar::Fin(y), Kind::Finite(f)) => Scalar::Fin(f.add(*x, *y)),
            (Scalar::Rat(x), Scalar::Rat(y), _) => Scalar::Rat(x.add(y)),
            (Scalar::Cyc(x), Scalar::Cyc(y), _) => Scalar::Cyc(x.iter().zip(y).map(|(u, v)| u.add(v)).collect()),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (a, &self.inner.kind) {
            (Scalar::Fin(x), Kind::Finite(f)) => Scalar::Fin(f.neg(*x)),
            (Scalar::Rat(x), _) => Scalar::Rat(x.neg()),
            (Scalar::Cyc(x), _) => Scalar::Cyc(x.iter().map(Q::neg).collect()),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b, &self.inner.kind) {
            (Scalar::Fin(x), Scalar::Fin(y), Kind::Finite(f)) => Scalar::Fin(f.mul(*x, *y)),
            (Scalar::Rat(x), Scalar::Rat(y), _) => Scalar::Rat(x.mul(y)),
            (Scalar::Cyc(x), Scalar::Cyc(y), Kind::Cyclotomic { phi, .. }) => Scalar::Cyc(cyc_mul(x, y, phi)),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (a, &self.inner.kind) {
            (Scalar::Fin(x), Kind::Finite(f)) => f.inv(*x).map(Scalar::Fin),
            (Scalar::Rat(x), _) => x.inv().map(Scalar::Rat),
            (Scalar::Cyc(x), Kind::Cyclotomic { phi, roots, .. }) => {
                if let Some(i) = roots.iter().position(|r| r == x) {
                    let n = roots.len();
                    return Some(Scalar::Cyc(roots[(n - i) % n].clone()));
                }
                cyc_inv(x, phi).map(Scalar::Cyc)
            }
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|i| self.mul(a, &i))
    }

    /// Integer power; negative exponents invert (None for 0 to a negative power).
    pub fn pow(&self, a: &Scalar, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut b = base;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        Some(acc)
    }

    /// Canonical ordering: lexicographic on the reduced coefficient sequence.
    pub fn cmp(&self, a: &Scalar, b: &Scalar) -> Ordering {
        match (a, b) {
            (Scalar::Fin(x), Scalar::Fin(y)) => x.cmp(y),
            (Scalar::Rat(x), Scalar::Rat(y)) => x.cmp(y),
            (Scalar::Cyc(x), Scalar::Cyc(y)) => x.cmp(y),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    /// All elements in canonical order (finite fields only).
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.fq().map(|f| (0..f.q).map(Scalar::Fin).collect())
    }

    /// Exact multiplicative order of a root of unity; `None` when the element
    /// is zero or has infinite order.
    pub fn mult_order(&self, a: &Scalar) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        match (a, &self.inner.kind) {
            (Scalar::Fin(x), Kind::Finite(f)) => {
                let n = f.q as u64 - 1;
                let l = f.dlog(*x)?;
                Some(n / gcd(l, n))
            }
            (Scalar::Rat(x), _) => {
                if x.is_one() {
                    Some(1)
                } else if *x == Q::from_int(-1) {
                    Some(2)
                } else {
                    None
                }
            }
            (Scalar::Cyc(x), Kind::Cyclotomic { roots, .. }) => {
                let n = roots.len() as u64;
                roots.iter().position(|r| r == x).map(|i| n / gcd(i as u64, n))
            }
            _ => None,
        }
    }

    /// Smallest element (canonical order) of exact multiplicative order `d`.
    pub fn root_of_unity(&self, d: u64) -> Result<Scalar> {
        if d == 0 {
            return Err(Error::NoRootOfUnityOfOrder(0));
        }
        match &self.inner.kind {
            Kind::Finite(f) => {
                let n = f.q as u64 - 1;
                if !n.is_multiple_of(d) {
                    return Err(Error::NoRootOfUnityOfOrder(d));
                }
                for x in 1..f.q {
                    let l = f.dlog(x).expect("nonzero");
                    if n / gcd(l, n) == d {
                        return Ok(Scalar::Fin(x));
                    }
                }
                Err(Error::NoRootOfUnityOfOrder(d))
            }
            Kind::Rational => match d {
                1 => Ok(self.one()),
                2 => Ok(self.from_int(-1)),
                _ => Err(Error::NoRootOfUnityOfOrder(d)),
            },
            Kind::Cyclotomic { roots, .. } => {
                let n = roots.len() as u64;
                let mut best: Option<&Vec<Q>> = None;
                for (i, r) in roots.iter().enumerate() {
                    if n / gcd(i as u64, n) == d && best.is_none_or(|b| r < b) {
                        best = Some(r);
                    }
                }
                best.map(|r| Scalar::Cyc(r.clone())).ok_or(Error::NoRootOfUnityOfOrder(d))
            }
        }
    }

    /// Canonical generator of the multiplicative group of a finite field.
    pub fn canonical_generator(&self) -> Option<Scalar> {
        self.fq().map(|f| Scalar::Fin(f.generator))
    }

    /// Discrete logarithm with respect to [`Field::canonical_generator`].
    pub fn dlog(&self, a: &Scalar) -> Option<u64> {
        match (a, self.fq()) {
            (Scalar::Fin(x), Some(f)) => f.dlog(*x),
            _ => None,
        }
    }

    /// Frobenius x -> x^p (finite fields).
    pub fn frobenius(&self, a: &Scalar) -> Scalar {
        let p = self.characteristic() as i64;
        self.pow(a, p).expect("nonnegative power")
    }

    /// Embeds an integer value of a finite-field element into 0..p for
    /// prime fields.
    pub fn to_u32(&self, a: &Scalar) -> Option<u32> {
        match a {
            Scalar::Fin(x) => Some(*x),
            _ => None,
        }
    }

    /// Parses a scalar from text: integers, fractions, `z`/`zeta` powers
    /// (`-zeta^2`), or a bracketed coefficient list `[a0,a1,...]`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("cannot parse scalar {s:?}"));
        if s.starts_with('[') {
            let v: Vec<serde_json::Value> = serde_json::from_str(s).map_err(|_| bad())?;
            let mut c = Vec::new();
            for x in v {
                c.push(json_q(&x).ok_or_else(bad)?);
            }
            return self.from_coeffs(&c);
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let val = if let Some(rest) = body.strip_prefix("zeta").or_else(|| body.strip_prefix('z')) {
            let e: i64 = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?
            };
            self.pow(&self.gen(), e).ok_or_else(bad)?
        } else {
            let q = Q::parse(body).ok_or_else(bad)?;
            self.from_q(&q)?
        };
        Ok(if neg { self.neg(&val) } else { val })
    }

    pub fn from_json(&self, v: &serde_json::Value) -> Result<Scalar> {
        match v {
            serde_json::Value::Number(_) => {
                let q = json_q(v).ok_or_else(|| Error::Invalid(format!("bad scalar {v}")))?;
                self.from_q(&q)
            }
            serde_json::Value::String(s) => self.parse(s),
            serde_json::Value::Array(_) => self.parse(&v.to_string()),
            _ => Err(Error::Invalid(format!("bad scalar {v}"))),
        }
    }

    /// JSON form: a number for the rationals and prime fields, otherwise the
    /// coefficient list as strings.
    pub fn to_json(&self, a: &Scalar) -> serde_json::Value {
        match (a, &self.inner.kind) {
            (Scalar::Fin(x), Kind::Finite(f)) if f.k == 1 => serde_json::json!(x),
            (Scalar::Rat(Q::Small(n, 1)), _) => serde_json::json!(n),
            (Scalar::Rat(q), _) => serde_json::json!(q.to_string()),
            _ => serde_json::Value::Array(
                self.coeffs(a).iter().map(|c| match c {
                    Q::Small(n, 1) => serde_json::json!(n),
                    other => serde_json::json!(other.to_string()),
                }).collect(),
            ),
        }
    }

    pub fn display(&self, a: &Scalar) -> String {
        match (a, &self.inner.kind) {
            (Scalar::Fin(x), Kind::Finite(f)) if f.k == 1 => x.to_string(),
            (Scalar::Rat(q), _) => q.to_string(),
            _ => {
                let c = self.coeffs(a);
                let mut parts = Vec::new();
                for (i, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let v = match i {
                        0 => x.to_string(),
                        1 => format!("{x}*t"),
                        _ => format!("{x}*t^{i}"),
                    };
                    parts.push(v);
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join("+")
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.spec() {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Cyclotomic { m } => write!(f, "Q(zeta_{m})"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Extension { p, k, .. } => write!(f, "F_{}", (*p as u64).pow(*k)),
        }
    }
}

fn json_q(v: &serde_json::Value) -> Option<Q> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Some(Q::from_int(i))
            } else {
                Q::parse(&n.to_string())
            }
        }
        serde_json::Value::String(s) => Q::parse(s),
        _ => None,
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    crate::rational::gcd_u64(a, b)
}

fn cyc_reduce(mut v: Vec<Q>, phi: &[i64]) -> Vec<Q> {
    let deg = phi.len() - 1;
    while v.len() > deg {
        let c = v.pop().expect("nonempty");
        if c.is_zero() {
            continue;
        }
        let base = v.len() - deg;
        for j in 0..deg {
            if phi[j] != 0 {
                v[base + j] = v[base + j].sub(&c.mul(&Q::from_int(phi[j])));
            }
        }
    }
    v
}

fn cyc_mul(a: &[Q], b: &[Q], phi: &[i64]) -> Vec<Q> {
    let deg = phi.len() - 1;
    let mut r = vec![Q::zero(); 2 * deg - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            r[i + j] = r[i + j].add(&x.mul(y));
        }
    }
    cyc_reduce(r, phi)
}

fn cyc_inv(a: &[Q], phi: &[i64]) -> Option<Vec<Q>> {
    let deg = phi.len() - 1;
    // columns: a * t^j
    let mut cols = Vec::with_capacity(deg);
    let mut tj = vec![Q::zero(); deg];
    tj[0] = Q::one();
    for _ in 0..deg {
        cols.push(cyc_mul(a, &tj, phi));
        let mut next = vec![Q::zero(); deg + 1];
        next[1..(deg + 1)].clone_from_slice(&tj[..deg]);
        tj = cyc_reduce(next, phi);
    }
    // augmented rows
    let mut m: Vec<Vec<Q>> = (0..deg)
        .map(|i| {
            let mut row: Vec<Q> = (0..deg).map(|j| cols[j][i].clone()).collect();
            row.push(if i == 0 { Q::one() } else { Q::zero() });
            row
        })
        .collect();
    for c in 0..deg {
        let piv = (c..deg).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, piv);
        let inv = m[c][c].inv()?;
        for x in m[c].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..deg {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[deg].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
    }

    #[test]
    fn extension_modulus_is_smallest() {
        let f = Field::new(&FieldSpec::extension(3, 2)).unwrap();
        match f.spec() {
            FieldSpec::Extension { modulus_poly: Some(m), .. } => assert_eq!(m, &vec![1, 0, 1]),
            _ => panic!(),
        }
        let f = Field::new(&FieldSpec::extension(2, 3)).unwrap();
        match f.spec() {
            FieldSpec::Extension { modulus_poly: Some(m), .. } => assert_eq!(m, &vec![1, 0, 1, 1]),
            _ => panic!(),
        }
    }
}
