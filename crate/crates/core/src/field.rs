//! Exact fields: the rationals and finite fields `F_q`, `q = p^r`.
//!
//! Finite field elements are encoded as `u32` values whose base-`p` digits
//! are the coefficients of a polynomial in `F_p[t] / (f)` for a fixed monic
//! irreducible `f` of degree `r` (the lexicographically least one). For
//! `r = 1` this is the usual residue `0..p`.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A field with a runtime context (the characteristic, the modulus, ...).
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the canonical ring map `Z -> F`.
    fn of_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;
    /// All elements in encoding order, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn spec(&self) -> FieldSpec;
    /// Integer or `a/b` rendering used by the JSON and TSV writers.
    fn render(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
}

/// Which exact field to compute over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Finite { p: u32, degree: u32 },
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Finite { p, degree: 1 })
    }

    /// The field with `q` elements; `q` must be a prime power.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, degree) = prime_power(q).ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?;
        Ok(FieldSpec::Finite { p, degree })
    }

    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::Finite { p, degree } => Some((p as u64).pow(degree)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Finite { .. } => write!(f, "F{}", self.order().unwrap()),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `rationals`, `F9`, `GF9`, `9`, or `prime 3`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix("prime")
            .or_else(|| t.strip_prefix("GF"))
            .or_else(|| t.strip_prefix('F'))
            .unwrap_or(t)
            .trim();
        let q: u64 = digits.parse().map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
        FieldSpec::with_order(q)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, r)` with `q = p^r`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > u32::MAX as u64 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p as u32, r))
}

#[derive(Debug)]
struct Tables {
    mul: Vec<u32>,
    inv: Vec<u32>,
}

/// The finite field `F_{p^r}`.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    q: u32,
    /// Monic irreducible modulus, low coefficient first, length `degree + 1`.
    modulus: Vec<u32>,
    tables: Option<Arc<Tables>>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.q)
    }
}

const TABLE_LIMIT: u32 = 256;

impl FiniteField {
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(p) || degree == 0 {
            return Err(Error::Parse(format!("no field of order {p}^{degree}")));
        }
        let q = (p as u64)
            .checked_pow(degree)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or(Error::Overflow("field order"))? as u32;
        let modulus = if degree == 1 { vec![0, 1] } else { least_irreducible(p, degree) };
        let mut field = FiniteField { p, degree, q, modulus, tables: None };
        if degree > 1 && q <= TABLE_LIMIT {
            let mut mul = vec![0; (q * q) as usize];
            let mut inv = vec![0; q as usize];
            for a in 0..q {
                for b in 0..q {
                    let c = field.poly_mul(a, b);
                    mul[(a * q + b) as usize] = c;
                    if c == 1 {
                        inv[a as usize] = b;
                    }
                }
            }
            field.tables = Some(Arc::new(Tables { mul, inv }));
        }
        Ok(field)
    }

    pub fn with_order(q: u64) -> Result<Self> {
        let (p, r) = prime_power(q).ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?;
        Self::new(p, r)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let r = self.degree as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce by the monic modulus from the top down
        for k in (r..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus.iter().enumerate().take(r) {
                let idx = k - r + j;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
            prod[k] = 0;
        }
        let digits: Vec<u32> = prod[..r].iter().map(|&d| d as u32).collect();
        self.encode(&digits)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

fn poly_rem(p: u32, num: &[u32], den: &[u32]) -> Vec<u32> {
    // den is monic
    let p64 = p as u64;
    let mut rem: Vec<u64> = num.iter().map(|&x| x as u64).collect();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let c = *rem.last().unwrap();
        let shift = rem.len() - 1 - dd;
        if c != 0 {
            for (j, &m) in den.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + (p64 - c) * m as u64) % p64;
            }
        }
        rem.pop();
    }
    rem.into_iter().map(|x| x as u32).collect()
}

fn monic_polys(p: u32, degree: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree);
    (0..count).map(move |mut code| {
        let mut coeffs = Vec::with_capacity(degree as usize + 1);
        for _ in 0..degree {
            coeffs.push((code % p as u64) as u32);
            code /= p as u64;
        }
        coeffs.push(1);
        coeffs
    })
}

fn least_irreducible(p: u32, degree: u32) -> Vec<u32> {
    monic_polys(p, degree)
        .find(|f| {
            (1..=degree / 2).all(|d| monic_polys(p, d).all(|g| poly_rem(p, f, &g).iter().any(|&c| c != 0)))
        })
        .expect("irreducible polynomials exist in every degree")
}

impl Field for FiniteField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn of_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        if self.degree == 1 {
            return ((*a as u64 + *b as u64) % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(*a), self.digits(*b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if self.degree == 1 {
            return ((*a as u64 * *b as u64) % self.p as u64) as u32;
        }
        match &self.tables {
            Some(t) => t.mul[(*a * self.q + *b) as usize],
            None => self.poly_mul(*a, *b),
        }
    }

    fn neg(&self, a: &u32) -> u32 {
        if self.degree == 1 {
            return (self.p - *a) % self.p;
        }
        let d: Vec<u32> = self.digits(*a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.encode(&d)
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.inv[*a as usize]),
            None => Some(self.pow(*a, self.q as u64 - 2)),
        }
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn order(&self) -> Option<u64> {
        Some(self.q as u64)
    }

    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.q).collect())
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Finite { p: self.p, degree: self.degree }
    }

    fn render(&self, a: &u32) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<u32> {
        let v: u32 = s.trim().parse().map_err(|_| Error::Parse(format!("bad element {s:?} of {self:?}")))?;
        if v >= self.q {
            return Err(Error::Parse(format!("element {v} out of range for {self:?}")));
        }
        Ok(v)
    }
}

/// The field of rational numbers, with arbitrary-precision entries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn of_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::Parse(format!("bad rational {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

/// Integer value of a rational, if it is one and fits an `i64`.
pub fn rational_to_i64(a: &BigRational) -> Option<i64> {
    a.is_integer().then(|| a.numer().to_i64()).flatten()
}

pub fn rational_is_nonnegative(a: &BigRational) -> bool {
    !a.is_negative()
}
