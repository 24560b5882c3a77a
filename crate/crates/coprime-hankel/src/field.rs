//! Exact arithmetic in GF(p) and GF(p^k).
//!
//! Elements are stored as integer codes in `[0, q)`. For a prime field the
//! code is the residue itself; for GF(p^k) the code packs the polynomial-basis
//! coordinates as `sum c_i * p^i`, where the basis is taken modulo a monic
//! irreducible polynomial of degree k over GF(p). The encoding is a bijection,
//! so a whole field can be enumerated by walking the codes in order.

use crate::error::{Error, Result};
use std::fmt;

/// A field element, identified by its canonical integer code.
///
/// Codes are only handed out by [`Field`], so a valid `Elt` is always in
/// range for the field that produced it. Mixing elements across fields is a
/// caller bug; arithmetic asserts the code range as a cheap guard.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elt(u64);

impl Elt {
    pub fn code(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field GF(q), q = p^k, with validated parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible modulus, ascending coefficients, length k+1.
    /// `None` exactly when k == 1.
    modulus: Option<Vec<u64>>,
}

impl Field {
    /// Builds GF(p^k). For k > 1 a monic irreducible modulus of degree k is
    /// required; when `modulus` is `None` a built-in one is used if known.
    /// Supplied moduli are checked monic and irreducible by exhaustive
    /// divisor search, which is fine at the field sizes this crate targets.
    pub fn new(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ParamOutOfRange(
                "extension degree k must be >= 1".into(),
            ));
        }
        let q = checked_pow(p, k).ok_or(Error::FieldTooLarge { p, k })?;
        let modulus = match (k, modulus) {
            (1, None) => None,
            (1, Some(_)) => {
                return Err(Error::InvalidModulus(
                    "a prime field takes no modulus".into(),
                ))
            }
            (_, Some(m)) => {
                validate_modulus(p, k, m)?;
                Some(m.to_vec())
            }
            (_, None) => {
                let m = builtin_modulus(p, k).ok_or(Error::NoBuiltinModulus { p, k })?;
                Some(m.to_vec())
            }
        };
        Ok(Field { p, k, q, modulus })
    }

    /// Parses a field specification string: `q=p`, `q=p^k`, or
    /// `q=p^k:c0,c1,...,ck` (the `q=` prefix is optional).
    pub fn parse(s: &str) -> Result<Field> {
        let (p, k, modulus) = parse_field_string(s)?;
        Field::new(p, k, modulus.as_deref())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The field order q = p^k.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Ascending coefficients of the modulus polynomial (k > 1 only).
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn zero(&self) -> Elt {
        Elt(0)
    }

    pub fn one(&self) -> Elt {
        Elt(1)
    }

    /// Validates a code and wraps it as an element of this field.
    pub fn elt(&self, code: u64) -> Result<Elt> {
        if code < self.q {
            Ok(Elt(code))
        } else {
            Err(Error::CodeOutOfRange { code, q: self.q })
        }
    }

    /// All q elements in ascending code order.
    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..self.q).map(Elt)
    }

    fn check(&self, a: Elt) {
        assert!(
            a.0 < self.q,
            "element code {} out of range for q={}",
            a.0,
            self.q
        );
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        self.check(a);
        self.check(b);
        if self.k == 1 {
            Elt(addmod(a.0, b.0, self.p))
        } else {
            let mut da = self.digits(a.0);
            let db = self.digits(b.0);
            for (x, y) in da.iter_mut().zip(db) {
                *x = addmod(*x, y, self.p);
            }
            Elt(self.pack(&da))
        }
    }

    pub fn neg(&self, a: Elt) -> Elt {
        self.check(a);
        if self.k == 1 {
            Elt(if a.0 == 0 { 0 } else { self.p - a.0 })
        } else {
            let mut d = self.digits(a.0);
            for x in d.iter_mut() {
                *x = if *x == 0 { 0 } else { self.p - *x };
            }
            Elt(self.pack(&d))
        }
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.check(a);
        self.check(b);
        if self.k == 1 {
            return Elt(mulmod(a.0, b.0, self.p));
        }
        let da = self.digits(a.0);
        let db = self.digits(b.0);
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = addmod(prod[i + j], mulmod(x, y, self.p), self.p);
            }
        }
        let m = self.modulus.as_ref().expect("k > 1 has a modulus");
        // modulus is monic, so X^k = -(m_0 + m_1 X + ... + m_{k-1} X^{k-1})
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let t = mulmod(c, m[j], self.p);
                prod[i - k + j] = submod(prod[i - k + j], t, self.p);
            }
        }
        Elt(self.pack(&prod[..k]))
    }

    /// a^e by binary exponentiation; a^0 = 1 including for a = 0.
    pub fn pow(&self, a: Elt, mut e: u64) -> Elt {
        self.check(a);
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, computed as a^(q-2).
    pub fn inv(&self, a: Elt) -> Result<Elt> {
        self.check(a);
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.q - 2))
    }

    fn digits(&self, mut code: u64) -> Vec<u64> {
        let mut d = vec![0u64; self.k as usize];
        for x in d.iter_mut() {
            *x = code % self.p;
            code /= self.p;
        }
        d
    }

    fn pack(&self, digits: &[u64]) -> u64 {
        let mut code = 0u64;
        for &d in digits.iter().rev() {
            code = code * self.p + d;
        }
        code
    }
}

impl fmt::Display for Field {
    /// Canonical field string: `q=p`, or `q=p^k:c0,...,ck` with the modulus
    /// always spelled out so encodings round-trip exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.modulus {
            None => write!(f, "q={}", self.p),
            Some(m) => {
                write!(f, "q={}^{}:", self.p, self.k)?;
                for (i, c) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_field_string(s: &str) -> Result<(u64, u32, Option<Vec<u64>>)> {
    let s = s.trim();
    let body = s.strip_prefix("q=").unwrap_or(s);
    if body.is_empty() {
        return Err(Error::Parse("empty field specification".into()));
    }
    let (pk, modulus) = match body.split_once(':') {
        Some((pk, coeffs)) => {
            let m = coeffs
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad modulus coefficient `{t}`")))
                })
                .collect::<Result<Vec<u64>>>()?;
            (pk, Some(m))
        }
        None => (body, None),
    };
    let (p, k) = match pk.split_once('^') {
        Some((p, k)) => (
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad characteristic `{p}`")))?,
            k.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad extension degree `{k}`")))?,
        ),
        None => (
            pk.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad field order `{pk}`")))?,
            1,
        ),
    };
    Ok((p, k, modulus))
}

/// Parses a field string down to the order q = p^k, validating only that q is
/// a prime power. Used by counting operations, which need no field structure.
pub fn parse_q(s: &str) -> Result<u64> {
    let (p, k, _) = parse_field_string(s)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::ParamOutOfRange(
            "extension degree k must be >= 1".into(),
        ));
    }
    checked_pow(p, k).ok_or(Error::FieldTooLarge { p, k })
}

fn validate_modulus(p: u64, k: u32, m: &[u64]) -> Result<()> {
    let k = k as usize;
    if m.len() != k + 1 {
        return Err(Error::InvalidModulus(format!(
            "expected {} coefficients for degree {}, got {}",
            k + 1,
            k,
            m.len()
        )));
    }
    if m.iter().any(|&c| c >= p) {
        return Err(Error::InvalidModulus(format!(
            "coefficients must lie in [0, {p})"
        )));
    }
    if m[k] != 1 {
        return Err(Error::InvalidModulus("modulus must be monic".into()));
    }
    // Brute-force divisor search: a degree-k polynomial is reducible iff it
    // has a monic factor of degree between 1 and k/2.
    for d in 1..=(k / 2) {
        let count = checked_pow(p, d as u32).expect("small search space");
        for idx in 0..count {
            let mut g = zp_from_index(p, d, idx);
            g.push(1); // monic leading coefficient
            let (_, r) = zp_divrem(p, m, &g);
            if r.is_empty() {
                return Err(Error::ReducibleModulus {
                    p,
                    factor: format!("{g:?}"),
                });
            }
        }
    }
    Ok(())
}

/// Built-in monic irreducibles, ascending coefficients. Covers every
/// extension field of order at most 64 and a few handy larger ones.
fn builtin_modulus(p: u64, k: u32) -> Option<&'static [u64]> {
    let m: &'static [u64] = match (p, k) {
        (2, 2) => &[1, 1, 1],             // X^2+X+1
        (2, 3) => &[1, 1, 0, 1],          // X^3+X+1
        (2, 4) => &[1, 1, 0, 0, 1],       // X^4+X+1
        (2, 5) => &[1, 0, 1, 0, 0, 1],    // X^5+X^2+1
        (2, 6) => &[1, 1, 0, 0, 0, 0, 1], // X^6+X+1
        (3, 2) => &[1, 0, 1],             // X^2+1
        (3, 3) => &[1, 2, 0, 1],          // X^3+2X+1
        (3, 4) => &[2, 1, 0, 0, 1],       // X^4+X+2
        (5, 2) => &[1, 1, 1],             // X^2+X+1
        (5, 3) => &[1, 1, 0, 1],          // X^3+X+1
        (7, 2) => &[1, 0, 1],             // X^2+1
        (11, 2) => &[1, 0, 1],            // X^2+1
        (13, 2) => &[2, 0, 1],            // X^2+2
        _ => return None,
    };
    Some(m)
}

// ---- raw polynomials over Z_p (ascending u64 coefficients, no trailing zeros) ----
//
// These tiny helpers exist so that modulus validation does not depend on the
// general `Poly` type, which itself needs a constructed `Field`.

fn zp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn zp_from_index(p: u64, len: usize, mut idx: u64) -> Vec<u64> {
    let mut v = vec![0u64; len];
    for x in v.iter_mut() {
        *x = idx % p;
        idx /= p;
    }
    v
}

fn zp_divrem(p: u64, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut b = b.to_vec();
    zp_trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    zp_trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    let lead_inv = zp_inv(p, b[db]);
    for i in (db..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        let t = mulmod(c, lead_inv, p);
        q[i - db] = t;
        for j in 0..=db {
            r[i - db + j] = submod(r[i - db + j], mulmod(t, b[j], p), p);
        }
    }
    zp_trim(&mut q);
    zp_trim(&mut r);
    (q, r)
}

fn zp_inv(p: u64, a: u64) -> u64 {
    powmod(a, p - 2, p)
}

// ---- u64 modular arithmetic ----

fn addmod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

fn submod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

fn checked_pow(p: u64, k: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..k {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

/// Deterministic Miller-Rabin, valid for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Decomposes q as p^k with p prime, preferring the largest k (smallest p).
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    for k in (2..=63u32).rev() {
        if let Some(p) = iroot(q, k) {
            if checked_pow(p, k) == Some(q) && is_prime(p) {
                return Some((p, k));
            }
        }
    }
    if is_prime(q) {
        return Some((q, 1));
    }
    None
}

/// Floor of the integer k-th root of n, by binary search.
fn iroot(n: u64, k: u32) -> Option<u64> {
    if k == 0 {
        return None;
    }
    let mut lo = 1u64;
    let mut hi = 1u64 << (64 / k).min(63);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match checked_pow(mid, k) {
            Some(v) if v <= n => lo = mid,
            _ => hi = mid - 1,
        }
    }
    Some(lo)
}
