//! Dense univariate polynomials over GF(q).
//!
//! Coefficients are stored in ascending powers with no trailing zeros; the
//! zero polynomial is the empty vector. `degree()` returns `None` for zero,
//! which sorts below every `Some(d)`, so "deg v < n" admits v = 0 cleanly.

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elt>,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Elt) -> Poly {
        Poly::from_elts(field, vec![c])
    }

    /// The indeterminate X.
    pub fn x(field: &Field) -> Poly {
        Poly::from_elts(field, vec![field.zero(), field.one()])
    }

    pub fn monomial(field: &Field, c: Elt, deg: usize) -> Poly {
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        Poly::from_elts(field, coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_elts(field: &Field, mut coeffs: Vec<Elt>) -> Poly {
        while coeffs.last() == Some(&field.zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from ascending integer codes, validating each.
    pub fn from_codes(field: &Field, codes: &[u64]) -> Result<Poly> {
        let coeffs = codes
            .iter()
            .map(|&c| field.elt(c))
            .collect::<Result<Vec<Elt>>>()?;
        Ok(Poly::from_elts(field, coeffs))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Ascending coefficients, highest one nonzero (empty for zero).
    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    /// Coefficient of X^i, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> Elt {
        self.coeffs
            .get(i)
            .copied()
            .unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial; `None < Some(d)` for every d.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&self.field.one())
    }

    pub fn leading(&self) -> Option<Elt> {
        self.coeffs.last().copied()
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::from_elts(f, coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::from_elts(f, coeffs))
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&c| f.neg(c)).collect();
        Poly::from_elts(f, coeffs)
    }

    pub fn scale(&self, c: Elt) -> Poly {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&a| f.mul(a, c)).collect();
        Poly::from_elts(f, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(f));
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == f.zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::from_elts(f, coeffs))
    }

    /// Euclidean division: a = q*b + r with deg r < deg b.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(b)?;
        if b.is_zero() {
            return Err(Error::ZeroPolyDivisor);
        }
        let f = &self.field;
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - db];
        let lead_inv = f.inv(b.coeffs[db])?;
        for i in (db..r.len()).rev() {
            let c = r[i];
            if c == f.zero() {
                continue;
            }
            let t = f.mul(c, lead_inv);
            q[i - db] = t;
            for j in 0..=db {
                r[i - db + j] = f.sub(r[i - db + j], f.mul(t, b.coeffs[j]));
            }
        }
        Ok((Poly::from_elts(f, q), Poly::from_elts(f, r)))
    }

    /// Scales a nonzero polynomial so its leading coefficient is 1.
    pub fn make_monic(&self) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::ZeroGcd)?;
        Ok(self.scale(self.field.inv(lead)?))
    }

    /// Monic greatest common divisor, normalized monic at every Euclid step.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let b_monic = b.make_monic()?;
            let (_, r) = a.divrem(&b_monic)?;
            a = b_monic;
            b = r;
        }
        a.make_monic()
    }

    pub fn eval(&self, x: Elt) -> Elt {
        let f = &self.field;
        let mut acc = f.zero();
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }
}

/// True iff the monic GCD of the whole tuple is 1.
pub fn tuple_coprime(polys: &[Poly]) -> Result<bool> {
    if polys.is_empty() {
        return Err(Error::ParamOutOfRange("empty tuple".into()));
    }
    if polys.iter().all(Poly::is_zero) {
        return Err(Error::ZeroGcd);
    }
    let mut g = Poly::zero(polys[0].field());
    for p in polys {
        if g.is_zero() && p.is_zero() {
            continue;
        }
        g = g.gcd(p)?;
        if g.is_one() {
            return Ok(true);
        }
    }
    Ok(g.is_one())
}

/// The monic polynomial of degree n whose low coefficients spell `idx` in
/// base q: coefficient of X^i is digit i. Index 0 is X^n itself.
pub fn monic_poly_from_index(field: &Field, n: usize, mut idx: u64) -> Poly {
    let mut codes = Vec::with_capacity(n + 1);
    for _ in 0..n {
        codes.push(field.elt(idx % field.q()).expect("digit in range"));
        idx /= field.q();
    }
    assert_eq!(idx, 0, "index out of range for q^n monic polynomials");
    codes.push(field.one());
    Poly::from_elts(field, codes)
}

/// All q^n monic polynomials of degree exactly n, ordered by ascending packed
/// coefficient code (so GF(2), n=2 yields X^2, X^2+1, X^2+X, X^2+X+1).
pub fn monic_polys(field: &Field, n: usize) -> impl Iterator<Item = Poly> + '_ {
    let total = field
        .q()
        .checked_pow(n as u32)
        .expect("enumeration space must fit in u64");
    (0..total).map(move |idx| monic_poly_from_index(field, n, idx))
}

/// The polynomial of degree < `len` whose coefficients spell `idx` in base q.
pub fn poly_from_index(field: &Field, len: usize, mut idx: u64) -> Poly {
    let mut codes = Vec::with_capacity(len);
    for _ in 0..len {
        codes.push(field.elt(idx % field.q()).expect("digit in range"));
        idx /= field.q();
    }
    assert_eq!(idx, 0, "index out of range");
    Poly::from_elts(field, codes)
}

/// All q^(d+1) polynomials of degree at most d, zero included, ordered by
/// ascending packed coefficient code.
pub fn polys_deg_at_most(field: &Field, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let total = field
        .q()
        .checked_pow(d as u32 + 1)
        .expect("enumeration space must fit in u64");
    (0..total).map(move |idx| poly_from_index(field, d + 1, idx))
}

// ---- text format ----

impl Poly {
    /// Parses either the explicit form `coeffs:c0,c1,...` (ascending codes)
    /// or a symbolic sum of terms like `X^2+X+1` or `2*X^3+1`.
    pub fn parse(field: &Field, text: &str) -> Result<Poly> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("coeffs:") {
            let codes = rest
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad coefficient `{t}`")))
                })
                .collect::<Result<Vec<u64>>>()?;
            return Poly::from_codes(field, &codes);
        }
        parse_symbolic(field, text)
    }
}

fn parse_symbolic(field: &Field, text: &str) -> Result<Poly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut acc = Poly::zero(field);
    for term in compact.split('+') {
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in `{text}`")));
        }
        acc = acc.add(&parse_term(field, term)?)?;
    }
    Ok(acc)
}

fn parse_term(field: &Field, term: &str) -> Result<Poly> {
    let bad = || Error::Parse(format!("bad term `{term}`"));
    let (coeff_part, var_part) = match term.find(['X', 'x']) {
        None => (term, None),
        Some(i) => (&term[..i], Some(&term[i + 1..])),
    };
    let (coeff_str, had_star) = match coeff_part.strip_suffix('*') {
        Some(rest) => (rest, true),
        None => (coeff_part, false),
    };
    let coeff = if coeff_str.is_empty() {
        if had_star || var_part.is_none() {
            return Err(bad());
        }
        field.one()
    } else {
        let code = coeff_str.parse::<u64>().map_err(|_| bad())?;
        field.elt(code)?
    };
    let deg = match var_part {
        None => 0,
        Some("") => 1,
        Some(exp) => {
            let exp = exp.strip_prefix('^').ok_or_else(bad)?;
            exp.parse::<usize>().map_err(|_| bad())?
        }
    };
    Ok(Poly::monomial(field, coeff, deg))
}

impl fmt::Display for Poly {
    /// Canonical text form: ascending coefficient codes, `coeffs:0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coeffs:")?;
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
