//! Padé, Hermite, and coprime pairs, the expansion of v/u at infinity, the
//! Hankel matrix H_n(u,v) it induces, Barnett's factorization, and the
//! surjection sigma from coprime pairs onto nonsingular Toeplitz matrices
//! together with its fiber reconstruction.

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::poly::Poly;
use crate::structured::{bezoutian, DenseMatrix, HankelMatrix, ToeplitzMatrix};

/// A pair (u, v) with u monic of degree exactly n and deg v < n (v may be 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadePair {
    u: Poly,
    v: Poly,
    n: usize,
}

impl PadePair {
    pub fn new(u: Poly, v: Poly) -> Result<PadePair> {
        if u.field() != v.field() {
            return Err(Error::FieldMismatch);
        }
        let n = match u.degree() {
            Some(n) if n >= 1 && u.is_monic() => n,
            _ => return Err(Error::InvalidPair("u must be monic of degree >= 1".into())),
        };
        if v.degree() >= Some(n) {
            return Err(Error::InvalidPair(format!("deg v must be < {n}")));
        }
        Ok(PadePair { u, v, n })
    }

    pub fn u(&self) -> &Poly {
        &self.u
    }

    pub fn v(&self) -> &Poly {
        &self.v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        self.u.field()
    }

    /// The unique coefficients a_1, ..., a_terms of the expansion
    /// v(X)/u(X) = sum_{i>=1} a_i X^{-i}, by coefficient comparison:
    /// matching the coefficient of X^{n-t} in v = u * sum a_i X^{-i} gives
    ///
    ///   a_t = v_{n-t} - sum_{i=1}^{t-1} u_{n-t+i} a_i
    ///
    /// with v_j = 0 for j < 0 and u_j = 0 for j < 0 (u_n = 1 is the a_t term).
    pub fn expand(&self, terms: usize) -> Vec<Elt> {
        let f = self.field();
        let n = self.n;
        let mut a: Vec<Elt> = Vec::with_capacity(terms);
        for t in 1..=terms {
            let mut acc = if t <= n {
                self.v.coeff(n - t)
            } else {
                f.zero()
            };
            let start = t.saturating_sub(n).max(1);
            for i in start..t {
                acc = f.sub(acc, f.mul(self.u.coeff(n + i - t), a[i - 1]));
            }
            a.push(acc);
        }
        a
    }

    /// H_n(u, v): the Hankel matrix of the first 2n-1 expansion coefficients.
    pub fn hankel(&self) -> HankelMatrix {
        let a = self.expand(2 * self.n - 1);
        HankelMatrix::new(self.field(), self.n, a).expect("consistent dims")
    }
}

/// A Padé pair whose polynomials are coprime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermitePair {
    pair: PadePair,
}

impl HermitePair {
    pub fn new(u: Poly, v: Poly) -> Result<HermitePair> {
        let pair = PadePair::new(u, v)?;
        if !pair.u.gcd(&pair.v)?.is_one() {
            return Err(Error::InvalidPair("u and v must be coprime".into()));
        }
        Ok(HermitePair { pair })
    }

    pub fn as_pade(&self) -> &PadePair {
        &self.pair
    }

    pub fn u(&self) -> &Poly {
        &self.pair.u
    }

    pub fn v(&self) -> &Poly {
        &self.pair.v
    }

    pub fn n(&self) -> usize {
        self.pair.n
    }

    /// The inverse of [`CoprimePair::to_hermite`]: (u, v) -> (u, u + v).
    pub fn to_coprime(&self) -> CoprimePair {
        let g = self.pair.u.add(&self.pair.v).expect("same field");
        CoprimePair::new(self.pair.u.clone(), g).expect("coprimality is preserved")
    }
}

/// An ordered pair of coprime monic polynomials of the same degree n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoprimePair {
    f: Poly,
    g: Poly,
    n: usize,
}

impl CoprimePair {
    pub fn new(f: Poly, g: Poly) -> Result<CoprimePair> {
        if f.field() != g.field() {
            return Err(Error::FieldMismatch);
        }
        let n = match (f.degree(), g.degree()) {
            (Some(a), Some(b)) if a == b && a >= 1 => a,
            _ => {
                return Err(Error::InvalidPair(
                    "f and g must have equal degree >= 1".into(),
                ))
            }
        };
        if !f.is_monic() || !g.is_monic() {
            return Err(Error::InvalidPair("f and g must be monic".into()));
        }
        if !f.gcd(&g)?.is_one() {
            return Err(Error::InvalidPair("f and g must be coprime".into()));
        }
        Ok(CoprimePair { f, g, n })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        self.f.field()
    }

    /// (f, g) -> (f, g - f). Both are monic of degree n, so the difference
    /// drops degree, and common divisors are unchanged.
    pub fn to_hermite(&self) -> HermitePair {
        let v = self.g.sub(&self.f).expect("same field");
        HermitePair::new(self.f.clone(), v).expect("coprimality is preserved")
    }
}

/// Barnett's factorization: B_n(u,v) = B_n(u,1) * H_n(u,v) * B_n(u,1).
/// Returns the three matrices after checking the identity exactly; a
/// violation would be a library defect and surfaces as an internal error.
pub fn barnett_triple(pair: &PadePair) -> Result<(DenseMatrix, DenseMatrix, HankelMatrix)> {
    let n = pair.n();
    let b_uv = bezoutian(pair.u(), pair.v(), n)?;
    let b_u1 = bezoutian(pair.u(), &Poly::one(pair.field()), n)?;
    let h = pair.hankel();
    let product = b_u1.matmul(&h.to_dense())?.matmul(&b_u1)?;
    if product != b_uv {
        return Err(Error::Internal(format!(
            "Barnett factorization violated for u={}, v={}",
            pair.u(),
            pair.v()
        )));
    }
    Ok((b_uv, b_u1, h))
}

/// The surjection onto nonsingular Toeplitz matrices:
/// sigma(f, g) = H_n(f, g - f) * E.
pub fn sigma(pair: &CoprimePair) -> ToeplitzMatrix {
    pair.to_hermite().as_pade().hankel().to_toeplitz()
}

/// Reconstructs the unique Hermite pair (u, v) with H_n(u, v) = B and
/// expansion coefficient a_{2n} equal to `lambda`.
///
/// With b_1, ..., b_{2n-1} the vector of B and b_{2n} := lambda, u is monic
/// of degree n with lower coefficients solving
/// B (u_0, ..., u_{n-1})^T = -(b_{n+1}, ..., b_{2n})^T, and v comes from the
/// triangular system v_i = sum_{j=1}^{n-i} b_j u_{i+j}.
pub fn fiber_element(b: &HankelMatrix, lambda: Elt) -> Result<HermitePair> {
    let f = b.field().clone();
    let n = b.n();
    let a = b.a();
    let dense = b.to_dense();
    let rhs: Vec<Elt> = (0..n)
        .map(|i| {
            let value = if n + i < a.len() { a[n + i] } else { lambda };
            f.neg(value)
        })
        .collect();
    let mut u_coeffs = dense.solve(&rhs)?;
    u_coeffs.push(f.one());
    let u = Poly::from_elts(&f, u_coeffs);

    let mut v_coeffs = vec![f.zero(); n];
    for (i, slot) in v_coeffs.iter_mut().enumerate() {
        let mut acc = f.zero();
        for j in 1..=(n - i) {
            acc = f.add(acc, f.mul(a[j - 1], u.coeff(i + j)));
        }
        *slot = acc;
    }
    let v = Poly::from_elts(&f, v_coeffs);

    HermitePair::new(u, v)
        .map_err(|e| Error::Internal(format!("fiber element failed invariants: {e}")))
}

/// The full fiber over (the Toeplitz image of) a nonsingular Hankel matrix:
/// exactly q coprime pairs, one per lambda, in ascending lambda code order.
pub fn fiber(b: &HankelMatrix) -> Result<Vec<CoprimePair>> {
    if b.to_dense().det() == b.field().zero() {
        return Err(Error::SingularMatrix);
    }
    b.field()
        .elements()
        .map(|lambda| Ok(fiber_element(b, lambda)?.to_coprime()))
        .collect()
}
