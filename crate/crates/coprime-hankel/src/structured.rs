//! Hankel and Toeplitz matrices, exact dense linear algebra, and Bezoutians.
//!
//! A Hankel (resp. Toeplitz) matrix of order n is identified with its
//! (2n-1)-vector a = (a_1, ..., a_{2n-1}): the (i,j) entry is a_{i+j-1}
//! (resp. a_{n+i-j}, 1-based). The vector is the object; dense form is
//! materialized on demand.

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::poly::Poly;
use std::fmt;

/// Row-major dense matrix over GF(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Elt>,
}

impl DenseMatrix {
    pub fn new(field: &Field, rows: usize, cols: usize, entries: Vec<Elt>) -> Result<DenseMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::ParamOutOfRange(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(DenseMatrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_codes(
        field: &Field,
        rows: usize,
        cols: usize,
        codes: &[u64],
    ) -> Result<DenseMatrix> {
        let entries = codes
            .iter()
            .map(|&c| field.elt(c))
            .collect::<Result<Vec<Elt>>>()?;
        DenseMatrix::new(field, rows, cols, entries)
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// The exchange matrix E: ones on the antidiagonal, zero elsewhere.
    pub fn exchange(field: &Field, n: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, n - 1 - i, field.one());
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elt {
        assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elt) {
        assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = v;
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ParamOutOfRange(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = DenseMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == f.zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Leading principal d x d submatrix.
    pub fn leading(&self, d: usize) -> DenseMatrix {
        assert!(d <= self.rows && d <= self.cols);
        let mut out = DenseMatrix::zeros(&self.field, d, d);
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    /// Exact rank by Gaussian elimination with first-nonzero pivoting.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&i| m.get(i, col) != f.zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(rank, p);
            let inv = f.inv(m.get(rank, col)).expect("pivot is nonzero");
            for i in (rank + 1)..m.rows {
                let factor = f.mul(m.get(i, col), inv);
                if factor == f.zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(rank, j)));
                    m.set(i, j, v);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Determinant of a square matrix via elimination.
    pub fn det(&self) -> Elt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let pivot = (col..n).find(|&i| m.get(i, col) != f.zero());
            let Some(p) = pivot else { return f.zero() };
            if p != col {
                m.swap_rows(col, p);
                det = f.neg(det);
            }
            let d = m.get(col, col);
            det = f.mul(det, d);
            let inv = f.inv(d).expect("pivot is nonzero");
            for i in (col + 1)..n {
                let factor = f.mul(m.get(i, col), inv);
                if factor == f.zero() {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Solves the square system self * x = rhs; errors when singular.
    pub fn solve(&self, rhs: &[Elt]) -> Result<Vec<Elt>> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        assert_eq!(rhs.len(), self.rows);
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&i| m.get(i, col) != f.zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                m.swap_rows(col, pivot);
                b.swap(col, pivot);
            }
            let inv = f.inv(m.get(col, col))?;
            for j in col..n {
                m.set(col, j, f.mul(m.get(col, j), inv));
            }
            b[col] = f.mul(b[col], inv);
            for i in 0..n {
                if i == col {
                    continue;
                }
                let factor = m.get(i, col);
                if factor == f.zero() {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(col, j)));
                    m.set(i, j, v);
                }
                b[i] = f.sub(b[i], f.mul(factor, b[col]));
            }
        }
        Ok(b)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Display for DenseMatrix {
    /// Row-major, rows separated by `;`, codes separated by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

/// n x n Hankel matrix: entry (i,j) = a_{i+j-1} (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HankelMatrix {
    field: Field,
    n: usize,
    a: Vec<Elt>,
}

/// n x n Toeplitz matrix: entry (i,j) = a_{n+i-j} (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToeplitzMatrix {
    field: Field,
    n: usize,
    a: Vec<Elt>,
}

fn check_vector(n: usize, len: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ParamOutOfRange("matrix order must be >= 1".into()));
    }
    if len != 2 * n - 1 {
        return Err(Error::ParamOutOfRange(format!(
            "order {n} needs a vector of {} entries, got {len}",
            2 * n - 1
        )));
    }
    Ok(())
}

impl HankelMatrix {
    pub fn new(field: &Field, n: usize, a: Vec<Elt>) -> Result<HankelMatrix> {
        check_vector(n, a.len())?;
        Ok(HankelMatrix {
            field: field.clone(),
            n,
            a,
        })
    }

    pub fn from_codes(field: &Field, n: usize, codes: &[u64]) -> Result<HankelMatrix> {
        let a = codes
            .iter()
            .map(|&c| field.elt(c))
            .collect::<Result<Vec<Elt>>>()?;
        HankelMatrix::new(field, n, a)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The defining vector (a_1, ..., a_{2n-1}).
    pub fn a(&self) -> &[Elt] {
        &self.a
    }

    /// Entry at 0-based (i, j), equal to a_{i+j+1} in 1-based terms.
    pub fn get(&self, i: usize, j: usize) -> Elt {
        assert!(i < self.n && j < self.n);
        self.a[i + j]
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                entries.push(self.get(i, j));
            }
        }
        DenseMatrix::new(&self.field, self.n, self.n, entries).expect("consistent dims")
    }

    /// Right-multiplication by the exchange matrix E, which reverses columns;
    /// the defining vector carries over unchanged.
    pub fn to_toeplitz(&self) -> ToeplitzMatrix {
        ToeplitzMatrix {
            field: self.field.clone(),
            n: self.n,
            a: self.a.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.to_dense().rank()
    }

    /// The largest d with A_d nonsingular (0 when every leading principal
    /// minor vanishes). Each minor is evaluated independently.
    pub fn delta(&self) -> usize {
        let dense = self.to_dense();
        let zero = self.field.zero();
        (1..=self.n)
            .rev()
            .find(|&d| dense.leading(d).det() != zero)
            .unwrap_or(0)
    }

    pub fn parse(s: &str) -> Result<HankelMatrix> {
        let (field, n, a) = parse_structured(s, "H")?;
        HankelMatrix::new(&field, n, a)
    }
}

impl ToeplitzMatrix {
    pub fn new(field: &Field, n: usize, a: Vec<Elt>) -> Result<ToeplitzMatrix> {
        check_vector(n, a.len())?;
        Ok(ToeplitzMatrix {
            field: field.clone(),
            n,
            a,
        })
    }

    pub fn from_codes(field: &Field, n: usize, codes: &[u64]) -> Result<ToeplitzMatrix> {
        let a = codes
            .iter()
            .map(|&c| field.elt(c))
            .collect::<Result<Vec<Elt>>>()?;
        ToeplitzMatrix::new(field, n, a)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[Elt] {
        &self.a
    }

    /// Entry at 0-based (i, j), equal to a_{n+i-j} in 1-based terms.
    pub fn get(&self, i: usize, j: usize) -> Elt {
        assert!(i < self.n && j < self.n);
        self.a[self.n - 1 + i - j]
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                entries.push(self.get(i, j));
            }
        }
        DenseMatrix::new(&self.field, self.n, self.n, entries).expect("consistent dims")
    }

    /// Inverse of [`HankelMatrix::to_toeplitz`]; E squares to the identity.
    pub fn to_hankel(&self) -> HankelMatrix {
        HankelMatrix {
            field: self.field.clone(),
            n: self.n,
            a: self.a.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.to_dense().rank()
    }

    pub fn parse(s: &str) -> Result<ToeplitzMatrix> {
        let (field, n, a) = parse_structured(s, "T")?;
        ToeplitzMatrix::new(&field, n, a)
    }
}

impl fmt::Display for HankelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_structured(f, "H", &self.field, self.n, &self.a)
    }
}

impl fmt::Display for ToeplitzMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_structured(f, "T", &self.field, self.n, &self.a)
    }
}

fn write_structured(
    f: &mut fmt::Formatter<'_>,
    tag: &str,
    field: &Field,
    n: usize,
    a: &[Elt],
) -> fmt::Result {
    write!(f, "{tag}:{field};n={n};a=")?;
    for (i, c) in a.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

fn parse_structured(s: &str, tag: &str) -> Result<(Field, usize, Vec<Elt>)> {
    let s = s.trim();
    let body = s
        .strip_prefix(tag)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| Error::Parse(format!("expected `{tag}:` prefix in `{s}`")))?;
    let parts: Vec<&str> = body.split(';').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "expected `{tag}:q=..;n=..;a=..`, got `{s}`"
        )));
    }
    let field = Field::parse(parts[0])?;
    let n = parts[1]
        .strip_prefix("n=")
        .and_then(|v| v.parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("bad order in `{s}`")))?;
    let a = parts[2]
        .strip_prefix("a=")
        .ok_or_else(|| Error::Parse(format!("missing a= in `{s}`")))?
        .split(',')
        .map(|t| {
            let code = t
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad entry `{t}`")))?;
            field.elt(code)
        })
        .collect::<Result<Vec<Elt>>>()?;
    Ok((field, n, a))
}

/// The n-th order Bezoutian of u and v: the symmetric matrix B = (b_ij) with
///
///   (u(X)v(Y) - v(X)u(Y)) / (X - Y) = sum b_ij X^{i-1} Y^{j-1},
///
/// computed entrywise by the closed form
/// b_ij = sum_{s=1}^{min(i,j)} (v_{s-1} u_{i+j-s} - u_{s-1} v_{i+j-s}).
pub fn bezoutian(u: &Poly, v: &Poly, n: usize) -> Result<DenseMatrix> {
    if u.field() != v.field() {
        return Err(Error::FieldMismatch);
    }
    if n == 0 {
        return Err(Error::ParamOutOfRange(
            "Bezoutian order must be >= 1".into(),
        ));
    }
    for p in [u, v] {
        if let Some(d) = p.degree() {
            if d > n {
                return Err(Error::DegreeTooLarge {
                    degree: d,
                    order: n,
                });
            }
        }
    }
    let f = u.field();
    let mut out = DenseMatrix::zeros(f, n, n);
    for i in 1..=n {
        for j in 1..=n {
            let mut acc = f.zero();
            for s in 1..=i.min(j) {
                let t = f.sub(
                    f.mul(v.coeff(s - 1), u.coeff(i + j - s)),
                    f.mul(u.coeff(s - 1), v.coeff(i + j - s)),
                );
                acc = f.add(acc, t);
            }
            out.set(i - 1, j - 1, acc);
        }
    }
    Ok(out)
}

/// The Hankel matrix of order n whose vector spells `idx` in base q
/// (a_1 is the least significant digit).
pub fn hankel_from_index(field: &Field, n: usize, mut idx: u64) -> HankelMatrix {
    let q = field.q();
    let mut a = Vec::with_capacity(2 * n - 1);
    for _ in 0..(2 * n - 1) {
        a.push(field.elt(idx % q).expect("digit in range"));
        idx /= q;
    }
    assert_eq!(idx, 0, "index out of range for q^(2n-1) Hankel matrices");
    HankelMatrix::new(field, n, a).expect("consistent dims")
}

/// All q^(2n-1) Hankel matrices of order n in ascending index order. Any
/// contiguous index range can be generated independently via
/// [`hankel_from_index`], which is what the parallel censuses do.
pub fn hankel_matrices(field: &Field, n: usize) -> impl Iterator<Item = HankelMatrix> + '_ {
    let total = field
        .q()
        .checked_pow(2 * n as u32 - 1)
        .expect("enumeration space must fit in u64");
    (0..total).map(move |idx| hankel_from_index(field, n, idx))
}
