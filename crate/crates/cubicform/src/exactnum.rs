//! Exact rational scalars and dense rational linear algebra.
//!
//! Everything downstream works over arbitrary-precision fractions; there is
//! no floating point anywhere in the pipeline. The matrix routines are the
//! small deterministic kernel the rest of the crate leans on: determinants,
//! adjugates, null spaces and the signature of a symmetric form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand for `p/q` as a [`Rat`].
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for the integer `p` as a [`Rat`].
pub fn rint(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Parses `"p/q"` or `"p"` (with optional leading minus) into a rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    let denom: BigInt = den_str
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(numer, denom))
}

/// Formats a rational as `"p/q"`, or just `"p"` when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Splits a positive rational `t` into `c^2 * d` with `d` a squarefree
/// positive integer, returning `(c, d)`. Used when scaling diagonal
/// entries of a quadratic form towards +-1.
pub fn square_decompose(t: &Rat) -> (Rat, BigInt) {
    assert!(t.is_positive(), "square_decompose needs a positive input");
    // t = p/q = (pq)/q^2, so extract the square part of pq.
    let n = t.numer() * t.denom();
    let (s, d) = square_part(&n);
    (Rat::new(s, t.denom().clone()), d)
}

/// Writes `n = s^2 * d`, `d` as small as cheaply possible: trial division
/// by factors up to 10^3, then extraction of a perfect-square cofactor.
/// When `n` is a perfect square this yields `d = 1` exactly; otherwise `d`
/// is squarefree up to prime-square factors beyond the trial bound.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut rem = n.clone();
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    let mut p = BigInt::from(2);
    let bound = BigInt::from(1000);
    while &p * &p <= rem && p <= bound {
        let mut count = 0u32;
        while rem.is_multiple_of(&p) {
            rem /= &p;
            count += 1;
        }
        if count > 0 {
            s *= p.pow(count / 2);
            if count % 2 == 1 {
                d *= &p;
            }
        }
        p += 1;
    }
    if !rem.is_one() {
        let r = rem.sqrt();
        if &r * &r == rem {
            s *= r;
            rem = BigInt::one();
        }
    }
    d *= rem;
    (s, d)
}

/// Dense matrix of rationals, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format_rat(self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, cols: &[Vec<Rat>]) -> Self {
        let mut m = Matrix::zero(dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length mismatch");
            for i in 0..dim {
                *m.at_mut(i, j) = col[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, c: &Rat) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..other.cols {
                *m.at_mut(i, self.cols + j) = other.at(i, j).clone();
            }
        }
        m
    }

    /// Vertical concatenation, `self` on top.
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Reduced row echelon form; returns the reduced matrix and the pivot
    /// columns in increasing order. Pivot search takes the first nonzero
    /// entry at or below the current row, so the result is deterministic.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..a.cols {
            if pivot_row >= a.rows {
                break;
            }
            let found = (pivot_row..a.rows).find(|&r| !a.at(r, col).is_zero());
            let r = match found {
                Some(r) => r,
                None => continue,
            };
            if r != pivot_row {
                for j in 0..a.cols {
                    let tmp = a.at(r, j).clone();
                    *a.at_mut(r, j) = a.at(pivot_row, j).clone();
                    *a.at_mut(pivot_row, j) = tmp;
                }
            }
            let pivot = a.at(pivot_row, col).clone();
            for j in 0..a.cols {
                let v = a.at(pivot_row, j).clone() / &pivot;
                *a.at_mut(pivot_row, j) = v;
            }
            for i in 0..a.rows {
                if i == pivot_row || a.at(i, col).is_zero() {
                    continue;
                }
                let factor = a.at(i, col).clone();
                for j in 0..a.cols {
                    let sub = &factor * a.at(pivot_row, j);
                    *a.at_mut(i, j) -= sub;
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        (a, pivot_cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solves `self * x = rhs`; `None` when the system is not uniquely
    /// solvable (requires a square nonsingular matrix).
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        if !self.is_square() || rhs.len() != self.rows {
            return None;
        }
        let b = Matrix::from_columns(rhs.len(), &[rhs.to_vec()]);
        let (red, pivots) = self.hcat(&b).rref();
        if pivots.len() != self.rows || pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        Some((0..self.rows).map(|i| red.at(i, self.cols).clone()).collect())
    }

    /// True when `v` lies in the column span of `self`.
    pub fn contains(&self, v: &[Rat]) -> bool {
        let ext = self.hcat(&Matrix::from_columns(v.len(), &[v.to_vec()]));
        ext.rank() == self.rank()
    }

    /// Rescales every column to a primitive integer vector: denominators
    /// cleared, divided by the gcd, first nonzero entry positive. Keeps
    /// exact spans while containing coefficient growth.
    pub fn primitive_columns(&self) -> Matrix {
        let mut out = self.clone();
        for j in 0..out.cols {
            let mut lcm = BigInt::one();
            for i in 0..out.rows {
                lcm = lcm.lcm(out.at(i, j).denom());
            }
            let mut gcd = BigInt::zero();
            let ints: Vec<BigInt> = (0..out.rows)
                .map(|i| {
                    let e = out.at(i, j);
                    e.numer() * (&lcm / e.denom())
                })
                .collect();
            for v in &ints {
                gcd = gcd.gcd(v);
            }
            if gcd.is_zero() {
                continue;
            }
            let first_nonzero_neg = ints
                .iter()
                .find(|v| !v.is_zero())
                .map(|v| v.is_negative())
                .unwrap_or(false);
            let div = if first_nonzero_neg { -gcd } else { gcd };
            for (i, v) in ints.into_iter().enumerate() {
                *out.at_mut(i, j) = Rat::from_integer(v / &div);
            }
        }
        out
    }
}

/// Exact determinant of a square matrix by fraction-free (Bareiss)
/// elimination on the denominator-cleared integer matrix.
pub fn mat_det(m: &Matrix) -> Result<Rat> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rat::one());
    }
    // Clear denominators row by row so Bareiss works over the integers.
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    let mut scale = Rat::one();
    for i in 0..n {
        let mut lcm = BigInt::one();
        for j in 0..n {
            lcm = lcm.lcm(m.at(i, j).denom());
        }
        scale *= Rat::new(BigInt::one(), lcm.clone());
        a.push(
            (0..n)
                .map(|j| {
                    let e = m.at(i, j);
                    e.numer() * (&lcm / e.denom())
                })
                .collect(),
        );
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(Rat::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det_int = a[n - 1][n - 1].clone();
    let mut det = Rat::from_integer(det_int) * scale;
    if sign < 0 {
        det = -det;
    }
    Ok(det)
}

/// Adjugate and determinant of a square matrix; `adj * m = det * I` holds
/// exactly, also for singular inputs (where `det` is zero).
pub fn mat_adjugate_inverse(m: &Matrix) -> Result<(Matrix, Rat)> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "adjugate of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let det = mat_det(m)?;
    if n == 0 {
        return Ok((Matrix::zero(0, 0), det));
    }
    if n == 1 {
        return Ok((Matrix::identity(1), det));
    }
    let mut adj = Matrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            // cofactor C_{ji} lands at (i, j)
            let minor = submatrix(m, j, i);
            let mut c = mat_det(&minor)?;
            if (i + j) % 2 == 1 {
                c = -c;
            }
            *adj.at_mut(i, j) = c;
        }
    }
    Ok((adj, det))
}

fn submatrix(m: &Matrix, skip_row: usize, skip_col: usize) -> Matrix {
    let n = m.rows();
    let mut out = Matrix::zero(n - 1, n - 1);
    let mut oi = 0;
    for i in 0..n {
        if i == skip_row {
            continue;
        }
        let mut oj = 0;
        for j in 0..n {
            if j == skip_col {
                continue;
            }
            *out.at_mut(oi, oj) = m.at(i, j).clone();
            oj += 1;
        }
        oi += 1;
    }
    out
}

/// Exact inverse by Gauss-Jordan on `[M | I]`, `None` when singular.
pub fn mat_inverse(m: &Matrix) -> Result<Option<Matrix>> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "inverse of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let (red, pivots) = m.hcat(&Matrix::identity(n)).rref();
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return Ok(None);
    }
    let mut inv = Matrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            *inv.at_mut(i, j) = red.at(i, n + j).clone();
        }
    }
    Ok(Some(inv))
}

/// Deterministic basis of the right null space: one vector per free column
/// (in increasing column order), with entry 1 at the free column.
pub fn mat_kernel(m: &Matrix) -> Vec<Vec<Rat>> {
    let n = m.cols();
    if n == 0 {
        return Vec::new();
    }
    if m.rows() == 0 {
        return (0..n)
            .map(|j| {
                let mut v = vec![Rat::zero(); n];
                v[j] = Rat::one();
                v
            })
            .collect();
    }
    let (red, pivots) = m.rref();
    let pivot_set: std::collections::BTreeMap<usize, usize> = pivots
        .iter()
        .enumerate()
        .map(|(row, &col)| (col, row))
        .collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_set.contains_key(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (&pc, &pr) in &pivot_set {
            v[pc] = -red.at(pr, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Signature `(positives, negatives, zeros)` of a symmetric matrix via
/// congruence diagonalization. A zero diagonal pivot with a nonzero
/// off-diagonal partner is repaired by a row+column addition (hyperbolic
/// pair handling); Sylvester's law makes the counts well defined.
pub fn sym_signature(g: &Matrix) -> Result<(usize, usize, usize)> {
    if !g.is_symmetric() {
        return Err(Error::Shape("signature of a non-symmetric matrix".into()));
    }
    let n = g.rows();
    let mut a = g.clone();
    let mut pos = 0;
    let mut neg = 0;
    let mut zero = 0;
    for k in 0..n {
        if a.at(k, k).is_zero() {
            let partner = (k + 1..n).find(|&j| !a.at(k, j).is_zero());
            match partner {
                None => {
                    zero += 1;
                    continue;
                }
                Some(j) => {
                    if !a.at(j, j).is_zero() {
                        sym_swap(&mut a, k, j);
                    } else {
                        // e_k += e_j turns the (k,k) entry into 2*a[k][j]
                        sym_add(&mut a, k, j, &Rat::one());
                    }
                }
            }
        }
        let pivot = a.at(k, k).clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a.at(i, k).is_zero() {
                continue;
            }
            let factor = -(a.at(i, k).clone() / &pivot);
            sym_add(&mut a, i, k, &factor);
        }
    }
    Ok((pos, neg, zero))
}

/// Congruence transposition: swap basis vectors i and j.
fn sym_swap(a: &mut Matrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let tmp = a.at(i, c).clone();
        *a.at_mut(i, c) = a.at(j, c).clone();
        *a.at_mut(j, c) = tmp;
    }
    for r in 0..n {
        let tmp = a.at(r, i).clone();
        *a.at_mut(r, i) = a.at(r, j).clone();
        *a.at_mut(r, j) = tmp;
    }
}

/// Congruence shear: e_i += c * e_j, applied to rows and columns.
fn sym_add(a: &mut Matrix, i: usize, j: usize, c: &Rat) {
    let n = a.rows();
    for col in 0..n {
        let add = c * a.at(j, col);
        *a.at_mut(i, col) += add;
    }
    for row in 0..n {
        let add = c * a.at(row, j);
        *a.at_mut(row, i) += add;
    }
}

/// Antidiagonal matrix of ones, handy in tests and the built-in catalog.
pub fn antidiag_ones(n: usize) -> Matrix {
    let mut m = Matrix::zero(n, n);
    for i in 0..n {
        *m.at_mut(i, n - 1 - i) = Rat::one();
    }
    m
}
