//! Exact multivariate polynomials with rational coefficients.
//!
//! Terms are kept in a map from exponent vector to coefficient, ordered by
//! total degree first and then lexicographically (x1 before x2 before ...),
//! which makes printing and serialization bit-stable. Zero coefficients are
//! never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{format_rat, mat_adjugate_inverse, Matrix, Rat};

/// An exponent vector, ordered by (total degree, then descending
/// lexicographic), so that iteration yields e.g. `x1*x2` before `x1^3`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            // within a degree, x1-heavy monomials come first
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial in variables x1..xn over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rat::one())
    }

    /// The variable `x_{var+1}` (zero-based index).
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        let mut p = Polynomial::zero(nvars);
        p.terms.insert(Monomial(exps), Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial::constant(self.nvars))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        assert_eq!(m.0.len(), self.nvars, "term arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exps), ca * cb);
            }
        }
        out
    }
}

/// Exact partial derivative with respect to variable `var` (zero-based).
pub fn differentiate(p: &Polynomial, var: usize) -> Result<Polynomial> {
    if var >= p.nvars {
        return Err(Error::IndexOutOfRange(format!(
            "variable {} of a polynomial in {} variables",
            var + 1,
            p.nvars
        )));
    }
    let mut out = Polynomial::zero(p.nvars);
    for (m, c) in &p.terms {
        let e = m.0[var];
        if e == 0 {
            continue;
        }
        let mut exps = m.0.clone();
        exps[var] -= 1;
        out.add_term(Monomial(exps), c * Rat::from_integer(e.into()));
    }
    Ok(out)
}

/// Square matrix of polynomials sharing one variable set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    n: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(n: usize, nvars: usize) -> Self {
        PolyMatrix {
            n,
            nvars,
            entries: vec![Polynomial::zero(nvars); n * n],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = PolyMatrix::zero(n, nvars);
        for i in 0..n {
            *m.at_mut(i, i) = Polynomial::one(nvars);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.entries[i * self.n + j]
    }

    /// Evaluates every entry at a point, yielding a rational matrix.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Matrix> {
        let mut m = Matrix::zero(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                *m.at_mut(i, j) = evaluate(self.at(i, j), point)?;
            }
        }
        Ok(m)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.n - 1, self.nvars);
        let mut oi = 0;
        for i in 0..self.n {
            if i == skip_row {
                continue;
            }
            let mut oj = 0;
            for j in 0..self.n {
                if j == skip_col {
                    continue;
                }
                *out.at_mut(oi, oj) = self.at(i, j).clone();
                oj += 1;
            }
            oi += 1;
        }
        out
    }
}

/// Matrix of second partials of `p`; symmetric by construction.
pub fn hessian(p: &Polynomial) -> PolyMatrix {
    let n = p.nvars;
    let grads: Vec<Polynomial> = (0..n)
        .map(|i| differentiate(p, i).expect("in range"))
        .collect();
    let mut h = PolyMatrix::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let second = differentiate(&grads[i], j).expect("in range");
            *h.at_mut(j, i) = second.clone();
            *h.at_mut(i, j) = second;
        }
    }
    h
}

/// Exact symbolic determinant by cofactor expansion along the first row,
/// skipping zero entries. Exponential in the size, intended for n <= 6.
pub fn poly_det(m: &PolyMatrix) -> Polynomial {
    match m.size() {
        0 => Polynomial::one(m.nvars()),
        1 => m.at(0, 0).clone(),
        _ => {
            let mut det = Polynomial::zero(m.nvars());
            for j in 0..m.size() {
                let e = m.at(0, j);
                if e.is_zero() {
                    continue;
                }
                let cof = poly_det(&m.minor(0, j));
                let term = e.mul(&cof);
                if j % 2 == 0 {
                    det = det.add(&term);
                } else {
                    det = det.sub(&term);
                }
            }
            det
        }
    }
}

/// Adjugate of a polynomial matrix by cofactors; `adj * m = det * I`.
pub fn poly_adjugate(m: &PolyMatrix) -> PolyMatrix {
    let n = m.size();
    if n == 1 {
        return PolyMatrix::identity(1, m.nvars());
    }
    let mut adj = PolyMatrix::zero(n, m.nvars());
    for i in 0..n {
        for j in 0..n {
            let mut c = poly_det(&m.minor(j, i));
            if (i + j) % 2 == 1 {
                c = c.neg();
            }
            *adj.at_mut(i, j) = c;
        }
    }
    adj
}

/// Exact evaluation at a rational point.
pub fn evaluate(p: &Polynomial, point: &[Rat]) -> Result<Rat> {
    if point.len() != p.nvars {
        return Err(Error::DimMismatch(format!(
            "evaluation point of length {} for a polynomial in {} variables",
            point.len(),
            p.nvars
        )));
    }
    // memoized powers per variable
    let max_deg: Vec<u32> = (0..p.nvars)
        .map(|v| p.terms.keys().map(|m| m.0[v]).max().unwrap_or(0))
        .collect();
    let powers: Vec<Vec<Rat>> = (0..p.nvars)
        .map(|v| {
            let mut pw = Vec::with_capacity(max_deg[v] as usize + 1);
            pw.push(Rat::one());
            for k in 1..=max_deg[v] as usize {
                let next = &pw[k - 1] * &point[v];
                pw.push(next);
            }
            pw
        })
        .collect();
    let mut acc = Rat::zero();
    for (m, c) in &p.terms {
        let mut t = c.clone();
        for (v, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t *= &powers[v][e as usize];
            }
        }
        acc += t;
    }
    Ok(acc)
}

/// Substitutes `x -> A x + b`, expanding `p(Ax + b)` exactly. `A` must have
/// `p.nvars()` rows (one replacement per original variable); the result is a
/// polynomial in `A.cols()` variables.
pub fn substitute_linear(p: &Polynomial, a: &Matrix, b: &[Rat]) -> Result<Polynomial> {
    if a.rows() != p.nvars || b.len() != p.nvars {
        return Err(Error::Shape(format!(
            "substitution into {} variables needs {} rows, got {}x{} and offset {}",
            p.nvars,
            p.nvars,
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let new_nvars = a.cols();
    // replacement polynomial for each original variable
    let repl: Vec<Polynomial> = (0..p.nvars)
        .map(|i| {
            let mut r = Polynomial::constant(new_nvars, b[i].clone());
            for j in 0..new_nvars {
                let c = a.at(i, j);
                if !c.is_zero() {
                    r = r.add(&Polynomial::var(new_nvars, j).scale(c));
                }
            }
            r
        })
        .collect();
    // memoized powers of each replacement
    let max_deg: Vec<u32> = (0..p.nvars)
        .map(|v| p.terms.keys().map(|m| m.0[v]).max().unwrap_or(0))
        .collect();
    let powers: Vec<Vec<Polynomial>> = (0..p.nvars)
        .map(|v| {
            let mut pw = Vec::with_capacity(max_deg[v] as usize + 1);
            pw.push(Polynomial::one(new_nvars));
            for k in 1..=max_deg[v] as usize {
                let next = pw[k - 1].mul(&repl[v]);
                pw.push(next);
            }
            pw
        })
        .collect();
    let mut out = Polynomial::zero(new_nvars);
    for (m, c) in &p.terms {
        let mut t = Polynomial::constant(new_nvars, c.clone());
        for (v, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t = t.mul(&powers[v][e as usize]);
            }
        }
        out = out.add(&t);
    }
    Ok(out)
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{}", v + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rat(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rat(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Checks `adj(M) * M = det(M) * I` at a sample point, used by tests.
pub fn adjugate_identity_holds_at(m: &PolyMatrix, point: &[Rat]) -> Result<bool> {
    let mval = m.evaluate(point)?;
    let det = evaluate(&poly_det(m), point)?;
    let (adj, det2) = mat_adjugate_inverse(&mval)?;
    Ok(det == det2 && adj.mul(&mval) == Matrix::identity(m.size()).scale(&det))
}
