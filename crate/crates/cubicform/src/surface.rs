//! Hypersurface generation and exact verification.
//!
//! A metrised algebra turns into the graph hypersurface `x_{n+1} = F(x)`
//! under one of three regimes:
//!
//! * `hatC`:   `F = sum_{k>=2} (-1)^k/k * gamma(x, x^{k-1})`, needs the
//!   Jordan identity;
//! * `nablaK`: `F = sum_{k>=2} (-2)^{k-2}/k! * gamma(x, x^{k-1})`, needs
//!   associativity;
//! * `nablaC`: `F = gamma(x,x)/2 - gamma(x,x^2)/3`, a cubic.
//!
//! For nilpotent algebras the series terminate on their own and `F` is a
//! polynomial. The governing fourth-order PDEs are verified as exact
//! rational identities, either at seeded sample points or symbolically
//! after clearing the Hessian determinant.

use num_traits::{One, Signed, Zero};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactnum::{mat_adjugate_inverse, rint, Matrix, Rat};
use crate::metrised::MetrisedAlgebra;
use crate::poly::{
    differentiate, evaluate, hessian, poly_adjugate, poly_det, Polynomial,
};
use crate::sample::PointSampler;

/// Parallelism regime a surface was generated under.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SurfaceMode {
    HatC,
    NablaK,
    NablaC,
}

impl SurfaceMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SurfaceMode::HatC => "hatC",
            SurfaceMode::NablaK => "nablaK",
            SurfaceMode::NablaC => "nablaC",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "hatC" => Ok(SurfaceMode::HatC),
            "nablaK" => Ok(SurfaceMode::NablaK),
            "nablaC" => Ok(SurfaceMode::NablaC),
            other => Err(Error::Parse(format!("unknown surface mode {other:?}"))),
        }
    }
}

/// A defining polynomial with zero constant and linear part (base point at
/// the origin, horizontal tangent plane), plus provenance.
#[derive(Clone, Debug)]
pub struct Surface {
    pub f: Polynomial,
    pub mode: SurfaceMode,
    pub source: Option<MetrisedAlgebra>,
}

impl Surface {
    /// Wraps an externally supplied polynomial, enforcing the base-point
    /// normalization F(0) = 0, F'(0) = 0.
    pub fn from_polynomial(f: Polynomial, mode: SurfaceMode) -> Result<Self> {
        if !f.constant_term().is_zero() {
            return Err(Error::InvalidInput(
                "surface polynomial must vanish at the origin".into(),
            ));
        }
        for v in 0..f.nvars() {
            let mut exps = vec![0u32; f.nvars()];
            exps[v] = 1;
            if !f.coeff(&exps).is_zero() {
                return Err(Error::InvalidInput(
                    "surface polynomial must have zero linear part".into(),
                ));
            }
        }
        Ok(Surface {
            f,
            mode,
            source: None,
        })
    }
}

/// Generates the defining polynomial of the hypersurface attached to a
/// metrised algebra. For non-nilpotent algebras the `hatC` and `nablaK`
/// series do not terminate and `max_degree` must be supplied.
pub fn generate_surface(
    m: &MetrisedAlgebra,
    mode: SurfaceMode,
    max_degree: Option<usize>,
) -> Result<Surface> {
    match mode {
        SurfaceMode::HatC => {
            if !m.algebra().is_jordan() {
                return Err(Error::Precondition(
                    "hatC surface needs the Jordan identity".into(),
                ));
            }
            if !m.is_trace_form() {
                return Err(Error::Precondition("hatC surface needs a trace form".into()));
            }
        }
        SurfaceMode::NablaK => {
            if !m.algebra().is_associative() {
                return Err(Error::Precondition(
                    "nablaK surface needs an associative algebra".into(),
                ));
            }
            if !m.is_trace_form() {
                return Err(Error::Precondition(
                    "nablaK surface needs a trace form".into(),
                ));
            }
        }
        SurfaceMode::NablaC => {
            if !m.is_trace_form() {
                return Err(Error::Precondition(
                    "nablaC surface needs a trace form".into(),
                ));
            }
        }
    }
    let n = m.dim();
    let limit = match mode {
        SurfaceMode::NablaC => Some(3),
        _ => {
            if m.algebra().is_nilpotent() {
                None // the powers vanish on their own
            } else {
                match max_degree {
                    Some(d) => Some(d),
                    None => {
                        return Err(Error::Precondition(
                            "non-nilpotent algebra: supply a truncation degree".into(),
                        ))
                    }
                }
            }
        }
    };

    let x: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    let mut f = Polynomial::zero(n);
    let mut power = x.clone(); // x^{k-1}, starting at k = 2
    let mut k = 2usize;
    let mut factorial = rint(2); // k! for the nablaK coefficients
    loop {
        if let Some(d) = limit {
            if k > d {
                break;
            }
        }
        if power.iter().all(|p| p.is_zero()) {
            break;
        }
        let coeff = match mode {
            SurfaceMode::HatC => {
                let sign = if k % 2 == 0 { rint(1) } else { rint(-1) };
                sign / rint(k as i64)
            }
            SurfaceMode::NablaK => {
                let mut c = Rat::one();
                for _ in 0..(k - 2) {
                    c *= rint(-2);
                }
                c / factorial.clone()
            }
            SurfaceMode::NablaC => {
                if k == 2 {
                    crate::exactnum::rat(1, 2)
                } else {
                    crate::exactnum::rat(-1, 3)
                }
            }
        };
        // gamma(x, x^{k-1}) as a polynomial
        let mut term = Polynomial::zero(n);
        for i in 0..n {
            for j in 0..n {
                let g = m.gamma().at(i, j);
                if !g.is_zero() {
                    term = term.add(&x[i].mul(&power[j]).scale(g));
                }
            }
        }
        f = f.add(&term.scale(&coeff));
        power = m.algebra().multiply_poly(&x, &power);
        k += 1;
        factorial *= rint(k as i64);
    }
    Ok(Surface {
        f,
        mode,
        source: Some(m.clone()),
    })
}

/// `det(hessian F)` and whether it is the constant +1 or -1.
pub fn is_improper_hypersphere(s: &Surface) -> (bool, Polynomial) {
    let det = poly_det(&hessian(&s.f));
    let ok = det.is_constant() && det.constant_term().abs().is_one();
    (ok, det)
}

/// Fully symmetric rank-4 tensor of rationals, stored dense.
#[derive(Clone, Debug)]
pub struct Tensor4 {
    n: usize,
    entries: Vec<Rat>,
}

impl Tensor4 {
    fn zero(n: usize) -> Self {
        Tensor4 {
            n,
            entries: vec![Rat::zero(); n * n * n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, a: usize, b: usize, c: usize, d: usize) -> &Rat {
        &self.entries[((a * self.n + b) * self.n + c) * self.n + d]
    }

    fn set_symmetric(&mut self, idx: [usize; 4], value: Rat) {
        let mut perm = idx;
        perm.sort_unstable();
        // write every distinct permutation of the sorted multi-index
        let mut seen = std::collections::BTreeSet::new();
        permutations(&perm, &mut |p| {
            if seen.insert(p) {
                let [a, b, c, d] = p;
                self.entries[((a * self.n + b) * self.n + c) * self.n + d] = value.clone();
            }
        });
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn max_abs(&self) -> Rat {
        self.entries
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

fn permutations(idx: &[usize; 4], f: &mut impl FnMut([usize; 4])) {
    let mut v = *idx;
    // Heap's algorithm, fixed size 4
    let mut c = [0usize; 4];
    f(v);
    let mut i = 0;
    while i < 4 {
        if c[i] < i {
            if i % 2 == 0 {
                v.swap(0, i);
            } else {
                v.swap(c[i], i);
            }
            f(v);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Derivative tables of a defining polynomial, evaluated at one point.
struct PointJet {
    n: usize,
    inv_hessian: Matrix,
    third: Vec<Rat>,  // indexed by sorted (i <= j <= k)
    fourth: Vec<Rat>, // indexed by sorted (i <= j <= k <= l)
}

fn sorted3(n: usize, i: usize, j: usize, k: usize) -> usize {
    let mut v = [i, j, k];
    v.sort_unstable();
    (v[0] * n + v[1]) * n + v[2]
}

fn sorted4(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    let mut v = [i, j, k, l];
    v.sort_unstable();
    ((v[0] * n + v[1]) * n + v[2]) * n + v[3]
}

impl PointJet {
    fn new(f: &Polynomial, point: &[Rat]) -> Result<Self> {
        let n = f.nvars();
        if point.len() != n {
            return Err(Error::DimMismatch(format!(
                "point of length {} for a surface in {} variables",
                point.len(),
                n
            )));
        }
        let h = hessian(f);
        let h_at = h.evaluate(point)?;
        let (adj, det) = mat_adjugate_inverse(&h_at)?;
        if det.is_zero() {
            return Err(Error::SingularHessian);
        }
        let inv_hessian = adj.scale(&(Rat::one() / det));
        let mut third = vec![Rat::zero(); n * n * n];
        let mut fourth = vec![Rat::zero(); n * n * n * n];
        for i in 0..n {
            for j in i..n {
                let hij = h.at(i, j);
                for k in j..n {
                    let t = differentiate(hij, k)?;
                    third[sorted3(n, i, j, k)] = evaluate(&t, point)?;
                    for l in k..n {
                        let q = differentiate(&t, l)?;
                        fourth[sorted4(n, i, j, k, l)] = evaluate(&q, point)?;
                    }
                }
            }
        }
        Ok(PointJet {
            n,
            inv_hessian,
            third,
            fourth,
        })
    }

    fn f3(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.third[sorted3(self.n, i, j, k)]
    }

    fn f4(&self, i: usize, j: usize, k: usize, l: usize) -> &Rat {
        &self.fourth[sorted4(self.n, i, j, k, l)]
    }

    /// `G[ab][cd] = sum_{rs} Finv^{rs} F_{abr} F_{cds}`, the contraction
    /// both residuals are built from.
    fn contraction(&self) -> Vec<Rat> {
        let n = self.n;
        let npairs = n * n;
        // w[ab][s] = sum_r Finv^{rs} F_{abr}
        let mut w = vec![Rat::zero(); npairs * n];
        for a in 0..n {
            for b in a..n {
                for s in 0..n {
                    let mut acc = Rat::zero();
                    for r in 0..n {
                        let inv = self.inv_hessian.at(r, s);
                        if !inv.is_zero() {
                            acc += inv * self.f3(a, b, r);
                        }
                    }
                    w[(a * n + b) * n + s] = acc.clone();
                    w[(b * n + a) * n + s] = acc;
                }
            }
        }
        let mut g = vec![Rat::zero(); npairs * npairs];
        for a in 0..n {
            for b in a..n {
                for c in 0..n {
                    for d in c..n {
                        let mut acc = Rat::zero();
                        for s in 0..n {
                            let ws = &w[(a * n + b) * n + s];
                            if !ws.is_zero() {
                                acc += ws * self.f3(c, d, s);
                            }
                        }
                        for (p, q) in [(a, b), (b, a)] {
                            for (r, t) in [(c, d), (d, c)] {
                                g[(p * n + q) * npairs + r * n + t] = acc.clone();
                            }
                        }
                    }
                }
            }
        }
        g
    }
}

/// Exact residual of `F_{,abcd} = 1/2 F^{,rs} (F_{,abr} F_{,cds} +
/// F_{,acr} F_{,bds} + F_{,adr} F_{,bcs})` at a point with non-singular
/// Hessian; the zero tensor certifies the condition there.
pub fn pde_residual_hatc(s: &Surface, point: &[Rat]) -> Result<Tensor4> {
    let jet = PointJet::new(&s.f, point)?;
    let n = jet.n;
    let g = jet.contraction();
    let npairs = n * n;
    let half = crate::exactnum::rat(1, 2);
    let mut out = Tensor4::zero(n);
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                for d in c..n {
                    let sum = &g[(a * n + b) * npairs + c * n + d]
                        + &g[(a * n + c) * npairs + b * n + d]
                        + &g[(a * n + d) * npairs + b * n + c];
                    let residual = jet.f4(a, b, c, d) - &half * sum;
                    out.set_symmetric([a, b, c, d], residual);
                }
            }
        }
    }
    Ok(out)
}

/// Exact residual of `F_{,abcd} = F_{,abr} F^{,rs} F_{,cds}` at a point
/// with non-singular Hessian.
pub fn pde_residual_nablak(s: &Surface, point: &[Rat]) -> Result<Tensor4> {
    let jet = PointJet::new(&s.f, point)?;
    let n = jet.n;
    let g = jet.contraction();
    let npairs = n * n;
    let mut out = Tensor4::zero(n);
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                for d in c..n {
                    // the left side is symmetric in all four indices, the
                    // right side only pairwise; any pairing serves
                    let residual = jet.f4(a, b, c, d) - &g[(a * n + b) * npairs + c * n + d];
                    out.set_symmetric([a, b, c, d], residual);
                }
            }
        }
    }
    Ok(out)
}

/// Symbolic form of the PDE check: multiplies through by `det F''` so both
/// sides are polynomials (the adjugate replaces the inverse), and compares
/// them as exact polynomial identities. Quantifies over the whole domain
/// at once but costs a polynomial determinant.
pub fn pde_holds_symbolic(s: &Surface, mode: SurfaceMode) -> Result<bool> {
    let n = s.f.nvars();
    let h = hessian(&s.f);
    let det = poly_det(&h);
    let adj = poly_adjugate(&h);
    let mut third = vec![Polynomial::zero(n); n * n * n];
    let mut fourth = vec![Polynomial::zero(n); n * n * n * n];
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let t = differentiate(h.at(i, j), k)?;
                for l in k..n {
                    fourth[sorted4(n, i, j, k, l)] = differentiate(&t, l)?;
                }
                third[sorted3(n, i, j, k)] = t;
            }
        }
    }
    let f3 = |i: usize, j: usize, k: usize| &third[sorted3(n, i, j, k)];
    let contraction = |a: usize, b: usize, c: usize, d: usize| -> Polynomial {
        let mut acc = Polynomial::zero(n);
        for r in 0..n {
            for ss in 0..n {
                let adj_rs = adj.at(r, ss);
                if adj_rs.is_zero() {
                    continue;
                }
                let prod = f3(a, b, r).mul(f3(c, d, ss));
                acc = acc.add(&prod.mul(adj_rs));
            }
        }
        acc
    };
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                for d in c..n {
                    let lhs = det.mul(&fourth[sorted4(n, a, b, c, d)]);
                    let rhs = match mode {
                        SurfaceMode::HatC => contraction(a, b, c, d)
                            .add(&contraction(a, c, b, d))
                            .add(&contraction(a, d, b, c))
                            .scale(&crate::exactnum::rat(1, 2)),
                        SurfaceMode::NablaK => contraction(a, b, c, d),
                        SurfaceMode::NablaC => {
                            return Err(Error::InvalidInput(
                                "symbolic check applies to the hatC and nablaK conditions".into(),
                            ))
                        }
                    };
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Reads the metrised algebra off a defining polynomial at a point with
/// non-singular Hessian: gamma is the Hessian there and
/// `K^d_{ab} = -1/2 sum_r F_{,abr} (F''^{-1})_{rd}`.
pub fn algebra_at_point(f: &Polynomial, point: &[Rat]) -> Result<MetrisedAlgebra> {
    let n = f.nvars();
    if point.len() != n {
        return Err(Error::DimMismatch(format!(
            "point of length {} for a polynomial in {} variables",
            point.len(),
            n
        )));
    }
    let h = hessian(f);
    let gamma = h.evaluate(point)?;
    let (adj, det) = mat_adjugate_inverse(&gamma)?;
    if det.is_zero() {
        return Err(Error::SingularHessian);
    }
    let inv = adj.scale(&(Rat::one() / det));
    let mut alg = Algebra::new(n);
    let minus_half = crate::exactnum::rat(-1, 2);
    for a in 0..n {
        for b in a..n {
            let habr: Vec<Rat> = (0..n)
                .map(|r| evaluate(&differentiate(h.at(a, b), r).expect("in range"), point))
                .collect::<Result<_>>()?;
            for d in 0..n {
                let mut acc = Rat::zero();
                for r in 0..n {
                    if !habr[r].is_zero() {
                        acc += &habr[r] * inv.at(r, d);
                    }
                }
                let k = &minus_half * acc;
                if !k.is_zero() {
                    alg.set_k(a, b, d, k);
                }
            }
        }
    }
    MetrisedAlgebra::new(alg, gamma)
}

/// The matrix `gamma (I + 2 L_x + U_x)^{-1}`, which is the second
/// fundamental form of the attached surface at the graph point over `x`.
/// Symmetric whenever gamma is a trace form.
pub fn dzeta_matrix_at(m: &MetrisedAlgebra, x: &[Rat]) -> Result<Matrix> {
    let (det, cert) = m.algebra().quasi_regular_certificate(x)?;
    if det.is_zero() {
        return Err(Error::NotQuasiRegular);
    }
    let (adj, det) = mat_adjugate_inverse(&cert)?;
    let inv = adj.scale(&(Rat::one() / det));
    Ok(m.gamma().mul(&inv))
}

/// Draws `count` points with non-singular Hessian from the seeded sampler,
/// resampling past singular ones.
pub fn sample_nonsingular_points(
    f: &Polynomial,
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<Rat>>> {
    let n = f.nvars();
    let h = hessian(f);
    let det = poly_det(&h);
    let mut sampler = PointSampler::new(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(Error::SingularHessian);
        }
        let p = sampler.point(n);
        if !evaluate(&det, &p)?.is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

/// Max-abs residual entries of the chosen PDE at seeded sample points,
/// paired with the points. An all-zero column verifies the condition.
pub fn verify_pde_at_points(
    s: &Surface,
    mode: SurfaceMode,
    count: usize,
    seed: u64,
) -> Result<Vec<(Vec<Rat>, Rat)>> {
    let points = sample_nonsingular_points(&s.f, count, seed)?;
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let residual = match mode {
            SurfaceMode::HatC => pde_residual_hatc(s, &p)?,
            SurfaceMode::NablaK => pde_residual_nablak(s, &p)?,
            SurfaceMode::NablaC => {
                return Err(Error::InvalidInput(
                    "point verification applies to the hatC and nablaK conditions".into(),
                ))
            }
        };
        out.push((p, residual.max_abs()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogKey};
    use crate::exactnum::{rat, rint};
    use crate::metrised::direct_sum;

    fn poly_from(nvars: usize, terms: &[(&[u32], Rat)]) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        for (exps, c) in terms {
            p.add_term(crate::poly::Monomial(exps.to_vec()), c.clone());
        }
        p
    }

    #[test]
    fn cayley2_surface() {
        let m = catalog::cayley(2).unwrap();
        let s = generate_surface(&m, SurfaceMode::HatC, None).unwrap();
        let expect = poly_from(2, &[(&[1, 1], rint(1)), (&[3, 0], rat(-1, 3))]);
        assert_eq!(s.f, expect);
        assert_eq!(s.f.to_string(), "x1*x2 - 1/3*x1^3");
    }

    #[test]
    fn cayley3_surfaces_both_modes() {
        let m = catalog::cayley(3).unwrap();
        let hatc = generate_surface(&m, SurfaceMode::HatC, None).unwrap();
        let expect_hatc = poly_from(
            3,
            &[
                (&[1, 0, 1], rint(1)),
                (&[0, 2, 0], rat(1, 2)),
                (&[2, 1, 0], rint(-1)),
                (&[4, 0, 0], rat(1, 4)),
            ],
        );
        assert_eq!(hatc.f, expect_hatc);

        let nablak = generate_surface(&m, SurfaceMode::NablaK, None).unwrap();
        let expect_nablak = poly_from(
            3,
            &[
                (&[1, 0, 1], rint(1)),
                (&[0, 2, 0], rat(1, 2)),
                (&[2, 1, 0], rint(-1)),
                (&[4, 0, 0], rat(1, 6)),
            ],
        );
        assert_eq!(nablak.f, expect_nablak);
    }

    #[test]
    fn algebras5_4_surface() {
        let m = catalog::builtin(&CatalogKey::plain("algebras5.4")).unwrap();
        let s = generate_surface(&m, SurfaceMode::HatC, None).unwrap();
        let expect = poly_from(
            5,
            &[
                (&[1, 0, 0, 0, 1], rint(1)),
                (&[0, 1, 0, 1, 0], rint(1)),
                (&[0, 0, 2, 0, 0], rat(1, 2)),
                (&[0, 0, 1, 1, 1], rint(-2)),
                (&[0, 0, 0, 2, 2], rint(1)),
            ],
        );
        assert_eq!(s.f, expect);
    }

    #[test]
    fn generation_preconditions() {
        // non-Jordan input rejected for hatC
        let mut bad = Algebra::new(2);
        bad.set_k(0, 0, 1, rint(1));
        bad.set_k(1, 1, 0, rint(1));
        let bad = MetrisedAlgebra::new(bad, crate::exactnum::antidiag_ones(2)).unwrap();
        assert!(generate_surface(&bad, SurfaceMode::HatC, None).is_err());

        // non-nilpotent input needs a truncation degree
        let mut idem = Algebra::new(1);
        idem.set_k(0, 0, 0, rint(1));
        let idem = MetrisedAlgebra::new(idem, Matrix::identity(1)).unwrap();
        assert!(generate_surface(&idem, SurfaceMode::HatC, None).is_err());
        let truncated = generate_surface(&idem, SurfaceMode::HatC, Some(3)).unwrap();
        // t^2/2 - t^3/3
        let expect = poly_from(1, &[(&[2], rat(1, 2)), (&[3], rat(-1, 3))]);
        assert_eq!(truncated.f, expect);

        // nablaC works without nilpotency and is cubic
        let cubic = generate_surface(&idem, SurfaceMode::NablaC, None).unwrap();
        assert_eq!(cubic.f, expect);
        assert!(cubic.f.degree() <= 3);
    }

    #[test]
    fn hypersphere_examples() {
        let m = catalog::cayley(2).unwrap();
        let s = generate_surface(&m, SurfaceMode::HatC, None).unwrap();
        let (ok, det) = is_improper_hypersphere(&s);
        assert!(ok);
        assert_eq!(det, Polynomial::constant(2, rint(-1)));

        // quadric in three variables
        let mut q = Polynomial::zero(3);
        for v in 0..3 {
            let x = Polynomial::var(3, v);
            q = q.add(&x.mul(&x).scale(&rat(1, 2)));
        }
        let s = Surface::from_polynomial(q, SurfaceMode::HatC).unwrap();
        let (ok, det) = is_improper_hypersphere(&s);
        assert!(ok);
        assert_eq!(det, Polynomial::one(3));

        // t^2/2 - t^3/3 is not an improper hypersphere
        let f = poly_from(1, &[(&[2], rat(1, 2)), (&[3], rat(-1, 3))]);
        let s = Surface::from_polynomial(f, SurfaceMode::NablaC).unwrap();
        let (ok, det) = is_improper_hypersphere(&s);
        assert!(!ok);
        let expect = Polynomial::one(1).sub(&Polynomial::var(1, 0).scale(&rint(2)));
        assert_eq!(det, expect);
    }

    #[test]
    fn surface_normalization_enforced() {
        let with_constant = poly_from(1, &[(&[0], rint(1)), (&[2], rint(1))]);
        assert!(Surface::from_polynomial(with_constant, SurfaceMode::HatC).is_err());
        let with_linear = poly_from(1, &[(&[1], rint(1)), (&[2], rint(1))]);
        assert!(Surface::from_polynomial(with_linear, SurfaceMode::HatC).is_err());
    }

    #[test]
    fn hatc_residual_zero_on_cayley3() {
        let m = catalog::cayley(3).unwrap();
        let s = generate_surface(&m, SurfaceMode::HatC, None).unwrap();
        let r = pde_residual_hatc(&s, &[rint(1), rint(1), rint(1)]).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn hatc_residual_zero_on_quadric_anywhere() {
        let mut q = Polynomial::zero(2);
        for v in 0..2 {
            let x = Polynomial::var(2, v);
            q = q.add(&x.mul(&x).scale(&rat(1, 2)));
        }
        let s = Surface::from_polynomial(q, SurfaceMode::HatC).unwrap();
        let r = pde_residual_hatc(&s, &[rat(7, 3), rint(-4)]).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn hatc_residual_nonzero_on_quartic() {
        // F = x^4 at x = 1: fourth derivative 24 against 72
        let f = poly_from(1, &[(&[4], rint(1))]);
        let s = Surface::from_polynomial(f, SurfaceMode::HatC).unwrap();
        let r = pde_residual_hatc(&s, &[rint(1)]).unwrap();
        assert_eq!(r.at(0, 0, 0, 0), &rint(24 - 72));
    }

    #[test]
    fn nablak_residual_examples() {
        let m = catalog::cayley(3).unwrap();
        let sib = generate_surface(&m, SurfaceMode::NablaK, None).unwrap();
        let pt = vec![rint(1), rint(1), rint(1)];
        assert!(pde_residual_nablak(&sib, &pt).unwrap().is_zero());

        let hatc = generate_surface(&m, SurfaceMode::HatC, None).unwrap();
        assert!(!pde_residual_nablak(&hatc, &pt).unwrap().is_zero());

        let mut q = Polynomial::zero(2);
        for v in 0..2 {
            let x = Polynomial::var(2, v);
            q = q.add(&x.mul(&x).scale(&rat(1, 2)));
        }
        let s = Surface::from_polynomial(q, SurfaceMode::NablaK).unwrap();
        assert!(pde_residual_nablak(&s, &[rint(2), rint(3)]).unwrap().is_zero());
    }

    #[test]
    fn residual_rejects_singular_hessian_points() {
        // det F'' = 1 - 2t vanishes at t = 1/2
        let f = poly_from(1, &[(&[2], rat(1, 2)), (&[3], rat(-1, 3))]);
        let s = Surface::from_polynomial(f, SurfaceMode::NablaC).unwrap();
        assert!(pde_residual_hatc(&s, &[rat(1, 2)]).is_err());
    }

    #[test]
    fn symbolic_pde_check() {
        let m = catalog::cayley(3).unwrap();
        let hatc = generate_surface(&m, SurfaceMode::HatC, None).unwrap();
        assert!(pde_holds_symbolic(&hatc, SurfaceMode::HatC).unwrap());
        assert!(!pde_holds_symbolic(&hatc, SurfaceMode::NablaK).unwrap());
        let sib = generate_surface(&m, SurfaceMode::NablaK, None).unwrap();
        assert!(pde_holds_symbolic(&sib, SurfaceMode::NablaK).unwrap());
    }

    #[test]
    fn algebra_at_point_examples() {
        // Cayley surface in two variables at the origin
        let m = catalog::cayley(2).unwrap();
        let s = generate_surface(&m, SurfaceMode::HatC, None).unwrap();
        let back = algebra_at_point(&s.f, &[rint(0), rint(0)]).unwrap();
        assert_eq!(&back, &m);

        // quadric recovers the zero algebra with identity gamma
        let mut q = Polynomial::zero(3);
        for v in 0..3 {
            let x = Polynomial::var(3, v);
            q = q.add(&x.mul(&x).scale(&rat(1, 2)));
        }
        let back = algebra_at_point(&q, &[rint(2), rint(-1), rat(1, 3)]).unwrap();
        assert!(back.algebra().triples().next().is_none());
        assert_eq!(back.gamma(), &Matrix::identity(3));

        // Cayley in three variables round-trips at the origin
        let m3 = catalog::cayley(3).unwrap();
        let s3 = generate_surface(&m3, SurfaceMode::HatC, None).unwrap();
        let back3 = algebra_at_point(&s3.f, &[rint(0), rint(0), rint(0)]).unwrap();
        assert_eq!(&back3, &m3);
    }

    #[test]
    fn nablac_recovers_structure_at_origin_and_nablak_everywhere() {
        let m = catalog::builtin(&CatalogKey::plain("algebras4.3")).unwrap();
        let cubic = generate_surface(&m, SurfaceMode::NablaC, None).unwrap();
        assert!(cubic.f.degree() <= 3);
        let back = algebra_at_point(&cubic.f, &vec![rint(0); 4]).unwrap();
        assert_eq!(back.algebra(), m.algebra());

        let sib = generate_surface(&m, SurfaceMode::NablaK, None).unwrap();
        let points = sample_nonsingular_points(&sib.f, 10, 99).unwrap();
        for p in points {
            let back = algebra_at_point(&sib.f, &p).unwrap();
            assert_eq!(back.algebra(), m.algebra(), "difference tensor moved");
        }
    }

    #[test]
    fn dzeta_examples() {
        let m = catalog::cayley(2).unwrap();
        // at zero the form is gamma itself
        let at_zero = dzeta_matrix_at(&m, &[rint(0), rint(0)]).unwrap();
        assert_eq!(&at_zero, m.gamma());

        // at (a, b) it matches the surface hessian there
        let s = generate_surface(&m, SurfaceMode::HatC, None).unwrap();
        let h = hessian(&s.f);
        let pt = vec![rat(3, 2), rat(-5, 7)];
        let dz = dzeta_matrix_at(&m, &pt).unwrap();
        assert_eq!(dz, h.evaluate(&pt).unwrap());
        assert!(dz.is_symmetric());

        // one-dimensional idempotent at t = 1: gamma / 4
        let mut idem = Algebra::new(1);
        idem.set_k(0, 0, 0, rint(1));
        let idem = MetrisedAlgebra::new(idem, Matrix::identity(1)).unwrap();
        let dz = dzeta_matrix_at(&idem, &[rint(1)]).unwrap();
        assert_eq!(dz.at(0, 0), &rat(1, 4));
        assert!(dzeta_matrix_at(&idem, &[rint(-1)]).is_err());
    }

    #[test]
    fn product_law_for_direct_sums() {
        let c2 = catalog::cayley(2).unwrap();
        let sum = direct_sum(&[c2.clone(), c2.clone()]).unwrap();
        let s = generate_surface(&sum, SurfaceMode::HatC, None).unwrap();
        // x1 x2 - x1^3/3 + x3 x4 - x3^3/3
        let expect = poly_from(
            4,
            &[
                (&[1, 1, 0, 0], rint(1)),
                (&[3, 0, 0, 0], rat(-1, 3)),
                (&[0, 0, 1, 1], rint(1)),
                (&[0, 0, 3, 0], rat(-1, 3)),
            ],
        );
        assert_eq!(s.f, expect);
    }

    #[test]
    fn hatc_and_nablak_coincide_only_in_dimension_two() {
        let c2 = catalog::cayley(2).unwrap();
        let a = generate_surface(&c2, SurfaceMode::HatC, None).unwrap();
        let b = generate_surface(&c2, SurfaceMode::NablaK, None).unwrap();
        assert_eq!(a.f, b.f);
        let pts = sample_nonsingular_points(&a.f, 5, 3).unwrap();
        for p in &pts {
            assert!(pde_residual_nablak(&a, p).unwrap().is_zero());
        }

        let c3 = catalog::cayley(3).unwrap();
        let a3 = generate_surface(&c3, SurfaceMode::HatC, None).unwrap();
        let b3 = generate_surface(&c3, SurfaceMode::NablaK, None).unwrap();
        assert_ne!(a3.f, b3.f);
    }

    use crate::exactnum::Matrix;
}
