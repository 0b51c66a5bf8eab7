//! Algebras paired with a non-degenerate compatible bilinear form.
//!
//! The form gamma is a trace form when the lowered structure tensor
//! `T_{abd} = sum_r gamma_{dr} K^r_{ab}` is totally symmetric; equivalently
//! every multiplication operator is gamma-self-adjoint. This module
//! validates that and the other axioms, builds direct sums, scans for
//! orthogonal splits, and computes the skew-derivation dimension used as an
//! isomorphism invariant.

use num_traits::Zero;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::exactnum::{mat_det, mat_kernel, sym_signature, Matrix, Rat};

/// An algebra together with a symmetric non-degenerate bilinear form,
/// both checked at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetrisedAlgebra {
    algebra: Algebra,
    gamma: Matrix,
}

impl MetrisedAlgebra {
    pub fn new(algebra: Algebra, gamma: Matrix) -> Result<Self> {
        if gamma.rows() != algebra.dim() || gamma.cols() != algebra.dim() {
            return Err(Error::Shape(format!(
                "gamma is {}x{} for a {}-dimensional algebra",
                gamma.rows(),
                gamma.cols(),
                algebra.dim()
            )));
        }
        if !gamma.is_symmetric() {
            return Err(Error::Shape("gamma must be symmetric".into()));
        }
        if mat_det(&gamma)?.is_zero() {
            return Err(Error::DegenerateForm);
        }
        Ok(MetrisedAlgebra { algebra, gamma })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn gamma(&self) -> &Matrix {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Evaluates `gamma(u, v)`.
    pub fn pair(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let gv = self.gamma.mul_vec(v);
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    }

    /// True iff the lowered tensor `T_{abd} = sum_r gamma_{dr} K^r_{ab}` is
    /// totally symmetric in all three indices.
    pub fn is_trace_form(&self) -> bool {
        let n = self.dim();
        let t = |a: usize, b: usize, d: usize| -> Rat {
            (0..n)
                .map(|r| self.gamma.at(d, r) * self.algebra.k(a, b, r))
                .sum()
        };
        // T is symmetric in (a, b) by construction; checking the (b, d)
        // swap on all triples covers full symmetry.
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    if t(a, b, d) != t(a, d, b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Change of basis: the columns of `basis` are the new basis vectors.
    /// Structure constants conjugate accordingly and gamma pulls back as
    /// `B^T gamma B`. All pairwise products are solved against the basis
    /// in one elimination.
    pub fn transform(&self, basis: &Matrix) -> Result<MetrisedAlgebra> {
        let n = self.dim();
        if basis.rows() != n || basis.cols() != n {
            return Err(Error::Shape("basis change must be square of matching size".into()));
        }
        let cols = basis.columns();
        let mut prods: Vec<Vec<Rat>> = Vec::with_capacity(n * (n + 1) / 2);
        for a in 0..n {
            for b in a..n {
                prods.push(self.algebra.multiply(&cols[a], &cols[b])?);
            }
        }
        let rhs = Matrix::from_columns(n, &prods);
        let (red, pivots) = basis.hcat(&rhs).rref();
        if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
            return Err(Error::InvalidInput("basis change matrix is singular".into()));
        }
        let mut alg = Algebra::new(n);
        let mut idx = 0;
        for a in 0..n {
            for b in a..n {
                for d in 0..n {
                    let c = red.at(d, n + idx);
                    if !c.is_zero() {
                        alg.set_k(a, b, d, c.clone());
                    }
                }
                idx += 1;
            }
        }
        let gamma = basis.transpose().mul(&self.gamma).mul(basis);
        MetrisedAlgebra::new(alg, gamma)
    }

    /// Exchange of two basis vectors: cheap special case of
    /// [`MetrisedAlgebra::transform`] by the transposition matrix.
    pub fn swap_basis(&self, i: usize, j: usize) -> MetrisedAlgebra {
        let n = self.dim();
        assert!(i < n && j < n);
        let remap = |x: usize| {
            if x == i {
                j
            } else if x == j {
                i
            } else {
                x
            }
        };
        let mut alg = Algebra::new(n);
        for (&(a, b, d), v) in self.algebra.triples() {
            alg.set_k(remap(a), remap(b), remap(d), v.clone());
        }
        let mut gamma = self.gamma.clone();
        for c in 0..n {
            let tmp = gamma.at(i, c).clone();
            *gamma.at_mut(i, c) = gamma.at(j, c).clone();
            *gamma.at_mut(j, c) = tmp;
        }
        for r in 0..n {
            let tmp = gamma.at(r, i).clone();
            *gamma.at_mut(r, i) = gamma.at(r, j).clone();
            *gamma.at_mut(r, j) = tmp;
        }
        MetrisedAlgebra {
            algebra: alg,
            gamma,
        }
    }
}

/// Block-diagonal direct sum; the summand bases are laid out one after the
/// other and stay mutually orthogonal.
pub fn direct_sum(parts: &[MetrisedAlgebra]) -> Result<MetrisedAlgebra> {
    if parts.is_empty() {
        return Err(Error::InvalidInput("direct sum of zero summands".into()));
    }
    let total: usize = parts.iter().map(|m| m.dim()).sum();
    let mut alg = Algebra::new(total);
    let mut gamma = Matrix::zero(total, total);
    let mut offset = 0;
    for part in parts {
        let n = part.dim();
        for (&(a, b, d), k) in part.algebra().triples() {
            alg.set_k(offset + a, offset + b, offset + d, k.clone());
        }
        for i in 0..n {
            for j in 0..n {
                *gamma.at_mut(offset + i, offset + j) = part.gamma().at(i, j).clone();
            }
        }
        offset += n;
    }
    MetrisedAlgebra::new(alg, gamma)
}

/// Which sufficient criterion produced a split.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SplitCriterion {
    /// Orthogonal prefix in the semi-canonical basis.
    CanonicalPrefix,
    /// Annihilator vector with nonzero gamma-square.
    AnnihilatorWitness,
    /// Orthogonal prefix in the basis the input came in.
    InputPrefix,
}

/// Result of the reducibility scan. `found = false` means no split was
/// detected by the sufficient criteria, not a proof of irreducibility.
/// The blocks are index sets (zero-based) in the basis given by `basis`
/// when present, otherwise in the input basis.
#[derive(Clone, Debug)]
pub struct SplitReport {
    pub found: bool,
    pub block_a: Vec<usize>,
    pub block_b: Vec<usize>,
    pub witness: Option<Element>,
    pub criterion: Option<SplitCriterion>,
    pub basis: Option<Matrix>,
}

impl SplitReport {
    fn none() -> Self {
        SplitReport {
            found: false,
            block_a: Vec::new(),
            block_b: Vec::new(),
            witness: None,
            criterion: None,
            basis: None,
        }
    }
}

/// Scans for an orthogonal ideal split with three ordered sufficient
/// tests: a prefix split in the semi-canonical basis (when the algebra is
/// a nilpotent metrised Jordan algebra), an annihilator vector `v` with
/// `gamma(v, v) != 0` (then `span{v}` and its orthogonal complement are
/// ideals), and finally a prefix split in the input basis, which catches
/// direct sums presented block-diagonally.
pub fn orthogonal_split_scan(m: &MetrisedAlgebra) -> SplitReport {
    // (a) prefix split after semi-canonicalization
    if m.algebra().is_jordan() && m.is_trace_form() && m.algebra().is_nilpotent() {
        if let Ok(canon) = crate::canonical::semi_canonicalize(m) {
            if let Some((a, b)) = prefix_split(&canon.result) {
                return SplitReport {
                    found: true,
                    block_a: a,
                    block_b: b,
                    witness: None,
                    criterion: Some(SplitCriterion::CanonicalPrefix),
                    basis: Some(canon.basis_change.clone()),
                };
            }
        }
    }
    // (b) annihilator witness
    if let Some(v) = annihilator_witness(m) {
        let support: Vec<usize> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect();
        if support.len() == 1 {
            let i = support[0];
            let rest: Vec<usize> = (0..m.dim()).filter(|&j| j != i).collect();
            return SplitReport {
                found: true,
                block_a: vec![i],
                block_b: rest,
                witness: Some(v),
                criterion: Some(SplitCriterion::AnnihilatorWitness),
                basis: None,
            };
        }
        // adapted basis [v | basis of v-perp]
        let n = m.dim();
        let vt_gamma = Matrix::from_rows(vec![m.gamma().mul_vec(&v)]);
        let perp = mat_kernel(&vt_gamma);
        let mut cols = vec![v.clone()];
        cols.extend(perp);
        let basis = Matrix::from_columns(n, &cols);
        return SplitReport {
            found: true,
            block_a: vec![0],
            block_b: (1..n).collect(),
            witness: Some(v),
            criterion: Some(SplitCriterion::AnnihilatorWitness),
            basis: Some(basis),
        };
    }
    // (c) prefix split in the given basis
    if let Some((a, b)) = prefix_split(m) {
        return SplitReport {
            found: true,
            block_a: a,
            block_b: b,
            witness: None,
            criterion: Some(SplitCriterion::InputPrefix),
            basis: None,
        };
    }
    SplitReport::none()
}

/// First k with `span{e_1..e_k}` gamma-orthogonal to the rest and both
/// coordinate blocks ideals, if any. The ideal condition means every
/// nonzero `K^d_{ab}` has a, b, d on the same side of the cut.
fn prefix_split(m: &MetrisedAlgebra) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = m.dim();
    for k in 1..n {
        let orthogonal = (0..k).all(|i| (k..n).all(|j| m.gamma().at(i, j).is_zero()));
        if !orthogonal {
            continue;
        }
        let ideals = m
            .algebra()
            .triples()
            .all(|(&(a, b, d), v)| v.is_zero() || (a < k && b < k && d < k) || (a >= k && b >= k && d >= k));
        if ideals {
            return Some(((0..k).collect(), (k..n).collect()));
        }
    }
    None
}

/// A vector annihilated by the whole algebra with nonzero gamma-square,
/// taken deterministically from the annihilator basis.
fn annihilator_witness(m: &MetrisedAlgebra) -> Option<Element> {
    let n = m.dim();
    let mut stacked: Option<Matrix> = None;
    for b in 0..n {
        let lb = m
            .algebra()
            .l_operator(&m.algebra().basis_element(b))
            .expect("basis element");
        stacked = Some(match stacked {
            None => lb,
            Some(s) => s.vcat(&lb),
        });
    }
    let ann = mat_kernel(&stacked?);
    for v in &ann {
        if !m.pair(v, v).is_zero() {
            return Some(v.clone());
        }
    }
    for i in 0..ann.len() {
        for j in (i + 1)..ann.len() {
            let sum: Vec<Rat> = ann[i].iter().zip(&ann[j]).map(|(a, b)| a + b).collect();
            if !m.pair(&sum, &sum).is_zero() {
                return Some(sum);
            }
        }
    }
    None
}

/// Dimension of the space of gamma-skew derivations: linear maps `D` with
/// `D(x*y) = Dx*y + x*Dy` and `gamma(Dx, y) + gamma(x, Dy) = 0` on all
/// basis pairs. This is the Lie algebra dimension of the metrised
/// automorphism group.
pub fn skew_derivation_dim(m: &MetrisedAlgebra) -> usize {
    let n = m.dim();
    if n == 0 {
        return 0;
    }
    let l_ops: Vec<Matrix> = (0..n)
        .map(|i| {
            m.algebra()
                .l_operator(&m.algebra().basis_element(i))
                .expect("basis element")
        })
        .collect();
    // unknowns D_{r,c} vectorized as r*n + c
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in 0..n {
        for j in i..n {
            for delta in 0..n {
                let mut row = vec![Rat::zero(); n * n];
                // D applied to e_i * e_j
                for dp in 0..n {
                    let k = m.algebra().k(i, j, dp);
                    if !k.is_zero() {
                        row[delta * n + dp] += k;
                    }
                }
                // minus L_{e_j} D e_i and L_{e_i} D e_j
                for alpha in 0..n {
                    let c1 = l_ops[j].at(delta, alpha);
                    if !c1.is_zero() {
                        row[alpha * n + i] -= c1;
                    }
                    let c2 = l_ops[i].at(delta, alpha);
                    if !c2.is_zero() {
                        row[alpha * n + j] -= c2;
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            let mut row = vec![Rat::zero(); n * n];
            for delta in 0..n {
                let g1 = m.gamma().at(delta, j);
                if !g1.is_zero() {
                    row[delta * n + i] += g1;
                }
                let g2 = m.gamma().at(i, delta);
                if !g2.is_zero() {
                    row[delta * n + j] += g2;
                }
            }
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return n * n;
    }
    mat_kernel(&Matrix::from_rows(rows)).len()
}

/// Aggregated axiom report for one metrised algebra.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub jordan: bool,
    pub associative: bool,
    pub trace_form: bool,
    pub nilpotent: bool,
    /// (positives, negatives) of gamma; the mirrored pair describes -gamma.
    pub signature: (usize, usize),
    pub det_gamma: Rat,
    pub failures: Vec<String>,
}

impl ValidationReport {
    /// The defining axioms of a metrised Jordan algebra.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the axioms at once. Nondegeneracy of gamma is already
/// guaranteed by construction; `failures` names the defining axioms
/// (Jordan identity, trace form) that do not hold. The reducibility scan
/// is separate, see [`orthogonal_split_scan`].
pub fn validate(m: &MetrisedAlgebra) -> ValidationReport {
    let jordan = m.algebra().is_jordan();
    let associative = m.algebra().is_associative();
    let trace_form = m.is_trace_form();
    let nilpotent = m.algebra().is_nilpotent();
    let (pos, neg, _) = sym_signature(m.gamma()).expect("gamma is symmetric by construction");
    let det_gamma = mat_det(m.gamma()).expect("gamma is square");
    let mut failures = Vec::new();
    if !jordan {
        failures.push("jordan identity fails".to_string());
    }
    if !trace_form {
        failures.push("gamma is not a trace form".to_string());
    }
    ValidationReport {
        jordan,
        associative,
        trace_form,
        nilpotent,
        signature: (pos, neg),
        det_gamma,
        failures,
    }
}

/// Exact evaluation of the irreducibility dimension bounds.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub n: usize,
    /// min of the two signature counts.
    pub k: usize,
    /// `k(k+5)/2`.
    pub dim_bound: usize,
    /// `n <= k(k+5)/2`; failing it predicts reducibility.
    pub dim_ok: bool,
    /// Number of 2-blocks in the semi-canonical partition, when one could
    /// be computed.
    pub two_blocks: Option<usize>,
    /// `(2m+3)^2 >= 9 + 8*max(k, n-k)`; failing it predicts reducibility.
    pub block_ok: Option<bool>,
}

/// Evaluates `n <= k(k+5)/2` and the 2-block threshold
/// `m >= -3/2 + sqrt(9/4 + 2 max(k, n-k))`, the latter exactly as
/// `(2m+3)^2 >= 9 + 8 max(k, n-k)`.
pub fn dimension_bound_check(m: &MetrisedAlgebra) -> Result<BoundsReport> {
    let n = m.dim();
    if n < 2 {
        return Err(Error::Precondition(
            "dimension bounds need dimension at least 2".into(),
        ));
    }
    if !m.algebra().is_nilpotent() {
        return Err(Error::Precondition(
            "dimension bounds apply to nilpotent algebras".into(),
        ));
    }
    let (pos, neg, _) = sym_signature(m.gamma())?;
    let k = pos.min(neg);
    let dim_bound = k * (k + 5) / 2;
    let dim_ok = n <= dim_bound;
    let (two_blocks, block_ok) =
        if m.algebra().is_jordan() && m.is_trace_form() {
            let canon = crate::canonical::semi_canonicalize(m)?;
            let mm = canon
                .partition
                .blocks
                .iter()
                .filter(|b| b.len() == 2)
                .count();
            let lhs = (2 * mm + 3) * (2 * mm + 3);
            let rhs = 9 + 8 * k.max(n - k);
            (Some(mm), Some(lhs >= rhs))
        } else {
            (None, None)
        };
    Ok(BoundsReport {
        n,
        k,
        dim_bound,
        dim_ok,
        two_blocks,
        block_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactnum::{antidiag_ones, rat, rint};
    use crate::sample::PointSampler;

    fn cayley2() -> MetrisedAlgebra {
        catalog::cayley(2).unwrap()
    }

    #[test]
    fn construction_rejects_degenerate_gamma() {
        let alg = Algebra::zero_algebra(2);
        assert!(MetrisedAlgebra::new(alg.clone(), Matrix::zero(2, 2)).is_err());
        let asym = Matrix::from_rows(vec![vec![rint(0), rint(1)], vec![rint(2), rint(0)]]);
        assert!(MetrisedAlgebra::new(alg, asym).is_err());
    }

    #[test]
    fn trace_form_examples() {
        assert!(cayley2().is_trace_form());
        let mut alg = Algebra::new(2);
        alg.set_k(0, 0, 1, rint(1));
        let with_identity = MetrisedAlgebra::new(alg, Matrix::identity(2)).unwrap();
        assert!(!with_identity.is_trace_form());
        let zero = MetrisedAlgebra::new(Algebra::zero_algebra(3), Matrix::identity(3)).unwrap();
        assert!(zero.is_trace_form());
    }

    #[test]
    fn trace_form_matches_random_triple_identity() {
        let mut sampler = PointSampler::new(41);
        let m = catalog::builtin(&catalog::CatalogKey::plain("algebras5.1")).unwrap();
        assert!(m.is_trace_form());
        for _ in 0..50 {
            let u = sampler.point(5);
            let v = sampler.point(5);
            let w = sampler.point(5);
            let uv = m.algebra().multiply(&u, &v).unwrap();
            let vw = m.algebra().multiply(&v, &w).unwrap();
            assert_eq!(m.pair(&uv, &w), m.pair(&u, &vw));
        }
    }

    #[test]
    fn validate_reports() {
        let m = catalog::builtin(&catalog::CatalogKey::plain("algebras5.1")).unwrap();
        let report = validate(&m);
        assert!(report.jordan && report.trace_form && report.nilpotent);
        assert_eq!(report.signature, (3, 2));
        assert_eq!(report.det_gamma, rint(1));
        assert!(report.passed());

        let mut bad = Algebra::new(2);
        bad.set_k(0, 0, 1, rint(1));
        bad.set_k(1, 1, 0, rint(1));
        let bad = MetrisedAlgebra::new(bad, antidiag_ones(2)).unwrap();
        let report = validate(&bad);
        assert!(!report.jordan);
        assert!(!report.passed());

        let zero = MetrisedAlgebra::new(Algebra::zero_algebra(3), Matrix::identity(3)).unwrap();
        let report = validate(&zero);
        assert!(report.passed() && report.nilpotent);
        assert_eq!(report.signature, (3, 0));
    }

    #[test]
    fn direct_sum_shapes() {
        let s = direct_sum(&[cayley2(), cayley2()]).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.algebra().k(0, 0, 1), rint(1));
        assert_eq!(s.algebra().k(2, 2, 3), rint(1));
        assert_eq!(s.gamma().at(0, 1), &rint(1));
        assert_eq!(s.gamma().at(2, 3), &rint(1));
        assert_eq!(s.gamma().at(1, 2), &rint(0));
        // single summand is the identity operation
        let one = direct_sum(&[cayley2()]).unwrap();
        assert_eq!(one, cayley2());
    }

    #[test]
    fn direct_sum_validates_with_summed_signature() {
        let a = catalog::builtin(&catalog::CatalogKey::plain("algebras4.1")).unwrap();
        let b = cayley2();
        let s = direct_sum(&[a.clone(), b.clone()]).unwrap();
        let ra = validate(&a);
        let rb = validate(&b);
        let rs = validate(&s);
        assert!(rs.passed());
        assert_eq!(
            rs.signature,
            (ra.signature.0 + rb.signature.0, ra.signature.1 + rb.signature.1)
        );
    }

    #[test]
    fn split_scan_finds_coordinate_split_for_zero_algebra() {
        let m = MetrisedAlgebra::new(Algebra::zero_algebra(2), Matrix::identity(2)).unwrap();
        let report = orthogonal_split_scan(&m);
        assert!(report.found);
        assert_eq!(report.block_a, vec![0]);
        assert_eq!(report.block_b, vec![1]);
    }

    #[test]
    fn split_scan_finds_annihilator_witness_for_class3_1() {
        let m = catalog::builtin(&catalog::CatalogKey::plain("class3.1")).unwrap();
        let report = orthogonal_split_scan(&m);
        assert!(report.found);
        assert_eq!(report.criterion, Some(SplitCriterion::AnnihilatorWitness));
        let witness = report.witness.unwrap();
        assert_eq!(witness, vec![rint(0), rint(0), rint(1)]);
        assert_eq!(report.block_a, vec![2]);
    }

    #[test]
    fn split_scan_finds_direct_sum() {
        let s = direct_sum(&[cayley2(), cayley2()]).unwrap();
        let report = orthogonal_split_scan(&s);
        assert!(report.found);
    }

    #[test]
    fn split_scan_rejects_irreducible_entries() {
        for key in ["algebras5.1", "algebras5.7"] {
            let m = catalog::builtin(&catalog::CatalogKey::plain(key)).unwrap();
            let report = orthogonal_split_scan(&m);
            assert!(!report.found, "{key} wrongly reported reducible");
        }
    }

    #[test]
    fn derivation_dims_match_published_table() {
        let expected = [2usize, 2, 1, 2, 1, 1, 0];
        for (i, &dim) in expected.iter().enumerate() {
            let key = catalog::CatalogKey::plain(&format!("algebras5.{}", i + 1));
            let m = catalog::builtin(&key).unwrap();
            assert_eq!(skew_derivation_dim(&m), dim, "entry {}", i + 1);
        }
    }

    #[test]
    fn derivation_dim_small_cases() {
        assert_eq!(skew_derivation_dim(&cayley2()), 0);
        let one =
            MetrisedAlgebra::new(Algebra::zero_algebra(1), Matrix::identity(1)).unwrap();
        assert_eq!(skew_derivation_dim(&one), 0);
    }

    #[test]
    fn derivation_dim_of_direct_sum_at_least_summands() {
        let a = catalog::builtin(&catalog::CatalogKey::plain("algebras5.1")).unwrap();
        let b = cayley2();
        let s = direct_sum(&[a.clone(), b.clone()]).unwrap();
        assert!(skew_derivation_dim(&s) >= skew_derivation_dim(&a) + skew_derivation_dim(&b));
    }

    #[test]
    fn bounds_examples() {
        let m = catalog::builtin(&catalog::CatalogKey::plain("algebras5.1")).unwrap();
        let report = dimension_bound_check(&m).unwrap();
        assert_eq!((report.n, report.k, report.dim_bound), (5, 2, 7));
        assert!(report.dim_ok);
        assert_eq!(report.two_blocks, Some(2));
        assert_eq!(report.block_ok, Some(true));

        let c2 = cayley2();
        let report = dimension_bound_check(&c2).unwrap();
        assert_eq!((report.n, report.k, report.dim_bound), (2, 1, 3));
        assert!(report.dim_ok);

        // hypothetical n = 8 with k = 1 fails the bound: 8 > 3
        assert!(8 > 1 * (1 + 5) / 2);

        let idem = {
            let mut a = Algebra::new(2);
            a.set_k(0, 0, 0, rint(1));
            MetrisedAlgebra::new(a, Matrix::identity(2)).unwrap()
        };
        assert!(dimension_bound_check(&idem).is_err());
    }

    #[test]
    fn transform_preserves_axioms_and_signature() {
        let mut sampler = PointSampler::new(43);
        let m = catalog::builtin(&catalog::CatalogKey::plain("algebras4.2")).unwrap();
        for _ in 0..5 {
            let b = sampler.invertible_matrix(4);
            let t = m.transform(&b).unwrap();
            let before = validate(&m);
            let after = validate(&t);
            assert_eq!(before.jordan, after.jordan);
            assert_eq!(before.trace_form, after.trace_form);
            assert_eq!(before.nilpotent, after.nilpotent);
            assert_eq!(before.signature, after.signature);
        }
    }

    #[test]
    fn gamma_pairing_sanity() {
        let m = cayley2();
        assert_eq!(m.pair(&[rint(1), rint(0)], &[rint(0), rint(1)]), rint(1));
        assert_eq!(m.pair(&[rint(1), rint(0)], &[rint(1), rint(0)]), rint(0));
        let _ = rat(1, 2);
    }
}
