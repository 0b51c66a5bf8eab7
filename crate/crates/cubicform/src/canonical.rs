//! Semi-canonical form of nilpotent metrised algebras.
//!
//! The central ascending series is completed to a full flag, a basis
//! adapted to the flag brings gamma to blocks of +1, -1 or the hyperbolic
//! 2x2 antidiagonal, and a sequence of legal adjacent transpositions moves
//! the 2-blocks to the nested outer positions {1,n}, {2,n-1}, ... In the
//! resulting basis products strictly descend the flag: `K^d_{ab} = 0`
//! whenever `d >= min(a, b)`.

use num_traits::{One, Signed, Zero};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactnum::{mat_det, mat_kernel, square_decompose, Matrix, Rat};
use crate::metrised::MetrisedAlgebra;

/// Complete flag of nested subspaces `V_1 c ... c V_n`, each an ambient
/// column basis with `dim V_k = k`.
#[derive(Clone, Debug)]
pub struct Flag {
    pub bases: Vec<Matrix>,
}

/// Partition of the index set `0..n` into blocks of size 1 or 2,
/// kept sorted (inside blocks, and blocks by least element).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    pub blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        Partition { blocks }
    }

    pub fn covers(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for b in &self.blocks {
            if b.is_empty() || b.len() > 2 {
                return false;
            }
            for &i in b {
                if i >= n || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn two_block_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 2).count()
    }

    fn block_containing(&self, i: usize) -> Option<&Vec<usize>> {
        self.blocks.iter().find(|b| b.contains(&i))
    }

    fn has_block(&self, block: &[usize]) -> bool {
        self.blocks.iter().any(|b| b.as_slice() == block)
    }

    /// Relabels indices by the adjacent transposition (i, i+1).
    fn swap_indices(&mut self, i: usize) {
        for b in &mut self.blocks {
            for idx in b.iter_mut() {
                if *idx == i {
                    *idx = i + 1;
                } else if *idx == i + 1 {
                    *idx = i;
                }
            }
            b.sort_unstable();
        }
        self.blocks.sort_by_key(|b| b[0]);
    }
}

/// Output of semi-canonicalization: the accumulated basis change (columns
/// are the new basis vectors), the transformed algebra, and the gamma
/// block partition. Singleton gamma entries are scaled to +-1 when a
/// rational square root exists; the positions where only +-q (q squarefree)
/// was reachable are listed in `non_unit_diagonal`.
#[derive(Clone, Debug)]
pub struct CanonicalResult {
    pub basis_change: Matrix,
    pub result: MetrisedAlgebra,
    pub partition: Partition,
    pub non_unit_diagonal: Vec<usize>,
}

/// Deterministic basis of the column space: reduce the transpose, read
/// off the nonzero rows, and rescale them to primitive integer vectors.
fn canonical_column_basis(dim: usize, cols: &[Vec<Rat>]) -> Matrix {
    if cols.is_empty() {
        return Matrix::zero(dim, 0);
    }
    let m = Matrix::from_columns(dim, cols);
    let (red, pivots) = m.transpose().rref();
    let basis: Vec<Vec<Rat>> = (0..pivots.len())
        .map(|r| (0..dim).map(|c| red.at(r, c).clone()).collect())
        .collect();
    Matrix::from_columns(dim, &basis).primitive_columns()
}

/// Intersection of two column spans, as a deterministic column basis.
fn subspace_intersect(a: &Matrix, b: &Matrix) -> Matrix {
    let dim = a.rows();
    if a.cols() == 0 || b.cols() == 0 {
        return Matrix::zero(dim, 0);
    }
    let stacked = a.hcat(&b.scale(&-Rat::one()));
    let kernel = mat_kernel(&stacked);
    let vectors: Vec<Vec<Rat>> = kernel
        .iter()
        .map(|w| a.mul_vec(&w[..a.cols()]))
        .collect();
    canonical_column_basis(dim, &vectors)
}

/// Subspace `{x in span(space) : rows * x = 0}`.
fn subspace_cut(space: &Matrix, rows: &Matrix) -> Matrix {
    let ker = mat_kernel(rows);
    let ker_m = Matrix::from_columns(rows.cols(), &ker);
    subspace_intersect(space, &ker_m)
}

/// Completes the central ascending series of a nilpotent algebra to a full
/// flag. Inside each gap the completion greedily adjoins standard basis
/// vectors by lowest index; when those do not suffice (the subspace is not
/// coordinate-spanned) it falls back to the deterministic kernel basis of
/// the enclosing series member. Every `V_k` is verified to satisfy
/// `x*y in V_{k-1}` for `x in V_k`.
pub fn complete_flag(algebra: &Algebra) -> Result<Flag> {
    let n = algebra.dim();
    let series = algebra.central_ascending_series();
    if !series.terminal {
        return Err(Error::Precondition(
            "flag completion needs a nilpotent algebra".into(),
        ));
    }
    let mut bases: Vec<Matrix> = Vec::with_capacity(n);
    let mut current = Matrix::zero(n, 0);
    for target in series.subspaces.iter().skip(1) {
        let mut candidates: Vec<Vec<Rat>> = Vec::new();
        for j in 0..n {
            let e = algebra.basis_element(j);
            if target.contains(&e) {
                candidates.push(e);
            }
        }
        candidates.extend(target.columns());
        let mut iter = candidates.into_iter();
        while current.cols() < target.cols() {
            let cand = iter.next().ok_or_else(|| {
                Error::Precondition("flag completion ran out of candidates".into())
            })?;
            if !current.contains(&cand) {
                current = current.hcat(&Matrix::from_columns(n, &[cand]));
                bases.push(current.clone());
            }
        }
    }
    if bases.len() != n {
        return Err(Error::Precondition(
            "central series did not fill the space".into(),
        ));
    }
    // postcondition: products out of V_k land in V_{k-1}; all products of
    // one level are checked against the previous level in one elimination
    for k in 1..=n {
        let vk = &bases[k - 1];
        let mut prods: Vec<Vec<Rat>> = Vec::new();
        for x in vk.columns() {
            for j in 0..n {
                let prod = algebra.multiply(&x, &algebra.basis_element(j))?;
                if !prod.iter().all(|c| c.is_zero()) {
                    prods.push(prod);
                }
            }
        }
        let contained = if prods.is_empty() {
            true
        } else if k == 1 {
            false // nonzero product out of V_1 cannot land in V_0 = 0
        } else {
            let prev = &bases[k - 2];
            let ext = prev.hcat(&Matrix::from_columns(n, &prods));
            ext.rank() == prev.cols()
        };
        if !contained {
            return Err(Error::Precondition(format!(
                "flag completion failed: product escapes V_{}",
                k - 1
            )));
        }
    }
    Ok(Flag { bases })
}

/// The inductive basis construction for a non-degenerate symmetric form
/// relative to a complete flag. Returns an ordered basis (as a matrix of
/// columns) respecting the flag, and the partition into gamma-blocks of
/// size 1 or 2.
pub fn can_form_basis(gamma: &Matrix, flag: &Flag) -> Result<(Matrix, Partition)> {
    if !gamma.is_symmetric() {
        return Err(Error::Shape("gamma must be symmetric".into()));
    }
    if mat_det(gamma)?.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let n = gamma.rows();
    let (vectors, blocks) = build_basis(gamma, &flag.bases)?;
    if vectors.len() != n {
        return Err(Error::Precondition("flag does not span the space".into()));
    }
    Ok((
        Matrix::from_columns(n, &vectors),
        Partition::new(blocks),
    ))
}

fn pair(gamma: &Matrix, u: &[Rat], v: &[Rat]) -> Rat {
    let gv = gamma.mul_vec(v);
    u.iter().zip(&gv).map(|(a, b)| a * b).sum()
}

fn build_basis(gamma: &Matrix, flag: &[Matrix]) -> Result<(Vec<Vec<Rat>>, Vec<Vec<usize>>)> {
    let m = flag.len();
    if m == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let dim = gamma.rows();
    let mut v1 = flag[0].column(0);
    let g11 = pair(gamma, &v1, &v1);

    if !g11.is_zero() {
        // case 1: normalize gamma(v1, v1) towards +-1 by rational scaling
        let (c, _sqfree) = square_decompose(&g11.abs());
        v1 = v1.iter().map(|x| x / &c).collect();
        let perp_row = Matrix::from_rows(vec![gamma.mul_vec(&v1)]);
        let mut sub_flag = Vec::with_capacity(m - 1);
        for k in 1..m {
            let cut = subspace_cut(&flag[k], &perp_row);
            if cut.cols() != k {
                return Err(Error::Precondition(
                    "flag did not restrict cleanly to the orthogonal complement".into(),
                ));
            }
            sub_flag.push(cut);
        }
        let (rest, rest_blocks) = build_basis(gamma, &sub_flag)?;
        let mut vectors = vec![v1];
        vectors.extend(rest);
        let mut blocks = vec![vec![0usize]];
        for b in rest_blocks {
            blocks.push(b.into_iter().map(|i| i + 1).collect());
        }
        return Ok((vectors, blocks));
    }

    // case 2: gamma vanishes on V_1; find the smallest l with V_l not
    // inside the orthogonal complement of v1
    let perp_of = |x: &[Rat]| -> Vec<Rat> { gamma.mul_vec(x) };
    let v1_row = perp_of(&v1);
    let pairs_zero = |w: &Matrix| -> bool {
        w.columns()
            .iter()
            .all(|col| col.iter().zip(&v1_row).map(|(a, b)| a * b).sum::<Rat>().is_zero())
    };
    let l = (2..=m)
        .find(|&l| !pairs_zero(&flag[l - 1]))
        .ok_or(Error::DegenerateForm)?;

    // witness: standard basis vectors first, then the flag's own columns
    let pairing = |x: &[Rat]| -> Rat { x.iter().zip(&v1_row).map(|(a, b)| a * b).sum() };
    let mut witness: Option<Vec<Rat>> = None;
    for j in 0..dim {
        let mut e = vec![Rat::zero(); dim];
        e[j] = Rat::one();
        if !pairing(&e).is_zero() && flag[l - 1].contains(&e) {
            witness = Some(e);
            break;
        }
    }
    if witness.is_none() {
        witness = flag[l - 1]
            .columns()
            .into_iter()
            .find(|col| !pairing(col).is_zero());
    }
    let mut vt = witness.expect("l was chosen so a witness exists");
    let scale = pairing(&vt);
    vt = vt.iter().map(|x| x / &scale).collect();
    // project so gamma(v_l, v_l) = 0 while keeping gamma(v1, v_l) = 1
    let half_sq = pair(gamma, &vt, &vt) / crate::exactnum::rint(2);
    let vl: Vec<Rat> = vt
        .iter()
        .zip(&v1)
        .map(|(t, o)| t - &half_sq * o)
        .collect();

    let cut_rows = Matrix::from_rows(vec![v1_row.clone(), perp_of(&vl)]);
    let mut sub_flag = Vec::with_capacity(m.saturating_sub(2));
    for k in 1..=m.saturating_sub(2) {
        let source = if k <= l - 2 { &flag[k] } else { &flag[k + 1] };
        let cut = subspace_cut(source, &cut_rows);
        if cut.cols() != k {
            return Err(Error::Precondition(
                "flag did not restrict cleanly past the hyperbolic pair".into(),
            ));
        }
        sub_flag.push(cut);
    }
    let (rest, rest_blocks) = build_basis(gamma, &sub_flag)?;

    // positions (zero-based): v1 at 0, vl at l-1, the recursion fills the rest
    let l0 = l - 1;
    let mut vectors = vec![Vec::new(); m];
    vectors[0] = v1;
    vectors[l0] = vl;
    for (i0, v) in rest.into_iter().enumerate() {
        let pos = if i0 + 1 <= l0 - 1 { i0 + 1 } else { i0 + 2 };
        vectors[pos] = v;
    }
    let mut blocks = vec![vec![0usize, l0]];
    for b in rest_blocks {
        blocks.push(
            b.into_iter()
                .map(|i0| if i0 + 1 <= l0 - 1 { i0 + 1 } else { i0 + 2 })
                .collect(),
        );
    }
    Ok((vectors, blocks))
}

/// Property (i) of the semi-canonical form: every nonzero `K^d_{ab}` has
/// `d < min(a, b)`.
fn descends_flag(algebra: &Algebra) -> bool {
    algebra
        .triples()
        .all(|(&(a, b, d), k)| k.is_zero() || d < a.min(b))
}

/// Checks both semi-canonical properties: the structure constants descend
/// the standard flag, and gamma is block-diagonal for the partition with
/// exact antidiagonal-ones 2-blocks and nonzero singleton entries.
pub fn verify_semi_canonical(m: &MetrisedAlgebra, partition: &Partition) -> bool {
    let n = m.dim();
    if !partition.covers(n) {
        return false;
    }
    if !descends_flag(m.algebra()) {
        return false;
    }
    let g = m.gamma();
    for i in 0..n {
        for j in i..n {
            let same_block = partition
                .block_containing(i)
                .map(|b| b.contains(&j))
                .unwrap_or(false);
            if !same_block && !g.at(i, j).is_zero() {
                return false;
            }
        }
    }
    for block in &partition.blocks {
        match block.as_slice() {
            [i] => {
                if g.at(*i, *i).is_zero() {
                    return false;
                }
            }
            [i, j] => {
                if !g.at(*i, *i).is_zero()
                    || !g.at(*j, *j).is_zero()
                    || !g.at(*i, *j).is_one()
                {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

/// Moves the 2-blocks of an already semi-canonical result to the nested
/// outer positions `{1,n}, {2,n-1}, ...` by adjacent transpositions, then
/// sorts the singleton diagonal entries in decreasing order. Each swap is
/// re-verified to preserve the flag-descent property.
pub fn normalize_partition(r: &CanonicalResult) -> Result<CanonicalResult> {
    let n = r.result.dim();
    if !verify_semi_canonical(&r.result, &r.partition) {
        return Err(Error::Precondition(
            "normalize_partition needs a semi-canonical input".into(),
        ));
    }
    let mut current = r.clone();
    let m2 = current.partition.two_block_count();

    let swap = |state: &mut CanonicalResult, i: usize| -> Result<()> {
        let mut p = Matrix::identity(n);
        *p.at_mut(i, i) = Rat::zero();
        *p.at_mut(i + 1, i + 1) = Rat::zero();
        *p.at_mut(i, i + 1) = Rat::one();
        *p.at_mut(i + 1, i) = Rat::one();
        state.result = state.result.swap_basis(i, i + 1);
        state.basis_change = state.basis_change.mul(&p);
        state.partition.swap_indices(i);
        if !descends_flag(state.result.algebra()) {
            return Err(Error::Precondition(
                "illegal transposition broke the flag-descent property".into(),
            ));
        }
        Ok(())
    };

    loop {
        let j = (0..m2).find(|&j| !current.partition.has_block(&[j, n - 1 - j]));
        let j = match j {
            None => break,
            Some(j) => j,
        };
        if current.partition.has_block(&[j]) {
            // walk the next 2-block opening down to position j
            let mut i = j;
            while current.partition.has_block(&[i + 1]) {
                i += 1;
            }
            loop {
                swap(&mut current, i)?;
                if i == j {
                    break;
                }
                i -= 1;
            }
        }
        // j is now paired; bubble its partner up to n-1-j
        let partner = {
            let block = current
                .partition
                .block_containing(j)
                .ok_or_else(|| Error::Precondition("partition lost an index".into()))?;
            block[1]
        };
        if partner > n - 1 - j {
            return Err(Error::Precondition(
                "partner beyond its nested position".into(),
            ));
        }
        let mut i = partner;
        while i < n - 1 - j {
            swap(&mut current, i)?;
            i += 1;
        }
    }

    // sort the singleton run by diagonal value, descending
    if n >= 2 * m2 + 2 {
        let lo = m2;
        let hi = n - 1 - m2;
        loop {
            let mut swapped = false;
            for p in lo..hi {
                let a = current.result.gamma().at(p, p).clone();
                let b = current.result.gamma().at(p + 1, p + 1).clone();
                if a < b {
                    swap(&mut current, p)?;
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
    }

    current.non_unit_diagonal = non_unit_positions(&current);
    Ok(current)
}

fn non_unit_positions(r: &CanonicalResult) -> Vec<usize> {
    let g = r.result.gamma();
    r.partition
        .blocks
        .iter()
        .filter(|b| b.len() == 1)
        .map(|b| b[0])
        .filter(|&i| !g.at(i, i).abs().is_one())
        .collect()
}

/// Full pipeline: flag completion, flag-adapted basis for gamma, basis
/// change, and partition normalization. Requires the Jordan identity, the
/// trace-form property and nilpotency.
pub fn semi_canonicalize(m: &MetrisedAlgebra) -> Result<CanonicalResult> {
    if !m.algebra().is_jordan() {
        return Err(Error::Precondition(
            "semi-canonical form needs the Jordan identity".into(),
        ));
    }
    if !m.is_trace_form() {
        return Err(Error::Precondition(
            "semi-canonical form needs a trace form".into(),
        ));
    }
    let flag = complete_flag(m.algebra())?;
    let (basis, partition) = can_form_basis(m.gamma(), &flag)?;
    let result = m.transform(&basis)?;
    let mut out = CanonicalResult {
        basis_change: basis,
        result,
        partition,
        non_unit_diagonal: Vec::new(),
    };
    out.non_unit_diagonal = non_unit_positions(&out);
    let out = normalize_partition(&out)?;
    if !verify_semi_canonical(&out.result, &out.partition) {
        return Err(Error::Precondition(
            "canonicalization produced a non-canonical result".into(),
        ));
    }
    Ok(out)
}
