//! JSON file formats: algebra files, surface files, and the report
//! objects the command line emits. Rationals travel as `"p/q"` strings
//! (just `"p"` for integers); indices are 1-based on the wire.

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::canonical::{CanonicalResult, Partition};
use crate::error::{Error, Result};
use crate::exactnum::{format_rat, parse_rat, Matrix, Rat};
use crate::metrised::{MetrisedAlgebra, SplitCriterion, SplitReport, ValidationReport};
use crate::poly::{Monomial, Polynomial};
use crate::surface::{Surface, SurfaceMode};

/// On-disk algebra: dimension, sparse structure constants as
/// `[alpha, beta, delta, "p/q"]` with `alpha <= beta`, and an optional
/// dense gamma.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default)]
    pub k: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Vec<String>>>,
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<Algebra> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::InvalidInput("dim must be at least 1".into()));
        }
        let mut alg = Algebra::new(n);
        for (idx, (a, b, d, val)) in self.k.iter().enumerate() {
            if *a == 0 || *b == 0 || *d == 0 || *a > n || *b > n || *d > n {
                return Err(Error::InvalidInput(format!(
                    "k[{idx}]: indices must lie in 1..={n}"
                )));
            }
            if a > b {
                return Err(Error::InvalidInput(format!(
                    "k[{idx}]: alpha > beta (entries are stored once per unordered pair)"
                )));
            }
            let r = parse_rat(val)
                .map_err(|e| Error::InvalidInput(format!("k[{idx}]: {e}")))?;
            alg.set_k(a - 1, b - 1, d - 1, r);
        }
        Ok(alg)
    }

    pub fn gamma_matrix(&self) -> Result<Option<Matrix>> {
        let rows = match &self.gamma {
            None => return Ok(None),
            Some(rows) => rows,
        };
        if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
            return Err(Error::InvalidInput(format!(
                "gamma must be a {0}x{0} array",
                self.dim
            )));
        }
        let mut m = Matrix::zero(self.dim, self.dim);
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                *m.at_mut(i, j) = parse_rat(s)
                    .map_err(|e| Error::InvalidInput(format!("gamma[{i}][{j}]: {e}")))?;
            }
        }
        Ok(Some(m))
    }

    pub fn to_metrised(&self) -> Result<MetrisedAlgebra> {
        let gamma = self.gamma_matrix()?.ok_or_else(|| {
            Error::InvalidInput("this operation needs the gamma field".into())
        })?;
        MetrisedAlgebra::new(self.to_algebra()?, gamma)
    }

    pub fn from_metrised(m: &MetrisedAlgebra) -> Self {
        let mut file = Self::from_algebra(m.algebra());
        file.gamma = Some(matrix_to_strings(m.gamma()));
        file
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraFile {
            dim: a.dim(),
            k: a
                .triples()
                .map(|(&(al, be, de), v)| (al + 1, be + 1, de + 1, format_rat(v)))
                .collect(),
            gamma: None,
        }
    }
}

pub fn matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| format_rat(m.at(i, j))).collect())
        .collect()
}

pub fn strings_to_matrix(rows: &[Vec<String>]) -> Result<Matrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::InvalidInput("ragged matrix rows".into()));
    }
    let mut m = Matrix::zero(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            *m.at_mut(i, j) = parse_rat(s)?;
        }
    }
    Ok(m)
}

/// On-disk surface: the mode, the polynomial both as display text and as
/// an exact term list `[[e1..en], "p/q"]`, and optionally the source
/// algebra.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SurfaceFile {
    pub mode: String,
    pub nvars: usize,
    pub text: String,
    pub terms: Vec<(Vec<u32>, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraFile>,
}

impl SurfaceFile {
    pub fn from_surface(s: &Surface) -> Self {
        SurfaceFile {
            mode: s.mode.as_str().to_string(),
            nvars: s.f.nvars(),
            text: s.f.to_string(),
            terms: polynomial_to_terms(&s.f),
            algebra: s.source.as_ref().map(AlgebraFile::from_metrised),
        }
    }

    pub fn to_surface(&self) -> Result<Surface> {
        let mode = SurfaceMode::parse(&self.mode)?;
        let f = terms_to_polynomial(self.nvars, &self.terms)?;
        let mut s = Surface::from_polynomial(f, mode)?;
        if let Some(alg) = &self.algebra {
            s.source = Some(alg.to_metrised()?);
        }
        Ok(s)
    }
}

pub fn polynomial_to_terms(p: &Polynomial) -> Vec<(Vec<u32>, String)> {
    p.terms()
        .map(|(m, c)| (m.0.clone(), format_rat(c)))
        .collect()
}

pub fn terms_to_polynomial(nvars: usize, terms: &[(Vec<u32>, String)]) -> Result<Polynomial> {
    let mut p = Polynomial::zero(nvars);
    for (idx, (exps, c)) in terms.iter().enumerate() {
        if exps.len() != nvars {
            return Err(Error::InvalidInput(format!(
                "terms[{idx}]: exponent vector length {} != nvars {}",
                exps.len(),
                nvars
            )));
        }
        let r =
            parse_rat(c).map_err(|e| Error::InvalidInput(format!("terms[{idx}]: {e}")))?;
        p.add_term(Monomial(exps.clone()), r);
    }
    Ok(p)
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SplitReportFile {
    pub found: bool,
    pub block_a: Vec<usize>,
    pub block_b: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criterion: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
}

impl SplitReportFile {
    pub fn from_report(r: &SplitReport) -> Self {
        SplitReportFile {
            found: r.found,
            block_a: r.block_a.iter().map(|i| i + 1).collect(),
            block_b: r.block_b.iter().map(|i| i + 1).collect(),
            witness: r
                .witness
                .as_ref()
                .map(|v| v.iter().map(format_rat).collect()),
            criterion: r.criterion.map(|c| {
                match c {
                    SplitCriterion::CanonicalPrefix => "canonical_prefix",
                    SplitCriterion::AnnihilatorWitness => "annihilator_witness",
                    SplitCriterion::InputPrefix => "input_prefix",
                }
                .to_string()
            }),
            basis: r.basis.as_ref().map(matrix_to_strings),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ValidationReportFile {
    pub jordan: bool,
    pub associative: bool,
    pub trace_form: bool,
    pub nilpotent: bool,
    pub signature: [usize; 2],
    /// the same surface with the opposite transversal sign has -gamma
    pub signature_mirrored: [usize; 2],
    pub det_gamma: String,
    pub splits: SplitReportFile,
    pub failures: Vec<String>,
}

impl ValidationReportFile {
    pub fn from_parts(r: &ValidationReport, splits: &SplitReport) -> Self {
        ValidationReportFile {
            jordan: r.jordan,
            associative: r.associative,
            trace_form: r.trace_form,
            nilpotent: r.nilpotent,
            signature: [r.signature.0, r.signature.1],
            signature_mirrored: [r.signature.1, r.signature.0],
            det_gamma: format_rat(&r.det_gamma),
            splits: SplitReportFile::from_report(splits),
            failures: r.failures.clone(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CanonicalResultFile {
    pub basis_change: Vec<Vec<String>>,
    pub algebra: AlgebraFile,
    /// blocks of 1-based indices
    pub partition: Vec<Vec<usize>>,
    pub non_unit_diagonal: Vec<usize>,
}

impl CanonicalResultFile {
    pub fn from_result(r: &CanonicalResult) -> Self {
        CanonicalResultFile {
            basis_change: matrix_to_strings(&r.basis_change),
            algebra: AlgebraFile::from_metrised(&r.result),
            partition: r
                .partition
                .blocks
                .iter()
                .map(|b| b.iter().map(|i| i + 1).collect())
                .collect(),
            non_unit_diagonal: r.non_unit_diagonal.iter().map(|i| i + 1).collect(),
        }
    }

    pub fn to_result(&self) -> Result<CanonicalResult> {
        let blocks: Vec<Vec<usize>> = self
            .partition
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&i| {
                        if i == 0 {
                            Err(Error::InvalidInput("partition indices are 1-based".into()))
                        } else {
                            Ok(i - 1)
                        }
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(CanonicalResult {
            basis_change: strings_to_matrix(&self.basis_change)?,
            result: self.algebra.to_metrised()?,
            partition: Partition::new(blocks),
            non_unit_diagonal: self
                .non_unit_diagonal
                .iter()
                .map(|&i| i.saturating_sub(1))
                .collect(),
        })
    }
}

/// One verified sample point in a PDE report.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PointResultFile {
    pub point: Vec<String>,
    pub max_abs_residual: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct VerifyReportFile {
    pub pde: String,
    pub seed: u64,
    pub points: usize,
    pub symbolic: bool,
    pub results: Vec<PointResultFile>,
    pub all_zero: bool,
}

pub fn verify_report(
    pde: SurfaceMode,
    seed: u64,
    symbolic: bool,
    results: &[(Vec<Rat>, Rat)],
    symbolic_ok: Option<bool>,
) -> VerifyReportFile {
    use num_traits::Zero;
    let sampled_zero = results.iter().all(|(_, r)| r.is_zero());
    VerifyReportFile {
        pde: pde.as_str().to_string(),
        seed,
        points: results.len(),
        symbolic,
        results: results
            .iter()
            .map(|(p, r)| PointResultFile {
                point: p.iter().map(format_rat).collect(),
                max_abs_residual: format_rat(r),
            })
            .collect(),
        all_zero: sampled_zero && symbolic_ok.unwrap_or(true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogKey};
    use crate::exactnum::rint;
    use crate::surface::generate_surface;

    #[test]
    fn algebra_file_round_trip() {
        let m = catalog::builtin(&CatalogKey::plain("algebras5.3")).unwrap();
        let file = AlgebraFile::from_metrised(&m);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: AlgebraFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_metrised().unwrap(), m);
    }

    #[test]
    fn algebra_file_rejects_alpha_above_beta() {
        let file = AlgebraFile {
            dim: 2,
            k: vec![(2, 1, 1, "1".to_string())],
            gamma: None,
        };
        let err = file.to_algebra().unwrap_err();
        assert!(err.to_string().contains("alpha > beta"));
    }

    #[test]
    fn algebra_file_rejects_bad_indices_and_values() {
        let file = AlgebraFile {
            dim: 2,
            k: vec![(0, 1, 1, "1".to_string())],
            gamma: None,
        };
        assert!(file.to_algebra().is_err());
        let file = AlgebraFile {
            dim: 2,
            k: vec![(1, 1, 2, "x".to_string())],
            gamma: None,
        };
        assert!(file.to_algebra().is_err());
        let file = AlgebraFile {
            dim: 2,
            k: vec![],
            gamma: Some(vec![vec!["1".to_string()]]),
        };
        assert!(file.gamma_matrix().is_err());
    }

    #[test]
    fn surface_file_round_trip() {
        let m = catalog::cayley(3).unwrap();
        let s = generate_surface(&m, crate::surface::SurfaceMode::HatC, None).unwrap();
        let file = SurfaceFile::from_surface(&s);
        let json = serde_json::to_string_pretty(&file).unwrap();
        let parsed: SurfaceFile = serde_json::from_str(&json).unwrap();
        let back = parsed.to_surface().unwrap();
        assert_eq!(back.f, s.f);
        assert_eq!(back.source.unwrap(), m);
    }

    #[test]
    fn rationals_on_the_wire() {
        assert_eq!(format_rat(&rint(-3)), "-3");
        assert_eq!(format_rat(&crate::exactnum::rat(1, 3)), "1/3");
        assert_eq!(parse_rat("-5/7").unwrap(), crate::exactnum::rat(-5, 7));
        assert!(parse_rat("1/0").is_err());
    }
}
