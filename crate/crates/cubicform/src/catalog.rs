//! Built-in catalog of metrised algebras: the polynomial-quotient family
//! behind the Cayley hypersurfaces for every dimension, the classified
//! irreducible algebras in dimensions 4 and 5, the reducible
//! three-dimensional example, and a bivariate quotient-ring example.
//!
//! The structure constants are data, hand-transcribed; the surface
//! cross-checks in the test suite guard the transcription.

use num_traits::One;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactnum::{antidiag_ones, rat, rint, Matrix, Rat};
use crate::metrised::MetrisedAlgebra;

/// A catalog entry reference: a name plus an optional rational parameter
/// for the two one-parameter families.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatalogKey {
    pub name: String,
    pub alpha: Option<Rat>,
}

impl CatalogKey {
    pub fn plain(name: &str) -> Self {
        CatalogKey {
            name: name.to_string(),
            alpha: None,
        }
    }

    pub fn with_alpha(name: &str, alpha: Rat) -> Self {
        CatalogKey {
            name: name.to_string(),
            alpha: Some(alpha),
        }
    }
}

/// The algebra of the n-dimensional Cayley hypersurface: the quotient of
/// the polynomials with zero constant term by degree n+1, with basis
/// t, t^2, ..., t^n. So `K^d_{ab} = 1` iff `a + b = d` and the pairing
/// reads off the coefficient of `t^{n+1}`: `gamma_{ab} = 1` iff
/// `a + b = n + 1` (indices 1-based).
pub fn cayley(n: usize) -> Result<MetrisedAlgebra> {
    if n == 0 {
        return Err(Error::InvalidInput("cayley needs dimension >= 1".into()));
    }
    let mut alg = Algebra::new(n);
    for a in 1..=n {
        for b in a..=n {
            if a + b <= n {
                alg.set_k(a - 1, b - 1, a + b - 1, Rat::one());
            }
        }
    }
    MetrisedAlgebra::new(alg, antidiag_ones(n))
}

/// (a, b, c, d, e) pattern of the 4-dimensional classification, gamma
/// antidiagonal: K^2_33 = a, K^2_34 = K^1_33 = b, K^2_44 = K^1_34 = c,
/// K^1_44 = d, K^1_24 = K^3_44 = e (1-based indices).
fn algebras4(params: [Rat; 5]) -> Result<MetrisedAlgebra> {
    let [a, b, c, d, e] = params;
    let mut alg = Algebra::new(4);
    alg.set_k(2, 2, 1, a);
    alg.set_k(2, 3, 1, b.clone());
    alg.set_k(2, 2, 0, b);
    alg.set_k(3, 3, 1, c.clone());
    alg.set_k(2, 3, 0, c);
    alg.set_k(3, 3, 0, d);
    alg.set_k(1, 3, 0, e.clone());
    alg.set_k(3, 3, 2, e);
    MetrisedAlgebra::new(alg, antidiag_ones(4))
}

/// (a..h) pattern of the 5-dimensional classification, gamma antidiagonal:
/// K^4_55 = K^1_25 = a, K^3_44 = K^2_34 = b,
/// K^3_45 = K^2_35 = K^1_34 = c, K^3_55 = K^1_35 = d, K^2_44 = e,
/// K^1_44 = K^2_45 = f, K^2_55 = K^1_45 = g, K^1_55 = h (1-based).
fn algebras5(params: [Rat; 8]) -> Result<MetrisedAlgebra> {
    let [a, b, c, d, e, f, g, h] = params;
    let mut alg = Algebra::new(5);
    alg.set_k(4, 4, 3, a.clone());
    alg.set_k(1, 4, 0, a);
    alg.set_k(3, 3, 2, b.clone());
    alg.set_k(2, 3, 1, b);
    alg.set_k(3, 4, 2, c.clone());
    alg.set_k(2, 4, 1, c.clone());
    alg.set_k(2, 3, 0, c);
    alg.set_k(4, 4, 2, d.clone());
    alg.set_k(2, 4, 0, d);
    alg.set_k(3, 3, 1, e);
    alg.set_k(3, 3, 0, f.clone());
    alg.set_k(3, 4, 1, f);
    alg.set_k(4, 4, 1, g.clone());
    alg.set_k(3, 4, 0, g);
    alg.set_k(4, 4, 0, h);
    MetrisedAlgebra::new(alg, antidiag_ones(5))
}

fn algebras5_column(index: usize, alpha: &Rat) -> Option<[Rat; 8]> {
    let z = rint(0);
    let o = rint(1);
    let al = alpha.clone();
    Some(match index {
        1 => [z.clone(), o.clone(), z.clone(), z.clone(), z.clone(), z.clone(), o, z],
        2 => [z.clone(), o.clone(), z.clone(), o, z.clone(), z.clone(), z.clone(), z],
        3 => [z.clone(), o.clone(), z.clone(), o, al, z.clone(), z.clone(), z],
        4 => [z.clone(), z.clone(), o, z.clone(), z.clone(), z.clone(), z.clone(), z],
        5 => [z.clone(), z.clone(), o.clone(), z.clone(), o, z.clone(), z.clone(), z],
        6 => [z.clone(), z.clone(), o, z.clone(), al.clone(), z.clone(), z.clone(), al],
        7 => [o.clone(), z.clone(), o.clone(), z.clone(), o, z.clone(), z.clone(), z],
        _ => return None,
    })
}

/// The reducible 3-dimensional algebra behind `w = xy + z^2/2 - y^3/3`:
/// e2*e2 = e1, gamma pairs e1 with e2 and e3 with itself.
fn class3_1() -> Result<MetrisedAlgebra> {
    let mut alg = Algebra::new(3);
    alg.set_k(1, 1, 0, Rat::one());
    let mut g = Matrix::zero(3, 3);
    *g.at_mut(0, 1) = Rat::one();
    *g.at_mut(1, 0) = Rat::one();
    *g.at_mut(2, 2) = Rat::one();
    MetrisedAlgebra::new(alg, g)
}

/// The bivariate quotient-ring example: polynomials t*p(t, s) modulo
/// (t^3, s^2), basis (ts, t^2, t, t^2 s), pairing = coefficient of t^3 s
/// in the product. Nonzero products: b3*b3 = b2 and b3*b1 = b4.
fn bivariate() -> Result<MetrisedAlgebra> {
    let mut alg = Algebra::new(4);
    alg.set_k(2, 2, 1, Rat::one());
    alg.set_k(0, 2, 3, Rat::one());
    let mut g = Matrix::zero(4, 4);
    *g.at_mut(0, 1) = Rat::one();
    *g.at_mut(1, 0) = Rat::one();
    *g.at_mut(2, 3) = Rat::one();
    *g.at_mut(3, 2) = Rat::one();
    MetrisedAlgebra::new(alg, g)
}

/// Looks up a catalog entry. Parametric entries (`algebras5.3`,
/// `algebras5.6`) default to alpha = 1 when no parameter is supplied;
/// alpha must be positive.
pub fn builtin(key: &CatalogKey) -> Result<MetrisedAlgebra> {
    use num_traits::Signed;
    let name = key.name.as_str();
    if let Some(rest) = name.strip_prefix("cayley.") {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::UnknownCatalogKey(name.to_string()))?;
        return cayley(n);
    }
    if let Some(rest) = name.strip_prefix("algebras4.") {
        let i: usize = rest
            .parse()
            .map_err(|_| Error::UnknownCatalogKey(name.to_string()))?;
        let third = rat(1, 3);
        let params = match i {
            1 => [rint(0), third.clone(), third, rint(0), rint(0)],
            2 => [rint(0), rint(0), third, rint(0), rint(0)],
            3 => [rint(0), rint(1), rint(0), rint(0), rint(1)],
            _ => return Err(Error::UnknownCatalogKey(name.to_string())),
        };
        return algebras4(params);
    }
    if let Some(rest) = name.strip_prefix("algebras5.") {
        let i: usize = rest
            .parse()
            .map_err(|_| Error::UnknownCatalogKey(name.to_string()))?;
        let parametric = i == 3 || i == 6;
        let alpha = match &key.alpha {
            Some(a) => {
                if !parametric {
                    return Err(Error::InvalidInput(format!(
                        "{name} takes no alpha parameter"
                    )));
                }
                if !a.is_positive() {
                    return Err(Error::InvalidInput("alpha must be positive".into()));
                }
                a.clone()
            }
            None => Rat::one(),
        };
        let params =
            algebras5_column(i, &alpha).ok_or_else(|| Error::UnknownCatalogKey(name.to_string()))?;
        return algebras5(params);
    }
    match name {
        "class3.1" => class3_1(),
        "class3.2" => cayley(3),
        "bivariate" => bivariate(),
        _ => Err(Error::UnknownCatalogKey(name.to_string())),
    }
}

/// Published metadata for a catalog entry.
#[derive(Clone, Debug)]
pub struct CatalogInfo {
    pub name: String,
    pub dim: Option<usize>,
    pub parametric_alpha: bool,
    /// Shipped parameter values for the parametric entries.
    pub default_alphas: Vec<Rat>,
    pub jordan: bool,
    pub associative: bool,
    pub nilpotent: bool,
    pub irreducible: Option<bool>,
    pub derivation_dim: Option<usize>,
}

/// Enumerates the catalog with the published flags. The `cayley.n` row
/// stands for the whole family; concrete keys are `cayley.1`, `cayley.2`,
/// and so on.
pub fn list_catalog() -> Vec<CatalogInfo> {
    let mut out = Vec::new();
    let entry = |name: &str,
                 dim: Option<usize>,
                 parametric: bool,
                 associative: bool,
                 irreducible: Option<bool>,
                 derivation: Option<usize>| CatalogInfo {
        name: name.to_string(),
        dim,
        parametric_alpha: parametric,
        default_alphas: if parametric {
            vec![rint(1), rint(2)]
        } else {
            Vec::new()
        },
        jordan: true,
        associative,
        nilpotent: true,
        irreducible,
        derivation_dim: derivation,
    };
    out.push(entry("cayley.n", None, false, true, Some(true), None));
    for i in 1..=3 {
        out.push(entry(
            &format!("algebras4.{i}"),
            Some(4),
            false,
            true,
            Some(true),
            None,
        ));
    }
    let assoc5 = [true, false, false, false, false, false, true];
    let deriv5 = [2usize, 2, 1, 2, 1, 1, 0];
    for i in 1..=7 {
        out.push(entry(
            &format!("algebras5.{i}"),
            Some(5),
            i == 3 || i == 6,
            assoc5[i - 1],
            Some(true),
            Some(deriv5[i - 1]),
        ));
    }
    out.push(entry("class3.1", Some(3), false, true, Some(false), None));
    out.push(entry("class3.2", Some(3), false, true, Some(true), None));
    out.push(entry("bivariate", Some(4), false, true, Some(true), None));
    out
}

/// The concrete nilpotent entries exercised by the verification suites:
/// Cayley 1..6, the three 4-dimensional algebras, the seven 5-dimensional
/// ones (alpha = 1), the two 3-dimensional surfaces and the bivariate
/// example.
pub fn nilpotent_entries() -> Vec<(String, MetrisedAlgebra)> {
    let mut out = Vec::new();
    for n in 1..=6 {
        let key = format!("cayley.{n}");
        out.push((key.clone(), builtin(&CatalogKey::plain(&key)).unwrap()));
    }
    for i in 1..=3 {
        let key = format!("algebras4.{i}");
        out.push((key.clone(), builtin(&CatalogKey::plain(&key)).unwrap()));
    }
    for i in 1..=7 {
        let key = format!("algebras5.{i}");
        out.push((key.clone(), builtin(&CatalogKey::plain(&key)).unwrap()));
    }
    out.push((
        "class3.1".to_string(),
        builtin(&CatalogKey::plain("class3.1")).unwrap(),
    ));
    out.push((
        "class3.2".to_string(),
        builtin(&CatalogKey::plain("class3.2")).unwrap(),
    ));
    out.push((
        "bivariate".to_string(),
        builtin(&CatalogKey::plain("bivariate")).unwrap(),
    ));
    out
}
