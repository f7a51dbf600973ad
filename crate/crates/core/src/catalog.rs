//! The 2D and 3D catalog algebras, the six coordinate subspaces `D_1..D_6`
//! and ideal tests.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{Algebra, Element};
use crate::basis::{self, SubalgebraBasis};
use crate::error::{EacpError, Result};
use crate::matrix;
use crate::scalar::{parse_rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum CatalogId {
    /// `hr = h`
    TwoC1,
    /// `hr = (h + r)/2`
    TwoC2,
    C1,
    C2,
    C3,
    C4,
    C5 { beta: Scalar },
    C6 { alpha: Scalar, beta: Scalar },
    C7 { alpha: Scalar },
    C8,
}

impl CatalogId {
    pub fn dim(&self) -> usize {
        match self {
            CatalogId::TwoC1 | CatalogId::TwoC2 => 2,
            _ => 3,
        }
    }

    /// Catalog name without parameters, e.g. `C6`.
    pub fn family(&self) -> &'static str {
        match self {
            CatalogId::TwoC1 | CatalogId::C1 => "C1",
            CatalogId::TwoC2 | CatalogId::C2 => "C2",
            CatalogId::C3 => "C3",
            CatalogId::C4 => "C4",
            CatalogId::C5 { .. } => "C5",
            CatalogId::C6 { .. } => "C6",
            CatalogId::C7 { .. } => "C7",
            CatalogId::C8 => "C8",
        }
    }

    pub fn short_name(&self) -> String {
        match self {
            CatalogId::C5 { beta } => format!("C5({beta})"),
            CatalogId::C6 { alpha, beta } => format!("C6({alpha},{beta})"),
            CatalogId::C7 { alpha } => format!("C7({alpha})"),
            other => other.family().to_string(),
        }
    }

    /// Every catalog entry with free parameters set to 1.
    pub fn all_default() -> Vec<CatalogId> {
        let one = Scalar::one;
        vec![
            CatalogId::TwoC1,
            CatalogId::TwoC2,
            CatalogId::C1,
            CatalogId::C2,
            CatalogId::C3,
            CatalogId::C4,
            CatalogId::C5 { beta: one() },
            CatalogId::C6 { alpha: one(), beta: one() },
            CatalogId::C7 { alpha: one() },
            CatalogId::C8,
        ]
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}d:{}", self.dim(), self.short_name())
    }
}

fn id_err(text: &str, message: impl Into<String>) -> EacpError {
    EacpError::Parse { field: format!("catalog id `{text}`"), message: message.into() }
}

impl FromStr for CatalogId {
    type Err = EacpError;

    /// Accepts `2d:C1`, `3d:C5(2)`, `3d:C6(1,-1/2)`; the `3d:` prefix is
    /// optional.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let (dim, rest) = match t.split_once(':') {
            Some((d, r)) => (d.trim().to_ascii_lowercase(), r.trim()),
            None => ("3d".to_string(), t),
        };
        let (name, params) = match rest.split_once('(') {
            Some((nm, p)) => {
                let p = p.strip_suffix(')').ok_or_else(|| id_err(text, "missing `)`"))?;
                let vals = p
                    .split(',')
                    .map(|s| parse_rational(s.trim()).map(Scalar::rational))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| id_err(text, e.to_string()))?;
                (nm.trim().to_ascii_uppercase(), vals)
            }
            None => (rest.to_ascii_uppercase(), Vec::new()),
        };
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(id_err(text, format!("{name} takes {k} parameter(s), got {}", params.len())))
            }
        };
        let id = match (dim.as_str(), name.as_str()) {
            ("2d", "C1") => want(0).map(|_| CatalogId::TwoC1)?,
            ("2d", "C2") => want(0).map(|_| CatalogId::TwoC2)?,
            ("3d", "C1") => want(0).map(|_| CatalogId::C1)?,
            ("3d", "C2") => want(0).map(|_| CatalogId::C2)?,
            ("3d", "C3") => want(0).map(|_| CatalogId::C3)?,
            ("3d", "C4") => want(0).map(|_| CatalogId::C4)?,
            ("3d", "C5") => {
                want(1)?;
                if params[0].is_zero() {
                    return Err(id_err(text, "C5 requires beta ≠ 0"));
                }
                CatalogId::C5 { beta: params[0].clone() }
            }
            ("3d", "C6") => {
                want(2)?;
                CatalogId::C6 { alpha: params[0].clone(), beta: params[1].clone() }
            }
            ("3d", "C7") => {
                want(1)?;
                CatalogId::C7 { alpha: params[0].clone() }
            }
            ("3d", "C8") => want(0).map(|_| CatalogId::C8)?,
            _ => return Err(id_err(text, "unknown catalog entry")),
        };
        Ok(id)
    }
}

/// Structural matrix of a catalog algebra.
pub fn build_canonical(id: &CatalogId) -> Result<Algebra> {
    let h = Scalar::ratio(1, 2);
    let z = Scalar::zero;
    let (a, b): (Vec<Vec<Scalar>>, Vec<Scalar>) = match id {
        CatalogId::TwoC1 => (vec![vec![Scalar::one()]], vec![z()]),
        CatalogId::TwoC2 => (vec![vec![h.clone()]], vec![h.clone()]),
        CatalogId::C1 => (vec![vec![z(), z()], vec![z(), z()]], vec![h.clone(), z()]),
        CatalogId::C2 => (vec![vec![z(), h.clone()], vec![z(), z()]], vec![z(), z()]),
        CatalogId::C3 => (vec![vec![h.clone(), z()], vec![z(), z()]], vec![h.clone(), z()]),
        CatalogId::C4 => (vec![vec![h.clone(), h.clone()], vec![z(), h.clone()]], vec![z(), z()]),
        CatalogId::C5 { beta } => {
            if beta.is_zero() {
                return Err(EacpError::InvalidArgument("C5 requires beta ≠ 0".into()));
            }
            (vec![vec![h.clone(), z()], vec![z(), beta * &h]], vec![z(), z()])
        }
        CatalogId::C6 { alpha, beta } => {
            (vec![vec![alpha * &h, beta * &h], vec![h.clone(), z()]], vec![h.clone(), z()])
        }
        CatalogId::C7 { alpha } => (vec![vec![alpha * &h, z()], vec![z(), h.clone()]], vec![h.clone(), z()]),
        CatalogId::C8 => (vec![vec![h.clone(), h.clone()], vec![z(), h.clone()]], vec![h.clone(), z()]),
    };
    Ok(Algebra::from_rows(a, b)?.with_label(id.to_string()))
}

/// `dim C² = rank M`.
pub fn derived_dimension(alg: &Algebra) -> usize {
    alg.derived_dimension()
}

/// A named subspace given by a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedSubspace {
    pub name: String,
    pub basis: Vec<Element>,
}

/// `D_1 = {h1}`, `D_2 = {h1, h2}`, `D_3 = {h1, r}`, `D_4 = {h2}`,
/// `D_5 = {h2, r}`, `D_6 = {r}`.
pub fn candidate_subspaces_3d(n: usize) -> Result<Vec<NamedSubspace>> {
    if n != 2 {
        return Err(EacpError::DimensionMismatch(format!("D1..D6 are defined for n = 2, got n = {n}")));
    }
    let h1 = Element::h(2, 0);
    let h2 = Element::h(2, 1);
    let r = Element::r(2);
    let sets = [
        vec![h1.clone()],
        vec![h1.clone(), h2.clone()],
        vec![h1, r.clone()],
        vec![h2.clone()],
        vec![h2, r.clone()],
        vec![r],
    ];
    Ok(sets
        .into_iter()
        .enumerate()
        .map(|(k, basis)| NamedSubspace { name: format!("D{}", k + 1), basis })
        .collect())
}

/// Outcome of the plain ideal test; `escape` is `(g, v, g·v)` for the
/// first product leaving the span.
#[derive(Clone, Debug, PartialEq)]
pub struct PlainIdealCheck {
    pub is_ideal: bool,
    pub escape: Option<(Element, Element, Element)>,
}

/// `C·I ⊆ I`, checked on generators against a basis of `I`.
pub fn is_plain_ideal(alg: &Algebra, sub: &[Element]) -> Result<PlainIdealCheck> {
    let coords: Vec<Vec<Scalar>> = sub.iter().map(Element::coords).collect();
    if !matrix::is_independent(&coords) {
        return Err(EacpError::DependentVectors);
    }
    for g in alg.generators() {
        let ge = alg.element(g);
        for v in sub {
            let p = alg.multiply(&ge, v)?;
            if !matrix::in_span(&coords, &p.coords()) {
                return Ok(PlainIdealCheck { is_ideal: false, escape: Some((ge, v.clone(), p)) });
            }
        }
    }
    Ok(PlainIdealCheck { is_ideal: true, escape: None })
}

/// Natural basis of an ideal, if any. One-dimensional closed subspaces
/// `span{x}` count with the single-vector basis `{x}` even when `x² ≠ 0`.
pub fn evolution_basis(alg: &Algebra, sub: &[Element]) -> Result<Option<SubalgebraBasis>> {
    let coords: Vec<Vec<Scalar>> = sub.iter().map(Element::coords).collect();
    if matrix::rank_of(&coords) == 1 {
        basis::check_closed(alg, sub)?;
        return Ok(Some(SubalgebraBasis::new(Vec::new(), sub[0].clone())));
    }
    Ok(basis::find_natural_basis(alg, sub)?.basis)
}

/// Plain ideal that also has a natural basis.
pub fn is_evolution_ideal(alg: &Algebra, sub: &[Element]) -> Result<bool> {
    if sub.len() > 3 {
        return Err(EacpError::InvalidArgument("evolution ideal test is limited to dimension ≤ 3".into()));
    }
    if !is_plain_ideal(alg, sub)?.is_ideal {
        return Ok(false);
    }
    Ok(evolution_basis(alg, sub)?.is_some())
}
