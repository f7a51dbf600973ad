//! Simplicity of evolution algebras of dimension 2 and 3.
//!
//! A proper nonzero evolution ideal is searched in two passes: lines (common
//! left eigenvectors of the right multiplication operators) and, in
//! dimension 3, hyperplanes `ker φ` where `φ` is a common eigenvector of the
//! transposed operators. A line `span{x}` counts with the one-vector basis
//! `{x}`. A hyperplane counts only if it has a natural basis.

use serde_json::{json, Value};

use crate::algebra::{Algebra, Element};
use crate::basis::SubalgebraBasis;
use crate::catalog;
use crate::eigen;
use crate::error::{EacpError, Result};
use crate::matrix;
use crate::scalar::Scalar;
use crate::substructure::{self, IdealWitness};

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessKind {
    Line,
    Hyperplane,
}

/// A verified proper evolution ideal.
#[derive(Clone, Debug)]
pub struct SimplicityWitness {
    pub kind: WitnessKind,
    pub ideal: IdealWitness,
    pub natural_basis: SubalgebraBasis,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Simple,
    NotSimple(Box<SimplicityWitness>),
    Undetermined(String),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Simple => "simple",
            Verdict::NotSimple(_) => "not_simple",
            Verdict::Undetermined(_) => "undetermined",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SimplicityReport {
    pub verdict: Verdict,
    /// Hyperplane ideals that have no natural basis.
    pub plain_only: Vec<Vec<Element>>,
    pub certified: bool,
    pub notes: Vec<String>,
}

impl SimplicityReport {
    pub fn is_simple(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Simple => Some(true),
            Verdict::NotSimple(_) => Some(false),
            Verdict::Undetermined(_) => None,
        }
    }

    pub fn to_json(&self, n: usize) -> Value {
        let mut v = json!({
            "verdict": self.verdict.name(),
            "certified": self.certified,
            "plain_ideals_without_natural_basis": self.plain_only.iter()
                .map(|b| b.iter().map(Element::display).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "notes": self.notes,
        });
        match &self.verdict {
            Verdict::NotSimple(w) => {
                v["witness"] = json!({
                    "kind": match w.kind { WitnessKind::Line => "line", WitnessKind::Hyperplane => "hyperplane" },
                    "ideal": w.ideal.to_json(n),
                    "natural_basis": w.natural_basis.to_json(),
                });
            }
            Verdict::Undetermined(reason) => v["reason"] = json!(reason),
            Verdict::Simple => {}
        }
        v
    }
}

fn hyperplane(phi: &[Scalar]) -> Vec<Element> {
    matrix::annihilator(&[phi.to_vec()], phi.len()).iter().map(|v| Element::from_coords(v)).collect()
}

/// Members of a family `Φ` that must contain a hyperplane with natural basis
/// whenever one exists: the basis of `Φ`, a basis of `Φ ∩ {φ_r = 0}`, and
/// `e_r` if it lies in `Φ`.
fn hyperplane_candidates(family: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = family.iter().map(|v| matrix::normalize_vec(v)).collect();
    let r_free: Vec<Vec<Scalar>> = (0..dim - 1).map(|j| matrix::unit(dim, j)).collect();
    out.extend(matrix::intersect(family, &r_free, dim).iter().map(|v| matrix::normalize_vec(v)));
    let er = matrix::unit(dim, dim - 1);
    if matrix::in_span(family, &er) {
        out.push(er);
    }
    out
}

/// Decides simplicity for algebras of dimension 2 or 3.
pub fn is_simple(alg: &Algebra) -> Result<SimplicityReport> {
    let dim = alg.dim();
    if dim > 3 {
        return Err(EacpError::InvalidArgument(format!("simplicity is decided for dimension ≤ 3, got {dim}")));
    }
    let mut notes = Vec::new();
    let lines = substructure::one_dim_ideals(alg)?;
    let mut certified = lines.certified;
    notes.extend(lines.notes.iter().cloned());
    let mut complete = lines.complete;

    if let Some(x) = lines.lines().into_iter().next() {
        let basis = catalog::evolution_basis(alg, std::slice::from_ref(&x))?
            .ok_or_else(|| EacpError::InvariantViolated(format!("ideal line {x} not closed")))?;
        let ideal = IdealWitness::for_line(alg, &x)
            .ok_or_else(|| EacpError::InvariantViolated(format!("line {x} failed re-verification")))?;
        return Ok(SimplicityReport {
            verdict: Verdict::NotSimple(Box::new(SimplicityWitness {
                kind: WitnessKind::Line,
                ideal,
                natural_basis: basis,
            })),
            plain_only: Vec::new(),
            certified,
            notes,
        });
    }

    let mut plain_only = Vec::new();
    if dim == 3 {
        let ops: Vec<_> = substructure::operators(alg).iter().map(|t| t.transpose()).collect();
        let common = eigen::common_left_eigenspaces(&ops, dim);
        complete &= common.complete;
        certified &= common.certified;
        notes.extend(common.notes.iter().cloned());
        let mut spaces = common.spaces.clone();
        spaces.sort_by(|a, b| matrix::cmp_vec(&a.basis[0], &b.basis[0]));
        for space in &spaces {
            for phi in hyperplane_candidates(&space.basis, dim) {
                let w = hyperplane(&phi);
                let ideal = IdealWitness::for_subspace(alg, &w).ok_or_else(|| {
                    EacpError::InvariantViolated("hyperplane from a common eigenvector is not an ideal".into())
                })?;
                match catalog::evolution_basis(alg, &w)? {
                    Some(nb) => {
                        return Ok(SimplicityReport {
                            verdict: Verdict::NotSimple(Box::new(SimplicityWitness {
                                kind: WitnessKind::Hyperplane,
                                ideal,
                                natural_basis: nb,
                            })),
                            plain_only,
                            certified,
                            notes,
                        });
                    }
                    None => {
                        if !plain_only.iter().any(|b: &Vec<Element>| same_span(b, &w)) {
                            plain_only.push(w);
                        }
                    }
                }
            }
        }
    }

    let verdict = if complete {
        Verdict::Simple
    } else {
        Verdict::Undetermined("some eigenvalues lie outside the supported exact fields".into())
    };
    Ok(SimplicityReport { verdict, plain_only, certified, notes })
}

fn same_span(a: &[Element], b: &[Element]) -> bool {
    let ac: Vec<_> = a.iter().map(Element::coords).collect();
    let bc: Vec<_> = b.iter().map(Element::coords).collect();
    ac.len() == bc.len() && bc.iter().all(|v| matrix::in_span(&ac, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_canonical, CatalogId};

    fn report(s: &str) -> SimplicityReport {
        is_simple(&build_canonical(&s.parse::<CatalogId>().unwrap()).unwrap()).unwrap()
    }

    fn witness(r: &SimplicityReport) -> &SimplicityWitness {
        match &r.verdict {
            Verdict::NotSimple(w) => w,
            v => panic!("expected a witness, got {}", v.name()),
        }
    }

    #[test]
    fn two_dim() {
        let r1 = report("2d:C1");
        assert_eq!(witness(&r1).ideal.basis, vec![Element::h(1, 0)]);
        let r2 = report("2d:C2");
        let x = Element::new(vec![Scalar::one()], Scalar::one());
        assert_eq!(witness(&r2).ideal.basis, vec![x]);
    }

    #[test]
    fn c6_family() {
        let simple = report("3d:C6(1,1)");
        assert_eq!(simple.is_simple(), Some(true));
        assert_eq!(simple.plain_only.len(), 1);
        let d3 = report("3d:C6(1,0)");
        let w = witness(&d3);
        assert_eq!(w.kind, WitnessKind::Hyperplane);
        let span: Vec<Vec<Scalar>> = w.ideal.basis.iter().map(Element::coords).collect();
        assert!(matrix::in_span(&span, &Element::h(2, 0).coords()));
        assert!(matrix::in_span(&span, &Element::r(2).coords()));
        assert_eq!(report("3d:C6(0,-2)").is_simple(), Some(true));
    }

    #[test]
    fn others_not_simple() {
        for s in ["3d:C1", "3d:C2", "3d:C3", "3d:C4", "3d:C5(2)", "3d:C7(3)", "3d:C8"] {
            assert_eq!(report(s).is_simple(), Some(false), "{s}");
        }
    }

    #[test]
    fn too_large() {
        let alg = Algebra::from_ratios(
            &[&[(1, 1), (0, 1), (0, 1)], &[(0, 1), (1, 1), (0, 1)], &[(0, 1), (0, 1), (1, 1)]],
            &[(1, 1), (0, 1), (0, 1)],
        )
        .unwrap();
        assert!(is_simple(&alg).is_err());
    }
}
