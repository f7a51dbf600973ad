//! Common eigenvectors of a family of operators acting on row vectors.
//!
//! Each operator is processed in turn. A current subspace `V` is first cut
//! down to its largest `T`-invariant subspace `U` (every common eigenvector
//! in `V` lies there), `T` is restricted to `U`, and `U` splits along the
//! left eigenspaces of the restriction. Only restricted characteristic
//! polynomials are ever factored, which keeps degrees small.

use crate::matrix::{self, Matrix};
use crate::poly;
use crate::scalar::Scalar;

/// A subspace whose nonzero vectors are all common left eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct CommonEigenspace {
    pub basis: Vec<Vec<Scalar>>,
    /// One eigenvalue per operator, in input order.
    pub eigenvalues: Vec<Scalar>,
}

#[derive(Clone, Debug, Default)]
pub struct CommonEigen {
    pub spaces: Vec<CommonEigenspace>,
    /// False when some eigenvalue could only be approximated over an exact
    /// field, so eigenspaces may be missing.
    pub complete: bool,
    /// False when any returned vector came from floating-point data.
    pub certified: bool,
    pub notes: Vec<String>,
}

/// Largest subspace `U ⊆ span(basis)` with `U·T ⊆ U`.
pub fn largest_invariant_subspace(basis: &[Vec<Scalar>], t: &Matrix) -> Vec<Vec<Scalar>> {
    let dim = t.rows();
    let mut u = matrix::span_basis(basis, dim);
    loop {
        if u.is_empty() {
            return u;
        }
        let ann = matrix::annihilator(&u, dim);
        if ann.is_empty() {
            return u;
        }
        // c ↦ (c U T) · ann must vanish
        let ut = Matrix::from_rows(u.iter().map(|v| t.vec_mul(v)).collect()).expect("rectangular");
        let annt = Matrix::from_rows(ann).expect("rectangular").transpose();
        let cond = ut.mul(&annt).expect("conformable");
        let coeffs = cond.left_kernel();
        if coeffs.len() == u.len() {
            return u;
        }
        let basis_m = Matrix::from_rows(u.clone()).expect("rectangular");
        u = matrix::span_basis(&coeffs.iter().map(|c| basis_m.vec_mul(c)).collect::<Vec<_>>(), dim);
    }
}

/// Matrix `R` with `U T = R U` for a `T`-invariant `U` (rows of `u`).
pub fn restriction(u: &[Vec<Scalar>], t: &Matrix) -> Matrix {
    let rows = u
        .iter()
        .map(|v| matrix::coordinates(u, &t.vec_mul(v)).expect("invariant subspace"))
        .collect();
    Matrix::from_rows(rows).expect("square")
}

/// Splits every subspace of `current` along the left eigenspaces of `t`.
fn split(current: Vec<CommonEigenspace>, t: &Matrix, exact_field: bool, out: &mut CommonEigen) -> Vec<CommonEigenspace> {
    let mut next = Vec::new();
    for space in current {
        let u = largest_invariant_subspace(&space.basis, t);
        if u.is_empty() {
            continue;
        }
        let r = restriction(&u, t);
        let roots = poly::roots(&poly::charpoly(&r));
        let mut values = roots.distinct_exact();
        if !roots.approximate.is_empty() {
            if exact_field {
                out.complete = false;
                out.notes.push(format!(
                    "{} eigenvalue(s) of a {}x{} restriction are not in a quadratic extension",
                    roots.approximate.len(),
                    r.rows(),
                    r.rows()
                ));
            } else {
                out.certified = false;
                for z in roots.approximate {
                    if !values.contains(&z) {
                        values.push(z);
                    }
                }
            }
        }
        values.sort_by(|a, b| a.total_cmp(b));
        let um = Matrix::from_rows(u.clone()).expect("rectangular");
        for lambda in values {
            let coeffs = r.shift(&lambda).left_kernel();
            if coeffs.is_empty() {
                continue;
            }
            let vecs: Vec<Vec<Scalar>> = coeffs.iter().map(|c| um.vec_mul(c)).collect();
            let mut eigenvalues = space.eigenvalues.clone();
            eigenvalues.push(lambda);
            next.push(CommonEigenspace { basis: matrix::span_basis(&vecs, t.rows()), eigenvalues });
        }
    }
    next
}

/// Common left eigenspaces of `ops` (all square of side `dim`).
pub fn common_left_eigenspaces(ops: &[Matrix], dim: usize) -> CommonEigen {
    let exact_field = ops.iter().all(|t| t.entries().all(Scalar::is_exact));
    let mut out = CommonEigen { spaces: Vec::new(), complete: true, certified: exact_field, notes: Vec::new() };
    let mut current = vec![CommonEigenspace {
        basis: (0..dim).map(|k| matrix::unit(dim, k)).collect(),
        eigenvalues: Vec::new(),
    }];
    for t in ops {
        current = split(current, t, exact_field, &mut out);
    }
    out.spaces = current;
    out
}
