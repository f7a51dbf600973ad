//! Identification of 3-dimensional evolution algebras with a catalog entry.
//!
//! Every match comes with an explicit natural basis change that is checked
//! by recomputing the structural matrix.

use serde_json::{json, Value};

use crate::algebra::{Algebra, Element};
use crate::basis::BasisChange;
use crate::catalog::{build_canonical, CatalogId};
use crate::error::{EacpError, Result};
use crate::format;
use crate::matrix::{self, Matrix};
use crate::poly;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Classification {
    Matched { id: CatalogId, change: BasisChange },
    Undetermined { reason: String, invariants: Value },
}

impl Classification {
    pub fn id(&self) -> Option<&CatalogId> {
        match self {
            Classification::Matched { id, .. } => Some(id),
            Classification::Undetermined { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Classification::Matched { id, change } => json!({
                "matched": true,
                "catalog": id.to_string(),
                "basis_change": change.to_json(),
            }),
            Classification::Undetermined { reason, invariants } => json!({
                "matched": false,
                "reason": reason,
                "invariants": invariants,
            }),
        }
    }
}

/// Invariants reported when no catalog entry is found.
pub fn invariant_report(alg: &Algebra) -> Value {
    let a = alg.a();
    let b = alg.b();
    let cyclic = a.rows() == 2 && !matrix::is_zero_vec(b) && {
        let ab = a.mul_vec(b);
        matrix::is_independent(&[b.to_vec(), ab])
    };
    json!({
        "dim": alg.dim(),
        "rank_m": alg.derived_dimension(),
        "b_zero": matrix::is_zero_vec(b),
        "trace_a": format::scalar_to_json(&a.trace()),
        "det_a": format::scalar_to_json(&a.det()),
        "b_cyclic_for_a": cyclic,
        "field": alg.field().name(),
    })
}

fn undetermined(alg: &Algebra, reason: impl Into<String>) -> Classification {
    Classification::Undetermined { reason: reason.into(), invariants: invariant_report(alg) }
}

/// Accepts `change` only if it turns `alg` into exactly the catalog algebra.
fn confirm(alg: &Algebra, id: CatalogId, vectors: Vec<Element>) -> Result<Option<Classification>> {
    let change = match BasisChange::from_vectors(&vectors) {
        Ok(c) => c,
        Err(_) => return Ok(None),
    };
    let target = build_canonical(&id)?;
    let image = match change.apply(alg) {
        Ok(x) => x,
        Err(EacpError::NotNaturalBasis(_)) | Err(EacpError::DependentVectors) => return Ok(None),
        Err(e) => return Err(e),
    };
    if image.a() == target.a() && image.b() == target.b() {
        Ok(Some(Classification::Matched { id, change }))
    } else {
        Ok(None)
    }
}

/// Classifies a 3-dimensional evolution algebra.
pub fn classify_3d(alg: &Algebra) -> Result<Classification> {
    if alg.dim() != 3 {
        return Err(EacpError::DimensionMismatch(format!("classification needs dimension 3, got {}", alg.dim())));
    }
    let found = match alg.derived_dimension() {
        0 => return Ok(undetermined(alg, "zero multiplication is not in the catalog")),
        1 => rank_one(alg)?,
        _ => rank_two(alg)?,
    };
    Ok(found.unwrap_or_else(|| undetermined(alg, "no verified basis change to a catalog algebra")))
}

/// `M = u wᵀ`: every product is a multiple of `w = (w_h, w_r)` and the
/// class is decided by `w_r` and `τ = w_h·u`.
fn rank_one(alg: &Algebra) -> Result<Option<Classification>> {
    let m = alg.structural().to_matrix();
    let i = (0..2).find(|&i| !matrix::is_zero_vec(m.row(i))).expect("rank one");
    let k = (0..3).find(|&k| !m[(i, k)].is_zero()).expect("nonzero row");
    let w = m.row(i).to_vec();
    let u: Vec<Scalar> = (0..2).map(|j| &m[(j, k)] / &m[(i, k)]).collect();
    let tau = &(&w[0] * &u[0]) + &(&w[1] * &u[1]);
    let w_r = w[2].clone();

    let h = |a: Scalar, b: Scalar| Element::new(vec![a, b], Scalar::zero());
    // h-vectors with f = 1 and f = 0, where f(α) = α·u
    let ku = (0..2).find(|&j| !u[j].is_zero()).expect("u ≠ 0");
    let mut one = [Scalar::zero(), Scalar::zero()];
    one[ku] = u[ku].inv().expect("nonzero");
    let f_one = h(one[0].clone(), one[1].clone());
    let f_zero = h(-u[1].clone(), u[0].clone());
    let we = Element::from_coords(&w);
    let r = Element::r(2);

    match (w_r.is_zero(), tau.is_zero()) {
        (true, true) => confirm(alg, CatalogId::C2, vec![f_one, we.scale(&Scalar::from_i64(2)), r]),
        (false, true) => {
            let d = (&Scalar::from_i64(2) * &w_r).inv().expect("nonzero");
            let e3 = we.scale(&w_r.inv().expect("nonzero"));
            confirm(alg, CatalogId::C1, vec![f_one.scale(&d), f_zero, e3])
        }
        (true, false) => {
            let c = (&Scalar::from_i64(2) * &tau).inv().expect("nonzero");
            let e3 = we.scale(&(&Scalar::from_i64(2) * &c));
            confirm(alg, CatalogId::C1, vec![r.scale(&c), f_zero, e3])
        }
        (false, false) => {
            let d = (&Scalar::from_i64(2) * &w_r).inv().expect("nonzero");
            let c = (&Scalar::from_i64(2) * &tau).inv().expect("nonzero");
            let e1 = f_one.scale(&d);
            let e3 = we.scale(&(&(&Scalar::from_i64(2) * &c) * &d)).sub(&e1);
            confirm(alg, CatalogId::C3, vec![e1, f_zero, e3])
        }
    }
}

fn eigenvalues(a: &Matrix, float: bool) -> Option<Vec<Scalar>> {
    let roots = poly::roots(&poly::charpoly(a));
    let mut all: Vec<Scalar> = Vec::new();
    for (v, mult) in &roots.exact {
        all.extend(std::iter::repeat_n(v.clone(), *mult));
    }
    if !roots.approximate.is_empty() {
        if !float {
            return None;
        }
        all.extend(roots.approximate.iter().cloned());
    }
    all.sort_by(|x, y| x.total_cmp(y));
    Some(all)
}

/// Rank two: `L = 0`, so natural bases are `h' = P h`, `r' = λ r`, giving
/// `A' = λ P A P⁻¹`, `b' = P b`.
fn rank_two(alg: &Algebra) -> Result<Option<Classification>> {
    let a = alg.a().clone();
    let b = alg.b().to_vec();
    let float = !alg.field().is_exact();
    let Some(mu) = eigenvalues(&a, float) else {
        return Ok(None);
    };
    if mu.len() != 2 {
        return Ok(None);
    }
    let two = Scalar::from_i64(2);
    let (id, lambda) = if matrix::is_zero_vec(&b) {
        let (m1, m2) = (&mu[0], &mu[1]);
        if m1 == m2 {
            let lambda = (&two * m1).inv().expect("invertible A");
            if a.shift(m1).is_zero() {
                (CatalogId::C5 { beta: Scalar::one() }, lambda)
            } else {
                (CatalogId::C4, lambda)
            }
        } else {
            (CatalogId::C5 { beta: m2 / m1 }, (&two * m1).inv().expect("invertible A"))
        }
    } else {
        let ab = a.mul_vec(&b);
        if matrix::is_independent(&[b.clone(), ab.clone()]) {
            let tr = a.trace();
            let det = a.det();
            if !tr.is_zero() {
                let lambda = (&two * &tr).inv().expect("nonzero");
                let beta = -(&(&Scalar::from_i64(4) * &(&lambda * &lambda)) * &det);
                (CatalogId::C6 { alpha: Scalar::one(), beta }, lambda)
            } else if det.is_zero() {
                (CatalogId::C6 { alpha: Scalar::zero(), beta: Scalar::zero() }, Scalar::one())
            } else {
                let l2 = -(&Scalar::from_i64(4) * &det).inv().expect("nonzero");
                let lambda = match l2.sqrt_exact() {
                    Some(l) => l,
                    None if float => l2.sqrt(match alg.field() { crate::scalar::Field::Float(e) => e, _ => crate::scalar::DEFAULT_EPSILON }),
                    None => return Ok(None),
                };
                (CatalogId::C6 { alpha: Scalar::zero(), beta: Scalar::one() }, lambda)
            }
        } else {
            // A b = μ b; ν is the other eigenvalue
            let k = (0..2).find(|&k| !b[k].is_zero()).expect("b ≠ 0");
            let m_b = &ab[k] / &b[k];
            let nu = &a.trace() - &m_b;
            if nu.is_zero() {
                return Ok(None);
            }
            let lambda = (&two * &nu).inv().expect("nonzero");
            if m_b != nu || a.shift(&nu).is_zero() {
                (CatalogId::C7 { alpha: &m_b / &nu }, lambda)
            } else {
                (CatalogId::C8, lambda)
            }
        }
    };
    let target = build_canonical(&id)?;
    for p in intertwiners(&a, &b, target.a(), target.b(), &lambda) {
        let mut vectors: Vec<Element> =
            p.to_rows().into_iter().map(|row| Element::new(row, Scalar::zero())).collect();
        vectors.push(Element::r(2).scale(&lambda));
        if let Some(c) = confirm(alg, id.clone(), vectors)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Invertible `P` with `λ P A = A' P` and `P b = b'`, from the affine
/// solution set.
fn intertwiners(a: &Matrix, b: &[Scalar], at: &Matrix, bt: &[Scalar], lambda: &Scalar) -> Vec<Matrix> {
    let n = a.rows();
    let var = |i: usize, j: usize| i * n + j;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut eq = vec![Scalar::zero(); n * n];
            for k in 0..n {
                eq[var(i, k)] += &(lambda * &a[(k, j)]);
                eq[var(k, j)] -= &at[(i, k)];
            }
            rows.push(eq);
            rhs.push(Scalar::zero());
        }
    }
    for i in 0..n {
        let mut eq = vec![Scalar::zero(); n * n];
        for k in 0..n {
            eq[var(i, k)] = b[k].clone();
        }
        rows.push(eq);
        rhs.push(bt[i].clone());
    }
    let Some((x0, kernel)) = Matrix::from_rows(rows).ok().and_then(|m| m.solve(&rhs)) else {
        return Vec::new();
    };
    let coeffs = [0i64, 1, -1, 2];
    let mut out = Vec::new();
    let total = coeffs.len().pow(kernel.len() as u32);
    for code in 0..total {
        let mut x = x0.clone();
        let mut c = code;
        for kv in &kernel {
            let s = Scalar::from_i64(coeffs[c % coeffs.len()]);
            c /= coeffs.len();
            x = matrix::add_vec(&x, &matrix::scale_vec(kv, &s));
        }
        let p = Matrix::from_rows(x.chunks(n).map(<[Scalar]>::to_vec).collect()).expect("square");
        if !p.det().is_zero() {
            out.push(p);
            if out.len() >= 4 {
                break;
            }
        }
    }
    out
}

/// `C6(α, β) ≅ C6(α', β')` iff `α²β' = α'²β` and `α = 0 ⇔ α' = 0`, with
/// `β = 0 ⇔ β' = 0`; `C5(β) ≅ C5(1/β)`; other entries match exactly.
pub fn same_class(x: &CatalogId, y: &CatalogId) -> bool {
    match (x, y) {
        (CatalogId::C5 { beta: b1 }, CatalogId::C5 { beta: b2 }) => {
            b1 == b2 || (&(b1 * b2) - &Scalar::one()).is_zero()
        }
        (CatalogId::C6 { alpha: a1, beta: b1 }, CatalogId::C6 { alpha: a2, beta: b2 }) => {
            a1.is_zero() == a2.is_zero()
                && b1.is_zero() == b2.is_zero()
                && &(a1 * a1) * b2 == &(a2 * a2) * b1
        }
        _ => x == y,
    }
}
