//! Nilpotents, idempotents, one-dimensional subalgebras and ideals.
//!
//! Everything is driven by the defining equations and re-checked by direct
//! multiplication:
//!
//! * `x² = 2β(αᵀA, αᵀb)`, so `x² = 0` iff `β = 0` or `αᵀA = 0, αᵀb = 0`;
//! * `x² = x` iff `β ≠ 0`, `αᵀA = αᵀ/(2β)` and `αᵀb = 1/2`;
//! * `span{x}` is an ideal iff `x` is a left eigenvector of every right
//!   multiplication operator `R_{h_1}, …, R_{h_n}, R_r`.

use serde_json::{json, Value};

use crate::algebra::{Algebra, Element};
use crate::basis;
use crate::eigen::{self, CommonEigen};
use crate::error::{EacpError, Result};
use crate::format;
use crate::matrix::{self, Matrix};
use crate::poly;
use crate::scalar::Scalar;

/// True iff `x² ∈ span{x}` (`x ≠ 0`).
pub fn spans_subalgebra(alg: &Algebra, x: &Element) -> Result<bool> {
    let sq = alg.square(x)?;
    Ok(matrix::in_span(&[x.coords()], &sq.coords()))
}

/// True iff `x·g ∈ span{x}` for every generator `g` (`x ≠ 0`).
pub fn spans_ideal(alg: &Algebra, x: &Element) -> Result<bool> {
    for g in alg.generators() {
        let p = alg.multiply(x, &alg.element(g))?;
        if !matrix::in_span(&[x.coords()], &p.coords()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The square-zero set as the union of two subspaces.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentSet {
    /// `β = 0`: the span of `h_1, …, h_n`.
    pub h_span: Vec<Element>,
    /// `L ⊕ ⟨r⟩` with `L` the left kernel of `M`.
    pub kernel_span: Vec<Element>,
}

impl NilpotentSet {
    pub fn contains(&self, x: &Element) -> bool {
        let h: Vec<Vec<Scalar>> = self.h_span.iter().map(Element::coords).collect();
        let q: Vec<Vec<Scalar>> = self.kernel_span.iter().map(Element::coords).collect();
        matrix::in_span(&h, &x.coords()) || matrix::in_span(&q, &x.coords())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pieces": [
                {"description": "beta = 0", "basis": self.h_span.iter().map(format::element_to_json).collect::<Vec<_>>()},
                {"description": "alpha in left kernel of M, beta free", "basis": self.kernel_span.iter().map(format::element_to_json).collect::<Vec<_>>()},
            ]
        })
    }
}

pub fn absolute_nilpotents(alg: &Algebra) -> NilpotentSet {
    let n = alg.n();
    let set = NilpotentSet {
        h_span: (0..n).map(|i| Element::h(n, i)).collect(),
        kernel_span: basis::q0_basis(alg).iter().map(|v| Element::from_coords(v)).collect(),
    };
    for x in set.h_span.iter().chain(&set.kernel_span) {
        debug_assert!(alg.square(x).expect("same algebra").is_zero());
    }
    set
}

/// Idempotents sharing one eigenvalue: `x = y₀ + t·d + βr` for every `d` in
/// `directions` is idempotent.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentFamily {
    /// Left eigenvalue `λ = 1/(2β)` of `A`.
    pub eigenvalue: Scalar,
    pub beta: Scalar,
    /// A particular idempotent.
    pub particular: Element,
    /// Directions in `span(h)` preserving idempotency.
    pub directions: Vec<Element>,
    /// Exact, or from floating-point data.
    pub certified: bool,
}

impl IdempotentFamily {
    pub fn contains_line(&self, x: &Element) -> bool {
        if x.beta().is_zero() {
            return false;
        }
        let scaled = x.scale(&(&self.beta / x.beta()));
        let diff = scaled.sub(&self.particular);
        let dirs: Vec<Vec<Scalar>> = self.directions.iter().map(Element::coords).collect();
        diff.is_zero() || matrix::in_span(&dirs, &diff.coords())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "eigenvalue": format::scalar_to_json(&self.eigenvalue),
            "beta": format::scalar_to_json(&self.beta),
            "idempotent": format::element_to_json(&self.particular),
            "directions": self.directions.iter().map(format::element_to_json).collect::<Vec<_>>(),
            "certified": self.certified,
            "paper_convention": {
                "element": self.particular.scale(&Scalar::from_i64(2)).display(),
                "eigenvalue": format::scalar_to_json(&(Scalar::one() / (Scalar::from_i64(2) * &self.beta))),
                "note": "the stated conditions (eigenvalue 1/beta, y.b = 1) hold for 2x, where (2x)^2 = 2(2x)",
            },
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Idempotents {
    pub families: Vec<IdempotentFamily>,
    pub complete: bool,
    pub notes: Vec<String>,
}

impl Idempotents {
    pub fn contains_line(&self, x: &Element) -> bool {
        self.families.iter().any(|f| f.contains_line(x))
    }
}

fn left_eigenvalues(a: &Matrix) -> (Vec<Scalar>, Vec<Scalar>) {
    let roots = poly::roots(&poly::charpoly(a));
    let mut exact = roots.distinct_exact();
    exact.sort_by(|x, y| x.total_cmp(y));
    (exact, roots.approximate)
}

/// All idempotents, grouped by eigenvalue.
pub fn idempotents(alg: &Algebra) -> Idempotents {
    let a = alg.a();
    let b = alg.b();
    let exact_field = alg.field().is_exact();
    let (mut values, approx) = left_eigenvalues(a);
    let mut out = Idempotents { families: Vec::new(), complete: true, notes: Vec::new() };
    if !approx.is_empty() {
        if exact_field {
            out.complete = false;
            out.notes.push(format!("{} eigenvalue(s) of A are not in a quadratic extension", approx.len()));
        } else {
            values.extend(approx);
        }
    }
    let half = Scalar::ratio(1, 2);
    for lambda in values {
        if lambda.is_zero() {
            continue;
        }
        let space = a.shift(&lambda).left_kernel();
        if space.is_empty() {
            continue;
        }
        // y = Σ c_k v_k with y·b = 1/2
        let sm = Matrix::from_rows(space.clone()).expect("rectangular");
        let col = Matrix::from_rows(vec![sm.mul_vec(b)]).expect("row");
        let Some((c, kernel)) = col.solve(std::slice::from_ref(&half)) else { continue };
        let beta = Scalar::one() / (Scalar::from_i64(2) * &lambda);
        let particular = Element::new(sm.vec_mul(&c), beta.clone());
        let directions = kernel.iter().map(|k| Element::new(sm.vec_mul(k), Scalar::zero())).collect();
        let certified = particular.coords().iter().all(Scalar::is_exact);
        let ok = alg.square(&particular).map(|sq| sq == particular).unwrap_or(false);
        if !ok {
            out.complete = false;
            out.notes.push(format!("candidate {particular} failed the x² = x check"));
            continue;
        }
        out.families.push(IdempotentFamily { eigenvalue: lambda, beta, particular, directions, certified });
    }
    out
}

/// One-dimensional subalgebras: every square-zero line plus every
/// idempotent line.
#[derive(Clone, Debug)]
pub struct OneDimSubalgebras {
    pub nilpotent: NilpotentSet,
    pub idempotent: Idempotents,
}

impl OneDimSubalgebras {
    pub fn contains_line(&self, x: &Element) -> bool {
        !x.is_zero() && (self.nilpotent.contains(x) || self.idempotent.contains_line(x))
    }
}

pub fn one_dim_subalgebras(alg: &Algebra) -> OneDimSubalgebras {
    OneDimSubalgebras { nilpotent: absolute_nilpotents(alg), idempotent: idempotents(alg) }
}

/// Products `x·g = c·x` confirming that `span{x}` is an ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealWitness {
    pub basis: Vec<Element>,
    pub checked_products: Vec<(Element, Element, Scalar)>,
}

impl IdealWitness {
    /// Verifies the line `span{x}` and records every product; `None` if it
    /// is not an ideal.
    pub fn for_line(alg: &Algebra, x: &Element) -> Option<IdealWitness> {
        let mut checked = Vec::new();
        for g in alg.generators() {
            let y = alg.element(g);
            let p = alg.multiply(x, &y).ok()?;
            let c = matrix::proportionality(&p.coords(), &x.coords())?;
            checked.push((y, p, c));
        }
        Some(IdealWitness { basis: vec![x.clone()], checked_products: checked })
    }

    /// Verifies `span(basis)` against every generator.
    pub fn for_subspace(alg: &Algebra, basis_vecs: &[Element]) -> Option<IdealWitness> {
        let coords: Vec<Vec<Scalar>> = basis_vecs.iter().map(Element::coords).collect();
        let mut checked = Vec::new();
        for v in basis_vecs {
            for g in alg.generators() {
                let y = alg.element(g);
                let p = alg.multiply(v, &y).ok()?;
                if !matrix::in_span(&coords, &p.coords()) {
                    return None;
                }
                let c = matrix::proportionality(&p.coords(), &v.coords()).unwrap_or_else(Scalar::zero);
                checked.push((y, p, c));
            }
        }
        Some(IdealWitness { basis: basis_vecs.to_vec(), checked_products: checked })
    }

    pub fn to_json(&self, n: usize) -> Value {
        json!({
            "basis": self.basis.iter().map(Element::display).collect::<Vec<_>>(),
            "checked_products": self.checked_products.iter().map(|(y, p, c)| json!({
                "y": y.display(),
                "product": p.display(),
                "scalar": format::scalar_to_json(c),
            })).collect::<Vec<_>>(),
            "n": n,
        })
    }
}

/// A subspace of common eigenvectors; every nonzero vector spans an ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealFamily {
    pub basis: Vec<Element>,
    /// Eigenvalues for `R_{h_1}, …, R_{h_n}, R_r`.
    pub eigenvalues: Vec<Scalar>,
    pub witnesses: Vec<IdealWitness>,
}

#[derive(Clone, Debug)]
pub struct OneDimIdeals {
    pub families: Vec<IdealFamily>,
    pub complete: bool,
    pub certified: bool,
    pub notes: Vec<String>,
}

impl OneDimIdeals {
    pub fn contains_line(&self, x: &Element) -> bool {
        self.families.iter().any(|f| {
            let b: Vec<Vec<Scalar>> = f.basis.iter().map(Element::coords).collect();
            matrix::in_span(&b, &x.coords())
        })
    }

    /// Representative lines in deterministic order.
    pub fn lines(&self) -> Vec<Element> {
        let mut v: Vec<Element> = self.families.iter().flat_map(|f| f.basis.clone()).collect();
        v.sort_by(|a, b| matrix::cmp_vec(&a.coords(), &b.coords()));
        v
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }
}

/// Right multiplication operators `R_{h_1}, …, R_{h_n}, R_r` (row action).
pub fn operators(alg: &Algebra) -> Vec<Matrix> {
    alg.generators().into_iter().map(|g| alg.right_operator_matrix(g)).collect()
}

fn normalized_basis(vectors: &[Vec<Scalar>]) -> Vec<Element> {
    let dim = vectors.first().map_or(0, Vec::len);
    // reduced echelon basis, each vector scaled to a leading 1
    let mut b: Vec<Element> =
        matrix::span_basis(vectors, dim).iter().map(|v| Element::from_coords(&matrix::normalize_vec(v))).collect();
    b.sort_by(|x, y| matrix::cmp_vec(&x.coords(), &y.coords()));
    b
}

fn families_from(alg: &Algebra, common: &CommonEigen) -> Result<Vec<IdealFamily>> {
    let mut families = Vec::new();
    for space in &common.spaces {
        let basis_vecs = normalized_basis(&space.basis);
        let mut witnesses = Vec::new();
        for x in &basis_vecs {
            let w = IdealWitness::for_line(alg, x).ok_or_else(|| {
                EacpError::InvariantViolated(format!("common eigenvector {x} does not span an ideal"))
            })?;
            witnesses.push(w);
        }
        families.push(IdealFamily { basis: basis_vecs, eigenvalues: space.eigenvalues.clone(), witnesses });
    }
    families.sort_by(|a, b| matrix::cmp_vec(&a.basis[0].coords(), &b.basis[0].coords()));
    Ok(families)
}

/// All one-dimensional ideals as common-eigenvector subspaces.
pub fn one_dim_ideals(alg: &Algebra) -> Result<OneDimIdeals> {
    let common = eigen::common_left_eigenspaces(&operators(alg), alg.dim());
    Ok(OneDimIdeals {
        families: families_from(alg, &common)?,
        complete: common.complete,
        certified: common.certified,
        notes: common.notes,
    })
}

/// Subspaces produced by the two ideal criteria for canonical `δ = 1`
/// algebras, together with their agreement with [`one_dim_ideals`].
#[derive(Clone, Debug)]
pub struct PaperCriteria {
    /// Criterion (a): `β = α_1 = 0`, `Σ_{i≥2} a_i1 α_i = 0`, `(α_2..α_n)` a
    /// (left) eigenvector of the minor `A_1`.
    pub criterion_a: Vec<Vec<Element>>,
    /// Criterion (b): `x = h_1 r` when `a_kj = 0` for all `k ≥ 2`.
    pub criterion_b: Option<Element>,
    pub agrees: bool,
    pub complete: bool,
    pub note: String,
}

fn same_subspace(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    matrix::rank_of(a) == matrix::rank_of(b) && a.iter().all(|v| matrix::in_span(b, v))
}

/// Evaluates both criteria and compares with the general search.
pub fn paper_ideal_criteria(alg: &Algebra) -> Result<PaperCriteria> {
    if basis::canonical_delta(alg)? != 1 {
        return Err(EacpError::TheoremInapplicable("criteria are stated for canonical δ = 1 algebras".into()));
    }
    let n = alg.n();
    let a = alg.a();
    let mut complete = true;
    let mut criterion_a = Vec::new();
    if n >= 2 {
        let minor = Matrix::from_rows((1..n).map(|i| a.row(i)[1..].to_vec()).collect())?;
        let (values, approx) = left_eigenvalues(&minor);
        complete &= approx.is_empty() || !alg.field().is_exact();
        for mu in values {
            let space = minor.shift(&mu).left_kernel();
            // Σ_{i≥2} a_i1 α_i = 0 inside the eigenspace
            let first_col: Vec<Scalar> = (1..n).map(|i| a[(i, 0)].clone()).collect();
            let sm = Matrix::from_rows(space)?;
            let constraint = Matrix::from_rows(vec![sm.mul_vec(&first_col)])?;
            let coeffs = constraint.kernel();
            let vecs: Vec<Vec<Scalar>> = coeffs
                .iter()
                .map(|c| {
                    let tail = sm.vec_mul(c);
                    let mut v = vec![Scalar::zero()];
                    v.extend(tail);
                    v.push(Scalar::zero());
                    v
                })
                .collect();
            if !vecs.is_empty() {
                criterion_a.push(normalized_basis(&vecs));
            }
        }
    }
    let criterion_b = if (1..n).all(|k| matrix::is_zero_vec(a.row(k))) {
        Some(alg.multiply(&Element::h(n, 0), &Element::r(n))?)
    } else {
        None
    };

    let general = one_dim_ideals(alg)?;
    let mut paper_spaces: Vec<Vec<Vec<Scalar>>> =
        criterion_a.iter().map(|s| s.iter().map(Element::coords).collect()).collect();
    if let Some(x) = &criterion_b {
        paper_spaces.push(vec![x.coords()]);
    }
    let general_spaces: Vec<Vec<Vec<Scalar>>> =
        general.families.iter().map(|f| f.basis.iter().map(Element::coords).collect()).collect();
    let agrees = paper_spaces.len() == general_spaces.len()
        && paper_spaces.iter().all(|p| general_spaces.iter().any(|g| same_subspace(p, g)));
    Ok(PaperCriteria {
        criterion_a,
        criterion_b,
        agrees,
        complete: complete && general.complete,
        note: "criterion (a) is stated with a \"real\" eigenvalue; any ground-field eigenvalue is used here".into(),
    })
}

/// Shape of an evolution subalgebra when `rank A = n`.
#[derive(Clone, Debug, PartialEq)]
pub enum FullRankForm {
    /// `span(f) ⊕ span(a·r)`, `f ⊆ span(h)`, `a ∈ {0, 1}`.
    Decomposed { f: Vec<Element>, a: u8 },
    /// Closed but without a natural basis, so outside the statement.
    NotEvolution(String),
}

pub fn full_rank_subalgebra_form(alg: &Algebra, sub: &[Element]) -> Result<FullRankForm> {
    let n = alg.n();
    if alg.a().rank() != n {
        return Err(EacpError::TheoremInapplicable(format!("rank A = {} < n = {n}", alg.a().rank())));
    }
    let search = basis::find_natural_basis(alg, sub)?;
    if search.basis.is_none() {
        return Ok(FullRankForm::NotEvolution(search.obstruction.unwrap_or_default()));
    }
    let coords: Vec<Vec<Scalar>> = sub.iter().map(Element::coords).collect();
    let dim = n + 1;
    let s = matrix::span_basis(&coords, dim);
    let h_span: Vec<Vec<Scalar>> = (0..n).map(|j| matrix::unit(dim, j)).collect();
    let p = matrix::intersect(&s, &h_span, dim);
    let f = normalized_basis_or_empty(&p);
    if p.len() == s.len() {
        return Ok(FullRankForm::Decomposed { f, a: 0 });
    }
    if p.len() + 1 == s.len() && matrix::in_span(&s, &matrix::unit(dim, n)) {
        return Ok(FullRankForm::Decomposed { f, a: 1 });
    }
    Err(EacpError::InvariantViolated(
        "evolution subalgebra with rank A = n is not of the form span(h-part) ⊕ ⟨r⟩".into(),
    ))
}

fn normalized_basis_or_empty(v: &[Vec<Scalar>]) -> Vec<Element> {
    if v.is_empty() {
        Vec::new()
    } else {
        normalized_basis(v)
    }
}
