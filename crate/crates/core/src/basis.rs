//! Canonical form and natural bases of subspaces.
//!
//! A natural basis `{f_1, …, f_m, r'}` of a subspace `S` satisfies
//! `f_i f_j = 0`, `r'² = 0` and `f_i r' ∈ S`.
//!
//! Square-zero vectors have a simple shape: `x² = 2β(αᵀA, αᵀb)`, so `x² = 0`
//! iff `β = 0` or `α` is in the left kernel `L` of `M`. The square-zero cone
//! is therefore the union of the two subspaces `span(h)` and `L ⊕ ⟨r⟩`, and
//! [`find_natural_basis`] decides existence by linear algebra alone.

use serde_json::{json, Value};

use crate::algebra::{Algebra, Element};
use crate::error::{EacpError, Result};
use crate::format;
use crate::matrix::{self, Matrix};
use crate::scalar::Scalar;

/// Change of natural basis; row `k` of `p` is the `k`-th new basis vector
/// in old coordinates, the last row being the new `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange {
    pub p: Matrix,
}

impl BasisChange {
    pub fn identity(dim: usize) -> Self {
        BasisChange { p: Matrix::identity(dim) }
    }

    pub fn from_vectors(vectors: &[Element]) -> Result<Self> {
        let p = Matrix::from_rows(vectors.iter().map(Element::coords).collect())?;
        if p.inverse().is_none() {
            return Err(EacpError::DependentVectors);
        }
        Ok(BasisChange { p })
    }

    /// The algebra re-expressed in the new basis; fails unless natural.
    pub fn apply(&self, alg: &Algebra) -> Result<Algebra> {
        alg.change_basis(&self.p)
    }

    pub fn inverse(&self) -> BasisChange {
        BasisChange { p: self.p.inverse().expect("invertible by construction") }
    }

    /// New-basis coordinates of an old-basis element.
    pub fn to_new(&self, x: &Element) -> Element {
        Element::from_coords(&self.inverse().p.vec_mul(&x.coords()))
    }

    /// Old-basis coordinates of a new-basis element.
    pub fn to_old(&self, x: &Element) -> Element {
        Element::from_coords(&self.p.vec_mul(&x.coords()))
    }

    pub fn vectors(&self) -> Vec<Element> {
        (0..self.p.rows()).map(|k| Element::from_coords(self.p.row(k))).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "P": format::matrix_to_json(&self.p),
            "vectors": self.vectors().iter().map(Element::display).collect::<Vec<_>>(),
        })
    }
}

/// `δ` of an algebra already in canonical form: `b = 0` gives 0,
/// `b = (1, 0, …, 0)` gives 1.
pub fn canonical_delta(alg: &Algebra) -> Result<u8> {
    let b = alg.b();
    if matrix::is_zero_vec(b) {
        return Ok(0);
    }
    if b[0].is_one() && matrix::is_zero_vec(&b[1..]) {
        return Ok(1);
    }
    Err(EacpError::NotCanonical(format!(
        "b = ({}) is neither 0 nor (1, 0, …, 0)",
        b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    )))
}

/// Brings the `r`-column to `(δ, 0, …, 0)`.
///
/// Pivot `k` is the smallest index with `b_k ≠ 0`; `h_1' = h_k / b_k` and the
/// other generators, in their original order, become `h_i − (b_i/b_k) h_k`.
pub fn canonicalize(alg: &Algebra) -> (Algebra, BasisChange, u8) {
    let n = alg.n();
    let b = alg.b();
    let Some(k) = b.iter().position(|x| !x.is_zero()) else {
        return (alg.clone(), BasisChange::identity(n + 1), 0);
    };
    let bk = b[k].clone();
    let inv = bk.inv().expect("nonzero pivot");
    let mut rows = Vec::with_capacity(n + 1);
    rows.push(matrix::scale_vec(&matrix::unit(n + 1, k), &inv));
    for i in (0..n).filter(|&i| i != k) {
        let mut v = matrix::unit(n + 1, i);
        v[k] = -(&b[i] * &inv);
        rows.push(v);
    }
    rows.push(matrix::unit(n + 1, n));
    let change = BasisChange { p: Matrix::from_rows(rows).expect("square") };
    let out = change.apply(alg).expect("h-only combinations keep the natural table");
    debug_assert_eq!(canonical_delta(&out), Ok(1));
    (out, change, 1)
}

/// Candidate natural basis `f_1, …, f_m, r'` of a subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct SubalgebraBasis {
    pub f: Vec<Element>,
    pub rprime: Element,
}

impl SubalgebraBasis {
    pub fn new(f: Vec<Element>, rprime: Element) -> Self {
        SubalgebraBasis { f, rprime }
    }

    /// `f_1, …, f_m, r'`.
    pub fn vectors(&self) -> Vec<Element> {
        let mut v = self.f.clone();
        v.push(self.rprime.clone());
        v
    }

    pub fn coords(&self) -> Vec<Vec<Scalar>> {
        self.vectors().iter().map(Element::coords).collect()
    }

    pub fn dim(&self) -> usize {
        self.f.len() + 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "f": self.f.iter().map(Element::display).collect::<Vec<_>>(),
            "r'": self.rprime.display(),
        })
    }
}

/// A product that breaks the natural-basis table.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub description: String,
    pub product: Element,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NaturalCheck {
    Natural,
    Violated(Witness),
}

impl NaturalCheck {
    pub fn is_natural(&self) -> bool {
        matches!(self, NaturalCheck::Natural)
    }
}

/// Checks `f_i f_j = 0`, `r'² = 0` and `f_i r' ∈ span`, in that order.
pub fn is_natural_basis(alg: &Algebra, cand: &SubalgebraBasis) -> Result<NaturalCheck> {
    let coords = cand.coords();
    if !matrix::is_independent(&coords) {
        return Err(EacpError::DependentVectors);
    }
    let names: Vec<String> = (1..=cand.f.len()).map(|i| format!("f{i}")).collect();
    for (i, fi) in cand.f.iter().enumerate() {
        for (j, fj) in cand.f.iter().enumerate().skip(i) {
            let p = alg.multiply(fi, fj)?;
            if !p.is_zero() {
                return Ok(NaturalCheck::Violated(Witness {
                    description: format!("{}·{} = {} ≠ 0", names[i], names[j], p),
                    product: p,
                }));
            }
        }
    }
    let rr = alg.square(&cand.rprime)?;
    if !rr.is_zero() {
        return Ok(NaturalCheck::Violated(Witness { description: format!("r'·r' = {rr} ≠ 0"), product: rr }));
    }
    for (i, fi) in cand.f.iter().enumerate() {
        let p = alg.multiply(fi, &cand.rprime)?;
        if !matrix::in_span(&coords, &p.coords()) {
            return Ok(NaturalCheck::Violated(Witness {
                description: format!("{}·r' = {} is outside the span", names[i], p),
                product: p,
            }));
        }
    }
    Ok(NaturalCheck::Natural)
}

/// Which branch of the extension argument produced the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionCase {
    /// `γ ≠ 0`: r' keeps its role.
    RprimePivot,
    /// Every vector lies in `span(h)`; the algebra's own `r` is appended.
    AllInHSpan,
    /// `γ = 0` but `γ_i ≠ 0`: `f_i` takes the role of `r'`.
    SwappedPivot(usize),
}

/// Natural basis of the whole algebra extending one of the subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedBasis {
    /// The first `m + 1` vectors span the subspace.
    pub vectors: Vec<Element>,
    /// Position of the vector playing `r`.
    pub r_index: usize,
    pub case: ExtensionCase,
}

impl ExtendedBasis {
    /// The basis as `h_1', …, h_n', r'`.
    pub fn natural_order(&self) -> Vec<Element> {
        let mut v: Vec<Element> =
            self.vectors.iter().enumerate().filter(|(k, _)| *k != self.r_index).map(|(_, x)| x.clone()).collect();
        v.push(self.vectors[self.r_index].clone());
        v
    }

    pub fn basis_change(&self) -> BasisChange {
        BasisChange::from_vectors(&self.natural_order()).expect("basis of the whole algebra")
    }
}

/// Standard `h_j` completing `vectors` (all in `span(h)`) to a basis of
/// `span(h)`: the non-pivot columns of their echelon form, leftmost first.
fn complete_h_span(vectors: &[Element], n: usize) -> Vec<Element> {
    if vectors.is_empty() {
        return (0..n).map(|j| Element::h(n, j)).collect();
    }
    let m = Matrix::from_rows(vectors.iter().map(|v| v.alpha().to_vec()).collect()).expect("rectangular");
    let (_, pivots) = m.rref();
    (0..n).filter(|j| !pivots.contains(j)).map(|j| Element::h(n, j)).collect()
}

/// Extends a natural basis of a subalgebra to one of the whole algebra.
pub fn extend_natural_basis(alg: &Algebra, sub: &SubalgebraBasis) -> Result<ExtendedBasis> {
    let n = alg.n();
    if sub.dim() > n + 1 {
        return Err(EacpError::DimensionMismatch(format!("{} vectors in dimension {}", sub.dim(), n + 1)));
    }
    if let NaturalCheck::Violated(w) = is_natural_basis(alg, sub)? {
        return Err(EacpError::NotNaturalBasis(w.description));
    }
    let (case, pivot) = if !sub.rprime.beta().is_zero() {
        (ExtensionCase::RprimePivot, Some(sub.rprime.clone()))
    } else if let Some(i) = sub.f.iter().position(|f| !f.beta().is_zero()) {
        (ExtensionCase::SwappedPivot(i), Some(sub.f[i].clone()))
    } else {
        (ExtensionCase::AllInHSpan, None)
    };

    let ext = match pivot {
        Some(piv) => {
            let g = piv.beta().clone();
            // every other vector, with its r-part eliminated against the pivot
            let others: Vec<Element> = sub
                .vectors()
                .into_iter()
                .filter(|v| v != &piv)
                .map(|v| {
                    let c = v.beta() / &g;
                    v.sub(&piv.scale(&c))
                })
                .collect();
            let fill = complete_h_span(&others, n);
            let mut vectors = others;
            let r_index = vectors.len();
            vectors.push(piv);
            vectors.extend(fill);
            ExtendedBasis { vectors, r_index, case }
        }
        None => {
            let mut vectors = sub.vectors();
            vectors.extend(complete_h_span(&vectors, n));
            let r_index = vectors.len();
            vectors.push(Element::r(n));
            ExtendedBasis { vectors, r_index, case }
        }
    };

    // verification
    if ext.vectors.len() != n + 1 {
        return Err(EacpError::InvariantViolated("extension has the wrong size".into()));
    }
    let natural = ext.natural_order();
    let full = SubalgebraBasis::new(natural[..n].to_vec(), natural[n].clone());
    if let NaturalCheck::Violated(w) = is_natural_basis(alg, &full)? {
        return Err(EacpError::InvariantViolated(format!("extension is not natural: {}", w.description)));
    }
    let head: Vec<Vec<Scalar>> = ext.vectors[..sub.dim()].iter().map(Element::coords).collect();
    let sub_coords = sub.coords();
    if matrix::rank_of(&head) != sub.dim() || !sub_coords.iter().all(|v| matrix::in_span(&head, v)) {
        return Err(EacpError::InvariantViolated("extension does not start with the subspace".into()));
    }
    Ok(ext)
}

/// Result of searching a subspace for a natural basis.
#[derive(Clone, Debug, PartialEq)]
pub struct NaturalBasisSearch {
    pub basis: Option<SubalgebraBasis>,
    /// Why none exists, when `basis` is `None`.
    pub obstruction: Option<String>,
}

/// Left kernel `L` of `M = A ⊕ b` (vectors `α` with `αᵀA = 0`, `αᵀb = 0`).
pub fn left_kernel_m(alg: &Algebra) -> Vec<Vec<Scalar>> {
    alg.structural().to_matrix().left_kernel()
}

/// Basis of `L ⊕ ⟨r⟩`, the square-zero vectors with free `r` coefficient.
pub fn q0_basis(alg: &Algebra) -> Vec<Vec<Scalar>> {
    let n = alg.n();
    let mut out: Vec<Vec<Scalar>> = left_kernel_m(alg)
        .into_iter()
        .map(|mut l| {
            l.push(Scalar::zero());
            l
        })
        .collect();
    out.push(matrix::unit(n + 1, n));
    out
}

/// Checks that `span(vectors)` is closed under multiplication.
pub fn check_closed(alg: &Algebra, vectors: &[Element]) -> Result<()> {
    let coords: Vec<Vec<Scalar>> = vectors.iter().map(Element::coords).collect();
    for (i, x) in vectors.iter().enumerate() {
        for y in &vectors[i..] {
            let p = alg.multiply(x, y)?;
            if !matrix::in_span(&coords, &p.coords()) {
                return Err(EacpError::NotClosed(format!("({x})·({y}) = {p} is outside the span")));
            }
        }
    }
    Ok(())
}

/// Searches a multiplicatively closed subspace for a natural basis.
///
/// With `P = S ∩ span(h)`: if `S ⊆ span(h)` any basis works; otherwise a
/// natural basis exists iff `S ∩ (L ⊕ ⟨r⟩)` has a vector `v` with nonzero
/// `r`-coefficient, and then `basis(P) ∪ {v}` is one.
pub fn find_natural_basis(alg: &Algebra, subspace: &[Element]) -> Result<NaturalBasisSearch> {
    let n = alg.n();
    let dim = n + 1;
    let coords: Vec<Vec<Scalar>> = subspace.iter().map(Element::coords).collect();
    let s = matrix::span_basis(&coords, dim);
    if s.is_empty() {
        return Err(EacpError::InvalidArgument("zero subspace".into()));
    }
    let elems: Vec<Element> = s.iter().map(|v| Element::from_coords(v)).collect();
    check_closed(alg, &elems)?;

    if s.iter().all(|v| v[n].is_zero()) {
        let (last, rest) = elems.split_last().expect("nonempty");
        return Ok(NaturalBasisSearch {
            basis: Some(SubalgebraBasis::new(rest.to_vec(), last.clone())),
            obstruction: None,
        });
    }
    let h_span: Vec<Vec<Scalar>> = (0..n).map(|j| matrix::unit(dim, j)).collect();
    let p = matrix::intersect(&s, &h_span, dim);
    let q = matrix::intersect(&s, &q0_basis(alg), dim);
    match q.iter().find(|v| !v[n].is_zero()) {
        Some(v) => Ok(NaturalBasisSearch {
            basis: Some(SubalgebraBasis::new(
                p.iter().map(|x| Element::from_coords(x)).collect(),
                Element::from_coords(v),
            )),
            obstruction: None,
        }),
        None => Ok(NaturalBasisSearch {
            basis: None,
            obstruction: Some(format!(
                "every square-zero vector of the subspace has zero r-coefficient \
                 (S ∩ (L ⊕ ⟨r⟩) ⊆ span(h), dim L = {}), so they span at most dim {} < {}",
                left_kernel_m(alg).len(),
                p.len(),
                s.len()
            )),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Scalar {
        Scalar::ratio(a, b)
    }

    fn el(alpha: &[(i64, i64)], beta: (i64, i64)) -> Element {
        Element::new(alpha.iter().map(|&(a, b)| q(a, b)).collect(), q(beta.0, beta.1))
    }

    fn c6_11() -> Algebra {
        Algebra::from_ratios(&[&[(1, 2), (1, 2)], &[(1, 2), (0, 1)]], &[(1, 2), (0, 1)]).unwrap()
    }

    fn example_algebra() -> Algebra {
        Algebra::from_ratios(
            &[&[(1, 1), (0, 1), (0, 1)], &[(0, 1), (1, 1), (0, 1)], &[(0, 1), (0, 1), (1, 1)]],
            &[(1, 1), (1, 1), (1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let alg = Algebra::from_ratios(&[&[(1, 1), (2, 1)], &[(3, 1), (4, 1)]], &[(0, 1), (0, 1)]).unwrap();
        let (out, change, delta) = canonicalize(&alg);
        assert_eq!((delta, out.clone()), (0, alg));
        assert_eq!(change, BasisChange::identity(3));

        let alg = Algebra::from_ratios(&[&[(1, 1), (2, 1)], &[(3, 1), (4, 1)]], &[(2, 1), (3, 1)]).unwrap();
        let (out, change, delta) = canonicalize(&alg);
        assert_eq!(delta, 1);
        assert_eq!(out.b(), &[q(1, 1), q(0, 1)]);
        assert_eq!(change.vectors()[0], el(&[(1, 2), (0, 1)], (0, 1)));
        assert_eq!(change.vectors()[1], el(&[(-3, 2), (1, 1)], (0, 1)));
        assert_eq!(canonical_delta(&out), Ok(1));

        let (out, change, _) = canonicalize(&c6_11());
        assert_eq!(change.vectors()[0], el(&[(2, 1), (0, 1)], (0, 1)));
        assert_eq!(out.b(), &[q(1, 1), q(0, 1)]);
        // the change is invertible on coordinates
        let x = el(&[(3, 1), (-1, 2)], (5, 1));
        assert_eq!(change.to_old(&change.to_new(&x)), x);
    }

    #[test]
    fn canonical_delta_rejects() {
        assert!(matches!(canonical_delta(&c6_11()), Err(EacpError::NotCanonical(_))));
    }

    #[test]
    fn natural_basis_checks() {
        let alg = c6_11();
        let defining = SubalgebraBasis::new(vec![Element::h(2, 0), Element::h(2, 1)], Element::r(2));
        assert!(is_natural_basis(&alg, &defining).unwrap().is_natural());

        let ex = example_algebra();
        let u1 = el(&[(1, 1), (0, 1), (0, 1)], (1, 1));
        let u2 = el(&[(0, 1), (1, 1), (0, 1)], (1, 1));
        match is_natural_basis(&ex, &SubalgebraBasis::new(vec![u1], u2)).unwrap() {
            NaturalCheck::Violated(w) => assert_eq!(w.product, el(&[(2, 1), (0, 1), (0, 1)], (2, 1))),
            NaturalCheck::Natural => panic!("should fail"),
        }

        let c1 = Algebra::from_ratios(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]], &[(1, 2), (0, 1)]).unwrap();
        let cand = SubalgebraBasis::new(vec![Element::h(2, 1)], Element::h(2, 0));
        assert!(is_natural_basis(&c1, &cand).unwrap().is_natural());

        let dep = SubalgebraBasis::new(vec![Element::h(2, 0)], Element::h(2, 0));
        assert_eq!(is_natural_basis(&alg, &dep), Err(EacpError::DependentVectors));
    }

    #[test]
    fn extension_cases() {
        // A = 0, b = 0: every subspace is a zero-product subalgebra
        let zero = Algebra::from_ratios(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]], &[(0, 1), (0, 1)]).unwrap();

        let sub = SubalgebraBasis::new(vec![el(&[(1, 1), (1, 1)], (0, 1))], Element::r(2));
        let ext = extend_natural_basis(&zero, &sub).unwrap();
        assert_eq!(ext.case, ExtensionCase::RprimePivot);
        assert_eq!(ext.natural_order(), vec![el(&[(1, 1), (1, 1)], (0, 1)), Element::h(2, 1), Element::r(2)]);

        let sub = SubalgebraBasis::new(vec![Element::h(2, 0)], Element::h(2, 1));
        let ext = extend_natural_basis(&zero, &sub).unwrap();
        assert_eq!(ext.case, ExtensionCase::AllInHSpan);
        assert_eq!(ext.natural_order(), vec![Element::h(2, 0), Element::h(2, 1), Element::r(2)]);

        let sub = SubalgebraBasis::new(vec![el(&[(1, 1), (0, 1)], (1, 1))], Element::h(2, 1));
        let ext = extend_natural_basis(&zero, &sub).unwrap();
        assert_eq!(ext.case, ExtensionCase::SwappedPivot(0));
        ext.basis_change().apply(&zero).unwrap();
    }

    #[test]
    fn find_natural_basis_examples() {
        let ex = example_algebra();
        let u1 = el(&[(1, 1), (0, 1), (0, 1)], (1, 1));
        let u2 = el(&[(0, 1), (1, 1), (0, 1)], (1, 1));
        let search = find_natural_basis(&ex, &[u1, u2]).unwrap();
        assert!(search.basis.is_none());
        assert!(search.obstruction.is_some());

        let alg = c6_11();
        let search = find_natural_basis(&alg, &[Element::h(2, 0), Element::r(2)]);
        assert!(matches!(search, Err(EacpError::NotClosed(_))));

        let c2 = Algebra::from_ratios(&[&[(0, 1), (1, 2)], &[(0, 1), (0, 1)]], &[(0, 1), (0, 1)]).unwrap();
        let found = find_natural_basis(&c2, &[Element::h(2, 0), Element::h(2, 1)]).unwrap().basis.unwrap();
        assert!(is_natural_basis(&c2, &found).unwrap().is_natural());

        let c1_2d = Algebra::from_ratios(&[&[(1, 1)]], &[(0, 1)]).unwrap();
        let hr = el(&[(1, 1)], (1, 1));
        assert!(matches!(find_natural_basis(&c1_2d, &[hr]), Err(EacpError::NotClosed(_))));

        // C1 (3D): span{h2, r} has r'= r with L = span(h2)
        let c1 = Algebra::from_ratios(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]], &[(1, 2), (0, 1)]).unwrap();
        let found = find_natural_basis(&c1, &[Element::h(2, 1), Element::r(2)]).unwrap().basis.unwrap();
        assert!(is_natural_basis(&c1, &found).unwrap().is_natural());
        assert!(!found.rprime.beta().is_zero());
    }
}
