//! Worked examples, each checked against an independent computation.

use eacp::basis::{self, SubalgebraBasis};
use eacp::catalog::{self, build_canonical, CatalogId};
use eacp::classify::{classify_3d, Classification};
use eacp::expr::parse_element;
use eacp::periodicity::{self, PeriodKind};
use eacp::simplicity::{is_simple, Verdict};
use eacp::substructure::{self, FullRankForm};
use eacp::{Algebra, Element, Generator, Matrix, Scalar};

fn alg(a: &[&[(i64, i64)]], b: &[(i64, i64)]) -> Algebra {
    Algebra::from_ratios(a, b).unwrap()
}

fn el(text: &str, n: usize) -> Element {
    parse_element(text, n).unwrap()
}

fn cat(id: &str) -> Algebra {
    build_canonical(&id.parse::<CatalogId>().unwrap()).unwrap()
}

/// h_i r = h_i + r for every i.
fn shifted(n: usize) -> Algebra {
    Algebra::new(Matrix::identity(n), vec![Scalar::one(); n]).unwrap()
}

#[test]
fn catalog_entries_have_the_published_tables() {
    let c6 = alg(&[&[(1, 2), (1, 2)], &[(1, 2), (0, 1)]], &[(1, 2), (0, 1)]);
    assert_eq!(c6.a(), cat("3d:C6(1,1)").a());
    assert_eq!(c6.b(), cat("3d:C6(1,1)").b());

    let two_c1 = cat("2d:C1");
    assert_eq!(two_c1.a(), alg(&[&[(1, 1)]], &[(0, 1)]).a());
    assert!(two_c1.b()[0].is_zero());

    let c2 = cat("3d:C2");
    assert_eq!(c2.multiply(&el("h1", 2), &el("r", 2)).unwrap(), el("1/2 h2", 2));
    let c8 = cat("3d:C8");
    assert_eq!(c8.multiply(&el("h1", 2), &el("r", 2)).unwrap(), el("1/2 h1 + 1/2 h2 + 1/2 r", 2));

    assert_eq!(c2.derived_dimension(), 1);
    assert_eq!(cat("3d:C4").derived_dimension(), 2);
}

#[test]
fn products_and_powers() {
    let c2 = cat("2d:C2");
    assert_eq!(c2.multiply(&el("h", 1), &el("r", 1)).unwrap(), el("1/2 h + 1/2 r", 1));
    let x = el("h + r", 1);
    assert_eq!(c2.square(&x).unwrap(), x);
    assert_eq!(c2.principal_power(&x, 3).unwrap(), x);

    let s = shifted(3);
    let p = s.multiply(&el("h1 + r", 3), &el("h2 + r", 3)).unwrap();
    assert_eq!(p, el("h1 + h2 + 2 r", 3));

    let one = shifted(1);
    let hr = one.multiply(&el("h", 1), &el("r", 1)).unwrap();
    assert_eq!(one.plenary_power(&hr, 1).unwrap(), el("2 h + 2 r", 1));
    let (ledger, bracket) = periodicity::plenary_power_closed_form(&one, 0, 1).unwrap();
    assert_eq!(ledger.expand().unwrap(), Scalar::from_i64(2));
    assert_eq!(bracket, el("h + r", 1));
}

#[test]
fn right_operator_and_occurrence() {
    let swap = alg(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]], &[(0, 1), (0, 1)]);
    let r = el("r", 2);
    assert_eq!(swap.right_operator_iterate(&el("h1", 2), &r, 1).unwrap(), el("h2", 2));
    assert_eq!(swap.right_operator_iterate(&el("h1", 2), &r, 2).unwrap(), el("h1", 2));
    assert!(cat("2d:C2").occurs(&el("1/2 h + 1/2 r", 1), Generator::R).unwrap());
}

#[test]
fn structural_matrix_powers() {
    let swap = alg(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]], &[(1, 1), (0, 1)]);
    let m2 = swap.structural().oplus_power(2).unwrap();
    assert_eq!(m2.to_matrix(), alg(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]], &[(0, 1), (1, 1)]).structural().to_matrix());
    // the padded square agrees with ⊕
    let pad = swap.structural().padded();
    let sq = pad.mul(&pad).unwrap();
    for i in 0..2 {
        assert_eq!(sq.row(i), m2.to_matrix().row(i));
    }
}

#[test]
fn periods() {
    let swap = alg(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]], &[(0, 1), (0, 1)]);
    assert_eq!(periodicity::right_period(&swap, 0, 16).unwrap().kind, PeriodKind::Finite(2));
    let c6 = cat("3d:C6(1,1)");
    assert_eq!(periodicity::right_period(&c6, 0, 16).unwrap().kind, PeriodKind::Finite(1));
    assert_eq!(periodicity::right_period(&c6, 1, 16).unwrap().kind, PeriodKind::Finite(2));
    assert_eq!(periodicity::plenary_period(&c6, 1, 16).unwrap().kind, PeriodKind::Infinite);

    // with b = 0 every h_i r lies in span(h), so its square vanishes
    let diag = alg(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]], &[(0, 1), (0, 1)]);
    let check = periodicity::corollary_plenary_range(&diag, 0).unwrap();
    assert_eq!(check.delta, 0);
    assert_eq!(check.computed.kind, PeriodKind::Infinite);
    assert!(check.admissible.contains(&PeriodKind::Infinite));

    // h1 absent from h1·r = h2 + r, present in its square 2 h1
    let late = alg(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]], &[(1, 1), (0, 1)]);
    let check = periodicity::corollary_plenary_range(&late, 0).unwrap();
    assert_eq!(check.delta, 1);
    assert_eq!(check.computed.kind, PeriodKind::Finite(1));
    assert_eq!(periodicity::brute_plenary_period(&late, 0, 8), Ok(Some(1)));
    assert!(check.admissible.contains(&check.computed.kind));
}

#[test]
fn canonical_forms() {
    let a = alg(&[&[(1, 1), (2, 1)], &[(-1, 1), (3, 1)]], &[(2, 1), (3, 1)]);
    let (canon, change, delta) = basis::canonicalize(&a);
    assert_eq!(delta, 1);
    assert_eq!(canon.b(), &[Scalar::one(), Scalar::zero()]);
    let v = change.vectors();
    assert_eq!(v[0], el("1/2 h1", 2));
    assert_eq!(v[1], el("h2 - 3/2 h1", 2));

    let (canon, change, delta) = basis::canonicalize(&cat("3d:C6(1,1)"));
    assert_eq!(delta, 1);
    assert_eq!(canon.b()[0], Scalar::one());
    assert_eq!(change.vectors()[0], el("2 h1", 2));
}

#[test]
fn natural_bases() {
    let s = shifted(3);
    let cand = SubalgebraBasis::new(vec![el("h1 + r", 3)], el("h2 + r", 3));
    assert!(!basis::is_natural_basis(&s, &cand).unwrap().is_natural());
    assert_eq!(s.square(&el("h1 + r", 3)).unwrap(), el("2 h1 + 2 r", 3));

    let c1 = cat("3d:C1");
    let cand = SubalgebraBasis::new(vec![el("h2", 2)], el("h1", 2));
    assert!(basis::is_natural_basis(&c1, &cand).unwrap().is_natural());

    let span = [el("h1 + r", 3), el("h2 + r", 3)];
    assert!(basis::check_closed(&s, &span).is_ok());
    assert!(basis::find_natural_basis(&s, &span).unwrap().basis.is_none());

    let two_c1 = cat("2d:C1");
    assert!(basis::check_closed(&two_c1, &[el("h + r", 1)]).is_err());
}

#[test]
fn basis_extensions() {
    let z = alg(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]], &[(0, 1), (0, 1)]);
    let ext = basis::extend_natural_basis(&z, &SubalgebraBasis::new(vec![el("h1 + h2", 2)], el("r", 2))).unwrap();
    assert_eq!(ext.vectors, vec![el("h1 + h2", 2), el("r", 2), el("h2", 2)]);

    let sub = SubalgebraBasis::new(vec![el("h1 + r", 2)], el("h2", 2));
    let swapped = alg(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]], &[(0, 1), (0, 1)]);
    let ext = basis::extend_natural_basis(&swapped, &sub).unwrap();
    assert!(matches!(ext.case, basis::ExtensionCase::SwappedPivot(0)));
}

#[test]
fn one_dimensional_substructures() {
    assert!(substructure::spans_subalgebra(&cat("2d:C2"), &el("h + r", 1)).unwrap());
    assert!(!substructure::spans_subalgebra(&cat("2d:C1"), &el("h + r", 1)).unwrap());
    let form = substructure::full_rank_subalgebra_form(&cat("3d:C7(1)"), &[el("h1", 2), el("r", 2)]).unwrap();
    match form {
        FullRankForm::Decomposed { f, a } => {
            assert_eq!(f, vec![el("h1", 2)]);
            assert_eq!(a, 1);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn candidate_ideals() {
    let d = catalog::candidate_subspaces_3d(2).unwrap();
    assert_eq!(d[1].basis, vec![el("h1", 2), el("h2", 2)]);
    assert_eq!(d[5].basis, vec![el("r", 2)]);
    let d3 = &d[2].basis;
    assert!(catalog::is_plain_ideal(&cat("3d:C1"), d3).unwrap().is_ideal);
    assert!(!catalog::is_plain_ideal(&cat("3d:C5(2)"), d3).unwrap().is_ideal);
    assert!(catalog::is_plain_ideal(&cat("3d:C7(3)"), &d[3].basis).unwrap().is_ideal);
    assert!(!catalog::is_plain_ideal(&cat("3d:C6(2,1)"), &d[0].basis).unwrap().is_ideal);
}

#[test]
fn simplicity_verdicts() {
    match is_simple(&cat("2d:C1")).unwrap().verdict {
        Verdict::NotSimple(w) => assert_eq!(w.ideal.basis, vec![el("h", 1)]),
        v => panic!("{}", v.name()),
    }
    match is_simple(&cat("3d:C6(2,0)")).unwrap().verdict {
        Verdict::NotSimple(w) => assert_eq!(w.ideal.basis.len(), 2),
        v => panic!("{}", v.name()),
    }
    assert!(matches!(is_simple(&cat("3d:C6(1,1)")).unwrap().verdict, Verdict::Simple));
}

#[test]
fn classification_examples() {
    let h1r = alg(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]], &[(3, 1), (0, 1)]);
    match classify_3d(&h1r).unwrap() {
        Classification::Matched { id, .. } => assert_eq!(id.to_string(), "3d:C1"),
        other => panic!("{other:?}"),
    }
    let c5 = |b: i64| classify_3d(&cat(&format!("3d:C5({b})"))).unwrap().id().cloned();
    assert_ne!(c5(2), c5(3));
    let half = classify_3d(&cat("3d:C5(1/2)")).unwrap();
    assert!(eacp::classify::same_class(half.id().unwrap(), &"3d:C5(2)".parse().unwrap()));
}
