use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use eacp::basis::{self, SubalgebraBasis};
use eacp::catalog::{self, build_canonical, CatalogId};
use eacp::classify::{classify_3d, same_class, Classification};
use eacp::expr::{format_element, parse_element};
use eacp::format::{algebra_from_json, algebra_to_json};
use eacp::periodicity::{self, PeriodKind};
use eacp::simplicity::{is_simple, Verdict};
use eacp::verify::random_natural_change;
use eacp::{Algebra, Element, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn small() -> impl Strategy<Value = Scalar> {
    (-2i64..=2).prop_map(Scalar::from_i64)
}

fn algebra(ns: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Algebra> {
    ns.prop_flat_map(|n| (prop::collection::vec(prop::collection::vec(scalar(), n), n), prop::collection::vec(scalar(), n)))
        .prop_map(|(a, b)| Algebra::from_rows(a, b).unwrap())
}

fn element(n: usize) -> impl Strategy<Value = Element> {
    (prop::collection::vec(scalar(), n), scalar()).prop_map(|(a, b)| Element::new(a, b))
}

fn with_elements(ns: std::ops::RangeInclusive<usize>, k: usize) -> impl Strategy<Value = (Algebra, Vec<Element>)> {
    algebra(ns).prop_flat_map(move |alg| {
        let n = alg.n();
        (Just(alg), prop::collection::vec(element(n), k))
    })
}

/// x² computed straight from the structure constants.
fn square_oracle(alg: &Algebra, x: &Element) -> Element {
    let n = alg.n();
    let two_beta = &Scalar::from_i64(2) * x.beta();
    let mut alpha = vec![Scalar::zero(); n];
    let mut beta = Scalar::zero();
    for i in 0..n {
        for (j, a) in alpha.iter_mut().enumerate() {
            *a = &*a + &(&x.alpha()[i] * &alg.a()[(i, j)]);
        }
        beta = &beta + &(&x.alpha()[i] * &alg.b()[i]);
    }
    Element::new(alpha.iter().map(|a| a * &two_beta).collect(), &beta * &two_beta)
}

fn catalog_ids() -> Vec<CatalogId> {
    let mut ids: Vec<CatalogId> = ["3d:C1", "3d:C2", "3d:C3", "3d:C4", "3d:C8"].iter().map(|s| s.parse().unwrap()).collect();
    ids.push(CatalogId::C5 { beta: Scalar::from_i64(-2) });
    ids.push(CatalogId::C6 { alpha: Scalar::from_i64(1), beta: Scalar::from_i64(3) });
    ids.push(CatalogId::C6 { alpha: Scalar::zero(), beta: Scalar::from_i64(2) });
    ids.push(CatalogId::C7 { alpha: Scalar::ratio(1, 2) });
    ids
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_commutative((alg, xs) in with_elements(1..=4, 2)) {
        prop_assert_eq!(alg.multiply(&xs[0], &xs[1]).unwrap(), alg.multiply(&xs[1], &xs[0]).unwrap());
    }

    #[test]
    fn product_is_bilinear((alg, xs) in with_elements(1..=3, 3), c in scalar()) {
        let lhs = alg.multiply(&xs[0].scale(&c).add(&xs[1]), &xs[2]).unwrap();
        let rhs = alg.multiply(&xs[0], &xs[2]).unwrap().scale(&c).add(&alg.multiply(&xs[1], &xs[2]).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn square_matches_formula((alg, xs) in with_elements(1..=4, 1)) {
        prop_assert_eq!(alg.square(&xs[0]).unwrap(), square_oracle(&alg, &xs[0]));
    }

    #[test]
    fn right_periods_match_brute_force(alg in algebra(1..=4)) {
        for i in 0..alg.n() {
            let p = periodicity::right_period(&alg, i, periodicity::default_mmax(alg.n())).unwrap();
            let brute = periodicity::brute_right_period(&alg, i, 8);
            match p.kind {
                PeriodKind::Finite(m) if m <= 8 => prop_assert_eq!(brute, Some(m)),
                PeriodKind::Finite(_) | PeriodKind::Infinite => prop_assert_eq!(brute, None),
                PeriodKind::Unknown(_) => prop_assert!(false, "exact backend left p_{} undecided", i + 1),
            }
        }
    }

    #[test]
    fn plenary_periods_match_brute_force(alg in algebra(1..=3)) {
        for i in 0..alg.n() {
            let q = periodicity::plenary_period(&alg, i, periodicity::default_mmax(alg.n())).unwrap();
            if let Ok(brute) = periodicity::brute_plenary_period(&alg, i, 8) {
                match q.kind {
                    PeriodKind::Finite(m) if m <= 8 => prop_assert_eq!(brute, Some(m)),
                    PeriodKind::Finite(_) | PeriodKind::Infinite => prop_assert_eq!(brute, None),
                    PeriodKind::Unknown(_) => prop_assert!(false, "exact backend left q_{} undecided", i + 1),
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_squaring(alg in algebra(1..=3), m in 1u32..=4) {
        for i in 0..alg.n() {
            let hr = alg.multiply(&Element::h(alg.n(), i), &Element::r(alg.n())).unwrap();
            let direct = alg.plenary_power(&hr, m as u64).unwrap();
            prop_assert_eq!(periodicity::plenary_power_expanded(&alg, i, m).unwrap(), direct);
        }
    }

    #[test]
    fn canonical_form_is_verified(alg in algebra(1..=4)) {
        let (canon, change, delta) = basis::canonicalize(&alg);
        prop_assert_eq!(basis::canonical_delta(&canon).unwrap(), delta);
        prop_assert!(!change.p.det().is_zero());
        let again = change.apply(&alg).unwrap();
        prop_assert_eq!(again.a(), canon.a());
        prop_assert_eq!(again.b(), canon.b());
        prop_assert_eq!(canon.derived_dimension(), alg.derived_dimension());
        prop_assert_eq!(delta == 0, alg.b().iter().all(Scalar::is_zero));
    }

    #[test]
    fn natural_basis_search_agrees_with_grid((alg, xs) in with_elements(1..=2, 2)) {
        let coords: Vec<_> = xs.iter().map(Element::coords).collect();
        prop_assume!(eacp::matrix::rank_of(&coords) == 2);
        prop_assume!(basis::check_closed(&alg, &xs).is_ok());
        let found = basis::find_natural_basis(&alg, &xs).unwrap();
        let grid: Vec<(i64, i64)> = (-2..=2).flat_map(|a| (-2..=2).map(move |b| (a, b))).collect();
        let comb = |&(a, b): &(i64, i64)| xs[0].scale(&Scalar::from_i64(a)).add(&xs[1].scale(&Scalar::from_i64(b)));
        let grid_hit = grid.iter().any(|f| {
            grid.iter().any(|r| {
                let cand = SubalgebraBasis::new(vec![comb(f)], comb(r));
                let vs: Vec<_> = cand.vectors().iter().map(Element::coords).collect();
                eacp::matrix::rank_of(&vs) == 2 && basis::is_natural_basis(&alg, &cand).unwrap().is_natural()
            })
        });
        match found.basis {
            Some(b) => {
                prop_assert!(basis::is_natural_basis(&alg, &b).unwrap().is_natural());
                let vs: Vec<_> = b.vectors().iter().map(Element::coords).collect();
                prop_assert!(coords.iter().all(|v| eacp::matrix::in_span(&vs, v)));
            }
            None => prop_assert!(!grid_hit, "grid found a natural basis the search missed"),
        }
    }

    #[test]
    fn two_dim_simplicity_agrees_with_grid(alg in algebra(1..=1)) {
        let rep = is_simple(&alg).unwrap();
        let grid_ideal = (-3i64..=3).flat_map(|a| (-3i64..=3).map(move |c| (a, c))).any(|(a, c)| {
            let x = Element::new(vec![Scalar::from_i64(a)], Scalar::from_i64(c));
            !x.is_zero() && catalog::is_evolution_ideal(&alg, &[x]).unwrap()
        });
        match rep.verdict {
            Verdict::NotSimple(w) => {
                prop_assert!(catalog::is_plain_ideal(&alg, &w.ideal.basis).unwrap().is_ideal);
                prop_assert!(catalog::is_evolution_ideal(&alg, &w.ideal.basis).unwrap());
            }
            Verdict::Simple => prop_assert!(!grid_ideal, "grid found an evolution ideal"),
            Verdict::Undetermined(r) => prop_assert!(false, "undetermined: {}", r),
        }
    }

    #[test]
    fn expressions_round_trip(x in (1usize..=4).prop_flat_map(element)) {
        prop_assert_eq!(parse_element(&format_element(&x), x.n()).unwrap(), x);
    }

    #[test]
    fn json_round_trip(alg in algebra(1..=4)) {
        let text = algebra_to_json(&alg).to_string();
        prop_assert_eq!(algebra_from_json(&text).unwrap(), alg);
    }

    #[test]
    fn classification_survives_natural_changes(k in 0usize..9, seed in any::<u64>()) {
        let id = catalog_ids()[k].clone();
        let base = build_canonical(&id).unwrap();
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_natural_change(&mut g, &base).apply(&base).unwrap();
        match classify_3d(&alg).unwrap() {
            Classification::Matched { id: got, change } => {
                prop_assert!(same_class(&got, &id), "{} classified as {}", id, got);
                let image = change.apply(&alg).unwrap();
                let target = build_canonical(&got).unwrap();
                prop_assert_eq!(image.a(), target.a());
                prop_assert_eq!(image.b(), target.b());
            }
            Classification::Undetermined { reason, .. } => prop_assert!(false, "{}: {}", id, reason),
        }
    }
}

#[test]
fn small_integer_algebras_have_commuting_generators() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strat = (prop::collection::vec(small(), 4), prop::collection::vec(small(), 2));
    runner
        .run(&strat, |(a, b)| {
            let alg = Algebra::from_rows(vec![a[..2].to_vec(), a[2..].to_vec()], b).unwrap();
            for g in alg.generators() {
                for h in alg.generators() {
                    let (x, y) = (Element::generator(2, g), Element::generator(2, h));
                    prop_assert_eq!(alg.multiply(&x, &y).unwrap(), alg.multiply(&y, &x).unwrap());
                }
            }
            Ok(())
        })
        .unwrap();
}
