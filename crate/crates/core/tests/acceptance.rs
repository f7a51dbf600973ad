//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criterion 1 is expected to fail: the published table marks D5 as an
//! ideal of C4, but h1·r = (h1 + h2)/2 leaves span{h2, r}. The run fails
//! if any other criterion fails or if criterion 1 fails in any other way.

use std::time::Instant;

use rand::Rng;

use eacp::basis::{self, ExtensionCase, SubalgebraBasis};
use eacp::catalog::{build_canonical, CatalogId};
use eacp::classify::{self, classify_3d, Classification};
use eacp::periodicity::{self, PeriodKind};
use eacp::reference;
use eacp::simplicity::{is_simple, Verdict, WitnessKind};
use eacp::verify::{random_algebra, random_natural_change, random_scalar, rng, seed_from_env};
use eacp::{matrix, Algebra, Element, Matrix, Scalar};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn same_span(a: &[Element], b: &[Element]) -> bool {
    let ac: Vec<_> = a.iter().map(Element::coords).collect();
    let bc: Vec<_> = b.iter().map(Element::coords).collect();
    matrix::rank_of(&ac) == matrix::rank_of(&bc) && bc.iter().all(|v| matrix::in_span(&ac, v))
}

fn c1_reference_table() -> Outcome {
    let start = Instant::now();
    let pc = reference::paper_check().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    let silent = pc.table.iter().flat_map(|r| &r.entries).filter(|e| e.status == reference::Status::PaperSilent).count();
    let stated = pc.table.len() * 6 - silent;
    let mism = pc.mismatches();
    let detail = format!(
        "{} rows, {stated} stated entries, {silent} silent, {} mismatch(es), {elapsed:.2}s",
        pc.table.len(),
        mism.len()
    );
    if elapsed >= 5.0 {
        return Err(format!("{detail}; too slow"));
    }
    if mism.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}: {}", mism.join("; ")))
    }
}

fn c2_simplicity_dichotomy() -> Outcome {
    let alphas = [0, 1, -1, 2, -2];
    let betas = [q(1, 1), q(-1, 1), q(2, 1), q(-2, 1), q(1, 2)];
    let mut simple = 0;
    for &a in &alphas {
        for b in &betas {
            let id = CatalogId::C6 { alpha: Scalar::from_i64(a), beta: b.clone() };
            let rep = is_simple(&build_canonical(&id).unwrap()).map_err(|e| e.to_string())?;
            match rep.verdict {
                Verdict::Simple if rep.certified => simple += 1,
                Verdict::Simple => return Err(format!("{id}: simple but not certified")),
                Verdict::NotSimple(_) => return Err(format!("{id}: reported not simple")),
                Verdict::Undetermined(r) => return Err(format!("{id}: undetermined ({r})")),
            }
        }
    }
    let d3 = [Element::h(2, 0), Element::r(2)];
    for &a in &alphas {
        let id = CatalogId::C6 { alpha: Scalar::from_i64(a), beta: Scalar::zero() };
        let rep = is_simple(&build_canonical(&id).unwrap()).map_err(|e| e.to_string())?;
        match rep.verdict {
            Verdict::NotSimple(w) if same_span(&w.ideal.basis, &d3) => {}
            Verdict::NotSimple(w) => {
                return Err(format!("{id}: witness span{{{}}} is not D3", w.ideal.basis.iter().map(Element::display).collect::<Vec<_>>().join(", ")))
            }
            _ => return Err(format!("{id}: expected not simple")),
        }
    }
    Ok(format!("{simple}/25 simple, 5/5 β = 0 cases with witness D3"))
}

fn c3_two_dim() -> Outcome {
    let expect = [("2d:C1", Element::h(1, 0)), ("2d:C2", Element::new(vec![Scalar::one()], Scalar::one()))];
    for (name, line) in expect {
        let id: CatalogId = name.parse().unwrap();
        let rep = is_simple(&build_canonical(&id).unwrap()).map_err(|e| e.to_string())?;
        match rep.verdict {
            Verdict::NotSimple(w) if w.kind == WitnessKind::Line && same_span(&w.ideal.basis, std::slice::from_ref(&line)) => {}
            _ => return Err(format!("{name}: expected witness ⟨{line}⟩")),
        }
    }
    Ok("C1 → ⟨h⟩, C2 → ⟨h + r⟩".into())
}

fn c4_periods() -> Outcome {
    let start = Instant::now();
    let mut g = rng(seed_from_env());
    let (mut finite, mut infinite) = (0, 0);
    for case in 0..200 {
        let n = g.gen_range(1..=4);
        let alg = random_algebra(&mut g, n);
        for i in 0..n {
            let p = periodicity::right_period(&alg, i, periodicity::default_mmax(n)).map_err(|e| e.to_string())?;
            let bp8 = periodicity::brute_right_period(&alg, i, 8);
            let bp12 = periodicity::brute_right_period(&alg, i, 12);
            match (p.kind, bp8) {
                (PeriodKind::Finite(m), Some(b)) if m == b => finite += 1,
                (PeriodKind::Finite(m), None) if m > 8 => finite += 1,
                (PeriodKind::Infinite, None) if bp12.is_none() => infinite += 1,
                (k, b) => return Err(format!("case {case}, p_{}: {k} vs oracle {b:?}", i + 1)),
            }
            let qk = periodicity::plenary_period(&alg, i, periodicity::default_mmax(n)).map_err(|e| e.to_string())?;
            let bq12 = periodicity::brute_plenary_period(&alg, i, 12);
            let bq8 = bq12.map(|o| o.filter(|&m| m <= 8));
            match (qk.kind, bq8, bq12) {
                (PeriodKind::Finite(m), Ok(Some(b)), _) if m == b => finite += 1,
                (PeriodKind::Finite(m), _, Ok(None) | Ok(Some(_))) if m > 8 && bq8 == Ok(None) => finite += 1,
                (PeriodKind::Infinite, _, Ok(None) | Err(_)) => infinite += 1,
                (k, _, b) => return Err(format!("case {case}, q_{}: {k} vs oracle {b:?}", i + 1)),
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 30.0 {
        return Err(format!("took {elapsed:.1}s"));
    }
    Ok(format!("200 algebras, {finite} finite and {infinite} infinite verdicts agree, {elapsed:.2}s"))
}

fn c5_closed_form() -> Outcome {
    let mut g = rng(seed_from_env() ^ 5);
    let mut checks = 0;
    for case in 0..100 {
        let n = g.gen_range(1..=3);
        let alg = random_algebra(&mut g, n);
        for i in 0..n {
            let mut direct = alg.multiply(&Element::h(n, i), &Element::r(n)).unwrap();
            let mut prev: Option<Scalar> = None;
            for m in 1..=4u32 {
                direct = alg.square(&direct).unwrap();
                let closed = periodicity::plenary_power_expanded(&alg, i, m).map_err(|e| e.to_string())?;
                if closed != direct {
                    return Err(format!("case {case}: closed form differs at i = {}, m = {m}", i + 1));
                }
                let (ledger, _) = periodicity::plenary_power_closed_form(&alg, i, m).unwrap();
                let gamma = ledger.expand().unwrap();
                if let Some(gm) = prev {
                    let amb = alg.a().pow(m as u64 - 1).unwrap().mul_vec(alg.b())[i].clone();
                    if gamma != &(&(&Scalar::from_i64(2) * &gm) * &gm) * &amb {
                        return Err(format!("case {case}: γ recurrence fails at m = {m}"));
                    }
                }
                prev = Some(gamma);
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} exact comparisons on 100 algebras"))
}

fn c6_canonical_form() -> Outcome {
    let mut g = rng(seed_from_env() ^ 6);
    let mut deltas = [0, 0];
    for case in 0..100 {
        let n = g.gen_range(1..=4);
        let mut alg = random_algebra(&mut g, n);
        if case % 5 == 0 {
            let zero = vec![Scalar::zero(); n];
            alg = Algebra::new(alg.a().clone(), zero).unwrap();
        }
        let (canon, change, delta) = basis::canonicalize(&alg);
        if basis::canonical_delta(&canon).ok() != Some(delta) {
            return Err(format!("case {case}: b-column not (δ, 0, …, 0)"));
        }
        if change.p.det().is_zero() {
            return Err(format!("case {case}: basis change not invertible"));
        }
        let again = change.apply(&alg).map_err(|e| format!("case {case}: {e}"))?;
        if again.a() != canon.a() || again.b() != canon.b() {
            return Err(format!("case {case}: basis change does not verify"));
        }
        if canon.derived_dimension() != alg.derived_dimension() {
            return Err(format!("case {case}: dim C² changed"));
        }
        for i in 0..n {
            periodicity::corollary_plenary_range(&canon, i).map_err(|e| format!("case {case}: {e}"))?;
        }
        deltas[delta as usize] += 1;
    }
    Ok(format!("δ = 0: {}, δ = 1: {}", deltas[0], deltas[1]))
}

/// Plants a subalgebra with a natural basis in a structured algebra and
/// hides it behind a random natural basis change.
fn planted(g: &mut impl Rng, case: usize) -> (Algebra, SubalgebraBasis) {
    let n = g.gen_range(2..=4);
    let k = g.gen_range(1..n);
    let mut a: Vec<Vec<Scalar>> = (0..n).map(|_| (0..n).map(|_| random_scalar(g)).collect()).collect();
    let mut b: Vec<Scalar> = (0..n).map(|_| random_scalar(g)).collect();
    let (f, rp): (Vec<Element>, Element) = match case {
        // span{h_1..h_k, r}
        0 => {
            for row in a.iter_mut().take(k) {
                for x in row.iter_mut().skip(k) {
                    *x = Scalar::zero();
                }
            }
            ((0..k).map(|j| Element::h(n, j)).collect(), Element::r(n))
        }
        // span{h_1..h_k} with h_k as r'
        1 => ((0..k - 1).map(|j| Element::h(n, j)).collect(), Element::h(n, k - 1)),
        // span{r, h_2..h_k} with h_1 as r'
        _ => {
            for x in a[0].iter_mut().skip(k) {
                *x = Scalar::zero();
            }
            for j in 1..k {
                a[j] = vec![Scalar::zero(); n];
                b[j] = Scalar::zero();
            }
            let mut f = vec![Element::r(n)];
            f.extend((1..k).map(|j| Element::h(n, j)));
            (f, Element::h(n, 0))
        }
    };
    let s = Algebra::from_rows(a, b).unwrap();
    let change = random_natural_change(g, &s);
    let alg = change.apply(&s).unwrap();
    let sub = SubalgebraBasis::new(f.iter().map(|x| change.to_new(x)).collect(), change.to_new(&rp));
    (alg, sub)
}

fn c7_extension() -> Outcome {
    let mut g = rng(seed_from_env() ^ 7);
    let mut seen = [0usize; 3];
    for case in 0..100 {
        let (alg, sub) = planted(&mut g, case % 3);
        if !basis::is_natural_basis(&alg, &sub).map_err(|e| e.to_string())?.is_natural() {
            return Err(format!("case {case}: planted basis is not natural"));
        }
        let ext = basis::extend_natural_basis(&alg, &sub).map_err(|e| format!("case {case}: {e}"))?;
        let order = ext.natural_order();
        let n = alg.n();
        let whole = SubalgebraBasis::new(order[..n].to_vec(), order[n].clone());
        if !basis::is_natural_basis(&alg, &whole).map_err(|e| e.to_string())?.is_natural() {
            return Err(format!("case {case}: extension is not natural"));
        }
        if !same_span(&ext.vectors[..sub.dim()], &sub.vectors()) {
            return Err(format!("case {case}: extension does not start with the planted subspace"));
        }
        match ext.case {
            ExtensionCase::RprimePivot => seen[0] += 1,
            ExtensionCase::AllInHSpan => seen[1] += 1,
            ExtensionCase::SwappedPivot(_) => seen[2] += 1,
        }
    }
    if seen.contains(&0) {
        return Err(format!("cases not all exercised: {seen:?}"));
    }
    Ok(format!("100 extensions verified; r'-pivot {}, all-in-h {}, swapped pivot {}", seen[0], seen[1], seen[2]))
}

fn c8_counterexample() -> Outcome {
    let alg = Algebra::new(Matrix::identity(3), vec![Scalar::one(); 3]).unwrap();
    let one = Scalar::one;
    let f = vec![
        Element::new(vec![one(), Scalar::zero(), Scalar::zero()], one()),
        Element::new(vec![Scalar::zero(), one(), Scalar::zero()], one()),
    ];
    basis::check_closed(&alg, &f).map_err(|e| format!("not closed: {e}"))?;
    let search = basis::find_natural_basis(&alg, &f).map_err(|e| e.to_string())?;
    match search.basis {
        None => Ok("span{h1 + r, h2 + r} is closed and has no natural basis".into()),
        Some(b) => Err(format!("unexpected natural basis {:?}", b.to_json())),
    }
}

fn grid() -> Vec<CatalogId> {
    let mut ids: Vec<CatalogId> = ["3d:C1", "3d:C2", "3d:C3", "3d:C4", "3d:C8"].iter().map(|s| s.parse().unwrap()).collect();
    for b in [q(1, 1), q(2, 1), q(-1, 1), q(1, 3), q(-3, 2)] {
        ids.push(CatalogId::C5 { beta: b });
    }
    for (a, b) in [(1, 1), (2, 1), (1, -2), (0, 1), (0, 2), (0, -3), (1, 0), (-2, 0), (0, 0), (3, 5)] {
        ids.push(CatalogId::C6 { alpha: Scalar::from_i64(a), beta: Scalar::from_i64(b) });
    }
    for a in [q(0, 1), q(1, 1), q(2, 1), q(-1, 1), q(1, 2)] {
        ids.push(CatalogId::C7 { alpha: a });
    }
    ids
}

fn c9_classification() -> Outcome {
    let mut g = rng(seed_from_env() ^ 9);
    let ids = grid();
    let mut matched = 0;
    for id in &ids {
        let base = build_canonical(id).unwrap();
        for trial in 0..3 {
            let alg = random_natural_change(&mut g, &base).apply(&base).unwrap();
            match classify_3d(&alg).map_err(|e| e.to_string())? {
                Classification::Matched { id: got, change } => {
                    let image = change.apply(&alg).map_err(|e| e.to_string())?;
                    let target = build_canonical(&got).unwrap();
                    if image.a() != target.a() || image.b() != target.b() {
                        return Err(format!("{id} trial {trial}: Matched({got}) without a valid isomorphism"));
                    }
                    if !classify::same_class(&got, id) {
                        return Err(format!("{id} trial {trial}: classified as {got}"));
                    }
                    matched += 1;
                }
                Classification::Undetermined { reason, .. } => {
                    return Err(format!("{id} trial {trial}: undetermined ({reason})"))
                }
            }
        }
    }
    Ok(format!("{} grid points × 3 changes, {matched} verified matches", ids.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "reference ideal table", c1_reference_table),
        (2, "simplicity dichotomy for C6", c2_simplicity_dichotomy),
        (3, "2D simplicity verdicts", c3_two_dim),
        (4, "period oracle equivalence", c4_periods),
        (5, "closed-form plenary powers", c5_closed_form),
        (6, "canonical form", c6_canonical_form),
        (7, "natural basis extension", c7_extension),
        (8, "closed subspace without natural basis", c8_counterexample),
        (9, "3D classification round trip", c9_classification),
    ];
    // criterion → required prefix of the failure message
    let expected_failures: &[(u32, &str)] = &[(1, "9 rows, 48 stated entries, 6 silent, 1 mismatch(es)")];

    let mut unexpected = Vec::new();
    for (k, name, f) in criteria {
        match f() {
            Ok(detail) => {
                println!("PASS {k} {name}: {detail}");
                if expected_failures.iter().any(|(e, _)| *e == k) {
                    unexpected.push(format!("criterion {k} passed but was recorded as failing"));
                }
            }
            Err(detail) => {
                println!("FAIL {k} {name}: {detail}");
                match expected_failures.iter().find(|(e, _)| *e == k) {
                    Some((_, prefix)) if detail.starts_with(prefix) && detail.contains("3d:C4 D5") => {
                        println!("     known failure: the published entry conflicts with the multiplication table")
                    }
                    _ => unexpected.push(format!("criterion {k}: {detail}")),
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected acceptance results:\n  {}", unexpected.join("\n  "));
        std::process::exit(1);
    }
}
