//! Randomized property checks against a single algebra, plus the random
//! generators shared by the test suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{Algebra, Element};
use crate::basis::{self, BasisChange, SubalgebraBasis};
use crate::classify;
use crate::error::Result;
use crate::format;
use crate::matrix::{self, Matrix};
use crate::periodicity::{self, PeriodKind};
use crate::scalar::Scalar;
use crate::simplicity;
use crate::substructure;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Seed from `EACP_SEED`, falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("EACP_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over `{−2, …, 2} / {1, 2}`.
pub fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::ratio(rng.gen_range(-2..=2), rng.gen_range(1..=2))
}

pub fn random_nonzero<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let s = random_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_algebra<R: Rng>(rng: &mut R, n: usize) -> Algebra {
    let a = (0..n).map(|_| (0..n).map(|_| random_scalar(rng)).collect()).collect();
    let b = (0..n).map(|_| random_scalar(rng)).collect();
    Algebra::from_rows(a, b).expect("well-formed")
}

/// Random algebra whose entries are zero with probability about one half,
/// so that sparse supports and zero `b` entries show up often.
pub fn random_sparse_algebra<R: Rng>(rng: &mut R, n: usize) -> Algebra {
    let pick = |rng: &mut R| if rng.gen_bool(0.5) { Scalar::zero() } else { random_scalar(rng) };
    let a = (0..n).map(|_| (0..n).map(|_| pick(rng)).collect()).collect();
    let b = (0..n).map(|_| pick(rng)).collect();
    Algebra::from_rows(a, b).expect("well-formed")
}

pub fn random_element<R: Rng>(rng: &mut R, n: usize) -> Element {
    Element::new((0..n).map(|_| random_scalar(rng)).collect(), random_scalar(rng))
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| random_scalar(rng)).collect()).collect();
        let m = Matrix::from_rows(rows).expect("square");
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// `h_i' = Σ P_ij h_j`, `r' = λ r + ℓ` with `ℓ` in the left kernel of `M`.
pub fn random_natural_change<R: Rng>(rng: &mut R, alg: &Algebra) -> BasisChange {
    let n = alg.n();
    let p = random_invertible(rng, n);
    let mut vectors: Vec<Element> = p.to_rows().into_iter().map(|row| Element::new(row, Scalar::zero())).collect();
    let mut rp = Element::r(n).scale(&random_nonzero(rng));
    for l in basis::left_kernel_m(alg) {
        rp = rp.add(&Element::new(matrix::scale_vec(&l, &random_scalar(rng)), Scalar::zero()));
    }
    vectors.push(rp);
    BasisChange::from_vectors(&vectors).expect("invertible")
}

#[derive(Clone, Debug)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: Option<String>,
}

impl PropertyResult {
    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "passed": self.passed, "cases": self.cases, "detail": self.detail })
    }
}

type Check = fn(&Algebra, &mut ChaCha8Rng, usize) -> Result<std::result::Result<usize, String>>;

fn check_commutative(alg: &Algebra, rng: &mut ChaCha8Rng, cases: usize) -> Result<std::result::Result<usize, String>> {
    for _ in 0..cases {
        let x = random_element(rng, alg.n());
        let y = random_element(rng, alg.n());
        if alg.multiply(&x, &y)? != alg.multiply(&y, &x)? {
            return Ok(Err(format!("xy ≠ yx for x = {x}, y = {y}")));
        }
    }
    Ok(Ok(cases))
}

fn check_bilinear(alg: &Algebra, rng: &mut ChaCha8Rng, cases: usize) -> Result<std::result::Result<usize, String>> {
    for _ in 0..cases {
        let n = alg.n();
        let (x, y, z) = (random_element(rng, n), random_element(rng, n), random_element(rng, n));
        let c = random_scalar(rng);
        let lhs = alg.multiply(&x, &y.scale(&c).add(&z))?;
        let rhs = alg.multiply(&x, &y)?.scale(&c).add(&alg.multiply(&x, &z)?);
        if lhs != rhs {
            return Ok(Err(format!("bilinearity fails at x = {x}, y = {y}, z = {z}")));
        }
    }
    Ok(Ok(cases))
}

fn check_square_formula(alg: &Algebra, rng: &mut ChaCha8Rng, cases: usize) -> Result<std::result::Result<usize, String>> {
    for _ in 0..cases {
        let x = random_element(rng, alg.n());
        let two_beta = &Scalar::from_i64(2) * x.beta();
        let alpha_a = alg.a().vec_mul(x.alpha());
        let alpha_b = matrix::dot(x.alpha(), alg.b());
        let expect = Element::new(matrix::scale_vec(&alpha_a, &two_beta), &two_beta * &alpha_b);
        if alg.square(&x)? != expect {
            return Ok(Err(format!("x² ≠ 2β(αA, α·b) for x = {x}")));
        }
    }
    Ok(Ok(cases))
}

fn check_right_periods(alg: &Algebra, _: &mut ChaCha8Rng, _: usize) -> Result<std::result::Result<usize, String>> {
    let m_max = periodicity::default_mmax(alg.n());
    for i in 0..alg.n() {
        let res = periodicity::right_period(alg, i, m_max)?;
        let brute = periodicity::brute_right_period(alg, i, m_max);
        let ok = match res.kind {
            PeriodKind::Finite(p) => brute == Some(p),
            PeriodKind::Infinite | PeriodKind::Unknown(_) => brute.is_none(),
        };
        if !ok {
            return Ok(Err(format!("p_{} = {} but the direct iteration gives {brute:?}", i + 1, res.kind)));
        }
    }
    Ok(Ok(alg.n()))
}

fn check_plenary_periods(alg: &Algebra, _: &mut ChaCha8Rng, _: usize) -> Result<std::result::Result<usize, String>> {
    let m_max = 8;
    for i in 0..alg.n() {
        let res = periodicity::plenary_period(alg, i, m_max)?;
        let brute = periodicity::brute_plenary_period(alg, i, m_max);
        let ok = match (res.kind, brute) {
            (PeriodKind::Finite(q), Ok(Some(b))) => q == b,
            (PeriodKind::Finite(_), _) => false,
            (_, Ok(Some(_))) => false,
            _ => true,
        };
        if !ok {
            return Ok(Err(format!("q_{} = {} but repeated squaring gives {brute:?}", i + 1, res.kind)));
        }
    }
    Ok(Ok(alg.n()))
}

fn check_closed_form(alg: &Algebra, _: &mut ChaCha8Rng, _: usize) -> Result<std::result::Result<usize, String>> {
    let mut count = 0;
    for i in 0..alg.n() {
        let mut direct = alg.multiply(&Element::h(alg.n(), i), &Element::r(alg.n()))?;
        for m in 1..=4u32 {
            direct = alg.square(&direct)?;
            let closed = periodicity::plenary_power_expanded(alg, i, m)?;
            if closed != direct {
                return Ok(Err(format!("closed form differs for i = {}, m = {m}", i + 1)));
            }
            count += 1;
        }
    }
    Ok(Ok(count))
}

fn check_canonical_form(alg: &Algebra, _: &mut ChaCha8Rng, _: usize) -> Result<std::result::Result<usize, String>> {
    let (canon, change, delta) = basis::canonicalize(alg);
    if basis::canonical_delta(&canon).ok() != Some(delta) {
        return Ok(Err("canonical b-column is not (δ, 0, …, 0)".into()));
    }
    let again = change.apply(alg)?;
    if again.a() != canon.a() || again.b() != canon.b() {
        return Ok(Err("basis change does not reproduce the canonical form".into()));
    }
    if canon.derived_dimension() != alg.derived_dimension() {
        return Ok(Err("dim C² changed".into()));
    }
    for i in 0..canon.n() {
        if let Err(e) = periodicity::corollary_plenary_range(&canon, i) {
            return Ok(Err(e.to_string()));
        }
    }
    Ok(Ok(1))
}

fn check_nilpotents(alg: &Algebra, rng: &mut ChaCha8Rng, cases: usize) -> Result<std::result::Result<usize, String>> {
    let set = substructure::absolute_nilpotents(alg);
    for part in [&set.h_span, &set.kernel_span] {
        for _ in 0..cases {
            let mut x = Element::zero(alg.n());
            for v in part.iter() {
                x = x.add(&v.scale(&random_scalar(rng)));
            }
            if !alg.square(&x)?.is_zero() {
                return Ok(Err(format!("{x} is listed as nilpotent but x² ≠ 0")));
            }
        }
    }
    Ok(Ok(2 * cases))
}

fn check_idempotents(alg: &Algebra, rng: &mut ChaCha8Rng, cases: usize) -> Result<std::result::Result<usize, String>> {
    let idem = substructure::idempotents(alg);
    let mut count = 0;
    for fam in &idem.families {
        for _ in 0..cases {
            let mut x = fam.particular.clone();
            for d in &fam.directions {
                x = x.add(&d.scale(&random_scalar(rng)));
            }
            if alg.square(&x)? != x {
                return Ok(Err(format!("{x} is listed as idempotent but x² ≠ x")));
            }
            count += 1;
        }
    }
    Ok(Ok(count))
}

fn check_ideal_lines(alg: &Algebra, rng: &mut ChaCha8Rng, cases: usize) -> Result<std::result::Result<usize, String>> {
    let ideals = substructure::one_dim_ideals(alg)?;
    let mut count = 0;
    for fam in &ideals.families {
        for _ in 0..cases {
            let mut x = Element::zero(alg.n());
            for v in &fam.basis {
                x = x.add(&v.scale(&random_scalar(rng)));
            }
            if x.is_zero() {
                continue;
            }
            if !substructure::spans_ideal(alg, &x)? {
                return Ok(Err(format!("span{{{x}}} is listed as an ideal but is not")));
            }
            count += 1;
        }
    }
    Ok(Ok(count))
}

fn check_extension(alg: &Algebra, rng: &mut ChaCha8Rng, cases: usize) -> Result<std::result::Result<usize, String>> {
    let n = alg.n();
    for _ in 0..cases {
        let change = random_natural_change(rng, alg);
        let vecs = change.vectors();
        let mut f: Vec<Element> = vecs[..n].to_vec();
        f.shuffle(rng);
        f.truncate(rng.gen_range(0..=n));
        // a subset of h' alone is always closed; with r' it must be checked
        let sub = match rng.gen_range(0..2) {
            0 if !f.is_empty() => {
                let last = f.pop().expect("nonempty");
                SubalgebraBasis::new(f, last)
            }
            _ => {
                let cand = SubalgebraBasis::new(f, vecs[n].clone());
                if basis::is_natural_basis(alg, &cand)?.is_natural() {
                    cand
                } else {
                    SubalgebraBasis::new(Vec::new(), vecs[n].clone())
                }
            }
        };
        let ext = basis::extend_natural_basis(alg, &sub)?;
        let full = ext.natural_order();
        let coords: Vec<Vec<Scalar>> = full.iter().map(Element::coords).collect();
        if !sub.vectors().iter().all(|v| full.contains(v)) || !matrix::is_independent(&coords) {
            return Ok(Err("extension does not contain the planted basis".into()));
        }
        let whole = SubalgebraBasis::new(full[..n].to_vec(), full[n].clone());
        if !basis::is_natural_basis(alg, &whole)?.is_natural() {
            return Ok(Err("extension is not a natural basis".into()));
        }
    }
    Ok(Ok(cases))
}

fn check_json_round_trip(alg: &Algebra, _: &mut ChaCha8Rng, _: usize) -> Result<std::result::Result<usize, String>> {
    let text = format::algebra_to_json(alg).to_string();
    let back = format::algebra_from_json(&text)?;
    if back.a() != alg.a() || back.b() != alg.b() || back.field() != alg.field() {
        return Ok(Err("JSON round trip changed the algebra".into()));
    }
    Ok(Ok(1))
}

fn check_simplicity(alg: &Algebra, _: &mut ChaCha8Rng, _: usize) -> Result<std::result::Result<usize, String>> {
    if alg.dim() > 3 {
        return Ok(Ok(0));
    }
    let rep = simplicity::is_simple(alg)?;
    if let simplicity::Verdict::NotSimple(w) = &rep.verdict {
        let basis_vecs = &w.ideal.basis;
        let coords: Vec<Vec<Scalar>> = basis_vecs.iter().map(Element::coords).collect();
        for g in alg.generators() {
            for v in basis_vecs {
                if !matrix::in_span(&coords, &alg.multiply(&alg.element(g), v)?.coords()) {
                    return Ok(Err("simplicity witness is not an ideal".into()));
                }
            }
        }
        let nb = w.natural_basis.coords();
        if nb.len() != coords.len() || !nb.iter().all(|v| matrix::in_span(&coords, v)) {
            return Ok(Err("witness natural basis does not span the ideal".into()));
        }
    }
    Ok(Ok(1))
}

fn check_classification(alg: &Algebra, rng: &mut ChaCha8Rng, cases: usize) -> Result<std::result::Result<usize, String>> {
    if alg.dim() != 3 {
        return Ok(Ok(0));
    }
    let base = classify::classify_3d(alg)?;
    for _ in 0..cases {
        let other = random_natural_change(rng, alg).apply(alg)?;
        let res = classify::classify_3d(&other)?;
        let same = match (base.id(), res.id()) {
            (Some(x), Some(y)) => classify::same_class(x, y),
            (None, None) => true,
            _ => false,
        };
        if !same {
            return Ok(Err(format!(
                "classification not invariant: {} vs {}",
                base.id().map_or("undetermined".into(), |x| x.to_string()),
                res.id().map_or("undetermined".into(), |x| x.to_string())
            )));
        }
    }
    Ok(Ok(cases))
}

const CHECKS: &[(&str, Check)] = &[
    ("commutativity", check_commutative),
    ("bilinearity", check_bilinear),
    ("square_formula", check_square_formula),
    ("right_periods_vs_iteration", check_right_periods),
    ("plenary_periods_vs_squaring", check_plenary_periods),
    ("plenary_closed_form", check_closed_form),
    ("canonical_form", check_canonical_form),
    ("nilpotent_members", check_nilpotents),
    ("idempotent_members", check_idempotents),
    ("ideal_lines", check_ideal_lines),
    ("natural_basis_extension", check_extension),
    ("json_round_trip", check_json_round_trip),
    ("simplicity_witness", check_simplicity),
    ("classification_invariance", check_classification),
];

/// Runs every property on `alg` with `cases` random samples each.
pub fn run_properties(alg: &Algebra, seed: u64, cases: usize) -> Vec<PropertyResult> {
    let mut rng = rng(seed);
    CHECKS
        .iter()
        .map(|(name, check)| match check(alg, &mut rng, cases) {
            Ok(Ok(n)) => PropertyResult { name, passed: true, cases: n, detail: None },
            Ok(Err(msg)) => PropertyResult { name, passed: false, cases: 0, detail: Some(msg) },
            Err(e) => PropertyResult { name, passed: false, cases: 0, detail: Some(e.to_string()) },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_canonical, CatalogId};

    #[test]
    fn catalog_passes_everything() {
        for id in CatalogId::all_default() {
            let alg = build_canonical(&id).unwrap();
            for r in run_properties(&alg, 7, 5) {
                assert!(r.passed, "{id}: {} {:?}", r.name, r.detail);
            }
        }
    }

    #[test]
    fn random_algebras_pass() {
        let mut g = rng(11);
        for n in 1..=3 {
            for _ in 0..4 {
                let alg = random_sparse_algebra(&mut g, n);
                for r in run_properties(&alg, 3, 3) {
                    assert!(r.passed, "{}: {:?} on {:?}", r.name, r.detail, format::algebra_to_json(&alg));
                }
            }
        }
    }

    #[test]
    fn natural_changes_are_natural() {
        let mut g = rng(5);
        for _ in 0..10 {
            let alg = random_sparse_algebra(&mut g, 2);
            let ch = random_natural_change(&mut g, &alg);
            assert!(ch.apply(&alg).is_ok());
        }
    }

    #[test]
    fn seed_default() {
        assert_eq!(rng(1).gen::<u64>(), rng(1).gen::<u64>());
    }
}
