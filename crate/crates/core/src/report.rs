//! Command reports shared by the CLI and the C interface: every command
//! yields a JSON value, a plain-text rendering and an outcome.

use serde_json::{json, Value};

use crate::algebra::{Algebra, Element};
use crate::basis::{self, SubalgebraBasis};
use crate::catalog::{self, CatalogId};
use crate::classify::{self, Classification};
use crate::error::Result;
use crate::format;
use crate::periodicity::{self, PeriodKind, PeriodResult};
use crate::reference;
use crate::simplicity::{self, Verdict};
use crate::substructure;
use crate::verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Undetermined,
    CheckFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Undetermined => 2,
            Outcome::CheckFailed => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub outcome: Outcome,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, outcome: Outcome::Success }
    }
}

fn provenance(alg: &Algebra) -> &'static str {
    if alg.field().is_exact() {
        "exact"
    } else {
        "certified-numeric"
    }
}

fn vec_text(v: &[Element]) -> String {
    v.iter().map(Element::display).collect::<Vec<_>>().join(", ")
}

pub fn info(alg: &Algebra) -> Report {
    let (_, _, delta) = basis::canonicalize(alg);
    let json = json!({
        "algebra": format::algebra_to_json(alg),
        "dim": alg.dim(),
        "derived_dimension": alg.derived_dimension(),
        "delta": delta,
        "provenance": provenance(alg),
    });
    let mut text = String::new();
    if let Some(l) = alg.label() {
        text.push_str(&format!("label: {l}\n"));
    }
    text.push_str(&format!("field: {}\nn = {}, dim = {}\n", alg.field().name(), alg.n(), alg.dim()));
    for (i, row) in alg.structural().to_matrix().to_rows().iter().enumerate() {
        let e = Element::from_coords(row);
        text.push_str(&format!("{}·r = {}\n", crate::algebra::Generator::H(i).name(alg.n()), e));
    }
    text.push_str(&format!("dim C² = {}\ndelta = {delta}\n", alg.derived_dimension()));
    Report::ok(json, text)
}

pub fn product(alg: &Algebra, x: &Element, y: &Element) -> Result<Report> {
    let p = alg.multiply(x, y)?;
    Ok(Report::ok(
        json!({ "x": x.display(), "y": y.display(), "product": format::element_to_json(&p), "provenance": provenance(alg) }),
        format!("{p}\n"),
    ))
}

pub fn principal_power(alg: &Algebra, x: &Element, k: u64) -> Result<Report> {
    let p = alg.principal_power(x, k)?;
    Ok(Report::ok(
        json!({ "x": x.display(), "k": k, "power": format::element_to_json(&p), "provenance": provenance(alg) }),
        format!("{p}\n"),
    ))
}

pub fn plenary_power(alg: &Algebra, x: &Element, m: u64) -> Result<Report> {
    let p = alg.plenary_power(x, m)?;
    Ok(Report::ok(
        json!({ "x": x.display(), "m": m, "power": format::element_to_json(&p), "provenance": provenance(alg) }),
        format!("{p}\n"),
    ))
}

/// `(h_i r)^[m]` in closed form, with the factored coefficient and the
/// comparison against repeated squaring.
pub fn plenary_closed_form(alg: &Algebra, i: usize, m: u32) -> Result<Report> {
    let (ledger, bracket) = periodicity::plenary_power_closed_form(alg, i, m)?;
    let factors: Vec<Value> = ledger
        .terms
        .iter()
        .map(|(base, e)| json!({ "base": format::scalar_to_json(base), "exponent": e.to_string() }))
        .collect();
    let expanded = if m <= periodicity::EXPANSION_CAP {
        Some(periodicity::plenary_power_expanded(alg, i, m)?)
    } else {
        None
    };
    let direct = if m <= periodicity::EXPANSION_CAP {
        let n = alg.n();
        Some(alg.plenary_power(&alg.multiply(&Element::h(n, i), &Element::r(n))?, m as u64)?)
    } else {
        None
    };
    let agrees = match (&expanded, &direct) {
        (Some(e), Some(d)) => Some(e == d),
        _ => None,
    };
    let json = json!({
        "i": i + 1,
        "m": m,
        "gamma": { "power_of_two": ledger.power_of_two.to_string(), "factors": factors },
        "bracket": format::element_to_json(&bracket),
        "expanded": expanded.as_ref().map(format::element_to_json),
        "matches_direct": agrees,
    });
    let mut text = format!(
        "gamma = 2^{} · Π {}\nbracket = {bracket}\n",
        ledger.power_of_two,
        ledger.terms.iter().map(|(b, e)| format!("({b})^{e}")).collect::<Vec<_>>().join(" · ")
    );
    match &expanded {
        Some(e) => text.push_str(&format!("expanded = {e}\n")),
        None => text.push_str("expansion withheld (m beyond the expansion cap)\n"),
    }
    let outcome = if agrees == Some(false) { Outcome::CheckFailed } else { Outcome::Success };
    Ok(Report { json, text, outcome })
}

fn period_list_json(results: &[PeriodResult]) -> Value {
    if results.iter().all(|r| matches!(r.kind, PeriodKind::Finite(_))) {
        json!(results.iter().map(|r| r.value()).collect::<Vec<_>>())
    } else {
        json!(results.iter().map(|r| r.kind.to_string()).collect::<Vec<_>>())
    }
}

/// Right and plenary periods of every `h_i`.
pub fn periods(alg: &Algebra, m_max: u64) -> Result<Report> {
    let p = periodicity::right_periods(alg, m_max);
    let q = periodicity::plenary_periods(alg, m_max);
    let json = json!({
        "p": period_list_json(&p),
        "q": period_list_json(&q),
        "certificates": {
            "p": p.iter().map(|r| r.certificate.clone()).collect::<Vec<_>>(),
            "q": q.iter().map(|r| r.certificate.clone()).collect::<Vec<_>>(),
        },
        "m_max": m_max,
        "provenance": provenance(alg),
    });
    let mut text = String::new();
    for i in 0..alg.n() {
        text.push_str(&format!("p_{} = {}\n", i + 1, p[i]));
        text.push_str(&format!("q_{} = {}\n", i + 1, q[i]));
    }
    let unknown = p.iter().chain(&q).any(|r| matches!(r.kind, PeriodKind::Unknown(_)));
    Ok(Report { json, text, outcome: if unknown { Outcome::Undetermined } else { Outcome::Success } })
}

fn squares(alg: &Algebra, v: &[Element]) -> Result<Vec<Value>> {
    v.iter()
        .map(|x| Ok(json!({ "x": x.display(), "square": alg.square(x)?.display() })))
        .collect()
}

pub fn nilpotents(alg: &Algebra) -> Result<Report> {
    let set = substructure::absolute_nilpotents(alg);
    let mut all = set.h_span.clone();
    all.extend(set.kernel_span.iter().cloned());
    let json = json!({ "nilpotents": set.to_json(), "verification": squares(alg, &all)? });
    let text = format!(
        "x² = 0 on span{{{}}} ∪ span{{{}}}\n",
        vec_text(&set.h_span),
        vec_text(&set.kernel_span)
    );
    Ok(Report::ok(json, text))
}

pub fn idempotents(alg: &Algebra) -> Result<Report> {
    let idem = substructure::idempotents(alg);
    let mut fams = Vec::new();
    let mut text = String::new();
    for f in &idem.families {
        let mut j = f.to_json();
        j["verification"] = json!({
            "x": f.particular.display(),
            "square": alg.square(&f.particular)?.display(),
        });
        fams.push(j);
        if f.directions.is_empty() {
            text.push_str(&format!("{}\n", f.particular));
        } else {
            text.push_str(&format!("{} + span{{{}}}\n", f.particular, vec_text(&f.directions)));
        }
    }
    if idem.families.is_empty() {
        text.push_str("no nonzero idempotents\n");
    }
    let json = json!({ "idempotents": fams, "complete": idem.complete, "notes": idem.notes });
    let outcome = if idem.complete { Outcome::Success } else { Outcome::Undetermined };
    Ok(Report { json, text, outcome })
}

pub fn subalgebras_1d(alg: &Algebra) -> Result<Report> {
    let nil = nilpotents(alg)?;
    let idem = idempotents(alg)?;
    Ok(Report {
        json: json!({ "nilpotent_generators": nil.json, "idempotent_generators": idem.json }),
        text: format!("nilpotent lines:\n{}idempotent lines:\n{}", nil.text, idem.text),
        outcome: idem.outcome,
    })
}

pub fn ideals_1d(alg: &Algebra) -> Result<Report> {
    let ideals = substructure::one_dim_ideals(alg)?;
    let fams: Vec<Value> = ideals
        .families
        .iter()
        .map(|f| {
            json!({
                "basis": f.basis.iter().map(format::element_to_json).collect::<Vec<_>>(),
                "eigenvalues": f.eigenvalues.iter().map(format::scalar_to_json).collect::<Vec<_>>(),
                "witnesses": f.witnesses.iter().map(|w| w.to_json(alg.n())).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut json = json!({
        "ideals": fams,
        "complete": ideals.complete,
        "certified": ideals.certified,
        "notes": ideals.notes,
    });
    if basis::canonical_delta(alg) == Ok(1) {
        let pc = substructure::paper_ideal_criteria(alg)?;
        json["criteria"] = json!({
            "criterion_a": pc.criterion_a.iter().map(|b| b.iter().map(Element::display).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "criterion_b": pc.criterion_b.as_ref().map(Element::display),
            "agrees": pc.agrees,
            "note": pc.note,
        });
    }
    let mut text = String::new();
    for f in &ideals.families {
        text.push_str(&format!("span{{{}}}\n", vec_text(&f.basis)));
    }
    if ideals.is_empty() {
        text.push_str("no one-dimensional ideals\n");
    }
    let outcome = if ideals.complete { Outcome::Success } else { Outcome::Undetermined };
    Ok(Report { json, text, outcome })
}

pub fn canonical_form(alg: &Algebra) -> Result<Report> {
    let (canon, change, delta) = basis::canonicalize(alg);
    let again = change.apply(alg)?;
    let verified = again.a() == canon.a() && again.b() == canon.b();
    let json = json!({
        "delta": delta,
        "algebra": format::algebra_to_json(&canon),
        "basis_change": change.to_json(),
        "verified": verified,
    });
    let text = format!(
        "delta = {delta}\nnew basis: {}\nA = {}\nb = {}\n",
        vec_text(&change.vectors()),
        format::matrix_to_json(canon.a()),
        format::vector_to_json(canon.b())
    );
    Ok(Report { json, text, outcome: if verified { Outcome::Success } else { Outcome::CheckFailed } })
}

pub fn extend_basis(alg: &Algebra, f: Vec<Element>, rprime: Element) -> Result<Report> {
    let sub = SubalgebraBasis::new(f, rprime);
    let ext = basis::extend_natural_basis(alg, &sub)?;
    let order = ext.natural_order();
    let json = json!({
        "input": sub.to_json(),
        "vectors": ext.vectors.iter().map(Element::display).collect::<Vec<_>>(),
        "natural_order": order.iter().map(Element::display).collect::<Vec<_>>(),
        "r_index": ext.r_index,
        "case": format!("{:?}", ext.case),
    });
    Ok(Report::ok(json, format!("{}\n", vec_text(&order))))
}

pub fn catalog_list() -> Result<Report> {
    let mut entries = Vec::new();
    let mut text = String::new();
    for id in CatalogId::all_default() {
        let alg = catalog::build_canonical(&id)?;
        text.push_str(&format!("{:<12} dim C² = {}\n", id.to_string(), alg.derived_dimension()));
        entries.push(json!({ "id": id.to_string(), "derived_dimension": alg.derived_dimension() }));
    }
    Ok(Report::ok(json!({ "catalog": entries }), text))
}

pub fn catalog_build(id: &CatalogId) -> Result<Report> {
    let alg = catalog::build_canonical(id)?;
    let json = format::algebra_to_json(&alg);
    Ok(Report::ok(json.clone(), format!("{}\n", serde_json::to_string_pretty(&json).expect("serializable"))))
}

pub fn simple(alg: &Algebra) -> Result<Report> {
    let rep = simplicity::is_simple(alg)?;
    let text = match &rep.verdict {
        Verdict::Simple => "simple\n".to_string(),
        Verdict::NotSimple(w) => format!("not simple: span{{{}}} is an evolution ideal\n", vec_text(&w.ideal.basis)),
        Verdict::Undetermined(r) => format!("undetermined: {r}\n"),
    };
    let outcome = if rep.is_simple().is_some() { Outcome::Success } else { Outcome::Undetermined };
    Ok(Report { json: rep.to_json(alg.n()), text, outcome })
}

pub fn classify(alg: &Algebra) -> Result<Report> {
    let res = classify::classify_3d(alg)?;
    let (text, outcome) = match &res {
        Classification::Matched { id, change } => {
            (format!("{id}\nbasis: {}\n", vec_text(&change.vectors())), Outcome::Success)
        }
        Classification::Undetermined { reason, .. } => (format!("undetermined: {reason}\n"), Outcome::Undetermined),
    };
    Ok(Report { json: res.to_json(), text, outcome })
}

pub fn verify(alg: &Algebra, seed: u64, cases: usize) -> Report {
    let results = verify::run_properties(alg, seed, cases);
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!(
            "{} {}{}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail.as_deref().map(|d| format!(": {d}")).unwrap_or_default()
        ));
    }
    let all = results.iter().all(|r| r.passed);
    Report {
        json: json!({ "seed": seed, "properties": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(), "all_passed": all }),
        text,
        outcome: if all { Outcome::Success } else { Outcome::CheckFailed },
    }
}

pub fn paper_check() -> Result<Report> {
    let pc = reference::paper_check()?;
    let outcome = if pc.all_match() { Outcome::Success } else { Outcome::CheckFailed };
    Ok(Report { json: pc.to_json(), text: pc.to_text(), outcome })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c6() -> Algebra {
        catalog::build_canonical(&"3d:C6(1,1)".parse().unwrap()).unwrap()
    }

    #[test]
    fn periods_json_shape() {
        let r = periods(&c6(), 16).unwrap();
        assert_eq!(r.json["p"], json!([1, 2]));
        assert_eq!(r.json["q"], json!(["1", "inf"]));
        assert_eq!(r.outcome, Outcome::Success);
    }

    #[test]
    fn two_dim_product_text() {
        let alg = catalog::build_canonical(&"2d:C2".parse().unwrap()).unwrap();
        let x = crate::expr::parse_element("h", 1).unwrap();
        let y = crate::expr::parse_element("r", 1).unwrap();
        assert_eq!(product(&alg, &x, &y).unwrap().text, "1/2 h + 1/2 r\n");
    }

    #[test]
    fn outcomes() {
        assert_eq!(paper_check().unwrap().outcome, Outcome::CheckFailed);
        assert_eq!(simple(&c6()).unwrap().outcome, Outcome::Success);
        let zero = Algebra::from_ratios(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]], &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(classify(&zero).unwrap().outcome, Outcome::Undetermined);
        assert!(canonical_form(&c6()).unwrap().json["verified"].as_bool().unwrap());
        assert_eq!(verify(&c6(), 1, 2).outcome, Outcome::Success);
    }
}
