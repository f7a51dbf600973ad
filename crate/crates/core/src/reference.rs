//! Published ideal table for the 3D catalog and the simplicity verdicts,
//! recomputed and compared entry by entry.

use serde_json::{json, Value};

use crate::catalog::{self, build_canonical, CatalogId};
use crate::error::Result;
use crate::simplicity;

/// `Some(true)` ideal, `Some(false)` not an ideal, `None` not stated.
pub type Expected = [Option<bool>; 6];

const Y: Option<bool> = Some(true);
const N: Option<bool> = Some(false);
const S: Option<bool> = None;

/// Rows of the published table, free parameters set to 1, plus `C6(1,0)`.
pub fn expected_ideal_table() -> Vec<(&'static str, Expected)> {
    vec![
        ("3d:C1", [N, N, Y, Y, Y, Y]),
        ("3d:C2", [N, Y, S, Y, Y, N]),
        ("3d:C3", [N, N, Y, Y, N, N]),
        ("3d:C4", [N, Y, S, Y, Y, N]),
        ("3d:C5(1)", [Y, Y, N, Y, N, N]),
        ("3d:C6(1,1)", [N, N, S, N, S, N]),
        ("3d:C7(1)", [N, N, N, Y, N, N]),
        ("3d:C8", [N, N, S, Y, N, N]),
        ("3d:C6(1,0)", [N, N, Y, N, S, N]),
    ]
}

/// Published simplicity verdicts (`true` = simple).
pub fn expected_simplicity() -> Vec<(&'static str, bool)> {
    vec![
        ("2d:C1", false),
        ("2d:C2", false),
        ("3d:C1", false),
        ("3d:C2", false),
        ("3d:C3", false),
        ("3d:C4", false),
        ("3d:C5(1)", false),
        ("3d:C6(1,1)", true),
        ("3d:C6(1,0)", false),
        ("3d:C7(1)", false),
        ("3d:C8", false),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Status {
    Match,
    Mismatch,
    PaperSilent,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::PaperSilent => "paper-silent",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub subspace: String,
    pub computed: bool,
    pub expected: Option<bool>,
    pub status: Status,
    /// `g·v = p` leaving the subspace, when not an ideal.
    pub escape: Option<String>,
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub algebra: String,
    pub entries: Vec<TableEntry>,
}

#[derive(Clone, Debug)]
pub struct SimplicityRow {
    pub algebra: String,
    pub computed: Option<bool>,
    pub expected: bool,
    pub witness: Option<Vec<String>>,
}

impl SimplicityRow {
    pub fn matches(&self) -> bool {
        self.computed == Some(self.expected)
    }
}

#[derive(Clone, Debug)]
pub struct PaperCheck {
    pub table: Vec<TableRow>,
    pub simplicity: Vec<SimplicityRow>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl PaperCheck {
    pub fn mismatches(&self) -> Vec<String> {
        let mut out = Vec::new();
        for row in &self.table {
            for e in row.entries.iter().filter(|e| e.status == Status::Mismatch) {
                out.push(format!(
                    "{} {}: computed {}, expected {}{}",
                    row.algebra,
                    e.subspace,
                    yes_no(e.computed),
                    yes_no(e.expected.unwrap_or(false)),
                    e.escape.as_deref().map(|s| format!(" ({s})")).unwrap_or_default()
                ));
            }
        }
        for s in self.simplicity.iter().filter(|s| !s.matches()) {
            out.push(format!(
                "{} simplicity: computed {}, expected {}",
                s.algebra,
                s.computed.map_or("undetermined", |c| if c { "simple" } else { "not simple" }),
                if s.expected { "simple" } else { "not simple" }
            ));
        }
        out
    }

    pub fn all_match(&self) -> bool {
        self.mismatches().is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("ideal table (yes = ideal; * = paper-silent; ! = mismatch)\n");
        s.push_str(&format!("{:<12}", "algebra"));
        for k in 1..=6 {
            s.push_str(&format!(" {:<5}", format!("D{k}")));
        }
        s.push('\n');
        for row in &self.table {
            s.push_str(&format!("{:<12}", row.algebra));
            for e in &row.entries {
                let mark = match e.status {
                    Status::Match => "",
                    Status::Mismatch => "!",
                    Status::PaperSilent => "*",
                };
                s.push_str(&format!(" {:<5}", format!("{}{}", yes_no(e.computed), mark)));
            }
            s.push('\n');
        }
        s.push_str("\nsimplicity\n");
        for r in &self.simplicity {
            let verdict = match r.computed {
                Some(true) => "simple".to_string(),
                Some(false) => format!("not simple, ideal ⟨{}⟩", r.witness.clone().unwrap_or_default().join(", ")),
                None => "undetermined".to_string(),
            };
            s.push_str(&format!("{:<12} {}{}\n", r.algebra, verdict, if r.matches() { "" } else { " !" }));
        }
        let mism = self.mismatches();
        if mism.is_empty() {
            s.push_str("\nall stated entries match\n");
        } else {
            s.push_str(&format!("\n{} mismatch(es):\n", mism.len()));
            for m in mism {
                s.push_str(&format!("  {m}\n"));
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "table": self.table.iter().map(|row| json!({
                "algebra": row.algebra,
                "entries": row.entries.iter().map(|e| json!({
                    "subspace": e.subspace,
                    "computed": e.computed,
                    "expected": e.expected,
                    "status": e.status.name(),
                    "escape": e.escape,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "simplicity": self.simplicity.iter().map(|r| json!({
                "algebra": r.algebra,
                "computed": r.computed,
                "expected": r.expected,
                "witness": r.witness,
                "match": r.matches(),
            })).collect::<Vec<_>>(),
            "mismatches": self.mismatches(),
            "all_match": self.all_match(),
        })
    }
}

/// Recomputes the ideal table and the simplicity verdicts.
pub fn paper_check() -> Result<PaperCheck> {
    let mut table = Vec::new();
    let subspaces = catalog::candidate_subspaces_3d(2)?;
    for (name, expected) in expected_ideal_table() {
        let id: CatalogId = name.parse()?;
        let alg = build_canonical(&id)?;
        let mut entries = Vec::new();
        for (d, exp) in subspaces.iter().zip(expected) {
            let chk = catalog::is_plain_ideal(&alg, &d.basis)?;
            let status = match exp {
                None => Status::PaperSilent,
                Some(e) if e == chk.is_ideal => Status::Match,
                Some(_) => Status::Mismatch,
            };
            entries.push(TableEntry {
                subspace: d.name.clone(),
                computed: chk.is_ideal,
                expected: exp,
                status,
                escape: chk.escape.map(|(g, v, p)| format!("({g})·({v}) = {p}")),
            });
        }
        table.push(TableRow { algebra: name.to_string(), entries });
    }
    let mut simplicity_rows = Vec::new();
    for (name, expected) in expected_simplicity() {
        let id: CatalogId = name.parse()?;
        let report = simplicity::is_simple(&build_canonical(&id)?)?;
        let witness = match &report.verdict {
            simplicity::Verdict::NotSimple(w) => Some(w.ideal.basis.iter().map(|e| e.display()).collect()),
            _ => None,
        };
        simplicity_rows.push(SimplicityRow { algebra: name.to_string(), computed: report.is_simple(), expected, witness });
    }
    Ok(PaperCheck { table, simplicity: simplicity_rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_the_c4_d5_entry_disagrees() {
        let pc = paper_check().unwrap();
        assert_eq!(pc.table.len(), 9);
        let mism = pc.mismatches();
        assert_eq!(mism.len(), 1, "{mism:?}");
        assert!(mism[0].starts_with("3d:C4 D5"));
        assert!(pc.simplicity.iter().all(SimplicityRow::matches));
        let silent = pc.table.iter().flat_map(|r| &r.entries).filter(|e| e.status == Status::PaperSilent).count();
        assert_eq!(silent, 6);
    }

    #[test]
    fn text_and_json() {
        let pc = paper_check().unwrap();
        let text = pc.to_text();
        assert!(text.contains("3d:C6(1,1)"));
        assert!(text.contains("no!"));
        assert_eq!(pc.to_json()["all_match"], json!(false));
    }
}
