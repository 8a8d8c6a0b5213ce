//! Scenario files (schema 1) and report rendering.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::engine::{PacketReport, ParameterScenario};
use crate::error::{Error, Result};
use crate::extension::CentralExtension;
use crate::group::{build_group, CentralCharacterQuery, FiniteGroup, GroupSpec};
use crate::padic::PAdicField;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupInput {
    Spec(GroupSpec),
    Table(FiniteGroup),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CentralInput {
    /// `"center"`: the whole center, which must be cyclic.
    Named(String),
    Elements(Vec<usize>),
    Generator {
        generator: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioRecord {
    pub label: String,
    pub m: u64,
    pub d: u64,
    pub group: GroupInput,
    pub central_subgroup: CentralInput,
    #[serde(default)]
    pub zeta_exponent: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<PAdicField>,
}

impl ScenarioRecord {
    /// Builds the scenario, falling back to `shared_field` when the record
    /// has none.
    pub fn resolve(&self, shared_field: Option<&PAdicField>) -> Result<ParameterScenario> {
        let total = match &self.group {
            GroupInput::Spec(spec) => build_group(spec)?,
            GroupInput::Table(g) => g.clone(),
        };
        let generator = match &self.central_subgroup {
            CentralInput::Named(name) if name == "center" => {
                CentralCharacterQuery::center(&total, 0)?.generator()
            }
            CentralInput::Named(name) => {
                return Err(Error::domain(format!(
                    "unknown central_subgroup {name:?}; expected \"center\", an element list or {{\"generator\": i}}"
                )))
            }
            CentralInput::Elements(elems) => {
                CentralCharacterQuery::from_subgroup(&total, elems, 0)?.generator()
            }
            CentralInput::Generator { generator } => *generator,
        };
        let ext = CentralExtension::from_generator(total, generator)?;
        let field = self.field.or_else(|| shared_field.cloned());
        ParameterScenario::new(
            self.label.clone(),
            self.m,
            self.d,
            ext,
            self.zeta_exponent,
            field,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub schema: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<PAdicField>,
    pub scenarios: Vec<ScenarioRecord>,
}

/// A record's label (or position) with its resolved scenario.
#[derive(Debug)]
pub struct LoadedRecord {
    pub label: String,
    pub scenario: Result<ParameterScenario>,
}

/// Parses a scenario file. Structural problems fail the whole file; problems
/// in one record are returned with that record.
pub fn load_scenarios(text: &str) -> Result<Vec<LoadedRecord>> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::from_json(&e))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::domain("scenario file must be a JSON object"))?;
    match obj.get("schema").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => {}
        Some(v) => return Err(Error::domain(format!("unsupported schema version {v}"))),
        None => return Err(Error::domain("missing \"schema\": 1")),
    }
    let shared: Option<PAdicField> = match obj.get("field") {
        Some(v) => Some(
            serde_json::from_value(v.clone())
                .map_err(|e| Error::domain(format!("shared field: {e}")))?,
        ),
        None => None,
    };
    let records = obj
        .get("scenarios")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::domain("missing \"scenarios\" array"))?;

    let mut seen = HashSet::new();
    Ok(records
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let fallback = v
                .get("label")
                .and_then(Value::as_str)
                .map_or_else(|| format!("#{i}"), str::to_string);
            let scenario = serde_json::from_value::<ScenarioRecord>(v.clone())
                .map_err(|e| Error::domain(format!("record {i}: {e}")))
                .and_then(|rec| {
                    if !seen.insert(rec.label.clone()) {
                        return Err(Error::domain(format!("duplicate label {:?}", rec.label)));
                    }
                    rec.resolve(shared.as_ref())
                });
            LoadedRecord {
                label: fallback,
                scenario,
            }
        })
        .collect())
}

/// One output entry per input record, in file order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PacketReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema: u64,
    pub reports: Vec<ReportEntry>,
}

/// Aligned text table of reports; failed records show their error.
pub fn render_reports(entries: &[ReportEntry]) -> String {
    let header = [
        "label",
        "m",
        "d",
        "|S|",
        "|Pi(G*)|",
        "|Pi(G)|",
        "<sigma,pi>",
        "e(G)",
        "coeff",
        "Deg ratio",
        "audit",
    ];
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut failures = Vec::new();
    for e in entries {
        match (&e.report, &e.error) {
            (Some(r), _) => rows.push(vec![
                r.label.clone(),
                r.m.to_string(),
                r.d.to_string(),
                r.s_card.to_string(),
                r.card_star.to_string(),
                r.card_g.to_string(),
                r.multiplicity.to_string(),
                format!("{:+}", r.kottwitz_sign),
                r.endoscopic_coefficient.to_string(),
                r.degree_ratio.to_string(),
                match &r.divisibility {
                    None => "-".into(),
                    Some(a) if a.all_pass() => "pass".into(),
                    Some(_) => "FAIL".into(),
                },
            ]),
            (None, err) => failures.push(format!(
                "{}: error: {}",
                e.label,
                err.as_deref().unwrap_or("unknown")
            )),
        }
    }
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |cells: &[String], out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, &w))| {
                if i == 0 {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&header.map(String::from), &mut out);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    line(&rule, &mut out);
    for row in &rows {
        line(row, &mut out);
    }
    for e in entries {
        if let Some(r) = &e.report {
            for note in &r.notes {
                let _ = writeln!(out, "note [{}]: {}", r.label, note.text);
            }
        }
    }
    for f in failures {
        let _ = writeln!(out, "{f}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::analyze_parameter;

    const FILE: &str = r#"{
        "schema": 1,
        "field": "p=7,e=1,f=1,a=0",
        "scenarios": [
            {"label": "q8", "m": 1, "d": 2, "group": "Q8", "central_subgroup": "center", "zeta_exponent": 1},
            {"label": "h3", "m": 1, "d": 3, "group": "heisenberg(3)", "central_subgroup": {"generator": 9}, "zeta_exponent": 2},
            {"label": "ab", "m": 1, "d": 2, "group": "C2xC2", "central_subgroup": [0, 1], "zeta_exponent": 1},
            {"label": "bad", "m": 1, "d": 2, "group": "D3", "central_subgroup": "center"},
            {"label": "q8", "m": 1, "d": 2, "group": "Q8", "central_subgroup": "center", "zeta_exponent": 1}
        ]
    }"#;

    #[test]
    fn load_and_analyze() {
        let loaded = load_scenarios(FILE).unwrap();
        assert_eq!(loaded.len(), 5);
        let mults: Vec<u64> = loaded[..3]
            .iter()
            .map(|r| {
                analyze_parameter(r.scenario.as_ref().unwrap())
                    .unwrap()
                    .multiplicity
            })
            .collect();
        assert_eq!(mults, vec![2, 3, 1]);
        assert!(loaded[3].scenario.is_err());
        assert!(loaded[4].scenario.is_err());
        assert!(loaded[0].scenario.as_ref().unwrap().field().is_some());
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            load_scenarios("{\"schema\": 1,"),
            Err(Error::Parse { .. })
        ));
        assert!(load_scenarios(r#"{"schema": 2, "scenarios": []}"#).is_err());
        assert!(load_scenarios(r#"{"scenarios": []}"#).is_err());
        assert!(load_scenarios(r#"{"schema": 1, "scenarios": []}"#)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn table_rendering() {
        let loaded = load_scenarios(FILE).unwrap();
        let entries: Vec<ReportEntry> = loaded
            .into_iter()
            .map(|r| match r.scenario.and_then(|s| analyze_parameter(&s)) {
                Ok(rep) => ReportEntry {
                    label: r.label,
                    report: Some(rep),
                    error: None,
                },
                Err(e) => ReportEntry {
                    label: r.label,
                    report: None,
                    error: Some(e.to_string()),
                },
            })
            .collect();
        let text = render_reports(&entries);
        assert!(text.starts_with("label"));
        assert!(text.contains("bad: error:"));
        let file = ReportFile {
            schema: 1,
            reports: entries,
        };
        let json = serde_json::to_string(&file).unwrap();
        assert_eq!(serde_json::from_str::<ReportFile>(&json).unwrap(), file);
    }
}
