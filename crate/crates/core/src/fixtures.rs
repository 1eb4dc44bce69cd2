//! Golden-fixture harness: every case's AMR must extract to its gold annotation and
//! the gold annotation must render to its golden table byte for byte.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::extract::extract_entry;
use crate::model::{deserialize_annotation, render_table, validate, SentenceAnnotation};
use crate::penman::parse_document;
use crate::registry::Registry;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCase {
    pub name: String,
    pub sentence: String,
    /// Paths relative to the fixture root.
    pub amr: String,
    pub gold: String,
    pub golden: String,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub cases: Vec<FixtureCase>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub name: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub cases: Vec<CaseOutcome>,
}

impl FixtureReport {
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn case(&self, name: &str) -> Option<&CaseOutcome> {
        self.cases.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            if c.passed {
                writeln!(f, "PASS {}", c.name)?;
            } else {
                writeln!(f, "FAIL {}", c.name)?;
                for why in &c.failures {
                    writeln!(f, "  {why}")?;
                }
            }
        }
        Ok(())
    }
}

pub const MANIFEST: &str = "manifest.json";

/// Runs every case listed in `<root>/manifest.json`. Problems become report entries.
pub fn verify_fixtures(root: &Path, registry: &Registry) -> FixtureReport {
    let manifest_path = root.join(MANIFEST);
    let manifest = std::fs::read_to_string(&manifest_path)
        .map_err(|e| format!("cannot read {}: {e}", manifest_path.display()))
        .and_then(|t| {
            serde_json::from_str::<Manifest>(&t)
                .map_err(|e| format!("malformed {}: {e}", manifest_path.display()))
        });
    match manifest {
        Ok(m) => FixtureReport {
            cases: m.cases.iter().map(|c| verify_case(root, c, registry)).collect(),
        },
        Err(why) => FixtureReport {
            cases: vec![CaseOutcome {
                name: "manifest".into(),
                passed: false,
                failures: vec![why],
            }],
        },
    }
}

fn read(root: &Path, rel: &str, failures: &mut Vec<String>) -> Option<String> {
    let path: PathBuf = root.join(rel);
    match std::fs::read_to_string(&path) {
        Ok(t) => Some(t),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            failures.push(format!("missing file {}", path.display()));
            None
        }
        Err(e) => {
            failures.push(format!("cannot read {}: {e}", path.display()));
            None
        }
    }
}

pub fn verify_case(root: &Path, case: &FixtureCase, registry: &Registry) -> CaseOutcome {
    let mut failures = Vec::new();
    if case.provenance.trim().is_empty() {
        failures.push("no provenance note".into());
    }
    let gold = read(root, &case.gold, &mut failures).and_then(|t| {
        deserialize_annotation(&t)
            .map_err(|e| failures.push(format!("gold: {e}")))
            .ok()
    });
    if let Some(gold) = &gold {
        for v in validate(gold) {
            failures.push(format!("gold: {v}"));
        }
    }

    if let Some(text) = read(root, &case.amr, &mut failures) {
        match parse_document(&text) {
            Ok(entries) if entries.len() == 1 => {
                let x = extract_entry(&entries[0], registry);
                for w in &x.warnings {
                    failures.push(format!("warning: {w}"));
                }
                if let Some(gold) = &gold {
                    failures.extend(differences(gold, &x.annotation));
                }
            }
            Ok(entries) => failures.push(format!("expected one graph, found {}", entries.len())),
            Err(e) => failures.push(format!("amr: {e}")),
        }
    }

    let golden = read(root, &case.golden, &mut failures);
    if let (Some(gold), Some(golden)) = (&gold, golden) {
        match render_table(gold) {
            Ok(table) if table == golden => {}
            Ok(_) => failures.push(format!("rendering differs from {}", case.golden)),
            Err(e) => failures.push(format!("render: {e}")),
        }
    }

    CaseOutcome {
        name: case.name.clone(),
        passed: failures.is_empty(),
        failures,
    }
}

/// Slot-level description of how `actual` departs from `expected`.
pub fn differences(expected: &SentenceAnnotation, actual: &SentenceAnnotation) -> Vec<String> {
    let mut out = Vec::new();
    if expected.sentence_id != actual.sentence_id {
        out.push(format!(
            "sentence id: expected {:?}, got {:?}",
            expected.sentence_id, actual.sentence_id
        ));
    }
    if expected.entities.len() != actual.entities.len() {
        out.push(format!(
            "entities: expected {}, got {}",
            expected.entities.len(),
            actual.entities.len()
        ));
    }
    for (e, a) in expected.entities.iter().zip(&actual.entities) {
        if e != a {
            out.push(format!("entity {}: expected {e:?}, got {a:?}", e.id));
        }
    }
    if expected.configurations.len() != actual.configurations.len() {
        out.push(format!(
            "configurations: expected {}, got {}",
            expected.configurations.len(),
            actual.configurations.len()
        ));
    }
    for (e, a) in expected.configurations.iter().zip(&actual.configurations) {
        let mut slot = |name: &str, x: String, y: String| {
            if x != y {
                out.push(format!("{} {name}: expected {x}, got {y}", e.id));
            }
        };
        slot("id", e.id.clone(), a.id.clone());
        slot("tr", format!("{:?}", e.trajector), format!("{:?}", a.trajector));
        slot("lm", format!("{:?}", e.landmarks), format!("{:?}", a.landmarks));
        slot("sp", format!("{:?}", e.indicators), format!("{:?}", a.indicators));
        slot("m", format!("{:?}", e.motion), format!("{:?}", a.motion));
        slot("path", format!("{:?}", e.path), format!("{:?}", a.path));
        slot("FoR", format!("{:?}", e.fors), format!("{:?}", a.fors));
        slot("v", format!("{:?}", e.viewer), format!("{:?}", a.viewer));
        slot("QT", format!("{:?}", e.qts), format!("{:?}", a.qts));
    }
    out
}
