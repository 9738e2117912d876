use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{CaseNode, ClassifyError, ExternalFactLedger, Outcome, RealizedDatum};
use crate::premodular::Degeneracy;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryEntry {
    pub name: String,
    pub path: String,
    pub dims: Vec<String>,
    pub twists: Vec<String>,
    pub center_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub symmetric: Vec<SummaryEntry>,
    pub properly_premodular: Vec<SummaryEntry>,
    pub modular: Vec<SummaryEntry>,
    pub counts: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UsedFact {
    pub key: String,
    pub citation: String,
    pub statement: String,
    pub used_at: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub branches: Vec<CaseNode>,
    pub summary: Summary,
    pub external_facts_used: Vec<UsedFact>,
}

fn entry(path: &str, d: &RealizedDatum) -> SummaryEntry {
    SummaryEntry {
        name: d.name.clone(),
        path: path.to_string(),
        dims: d.dims.clone(),
        twists: d.twists.clone(),
        center_rank: d.center.rank(),
    }
}

fn collect_facts<'a>(n: &'a CaseNode, path: &mut Vec<&'a str>, out: &mut BTreeMap<String, BTreeSet<String>>) {
    path.push(&n.label);
    let here = path.join(" > ");
    for k in &n.facts {
        out.entry(k.clone()).or_default().insert(here.clone());
    }
    if let Some(Outcome::ExternalFact { key, .. }) = &n.outcome {
        out.entry(key.clone()).or_default().insert(here.clone());
    }
    for c in &n.children {
        collect_facts(c, path, out);
    }
    path.pop();
}

impl ClassificationReport {
    pub fn assemble(branches: Vec<CaseNode>) -> Result<Self, ClassifyError> {
        let ledger = ExternalFactLedger::standard();
        let mut symmetric = Vec::new();
        let mut properly = Vec::new();
        let mut modular = Vec::new();
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for k in ["eliminated", "external_fact", "open", "realized"] {
            counts.insert(k.into(), 0);
        }
        for b in &branches {
            for (path, leaf) in b.leaves() {
                let path = path.join(" > ");
                let realized = match &leaf.outcome {
                    None => return Err(ClassifyError::Inconsistent(format!("leaf {path} has no outcome"))),
                    Some(Outcome::Realized { datum }) => {
                        *counts.get_mut("realized").unwrap() += 1;
                        Some(datum)
                    }
                    Some(Outcome::ExternalFact { datum, .. }) => {
                        *counts.get_mut("external_fact").unwrap() += 1;
                        datum.as_ref()
                    }
                    Some(Outcome::Eliminated { .. }) => {
                        *counts.get_mut("eliminated").unwrap() += 1;
                        None
                    }
                    Some(Outcome::Open { .. }) => {
                        *counts.get_mut("open").unwrap() += 1;
                        None
                    }
                };
                if let Some(d) = realized {
                    match d.class {
                        Degeneracy::Symmetric => symmetric.push(entry(&path, d)),
                        Degeneracy::ProperlyPremodular => properly.push(entry(&path, d)),
                        Degeneracy::Modular => modular.push(entry(&path, d)),
                    }
                }
            }
        }
        counts.insert("symmetric".into(), symmetric.len());
        counts.insert("properly_premodular".into(), properly.len());
        counts.insert("modular".into(), modular.len());

        let mut used: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for b in &branches {
            collect_facts(b, &mut Vec::new(), &mut used);
        }
        let mut external_facts_used = Vec::new();
        for (key, at) in used {
            let e = ledger
                .get(&key)
                .ok_or_else(|| ClassifyError::Inconsistent(format!("fact {key:?} is not in the ledger")))?;
            external_facts_used.push(UsedFact {
                key,
                citation: e.citation.to_string(),
                statement: e.statement.to_string(),
                used_at: at.into_iter().collect(),
            });
        }
        Ok(ClassificationReport {
            branches,
            summary: Summary { symmetric, properly_premodular: properly, modular, counts },
            external_facts_used,
        })
    }

    /// Canonical JSON: sorted keys, no insignificant whitespace, trailing newline.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string(&v).expect("value serializes");
        s.push('\n');
        s
    }

    /// One line per leaf, then the summary.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for b in &self.branches {
            for (path, leaf) in b.leaves() {
                let path = path.join(" > ");
                let what = match &leaf.outcome {
                    Some(Outcome::Realized { datum }) => {
                        format!("REALIZED {} [{}] dims ({}) T ({})", datum.name, datum.class, datum.dims.join(","), datum.twists.join(","))
                    }
                    Some(Outcome::Eliminated { witness }) => format!("ELIMINATED {witness}"),
                    Some(Outcome::ExternalFact { key, datum: Some(d) }) => {
                        format!("EXTERNAL_FACT {key} {} [{}] T ({})", d.name, d.class, d.twists.join(","))
                    }
                    Some(Outcome::ExternalFact { key, datum: None }) => format!("EXTERNAL_FACT {key}"),
                    Some(Outcome::Open { reason }) => format!("OPEN {reason}"),
                    None => "NO OUTCOME".into(),
                };
                s.push_str(&format!("{path}: {what}\n"));
            }
        }
        let names = |v: &[SummaryEntry]| v.iter().map(|e| e.name.clone()).collect::<Vec<_>>().join(", ");
        s.push_str(&format!("symmetric ({}): {}\n", self.summary.symmetric.len(), names(&self.summary.symmetric)));
        s.push_str(&format!(
            "properly premodular ({}): {}\n",
            self.summary.properly_premodular.len(),
            names(&self.summary.properly_premodular)
        ));
        s.push_str(&format!("modular ({}): {}\n", self.summary.modular.len(), names(&self.summary.modular)));
        let c = &self.summary.counts;
        s.push_str(&format!(
            "eliminated {}, external facts {}, open {}\n",
            c["eliminated"], c["external_fact"], c["open"]
        ));
        s
    }

    pub fn leaves(&self) -> Vec<(String, &CaseNode)> {
        self.branches.iter().flat_map(|b| b.leaves()).map(|(p, n)| (p.join(" > "), n)).collect()
    }

    pub fn find(&self, label: &str) -> Option<&CaseNode> {
        self.branches.iter().find_map(|b| b.find(label))
    }

    /// Re-verifies every witness and realized datum and the ledger coverage; returns the problems.
    pub fn verify(&self) -> Vec<String> {
        let mut out = Vec::new();
        let ledger = ExternalFactLedger::standard();
        for (path, leaf) in self.leaves() {
            match &leaf.outcome {
                Some(Outcome::Eliminated { witness }) if !witness.verify() => {
                    out.push(format!("{path}: witness does not verify"))
                }
                Some(Outcome::Realized { datum }) | Some(Outcome::ExternalFact { datum: Some(datum), .. }) => {
                    out.extend(datum.verify().into_iter().map(|p| format!("{path}: {p}")))
                }
                None => out.push(format!("{path}: no outcome")),
                _ => {}
            }
        }
        let used: BTreeSet<&str> = self.external_facts_used.iter().map(|u| u.key.as_str()).collect();
        let all: BTreeSet<&str> = ledger.keys().into_iter().collect();
        for k in all.difference(&used) {
            out.push(format!("ledger entry {k} is never used"));
        }
        for k in used.difference(&all) {
            out.push(format!("fact {k} is not in the ledger"));
        }
        out
    }
}
