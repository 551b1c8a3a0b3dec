use serde_json::{json, Value};

use super::campaign::{run_campaign, Campaign, Report, RunConfig};
use super::generator::Generator;
use crate::error::{Error, Result};

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 9] = [
    "prop1",
    "thm2",
    "thm4",
    "lemma2",
    "thm6",
    "lewis-finite",
    "derived",
    "soundness",
    "counterexamples",
];

/// Relation correspondences checked by `thm2`.
pub const THM2_CORRESPONDENCES: [&str; 6] = [
    "reflexive<=>A2",
    "transitive<=>A3",
    "euclidean<=>A4",
    "reflexive&transitive<=>A2&A3",
    "euclidean&transitive<=>A3&A4",
    "equivalence<=>A1&A2&A3&A4",
];

/// Properties of minimal selection on frames, and the P-map.
pub const LEMMA2_PROPERTIES: [&str; 9] = [
    "S1'", "S2'", "S5'", "S6'", "S9'", "P1=>S3'", "P2=>S7'", "P3=>S4'", "P4=>S8'",
];

/// The campaigns making up a suite.
pub fn suite_campaigns(name: &str, cfg: &RunConfig) -> Result<Vec<Campaign>> {
    let samples = cfg.samples;
    Ok(match name {
        "prop1" => vec![Campaign::new("prop1", Generator::KnowledgeOperators { n: 2 }).check(&[
            "A1'&A2&A4=>A5fin",
            "A1'&A2&A4=>fixpoint-closure",
            "A1=>A1'",
        ])],
        "thm2" => {
            let mut out: Vec<Campaign> = [2, 3]
                .into_iter()
                .map(|n| {
                    Campaign::new(&format!("thm2-relations-n{n}"), Generator::Relations { n })
                        .check(&["roundtrip", "A1", "A5fin"])
                        .check(&THM2_CORRESPONDENCES)
                })
                .collect();
            out.push(
                Campaign::new("thm2-operators-n2", Generator::KnowledgeOperators { n: 2 })
                    .filter(&["A5fin"])
                    .check(&["roundtrip"]),
            );
            out
        }
        "thm4" => {
            let soundness: Vec<String> = (1..=9).map(|i| format!("S{i}'=>C{i}'")).collect();
            let converse: Vec<String> = (1..=9).filter(|&i| i != 7).map(|i| format!("C{i}'=>S{i}'")).collect();
            let s: Vec<&str> = soundness.iter().map(String::as_str).collect();
            let c: Vec<&str> = converse.iter().map(String::as_str).collect();
            vec![
                Campaign::new("thm4-n2", Generator::SelectionFunctions { n: 2 })
                    .check(&["C0'fin", "C10'", "roundtrip"])
                    .check(&s)
                    .check(&c)
                    .check(&["S1'&C7'=>S7'"]),
                Campaign::new("thm4-n3", Generator::SampledSelectionFunctions { n: 3, samples })
                    .check(&["C0'fin", "C10'"])
                    .check(&s),
            ]
        }
        "lemma2" => (1..=3)
            .map(|n| Campaign::new(&format!("lemma2-n{n}"), Generator::Frames { n }).check(&LEMMA2_PROPERTIES))
            .collect(),
        "thm6" => (1..=3)
            .map(|n| {
                Campaign::new(&format!("thm6-n{n}"), Generator::Frames { n }).check(&["roundtrip", "C7'=>synth-modular"])
            })
            .collect(),
        "lewis-finite" => (1..=3)
            .map(|n| Campaign::new(&format!("lewis-finite-n{n}"), Generator::Frames { n }).check(&["lewis"]))
            .collect(),
        "derived" => {
            let selection = ["S1'&S7'=>S9'", "S1'&S2'&S5'=>strong-S6"];
            let operator = ["C10'=>monotone", "C5'&C10'=>join-bound", "C5'&C8'&C10'=>lottery"];
            let transitivity = ["C1'&C5'&C6'&C10'=>transitivity"];
            let mut out = vec![
                Campaign::new("derived-selection-n2", Generator::SelectionFunctions { n: 2 }).check(&selection),
                Campaign::new("derived-selection-n3", Generator::SampledSelectionFunctions { n: 3, samples })
                    .check(&selection),
            ];
            for n in 1..=2 {
                out.push(
                    Campaign::new(&format!("derived-conjunctive-n{n}"), Generator::ConjunctiveOperators { n })
                        .check(&["C10'"])
                        .check(&operator)
                        .check(&transitivity),
                );
            }
            out.push(
                Campaign::new("derived-frames-n3", Generator::Frames { n: 3 })
                    .check(&operator)
                    .check(&transitivity),
            );
            out
        }
        "soundness" => {
            let mut out: Vec<Campaign> = (1..=3)
                .map(|n| Campaign::new(&format!("soundness-relations-n{n}"), Generator::Relations { n }).check(&["scheme-soundness"]))
                .collect();
            out.push(
                Campaign::new("soundness-selection-n2", Generator::SelectionFunctions { n: 2 }).check(&["scheme-soundness"]),
            );
            out.push(Campaign::new("soundness-frames-n2", Generator::Frames { n: 2 }).check(&["scheme-soundness"]));
            out.push(
                Campaign::new("structures", Generator::SampledStructures { samples: STRUCTURE_SAMPLES })
                    .check(&["intension", "scheme-soundness-literal"]),
            );
            out
        }
        "counterexamples" => counterexample_campaigns(),
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

/// Seeded random structures for the intension checks.
pub const STRUCTURE_SAMPLES: u64 = 100;

fn builtin(name: &str) -> Campaign {
    Campaign::new(&format!("counterexample-{name}"), Generator::Builtins(vec![name.to_string()]))
}

/// Each builtin with the properties it must satisfy and those it must fail.
pub fn counterexample_campaigns() -> Vec<Campaign> {
    vec![
        builtin("K0").check(&["A2", "A3", "A4"]).expect_fail(&["A1'", "A1", "A5fin"]),
        builtin("K1").check(&["A1'", "A1", "A2", "A3"]).expect_fail(&["A4", "A5fin"]),
        builtin("K2").check(&["A1'", "A1", "A3", "A4"]).expect_fail(&["A2", "A5fin"]),
        builtin("example5")
            .check(&["C1'", "C2'", "C3'", "C5'", "C6'", "C7'", "C8'", "C9'", "C10'"])
            .expect_fail(&["C0'fin", "C4'"]),
        builtin("omega-lewis")
            .check(&["omega-tails", "omega-minimal-empty"])
            .expect_fail(&["omega-lewis-empty"]),
    ]
}

/// The reports of a suite's campaigns.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub reports: Vec<Report>,
}

impl SuiteReport {
    pub fn candidates(&self) -> u64 {
        self.reports.iter().map(|r| r.candidates).sum()
    }

    pub fn violations(&self) -> u64 {
        self.reports.iter().map(|r| r.violations()).sum()
    }

    pub fn report(&self, campaign: &str) -> Option<&Report> {
        self.reports.iter().find(|r| r.campaign == campaign)
    }

    pub fn summary_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "summary": {
                "seed": self.seed,
                "campaigns": self.reports.len(),
                "candidates": self.candidates(),
                "violations": self.violations(),
                "text": format!("{} candidates, {} violations", self.candidates(), self.violations()),
            }
        })
    }

    /// Every campaign's records and summary, then the suite summary.
    pub fn to_jsonl(&self) -> String {
        let mut out: String = self.reports.iter().map(Report::to_jsonl).collect();
        out.push_str(&self.summary_json().to_string());
        out.push('\n');
        out
    }
}

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<SuiteReport> {
    let reports = suite_campaigns(name, cfg)?
        .iter()
        .map(|c| run_campaign(c, cfg))
        .collect::<Result<_>>()?;
    Ok(SuiteReport {
        suite: name.to_string(),
        seed: cfg.seed,
        reports,
    })
}
