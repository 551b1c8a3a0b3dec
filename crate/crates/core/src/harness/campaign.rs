use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::generator::Generator;
use super::property::{Ctx, Property, Views};
use crate::error::{Error, Result};

/// Default seed for sampled generators.
pub const DEFAULT_SEED: u64 = 0x5E7;
/// Default sample count for sampled generators.
pub const DEFAULT_SAMPLES: u64 = 100_000;
/// At most this many records are written per property; the summary keeps
/// exact counts.
pub const RECORDS_PER_PROPERTY: usize = 10;

/// Run settings shared by every campaign of a suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: u64,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
    /// Include wall-clock time in summaries. Off by default so that reports
    /// are byte-identical across runs.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            jobs: None,
            timing: false,
        }
    }
}

/// A generator, a filter and the properties checked on every candidate
/// passing the filter. Properties named in `expected_failures` must fail;
/// each other property must hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Campaign {
    pub name: String,
    pub generator: Generator,
    pub filter: Vec<String>,
    pub properties: Vec<String>,
    pub expected_failures: Vec<String>,
}

impl Campaign {
    pub fn new(name: &str, generator: Generator) -> Self {
        Campaign {
            name: name.to_string(),
            generator,
            filter: Vec::new(),
            properties: Vec::new(),
            expected_failures: Vec::new(),
        }
    }

    pub fn filter(mut self, names: &[&str]) -> Self {
        self.filter.extend(names.iter().map(|s| s.to_string()));
        self
    }

    pub fn check(mut self, names: &[&str]) -> Self {
        self.properties.extend(names.iter().map(|s| s.to_string()));
        self
    }

    pub fn expect_fail(mut self, names: &[&str]) -> Self {
        self.expected_failures.extend(names.iter().map(|s| s.to_string()));
        self.properties.extend(names.iter().map(|s| s.to_string()));
        self
    }
}

/// One emitted record: a violation or an expected failure.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub campaign: String,
    pub index: u64,
    pub candidate: Value,
    pub property: String,
    pub ok: bool,
    pub expected: bool,
    pub witness: Value,
}

impl Record {
    pub fn to_json(&self) -> Value {
        json!({
            "campaign": self.campaign,
            "candidate": { "index": self.index, "value": self.candidate },
            "property": self.property,
            "ok": self.ok,
            "expected": self.expected,
            "witness": self.witness,
        })
    }
}

/// Per-property counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyTally {
    pub property: String,
    pub expected: bool,
    pub checked: u64,
    pub holds: u64,
    pub violations: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub campaign: String,
    pub seed: u64,
    /// Candidates generated.
    pub candidates: u64,
    /// Candidates passing the filter.
    pub checked: u64,
    pub tallies: Vec<PropertyTally>,
    pub records: Vec<Record>,
    pub wall_ms: Option<u64>,
}

impl Report {
    pub fn violations(&self) -> u64 {
        self.tallies.iter().map(|t| t.violations).sum()
    }

    pub fn tally(&self, property: &str) -> Option<&PropertyTally> {
        self.tallies.iter().find(|t| t.property == property)
    }

    pub fn summary_json(&self) -> Value {
        let props: Vec<Value> = self
            .tallies
            .iter()
            .map(|t| {
                json!({
                    "property": t.property,
                    "expected": t.expected,
                    "checked": t.checked,
                    "holds": t.holds,
                    "violations": t.violations,
                })
            })
            .collect();
        let mut v = json!({
            "campaign": self.campaign,
            "summary": {
                "seed": self.seed,
                "candidates": self.candidates,
                "checked": self.checked,
                "violations": self.violations(),
                "properties": props,
            }
        });
        if let Some(ms) = self.wall_ms {
            v["summary"]["wall_ms"] = json!(ms);
        }
        v
    }

    /// Records followed by the summary, one JSON object per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_json().to_string());
            out.push('\n');
        }
        out.push_str(&self.summary_json().to_string());
        out.push('\n');
        out
    }
}

struct CandidateResult {
    passed: bool,
    /// `(property index, holds, witness)` for every outcome worth recording.
    notable: Vec<(usize, bool, Value)>,
    holds: Vec<bool>,
    replay: Option<Value>,
}

/// Evaluates every candidate of the campaign. Results are merged in
/// candidate order, so the report does not depend on scheduling.
pub fn run_campaign(c: &Campaign, cfg: &RunConfig) -> Result<Report> {
    let filter: Vec<Property> = c
        .filter
        .iter()
        .map(|n| Property::for_generator(n, &c.generator))
        .collect::<Result<_>>()?;
    let props: Vec<Property> = c
        .properties
        .iter()
        .map(|n| Property::for_generator(n, &c.generator))
        .collect::<Result<_>>()?;
    if let Some(bad) = c.expected_failures.iter().find(|n| !c.properties.contains(n)) {
        return Err(Error::UnknownProperty(bad.clone()));
    }
    let expected: Vec<bool> = c.properties.iter().map(|n| !c.expected_failures.contains(n)).collect();
    let total = c.generator.cardinality()?;
    let source = c.generator.source(cfg.seed)?;
    let start = Instant::now();

    let eval = |index: u64| -> Result<CandidateResult> {
        let cand = source.candidate(index)?;
        let views = Views::new(&cand)?;
        let ctx = Ctx { seed: cfg.seed, index };
        for f in &filter {
            if !f.evaluate(&views, ctx)?.holds {
                return Ok(CandidateResult { passed: false, notable: Vec::new(), holds: Vec::new(), replay: None });
            }
        }
        let mut notable = Vec::new();
        let mut holds = Vec::with_capacity(props.len());
        for (i, p) in props.iter().enumerate() {
            let o = p.evaluate(&views, ctx)?;
            holds.push(o.holds);
            if !o.holds {
                notable.push((i, o.holds, o.witness));
            }
        }
        let replay = (!notable.is_empty()).then(|| cand.to_json());
        Ok(CandidateResult { passed: true, notable, holds, replay })
    };
    let run = || (0..total).into_par_iter().map(eval).collect::<Result<Vec<_>>>();
    let results = match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Format(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };

    let mut tallies: Vec<PropertyTally> = c
        .properties
        .iter()
        .zip(&expected)
        .map(|(p, &e)| PropertyTally { property: p.clone(), expected: e, checked: 0, holds: 0, violations: 0 })
        .collect();
    let mut records = Vec::new();
    let mut written = vec![0usize; props.len()];
    let mut checked = 0;
    for (index, r) in results.into_iter().enumerate() {
        if !r.passed {
            continue;
        }
        checked += 1;
        for (t, &h) in tallies.iter_mut().zip(&r.holds) {
            t.checked += 1;
            t.holds += h as u64;
            t.violations += (h != t.expected) as u64;
        }
        for (i, ok, witness) in r.notable {
            if written[i] < RECORDS_PER_PROPERTY {
                written[i] += 1;
                records.push(Record {
                    campaign: c.name.clone(),
                    index: index as u64,
                    candidate: r.replay.clone().unwrap_or(Value::Null),
                    property: c.properties[i].clone(),
                    ok,
                    expected: expected[i],
                    witness,
                });
            }
        }
    }
    Ok(Report {
        campaign: c.name.clone(),
        seed: cfg.seed,
        candidates: total,
        checked,
        tallies,
        records,
        wall_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
    })
}
