// Exhaustive and sampled campaigns with line-delimited JSON reports.

use eventlogic::harness::{run_campaign, run_suite, Campaign, Generator, RunConfig};
use eventlogic::Result;

pub fn run() -> Result<()> {
    let cfg = RunConfig { samples: 500, ..RunConfig::default() };
    let c = Campaign::new("reflexive-operators", Generator::Relations { n: 2 })
        .filter(&["reflexive"])
        .check(&["A2", "roundtrip", "euclidean<=>A4"]);
    let r = run_campaign(&c, &cfg)?;
    print!("{}", r.to_jsonl());

    // K0 is meant to fail A1'; the record is kept and is not a violation.
    let k0 = Campaign::new("k0", Generator::Builtins(vec!["K0".into()])).check(&["A2"]).expect_fail(&["A1'"]);
    print!("{}", run_campaign(&k0, &cfg)?.to_jsonl());

    let sampled = Campaign::new("sampled-n3", Generator::SampledSelectionFunctions { n: 3, samples: cfg.samples })
        .check(&["S1'&S7'=>S9'", "S4'=>C4'"]);
    println!("{}", run_campaign(&sampled, &cfg)?.summary_json());

    let suite = run_suite("prop1", &cfg)?;
    println!("{}", suite.summary_json());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
