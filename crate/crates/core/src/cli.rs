//! The `eventlogic` command line. Every command writes line-delimited JSON
//! records to stdout. Exit codes: 0 when the command succeeds or the checked
//! property holds, 1 when it fails (the witness is on stdout), 2 for usage
//! and format errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::conditional::{ConditionalAxiom, SymbolicConditionalOperator};
use crate::epistemic::EpistemicAxiom;
use crate::error::{Error, Result};
use crate::harness::{builtin, counterexample_campaigns, run_campaign, run_suite, Candidate, Property, RunConfig};
use crate::io;
use crate::preferential::synthesize_preorder;
use crate::sets::{FinCofEvent, Universe};
use crate::syntax::{event_formula_satisfiable, parse_formula, EventFormula, Scheme};
use crate::verdict::SymWorld;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "eventlogic", version, about = "Finite-model checks for epistemic and conditional logic")]
struct Cli {
    /// Seed for sampled generators.
    #[arg(long, global = true, default_value_t = crate::harness::DEFAULT_SEED)]
    seed: u64,
    /// Sample count for sampled generators.
    #[arg(long, global = true, default_value_t = crate::harness::DEFAULT_SAMPLES)]
    samples: u64,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Add wall-clock times to campaign summaries.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Relation,
    Operator,
    Selection,
    Conditional,
    Frame,
    Structure,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum From {
    Operator,
    Conditional,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Selection,
    Frame,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check named properties of a relation, operator, selection function or frame.
    Check {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Comma-separated property names, e.g. `reflexive,A2` or `S1'&S7'=>S9'`.
        #[arg(long, value_delimiter = ',', required = true)]
        props: Vec<String>,
        file: PathBuf,
    },
    /// Synthesize a relation from a knowledge operator, or a selection
    /// function or frame from a conditional operator.
    Synth {
        #[arg(long, value_enum)]
        from: From,
        /// What to build from a conditional operator.
        #[arg(long, value_enum, default_value = "selection")]
        to: Target,
        /// Axioms asserted before frame synthesis, e.g. `C7'`.
        #[arg(long = "assert", value_delimiter = ',')]
        asserted: Vec<String>,
        file: PathBuf,
    },
    /// Check that synthesis and derivation are mutually inverse on a file.
    Roundtrip { file: PathBuf },
    /// Model-check a formula at a world.
    Mc {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        world: String,
        #[arg(long)]
        formula: String,
    },
    /// Print the set of worlds where a formula holds.
    Intension {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Check the validity of an axiom scheme in a structure.
    Scheme {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        name: String,
    },
    /// Decide an event formula over relations on a small universe.
    Evsat {
        #[arg(long)]
        w0: usize,
        #[arg(long, value_delimiter = ',')]
        axioms: Vec<String>,
        #[arg(long)]
        formula: String,
    },
    /// Run a verification suite.
    Suite {
        #[arg(long)]
        name: String,
    },
    /// Reproduce a builtin counterexample, or evaluate a probe on it.
    Examples {
        #[arg(long)]
        name: String,
        /// An event such as `E1~>E5`, `H0~>{}`, `K(E2)` or `K{1}`.
        #[arg(long)]
        probe: Option<String>,
    },
}

/// Outcome of a command: the records to print and the exit code.
struct Output {
    lines: Vec<Value>,
    code: i32,
}

impl Output {
    fn one(v: Value, ok: bool) -> Self {
        Output { lines: vec![v], code: if ok { EXIT_OK } else { EXIT_FAILS } }
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = writeln!(out, "{}", json!({ "help": text }));
                return EXIT_OK;
            }
            let _ = writeln!(out, "{}", json!({ "error": { "kind": "usage", "message": text.trim_end() } }));
            let _ = write!(err, "{text}");
            return EXIT_USAGE;
        }
    };
    let cfg = RunConfig { seed: cli.seed, samples: cli.samples, jobs: cli.jobs, timing: cli.timing };
    match dispatch(cli.command, &cfg) {
        Ok(o) => {
            for line in &o.lines {
                let _ = writeln!(out, "{line}");
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(out, "{}", error_json(&e));
            let _ = writeln!(err, "eventlogic: {e}");
            EXIT_USAGE
        }
    }
}

fn error_json(e: &Error) -> Value {
    match e {
        Error::Syntax { line, col, msg } => {
            json!({ "error": { "kind": "syntax", "line": line, "col": col, "message": msg } })
        }
        other => json!({ "error": { "kind": "input", "message": other.to_string() } }),
    }
}

fn read(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    io::parse_json(&text)
}

fn load(kind: Kind, value: &Value) -> Result<Candidate> {
    Ok(match kind {
        Kind::Relation => Candidate::Relation(io::relation_from_json(value)?),
        Kind::Operator => Candidate::Knowledge(io::operator_from_json(value)?),
        Kind::Selection => Candidate::Selection(io::selection_from_json(value)?),
        Kind::Conditional => Candidate::Conditional(io::conditional_from_json(value)?),
        Kind::Frame => Candidate::Frame(io::frame_from_json(value)?),
        Kind::Structure => Candidate::Structure(io::structure_from_json(value)?),
    })
}

/// Guesses the file kind from its keys.
fn detect(value: &Value) -> Result<Kind> {
    let has = |k: &str| value.get(k).is_some();
    if has("pi") {
        Ok(Kind::Structure)
    } else if has("edges") {
        Ok(Kind::Relation)
    } else if has("table") {
        Ok(Kind::Operator)
    } else if has("orders") {
        Ok(Kind::Frame)
    } else if let Some(rows) = value.get("rows").and_then(Value::as_array) {
        let selection = rows.first().is_none_or(|r| r.get("w").is_some());
        Ok(if selection { Kind::Selection } else { Kind::Conditional })
    } else {
        Err(Error::Format("cannot tell the file kind: expected edges, table, rows or orders".into()))
    }
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Relation => "relation",
        Kind::Operator => "operator",
        Kind::Selection => "selection",
        Kind::Conditional => "conditional",
        Kind::Frame => "frame",
        Kind::Structure => "structure",
    }
}

fn dispatch(cmd: Command, cfg: &RunConfig) -> Result<Output> {
    match cmd {
        Command::Check { kind, props, file } => {
            let cand = load(kind, &read(&file)?)?;
            let props: Vec<Property> = props.iter().map(|p| Property::parse(p.trim())).collect::<Result<_>>()?;
            let mut lines = Vec::new();
            let mut all = true;
            for p in &props {
                let o = p.check(&cand, cfg.seed)?;
                all &= o.holds;
                lines.push(json!({
                    "command": "check",
                    "kind": kind_name(kind),
                    "property": p.name(),
                    "ok": o.holds,
                    "witness": o.witness,
                }));
            }
            Ok(Output { lines, code: if all { EXIT_OK } else { EXIT_FAILS } })
        }
        Command::Synth { from, to, asserted, file } => {
            let value = read(&file)?;
            let result = match (from, to) {
                (From::Operator, _) => io::relation_to_json(&io::operator_from_json(&value)?.synthesize_relation()),
                (From::Conditional, Target::Selection) => {
                    io::selection_to_json(&io::conditional_from_json(&value)?.synthesize_selection())
                }
                (From::Conditional, Target::Frame) => {
                    let op = io::conditional_from_json(&value)?;
                    let axioms: Vec<ConditionalAxiom> =
                        asserted.iter().map(|a| a.trim().parse()).collect::<Result<_>>()?;
                    match synthesize_preorder(&op, &axioms) {
                        Ok(frame) => io::frame_to_json(&frame),
                        Err(e @ (Error::AxiomFails { .. } | Error::NotModular(_))) => {
                            let line = json!({ "command": "synth", "ok": false, "reason": e.to_string() });
                            return Ok(Output::one(line, false));
                        }
                        Err(e) => return Err(e),
                    }
                }
            };
            let from = match from {
                From::Operator => "operator",
                From::Conditional => "conditional",
            };
            Ok(Output::one(json!({ "command": "synth", "from": from, "ok": true, "result": result }), true))
        }
        Command::Roundtrip { file } => {
            let value = read(&file)?;
            let kind = detect(&value)?;
            let cand = load(kind, &value)?;
            let o = Property::parse("roundtrip")?.check(&cand, cfg.seed)?;
            let line = json!({ "command": "roundtrip", "kind": kind_name(kind), "ok": o.holds, "witness": o.witness });
            Ok(Output::one(line, o.holds))
        }
        Command::Mc { structure, world, formula } => {
            let m = io::structure_from_json(&read(&structure)?)?;
            let phi = parse_formula(&formula)?;
            let holds = m.model_check(&world, &phi)?;
            let intension = m.intension_of(&phi)?.world_names();
            let line = json!({
                "command": "mc",
                "world": world,
                "formula": phi.to_string(),
                "holds": holds,
                "intension": intension,
            });
            Ok(Output::one(line, holds))
        }
        Command::Intension { structure, formula } => {
            let m = io::structure_from_json(&read(&structure)?)?;
            let phi = parse_formula(&formula)?;
            let intension = m.intension_of(&phi)?.world_names();
            Ok(Output::one(
                json!({ "command": "intension", "formula": phi.to_string(), "intension": intension }),
                true,
            ))
        }
        Command::Scheme { structure, name } => {
            let m = io::structure_from_json(&read(&structure)?)?;
            let scheme: Scheme = name.trim().parse()?;
            let v = m.scheme_validity(scheme)?;
            let witness = v.witness().map_or(Value::Null, |w| w.to_json(m.universe()));
            let line = json!({ "command": "scheme", "name": scheme.name(), "valid": v.holds(), "witness": witness });
            Ok(Output::one(line, v.holds()))
        }
        Command::Evsat { w0, axioms, formula } => {
            let u = Universe::numbered(w0)?;
            let axioms: Vec<EpistemicAxiom> = axioms.iter().map(|a| a.trim().parse()).collect::<Result<_>>()?;
            let ef = EventFormula::parse(&formula)?;
            let found = event_formula_satisfiable(&ef, &u, &axioms)?;
            let line = json!({
                "command": "evsat",
                "w0": w0,
                "axioms": axioms.iter().map(|a| a.name()).collect::<Vec<_>>(),
                "satisfiable": found.is_some(),
                "relation": found.as_ref().map_or(Value::Null, io::relation_to_json),
            });
            Ok(Output::one(line, found.is_some()))
        }
        Command::Suite { name } => {
            let r = run_suite(&name, cfg)?;
            let lines = r.to_jsonl().lines().map(|l| serde_json::from_str(l).expect("report lines are JSON")).collect();
            Ok(Output { lines, code: if r.violations() == 0 { EXIT_OK } else { EXIT_FAILS } })
        }
        Command::Examples { name, probe } => match probe {
            None => {
                let candidate = builtin(&name)?.to_json();
                let campaign = counterexample_campaigns()
                    .into_iter()
                    .find(|c| c.name.strip_prefix("counterexample-") == Some(candidate.as_str().unwrap_or(&name)))
                    .ok_or_else(|| Error::UnknownBuiltin(name.clone()))?;
                let r = run_campaign(&campaign, cfg)?;
                let lines = r.to_jsonl().lines().map(|l| serde_json::from_str(l).expect("report lines are JSON")).collect();
                Ok(Output { lines, code: if r.violations() == 0 { EXIT_OK } else { EXIT_FAILS } })
            }
            Some(text) => Ok(Output::one(probe_example(&name, &text)?, true)),
        },
    }
}

/// Evaluates a probe on a builtin. Symbolic events are written `Ej` (ℕ∖{j}),
/// `Hk` ({k, k+1, ...}), `N`, `{1,2}`, `~X` and `X~>Y` or `K(X)`; events of
/// the finite operator `K0` are world lists such as `{2,3}`.
fn probe_example(name: &str, text: &str) -> Result<Value> {
    let mut p = ProbeParser { text, pos: 0 };
    let base = json!({ "command": "examples", "name": name, "probe": text });
    let with = |mut v: Value, extra: Value| {
        v.as_object_mut().expect("object").extend(extra.as_object().expect("object").clone());
        v
    };
    match builtin(name)? {
        Candidate::Knowledge(k) => {
            p.keyword('K')?;
            let e = p.finite_event(k.universe())?;
            p.end()?;
            let out = k.apply(&e)?;
            Ok(with(base, json!({ "event": out.world_names() })))
        }
        Candidate::SymbolicKnowledge(k) => {
            p.keyword('K')?;
            let e = p.event()?;
            p.end()?;
            Ok(with(base, sym_json(&k.apply(&e))))
        }
        Candidate::SymbolicConditional(c) => {
            let h = p.event()?;
            p.arrow()?;
            let e = p.event()?;
            p.end()?;
            match c {
                SymbolicConditionalOperator::Example5 => Ok(with(base, sym_json(&c.apply(&h, &e)?))),
                _ => {
                    let holds = c.holds_at(SymWorld::Infinity, &h, &e)?;
                    Ok(with(base, json!({ "world": SymWorld::Infinity.to_json(), "holds": holds })))
                }
            }
        }
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

fn sym_json(e: &FinCofEvent) -> Value {
    json!({ "event": e, "text": e.to_string() })
}

struct ProbeParser<'a> {
    text: &'a str,
    pos: usize,
}

impl ProbeParser<'_> {
    fn skip(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip();
        self.text[self.pos..].chars().next()
    }

    fn fail(&self, msg: &str) -> Error {
        let col = self.text[..self.pos].chars().count() + 1;
        Error::Syntax { line: 1, col, msg: msg.to_string() }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, c: char) -> Result<()> {
        if self.eat(&c.to_string()) {
            Ok(())
        } else {
            Err(self.fail(&format!("expected `{c}`")))
        }
    }

    fn arrow(&mut self) -> Result<()> {
        if self.eat("~>") {
            Ok(())
        } else {
            Err(self.fail("expected `~>`"))
        }
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.fail("unexpected trailing input")),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip();
        let digits: String = self.text[self.pos..].chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.fail("expected a number"));
        }
        let n = digits.parse().map_err(|_| self.fail("number out of range"))?;
        self.pos += digits.len();
        Ok(n)
    }

    fn items(&mut self) -> Result<Vec<String>> {
        if !self.eat("{") {
            return Err(self.fail("expected `{`"));
        }
        let mut out = Vec::new();
        if self.eat("}") {
            return Ok(out);
        }
        loop {
            self.skip();
            let item: String = self.text[self.pos..]
                .chars()
                .take_while(|c| c.is_alphanumeric() || *c == '_')
                .collect();
            if item.is_empty() {
                return Err(self.fail("expected a set member"));
            }
            self.pos += item.len();
            out.push(item);
            if self.eat("}") {
                return Ok(out);
            }
            if !self.eat(",") {
                return Err(self.fail("expected `,` or `}`"));
            }
        }
    }

    fn event(&mut self) -> Result<FinCofEvent> {
        match self.peek() {
            Some('~') => {
                self.pos += 1;
                Ok(self.event()?.complement())
            }
            Some('(') => {
                self.pos += 1;
                let e = self.event()?;
                if !self.eat(")") {
                    return Err(self.fail("expected `)`"));
                }
                Ok(e)
            }
            Some('E') => {
                self.pos += 1;
                Ok(FinCofEvent::co_singleton(self.number()?))
            }
            Some('H') => {
                self.pos += 1;
                Ok(FinCofEvent::tail_from(self.number()?))
            }
            Some('N') => {
                self.pos += 1;
                Ok(FinCofEvent::full())
            }
            Some('{') => {
                let start = self.pos;
                let members = self
                    .items()?
                    .iter()
                    .map(|s| s.parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| {
                        self.pos = start;
                        self.fail("set members must be natural numbers")
                    });
                Ok(FinCofEvent::finite(members?))
            }
            _ => Err(self.fail("expected an event")),
        }
    }

    fn finite_event(&mut self, u: &Universe) -> Result<crate::sets::Event> {
        match self.peek() {
            Some('~') => {
                self.pos += 1;
                Ok(self.finite_event(u)?.complement())
            }
            Some('(') => {
                self.pos += 1;
                let e = self.finite_event(u)?;
                if !self.eat(")") {
                    return Err(self.fail("expected `)`"));
                }
                Ok(e)
            }
            _ => {
                let items = self.items()?;
                u.event(&items)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("eventlogic").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn usage_errors_are_json() {
        let (code, out) = run_str(&["frobnicate"]);
        assert_eq!(code, EXIT_USAGE);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
    }

    #[test]
    fn probes() {
        let (code, out) = run_str(&["examples", "--name", "omega-lewis", "--probe", "H0~>{}"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains(r#""holds":false"#), "{out}");
        let (_, out) = run_str(&["examples", "--name", "K0", "--probe", "K{2,3}"]);
        assert!(out.contains(r#""event":[]"#), "{out}");
        let (code, out) = run_str(&["examples", "--name", "example5", "--probe", "E1~>{x}"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.contains(r#""col":5"#), "{out}");
    }
}
