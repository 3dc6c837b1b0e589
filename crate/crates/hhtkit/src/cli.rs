//! Command-line front end. [`run`] does the work and returns the exit code
//! with both renderings, so the binary only prints.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use hhtkit_core::herbrand::{evaluation_count, hht_valid_bruteforce, HerbrandError, HerbrandValidity, DEFAULT_BUDGET};
use hhtkit_core::ht::{ht_valid_with_limit, Validity, DEFAULT_ATOM_LIMIT};
use hhtkit_core::instance::{instantiate, validate};
use hhtkit_core::kernel::check_proof;
use hhtkit_core::Mode;
use serde_json::{json, Value};

use crate::files::{parse_fof, parse_proof, parse_prop_file, parse_subst, write_fof, FofFile};
use crate::pipeline::{mode_name, run_pipeline, InstanceStats, EXIT_NON_CERTIFYING};
use crate::syntax::ParseError;

pub const BUDGET_VAR: &str = "HHTKIT_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "hhtkit", version, about = "Check HHT proofs and the HT-validity of their infinitary instances")]
pub struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a `.proof` file line by line.
    CheckProof { proof: PathBuf },
    /// Print the instance of a closed formula under a substitution.
    Instantiate {
        formula: PathBuf,
        subst: PathBuf,
        /// Truncate the Herbrand universe at this term depth (approximate).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Decide HT-validity of a `.prop` formula.
    HtValid { prop: PathBuf },
    /// Print the first countermodel of a `.prop` formula, if any.
    Countermodel { prop: PathBuf },
    /// Rewrite generalized variables away.
    EliminateRestrictors { formula: PathBuf },
    /// Brute-force HHT-validity over Herbrand HT-interpretations.
    HerbrandCheck {
        formula: PathBuf,
        /// Maximum number of evaluations; overrides HHTKIT_BUDGET.
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Proof check, instantiation and validity check in one run.
    Pipeline {
        proof: PathBuf,
        subst: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(code: i32, text: String, json: Value) -> Self {
        Outcome { code, text, json }
    }

    fn error(message: String) -> Self {
        Outcome::new(2, format!("error: {message}\n"), json!({ "error": message }))
    }
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| Outcome::error(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: fn(&str) -> Result<T, ParseError>) -> Result<T, Outcome> {
    parse(&read(path)?).map_err(|e| Outcome::error(format!("{}:{e}", path.display())))
}

fn mode_of(depth: Option<usize>) -> Mode {
    depth.map_or(Mode::Exact, Mode::Bounded)
}

const BOUNDED_LABEL: &str = "bounded mode: non-validity-preserving\n";

/// The enumeration budget: flag, then environment, then the default.
fn budget(flag: Option<u128>) -> Result<u128, Outcome> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Outcome::error(format!("{BUDGET_VAR}=`{v}` is not a number"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Atom ceiling for propositional checks: the default, or the largest `n`
/// with `3^n` within an explicit budget.
fn atom_limit() -> Result<usize, Outcome> {
    if std::env::var_os(BUDGET_VAR).is_none() {
        return Ok(DEFAULT_ATOM_LIMIT);
    }
    let b = budget(None)?;
    let mut n = 0;
    while 3u128.checked_pow(n as u32 + 1).is_some_and(|p| p <= b) {
        n += 1;
    }
    Ok(n)
}

pub fn run(cli: &Cli) -> Outcome {
    let out = match &cli.command {
        Command::CheckProof { proof } => check(proof),
        Command::Instantiate { formula, subst, depth } => instantiate_cmd(formula, subst, mode_of(*depth)),
        Command::HtValid { prop } => ht_valid_cmd(prop, false),
        Command::Countermodel { prop } => ht_valid_cmd(prop, true),
        Command::EliminateRestrictors { formula } => eliminate(formula),
        Command::HerbrandCheck { formula, budget: b, depth } => herbrand(formula, *b, mode_of(*depth)),
        Command::Pipeline { proof, subst, depth } => pipeline(proof, subst, mode_of(*depth)),
    };
    out.unwrap_or_else(|e| e)
}

fn check(path: &Path) -> Result<Outcome, Outcome> {
    let proof = load(path, parse_proof)?;
    Ok(match check_proof(&proof) {
        Ok(c) => Outcome::new(
            0,
            format!("accepted at {} ({} lines): {c}\n", proof.level, proof.lines.len()),
            json!({ "accepted": true, "level": proof.level.name(), "lines": proof.lines.len(), "conclusion": c.to_string() }),
        ),
        Err(e) => {
            let just = proof.lines.iter().find(|l| l.number == e.line).map(|l| l.justification.to_string());
            let mut text = format!("rejected: {e}\n");
            if let Some(j) = &just {
                let _ = writeln!(text, "  justification: {j}");
            }
            Outcome::new(
                1,
                text,
                json!({
                    "accepted": false,
                    "level": proof.level.name(),
                    "error": { "line": e.line, "kind": e.kind.name(), "reason": e.reason, "justification": just },
                }),
            )
        }
    })
}

fn instantiate_cmd(fof: &Path, subst: &Path, mode: Mode) -> Result<Outcome, Outcome> {
    let FofFile { signature, formula } = load(fof, parse_fof)?;
    let psi = load(subst, parse_subst)?;
    if !signature.is_subsignature_of(psi.signature()) {
        return Err(Outcome::error("the formula's signature is not contained in the substitution's".into()));
    }
    let inst = instantiate(&psi, &formula, mode).map_err(|e| {
        let missing = validate(&psi, &formula, mode);
        if missing.is_empty() {
            Outcome::error(e.to_string())
        } else {
            let names: Vec<String> = missing.iter().map(ToString::to_string).collect();
            Outcome::error(format!("substitution has no value for: {}", names.join(", ")))
        }
    })?;
    let st = InstanceStats::of(&inst);
    let mut text = format!("mode: {}\n", mode_name(mode));
    if !mode.is_exact() {
        text += BOUNDED_LABEL;
    }
    let _ = writeln!(text, "instance: {inst}");
    let _ = writeln!(text, "atoms: {}, rank: {}, nodes: {}", st.atoms, st.rank, st.nodes);
    Ok(Outcome::new(
        0,
        text,
        json!({ "mode": mode_name(mode), "approximate": !mode.is_exact(), "instance": inst.to_string(), "stats": st }),
    ))
}

fn ht_valid_cmd(path: &Path, only_countermodel: bool) -> Result<Outcome, Outcome> {
    let f = load(path, parse_prop_file)?;
    let limit = atom_limit()?;
    let v = ht_valid_with_limit(&f, limit).map_err(|e| Outcome::error(e.to_string()))?;
    Ok(match v {
        Validity::Valid => {
            let text = if only_countermodel { "no countermodel: valid\n" } else { "valid\n" };
            Outcome::new(0, text.into(), json!({ "valid": true, "countermodel": null }))
        }
        Validity::Countermodel(cm) => {
            let r = cm.render();
            let text = if only_countermodel { r.clone() } else { format!("not valid; countermodel:\n{r}") };
            Outcome::new(1, text, json!({ "valid": false, "countermodel": r }))
        }
    })
}

fn eliminate(path: &Path) -> Result<Outcome, Outcome> {
    let fof = load(path, parse_fof)?;
    let out = FofFile { formula: fof.formula.eliminate_restrictors(), signature: fof.signature };
    Ok(Outcome::new(0, write_fof(&out), json!({ "formula": out.formula.to_string() })))
}

fn herbrand(path: &Path, flag: Option<u128>, mode: Mode) -> Result<Outcome, Outcome> {
    let FofFile { signature, formula } = load(path, parse_fof)?;
    let budget = budget(flag)?;
    let required = evaluation_count(&formula, &signature, mode).map_err(|e| Outcome::error(e.to_string()))?;
    let label = if mode.is_exact() { "" } else { BOUNDED_LABEL };
    let base = json!({ "mode": mode_name(mode), "approximate": !mode.is_exact(), "evaluations": required.to_string(), "budget": budget.to_string() });
    let with = |mut v: Value, extra: Value| {
        if let (Some(m), Value::Object(e)) = (v.as_object_mut(), extra) {
            m.extend(e);
        }
        v
    };
    match hht_valid_bruteforce(&formula, &signature, mode, budget) {
        Ok(HerbrandValidity::Valid) => {
            let code = if mode.is_exact() { 0 } else { EXIT_NON_CERTIFYING };
            Ok(Outcome::new(code, format!("{label}valid ({required} evaluations)\n"), with(base, json!({ "valid": true }))))
        }
        Ok(HerbrandValidity::Countermodel(cm)) => {
            let r = cm.render();
            Ok(Outcome::new(
                1,
                format!("{label}not valid; countermodel:\n{r}"),
                with(base, json!({ "valid": false, "countermodel": r })),
            ))
        }
        Err(e @ HerbrandError::BudgetExceeded { .. }) => {
            Err(Outcome::new(2, format!("error: {e}\n"), with(base, json!({ "error": e.to_string() }))))
        }
        Err(e) => Err(Outcome::error(e.to_string())),
    }
}

fn pipeline(proof: &Path, subst: &Path, mode: Mode) -> Result<Outcome, Outcome> {
    let p = load(proof, parse_proof)?;
    let psi = load(subst, parse_subst)?;
    let report = run_pipeline(&p, &psi, mode, atom_limit()?);
    let json = serde_json::to_value(&report).expect("report serializes");
    Ok(Outcome::new(report.exit_code(), report.render_text(), json))
}
