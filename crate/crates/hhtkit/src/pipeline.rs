//! Proof → conclusion → instance → HT-validity, with a report per stage.

use std::fmt::Write as _;
use std::time::Instant;

use hhtkit_core::ht::{ht_valid_with_limit, Validity};
use hhtkit_core::instance::{instantiate, validate};
use hhtkit_core::kernel::{conclusion_for_pipeline, ConclusionError, Proof};
use hhtkit_core::{Mode, Prop, Substitution};
use serde::Serialize;

/// Exit status for a bounded run whose instance came out valid: not a
/// failure, but not a certificate either.
pub const EXIT_NON_CERTIFYING: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Accepted proof, exact instance, instance HT-valid.
    Certified,
    /// Exact instance with a countermodel. Impossible for an accepted proof
    /// unless something upstream is unsound.
    Countermodel,
    Rejected,
    /// Bounded mode: the result says nothing about the untruncated instance.
    NonCertifying,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocatedError {
    pub line: usize,
    pub kind: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofStage {
    pub accepted: bool,
    pub level: String,
    pub lines: usize,
    pub error: Option<LocatedError>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InstanceStats {
    pub atoms: usize,
    pub rank: usize,
    pub nodes: usize,
}

impl InstanceStats {
    pub fn of(p: &Prop) -> Self {
        InstanceStats { atoms: p.atoms().len(), rank: p.rank(), nodes: p.node_count() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidityStage {
    pub valid: bool,
    pub countermodel: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    pub proof_ms: f64,
    pub instantiation_ms: Option<f64>,
    pub validity_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub proof: ProofStage,
    pub conclusion: Option<String>,
    pub mode: String,
    pub approximate: bool,
    pub instance: Option<InstanceStats>,
    pub validity: Option<ValidityStage>,
    pub error: Option<String>,
    pub verdict: Verdict,
    pub timings: Timings,
}

pub fn mode_name(mode: Mode) -> String {
    match mode {
        Mode::Exact => "exact".into(),
        Mode::Bounded(d) => format!("bounded({d})"),
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Runs every stage that its predecessors allow. The proof is checked
/// twice: as written, and again under the substitution's signature, since
/// the domain closure axiom depends on the signature.
pub fn run_pipeline(proof: &Proof, psi: &Substitution, mode: Mode, atom_limit: usize) -> PipelineReport {
    let mut report = PipelineReport {
        proof: ProofStage { accepted: false, level: proof.level.to_string(), lines: proof.lines.len(), error: None },
        conclusion: None,
        mode: mode_name(mode),
        approximate: !mode.is_exact(),
        instance: None,
        validity: None,
        error: None,
        verdict: Verdict::Rejected,
        timings: Timings::default(),
    };
    let t = Instant::now();
    let checked = conclusion_for_pipeline(proof).and_then(|c| {
        if !proof.signature.is_subsignature_of(psi.signature()) {
            return Err(ConclusionError::Proof(hhtkit_core::kernel::ProofError {
                line: 0,
                kind: hhtkit_core::kernel::ProofErrorKind::IllFormed,
                reason: "the proof's signature is not contained in the substitution's signature".into(),
            }));
        }
        let under_psi = Proof { signature: psi.signature().clone(), ..proof.clone() };
        conclusion_for_pipeline(&under_psi).map(|_| c)
    });
    report.timings.proof_ms = ms(t);
    let conclusion = match checked {
        Ok(c) => c,
        Err(e) => {
            report.proof.error = Some(match e {
                ConclusionError::Proof(p) => LocatedError { line: p.line, kind: p.kind.name().into(), reason: p.reason },
                other => LocatedError {
                    line: proof.lines.len(),
                    kind: "ConclusionRejected".into(),
                    reason: other.to_string(),
                },
            });
            return report;
        }
    };
    report.proof.accepted = true;
    report.conclusion = Some(conclusion.to_string());

    let t = Instant::now();
    let instance = instantiate(psi, &conclusion, mode);
    report.timings.instantiation_ms = Some(ms(t));
    let instance = match instance {
        Ok(p) => p,
        Err(e) => {
            let missing = validate(psi, &conclusion, mode);
            report.error = Some(if missing.is_empty() {
                e.to_string()
            } else {
                let names: Vec<String> = missing.iter().map(ToString::to_string).collect();
                format!("substitution has no value for: {}", names.join(", "))
            });
            report.verdict = Verdict::Error;
            return report;
        }
    };
    report.instance = Some(InstanceStats::of(&instance));

    let t = Instant::now();
    let validity = ht_valid_with_limit(&instance, atom_limit);
    report.timings.validity_ms = Some(ms(t));
    match validity {
        Ok(Validity::Valid) => {
            report.validity = Some(ValidityStage { valid: true, countermodel: None });
        }
        Ok(Validity::Countermodel(cm)) => {
            report.validity = Some(ValidityStage { valid: false, countermodel: Some(cm.render()) });
        }
        Err(e) => {
            report.error = Some(e.to_string());
            report.verdict = Verdict::Error;
            return report;
        }
    }
    let valid = report.validity.as_ref().is_some_and(|v| v.valid);
    report.verdict = match (mode.is_exact(), valid) {
        (true, true) => Verdict::Certified,
        (true, false) => Verdict::Countermodel,
        (false, _) => Verdict::NonCertifying,
    };
    report
}

impl PipelineReport {
    /// 0 certified, 1 rejected or countermodel, 2 input error, 3 bounded
    /// and valid.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Certified => 0,
            Verdict::Countermodel | Verdict::Rejected => 1,
            Verdict::Error => 2,
            Verdict::NonCertifying => {
                if self.validity.as_ref().is_some_and(|v| v.valid) {
                    EXIT_NON_CERTIFYING
                } else {
                    1
                }
            }
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        match &self.proof.error {
            None => {
                let _ = writeln!(s, "proof: accepted at {} ({} lines)", self.proof.level, self.proof.lines);
            }
            Some(e) => {
                let _ = writeln!(s, "proof: rejected: line {}: {}: {}", e.line, e.kind, e.reason);
            }
        }
        if let Some(c) = &self.conclusion {
            let _ = writeln!(s, "conclusion: {c}");
        }
        let _ = writeln!(s, "mode: {}", self.mode);
        if self.approximate {
            s.push_str("bounded mode: non-validity-preserving\n");
        }
        if let Some(st) = &self.instance {
            let _ = writeln!(s, "instance: {} atoms, rank {}, {} nodes", st.atoms, st.rank, st.nodes);
        }
        match &self.validity {
            Some(ValidityStage { valid: true, .. }) => s.push_str("validity: valid\n"),
            Some(ValidityStage { countermodel: Some(cm), .. }) => {
                s.push_str("validity: countermodel\n");
                for l in cm.lines() {
                    let _ = writeln!(s, "  {l}");
                }
            }
            _ => {}
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        let verdict = serde_json::to_value(self.verdict).ok().and_then(|v| v.as_str().map(String::from));
        let _ = writeln!(s, "verdict: {}", verdict.unwrap_or_default());
        let _ = write!(s, "timings: proof {:.3} ms", self.timings.proof_ms);
        if let Some(t) = self.timings.instantiation_ms {
            let _ = write!(s, ", instantiation {t:.3} ms");
        }
        if let Some(t) = self.timings.validity_ms {
            let _ = write!(s, ", validity {t:.3} ms");
        }
        s.push('\n');
        s
    }
}
