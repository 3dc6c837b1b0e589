//! Hilbert-style proof checking for HHT, HHT² and HHT²+DCA.
//!
//! Axiom lines name a schema and give an explicit binding for its
//! metavariables. The checker builds the instance from the binding and
//! compares it with the line up to renaming of bound variables; it never
//! searches for a unifier. Restrictors are eliminated from every line before
//! comparison. Proofs have no premises.

mod schema;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::formula::{Binder, Formula, Quantifier, Var};
use crate::signature::Signature;

pub use schema::{dca, list_schemas, schema, Binding, MetaKind, MetaValue, SchemaInfo, SoTarget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoryLevel {
    Hht,
    Hht2,
    Hht2Dca,
}

impl TheoryLevel {
    pub fn name(self) -> &'static str {
        match self {
            TheoryLevel::Hht => "HHT",
            TheoryLevel::Hht2 => "HHT2",
            TheoryLevel::Hht2Dca => "HHT2+DCA",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "HHT" => Some(TheoryLevel::Hht),
            "HHT2" => Some(TheoryLevel::Hht2),
            "HHT2+DCA" => Some(TheoryLevel::Hht2Dca),
            _ => None,
        }
    }
}

impl fmt::Display for TheoryLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Axiom { schema: String, binding: Binding },
    /// `Mp(i, j)`: line `i` is `A`, line `j` is `A → current`.
    Mp(usize, usize),
    GenAll(usize, String),
    GenEx(usize, String),
    /// Generalization over a predicate or function variable.
    SoGen(usize, Var),
    SoGenEx(usize, Var),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom { schema, binding } => {
                write!(f, "axiom {schema}")?;
                for (i, (k, v)) in binding.iter().enumerate() {
                    f.write_str(if i == 0 { " with " } else { ", " })?;
                    write!(f, "{k} := {v}")?;
                }
                Ok(())
            }
            Justification::Mp(i, j) => write!(f, "mp {i} {j}"),
            Justification::GenAll(i, x) => write!(f, "gen-all {i} {x}"),
            Justification::GenEx(i, x) => write!(f, "gen-ex {i} {x}"),
            Justification::SoGen(i, v) => write!(f, "so-gen {i} {v}"),
            Justification::SoGenEx(i, v) => write!(f, "so-gen-ex {i} {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub number: usize,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub signature: Signature,
    pub level: TheoryLevel,
    pub lines: Vec<ProofLine>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProofErrorKind {
    SchemaMismatch,
    SideConditionViolation,
    MpMismatch,
    ForwardReference,
    LevelViolation,
    UnknownSchema,
    BadBinding,
    IllFormed,
    EmptyProof,
}

impl ProofErrorKind {
    pub fn name(self) -> &'static str {
        match self {
            ProofErrorKind::SchemaMismatch => "SchemaMismatch",
            ProofErrorKind::SideConditionViolation => "SideConditionViolation",
            ProofErrorKind::MpMismatch => "MPMismatch",
            ProofErrorKind::ForwardReference => "ForwardReference",
            ProofErrorKind::LevelViolation => "LevelViolation",
            ProofErrorKind::UnknownSchema => "UnknownSchema",
            ProofErrorKind::BadBinding => "BadBinding",
            ProofErrorKind::IllFormed => "IllFormed",
            ProofErrorKind::EmptyProof => "EmptyProof",
        }
    }
}

/// A rejected proof. `line` is the number of the offending line (0 for an
/// empty proof).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {}: {reason}", kind.name())]
pub struct ProofError {
    pub line: usize,
    pub kind: ProofErrorKind,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConclusionError {
    #[error(transparent)]
    Proof(#[from] ProofError),
    #[error("conclusion is not first-order")]
    NotFirstOrder,
    #[error("conclusion is not closed")]
    NotClosed,
}

/// Checks every line and returns the conclusion (the last line, as written).
pub fn check_proof(p: &Proof) -> Result<Formula, ProofError> {
    if p.lines.is_empty() {
        return Err(ProofError { line: 0, kind: ProofErrorKind::EmptyProof, reason: "proof has no lines".into() });
    }
    let mut checked: Vec<Formula> = Vec::with_capacity(p.lines.len());
    for (idx, line) in p.lines.iter().enumerate() {
        let n = idx + 1;
        let fail = |kind, reason: String| ProofError { line: line.number, kind, reason };
        if line.number != n {
            return Err(fail(ProofErrorKind::IllFormed, format!("expected line number {n}")));
        }
        line.formula.well_formed(&p.signature).map_err(|e| fail(ProofErrorKind::IllFormed, format!("{e}")))?;
        if p.level == TheoryLevel::Hht && !line.formula.is_first_order() {
            return Err(fail(ProofErrorKind::LevelViolation, "second-order formula at level HHT".into()));
        }
        let current = line.formula.eliminate_restrictors();
        check_line(p, &checked, &current, &line.justification).map_err(|(k, r)| fail(k, r))?;
        checked.push(current);
    }
    Ok(p.lines.last().expect("non-empty").formula.clone())
}

/// [`check_proof`], then requires the conclusion to be closed and
/// first-order (restrictors allowed).
pub fn conclusion_for_pipeline(p: &Proof) -> Result<Formula, ConclusionError> {
    let c = check_proof(p)?;
    if !c.is_first_order() {
        return Err(ConclusionError::NotFirstOrder);
    }
    if !c.is_closed() {
        return Err(ConclusionError::NotClosed);
    }
    Ok(c)
}

/// The instance of schema `id` under `binding`, with side conditions
/// checked. Errors carry line 0.
pub fn instantiate_schema(id: &str, binding: &Binding, sig: &Signature) -> Result<Formula, ProofError> {
    let fail = |(kind, reason)| ProofError { line: 0, kind, reason };
    let info = schema::schema(id)
        .ok_or_else(|| fail((ProofErrorKind::UnknownSchema, format!("no axiom schema named `{id}`"))))?;
    schema::instantiate(info, binding, sig).map_err(fail)
}

type Fail = (ProofErrorKind, String);

fn earlier(checked: &[Formula], i: usize) -> Result<&Formula, Fail> {
    if i == 0 || i > checked.len() {
        return Err((ProofErrorKind::ForwardReference, format!("line {i} is not an earlier line")));
    }
    Ok(&checked[i - 1])
}

fn require_level(p: &Proof, needed: TheoryLevel, what: &str) -> Result<(), Fail> {
    if p.level < needed {
        return Err((ProofErrorKind::LevelViolation, format!("{what} needs level {needed}, proof is at {}", p.level)));
    }
    Ok(())
}

fn so_binder(v: &Var) -> Result<Binder, Fail> {
    match v {
        Var::Pred(p) => Ok(Binder::Pred(p.clone())),
        Var::Fun(g) if g.arity > 0 => Ok(Binder::Fun(g.clone())),
        _ => Err((ProofErrorKind::IllFormed, format!("`{v}` is not a second-order variable"))),
    }
}

fn check_line(p: &Proof, checked: &[Formula], current: &Formula, j: &Justification) -> Result<(), Fail> {
    match j {
        Justification::Axiom { schema: id, binding } => {
            let info = schema::schema(id)
                .ok_or_else(|| (ProofErrorKind::UnknownSchema, format!("no axiom schema named `{id}`")))?;
            require_level(p, info.level, &format!("schema `{id}`"))?;
            let expected = schema::instantiate(info, binding, &p.signature)?;
            expected.well_formed(&p.signature).map_err(|e| (ProofErrorKind::IllFormed, format!("{e}")))?;
            if !expected.eliminate_restrictors().alpha_eq(current) {
                return Err((
                    ProofErrorKind::SchemaMismatch,
                    format!("line is not the instance `{expected}` of `{id}`"),
                ));
            }
            Ok(())
        }
        Justification::Mp(i, k) => {
            let a = earlier(checked, *i)?;
            let ab = earlier(checked, *k)?;
            match ab.as_imp() {
                Some((l, r)) if l.alpha_eq(a) && r.alpha_eq(current) => Ok(()),
                _ => Err((ProofErrorKind::MpMismatch, format!("line {k} is not line {i} -> this line"))),
            }
        }
        Justification::GenAll(i, x) => gen_all(checked, current, *i, Binder::Object(x.clone()), Var::Obj(x.clone())),
        Justification::GenEx(i, x) => gen_ex(checked, current, *i, Binder::Object(x.clone()), Var::Obj(x.clone())),
        Justification::SoGen(i, v) => {
            require_level(p, TheoryLevel::Hht2, "so-gen")?;
            gen_all(checked, current, *i, so_binder(v)?, v.clone())
        }
        Justification::SoGenEx(i, v) => {
            require_level(p, TheoryLevel::Hht2, "so-gen-ex")?;
            gen_ex(checked, current, *i, so_binder(v)?, v.clone())
        }
    }
}

/// `F ⊢ ∀vF`, and `G → F ⊢ G → ∀vF` when `v` is not free in `G`.
fn gen_all(checked: &[Formula], current: &Formula, i: usize, b: Binder, v: Var) -> Result<(), Fail> {
    let prem = earlier(checked, i)?;
    if Formula::quant(Quantifier::Forall, b.clone(), prem.clone()).alpha_eq(current) {
        return Ok(());
    }
    if let Some((g, f)) = prem.as_imp() {
        let bernays = Formula::imp(g.clone(), Formula::quant(Quantifier::Forall, b, f.clone()));
        if bernays.alpha_eq(current) {
            if g.free_variables().contains(&v) {
                return Err((ProofErrorKind::SideConditionViolation, format!("`{v}` is free in the antecedent")));
            }
            return Ok(());
        }
    }
    Err((ProofErrorKind::SchemaMismatch, format!("line does not follow from line {i} by generalizing `{v}`")))
}

/// `F → G ⊢ ∃vF → G` when `v` is not free in `G`.
fn gen_ex(checked: &[Formula], current: &Formula, i: usize, b: Binder, v: Var) -> Result<(), Fail> {
    let prem = earlier(checked, i)?;
    if let Some((f, g)) = prem.as_imp() {
        let want = Formula::imp(Formula::quant(Quantifier::Exists, b, f.clone()), g.clone());
        if want.alpha_eq(current) {
            if g.free_variables().contains(&v) {
                return Err((ProofErrorKind::SideConditionViolation, format!("`{v}` is free in the consequent")));
            }
            return Ok(());
        }
    }
    Err((ProofErrorKind::SchemaMismatch, format!("line does not follow from line {i} by existential generalization of `{v}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::PredVar;
    use crate::term::Term;
    use alloc::string::ToString;
    use alloc::vec;

    fn sig() -> Signature {
        Signature::new(
            vec![("a".to_string(), 0), ("b".to_string(), 0), ("s".to_string(), 1)],
            vec![("P".to_string(), 1), ("Q".to_string(), 0)],
            Vec::<String>::new(),
        )
        .unwrap()
    }

    fn pa() -> Formula {
        Formula::atom("P", vec![Term::constant("a")])
    }

    fn bind(pairs: &[(&str, MetaValue)]) -> Binding {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    fn fm(f: Formula) -> MetaValue {
        MetaValue::Formula(f)
    }

    fn ax(n: usize, formula: Formula, id: &str, b: &[(&str, MetaValue)]) -> ProofLine {
        ProofLine { number: n, formula, justification: Justification::Axiom { schema: id.into(), binding: bind(b) } }
    }

    fn line(n: usize, formula: Formula, j: Justification) -> ProofLine {
        ProofLine { number: n, formula, justification: j }
    }

    fn identity_proof() -> Proof {
        let p = pa();
        let pp = Formula::imp(p.clone(), p.clone());
        Proof {
            signature: sig(),
            level: TheoryLevel::Hht,
            lines: vec![
                ax(
                    1,
                    Formula::imp(
                        Formula::imp(p.clone(), Formula::imp(pp.clone(), p.clone())),
                        Formula::imp(Formula::imp(p.clone(), pp.clone()), pp.clone()),
                    ),
                    "s",
                    &[("F", fm(p.clone())), ("G", fm(pp.clone())), ("H", fm(p.clone()))],
                ),
                ax(2, Formula::imp(p.clone(), Formula::imp(pp.clone(), p.clone())), "k", &[("F", fm(p.clone())), ("G", fm(pp.clone()))]),
                line(3, Formula::imp(Formula::imp(p.clone(), pp.clone()), pp.clone()), Justification::Mp(2, 1)),
                ax(4, Formula::imp(p.clone(), pp.clone()), "k", &[("F", fm(p.clone())), ("G", fm(p.clone()))]),
                line(5, pp.clone(), Justification::Mp(4, 3)),
            ],
        }
    }

    #[test]
    fn identity_derivation_accepted() {
        let c = check_proof(&identity_proof()).unwrap();
        assert_eq!(c.to_string(), "P(a) -> P(a)");
    }

    #[test]
    fn mp_mismatch_located() {
        let mut p = identity_proof();
        p.lines[4].justification = Justification::Mp(3, 4);
        let e = check_proof(&p).unwrap_err();
        assert_eq!((e.line, e.kind), (5, ProofErrorKind::MpMismatch));
    }

    #[test]
    fn forward_reference() {
        let mut p = identity_proof();
        p.lines[2].justification = Justification::Mp(2, 4);
        let e = check_proof(&p).unwrap_err();
        assert_eq!((e.line, e.kind), (3, ProofErrorKind::ForwardReference));
    }

    #[test]
    fn schema_counts() {
        assert_eq!(list_schemas(TheoryLevel::Hht).len(), 19);
        let hht2 = list_schemas(TheoryLevel::Hht2);
        let dca_level = list_schemas(TheoryLevel::Hht2Dca);
        assert_eq!(dca_level.len(), hht2.len() + 1);
        assert_eq!(dca_level.last().unwrap().id, "dca");
    }

    #[test]
    fn classical_axiom_rejected() {
        let nn = Formula::imp(Formula::not(Formula::not(pa())), pa());
        let p = Proof { signature: sig(), level: TheoryLevel::Hht, lines: vec![ax(1, nn, "efq", &[("F", fm(pa()))])] };
        let e = check_proof(&p).unwrap_err();
        assert_eq!((e.line, e.kind), (1, ProofErrorKind::SchemaMismatch));
    }

    #[test]
    fn level_gating() {
        let d = dca(&sig());
        let p = Proof { signature: sig(), level: TheoryLevel::Hht2, lines: vec![ax(1, d.clone(), "dca", &[])] };
        assert_eq!(check_proof(&p).unwrap_err().kind, ProofErrorKind::LevelViolation);
        let p = Proof { signature: sig(), level: TheoryLevel::Hht2Dca, lines: vec![ax(1, d, "dca", &[])] };
        assert!(check_proof(&p).is_ok());
    }

    #[test]
    fn dca_shape() {
        assert_eq!(
            dca(&sig()).to_string(),
            "forall p/1 (p(a) & p(b) & forall x1 (p(x1) -> p(s(x1))) -> forall x p(x))"
        );
    }

    #[test]
    fn all_e_capture_rejected() {
        // forall y (x = y) with t := y
        let f = Formula::forall("y", Formula::eq(Term::var("x"), Term::var("y")));
        let line1 = Formula::imp(Formula::forall("x", f.clone()), Formula::forall("y", Formula::eq(Term::var("y"), Term::var("y"))));
        let p = Proof {
            signature: sig(),
            level: TheoryLevel::Hht,
            lines: vec![ax(1, line1, "all-e", &[("x", MetaValue::Var("x".into())), ("F", fm(f)), ("t", MetaValue::Term(Term::var("y")))])],
        };
        assert_eq!(check_proof(&p).unwrap_err().kind, ProofErrorKind::SideConditionViolation);
    }

    #[test]
    fn alpha_variants_accepted() {
        let px = Formula::atom("P", vec![Term::var("x")]);
        let pz = Formula::atom("P", vec![Term::var("z")]);
        let line1 = Formula::exists("z", Formula::imp(pz.clone(), Formula::forall("z", pz)));
        let p = Proof {
            signature: sig(),
            level: TheoryLevel::Hht,
            lines: vec![ax(1, line1, "sqht", &[("x", MetaValue::Var("x".into())), ("F", fm(px))])],
        };
        assert!(check_proof(&p).is_ok());
    }

    #[test]
    fn gen_rules() {
        let q = Formula::atom("Q", vec![]);
        let px = Formula::atom("P", vec![Term::var("x")]);
        let k = Formula::imp(q.clone(), Formula::imp(px.clone(), q.clone()));
        let mut p = Proof {
            signature: sig(),
            level: TheoryLevel::Hht,
            lines: vec![
                ax(1, k, "k", &[("F", fm(q.clone())), ("G", fm(px.clone()))]),
                line(2, Formula::imp(q.clone(), Formula::forall("x", Formula::imp(px.clone(), q.clone()))), Justification::GenAll(1, "x".into())),
            ],
        };
        assert!(check_proof(&p).is_ok());
        // x is free in the antecedent
        let k2 = Formula::imp(px.clone(), Formula::imp(q.clone(), px.clone()));
        p.lines = vec![
            ax(1, k2, "k", &[("F", fm(px.clone())), ("G", fm(q.clone()))]),
            line(2, Formula::imp(px.clone(), Formula::forall("x", Formula::imp(q.clone(), px.clone()))), Justification::GenAll(1, "x".into())),
        ];
        assert_eq!(check_proof(&p).unwrap_err().kind, ProofErrorKind::SideConditionViolation);
    }

    #[test]
    fn conclusion_checks() {
        let pv = PredVar::new("p", 1);
        let pa_ = Formula::pred_var(pv.clone(), vec![Term::constant("a")]);
        let lines = vec![
            ax(1, Formula::imp(pa_.clone(), Formula::imp(Formula::top(), pa_.clone())), "k", &[("F", fm(pa_.clone())), ("G", fm(Formula::top()))]),
        ];
        let p = Proof { signature: sig(), level: TheoryLevel::Hht2, lines };
        assert_eq!(conclusion_for_pipeline(&p), Err(ConclusionError::NotFirstOrder));
        let px = Formula::atom("P", vec![Term::var("x")]);
        let lines = vec![ax(1, Formula::imp(px.clone(), Formula::imp(Formula::top(), px.clone())), "k", &[("F", fm(px)), ("G", fm(Formula::top()))])];
        let p = Proof { signature: sig(), level: TheoryLevel::Hht, lines };
        assert_eq!(conclusion_for_pipeline(&p), Err(ConclusionError::NotClosed));
    }

    #[test]
    fn second_order_at_hht_is_level_violation() {
        let pv = PredVar::new("p", 0);
        let f = Formula::pred_var(pv, vec![]);
        let lines = vec![ax(1, Formula::imp(Formula::Bot, f.clone()), "efq", &[("F", fm(f))])];
        let p = Proof { signature: sig(), level: TheoryLevel::Hht, lines };
        assert_eq!(check_proof(&p).unwrap_err().kind, ProofErrorKind::LevelViolation);
    }

    #[test]
    fn cet_side_conditions() {
        let x = Term::var("x");
        let sx = Term::app("s", vec![x.clone()]);
        let ok = ax(1, Formula::neq(sx.clone(), x.clone()), "cet-acyclic", &[("t", MetaValue::Term(sx)), ("x", MetaValue::Var("x".into()))]);
        let p = Proof { signature: sig(), level: TheoryLevel::Hht, lines: vec![ok] };
        assert!(check_proof(&p).is_ok());
        let bad = ax(1, Formula::neq(x.clone(), x.clone()), "cet-acyclic", &[("t", MetaValue::Term(x)), ("x", MetaValue::Var("x".into()))]);
        let p = Proof { signature: sig(), level: TheoryLevel::Hht, lines: vec![bad] };
        assert_eq!(check_proof(&p).unwrap_err().kind, ProofErrorKind::SideConditionViolation);
        let same = ax(
            1,
            Formula::neq(Term::constant("a"), Term::constant("a")),
            "cet-distinct",
            &[("f", MetaValue::FunConst("a".into())), ("g", MetaValue::FunConst("a".into()))],
        );
        let p = Proof { signature: sig(), level: TheoryLevel::Hht, lines: vec![same] };
        assert_eq!(check_proof(&p).unwrap_err().kind, ProofErrorKind::SideConditionViolation);
        let inj0 = ax(1, Formula::top(), "cet-inject", &[("f", MetaValue::FunConst("a".into()))]);
        let p = Proof { signature: sig(), level: TheoryLevel::Hht, lines: vec![inj0] };
        assert_eq!(check_proof(&p).unwrap_err().kind, ProofErrorKind::SideConditionViolation);
    }

    #[test]
    fn comprehension_requires_p_not_free() {
        let pv = PredVar::new("p", 0);
        let f = Formula::pred_var(pv.clone(), vec![]);
        let line1 = Formula::quant(Quantifier::Exists, Binder::Pred(pv.clone()), Formula::iff(f.clone(), f.clone()));
        let lines = vec![ax(1, line1, "comp", &[("p", MetaValue::PredVar(pv)), ("F", fm(f))])];
        let p = Proof { signature: sig(), level: TheoryLevel::Hht2, lines };
        assert_eq!(check_proof(&p).unwrap_err().kind, ProofErrorKind::SideConditionViolation);
    }
}
