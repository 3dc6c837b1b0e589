//! The `.fof`, `.prop`, `.subst` and `.proof` file formats.

use hhtkit_core::kernel::{schema, Binding, Justification, MetaKind, MetaValue, Proof, ProofLine, SoTarget, TheoryLevel};
use hhtkit_core::{Formula, FunVar, GroundAtom, PredVar, Prop, Signature, Substitution, Var};

use crate::syntax::{write_signature, ParseError, Parser};

type Res<T> = Result<T, ParseError>;

/// A signature block followed by one formula, optionally ended by `;`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FofFile {
    pub signature: Signature,
    pub formula: Formula,
}

pub fn parse_fof(src: &str) -> Res<FofFile> {
    let mut p = Parser::new(src)?;
    let signature = p.signature()?;
    let formula = p.formula(&signature)?;
    p.eat_sym(";");
    p.expect_eof()?;
    Ok(FofFile { signature, formula })
}

pub fn write_fof(f: &FofFile) -> String {
    format!("{}\n{};\n", write_signature(&f.signature), f.formula)
}

pub fn parse_prop_file(src: &str) -> Res<Prop> {
    let mut p = Parser::new(src)?;
    let f = p.prop()?;
    p.eat_sym(";");
    p.expect_eof()?;
    Ok(f)
}

/// Signature block, then `P(a, b) := F;` and `default P := F;` entries.
pub fn parse_subst(src: &str) -> Res<Substitution> {
    let mut p = Parser::new(src)?;
    let sig = p.signature()?;
    let mut psi = Substitution::new(sig.clone());
    while !p.at_eof() {
        let (line, col) = p.mark();
        let at = |message: String| ParseError { line, col, message };
        if p.eat_word("default") {
            let pred = p.ident()?;
            p.expect_sym(":=")?;
            let value = p.prop()?;
            p.expect_sym(";")?;
            psi.set_default(&pred, value).map_err(|e| at(e.to_string()))?;
            continue;
        }
        let atom = ground_atom(&mut p, &sig)?;
        p.expect_sym(":=")?;
        let value = p.prop()?;
        p.expect_sym(";")?;
        psi.insert(atom, value).map_err(|e| at(e.to_string()))?;
    }
    Ok(psi)
}

fn ground_atom(p: &mut Parser, sig: &Signature) -> Res<GroundAtom> {
    let (line, col) = p.mark();
    let f = p.formula(sig)?;
    let fail = |m: &str| ParseError { line, col, message: m.into() };
    match f {
        Formula::Atom(hhtkit_core::Pred::Const(pred), args) => {
            let args = args.iter().map(|t| t.to_ground().ok_or_else(|| fail("atom is not ground"))).collect::<Res<_>>()?;
            Ok(GroundAtom::new(pred, args))
        }
        _ => Err(fail("expected a ground atom")),
    }
}

pub fn write_subst(psi: &Substitution) -> String {
    let mut out = write_signature(psi.signature());
    out.push('\n');
    for (pred, value) in psi.defaults() {
        out += &format!("default {pred} := {value};\n");
    }
    for (atom, value) in psi.entries() {
        out += &format!("{} := {value};\n", spaced(atom));
    }
    out
}

/// `P(a, b)` rather than the compact `P(a,b)` of countermodel rendering.
fn spaced(a: &GroundAtom) -> String {
    let args: Vec<String> = a.args.iter().map(ToString::to_string).collect();
    if args.is_empty() {
        a.pred.clone()
    } else {
        format!("{}({})", a.pred, args.join(", "))
    }
}

/// Signature block, `level L;`, then `n: F by J;` lines.
pub fn parse_proof(src: &str) -> Res<Proof> {
    let mut p = Parser::new(src)?;
    let signature = p.signature()?;
    p.expect_word("level")?;
    let (line, col) = p.mark();
    let mut name = p.ident()?;
    if p.eat_sym("+") {
        name = format!("{name}+{}", p.ident()?);
    }
    let level = TheoryLevel::from_name(&name)
        .ok_or_else(|| ParseError { line, col, message: format!("unknown theory level `{name}`") })?;
    p.expect_sym(";")?;
    let mut lines = Vec::new();
    while !p.at_eof() {
        let number = p.number()?;
        p.expect_sym(":")?;
        p.clear_scope();
        let formula = p.formula(&signature)?;
        p.expect_word("by")?;
        let justification = justification(&mut p, &signature)?;
        p.expect_sym(";")?;
        lines.push(ProofLine { number, formula, justification });
    }
    Ok(Proof { signature, level, lines })
}

fn justification(p: &mut Parser, sig: &Signature) -> Res<Justification> {
    let (line, col) = p.mark();
    let rule = p.ident()?;
    Ok(match rule.as_str() {
        "axiom" => {
            let (line, col) = p.mark();
            let id = p.ident()?;
            let info = schema(&id)
                .ok_or_else(|| ParseError { line, col, message: format!("no axiom schema named `{id}`") })?;
            let mut binding = Binding::new();
            if p.eat_word("with") {
                loop {
                    let (line, col) = p.mark();
                    let key = p.ident()?;
                    let Some(&(_, kind)) = info.params.iter().find(|(k, _)| *k == key) else {
                        return Err(ParseError { line, col, message: format!("schema `{id}` has no parameter `{key}`") });
                    };
                    p.expect_sym(":=")?;
                    let value = meta_value(p, sig, kind)?;
                    if binding.insert(key.clone(), value).is_some() {
                        return Err(ParseError { line, col, message: format!("`{key}` bound twice") });
                    }
                    if !p.eat_sym(",") {
                        break;
                    }
                }
            }
            Justification::Axiom { schema: id, binding }
        }
        "mp" => Justification::Mp(p.number()?, p.number()?),
        "gen-all" => Justification::GenAll(p.number()?, p.ident()?),
        "gen-ex" => Justification::GenEx(p.number()?, p.ident()?),
        "so-gen" => Justification::SoGen(p.number()?, so_var(p)?),
        "so-gen-ex" => Justification::SoGenEx(p.number()?, so_var(p)?),
        _ => return Err(ParseError { line, col, message: format!("unknown justification `{rule}`") }),
    })
}

fn so_var(p: &mut Parser) -> Res<Var> {
    let name = p.ident()?;
    if p.eat_sym("/") {
        return Ok(Var::Pred(PredVar::new(name, p.number()?)));
    }
    p.expect_sym("^")?;
    Ok(Var::Fun(FunVar::new(name, p.number()?)))
}

fn meta_value(p: &mut Parser, sig: &Signature, kind: MetaKind) -> Res<MetaValue> {
    Ok(match kind {
        MetaKind::Formula => MetaValue::Formula(p.formula(sig)?),
        MetaKind::Term => MetaValue::Term(p.term(sig)?),
        MetaKind::Var => MetaValue::Var(p.ident()?),
        MetaKind::FunConst => MetaValue::FunConst(p.ident()?),
        MetaKind::Vars => {
            p.expect_sym("[")?;
            let mut xs = Vec::new();
            if !p.eat_sym("]") {
                loop {
                    xs.push(p.ident()?);
                    if !p.eat_sym(",") {
                        break;
                    }
                }
                p.expect_sym("]")?;
            }
            MetaValue::Vars(xs)
        }
        MetaKind::PredVar => {
            let name = p.ident()?;
            p.expect_sym("/")?;
            let v = PredVar::new(name, p.number()?);
            p.bind(Var::Pred(v.clone()));
            MetaValue::PredVar(v)
        }
        MetaKind::SoVar => {
            let v = so_var(p)?;
            p.bind(v.clone());
            MetaValue::SoVar(v)
        }
        MetaKind::SoTarget => {
            let name = p.ident()?;
            if p.eat_sym("/") {
                MetaValue::SoTarget(SoTarget::PredVar(PredVar::new(name, p.number()?)))
            } else if p.eat_sym("^") {
                MetaValue::SoTarget(SoTarget::FunVar(FunVar::new(name, p.number()?)))
            } else if sig.predicate_arity(&name).is_some() {
                MetaValue::SoTarget(SoTarget::PredConst(name))
            } else if sig.function_arity(&name).is_some() {
                MetaValue::SoTarget(SoTarget::FunConst(name))
            } else {
                return Err(p.error(format!("`{name}` is neither declared nor annotated with an arity")));
            }
        }
    })
}

pub fn write_proof(proof: &Proof) -> String {
    let mut out = write_signature(&proof.signature);
    out += &format!("\nlevel {};\n\n", proof.level);
    for l in &proof.lines {
        out += &format!("{}: {} by {};\n", l.number, l.formula, l.justification);
    }
    out
}
