//! The axiom inventory and construction of schema instances from bindings.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{Binder, Formula, FunReplacement, PredReplacement, PredVar, Quantifier, Var};
use crate::signature::Signature;
use crate::term::{FunVar, Term};

use super::{ProofErrorKind, TheoryLevel};

/// What a schema metavariable ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetaKind {
    Formula,
    Term,
    /// An object variable.
    Var,
    /// A possibly empty list of object variables; omitted means empty.
    Vars,
    /// A function constant of the signature.
    FunConst,
    PredVar,
    /// A predicate or function variable.
    SoVar,
    /// A predicate or function, constant or variable.
    SoTarget,
}

/// Replacement for a second-order variable in `so-all-e` / `so-ex-i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SoTarget {
    PredConst(String),
    PredVar(PredVar),
    FunConst(String),
    FunVar(FunVar),
}

impl fmt::Display for SoTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SoTarget::PredConst(n) | SoTarget::FunConst(n) => f.write_str(n),
            SoTarget::PredVar(p) => write!(f, "{p}"),
            SoTarget::FunVar(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetaValue {
    Formula(Formula),
    Term(Term),
    Var(String),
    Vars(Vec<String>),
    FunConst(String),
    PredVar(PredVar),
    SoVar(Var),
    SoTarget(SoTarget),
}

impl MetaValue {
    pub fn kind(&self) -> MetaKind {
        match self {
            MetaValue::Formula(_) => MetaKind::Formula,
            MetaValue::Term(_) => MetaKind::Term,
            MetaValue::Var(_) => MetaKind::Var,
            MetaValue::Vars(_) => MetaKind::Vars,
            MetaValue::FunConst(_) => MetaKind::FunConst,
            MetaValue::PredVar(_) => MetaKind::PredVar,
            MetaValue::SoVar(_) => MetaKind::SoVar,
            MetaValue::SoTarget(_) => MetaKind::SoTarget,
        }
    }
}

impl fmt::Display for MetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetaValue::Formula(x) => write!(f, "{x}"),
            MetaValue::Term(t) => write!(f, "{t}"),
            MetaValue::Var(x) | MetaValue::FunConst(x) => f.write_str(x),
            MetaValue::Vars(xs) => write!(f, "[{}]", xs.join(", ")),
            MetaValue::PredVar(p) => write!(f, "{p}"),
            MetaValue::SoVar(v) => write!(f, "{v}"),
            MetaValue::SoTarget(w) => write!(f, "{w}"),
        }
    }
}

/// Metavariable assignment supplied with an axiom line.
pub type Binding = BTreeMap<String, MetaValue>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaInfo {
    pub id: &'static str,
    pub level: TheoryLevel,
    pub params: &'static [(&'static str, MetaKind)],
    /// Human-readable shape.
    pub shape: &'static str,
}

use MetaKind as K;

const FG: &[(&str, MetaKind)] = &[("F", K::Formula), ("G", K::Formula)];
const FGH: &[(&str, MetaKind)] = &[("F", K::Formula), ("G", K::Formula), ("H", K::Formula)];
const XFT: &[(&str, MetaKind)] = &[("x", K::Var), ("F", K::Formula), ("t", K::Term)];
const VGW: &[(&str, MetaKind)] = &[("v", K::SoVar), ("G", K::Formula), ("w", K::SoTarget)];

const SCHEMAS: &[SchemaInfo] = &[
    SchemaInfo { id: "k", level: TheoryLevel::Hht, params: FG, shape: "F -> (G -> F)" },
    SchemaInfo { id: "s", level: TheoryLevel::Hht, params: FGH, shape: "(F -> (G -> H)) -> ((F -> G) -> (F -> H))" },
    SchemaInfo { id: "and-el", level: TheoryLevel::Hht, params: FG, shape: "F & G -> F" },
    SchemaInfo { id: "and-er", level: TheoryLevel::Hht, params: FG, shape: "F & G -> G" },
    SchemaInfo { id: "and-i", level: TheoryLevel::Hht, params: FG, shape: "F -> (G -> F & G)" },
    SchemaInfo { id: "or-il", level: TheoryLevel::Hht, params: FG, shape: "F -> F | G" },
    SchemaInfo { id: "or-ir", level: TheoryLevel::Hht, params: FG, shape: "G -> F | G" },
    SchemaInfo { id: "or-e", level: TheoryLevel::Hht, params: FGH, shape: "(F -> H) -> ((G -> H) -> (F | G -> H))" },
    SchemaInfo { id: "efq", level: TheoryLevel::Hht, params: &[("F", K::Formula)], shape: "bot -> F" },
    SchemaInfo { id: "all-e", level: TheoryLevel::Hht, params: XFT, shape: "forall x F -> F[t/x]" },
    SchemaInfo { id: "ex-i", level: TheoryLevel::Hht, params: XFT, shape: "F[t/x] -> exists x F" },
    SchemaInfo { id: "eq-refl", level: TheoryLevel::Hht, params: &[("t", K::Term)], shape: "t = t" },
    SchemaInfo {
        id: "eq-subst",
        level: TheoryLevel::Hht,
        params: &[("t1", K::Term), ("t2", K::Term), ("x", K::Var), ("F", K::Formula)],
        shape: "t1 = t2 -> (F[t1/x] -> F[t2/x])",
    },
    SchemaInfo { id: "hosoi", level: TheoryLevel::Hht, params: FG, shape: "F | (F -> G) | not G" },
    SchemaInfo {
        id: "sqht",
        level: TheoryLevel::Hht,
        params: &[("x", K::Var), ("F", K::Formula)],
        shape: "exists x (F -> forall x F)",
    },
    SchemaInfo { id: "dec-eq", level: TheoryLevel::Hht, params: &[("x", K::Var), ("y", K::Var)], shape: "x = y | x != y" },
    SchemaInfo {
        id: "cet-distinct",
        level: TheoryLevel::Hht,
        params: &[("f", K::FunConst), ("g", K::FunConst), ("xs", K::Vars), ("ys", K::Vars)],
        shape: "f(xs) != g(ys)",
    },
    SchemaInfo {
        id: "cet-inject",
        level: TheoryLevel::Hht,
        params: &[("f", K::FunConst), ("xs", K::Vars), ("ys", K::Vars)],
        shape: "f(xs) = f(ys) -> x1 = y1 & ... & xn = yn",
    },
    SchemaInfo { id: "cet-acyclic", level: TheoryLevel::Hht, params: &[("t", K::Term), ("x", K::Var)], shape: "t != x" },
    SchemaInfo { id: "so-all-e", level: TheoryLevel::Hht2, params: VGW, shape: "forall v G -> G[w/v]" },
    SchemaInfo { id: "so-ex-i", level: TheoryLevel::Hht2, params: VGW, shape: "G[w/v] -> exists v G" },
    SchemaInfo {
        id: "so-abs",
        level: TheoryLevel::Hht2,
        params: &[("p", K::PredVar), ("xs", K::Vars), ("F", K::Formula), ("G", K::Formula)],
        shape: "forall p G -> G{p <= lambda xs. F}",
    },
    SchemaInfo {
        id: "comp",
        level: TheoryLevel::Hht2,
        params: &[("p", K::PredVar), ("xs", K::Vars), ("F", K::Formula)],
        shape: "exists p forall xs (p(xs) <-> F)",
    },
    SchemaInfo {
        id: "choice",
        level: TheoryLevel::Hht2,
        params: &[("p", K::PredVar), ("xs", K::Vars), ("y", K::Var), ("f", K::SoVar)],
        shape: "forall xs exists y p(xs, y) -> exists f forall xs p(xs, f(xs))",
    },
    SchemaInfo { id: "dca", level: TheoryLevel::Hht2Dca, params: &[], shape: "forall p (C_f1(p) & ... -> forall x p(x))" },
];

/// The axiom schemas available at `level`.
pub fn list_schemas(level: TheoryLevel) -> Vec<&'static SchemaInfo> {
    SCHEMAS.iter().filter(|s| s.level <= level).collect()
}

pub fn schema(id: &str) -> Option<&'static SchemaInfo> {
    SCHEMAS.iter().find(|s| s.id == id)
}

type Fail = (ProofErrorKind, String);

fn side(msg: String) -> Fail {
    (ProofErrorKind::SideConditionViolation, msg)
}

struct Args<'a> {
    info: &'static SchemaInfo,
    binding: &'a Binding,
}

impl Args<'_> {
    fn get(&self, name: &str) -> Result<Option<&MetaValue>, Fail> {
        let kind = self.info.params.iter().find(|(n, _)| *n == name).map(|(_, k)| *k).expect("declared parameter");
        match self.binding.get(name) {
            None if kind == K::Vars => Ok(None),
            None => Err((ProofErrorKind::BadBinding, format!("missing binding for `{name}`"))),
            Some(v) if v.kind() != kind => {
                Err((ProofErrorKind::BadBinding, format!("`{name}` is bound to a value of the wrong kind")))
            }
            Some(v) => Ok(Some(v)),
        }
    }

    fn formula(&self, name: &str) -> Result<Formula, Fail> {
        match self.get(name)? {
            Some(MetaValue::Formula(f)) => Ok(f.clone()),
            _ => unreachable!(),
        }
    }

    fn term(&self, name: &str) -> Result<Term, Fail> {
        match self.get(name)? {
            Some(MetaValue::Term(t)) => Ok(t.clone()),
            _ => unreachable!(),
        }
    }

    fn var(&self, name: &str) -> Result<String, Fail> {
        match self.get(name)? {
            Some(MetaValue::Var(x)) => Ok(x.clone()),
            _ => unreachable!(),
        }
    }

    fn vars(&self, name: &str) -> Result<Vec<String>, Fail> {
        match self.get(name)? {
            Some(MetaValue::Vars(xs)) => Ok(xs.clone()),
            None => Ok(Vec::new()),
            _ => unreachable!(),
        }
    }

    fn fun_const(&self, name: &str) -> Result<String, Fail> {
        match self.get(name)? {
            Some(MetaValue::FunConst(f)) => Ok(f.clone()),
            _ => unreachable!(),
        }
    }

    fn pred_var(&self, name: &str) -> Result<PredVar, Fail> {
        match self.get(name)? {
            Some(MetaValue::PredVar(p)) => Ok(p.clone()),
            _ => unreachable!(),
        }
    }

    fn so_var(&self, name: &str) -> Result<Var, Fail> {
        match self.get(name)? {
            Some(MetaValue::SoVar(Var::Obj(x))) => Err(side(format!("`{x}` is not a second-order variable"))),
            Some(MetaValue::SoVar(v)) => Ok(v.clone()),
            _ => unreachable!(),
        }
    }

    fn target(&self, name: &str) -> Result<SoTarget, Fail> {
        match self.get(name)? {
            Some(MetaValue::SoTarget(w)) => Ok(w.clone()),
            _ => unreachable!(),
        }
    }
}

fn vars(xs: &[String]) -> Vec<Term> {
    xs.iter().map(Term::var).collect()
}

fn distinct(xs: &[String]) -> Result<(), Fail> {
    for (i, x) in xs.iter().enumerate() {
        if xs[..i].contains(x) {
            return Err(side(format!("variable `{x}` repeated")));
        }
    }
    Ok(())
}

fn forall_all(xs: &[String], body: Formula) -> Formula {
    xs.iter().rev().fold(body, |acc, x| Formula::forall(x.clone(), acc))
}

fn substitutable(pair: (Formula, bool), what: &str) -> Result<Formula, Fail> {
    match pair {
        (f, true) => Ok(f),
        (_, false) => Err(side(format!("{what} is not substitutable"))),
    }
}

fn so_binder(v: &Var) -> Binder {
    match v {
        Var::Pred(p) => Binder::Pred(p.clone()),
        Var::Fun(g) => Binder::Fun(g.clone()),
        Var::Obj(x) => Binder::Object(x.clone()),
    }
}

/// `G^v_w` with arity and kind checks.
fn so_substitute(sig: &Signature, g: &Formula, v: &Var, w: &SoTarget) -> Result<Formula, Fail> {
    let mismatch = || side(format!("`{w}` does not match `{v}` in kind and arity"));
    let pair = match (v, w) {
        (Var::Pred(p), SoTarget::PredConst(c)) if sig.predicate_arity(c) == Some(p.arity) => {
            g.substitute_pred(p, &PredReplacement::Const(c.clone()))
        }
        (Var::Pred(p), SoTarget::PredVar(q)) if q.arity == p.arity => {
            g.substitute_pred(p, &PredReplacement::Var(q.clone()))
        }
        (Var::Fun(f), SoTarget::FunConst(c)) if sig.function_arity(c) == Some(f.arity) => {
            g.substitute_fun(f, &FunReplacement::Const(c.clone()))
        }
        (Var::Fun(f), SoTarget::FunVar(h)) if h.arity == f.arity => g.substitute_fun(f, &FunReplacement::Var(h.clone())),
        _ => return Err(mismatch()),
    };
    substitutable(pair, &format!("`{w}` for `{v}`"))
}

/// The domain closure axiom for the function constants of `sig`.
pub fn dca(sig: &Signature) -> Formula {
    let p = PredVar::new("p", 1);
    let pa = |t: Term| Formula::pred_var(p.clone(), alloc::vec![t]);
    let closures = sig.functions().map(|(f, n)| {
        if n == 0 {
            return pa(Term::constant(f));
        }
        let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let hyp = Formula::conjoin(xs.iter().map(|x| pa(Term::var(x.clone())))).expect("n > 0");
        forall_all(&xs, Formula::imp(hyp, pa(Term::app(f, vars(&xs)))))
    });
    let hyp = Formula::conjoin(closures).expect("signatures have an object constant");
    Formula::quant(
        Quantifier::Forall,
        Binder::Pred(p.clone()),
        Formula::imp(hyp, Formula::forall("x", pa(Term::var("x")))),
    )
}

/// Builds the instance of schema `info` under `binding`, checking side
/// conditions.
pub(super) fn instantiate(info: &'static SchemaInfo, binding: &Binding, sig: &Signature) -> Result<Formula, Fail> {
    for key in binding.keys() {
        if !info.params.iter().any(|(n, _)| n == key) {
            return Err((ProofErrorKind::BadBinding, format!("schema `{}` has no metavariable `{key}`", info.id)));
        }
    }
    let a = Args { info, binding };
    use Formula as Fm;
    Ok(match info.id {
        "k" => Fm::imp(a.formula("F")?, Fm::imp(a.formula("G")?, a.formula("F")?)),
        "s" => {
            let (f, g, h) = (a.formula("F")?, a.formula("G")?, a.formula("H")?);
            Fm::imp(
                Fm::imp(f.clone(), Fm::imp(g.clone(), h.clone())),
                Fm::imp(Fm::imp(f.clone(), g), Fm::imp(f, h)),
            )
        }
        "and-el" => Fm::imp(Fm::and(a.formula("F")?, a.formula("G")?), a.formula("F")?),
        "and-er" => Fm::imp(Fm::and(a.formula("F")?, a.formula("G")?), a.formula("G")?),
        "and-i" => {
            let (f, g) = (a.formula("F")?, a.formula("G")?);
            Fm::imp(f.clone(), Fm::imp(g.clone(), Fm::and(f, g)))
        }
        "or-il" => Fm::imp(a.formula("F")?, Fm::or(a.formula("F")?, a.formula("G")?)),
        "or-ir" => Fm::imp(a.formula("G")?, Fm::or(a.formula("F")?, a.formula("G")?)),
        "or-e" => {
            let (f, g, h) = (a.formula("F")?, a.formula("G")?, a.formula("H")?);
            Fm::imp(Fm::imp(f.clone(), h.clone()), Fm::imp(Fm::imp(g.clone(), h.clone()), Fm::imp(Fm::or(f, g), h)))
        }
        "efq" => Fm::imp(Fm::Bot, a.formula("F")?),
        "all-e" | "ex-i" => {
            let (x, f, t) = (a.var("x")?, a.formula("F")?, a.term("t")?);
            let ft = substitutable(f.substitute_term(&x, &t), &format!("`{t}` for `{x}`"))?;
            if info.id == "all-e" {
                Fm::imp(Fm::forall(x, f), ft)
            } else {
                Fm::imp(ft, Fm::exists(x, f))
            }
        }
        "eq-refl" => {
            let t = a.term("t")?;
            Fm::eq(t.clone(), t)
        }
        "eq-subst" => {
            let (t1, t2, x, f) = (a.term("t1")?, a.term("t2")?, a.var("x")?, a.formula("F")?);
            let f1 = substitutable(f.substitute_term(&x, &t1), &format!("`{t1}` for `{x}`"))?;
            let f2 = substitutable(f.substitute_term(&x, &t2), &format!("`{t2}` for `{x}`"))?;
            Fm::imp(Fm::eq(t1, t2), Fm::imp(f1, f2))
        }
        "hosoi" => {
            let (f, g) = (a.formula("F")?, a.formula("G")?);
            Fm::or(Fm::or(f.clone(), Fm::imp(f, g.clone())), Fm::not(g))
        }
        "sqht" => {
            let (x, f) = (a.var("x")?, a.formula("F")?);
            Fm::exists(x.clone(), Fm::imp(f.clone(), Fm::forall(x, f)))
        }
        "dec-eq" => {
            let (x, y) = (Term::var(a.var("x")?), Term::var(a.var("y")?));
            Fm::or(Fm::eq(x.clone(), y.clone()), Fm::neq(x, y))
        }
        "cet-distinct" => {
            let (f, g, xs, ys) = (a.fun_const("f")?, a.fun_const("g")?, a.vars("xs")?, a.vars("ys")?);
            if f == g {
                return Err(side(format!("`{f}` and `{g}` must be distinct function constants")));
            }
            for (h, zs) in [(&f, &xs), (&g, &ys)] {
                match sig.function_arity(h) {
                    None => return Err(side(format!("`{h}` is not a function constant"))),
                    Some(n) if n != zs.len() => return Err(side(format!("`{h}` has arity {n}"))),
                    _ => {}
                }
            }
            Fm::neq(Term::app(f, vars(&xs)), Term::app(g, vars(&ys)))
        }
        "cet-inject" => {
            let (f, xs, ys) = (a.fun_const("f")?, a.vars("xs")?, a.vars("ys")?);
            match sig.function_arity(&f) {
                None => return Err(side(format!("`{f}` is not a function constant"))),
                Some(0) => return Err(side(format!("`{f}` must have arity greater than 0"))),
                Some(n) if n != xs.len() || n != ys.len() => return Err(side(format!("`{f}` has arity {n}"))),
                _ => {}
            }
            let eqs = xs.iter().zip(&ys).map(|(x, y)| Fm::eq(Term::var(x.clone()), Term::var(y.clone())));
            Fm::imp(
                Fm::eq(Term::app(f.clone(), vars(&xs)), Term::app(f, vars(&ys))),
                Fm::conjoin(eqs).expect("arity > 0"),
            )
        }
        "cet-acyclic" => {
            let (t, x) = (a.term("t")?, a.var("x")?);
            if !t.contains_var(&x) || t == Term::var(x.clone()) {
                return Err(side(format!("`{t}` must contain `{x}` and differ from it")));
            }
            if t.contains_fun_var() {
                return Err(side(format!("`{t}` must not contain function variables")));
            }
            Fm::neq(t, Term::var(x))
        }
        "so-all-e" | "so-ex-i" => {
            let (v, g, w) = (a.so_var("v")?, a.formula("G")?, a.target("w")?);
            let gw = so_substitute(sig, &g, &v, &w)?;
            if info.id == "so-all-e" {
                Fm::imp(Fm::quant(Quantifier::Forall, so_binder(&v), g), gw)
            } else {
                Fm::imp(gw, Fm::quant(Quantifier::Exists, so_binder(&v), g))
            }
        }
        "so-abs" => {
            let (p, xs, f, g) = (a.pred_var("p")?, a.vars("xs")?, a.formula("F")?, a.formula("G")?);
            distinct(&xs)?;
            if xs.len() != p.arity {
                return Err(side(format!("`{p}` needs {} abstracted variables", p.arity)));
            }
            let gl = substitutable(g.substitute_pred(&p, &PredReplacement::Lambda(xs, f)), "the abstract")?;
            Fm::imp(Fm::quant(Quantifier::Forall, Binder::Pred(p), g), gl)
        }
        "comp" => {
            let (p, xs, f) = (a.pred_var("p")?, a.vars("xs")?, a.formula("F")?);
            distinct(&xs)?;
            if xs.len() != p.arity {
                return Err(side(format!("`{p}` needs {} variables", p.arity)));
            }
            if f.free_variables().contains(&Var::Pred(p.clone())) {
                return Err(side(format!("`{p}` must not be free in F")));
            }
            let body = Fm::iff(Fm::pred_var(p.clone(), vars(&xs)), f);
            Fm::quant(Quantifier::Exists, Binder::Pred(p), forall_all(&xs, body))
        }
        "choice" => {
            let (p, xs, y) = (a.pred_var("p")?, a.vars("xs")?, a.var("y")?);
            let f = match a.so_var("f")? {
                Var::Fun(f) => f,
                v => return Err(side(format!("`{v}` must be a function variable"))),
            };
            let n = xs.len();
            if n == 0 {
                return Err(side("choice needs n > 0".into()));
            }
            let mut all = xs.clone();
            all.push(y.clone());
            distinct(&all)?;
            if p.arity != n + 1 || f.arity != n {
                return Err(side(format!("`{p}` must have arity {} and `{f}` arity {n}", n + 1)));
            }
            let mut lhs_args = vars(&xs);
            lhs_args.push(Term::var(y.clone()));
            let lhs = forall_all(&xs, Fm::exists(y, Fm::pred_var(p.clone(), lhs_args)));
            let mut rhs_args = vars(&xs);
            rhs_args.push(Term::FunVar(f.clone(), vars(&xs)));
            let rhs = Fm::quant(Quantifier::Exists, Binder::Fun(f), forall_all(&xs, Fm::pred_var(p, rhs_args)));
            Fm::imp(lhs, rhs)
        }
        "dca" => dca(sig),
        other => unreachable!("schema table and constructor disagree on `{other}`"),
    })
}
