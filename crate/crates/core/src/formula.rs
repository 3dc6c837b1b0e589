//! First- and second-order formulas with restrictors.
//!
//! `⊤`, `¬`, `↔` and `≠` are not primitive: they are stored as `⊥ → ⊥`,
//! `F → ⊥`, `(F → G) ∧ (G → F)` and `¬(s = t)`. The printer re-sugars them.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::signature::Signature;
use crate::term::{FunVar, Term};

/// A predicate variable `p/n`. Identity is name plus arity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredVar {
    pub name: String,
    pub arity: usize,
}

impl PredVar {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        PredVar { name: name.into(), arity }
    }
}

impl fmt::Display for PredVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// Head of an atomic formula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pred {
    Const(String),
    Var(PredVar),
}

/// Any variable that a quantifier can bind.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Obj(String),
    Pred(PredVar),
    Fun(FunVar),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Obj(x) => f.write_str(x),
            Var::Pred(p) => write!(f, "{p}"),
            Var::Fun(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinOp {
    And,
    Or,
    Imp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Binder {
    Object(String),
    /// Generalized variable `(x1:R1, ..., xn:Rn)`, n ≥ 1, distinct variables.
    Restricted(Vec<(String, String)>),
    Pred(PredVar),
    Fun(FunVar),
}

impl Binder {
    pub fn bound_vars(&self) -> Vec<Var> {
        match self {
            Binder::Object(x) => alloc::vec![Var::Obj(x.clone())],
            Binder::Restricted(vs) => vs.iter().map(|(x, _)| Var::Obj(x.clone())).collect(),
            Binder::Pred(p) => alloc::vec![Var::Pred(p.clone())],
            Binder::Fun(g) => alloc::vec![Var::Fun(g.clone())],
        }
    }

    fn binds(&self, v: &Var) -> bool {
        match (self, v) {
            (Binder::Object(x), Var::Obj(y)) => x == y,
            (Binder::Restricted(vs), Var::Obj(y)) => vs.iter().any(|(x, _)| x == y),
            (Binder::Pred(p), Var::Pred(q)) => p == q,
            (Binder::Fun(g), Var::Fun(h)) => g == h,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bot,
    Eq(Term, Term),
    Atom(Pred, Vec<Term>),
    Bin(BinOp, Box<Formula>, Box<Formula>),
    Quant(Quantifier, Binder, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("substitution of `{term}` for `{var}` would capture a variable")]
    CaptureViolation { var: String, term: String },
    #[error("ill-formed formula: {0}")]
    IllFormed(String),
}

/// What a predicate variable is replaced by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredReplacement {
    Const(String),
    Var(PredVar),
    /// `λx1…xn. F`
    Lambda(Vec<String>, Formula),
}

/// What a function variable is replaced by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunReplacement {
    Const(String),
    Var(FunVar),
}

impl Formula {
    pub fn top() -> Self {
        Formula::imp(Formula::Bot, Formula::Bot)
    }

    pub fn atom(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(Pred::Const(pred.into()), args)
    }

    pub fn pred_var(p: PredVar, args: Vec<Term>) -> Self {
        Formula::Atom(Pred::Var(p), args)
    }

    pub fn eq(l: Term, r: Term) -> Self {
        Formula::Eq(l, r)
    }

    pub fn neq(l: Term, r: Term) -> Self {
        Formula::not(Formula::Eq(l, r))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::Bin(BinOp::And, Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Bin(BinOp::Or, Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Self {
        Formula::Bin(BinOp::Imp, Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::imp(f, Formula::Bot)
    }

    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::and(Formula::imp(l.clone(), r.clone()), Formula::imp(r, l))
    }

    pub fn forall(x: impl Into<String>, body: Formula) -> Self {
        Formula::Quant(Quantifier::Forall, Binder::Object(x.into()), Box::new(body))
    }

    pub fn exists(x: impl Into<String>, body: Formula) -> Self {
        Formula::Quant(Quantifier::Exists, Binder::Object(x.into()), Box::new(body))
    }

    pub fn quant(q: Quantifier, binder: Binder, body: Formula) -> Self {
        Formula::Quant(q, binder, Box::new(body))
    }

    /// Left-associated conjunction; `None` for an empty list.
    pub fn conjoin(items: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        items.into_iter().reduce(Formula::and)
    }

    /// Splits `l -> r`.
    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Bin(BinOp::Imp, l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Free variables of every kind.
    pub fn free_variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Bot => {}
            Formula::Eq(l, r) => {
                term_free(l, bound, out);
                term_free(r, bound, out);
            }
            Formula::Atom(p, args) => {
                if let Pred::Var(pv) = p {
                    let v = Var::Pred(pv.clone());
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
                for a in args {
                    term_free(a, bound, out);
                }
            }
            Formula::Bin(_, l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Quant(_, b, body) => {
                let vs = b.bound_vars();
                let n = vs.len();
                bound.extend(vs);
                body.collect_free(bound, out);
                bound.truncate(bound.len() - n);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_variables().is_empty()
    }

    pub fn has_free_obj(&self, x: &str) -> bool {
        self.free_variables().contains(&Var::Obj(x.into()))
    }

    /// No predicate or function variables anywhere, bound or free.
    pub fn is_first_order(&self) -> bool {
        match self {
            Formula::Bot => true,
            Formula::Eq(l, r) => !l.contains_fun_var() && !r.contains_fun_var(),
            Formula::Atom(p, args) => matches!(p, Pred::Const(_)) && !args.iter().any(Term::contains_fun_var),
            Formula::Bin(_, l, r) => l.is_first_order() && r.is_first_order(),
            Formula::Quant(_, b, body) => {
                matches!(b, Binder::Object(_) | Binder::Restricted(_)) && body.is_first_order()
            }
        }
    }

    pub fn has_restrictors(&self) -> bool {
        match self {
            Formula::Bot | Formula::Eq(..) | Formula::Atom(..) => false,
            Formula::Bin(_, l, r) => l.has_restrictors() || r.has_restrictors(),
            Formula::Quant(_, b, body) => matches!(b, Binder::Restricted(_)) || body.has_restrictors(),
        }
    }

    /// Syntactic depth: atomic formulas 0, each connective or quantifier +1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Eq(..) | Formula::Atom(..) => 0,
            Formula::Bin(_, l, r) => 1 + l.depth().max(r.depth()),
            Formula::Quant(_, _, b) => 1 + b.depth(),
        }
    }

    /// Checks arities, restrictor declarations and generalized-variable
    /// distinctness against a signature.
    pub fn well_formed(&self, sig: &Signature) -> Result<(), SyntaxError> {
        let ill = SyntaxError::IllFormed;
        match self {
            Formula::Bot => Ok(()),
            Formula::Eq(l, r) => {
                l.well_formed(sig).map_err(ill)?;
                r.well_formed(sig).map_err(ill)
            }
            Formula::Atom(p, args) => {
                match p {
                    Pred::Const(name) => match sig.predicate_arity(name) {
                        None => return Err(ill(alloc::format!("unknown predicate constant `{name}`"))),
                        Some(n) if n != args.len() => {
                            return Err(ill(alloc::format!("`{name}` expects {n} arguments, got {}", args.len())))
                        }
                        _ => {}
                    },
                    Pred::Var(pv) if pv.arity != args.len() => {
                        return Err(ill(alloc::format!("predicate variable `{pv}` applied to {} arguments", args.len())))
                    }
                    Pred::Var(_) => {}
                }
                args.iter().try_for_each(|a| a.well_formed(sig).map_err(ill))
            }
            Formula::Bin(_, l, r) => {
                l.well_formed(sig)?;
                r.well_formed(sig)
            }
            Formula::Quant(_, b, body) => {
                match b {
                    Binder::Restricted(vs) => {
                        if vs.is_empty() {
                            return Err(ill("empty generalized variable".into()));
                        }
                        for (i, (x, r)) in vs.iter().enumerate() {
                            if !sig.is_restrictor(r) {
                                return Err(ill(alloc::format!("`{r}` is not a restrictor")));
                            }
                            if vs[..i].iter().any(|(y, _)| y == x) {
                                return Err(ill(alloc::format!("variable `{x}` repeated in generalized variable")));
                            }
                        }
                    }
                    Binder::Fun(g) if g.arity == 0 => {
                        return Err(ill(alloc::format!("function variable `{}` must have positive arity", g.name)))
                    }
                    _ => {}
                }
                body.well_formed(sig)
            }
        }
    }

    /// `F^v_t`: replaces free occurrences of the object variable `v` by `t`.
    /// The flag reports whether `t` was substitutable (no capture).
    pub fn substitute_term(&self, v: &str, t: &Term) -> (Formula, bool) {
        self.substitute_terms(&[(v.into(), t.clone())])
    }

    /// Like [`Formula::substitute_term`] but fails on capture.
    pub fn substitute_term_checked(&self, v: &str, t: &Term) -> Result<Formula, SyntaxError> {
        match self.substitute_term(v, t) {
            (f, true) => Ok(f),
            (_, false) => Err(SyntaxError::CaptureViolation { var: v.into(), term: alloc::format!("{}", PrintTerm(t)) }),
        }
    }

    /// Simultaneous substitution of terms for object variables.
    pub fn substitute_terms(&self, map: &[(String, Term)]) -> (Formula, bool) {
        let mut ok = true;
        let out = subst(self, &Repl::Obj(map), &mut Vec::new(), &mut ok);
        (out, ok)
    }

    /// `G^p_w` or `G{p ⇐ λx̄.F}` for a predicate variable `p`.
    pub fn substitute_pred(&self, p: &PredVar, with: &PredReplacement) -> (Formula, bool) {
        let mut ok = true;
        let out = subst(self, &Repl::Pred(p, with), &mut Vec::new(), &mut ok);
        (out, ok)
    }

    /// `G^f_w` for a function variable `f`.
    pub fn substitute_fun(&self, g: &FunVar, with: &FunReplacement) -> (Formula, bool) {
        let mut ok = true;
        let out = subst(self, &Repl::Fun(g, with), &mut Vec::new(), &mut ok);
        (out, ok)
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// Replaces `∀(x̄:R̄)F` by `∀x1…∀xn(R1(x1) ∧ … ∧ Rn(xn) → F)` and
    /// `∃(x̄:R̄)F` by `∃x1…∃xn(R1(x1) ∧ … ∧ Rn(xn) ∧ F)`.
    pub fn eliminate_restrictors(&self) -> Formula {
        match self {
            Formula::Bot | Formula::Eq(..) | Formula::Atom(..) => self.clone(),
            Formula::Bin(op, l, r) => {
                Formula::Bin(*op, Box::new(l.eliminate_restrictors()), Box::new(r.eliminate_restrictors()))
            }
            Formula::Quant(q, Binder::Restricted(vs), body) => {
                let body = body.eliminate_restrictors();
                let guard = Formula::conjoin(
                    vs.iter().map(|(x, r)| Formula::atom(r.clone(), alloc::vec![Term::var(x.clone())])),
                )
                .expect("generalized variable with n ≥ 1");
                let mut out = match q {
                    Quantifier::Forall => Formula::imp(guard, body),
                    Quantifier::Exists => Formula::and(guard, body),
                };
                for (x, _) in vs.iter().rev() {
                    out = Formula::Quant(*q, Binder::Object(x.clone()), Box::new(out));
                }
                out
            }
            Formula::Quant(q, b, body) => Formula::Quant(*q, b.clone(), Box::new(body.eliminate_restrictors())),
        }
    }

    /// Universal closure over all free variables, object variables outermost.
    pub fn universal_closure(&self) -> Formula {
        let mut out = self.clone();
        for v in self.free_variables().into_iter().rev() {
            let b = match v {
                Var::Obj(x) => Binder::Object(x),
                Var::Pred(p) => Binder::Pred(p),
                Var::Fun(g) => Binder::Fun(g),
            };
            out = Formula::Quant(Quantifier::Forall, b, Box::new(out));
        }
        out
    }

    /// Predicate constants occurring in the formula, restrictor guards included.
    pub fn predicate_constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_preds(&mut out);
        out
    }

    fn collect_preds(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(Pred::Const(p), _) => {
                out.insert(p.clone());
            }
            Formula::Bin(_, l, r) => {
                l.collect_preds(out);
                r.collect_preds(out);
            }
            Formula::Quant(_, b, body) => {
                if let Binder::Restricted(vs) = b {
                    out.extend(vs.iter().map(|(_, r)| r.clone()));
                }
                body.collect_preds(out);
            }
            _ => {}
        }
    }

    /// All variable names in the formula (free or bound), for fresh-name
    /// generation.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        fn term_names(t: &Term, out: &mut BTreeSet<String>) {
            match t {
                Term::Var(x) => {
                    out.insert(x.clone());
                }
                Term::App(_, args) => args.iter().for_each(|a| term_names(a, out)),
                Term::FunVar(g, args) => {
                    out.insert(g.name.clone());
                    args.iter().for_each(|a| term_names(a, out));
                }
            }
        }
        match self {
            Formula::Bot => {}
            Formula::Eq(l, r) => {
                term_names(l, out);
                term_names(r, out);
            }
            Formula::Atom(p, args) => {
                if let Pred::Var(pv) = p {
                    out.insert(pv.name.clone());
                }
                args.iter().for_each(|a| term_names(a, out));
            }
            Formula::Bin(_, l, r) => {
                l.collect_names(out);
                r.collect_names(out);
            }
            Formula::Quant(_, b, body) => {
                for v in b.bound_vars() {
                    out.insert(match v {
                        Var::Obj(x) => x,
                        Var::Pred(p) => p.name,
                        Var::Fun(g) => g.name,
                    });
                }
                body.collect_names(out);
            }
        }
    }
}

fn term_free(t: &Term, bound: &[Var], out: &mut BTreeSet<Var>) {
    match t {
        Term::Var(x) => {
            let v = Var::Obj(x.clone());
            if !bound.contains(&v) {
                out.insert(v);
            }
        }
        Term::App(_, args) => args.iter().for_each(|a| term_free(a, bound, out)),
        Term::FunVar(g, args) => {
            let v = Var::Fun(g.clone());
            if !bound.contains(&v) {
                out.insert(v);
            }
            args.iter().for_each(|a| term_free(a, bound, out));
        }
    }
}

/// Free variables of a term.
pub fn term_free_variables(t: &Term) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    term_free(t, &[], &mut out);
    out
}

enum Repl<'a> {
    Obj(&'a [(String, Term)]),
    Pred(&'a PredVar, &'a PredReplacement),
    Fun(&'a FunVar, &'a FunReplacement),
}

fn captured(free: &BTreeSet<Var>, bound: &[Var]) -> bool {
    free.iter().any(|v| bound.contains(v))
}

fn subst_term(t: &Term, repl: &Repl<'_>, bound: &[Var], ok: &mut bool) -> Term {
    match t {
        Term::Var(x) => {
            if let Repl::Obj(map) = repl {
                if let Some((_, s)) = map.iter().find(|(y, _)| y == x) {
                    if captured(&term_free_variables(s), bound) {
                        *ok = false;
                    }
                    return s.clone();
                }
            }
            t.clone()
        }
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| subst_term(a, repl, bound, ok)).collect()),
        Term::FunVar(g, args) => {
            let args = args.iter().map(|a| subst_term(a, repl, bound, ok)).collect();
            match repl {
                Repl::Fun(target, with) if *target == g => match with {
                    FunReplacement::Const(c) => Term::App(c.clone(), args),
                    FunReplacement::Var(h) => {
                        if bound.contains(&Var::Fun(h.clone())) {
                            *ok = false;
                        }
                        Term::FunVar(h.clone(), args)
                    }
                },
                _ => Term::FunVar(g.clone(), args),
            }
        }
    }
}

fn subst(f: &Formula, repl: &Repl<'_>, bound: &mut Vec<Var>, ok: &mut bool) -> Formula {
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Eq(l, r) => Formula::Eq(subst_term(l, repl, bound, ok), subst_term(r, repl, bound, ok)),
        Formula::Atom(p, args) => {
            let args: Vec<Term> = args.iter().map(|a| subst_term(a, repl, bound, ok)).collect();
            match (p, repl) {
                (Pred::Var(pv), Repl::Pred(target, with)) if pv == *target => match with {
                    PredReplacement::Const(c) => Formula::Atom(Pred::Const(c.clone()), args),
                    PredReplacement::Var(q) => {
                        if bound.contains(&Var::Pred(q.clone())) {
                            *ok = false;
                        }
                        Formula::Atom(Pred::Var(q.clone()), args)
                    }
                    PredReplacement::Lambda(params, body) => {
                        let mut lambda_free = body.free_variables();
                        for x in params {
                            lambda_free.remove(&Var::Obj(x.clone()));
                        }
                        if captured(&lambda_free, bound) {
                            *ok = false;
                        }
                        let map: Vec<(String, Term)> = params.iter().cloned().zip(args).collect();
                        let (out, inner_ok) = body.substitute_terms(&map);
                        *ok &= inner_ok;
                        out
                    }
                },
                _ => Formula::Atom(p.clone(), args),
            }
        }
        Formula::Bin(op, l, r) => {
            Formula::Bin(*op, Box::new(subst(l, repl, bound, ok)), Box::new(subst(r, repl, bound, ok)))
        }
        Formula::Quant(q, b, body) => {
            let narrowed: Vec<(String, Term)>;
            let inner = match *repl {
                Repl::Obj(map) => {
                    if map.iter().any(|(x, _)| b.binds(&Var::Obj(x.clone()))) {
                        narrowed = map.iter().filter(|(x, _)| !b.binds(&Var::Obj(x.clone()))).cloned().collect();
                        if narrowed.is_empty() {
                            return f.clone();
                        }
                        Repl::Obj(&narrowed)
                    } else {
                        Repl::Obj(map)
                    }
                }
                Repl::Pred(p, w) => {
                    if b.binds(&Var::Pred(p.clone())) {
                        return f.clone();
                    }
                    Repl::Pred(p, w)
                }
                Repl::Fun(g, w) => {
                    if b.binds(&Var::Fun(g.clone())) {
                        return f.clone();
                    }
                    Repl::Fun(g, w)
                }
            };
            let vs = b.bound_vars();
            let n = vs.len();
            bound.extend(vs);
            let out = subst(body, &inner, bound, ok);
            bound.truncate(bound.len() - n);
            Formula::Quant(*q, b.clone(), Box::new(out))
        }
    }
}

fn lookup_bound(stack: &[Var], v: &Var) -> Option<usize> {
    stack.iter().rposition(|w| w == v)
}

fn alpha_var(a: &Var, b: &Var, sa: &[Var], sb: &[Var]) -> bool {
    match (lookup_bound(sa, a), lookup_bound(sb, b)) {
        (Some(i), Some(j)) => i == j,
        (None, None) => a == b,
        _ => false,
    }
}

fn alpha_term(a: &Term, b: &Term, sa: &[Var], sb: &[Var]) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => alpha_var(&Var::Obj(x.clone()), &Var::Obj(y.clone()), sa, sb),
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| alpha_term(x, y, sa, sb))
        }
        (Term::FunVar(f, xs), Term::FunVar(g, ys)) => {
            f.arity == g.arity
                && alpha_var(&Var::Fun(f.clone()), &Var::Fun(g.clone()), sa, sb)
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| alpha_term(x, y, sa, sb))
        }
        _ => false,
    }
}

fn alpha(a: &Formula, b: &Formula, sa: &mut Vec<Var>, sb: &mut Vec<Var>) -> bool {
    match (a, b) {
        (Formula::Bot, Formula::Bot) => true,
        (Formula::Eq(l1, r1), Formula::Eq(l2, r2)) => alpha_term(l1, l2, sa, sb) && alpha_term(r1, r2, sa, sb),
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            let heads = match (p, q) {
                (Pred::Const(x), Pred::Const(y)) => x == y,
                (Pred::Var(x), Pred::Var(y)) => {
                    x.arity == y.arity && alpha_var(&Var::Pred(x.clone()), &Var::Pred(y.clone()), sa, sb)
                }
                _ => false,
            };
            heads && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| alpha_term(x, y, sa, sb))
        }
        (Formula::Bin(o1, l1, r1), Formula::Bin(o2, l2, r2)) => {
            o1 == o2 && alpha(l1, l2, sa, sb) && alpha(r1, r2, sa, sb)
        }
        (Formula::Quant(q1, b1, f1), Formula::Quant(q2, b2, f2)) => {
            if q1 != q2 {
                return false;
            }
            let same_shape = match (b1, b2) {
                (Binder::Object(_), Binder::Object(_)) => true,
                (Binder::Restricted(x), Binder::Restricted(y)) => {
                    x.len() == y.len() && x.iter().zip(y).all(|((_, r), (_, s))| r == s)
                }
                (Binder::Pred(x), Binder::Pred(y)) => x.arity == y.arity,
                (Binder::Fun(x), Binder::Fun(y)) => x.arity == y.arity,
                _ => false,
            };
            if !same_shape {
                return false;
            }
            // bound variables are matched by stack position, not by name
            let va = b1.bound_vars();
            let vb = b2.bound_vars();
            let n = va.len();
            sa.extend(va);
            sb.extend(vb);
            let r = alpha(f1, f2, sa, sb);
            sa.truncate(sa.len() - n);
            sb.truncate(sb.len() - n);
            r
        }
        _ => false,
    }
}

/// Printer wrapper for terms outside any formula context.
pub struct PrintTerm<'a>(pub &'a Term);

impl fmt::Display for PrintTerm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer { out: f, scope: Vec::new() }.term(self.0)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PrintTerm(self).fmt(f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer { out: f, scope: Vec::new() }.formula(self, 0)
    }
}

const LVL_IFF: u8 = 0;
const LVL_IMP: u8 = 1;
const LVL_OR: u8 = 2;
const LVL_AND: u8 = 3;
const LVL_UNARY: u8 = 4;

enum Sugar<'a> {
    Top,
    Neq(&'a Term, &'a Term),
    Not(&'a Formula),
    Iff(&'a Formula, &'a Formula),
    Plain,
}

fn sugar(f: &Formula) -> Sugar<'_> {
    match f {
        Formula::Bin(BinOp::Imp, l, r) if **r == Formula::Bot => match &**l {
            Formula::Bot => Sugar::Top,
            Formula::Eq(a, b) => Sugar::Neq(a, b),
            other => Sugar::Not(other),
        },
        Formula::Bin(BinOp::And, l, r) => match (l.as_imp(), r.as_imp()) {
            (Some((a, b)), Some((c, d))) if a == d && b == c => Sugar::Iff(a, b),
            _ => Sugar::Plain,
        },
        _ => Sugar::Plain,
    }
}

fn level(f: &Formula) -> u8 {
    match sugar(f) {
        Sugar::Top | Sugar::Neq(..) | Sugar::Not(_) => LVL_UNARY,
        Sugar::Iff(..) => LVL_IFF,
        Sugar::Plain => match f {
            Formula::Bin(BinOp::Imp, ..) => LVL_IMP,
            Formula::Bin(BinOp::Or, ..) => LVL_OR,
            Formula::Bin(BinOp::And, ..) => LVL_AND,
            _ => LVL_UNARY,
        },
    }
}

struct Printer<'a, 'b> {
    out: &'a mut fmt::Formatter<'b>,
    /// Bound second-order variables, for choosing bare or annotated names.
    scope: Vec<Var>,
}

impl Printer<'_, '_> {
    fn term(&mut self, t: &Term) -> fmt::Result {
        match t {
            Term::Var(x) => self.out.write_str(x),
            Term::App(c, args) => {
                self.out.write_str(c)?;
                self.args(args)
            }
            Term::FunVar(g, args) => {
                if self.scope.contains(&Var::Fun(g.clone())) {
                    self.out.write_str(&g.name)?;
                } else {
                    write!(self.out, "{g}")?;
                }
                self.args(args)
            }
        }
    }

    fn args(&mut self, args: &[Term]) -> fmt::Result {
        if args.is_empty() {
            return Ok(());
        }
        self.out.write_str("(")?;
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                self.out.write_str(", ")?;
            }
            self.term(a)?;
        }
        self.out.write_str(")")
    }

    fn formula(&mut self, f: &Formula, min: u8) -> fmt::Result {
        let lvl = level(f);
        let paren = lvl < min;
        if paren {
            self.out.write_str("(")?;
        }
        match sugar(f) {
            Sugar::Top => self.out.write_str("top")?,
            Sugar::Neq(a, b) => {
                self.term(a)?;
                self.out.write_str(" != ")?;
                self.term(b)?;
            }
            Sugar::Not(g) => {
                self.out.write_str("not ")?;
                self.formula(g, LVL_UNARY)?;
            }
            Sugar::Iff(a, b) => {
                self.formula(a, LVL_IMP)?;
                self.out.write_str(" <-> ")?;
                self.formula(b, LVL_IMP)?;
            }
            Sugar::Plain => match f {
                Formula::Bot => self.out.write_str("bot")?,
                Formula::Eq(a, b) => {
                    self.term(a)?;
                    self.out.write_str(" = ")?;
                    self.term(b)?;
                }
                Formula::Atom(p, args) => {
                    match p {
                        Pred::Const(c) => self.out.write_str(c)?,
                        Pred::Var(pv) => {
                            if self.scope.contains(&Var::Pred(pv.clone())) {
                                self.out.write_str(&pv.name)?;
                            } else {
                                write!(self.out, "{pv}")?;
                            }
                        }
                    }
                    self.args(args)?;
                }
                Formula::Bin(op, l, r) => {
                    let (sym, ll, rl) = match op {
                        BinOp::Imp => (" -> ", LVL_OR, LVL_IMP),
                        BinOp::Or => (" | ", LVL_OR, LVL_AND),
                        BinOp::And => (" & ", LVL_AND, LVL_UNARY),
                    };
                    self.formula(l, ll)?;
                    self.out.write_str(sym)?;
                    self.formula(r, rl)?;
                }
                Formula::Quant(q, b, body) => {
                    write!(self.out, "{} ", q.keyword())?;
                    match b {
                        Binder::Object(x) => write!(self.out, "{x} ")?,
                        Binder::Restricted(vs) => {
                            self.out.write_str("(")?;
                            for (i, (x, r)) in vs.iter().enumerate() {
                                if i > 0 {
                                    self.out.write_str(", ")?;
                                }
                                write!(self.out, "{x}:{r}")?;
                            }
                            self.out.write_str(") ")?;
                        }
                        Binder::Pred(p) => write!(self.out, "{p} ")?,
                        Binder::Fun(g) => write!(self.out, "{g} ")?,
                    }
                    let vs = b.bound_vars();
                    let n = vs.len();
                    self.scope.extend(vs);
                    self.formula(body, LVL_UNARY)?;
                    self.scope.truncate(self.scope.len() - n);
                }
            },
        }
        if paren {
            self.out.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn p(x: Term) -> Formula {
        Formula::atom("P", vec![x])
    }
    fn q(x: Term) -> Formula {
        Formula::atom("Q", vec![x])
    }
    fn v(x: &str) -> Term {
        Term::var(x)
    }
    fn c(x: &str) -> Term {
        Term::constant(x)
    }

    #[test]
    fn substitution_skips_bound_occurrences() {
        // (∀x P(x) → Q(x))[x := a]
        let f = Formula::imp(Formula::forall("x", p(v("x"))), q(v("x")));
        let (g, ok) = f.substitute_term("x", &c("a"));
        assert!(ok);
        assert_eq!(g, Formula::imp(Formula::forall("x", p(v("x"))), q(c("a"))));
    }

    #[test]
    fn substitution_of_compound_term() {
        let (g, ok) = p(v("x")).substitute_term("x", &Term::app("s", vec![c("a")]));
        assert!(ok);
        assert_eq!(g.to_string(), "P(s(a))");
    }

    #[test]
    fn capture_is_reported() {
        // (∃y P(x,y))[x := f(y)]
        let f = Formula::exists("y", Formula::atom("P", vec![v("x"), v("y")]));
        let t = Term::app("f", vec![v("y")]);
        assert!(!f.substitute_term("x", &t).1);
        assert!(matches!(f.substitute_term_checked("x", &t), Err(SyntaxError::CaptureViolation { .. })));
    }

    #[test]
    fn capture_only_counts_real_occurrences() {
        // x does not occur under the binder, so nothing is captured
        let f = Formula::and(p(v("x")), Formula::exists("y", p(v("y"))));
        assert!(f.substitute_term("x", &v("y")).1);
    }

    #[test]
    fn self_substitution_is_identity() {
        let f = Formula::imp(Formula::forall("x", p(v("x"))), Formula::exists("y", q(v("x"))));
        assert_eq!(f.substitute_term("x", &v("x")), (f.clone(), true));
    }

    #[test]
    fn free_variables_examples() {
        assert!(Formula::forall("x", p(v("x"))).free_variables().is_empty());
        let fv = Formula::imp(p(v("x")), q(v("y"))).free_variables();
        assert_eq!(fv.into_iter().collect::<Vec<_>>(), vec![Var::Obj("x".into()), Var::Obj("y".into())]);
        // ∃p∀x(p(x) ↔ F(x, z)) has free variables of F minus x
        let pv = PredVar::new("p", 1);
        let body = Formula::atom("R", vec![v("x"), v("z")]);
        let comp = Formula::quant(
            Quantifier::Exists,
            Binder::Pred(pv.clone()),
            Formula::forall("x", Formula::iff(Formula::pred_var(pv, vec![v("x")]), body)),
        );
        assert_eq!(comp.free_variables().into_iter().collect::<Vec<_>>(), vec![Var::Obj("z".into())]);
    }

    #[test]
    fn eliminate_single_restrictor() {
        let f = Formula::imp(
            Formula::forall("x", p(v("x"))),
            Formula::quant(Quantifier::Forall, Binder::Restricted(vec![("x".into(), "R".into())]), p(v("x"))),
        );
        assert_eq!(f.eliminate_restrictors().to_string(), "forall x P(x) -> forall x (R(x) -> P(x))");
    }

    #[test]
    fn eliminate_pair_restrictor() {
        let f = Formula::quant(
            Quantifier::Exists,
            Binder::Restricted(vec![("x".into(), "R1".into()), ("y".into(), "R2".into())]),
            Formula::and(p(v("x")), q(v("y"))),
        );
        assert_eq!(f.eliminate_restrictors().to_string(), "exists x exists y (R1(x) & R2(y) & (P(x) & Q(y)))");
        let e = f.eliminate_restrictors();
        assert_eq!(e.eliminate_restrictors(), e);
        assert!(!e.has_restrictors());
    }

    #[test]
    fn restrictor_free_unchanged() {
        let f = Formula::iff(Formula::exists("x", p(v("x"))), Formula::not(Formula::forall("x", q(v("x")))));
        assert_eq!(f.eliminate_restrictors(), f);
    }

    #[test]
    fn alpha_equivalence() {
        let a = Formula::forall("x", Formula::exists("y", Formula::atom("R", vec![v("x"), v("y")])));
        let b = Formula::forall("u", Formula::exists("w", Formula::atom("R", vec![v("u"), v("w")])));
        let c2 = Formula::forall("u", Formula::exists("w", Formula::atom("R", vec![v("w"), v("u")])));
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&c2));
        // free variables must agree by name
        assert!(!p(v("x")).alpha_eq(&p(v("y"))));
        // a bound variable never matches a free one
        let d = Formula::forall("x", Formula::atom("R", vec![v("x"), v("z")]));
        let e = Formula::forall("z", Formula::atom("R", vec![v("z"), v("z")]));
        assert!(!d.alpha_eq(&e));
    }

    #[test]
    fn pred_lambda_substitution() {
        // (∀x p(x))[p ⇐ λy. P(y) ∧ Q(a)]
        let pv = PredVar::new("p", 1);
        let g = Formula::forall("x", Formula::pred_var(pv.clone(), vec![v("x")]));
        let lam = PredReplacement::Lambda(vec!["y".into()], Formula::and(p(v("y")), q(c("a"))));
        let (out, ok) = g.substitute_pred(&pv, &lam);
        assert!(ok);
        assert_eq!(out.to_string(), "forall x (P(x) & Q(a))");
        // a free z in the body would be captured by ∀z
        let g2 = Formula::forall("z", Formula::pred_var(pv.clone(), vec![v("z")]));
        let lam2 = PredReplacement::Lambda(vec!["y".into()], Formula::atom("R", vec![v("y"), v("z")]));
        assert!(!g2.substitute_pred(&pv, &lam2).1);
    }

    #[test]
    fn printer_resugars() {
        let f = Formula::iff(
            Formula::and(Formula::exists("x", p(v("x"))), Formula::atom("Q", vec![])),
            Formula::exists("x", Formula::and(p(v("x")), Formula::atom("Q", vec![]))),
        );
        assert_eq!(f.to_string(), "exists x P(x) & Q <-> exists x (P(x) & Q)");
        assert_eq!(Formula::top().to_string(), "top");
        assert_eq!(Formula::neq(v("x"), v("y")).to_string(), "x != y");
        assert_eq!(Formula::not(Formula::not(p(c("a")))).to_string(), "not not P(a)");
        let imp = Formula::imp(Formula::imp(p(c("a")), p(c("b"))), p(c("c")));
        assert_eq!(imp.to_string(), "(P(a) -> P(b)) -> P(c)");
    }

    #[test]
    fn printer_annotates_free_second_order() {
        let pv = PredVar::new("p", 1);
        let g = FunVar::new("f", 1);
        let free = Formula::pred_var(pv.clone(), vec![Term::FunVar(g.clone(), vec![c("a")])]);
        assert_eq!(free.to_string(), "p/1(f^1(a))");
        let closed = Formula::quant(
            Quantifier::Forall,
            Binder::Pred(pv),
            Formula::quant(Quantifier::Exists, Binder::Fun(g), free),
        );
        assert_eq!(closed.to_string(), "forall p/1 exists f^1 p(f(a))");
    }

    #[test]
    fn first_order_flag() {
        let pv = PredVar::new("p", 0);
        assert!(Formula::forall("x", p(v("x"))).is_first_order());
        assert!(!Formula::pred_var(pv, vec![]).is_first_order());
    }

    #[test]
    fn closure_closes() {
        let pv = PredVar::new("p", 1);
        let f = Formula::imp(Formula::pred_var(pv, vec![v("x")]), q(v("y")));
        let cl = f.universal_closure();
        assert!(cl.is_closed());
        assert_eq!(cl.to_string(), "forall x forall y forall p/1 (p(x) -> Q(y))");
    }
}
