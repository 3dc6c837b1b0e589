//! Random generators shared by the property tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::BTreeMap;

use hhtkit_core::formula::{Binder, Formula, PredVar, Quantifier};
use hhtkit_core::ht::{AtomState, HtInterpretation};
use hhtkit_core::instance::{universe, Mode, Substitution};
use hhtkit_core::kernel::{instantiate_schema, Binding, MetaValue, SoTarget};
use hhtkit_core::term::{tuples, FunVar, GroundAtom, Term};
use hhtkit_core::{Prop, Signature, Var};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type R = ChaCha8Rng;

pub fn rng(seed: u64) -> R {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn signature(consts: &[&str], funs: &[(&str, usize)], preds: &[(&str, usize)], restrictors: &[&str]) -> Signature {
    let mut fs: Vec<(String, usize)> = consts.iter().map(|c| (c.to_string(), 0)).collect();
    fs.extend(funs.iter().map(|(f, n)| (f.to_string(), *n)));
    let mut ps: Vec<(String, usize)> = preds.iter().map(|(p, n)| (p.to_string(), *n)).collect();
    ps.extend(restrictors.iter().map(|r| (r.to_string(), 1)));
    Signature::new(fs, ps, restrictors.iter().map(|r| r.to_string())).unwrap()
}

// ---------------------------------------------------------------------------
// propositional

pub fn prop(r: &mut R, atoms: &[&str], depth: usize) -> Prop {
    let leaf = |r: &mut R| match r.gen_range(0..10) {
        0 => Prop::top(),
        1 => Prop::bot(),
        _ => Prop::atom(*atoms.choose(r).unwrap()),
    };
    if depth == 0 {
        return leaf(r);
    }
    match r.gen_range(0..6) {
        0 => leaf(r),
        1 => Prop::and_of((0..r.gen_range(0..4)).map(|_| prop(r, atoms, depth - 1)).collect::<Vec<_>>()),
        2 => Prop::or_of((0..r.gen_range(0..4)).map(|_| prop(r, atoms, depth - 1)).collect::<Vec<_>>()),
        3 => Prop::not(prop(r, atoms, depth - 1)),
        _ => Prop::imp(prop(r, atoms, depth - 1), prop(r, atoms, depth - 1)),
    }
}

pub fn ht_interpretation<'a>(r: &mut R, atoms: impl IntoIterator<Item = &'a str>) -> HtInterpretation {
    HtInterpretation::from_states(atoms.into_iter().map(|a| (a, AtomState::ALL[r.gen_range(0..3)])))
}

// ---------------------------------------------------------------------------
// first- and second-order formulas

/// Knobs for [`FoGen`].
#[derive(Clone)]
pub struct FoGen<'a> {
    pub sig: &'a Signature,
    /// Object variables that may occur free.
    pub free: Vec<String>,
    /// Second-order variables that may occur free.
    pub so_free: Vec<Var>,
    pub restrictors: bool,
    /// Allow quantifiers over `p/0`, `p/1`, `q/0`, `q/1` and `g^1`.
    pub so_quantifiers: bool,
    pub term_depth: usize,
}

const NAMES: [&str; 3] = ["x", "y", "z"];

impl<'a> FoGen<'a> {
    pub fn closed(sig: &'a Signature) -> Self {
        FoGen { sig, free: vec![], so_free: vec![], restrictors: false, so_quantifiers: false, term_depth: 0 }
    }

    fn consts(&self) -> Vec<&str> {
        self.sig.object_constants()
    }

    pub fn term(&self, r: &mut R, scope: &[String], so: &[Var], depth: usize) -> Term {
        let vars: Vec<&String> = scope.iter().chain(&self.free).collect();
        let funs: Vec<(&str, usize)> = self.sig.functions().filter(|&(_, n)| n > 0).collect();
        let fvars: Vec<&FunVar> = so
            .iter()
            .chain(&self.so_free)
            .filter_map(|v| if let Var::Fun(g) = v { Some(g) } else { None })
            .collect();
        let k = r.gen_range(0..10);
        if depth > 0 && k < 3 && (!funs.is_empty() || !fvars.is_empty()) {
            let pick_fv = !fvars.is_empty() && (funs.is_empty() || r.gen_bool(0.5));
            if pick_fv {
                let g = *fvars.choose(r).unwrap();
                let args = (0..g.arity).map(|_| self.term(r, scope, so, depth - 1)).collect();
                return Term::FunVar(g.clone(), args);
            }
            let (f, n) = *funs.choose(r).unwrap();
            return Term::app(f, (0..n).map(|_| self.term(r, scope, so, depth - 1)).collect());
        }
        if !vars.is_empty() && k < 7 {
            return Term::var(vars.choose(r).unwrap().as_str());
        }
        Term::constant(*self.consts().choose(r).unwrap())
    }

    fn atom(&self, r: &mut R, scope: &[String], so: &[Var]) -> Formula {
        let pvars: Vec<&PredVar> = so
            .iter()
            .chain(&self.so_free)
            .filter_map(|v| if let Var::Pred(p) = v { Some(p) } else { None })
            .collect();
        let preds: Vec<(&str, usize)> = self.sig.predicates().filter(|(p, _)| !self.sig.is_restrictor(p)).collect();
        let k = r.gen_range(0..20);
        if k == 0 {
            return Formula::Bot;
        }
        if k < 4 || (preds.is_empty() && pvars.is_empty()) {
            let d = self.term_depth;
            return Formula::eq(self.term(r, scope, so, d), self.term(r, scope, so, d));
        }
        if !pvars.is_empty() && (preds.is_empty() || r.gen_bool(0.5)) {
            let p = *pvars.choose(r).unwrap();
            let args = (0..p.arity).map(|_| self.term(r, scope, so, self.term_depth)).collect();
            return Formula::pred_var(p.clone(), args);
        }
        let (p, n) = *preds.choose(r).unwrap();
        Formula::atom(p, (0..n).map(|_| self.term(r, scope, so, self.term_depth)).collect())
    }

    pub fn formula(&self, r: &mut R, depth: usize) -> Formula {
        self.go(r, depth, &mut Vec::new(), &mut Vec::new())
    }

    fn go(&self, r: &mut R, depth: usize, scope: &mut Vec<String>, so: &mut Vec<Var>) -> Formula {
        if depth == 0 {
            return self.atom(r, scope, so);
        }
        match r.gen_range(0..12) {
            0 => self.atom(r, scope, so),
            1 | 2 => Formula::and(self.go(r, depth - 1, scope, so), self.go(r, depth - 1, scope, so)),
            3 | 4 => Formula::or(self.go(r, depth - 1, scope, so), self.go(r, depth - 1, scope, so)),
            5 | 6 => Formula::imp(self.go(r, depth - 1, scope, so), self.go(r, depth - 1, scope, so)),
            7 => Formula::not(self.go(r, depth - 1, scope, so)),
            8 if self.so_quantifiers => {
                let v = if r.gen_bool(0.7) {
                    Var::Pred(PredVar::new(["p", "q"][r.gen_range(0..2)], r.gen_range(0..2)))
                } else {
                    Var::Fun(FunVar::new("g", 1))
                };
                let b = match &v {
                    Var::Pred(p) => Binder::Pred(p.clone()),
                    Var::Fun(g) => Binder::Fun(g.clone()),
                    Var::Obj(_) => unreachable!(),
                };
                so.push(v);
                let body = self.go(r, depth - 1, scope, so);
                so.pop();
                Formula::quant(if r.gen_bool(0.5) { Quantifier::Forall } else { Quantifier::Exists }, b, body)
            }
            _ => {
                let q = if r.gen_bool(0.5) { Quantifier::Forall } else { Quantifier::Exists };
                let rs: Vec<&str> = self.sig.restrictors().collect();
                if self.restrictors && !rs.is_empty() && r.gen_bool(0.5) {
                    let n = r.gen_range(1..=2);
                    let mut names: Vec<&str> = NAMES.to_vec();
                    names.shuffle(r);
                    let vs: Vec<(String, String)> =
                        names[..n].iter().map(|x| (x.to_string(), rs.choose(r).unwrap().to_string())).collect();
                    let k = scope.len();
                    scope.extend(vs.iter().map(|(x, _)| x.clone()));
                    let body = self.go(r, depth - 1, scope, so);
                    scope.truncate(k);
                    Formula::quant(q, Binder::Restricted(vs), body)
                } else {
                    let x = NAMES.choose(r).unwrap().to_string();
                    scope.push(x.clone());
                    let body = self.go(r, depth - 1, scope, so);
                    scope.pop();
                    Formula::quant(q, Binder::Object(x), body)
                }
            }
        }
    }
}

/// A substitution total on the exact Herbrand base of `sig`: predicates get
/// random formulas over `atoms`, restrictors random `⊤`/`⊥`. Some
/// predicates are covered by a default instead of explicit entries.
pub fn substitution(r: &mut R, sig: &Signature, atoms: &[&str], depth: usize) -> Substitution {
    let u = universe(sig, Mode::Exact).unwrap();
    let mut psi = Substitution::new(sig.clone());
    for (p, n) in sig.predicates() {
        let restrictor = sig.is_restrictor(p);
        let value = |r: &mut R| {
            if restrictor {
                if r.gen_bool(0.6) {
                    Prop::top()
                } else {
                    Prop::bot()
                }
            } else {
                prop(r, atoms, depth)
            }
        };
        if r.gen_bool(0.2) {
            let v = value(r);
            psi.set_default(p, v).unwrap();
        }
        for args in tuples(&u, n) {
            if psi.defaults().contains_key(p) && r.gen_bool(0.5) {
                continue;
            }
            let v = value(r);
            psi.insert(GroundAtom::new(p, args), v).unwrap();
        }
    }
    psi
}

// ---------------------------------------------------------------------------
// schema instances

fn var(x: &str) -> MetaValue {
    MetaValue::Var(x.into())
}

fn vars(r: &mut R, n: usize, distinct: bool) -> Vec<String> {
    if distinct {
        let mut names = NAMES.to_vec();
        names.shuffle(r);
        names[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (0..n).map(|_| NAMES.choose(r).unwrap().to_string()).collect()
    }
}

/// A random binding for schema `id` whose instance satisfies the side
/// conditions, together with that instance. Formulas have depth ≤ `depth`
/// and free variables among `x, y, z`.
pub fn schema_instance(r: &mut R, id: &str, sig: &Signature, depth: usize) -> (Binding, Formula) {
    let free: Vec<String> = NAMES.iter().map(|s| s.to_string()).collect();
    for _ in 0..1000 {
        let so_var = |r: &mut R| -> Var {
            if r.gen_bool(0.7) {
                Var::Pred(PredVar::new("p", r.gen_range(0..2)))
            } else {
                Var::Fun(FunVar::new("f", 1))
            }
        };
        let mut b = Binding::new();
        let fo = FoGen { sig, free: free.clone(), so_free: vec![], restrictors: false, so_quantifiers: false, term_depth: 0 };
        let f = |r: &mut R, so: Vec<Var>| {
            let g = FoGen { so_free: so, ..fo.clone() };
            let d = r.gen_range(0..=depth);
            MetaValue::Formula(g.formula(r, d))
        };
        let t = |r: &mut R| MetaValue::Term(fo.term(r, &[], &[], 1));
        match id {
            "k" | "and-el" | "and-er" | "and-i" | "or-il" | "or-ir" | "hosoi" => {
                b.insert("F".into(), f(r, vec![]));
                b.insert("G".into(), f(r, vec![]));
            }
            "s" | "or-e" => {
                for k in ["F", "G", "H"] {
                    b.insert(k.into(), f(r, vec![]));
                }
            }
            "efq" => {
                b.insert("F".into(), f(r, vec![]));
            }
            "all-e" | "ex-i" => {
                b.insert("x".into(), var(NAMES.choose(r).unwrap()));
                b.insert("F".into(), f(r, vec![]));
                b.insert("t".into(), t(r));
            }
            "eq-refl" => {
                b.insert("t".into(), t(r));
            }
            "eq-subst" => {
                b.insert("t1".into(), t(r));
                b.insert("t2".into(), t(r));
                b.insert("x".into(), var(NAMES.choose(r).unwrap()));
                b.insert("F".into(), f(r, vec![]));
            }
            "sqht" => {
                b.insert("x".into(), var(NAMES.choose(r).unwrap()));
                b.insert("F".into(), f(r, vec![]));
            }
            "dec-eq" => {
                b.insert("x".into(), var(NAMES.choose(r).unwrap()));
                b.insert("y".into(), var(NAMES.choose(r).unwrap()));
            }
            "cet-distinct" => {
                let fs: Vec<(&str, usize)> = sig.functions().collect();
                let (f1, n1) = *fs.choose(r).unwrap();
                let (f2, n2) = *fs.choose(r).unwrap();
                b.insert("f".into(), MetaValue::FunConst(f1.into()));
                b.insert("g".into(), MetaValue::FunConst(f2.into()));
                b.insert("xs".into(), MetaValue::Vars(vars(r, n1, false)));
                b.insert("ys".into(), MetaValue::Vars(vars(r, n2, false)));
            }
            "cet-inject" => {
                let fs: Vec<(&str, usize)> = sig.functions().filter(|&(_, n)| n > 0).collect();
                let (f1, n) = *fs.choose(r).unwrap();
                b.insert("f".into(), MetaValue::FunConst(f1.into()));
                b.insert("xs".into(), MetaValue::Vars(vars(r, n, false)));
                b.insert("ys".into(), MetaValue::Vars(vars(r, n, false)));
            }
            "cet-acyclic" => {
                let x = NAMES.choose(r).unwrap().to_string();
                let fs: Vec<(&str, usize)> = sig.functions().filter(|&(_, n)| n > 0).collect();
                // wrap x in one or two applications, other arguments random
                let mut term = Term::var(x.clone());
                for _ in 0..r.gen_range(1..=2) {
                    let (g, n) = *fs.choose(r).unwrap();
                    let at = r.gen_range(0..n);
                    let args = (0..n).map(|i| if i == at { term.clone() } else { fo.term(r, &[], &[], 0) }).collect();
                    term = Term::app(g, args);
                }
                b.insert("t".into(), MetaValue::Term(term));
                b.insert("x".into(), MetaValue::Var(x));
            }
            "so-all-e" | "so-ex-i" => {
                let v = so_var(r);
                let w = match &v {
                    Var::Pred(p) => {
                        let consts: Vec<&str> =
                            sig.predicates().filter(|&(_, n)| n == p.arity).map(|(q, _)| q).collect();
                        if !consts.is_empty() && r.gen_bool(0.5) {
                            SoTarget::PredConst(consts.choose(r).unwrap().to_string())
                        } else {
                            SoTarget::PredVar(PredVar::new("q", p.arity))
                        }
                    }
                    Var::Fun(g) => {
                        let consts: Vec<&str> =
                            sig.functions().filter(|&(_, n)| n == g.arity).map(|(q, _)| q).collect();
                        if !consts.is_empty() && r.gen_bool(0.5) {
                            SoTarget::FunConst(consts.choose(r).unwrap().to_string())
                        } else {
                            SoTarget::FunVar(FunVar::new("h", g.arity))
                        }
                    }
                    Var::Obj(_) => unreachable!(),
                };
                b.insert("G".into(), f(r, vec![v.clone()]));
                b.insert("v".into(), MetaValue::SoVar(v));
                b.insert("w".into(), MetaValue::SoTarget(w));
            }
            "so-abs" => {
                let p = PredVar::new("p", r.gen_range(0..2));
                b.insert("xs".into(), MetaValue::Vars(vars(r, p.arity, true)));
                b.insert("F".into(), f(r, vec![]));
                b.insert("G".into(), f(r, vec![Var::Pred(p.clone())]));
                b.insert("p".into(), MetaValue::PredVar(p));
            }
            "comp" => {
                let p = PredVar::new("p", r.gen_range(0..2));
                b.insert("xs".into(), MetaValue::Vars(vars(r, p.arity, true)));
                b.insert("F".into(), f(r, vec![Var::Pred(PredVar::new("q", 1))]));
                b.insert("p".into(), MetaValue::PredVar(p));
            }
            "choice" => {
                let xy = vars(r, 2, true);
                b.insert("p".into(), MetaValue::PredVar(PredVar::new("p", 2)));
                b.insert("xs".into(), MetaValue::Vars(vec![xy[0].clone()]));
                b.insert("y".into(), MetaValue::Var(xy[1].clone()));
                b.insert("f".into(), MetaValue::SoVar(Var::Fun(FunVar::new("f", 1))));
            }
            "dca" => {}
            other => panic!("no generator for schema {other}"),
        }
        if let Ok(inst) = instantiate_schema(id, &b, sig) {
            return (b, inst);
        }
    }
    panic!("could not generate an instance of {id}");
}

/// Replaces the free predicate variable `p` by `λxs.F` for a random
/// first-order `F` over `sig`.
pub fn abstract_pred(r: &mut R, f: &Formula, p: &PredVar, sig: &Signature, depth: usize) -> Formula {
    let xs: Vec<String> = vars(r, p.arity, true);
    let g = FoGen { sig, free: xs.clone(), so_free: vec![], restrictors: false, so_quantifiers: false, term_depth: 0 };
    loop {
        let body = g.formula(r, depth);
        let (out, ok) = f.substitute_pred(p, &hhtkit_core::formula::PredReplacement::Lambda(xs.clone(), body));
        if ok {
            return out;
        }
    }
}

/// Schema ids with their signature and mode for soundness testing.
pub fn soundness_setups() -> BTreeMap<&'static str, (Signature, Mode)> {
    let small = signature(&["a", "b", "c"], &[], &[("P", 1), ("Q", 0)], &[]);
    let binary = signature(&["a", "b"], &[], &[("P", 1), ("Q", 0), ("R", 2)], &[]);
    let fun = signature(&["a", "b"], &[("f", 1), ("g", 2)], &[], &[]);
    let so = signature(&["a", "b"], &[], &[("P", 1), ("Q", 0)], &[]);
    let mut out = BTreeMap::new();
    for id in ["k", "s", "and-el", "and-er", "and-i", "or-il", "or-ir", "or-e", "efq", "hosoi"] {
        out.insert(id, (small.clone(), Mode::Exact));
    }
    for id in ["all-e", "ex-i", "eq-refl", "eq-subst", "sqht", "dec-eq"] {
        out.insert(id, (binary.clone(), Mode::Exact));
    }
    out.insert("cet-distinct", (fun.clone(), Mode::Bounded(1)));
    out.insert("cet-inject", (fun.clone(), Mode::Bounded(1)));
    out.insert("cet-acyclic", (fun, Mode::Bounded(1)));
    for id in ["so-all-e", "so-ex-i", "so-abs", "comp", "choice", "dca"] {
        out.insert(id, (so.clone(), Mode::Exact));
    }
    out
}
