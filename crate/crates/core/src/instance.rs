//! Substitutions from closed atoms to propositional formulas, and the
//! instance `ψF` of a closed first-order formula (with restrictors).
//!
//! Quantifiers expand to set conjunctions/disjunctions over the ground terms
//! of the chosen [`Mode`]. `Exact` is only available for nullary-only
//! signatures, where the Herbrand universe is finite; `Bounded(d)` truncates
//! to terms of depth ≤ d and does not preserve validity.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::formula::{BinOp, Binder, Formula, Pred, Quantifier};
use crate::prop::Prop;
use crate::signature::Signature;
use crate::term::{ground_terms_up_to, GroundAtom, GroundTerm, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Full Herbrand universe; requires every function constant to be nullary.
    Exact,
    /// Ground terms of depth at most the given bound.
    Bounded(usize),
}

impl Mode {
    pub fn is_exact(self) -> bool {
        matches!(self, Mode::Exact)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("formula is not closed (free: {0})")]
    NotClosed(String),
    #[error("formula is not first-order")]
    NotFirstOrder,
    #[error("no entry or default for atom `{0}`")]
    UnmappedAtom(GroundAtom),
    #[error("exact mode needs a finite Herbrand universe, but `{0}` has positive arity")]
    InfiniteUniverse(String),
    #[error("restrictor atom `{0}` must map to top or bot")]
    RestrictorNotBoolean(String),
    #[error("bad substitution entry `{atom}`: {reason}")]
    BadEntry { atom: String, reason: String },
    #[error("ill-formed formula: {0}")]
    IllFormed(String),
}

/// The ground terms a mode ranges over.
pub fn universe(sig: &Signature, mode: Mode) -> Result<Vec<GroundTerm>, InstanceError> {
    match mode {
        Mode::Exact => {
            if let Some((f, _)) = sig.functions().find(|&(_, n)| n > 0) {
                return Err(InstanceError::InfiniteUniverse(f.into()));
            }
            Ok(ground_terms_up_to(sig, 0))
        }
        Mode::Bounded(d) => Ok(ground_terms_up_to(sig, d)),
    }
}

/// `ψ`: explicit entries plus optional per-predicate defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    signature: Signature,
    entries: BTreeMap<GroundAtom, Prop>,
    defaults: BTreeMap<String, Prop>,
}

impl Substitution {
    pub fn new(signature: Signature) -> Self {
        Substitution { signature, entries: BTreeMap::new(), defaults: BTreeMap::new() }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn entries(&self) -> &BTreeMap<GroundAtom, Prop> {
        &self.entries
    }

    pub fn defaults(&self) -> &BTreeMap<String, Prop> {
        &self.defaults
    }

    fn check_value(&self, pred: &str, label: &dyn Fn() -> String, value: &Prop) -> Result<(), InstanceError> {
        if self.signature.is_restrictor(pred) && !(value.is_top() || value.is_bot()) {
            return Err(InstanceError::RestrictorNotBoolean(label()));
        }
        Ok(())
    }

    /// Adds `ψ(atom) = value`, replacing any earlier entry.
    pub fn insert(&mut self, atom: GroundAtom, value: Prop) -> Result<(), InstanceError> {
        let bad = |reason: String| InstanceError::BadEntry { atom: alloc::format!("{atom}"), reason };
        match self.signature.predicate_arity(&atom.pred) {
            None => return Err(bad("unknown predicate".into())),
            Some(n) if n != atom.args.len() => return Err(bad(alloc::format!("expected {n} arguments"))),
            _ => {}
        }
        for a in &atom.args {
            Term::from(a).well_formed(&self.signature).map_err(bad)?;
        }
        self.check_value(&atom.pred, &|| alloc::format!("{atom}"), &value)?;
        self.entries.insert(atom, value);
        Ok(())
    }

    /// Sets the value used for atoms of `pred` without an explicit entry.
    pub fn set_default(&mut self, pred: &str, value: Prop) -> Result<(), InstanceError> {
        if self.signature.predicate_arity(pred).is_none() {
            return Err(InstanceError::BadEntry { atom: pred.into(), reason: "unknown predicate".into() });
        }
        self.check_value(pred, &|| pred.into(), &value)?;
        self.defaults.insert(pred.into(), value);
        Ok(())
    }

    /// The entry for `atom`, else its predicate's default.
    pub fn lookup(&self, atom: &GroundAtom) -> Result<&Prop, InstanceError> {
        self.entries
            .get(atom)
            .or_else(|| self.defaults.get(&atom.pred))
            .ok_or_else(|| InstanceError::UnmappedAtom(atom.clone()))
    }

    /// Every formula in the range of `ψ` that is actually reachable: entries
    /// and defaults.
    pub fn range(&self) -> impl Iterator<Item = &Prop> {
        self.entries.values().chain(self.defaults.values())
    }
}

fn check_instantiable(psi: &Substitution, f: &Formula) -> Result<(), InstanceError> {
    f.well_formed(psi.signature()).map_err(|e| InstanceError::IllFormed(alloc::format!("{e}")))?;
    if !f.is_first_order() {
        return Err(InstanceError::NotFirstOrder);
    }
    let free = f.free_variables();
    if !free.is_empty() {
        let names: Vec<String> = free.iter().map(|v| alloc::format!("{v}")).collect();
        return Err(InstanceError::NotClosed(names.join(", ")));
    }
    Ok(())
}

/// `ψF` for a closed first-order formula `F`, possibly with restrictors.
pub fn instantiate(psi: &Substitution, f: &Formula, mode: Mode) -> Result<Prop, InstanceError> {
    check_instantiable(psi, f)?;
    let universe = universe(psi.signature(), mode)?;
    let mut walk = Walk { psi, universe: &universe, env: Vec::new(), missing: None };
    walk.instance(f)
}

/// Closed atoms reachable while instantiating `f` that have neither an
/// entry nor a default. Empty iff [`instantiate`] cannot fail with
/// [`InstanceError::UnmappedAtom`].
pub fn validate(psi: &Substitution, f: &Formula, mode: Mode) -> Vec<GroundAtom> {
    if check_instantiable(psi, f).is_err() {
        return Vec::new();
    }
    let Ok(universe) = universe(psi.signature(), mode) else {
        return Vec::new();
    };
    let mut missing = BTreeSet::new();
    let mut walk = Walk { psi, universe: &universe, env: Vec::new(), missing: Some(&mut missing) };
    let _ = walk.instance(f);
    missing.into_iter().collect()
}

struct Walk<'a, 'm> {
    psi: &'a Substitution,
    universe: &'a [GroundTerm],
    env: Vec<(String, GroundTerm)>,
    /// When set, unmapped atoms are collected here instead of failing.
    missing: Option<&'m mut BTreeSet<GroundAtom>>,
}

impl Walk<'_, '_> {
    fn term(&self, t: &Term) -> Result<GroundTerm, InstanceError> {
        match t {
            Term::Var(x) => self
                .env
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| InstanceError::NotClosed(x.clone())),
            Term::App(f, args) => {
                Ok(GroundTerm::app(f.clone(), args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?))
            }
            Term::FunVar(..) => Err(InstanceError::NotFirstOrder),
        }
    }

    fn lookup(&mut self, atom: GroundAtom) -> Result<Prop, InstanceError> {
        match (self.psi.lookup(&atom), &mut self.missing) {
            (Ok(p), _) => Ok(p.clone()),
            (Err(_), Some(m)) => {
                m.insert(atom);
                Ok(Prop::bot())
            }
            (Err(e), None) => Err(e),
        }
    }

    fn instance(&mut self, f: &Formula) -> Result<Prop, InstanceError> {
        Ok(match f {
            Formula::Bot => Prop::bot(),
            Formula::Eq(l, r) => {
                if self.term(l)? == self.term(r)? {
                    Prop::top()
                } else {
                    Prop::bot()
                }
            }
            Formula::Atom(Pred::Const(p), args) => {
                let args = args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                self.lookup(GroundAtom::new(p.clone(), args))?
            }
            Formula::Atom(Pred::Var(_), _) => return Err(InstanceError::NotFirstOrder),
            Formula::Bin(op, l, r) => {
                let (l, r) = (self.instance(l)?, self.instance(r)?);
                match op {
                    BinOp::And => Prop::and(l, r),
                    BinOp::Or => Prop::or(l, r),
                    BinOp::Imp => Prop::imp(l, r),
                }
            }
            Formula::Quant(q, binder, body) => {
                let vars: Vec<String>;
                let ranges: Vec<Vec<GroundTerm>> = match binder {
                    Binder::Object(x) => {
                        vars = alloc::vec![x.clone()];
                        alloc::vec![self.universe.to_vec()]
                    }
                    Binder::Restricted(vs) => {
                        vars = vs.iter().map(|(x, _)| x.clone()).collect();
                        let mut ranges = Vec::with_capacity(vs.len());
                        for (_, r) in vs {
                            let mut allowed = Vec::new();
                            for alpha in self.universe {
                                let guard = self.lookup(GroundAtom::new(r.clone(), alloc::vec![alpha.clone()]))?;
                                if guard.is_top() {
                                    allowed.push(alpha.clone());
                                }
                            }
                            ranges.push(allowed);
                        }
                        ranges
                    }
                    Binder::Pred(_) | Binder::Fun(_) => return Err(InstanceError::NotFirstOrder),
                };
                let mut children = BTreeSet::new();
                self.each_tuple(&vars, &ranges, 0, &mut |w| {
                    children.insert(w.instance(body)?);
                    Ok(())
                })?;
                match q {
                    Quantifier::Forall => Prop::And(children),
                    Quantifier::Exists => Prop::Or(children),
                }
            }
        })
    }

    fn each_tuple(
        &mut self,
        vars: &[String],
        ranges: &[Vec<GroundTerm>],
        k: usize,
        visit: &mut dyn FnMut(&mut Self) -> Result<(), InstanceError>,
    ) -> Result<(), InstanceError> {
        if k == vars.len() {
            return visit(self);
        }
        for alpha in &ranges[k] {
            self.env.push((vars[k].clone(), alpha.clone()));
            let r = self.each_tuple(vars, ranges, k + 1, visit);
            self.env.pop();
            r?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn sig(consts: &[&str], preds: &[(&str, usize)], restrictors: &[&str]) -> Signature {
        Signature::new(
            consts.iter().map(|c| (s(c), 0)),
            preds.iter().map(|(p, n)| (s(p), *n)),
            restrictors.iter().map(|r| s(r)),
        )
        .unwrap()
    }

    fn atom1(p: &str, c: &str) -> GroundAtom {
        GroundAtom::new(p, vec![GroundTerm::constant(c)])
    }

    fn fa(c: &str) -> Prop {
        Prop::atom(alloc::format!("f_{c}"))
    }

    fn px(x: &str) -> Formula {
        Formula::atom("P", vec![Term::var(x)])
    }

    #[test]
    fn lookup_entry_default_and_missing() {
        let mut psi = Substitution::new(sig(&["a", "c"], &[("P", 1), ("R", 1), ("Q", 0)], &["R"]));
        psi.insert(atom1("P", "a"), fa("a")).unwrap();
        psi.set_default("R", Prop::bot()).unwrap();
        assert_eq!(psi.lookup(&atom1("P", "a")).unwrap(), &fa("a"));
        assert_eq!(psi.lookup(&atom1("R", "c")).unwrap(), &Prop::bot());
        assert_eq!(psi.lookup(&GroundAtom::new("Q", vec![])), Err(InstanceError::UnmappedAtom(GroundAtom::new("Q", vec![]))));
    }

    #[test]
    fn restrictors_only_top_or_bot() {
        let mut psi = Substitution::new(sig(&["a"], &[("R", 1)], &["R"]));
        assert!(matches!(psi.insert(atom1("R", "a"), Prop::atom("p")), Err(InstanceError::RestrictorNotBoolean(_))));
        assert!(psi.set_default("R", Prop::atom("p")).is_err());
        psi.insert(atom1("R", "a"), Prop::top()).unwrap();
    }

    #[test]
    fn subsum4_instance() {
        let consts = ["a1", "a2", "a3"];
        let mut psi = Substitution::new(sig(&consts, &[("P", 1), ("Q", 0)], &[]));
        for c in consts {
            psi.insert(atom1("P", c), fa(c)).unwrap();
        }
        psi.insert(GroundAtom::new("Q", vec![]), Prop::atom("g")).unwrap();
        let q = Formula::atom("Q", vec![]);
        let f = Formula::iff(
            Formula::and(Formula::exists("x", px("x")), q.clone()),
            Formula::exists("x", Formula::and(px("x"), q)),
        );
        let got = instantiate(&psi, &f, Mode::Exact).unwrap();
        let g = Prop::atom("g");
        let want = Prop::iff(
            Prop::and(Prop::or_of(consts.map(fa)), g.clone()),
            Prop::or_of(consts.map(|c| Prop::and(fa(c), g.clone()))),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn equality_is_syntactic() {
        let psi = Substitution::new(sig(&["a", "b"], &[], &[]));
        let eq = |l: &str, r: &str| Formula::eq(Term::constant(l), Term::constant(r));
        assert_eq!(instantiate(&psi, &eq("a", "a"), Mode::Exact).unwrap(), Prop::top());
        assert_eq!(instantiate(&psi, &eq("a", "b"), Mode::Exact).unwrap(), Prop::bot());
    }

    #[test]
    fn restricted_universal_over_subset() {
        // A = {a1, a2, a3}, B = {a1, a3}
        let consts = ["a1", "a2", "a3"];
        let mut psi = Substitution::new(sig(&consts, &[("P", 1), ("R", 1)], &["R"]));
        for c in consts {
            psi.insert(atom1("P", c), fa(c)).unwrap();
            let inb = c != "a2";
            psi.insert(atom1("R", c), if inb { Prop::top() } else { Prop::bot() }).unwrap();
        }
        let f = Formula::imp(
            Formula::forall("x", px("x")),
            Formula::quant(Quantifier::Forall, Binder::Restricted(vec![(s("x"), s("R"))]), px("x")),
        );
        let got = instantiate(&psi, &f, Mode::Exact).unwrap();
        let want = Prop::imp(Prop::and_of(consts.map(fa)), Prop::and_of(["a1", "a3"].map(fa)));
        assert_eq!(got, want);
        assert!(validate(&psi, &f, Mode::Exact).is_empty());
    }

    #[test]
    fn restricted_pairs_over_two_sets() {
        // A = {a1, a2}, B = {b1}, constants A ∪ B
        let consts = ["a1", "a2", "b1"];
        let mut psi = Substitution::new(sig(&consts, &[("P", 1), ("Q", 1), ("R1", 1), ("R2", 1)], &["R1", "R2"]));
        psi.set_default("R1", Prop::bot()).unwrap();
        psi.set_default("R2", Prop::bot()).unwrap();
        psi.set_default("P", Prop::atom("unused")).unwrap();
        psi.set_default("Q", Prop::atom("unused")).unwrap();
        for a in ["a1", "a2"] {
            psi.insert(atom1("R1", a), Prop::top()).unwrap();
            psi.insert(atom1("P", a), fa(a)).unwrap();
        }
        psi.insert(atom1("R2", "b1"), Prop::top()).unwrap();
        psi.insert(atom1("Q", "b1"), Prop::atom("g_b1")).unwrap();
        let r = |x: &str, r: &str| Binder::Restricted(vec![(s(x), s(r))]);
        let qy = Formula::atom("Q", vec![Term::var("y")]);
        let f = Formula::iff(
            Formula::and(
                Formula::quant(Quantifier::Exists, r("x", "R1"), px("x")),
                Formula::quant(Quantifier::Exists, r("y", "R2"), qy.clone()),
            ),
            Formula::quant(
                Quantifier::Exists,
                Binder::Restricted(vec![(s("x"), s("R1")), (s("y"), s("R2"))]),
                Formula::and(px("x"), qy),
            ),
        );
        let got = instantiate(&psi, &f, Mode::Exact).unwrap();
        let g = Prop::atom("g_b1");
        let want = Prop::iff(
            Prop::and(Prop::or_of(["a1", "a2"].map(fa)), Prop::or_of([g.clone()])),
            Prop::or_of(["a1", "a2"].map(|a| Prop::and(fa(a), g.clone()))),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn empty_restricted_ranges() {
        let mut psi = Substitution::new(sig(&["a"], &[("P", 1), ("R", 1)], &["R"]));
        psi.set_default("R", Prop::bot()).unwrap();
        let fa_ = Formula::quant(Quantifier::Forall, Binder::Restricted(vec![(s("x"), s("R"))]), px("x"));
        let ex_ = Formula::quant(Quantifier::Exists, Binder::Restricted(vec![(s("x"), s("R"))]), px("x"));
        assert_eq!(instantiate(&psi, &fa_, Mode::Exact).unwrap(), Prop::top());
        assert_eq!(instantiate(&psi, &ex_, Mode::Exact).unwrap(), Prop::bot());
    }

    #[test]
    fn errors() {
        let mut sg = Signature::new(vec![(s("a"), 0), (s("s"), 1)], vec![(s("P"), 1)], vec![]).unwrap();
        let psi = Substitution::new(sg.clone());
        let closed = Formula::forall("x", px("x"));
        assert!(matches!(instantiate(&psi, &closed, Mode::Exact), Err(InstanceError::InfiniteUniverse(f)) if f == "s"));
        assert!(matches!(instantiate(&psi, &px("x"), Mode::Bounded(1)), Err(InstanceError::NotClosed(_))));
        let so = Formula::quant(
            Quantifier::Forall,
            Binder::Pred(crate::formula::PredVar::new("p", 0)),
            Formula::pred_var(crate::formula::PredVar::new("p", 0), vec![]),
        );
        assert_eq!(instantiate(&psi, &so, Mode::Bounded(1)), Err(InstanceError::NotFirstOrder));
        assert!(matches!(instantiate(&psi, &closed, Mode::Bounded(1)), Err(InstanceError::UnmappedAtom(_))));
        sg = Signature::new(vec![(s("a"), 0)], vec![(s("P"), 1), (s("Q"), 0)], vec![]).unwrap();
        let mut psi = Substitution::new(sg);
        psi.set_default("P", Prop::atom("p")).unwrap();
        let f = Formula::and(closed, Formula::atom("Q", vec![]));
        assert_eq!(validate(&psi, &f, Mode::Exact), vec![GroundAtom::new("Q", vec![])]);
    }

    #[test]
    fn bounded_depth_two_report() {
        let sg = Signature::new(vec![(s("a"), 0), (s("s"), 1)], vec![(s("P"), 1)], vec![]).unwrap();
        let mut psi = Substitution::new(sg);
        let mut t = GroundTerm::constant("a");
        for k in 0..=2 {
            psi.insert(GroundAtom::new("P", vec![t.clone()]), Prop::atom(alloc::format!("p{k}"))).unwrap();
            t = GroundTerm::app("s", vec![t]);
        }
        let f = Formula::forall("x", px("x"));
        assert!(validate(&psi, &f, Mode::Bounded(2)).is_empty());
        // P(s(x)) reaches depth 3
        let g = Formula::forall("x", Formula::atom("P", vec![Term::app("s", vec![Term::var("x")])]));
        let missing = validate(&psi, &g, Mode::Bounded(2));
        assert_eq!(missing.len(), 1);
        assert_eq!(missing[0].to_string(), "P(s(s(s(a))))");
    }

    #[test]
    fn vacuous_quantifier_gives_singleton() {
        let mut psi = Substitution::new(sig(&["a", "b", "c"], &[("Q", 0)], &[]));
        psi.insert(GroundAtom::new("Q", vec![]), Prop::atom("g")).unwrap();
        let f = Formula::forall("x", Formula::atom("Q", vec![]));
        assert_eq!(instantiate(&psi, &f, Mode::Exact).unwrap(), Prop::and_of([Prop::atom("g")]));
    }
}
