//! Herbrand HT-interpretations and second-order satisfaction.
//!
//! A Herbrand HT-interpretation is a pair `⟨J^h, J^t⟩` of sets of ground
//! atoms with `J^h ⊆ J^t`. Second-order quantifiers range over *names*:
//! a function name is a total table `Uⁿ → U`, a predicate name a pair
//! `p_h ⊆ p_t` of subsets of `Uⁿ`. Since a name is determined by its
//! extension, enumerating names means enumerating tables.
//!
//! Formulas are compiled to an indexed form before evaluation: ground terms
//! become indices into an arena whose prefix is the universe, and variables
//! become stack slots.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use thiserror::Error;

use crate::formula::{BinOp, Binder, Formula, Pred, PredVar, Quantifier};
use crate::ht::{satisfies, AtomState, HtInterpretation, World};
use crate::instance::{self, InstanceError, Mode, Substitution};
use crate::signature::Signature;
use crate::term::{tuples, FunVar, GroundAtom, GroundTerm, Term};

/// Default ceiling on [`evaluation_count`].
pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HerbrandError {
    #[error("here-set is not contained in there-set (atom `{0}`)")]
    NotPersistent(GroundAtom),
    #[error("{required} evaluations needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("formula is not closed")]
    NotClosed,
    #[error("function variable applied outside the bounded universe: {0}")]
    OutsideUniverse(String),
    #[error("ill-formed formula: {0}")]
    IllFormed(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HerbrandInterpretation {
    here: BTreeSet<GroundAtom>,
    there: BTreeSet<GroundAtom>,
}

impl HerbrandInterpretation {
    pub fn new(here: BTreeSet<GroundAtom>, there: BTreeSet<GroundAtom>) -> Result<Self, HerbrandError> {
        if let Some(a) = here.iter().find(|a| !there.contains(*a)) {
            return Err(HerbrandError::NotPersistent(a.clone()));
        }
        Ok(HerbrandInterpretation { here, there })
    }

    pub fn here(&self) -> &BTreeSet<GroundAtom> {
        &self.here
    }

    pub fn there(&self) -> &BTreeSet<GroundAtom> {
        &self.there
    }

    pub fn state(&self, atom: &GroundAtom) -> AtomState {
        if self.here.contains(atom) {
            AtomState::Both
        } else if self.there.contains(atom) {
            AtomState::ThereOnly
        } else {
            AtomState::Absent
        }
    }

    pub fn holds(&self, atom: &GroundAtom, w: World) -> bool {
        self.state(atom).holds_at(w)
    }

    /// One `atom: state` line per atom of `base`, in the order given.
    pub fn render<'a>(&self, base: impl IntoIterator<Item = &'a GroundAtom>) -> String {
        let mut out = String::new();
        for a in base {
            let _ = writeln!(out, "{a}: {}", self.state(a).label());
        }
        out
    }
}

/// A function name: a table over `Uⁿ`, `n > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunctionName {
    pub arity: usize,
    pub table: BTreeMap<Vec<GroundTerm>, GroundTerm>,
}

impl FunctionName {
    pub fn apply(&self, args: &[GroundTerm]) -> Option<&GroundTerm> {
        self.table.get(args)
    }
}

/// A predicate name: extensions at both worlds, `here ⊆ there`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredicateName {
    pub arity: usize,
    pub here: BTreeSet<Vec<GroundTerm>>,
    pub there: BTreeSet<Vec<GroundTerm>>,
}

impl PredicateName {
    pub fn holds(&self, args: &[GroundTerm], w: World) -> bool {
        match w {
            World::H => self.here.contains(args),
            World::T => self.there.contains(args),
        }
    }
}

/// A ground term over `Σ*`: symbols of `Σ` and function names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarTerm {
    Sym(String, Vec<StarTerm>),
    Name(FunctionName, Vec<StarTerm>),
}

/// `α̂`: applies name tables bottom-up, leaving `Σ` symbols in place. `None`
/// if a table has no entry for the hatted arguments.
pub fn hat_eval(t: &StarTerm) -> Option<GroundTerm> {
    match t {
        StarTerm::Sym(f, args) => Some(GroundTerm::app(f.clone(), args.iter().map(hat_eval).collect::<Option<_>>()?)),
        StarTerm::Name(name, args) => {
            let args: Vec<GroundTerm> = args.iter().map(hat_eval).collect::<Option<_>>()?;
            name.apply(&args).cloned()
        }
    }
}

/// All function names of arity `n` over `universe`, in odometer order of
/// their value vectors.
pub fn function_names(universe: &[GroundTerm], arity: usize) -> Vec<FunctionName> {
    let keys = tuples(universe, arity);
    tuples(universe, keys.len())
        .into_iter()
        .map(|vals| FunctionName { arity, table: keys.iter().cloned().zip(vals).collect() })
        .collect()
}

/// All predicate names of arity `n` over `universe`.
pub fn predicate_names(universe: &[GroundTerm], arity: usize) -> Vec<PredicateName> {
    let keys = tuples(universe, arity);
    tuples(&AtomState::ALL, keys.len())
        .into_iter()
        .map(|states| {
            let pick = |w| keys.iter().zip(&states).filter(|(_, s)| s.holds_at(w)).map(|(k, _)| k.clone()).collect();
            PredicateName { arity, here: pick(World::H), there: pick(World::T) }
        })
        .collect()
}

/// Ground atoms `P(ᾱ)` for the given predicates and `ᾱ` over `universe`,
/// sorted.
pub fn herbrand_base<'a>(
    sig: &Signature,
    preds: impl IntoIterator<Item = &'a str>,
    universe: &[GroundTerm],
) -> Vec<GroundAtom> {
    let mut out: Vec<GroundAtom> = preds
        .into_iter()
        .filter_map(|p| sig.predicate_arity(p).map(|n| (p, n)))
        .flat_map(|(p, n)| tuples(universe, n).into_iter().map(move |args| GroundAtom::new(p, args)))
        .collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// compiled form

#[derive(Debug, Clone)]
enum CTerm {
    Const(u32),
    Obj(usize),
    App(usize, Vec<CTerm>),
    FunVar(usize, Vec<CTerm>),
}

#[derive(Debug, Clone)]
enum CForm {
    Bot,
    Eq(CTerm, CTerm),
    Atom(usize, Vec<CTerm>),
    PredVar(usize, Vec<CTerm>),
    Bin(BinOp, Box<CForm>, Box<CForm>),
    Obj(Quantifier, Box<CForm>),
    Pred(Quantifier, usize, Box<CForm>),
    Fun(Quantifier, usize, Box<CForm>),
}

struct Compiler<'a> {
    index: &'a BTreeMap<GroundTerm, u32>,
    funs: Vec<String>,
    preds: Vec<String>,
    objs: Vec<String>,
    pvars: Vec<PredVar>,
    fvars: Vec<FunVar>,
}

impl Compiler<'_> {
    fn sym(table: &mut Vec<String>, name: &str) -> usize {
        match table.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                table.push(name.into());
                table.len() - 1
            }
        }
    }

    fn term(&mut self, t: &Term) -> Result<CTerm, HerbrandError> {
        Ok(match t {
            Term::Var(x) => CTerm::Obj(self.objs.iter().rposition(|y| y == x).ok_or(HerbrandError::NotClosed)?),
            Term::App(f, args) if args.is_empty() => {
                CTerm::Const(*self.index.get(&GroundTerm::constant(f.clone())).expect("constants are in the universe"))
            }
            Term::App(f, args) => {
                let args = args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                CTerm::App(Self::sym(&mut self.funs, f), args)
            }
            Term::FunVar(g, args) => {
                let slot = self.fvars.iter().rposition(|h| h == g).ok_or(HerbrandError::NotClosed)?;
                CTerm::FunVar(slot, args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?)
            }
        })
    }

    fn formula(&mut self, f: &Formula) -> Result<CForm, HerbrandError> {
        Ok(match f {
            Formula::Bot => CForm::Bot,
            Formula::Eq(l, r) => CForm::Eq(self.term(l)?, self.term(r)?),
            Formula::Atom(Pred::Const(p), args) => {
                let args = args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                CForm::Atom(Self::sym(&mut self.preds, p), args)
            }
            Formula::Atom(Pred::Var(pv), args) => {
                let slot = self.pvars.iter().rposition(|q| q == pv).ok_or(HerbrandError::NotClosed)?;
                CForm::PredVar(slot, args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?)
            }
            Formula::Bin(op, l, r) => CForm::Bin(*op, Box::new(self.formula(l)?), Box::new(self.formula(r)?)),
            Formula::Quant(q, b, body) => match b {
                Binder::Object(x) => {
                    self.objs.push(x.clone());
                    let body = self.formula(body);
                    self.objs.pop();
                    CForm::Obj(*q, Box::new(body?))
                }
                Binder::Pred(p) => {
                    self.pvars.push(p.clone());
                    let body = self.formula(body);
                    self.pvars.pop();
                    CForm::Pred(*q, p.arity, Box::new(body?))
                }
                Binder::Fun(g) => {
                    self.fvars.push(g.clone());
                    let body = self.formula(body);
                    self.fvars.pop();
                    CForm::Fun(*q, g.arity, Box::new(body?))
                }
                Binder::Restricted(_) => unreachable!("restrictors are eliminated before compiling"),
            },
        })
    }
}

fn pow(base: u128, exp: usize) -> u128 {
    let mut r: u128 = 1;
    for _ in 0..exp {
        r = r.saturating_mul(base);
    }
    r
}

/// Second-order name assignments visited by one evaluation, counting
/// multiplicity under object quantifiers; 1 for first-order formulas.
fn name_assignments(f: &CForm, n: usize) -> u128 {
    match f {
        CForm::Bot | CForm::Eq(..) | CForm::Atom(..) | CForm::PredVar(..) => 1,
        CForm::Bin(_, l, r) => (name_assignments(l, n).saturating_add(name_assignments(r, n))).saturating_sub(1).max(1),
        CForm::Obj(_, body) => 1u128.saturating_add((n as u128).saturating_mul(name_assignments(body, n) - 1)),
        CForm::Pred(_, k, body) => pow(3, pow(n as u128, *k).min(usize::MAX as u128) as usize).saturating_mul(name_assignments(body, n)),
        CForm::Fun(_, k, body) => {
            pow(n as u128, pow(n as u128, *k).min(usize::MAX as u128) as usize).saturating_mul(name_assignments(body, n))
        }
    }
}

/// A compiled closed formula together with its universe and base.
struct Model {
    /// `|U|`; arena entries below this index are the universe.
    n: usize,
    arena: Vec<GroundTerm>,
    index: BTreeMap<GroundTerm, u32>,
    memo: BTreeMap<(usize, Vec<u32>), u32>,
    funs: Vec<String>,
    /// per compiled predicate: arity and offset into `states`
    preds: Vec<(usize, usize)>,
    base: Vec<GroundAtom>,
    /// per base atom, in the order of `base` sorted per predicate block
    states: Vec<AtomState>,
    form: CForm,
    objs: Vec<u32>,
    pvars: Vec<Vec<AtomState>>,
    fvars: Vec<Vec<u32>>,
}

impl Model {
    fn build(f: &Formula, sig: &Signature, mode: Mode) -> Result<Model, HerbrandError> {
        f.well_formed(sig).map_err(|e| HerbrandError::IllFormed(format!("{e}")))?;
        let f = f.eliminate_restrictors();
        if !f.is_closed() {
            return Err(HerbrandError::NotClosed);
        }
        let universe = instance::universe(sig, mode)?;
        let index: BTreeMap<GroundTerm, u32> =
            universe.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
        let mut c = Compiler {
            index: &index,
            funs: Vec::new(),
            preds: Vec::new(),
            objs: Vec::new(),
            pvars: Vec::new(),
            fvars: Vec::new(),
        };
        let form = c.formula(&f)?;
        let Compiler { funs, preds: compiled, .. } = c;
        let n = universe.len();
        let mut pred_names = compiled.clone();
        pred_names.sort();
        // predicate blocks in name order, so `base` is sorted
        let mut preds = vec![(0, 0); compiled.len()];
        let mut base = Vec::new();
        for p in &pred_names {
            let k = sig.predicate_arity(p).expect("well-formed");
            let id = compiled.iter().position(|q| q == p).expect("compiled");
            preds[id] = (k, base.len());
            base.extend(tuples(&universe, k).into_iter().map(|args| GroundAtom::new(p.clone(), args)));
        }
        let states = vec![AtomState::Absent; base.len()];
        Ok(Model {
            n,
            arena: universe,
            index,
            memo: BTreeMap::new(),
            funs,
            preds,
            base,
            states,
            form,
            objs: Vec::new(),
            pvars: Vec::new(),
            fvars: Vec::new(),
        })
    }

    fn evaluation_count(&self) -> u128 {
        pow(3, self.base.len()).saturating_mul(name_assignments(&self.form, self.n))
    }

    fn load(&mut self, j: &HerbrandInterpretation) {
        for (s, a) in self.states.iter_mut().zip(&self.base) {
            *s = j.state(a);
        }
    }

    fn current(&self) -> HerbrandInterpretation {
        let pick = |w| self.base.iter().zip(&self.states).filter(|(_, s)| s.holds_at(w)).map(|(a, _)| a.clone()).collect();
        HerbrandInterpretation { here: pick(World::H), there: pick(World::T) }
    }

    fn intern(&mut self, t: GroundTerm) -> u32 {
        if let Some(&i) = self.index.get(&t) {
            return i;
        }
        let i = self.arena.len() as u32;
        self.arena.push(t.clone());
        self.index.insert(t, i);
        i
    }

    /// Mixed-radix position of `args` in `Uⁿ`, or `None` if some argument
    /// lies outside the universe.
    fn offset(&self, args: &[u32]) -> Option<usize> {
        let mut k = 0usize;
        for &a in args {
            if a as usize >= self.n {
                return None;
            }
            k = k * self.n + a as usize;
        }
        Some(k)
    }

    fn term(&mut self, t: &CTerm) -> Result<u32, HerbrandError> {
        Ok(match t {
            CTerm::Const(i) => *i,
            CTerm::Obj(slot) => self.objs[*slot],
            CTerm::App(f, args) => {
                let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                let key = (*f, args);
                if let Some(&i) = self.memo.get(&key) {
                    return Ok(i);
                }
                let t = GroundTerm::app(self.funs[*f].clone(), key.1.iter().map(|&a| self.arena[a as usize].clone()).collect());
                let i = self.intern(t);
                self.memo.insert(key, i);
                i
            }
            CTerm::FunVar(slot, args) => {
                let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                let k = self.offset(&args).ok_or_else(|| {
                    let shown: Vec<String> = args.iter().map(|&a| format!("{}", self.arena[a as usize])).collect();
                    HerbrandError::OutsideUniverse(shown.join(", "))
                })?;
                self.fvars[*slot][k]
            }
        })
    }

    fn eval(&mut self, w: World, f: &CForm) -> Result<bool, HerbrandError> {
        Ok(match f {
            CForm::Bot => false,
            CForm::Eq(l, r) => self.term(l)? == self.term(r)?,
            CForm::Atom(p, args) => {
                let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                let (_, base) = self.preds[*p];
                match self.offset(&args) {
                    Some(k) => self.states[base + k].holds_at(w),
                    None => false,
                }
            }
            CForm::PredVar(slot, args) => {
                let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                match self.offset(&args) {
                    Some(k) => self.pvars[*slot][k].holds_at(w),
                    None => false,
                }
            }
            CForm::Bin(BinOp::And, l, r) => self.eval(w, l)? && self.eval(w, r)?,
            CForm::Bin(BinOp::Or, l, r) => self.eval(w, l)? || self.eval(w, r)?,
            CForm::Bin(BinOp::Imp, l, r) => {
                for &v in w.successors() {
                    if self.eval(v, l)? && !self.eval(v, r)? {
                        return Ok(false);
                    }
                }
                true
            }
            CForm::Obj(q, body) => {
                let want = *q == Quantifier::Exists;
                for a in 0..self.n as u32 {
                    self.objs.push(a);
                    let r = self.eval(w, body);
                    self.objs.pop();
                    if r? == want {
                        return Ok(want);
                    }
                }
                !want
            }
            CForm::Pred(q, k, body) => {
                let want = *q == Quantifier::Exists;
                let len = pow(self.n as u128, *k) as usize;
                self.pvars.push(vec![AtomState::Absent; len]);
                let r = self.each_name(w, body, want, len, 3, |m, i, d| m.pvars.last_mut().expect("pushed")[i] = AtomState::ALL[d]);
                self.pvars.pop();
                r?
            }
            CForm::Fun(q, k, body) => {
                let want = *q == Quantifier::Exists;
                let len = pow(self.n as u128, *k) as usize;
                self.fvars.push(vec![0; len]);
                let n = self.n;
                let r = self.each_name(w, body, want, len, n, |m, i, d| m.fvars.last_mut().expect("pushed")[i] = d as u32);
                self.fvars.pop();
                r?
            }
        })
    }

    /// Runs through every table of the innermost name slot (odometer over
    /// `radix` values per entry) until `body` evaluates to `want`.
    fn each_name(
        &mut self,
        w: World,
        body: &CForm,
        want: bool,
        len: usize,
        radix: usize,
        set: impl Fn(&mut Model, usize, usize),
    ) -> Result<bool, HerbrandError> {
        let mut digits = vec![0usize; len];
        for (i, &d) in digits.iter().enumerate() {
            set(self, i, d);
        }
        loop {
            if self.eval(w, body)? == want {
                return Ok(want);
            }
            let mut i = len;
            loop {
                if i == 0 {
                    return Ok(!want);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < radix {
                    set(self, i, digits[i]);
                    break;
                }
                digits[i] = 0;
                set(self, i, 0);
            }
        }
    }

    fn holds(&mut self, w: World) -> Result<bool, HerbrandError> {
        let form = core::mem::replace(&mut self.form, CForm::Bot);
        let r = self.eval(w, &form);
        self.form = form;
        r
    }
}

/// Evaluations [`hht_valid_bruteforce`] would perform: interpretations of
/// the formula's Herbrand base times second-order name assignments.
pub fn evaluation_count(f: &Formula, sig: &Signature, mode: Mode) -> Result<u128, HerbrandError> {
    Ok(Model::build(f, sig, mode)?.evaluation_count())
}

/// `J, w ⊨ F` for a closed formula `F`, possibly second-order. Restrictors
/// are eliminated first. In `Bounded` mode quantifiers range over the
/// truncated universe and atoms with an argument outside it are false.
pub fn h_satisfies(
    j: &HerbrandInterpretation,
    sig: &Signature,
    mode: Mode,
    w: World,
    f: &Formula,
) -> Result<bool, HerbrandError> {
    let mut m = Model::build(f, sig, mode)?;
    m.load(j);
    m.holds(w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HerbrandCountermodel {
    /// The Herbrand base of the checked formula, sorted.
    pub base: Vec<GroundAtom>,
    pub interpretation: HerbrandInterpretation,
}

impl HerbrandCountermodel {
    pub fn render(&self) -> String {
        self.interpretation.render(&self.base)
    }
}

impl fmt::Display for HerbrandCountermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HerbrandValidity {
    Valid,
    Countermodel(HerbrandCountermodel),
}

impl HerbrandValidity {
    pub fn is_valid(&self) -> bool {
        matches!(self, HerbrandValidity::Valid)
    }
}

/// Checks `J, h ⊨ F` for every Herbrand HT-interpretation `J` over the
/// predicates occurring in `F`, in canonical order (atoms sorted, first
/// atom most significant, absent < there-only < both). Fails fast when
/// [`evaluation_count`] exceeds `budget`.
pub fn hht_valid_bruteforce(
    f: &Formula,
    sig: &Signature,
    mode: Mode,
    budget: u128,
) -> Result<HerbrandValidity, HerbrandError> {
    let mut m = Model::build(f, sig, mode)?;
    let required = m.evaluation_count();
    if required > budget {
        return Err(HerbrandError::BudgetExceeded { required, budget });
    }
    let len = m.states.len();
    loop {
        if !m.holds(World::H)? {
            let interpretation = m.current();
            return Ok(HerbrandValidity::Countermodel(HerbrandCountermodel { base: m.base, interpretation }));
        }
        let mut i = len;
        loop {
            if i == 0 {
                return Ok(HerbrandValidity::Valid);
            }
            i -= 1;
            let next = m.states[i] as usize + 1;
            if next < 3 {
                m.states[i] = AtomState::ALL[next];
                break;
            }
            m.states[i] = AtomState::Absent;
        }
    }
}

/// `J^w = { A : I, w ⊨ ψA }` over the whole Herbrand base of `ψ`'s
/// signature (exact mode).
pub fn lift(psi: &Substitution, i: &HtInterpretation) -> Result<HerbrandInterpretation, HerbrandError> {
    let sig = psi.signature();
    let universe = instance::universe(sig, Mode::Exact)?;
    let base = herbrand_base(sig, sig.predicates().map(|(p, _)| p), &universe);
    let mut here = BTreeSet::new();
    let mut there = BTreeSet::new();
    for a in base {
        let f = psi.lookup(&a)?;
        if satisfies(i, World::H, f) {
            here.insert(a.clone());
        }
        if satisfies(i, World::T, f) {
            there.insert(a);
        }
    }
    HerbrandInterpretation::new(here, there)
}

/// Whether `lift(ψ, I), w ⊨ F` and `I, w ⊨ ψF` agree at both worlds.
pub fn lifting_check(psi: &Substitution, i: &HtInterpretation, f: &Formula) -> Result<bool, HerbrandError> {
    let instance = instance::instantiate(psi, f, Mode::Exact)?;
    let j = lift(psi, i)?;
    let mut m = Model::build(f, psi.signature(), Mode::Exact)?;
    m.load(&j);
    for w in World::ALL {
        if m.holds(w)? != satisfies(i, w, &instance) {
            return Ok(false);
        }
    }
    Ok(true)
}
