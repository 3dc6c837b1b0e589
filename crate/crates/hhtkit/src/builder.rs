//! Untrusted construction of Hilbert proofs.
//!
//! Derivations may open hypotheses with [`Builder::assume`]; closing one
//! with [`Builder::discharge`] rewrites the steps made under it by the
//! deduction theorem, so only axioms, modus ponens and generalization reach
//! the output. [`Builder::finish`] hands the result to the kernel, which is
//! the only thing trusted.

use hhtkit_core::kernel::{check_proof, instantiate_schema, Binding, Justification, MetaValue, Proof, ProofLine, TheoryLevel};
use hhtkit_core::{Binder, Formula, Quantifier, Signature, Term, Var};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("proof construction failed: {0}")]
pub struct BuildError(pub String);

type Res<T> = Result<T, BuildError>;

fn fail<T>(msg: impl Into<String>) -> Res<T> {
    Err(BuildError(msg.into()))
}

/// Handle to a derived formula. Handles made under a hypothesis are
/// invalidated when it is discharged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Id(usize);

#[derive(Debug, Clone)]
enum Rule {
    Hyp,
    Axiom(String, Binding),
    Mp(Id, Id),
    /// Generalization; `true` for the `G → F ⊢ G → ∀vF` form.
    Gen(Id, Var, bool),
    GenEx(Id, Var),
}

#[derive(Debug, Clone)]
struct Step {
    formula: Formula,
    rule: Rule,
}

struct Frame {
    hyp: Formula,
    start: usize,
}

pub struct Builder {
    sig: Signature,
    level: TheoryLevel,
    steps: Vec<Step>,
    frames: Vec<Frame>,
}

fn binder(v: &Var) -> Binder {
    match v {
        Var::Obj(x) => Binder::Object(x.clone()),
        Var::Pred(p) => Binder::Pred(p.clone()),
        Var::Fun(g) => Binder::Fun(g.clone()),
    }
}

pub fn obj(x: &str) -> Var {
    Var::Obj(x.into())
}

impl Builder {
    pub fn new(sig: Signature, level: TheoryLevel) -> Self {
        Builder { sig, level, steps: Vec::new(), frames: Vec::new() }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn formula(&self, id: Id) -> &Formula {
        &self.steps[id.0].formula
    }

    fn push(&mut self, formula: Formula, rule: Rule) -> Id {
        self.steps.push(Step { formula, rule });
        Id(self.steps.len() - 1)
    }

    fn check_open(&self, v: &Var) -> Res<()> {
        match self.frames.iter().find(|fr| fr.hyp.free_variables().contains(v)) {
            Some(fr) => fail(format!("`{v}` is free in the open hypothesis `{}`", fr.hyp)),
            None => Ok(()),
        }
    }

    // ---- primitive steps ----

    pub fn axiom(&mut self, id: &str, binding: &[(&str, MetaValue)]) -> Res<Id> {
        let binding: Binding = binding.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        let f = instantiate_schema(id, &binding, &self.sig).map_err(|e| BuildError(format!("{id}: {}", e.reason)))?;
        Ok(self.push(f.eliminate_restrictors(), Rule::Axiom(id.into(), binding)))
    }

    /// From `A` and `A → C`, derive `C`.
    pub fn mp(&mut self, a: Id, ab: Id) -> Res<Id> {
        let c = match self.formula(ab).as_imp() {
            Some((l, r)) if l.alpha_eq(self.formula(a)) => r.clone(),
            _ => return fail(format!("mp: `{}` does not start with `{}`", self.formula(ab), self.formula(a))),
        };
        Ok(self.push(c, Rule::Mp(a, ab)))
    }

    /// `F ⊢ ∀vF`.
    pub fn gen(&mut self, i: Id, v: Var) -> Res<Id> {
        self.check_open(&v)?;
        let f = Formula::quant(Quantifier::Forall, binder(&v), self.formula(i).clone());
        Ok(self.push(f, Rule::Gen(i, v, false)))
    }

    /// `G → F ⊢ G → ∀vF`, `v` not free in `G`.
    pub fn gen_under(&mut self, i: Id, v: Var) -> Res<Id> {
        self.check_open(&v)?;
        let Some((g, f)) = self.formula(i).as_imp() else {
            return fail("gen_under: premise is not an implication");
        };
        if g.free_variables().contains(&v) {
            return fail(format!("gen_under: `{v}` is free in `{g}`"));
        }
        let out = Formula::imp(g.clone(), Formula::quant(Quantifier::Forall, binder(&v), f.clone()));
        Ok(self.push(out, Rule::Gen(i, v, true)))
    }

    /// `F → G ⊢ ∃vF → G`, `v` not free in `G`.
    pub fn gen_ex(&mut self, i: Id, v: Var) -> Res<Id> {
        self.check_open(&v)?;
        let Some((f, g)) = self.formula(i).as_imp() else {
            return fail("gen_ex: premise is not an implication");
        };
        if g.free_variables().contains(&v) {
            return fail(format!("gen_ex: `{v}` is free in `{g}`"));
        }
        let out = Formula::imp(Formula::quant(Quantifier::Exists, binder(&v), f.clone()), g.clone());
        Ok(self.push(out, Rule::GenEx(i, v)))
    }

    // ---- hypotheses ----

    pub fn assume(&mut self, hyp: Formula) -> Id {
        let hyp = hyp.eliminate_restrictors();
        self.frames.push(Frame { hyp: hyp.clone(), start: self.steps.len() });
        self.push(hyp, Rule::Hyp)
    }

    /// Closes the innermost hypothesis `H`; returns a handle to `H → C`
    /// where `C` is the last formula derived under it.
    pub fn discharge(&mut self) -> Res<Id> {
        let Some(Frame { hyp, start }) = self.frames.pop() else {
            return fail("discharge without an open hypothesis");
        };
        let inner: Vec<Step> = self.steps.drain(start..).collect();
        // for each inner step: handle of its rewrite and whether that
        // rewrite is `H → C` (dependent) or plain `C`
        let mut map: Vec<(Id, bool)> = Vec::with_capacity(inner.len());
        for step in &inner {
            let res = |id: Id, map: &[(Id, bool)]| if id.0 < start { (id, false) } else { map[id.0 - start] };
            let out = match &step.rule {
                Rule::Hyp => (self.identity(&hyp)?, true),
                Rule::Axiom(id, b) => {
                    let f = step.formula.clone();
                    (self.push(f, Rule::Axiom(id.clone(), b.clone())), false)
                }
                Rule::Mp(a, ab) => {
                    let (a, da) = res(*a, &map);
                    let (ab, dab) = res(*ab, &map);
                    if !da && !dab {
                        (self.mp(a, ab)?, false)
                    } else {
                        let a = if da { a } else { self.weaken(a, &hyp)? };
                        let ab = if dab { ab } else { self.weaken(ab, &hyp)? };
                        (self.mp_under(a, ab)?, true)
                    }
                }
                Rule::Gen(i, v, under) => match (res(*i, &map), under) {
                    ((i, false), false) => (self.gen(i, v.clone())?, false),
                    ((i, false), true) => (self.gen_under(i, v.clone())?, false),
                    ((i, true), false) => (self.gen_under(i, v.clone())?, true),
                    ((i, true), true) => {
                        let u = self.uncurry(i)?;
                        let g = self.gen_under(u, v.clone())?;
                        (self.curry(g)?, true)
                    }
                },
                Rule::GenEx(i, v) => match res(*i, &map) {
                    (i, false) => (self.gen_ex(i, v.clone())?, false),
                    (i, true) => {
                        let p = self.permute(i)?;
                        let g = self.gen_ex(p, v.clone())?;
                        (self.permute(g)?, true)
                    }
                },
            };
            map.push(out);
        }
        let (last, dep) = *map.last().expect("the hypothesis step");
        if dep {
            Ok(last)
        } else {
            self.weaken(last, &hyp)
        }
    }

    // ---- derived rules ----

    /// `A → A`.
    pub fn identity(&mut self, a: &Formula) -> Res<Id> {
        let aa = Formula::imp(a.clone(), a.clone());
        let f = |x: &Formula| MetaValue::Formula(x.clone());
        let k1 = self.axiom("k", &[("F", f(a)), ("G", f(&aa))])?;
        let s = self.axiom("s", &[("F", f(a)), ("G", f(&aa)), ("H", f(a))])?;
        let m = self.mp(k1, s)?;
        let k2 = self.axiom("k", &[("F", f(a)), ("G", f(a))])?;
        self.mp(k2, m)
    }

    /// From `C`, derive `H → C`.
    pub fn weaken(&mut self, c: Id, h: &Formula) -> Res<Id> {
        let cf = self.formula(c).clone();
        let k = self.axiom("k", &[("F", MetaValue::Formula(cf)), ("G", MetaValue::Formula(h.clone()))])?;
        self.mp(c, k)
    }

    /// From `H → A` and `H → (A → C)`, derive `H → C`.
    pub fn mp_under(&mut self, ha: Id, hac: Id) -> Res<Id> {
        let (h, a, c) = match self.formula(hac).as_imp() {
            Some((h, r)) => match r.as_imp() {
                Some((a, c)) => (h.clone(), a.clone(), c.clone()),
                None => return fail("mp_under: expected H -> (A -> C)"),
            },
            None => return fail("mp_under: expected H -> (A -> C)"),
        };
        let f = MetaValue::Formula;
        let s = self.axiom("s", &[("F", f(h)), ("G", f(a)), ("H", f(c))])?;
        let m = self.mp(hac, s)?;
        self.mp(ha, m)
    }

    fn split_imp(&self, i: Id, what: &str) -> Res<(Formula, Formula)> {
        match self.formula(i).as_imp() {
            Some((l, r)) => Ok((l.clone(), r.clone())),
            None => fail(format!("{what}: `{}` is not an implication", self.formula(i))),
        }
    }

    /// From `H → (F → G)`, derive `F → (H → G)`.
    pub fn permute(&mut self, i: Id) -> Res<Id> {
        let (h, fg) = self.split_imp(i, "permute")?;
        let (f, _) = match fg.as_imp() {
            Some((f, g)) => (f.clone(), g.clone()),
            None => return fail("permute: expected H -> (F -> G)"),
        };
        let fh = self.assume(f);
        let hh = self.assume(h);
        let fg = self.mp(hh, i)?;
        self.mp(fh, fg)?;
        self.discharge()?;
        self.discharge()
    }

    /// From `K → (G → F)`, derive `K & G → F`.
    pub fn uncurry(&mut self, i: Id) -> Res<Id> {
        let (k, gf) = self.split_imp(i, "uncurry")?;
        let (g, _) = match gf.as_imp() {
            Some((g, f)) => (g.clone(), f.clone()),
            None => return fail("uncurry: expected K -> (G -> F)"),
        };
        let kg = self.assume(Formula::and(k, g));
        let kk = self.and_l(kg)?;
        let gg = self.and_r(kg)?;
        let m = self.mp(kk, i)?;
        self.mp(gg, m)?;
        self.discharge()
    }

    /// From `K & G → F`, derive `K → (G → F)`.
    pub fn curry(&mut self, i: Id) -> Res<Id> {
        let (kg, _) = self.split_imp(i, "curry")?;
        let Formula::Bin(hhtkit_core::BinOp::And, k, g) = kg else {
            return fail("curry: antecedent is not a conjunction");
        };
        let kh = self.assume(*k);
        let gh = self.assume(*g);
        let both = self.and_i(kh, gh)?;
        self.mp(both, i)?;
        self.discharge()?;
        self.discharge()
    }

    pub fn and_i(&mut self, a: Id, b: Id) -> Res<Id> {
        let (fa, fb) = (self.formula(a).clone(), self.formula(b).clone());
        let ax = self.axiom("and-i", &[("F", MetaValue::Formula(fa)), ("G", MetaValue::Formula(fb))])?;
        let m = self.mp(a, ax)?;
        self.mp(b, m)
    }

    fn conjuncts(&self, i: Id) -> Res<(Formula, Formula)> {
        match self.formula(i) {
            Formula::Bin(hhtkit_core::BinOp::And, l, r) => Ok(((**l).clone(), (**r).clone())),
            f => fail(format!("`{f}` is not a conjunction")),
        }
    }

    pub fn and_l(&mut self, i: Id) -> Res<Id> {
        let (l, r) = self.conjuncts(i)?;
        let ax = self.axiom("and-el", &[("F", MetaValue::Formula(l)), ("G", MetaValue::Formula(r))])?;
        self.mp(i, ax)
    }

    pub fn and_r(&mut self, i: Id) -> Res<Id> {
        let (l, r) = self.conjuncts(i)?;
        let ax = self.axiom("and-er", &[("F", MetaValue::Formula(l)), ("G", MetaValue::Formula(r))])?;
        self.mp(i, ax)
    }

    /// From `F`, derive `F | G`.
    pub fn or_il(&mut self, i: Id, g: Formula) -> Res<Id> {
        let f = self.formula(i).clone();
        let ax = self.axiom("or-il", &[("F", MetaValue::Formula(f)), ("G", MetaValue::Formula(g))])?;
        self.mp(i, ax)
    }

    /// From `G`, derive `F | G`.
    pub fn or_ir(&mut self, f: Formula, i: Id) -> Res<Id> {
        let g = self.formula(i).clone();
        let ax = self.axiom("or-ir", &[("F", MetaValue::Formula(f)), ("G", MetaValue::Formula(g))])?;
        self.mp(i, ax)
    }

    /// From `F | G`, `F → H` and `G → H`, derive `H`.
    pub fn or_e(&mut self, fg: Id, fh: Id, gh: Id) -> Res<Id> {
        let (f, h) = self.split_imp(fh, "or_e")?;
        let (g, _) = self.split_imp(gh, "or_e")?;
        let m = MetaValue::Formula;
        let ax = self.axiom("or-e", &[("F", m(f)), ("G", m(g)), ("H", m(h))])?;
        let a = self.mp(fh, ax)?;
        let b = self.mp(gh, a)?;
        self.mp(fg, b)
    }

    /// From `∀xF`, derive `F[t/x]`.
    pub fn all_e(&mut self, i: Id, t: Term) -> Res<Id> {
        let (x, f) = match self.formula(i) {
            Formula::Quant(Quantifier::Forall, Binder::Object(x), f) => (x.clone(), (**f).clone()),
            f => return fail(format!("all_e: `{f}` is not a plain universal")),
        };
        let ax = self.axiom("all-e", &[("x", MetaValue::Var(x)), ("F", MetaValue::Formula(f)), ("t", MetaValue::Term(t))])?;
        self.mp(i, ax)
    }

    /// From `F[t/x]`, derive `∃xF`.
    pub fn ex_i(&mut self, i: Id, x: &str, f: Formula, t: Term) -> Res<Id> {
        let ax = self.axiom("ex-i", &[("x", MetaValue::Var(x.into())), ("F", MetaValue::Formula(f)), ("t", MetaValue::Term(t))])?;
        self.mp(i, ax)
    }

    /// From `∃vF` and `F → C` (`v` not free in `C`), derive `C`.
    pub fn ex_e(&mut self, e: Id, fc: Id) -> Res<Id> {
        let v = match self.formula(e) {
            Formula::Quant(Quantifier::Exists, b, _) => match b.bound_vars().as_slice() {
                [v] => v.clone(),
                _ => return fail("ex_e: generalized variable"),
            },
            f => return fail(format!("ex_e: `{f}` is not existential")),
        };
        let g = self.gen_ex(fc, v)?;
        self.mp(e, g)
    }

    /// Runs the kernel on the steps that the last one depends on.
    pub fn finish(self) -> Res<Proof> {
        self.finish_as(None)
    }

    /// As [`Builder::finish`], writing the conclusion as `conclusion`, which
    /// must agree with the last step after restrictor elimination.
    pub fn finish_with(self, conclusion: Formula) -> Res<Proof> {
        self.finish_as(Some(conclusion))
    }

    fn finish_as(self, conclusion: Option<Formula>) -> Res<Proof> {
        if !self.frames.is_empty() {
            return fail("hypotheses left open");
        }
        let Some(last) = self.steps.len().checked_sub(1) else {
            return fail("no steps");
        };
        let mut used = vec![false; self.steps.len()];
        used[last] = true;
        for k in (0..=last).rev() {
            if !used[k] {
                continue;
            }
            match &self.steps[k].rule {
                Rule::Mp(a, b) => {
                    used[a.0] = true;
                    used[b.0] = true;
                }
                Rule::Gen(i, ..) | Rule::GenEx(i, _) => used[i.0] = true,
                Rule::Axiom(..) => {}
                Rule::Hyp => unreachable!("hypotheses are discharged"),
            }
        }
        let mut number = vec![0; self.steps.len()];
        let mut lines: Vec<ProofLine> = Vec::new();
        for (k, step) in self.steps.iter().enumerate().filter(|(k, _)| used[*k]) {
            let justification = match &step.rule {
                Rule::Axiom(id, b) => Justification::Axiom { schema: id.clone(), binding: b.clone() },
                Rule::Mp(a, b) => Justification::Mp(number[a.0], number[b.0]),
                Rule::Gen(i, Var::Obj(x), _) => Justification::GenAll(number[i.0], x.clone()),
                Rule::Gen(i, v, _) => Justification::SoGen(number[i.0], v.clone()),
                Rule::GenEx(i, Var::Obj(x)) => Justification::GenEx(number[i.0], x.clone()),
                Rule::GenEx(i, v) => Justification::SoGenEx(number[i.0], v.clone()),
                Rule::Hyp => unreachable!(),
            };
            // a line already present is reused instead of re-derived
            if let Some(prev) = lines.iter().find(|l| l.formula == step.formula) {
                number[k] = prev.number;
                continue;
            }
            number[k] = lines.len() + 1;
            lines.push(ProofLine { number: number[k], formula: step.formula.clone(), justification });
        }
        if let Some(c) = conclusion {
            let l = lines.last_mut().expect("non-empty");
            if !c.eliminate_restrictors().alpha_eq(&l.formula) {
                return fail(format!("conclusion `{c}` does not match `{}`", l.formula));
            }
            l.formula = c;
        }
        let proof = Proof { signature: self.sig, level: self.level, lines };
        check_proof(&proof).map_err(|e| BuildError(format!("kernel rejected the result: {e}")))?;
        Ok(proof)
    }
}
