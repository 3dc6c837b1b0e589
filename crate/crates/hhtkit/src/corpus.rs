//! The shipped example proofs and substitution families.
//!
//! Each proof is built with [`Builder`] and checked by the kernel before it
//! is returned. Substitutions are parameterized by the sizes of the index
//! sets `A` (constants `a1..an`) and `B`.

use std::fs;
use std::io;
use std::path::Path;

use hhtkit_core::kernel::{dca, MetaValue, Proof, SoTarget, TheoryLevel};
use hhtkit_core::{Binder, Formula, GroundAtom, GroundTerm, Mode, Prop, Quantifier, Signature, Substitution, Term, Var};

use crate::builder::{obj, BuildError, Builder};
use crate::files::{write_fof, write_proof, write_subst, FofFile};
use crate::syntax::{parse_formula, parse_signature};

type Res<T> = Result<T, BuildError>;

/// What the pipeline should report for a case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Valid,
    /// Bounded run; the truncated instance is still valid.
    BoundedValid,
    /// Bounded run; truncation breaks validity.
    BoundedCountermodel,
}

pub struct Case {
    pub name: &'static str,
    pub summary: &'static str,
    pub proof: fn() -> Res<Proof>,
    /// The substitution for index sets of sizes `|A|`, `|B|`, when those
    /// sizes fit the case.
    pub substitution: fn(usize, usize) -> Option<Substitution>,
    pub mode: Mode,
    pub expect: Expect,
    /// Sizes of the shipped `.subst` file.
    pub shipped: (usize, usize),
    /// Whether the case uses `B`.
    pub uses_b: bool,
}

impl Case {
    pub fn subst_file_name(&self) -> String {
        let (a, b) = self.shipped;
        if a == 0 {
            format!("{}.subst", self.name)
        } else if self.uses_b {
            format!("{}_A{a}_B{b}.subst", self.name)
        } else {
            format!("{}_A{a}.subst", self.name)
        }
    }
}

pub fn cases() -> Vec<Case> {
    let exact = |name, summary, proof, substitution, uses_b, shipped| Case {
        name,
        summary,
        proof,
        substitution,
        mode: Mode::Exact,
        expect: Expect::Valid,
        shipped,
        uses_b,
    };
    vec![
        exact("ex1_dm_forall", "forall x not P(x) <-> not exists x P(x)", ex1_dm_forall, over_a, false, (4, 0)),
        exact("ex1_dm_exists", "exists x not P(x) <-> not forall x P(x), via sqht", ex1_dm_exists, over_a, false, (4, 0)),
        exact("subsum4", "exists x P(x) & Q <-> exists x (P(x) & Q)", subsum4, over_a_q, false, (3, 0)),
        exact("ex2_dual", "forall x P(x) | Q <-> forall x (P(x) | Q), via sqht", ex2_dual, over_a_q, false, (3, 0)),
        exact("ex3", "(exists x P(x) -> Q) <-> forall x (P(x) -> Q)", ex3, over_a_q, false, (3, 0)),
        exact("ex4_sqht", "exists x (P(x) -> forall x P(x))", ex4_sqht, over_a, false, (3, 0)),
        exact("ex5_r0", "forall x P(x) -> forall (x:R) P(x)", ex5_r0, ex5_subst, true, (4, 2)),
        exact("ex6_r1", "exists (x:R1) P(x) & exists (y:R2) Q(y) <-> exists (x:R1, y:R2) (P(x) & Q(y))", ex6_r1, ex6_subst, true, (3, 2)),
        exact("bad_rewritten", "the two-conjunction rewriting of (not not F1 | not F1) & (F2 -> F2) & ...", bad_rewritten, bad_subst, true, (2, 2)),
        Case {
            name: "ex5_alt",
            summary: "forall x P(x) -> forall x P(f(x)), the restrictor-free encoding",
            proof: ex5_alt,
            substitution: ex5_alt_subst,
            mode: Mode::Bounded(2),
            expect: Expect::BoundedValid,
            shipped: (4, 2),
            uses_b: true,
        },
        Case {
            name: "ex7_induction",
            summary: "P(a) & forall x (P(x) -> P(s(x))) <-> forall x P(x) at HHT2+DCA",
            proof: ex7_induction,
            substitution: ex7_subst,
            mode: Mode::Bounded(3),
            expect: Expect::BoundedCountermodel,
            shipped: (0, 0),
            uses_b: false,
        },
    ]
}

fn sig(src: &str) -> Signature {
    parse_signature(src).expect("corpus signature")
}

fn fo(s: &str, sig: &Signature) -> Formula {
    parse_formula(s, sig).unwrap_or_else(|e| panic!("corpus formula `{s}`: {e}"))
}

fn x() -> Term {
    Term::var("x")
}

fn fm(f: Formula) -> MetaValue {
    MetaValue::Formula(f)
}

/// `F := P(x)` for the `sqht` axiom.
fn sqht_p(b: &Builder) -> MetaValue {
    fm(fo("P(x)", b.signature()))
}

pub fn ex1_dm_forall() -> Res<Proof> {
    let s = sig("const a1. pred P/1.");
    let f = |t: &str| fo(t, &s);
    let mut b = Builder::new(s.clone(), TheoryLevel::Hht);
    let all = b.assume(f("forall x not P(x)"));
    let ex = b.assume(f("exists x P(x)"));
    let px = b.assume(f("P(x)"));
    let npx = b.all_e(all, x())?;
    b.mp(px, npx)?;
    let absurd = b.discharge()?;
    b.ex_e(ex, absurd)?;
    b.discharge()?;
    let fwd = b.discharge()?;

    let n = b.assume(f("not exists x P(x)"));
    let px = b.assume(f("P(x)"));
    let e = b.ex_i(px, "x", f("P(x)"), x())?;
    b.mp(e, n)?;
    let np = b.discharge()?;
    b.gen(np, obj("x"))?;
    let bwd = b.discharge()?;
    b.and_i(fwd, bwd)?;
    b.finish_with(f("forall x not P(x) <-> not exists x P(x)"))
}

pub fn ex1_dm_exists() -> Res<Proof> {
    let s = sig("const a1. pred P/1.");
    let f = |t: &str| fo(t, &s);
    let mut b = Builder::new(s.clone(), TheoryLevel::Hht);
    let ex = b.assume(f("exists x not P(x)"));
    let all = b.assume(f("forall x P(x)"));
    let npx = b.assume(f("not P(x)"));
    let px = b.all_e(all, x())?;
    b.mp(px, npx)?;
    let absurd = b.discharge()?;
    b.ex_e(ex, absurd)?;
    b.discharge()?;
    let fwd = b.discharge()?;

    // the converse needs exists x (P(x) -> forall x P(x))
    let n = b.assume(f("not forall x P(x)"));
    let step = b.assume(f("P(x) -> forall x P(x)"));
    let px = b.assume(f("P(x)"));
    let all = b.mp(px, step)?;
    b.mp(all, n)?;
    let npx = b.discharge()?;
    b.ex_i(npx, "x", f("not P(x)"), x())?;
    let out = b.discharge()?;
    let p = sqht_p(&b);
    let sq = b.axiom("sqht", &[("x", MetaValue::Var("x".into())), ("F", p)])?;
    b.ex_e(sq, out)?;
    let bwd = b.discharge()?;
    b.and_i(fwd, bwd)?;
    b.finish_with(f("exists x not P(x) <-> not forall x P(x)"))
}

pub fn subsum4() -> Res<Proof> {
    let s = sig("const a1. pred P/1, Q/0.");
    let f = |t: &str| fo(t, &s);
    let mut b = Builder::new(s.clone(), TheoryLevel::Hht);
    let a = b.assume(f("exists x P(x) & Q"));
    let q = b.and_r(a)?;
    let px = b.assume(f("P(x)"));
    let pq = b.and_i(px, q)?;
    b.ex_i(pq, "x", f("P(x) & Q"), x())?;
    let out = b.discharge()?;
    let e = b.and_l(a)?;
    b.ex_e(e, out)?;
    let fwd = b.discharge()?;

    let e = b.assume(f("exists x (P(x) & Q)"));
    let c = b.assume(f("P(x) & Q"));
    let p = b.and_l(c)?;
    let ep = b.ex_i(p, "x", f("P(x)"), x())?;
    let q = b.and_r(c)?;
    b.and_i(ep, q)?;
    let out = b.discharge()?;
    b.ex_e(e, out)?;
    let bwd = b.discharge()?;
    b.and_i(fwd, bwd)?;
    b.finish_with(f("exists x P(x) & Q <-> exists x (P(x) & Q)"))
}

pub fn ex2_dual() -> Res<Proof> {
    let s = sig("const a1. pred P/1, Q/0.");
    let f = |t: &str| fo(t, &s);
    let mut b = Builder::new(s.clone(), TheoryLevel::Hht);
    let d = b.assume(f("forall x P(x) | Q"));
    let all = b.assume(f("forall x P(x)"));
    let px = b.all_e(all, x())?;
    let o = b.or_il(px, f("Q"))?;
    b.gen(o, obj("x"))?;
    let left = b.discharge()?;
    let q = b.assume(f("Q"));
    let o = b.or_ir(f("P(x)"), q)?;
    b.gen(o, obj("x"))?;
    let right = b.discharge()?;
    b.or_e(d, left, right)?;
    let fwd = b.discharge()?;

    let all = b.assume(f("forall x (P(x) | Q)"));
    let step = b.assume(f("P(x) -> forall x P(x)"));
    let o = b.all_e(all, x())?;
    let px = b.assume(f("P(x)"));
    let w = b.mp(px, step)?;
    b.or_il(w, f("Q"))?;
    let left = b.discharge()?;
    let q = b.assume(f("Q"));
    b.or_ir(f("forall x P(x)"), q)?;
    let right = b.discharge()?;
    b.or_e(o, left, right)?;
    let out = b.discharge()?;
    let p = sqht_p(&b);
    let sq = b.axiom("sqht", &[("x", MetaValue::Var("x".into())), ("F", p)])?;
    b.ex_e(sq, out)?;
    let bwd = b.discharge()?;
    b.and_i(fwd, bwd)?;
    b.finish_with(f("forall x P(x) | Q <-> forall x (P(x) | Q)"))
}

pub fn ex3() -> Res<Proof> {
    let s = sig("const a1. pred P/1, Q/0.");
    let f = |t: &str| fo(t, &s);
    let mut b = Builder::new(s.clone(), TheoryLevel::Hht);
    let a = b.assume(f("exists x P(x) -> Q"));
    let px = b.assume(f("P(x)"));
    let e = b.ex_i(px, "x", f("P(x)"), x())?;
    b.mp(e, a)?;
    let pq = b.discharge()?;
    b.gen(pq, obj("x"))?;
    let fwd = b.discharge()?;

    let all = b.assume(f("forall x (P(x) -> Q)"));
    let e = b.assume(f("exists x P(x)"));
    let pq = b.all_e(all, x())?;
    b.ex_e(e, pq)?;
    b.discharge()?;
    let bwd = b.discharge()?;
    b.and_i(fwd, bwd)?;
    b.finish_with(f("(exists x P(x) -> Q) <-> forall x (P(x) -> Q)"))
}

pub fn ex4_sqht() -> Res<Proof> {
    let s = sig("const a1. pred P/1.");
    let mut b = Builder::new(s, TheoryLevel::Hht);
    let p = sqht_p(&b);
    b.axiom("sqht", &[("x", MetaValue::Var("x".into())), ("F", p)])?;
    b.finish()
}

pub fn ex5_r0() -> Res<Proof> {
    let s = sig("const a1. pred P/1. restrictor R/1.");
    let f = |t: &str| fo(t, &s);
    let mut b = Builder::new(s.clone(), TheoryLevel::Hht);
    let all = b.assume(f("forall x P(x)"));
    b.assume(f("R(x)"));
    b.all_e(all, x())?;
    let rp = b.discharge()?;
    b.gen(rp, obj("x"))?;
    b.discharge()?;
    b.finish_with(f("forall x P(x) -> forall (x:R) P(x)"))
}

pub fn ex6_r1() -> Res<Proof> {
    let s = sig("const a1. pred P/1, Q/1. restrictor R1/1, R2/1.");
    let f = |t: &str| fo(t, &s);
    let y = || Term::var("y");
    let m = "R1(x) & R2(y) & (P(x) & Q(y))";
    let mut b = Builder::new(s.clone(), TheoryLevel::Hht);
    let a = b.assume(f("exists x (R1(x) & P(x)) & exists y (R2(y) & Q(y))"));
    let el = b.and_l(a)?;
    let er = b.and_r(a)?;
    let c1 = b.assume(f("R1(x) & P(x)"));
    let c2 = b.assume(f("R2(y) & Q(y)"));
    let (r1, p) = (b.and_l(c1)?, b.and_r(c1)?);
    let (r2, q) = (b.and_l(c2)?, b.and_r(c2)?);
    let rr = b.and_i(r1, r2)?;
    let pq = b.and_i(p, q)?;
    let mm = b.and_i(rr, pq)?;
    let ey = b.ex_i(mm, "y", f(m), y())?;
    b.ex_i(ey, "x", f(&format!("exists y ({m})")), x())?;
    let k = b.discharge()?;
    b.ex_e(er, k)?;
    let k = b.discharge()?;
    b.ex_e(el, k)?;
    let fwd = b.discharge()?;

    let e = b.assume(f(&format!("exists x exists y ({m})")));
    let d = b.assume(f(&format!("exists y ({m})")));
    let mm = b.assume(f(m));
    let (rr, pq) = (b.and_l(mm)?, b.and_r(mm)?);
    let (r1, r2) = (b.and_l(rr)?, b.and_r(rr)?);
    let (p, q) = (b.and_l(pq)?, b.and_r(pq)?);
    let c1 = b.and_i(r1, p)?;
    let e1 = b.ex_i(c1, "x", f("R1(x) & P(x)"), x())?;
    let c2 = b.and_i(r2, q)?;
    let e2 = b.ex_i(c2, "y", f("R2(y) & Q(y)"), y())?;
    b.and_i(e1, e2)?;
    let k = b.discharge()?;
    b.ex_e(d, k)?;
    let k = b.discharge()?;
    b.ex_e(e, k)?;
    let bwd = b.discharge()?;
    b.and_i(fwd, bwd)?;
    b.finish_with(f("exists (x:R1) P(x) & exists (y:R2) Q(y) <-> exists (x:R1, y:R2) (P(x) & Q(y))"))
}

pub fn ex5_alt() -> Res<Proof> {
    let s = sig("const a1. fn f/1. pred P/1.");
    let f = |t: &str| fo(t, &s);
    let mut b = Builder::new(s.clone(), TheoryLevel::Hht);
    let all = b.assume(f("forall x P(x)"));
    let pfx = b.all_e(all, Term::app("f", vec![x()]))?;
    b.gen(pfx, obj("x"))?;
    b.discharge()?;
    b.finish_with(f("forall x P(x) -> forall x P(f(x))"))
}

pub fn ex7_induction() -> Res<Proof> {
    let s = sig("const a. fn s/1. pred P/1.");
    let f = |t: &str| fo(t, &s);
    let mut b = Builder::new(s.clone(), TheoryLevel::Hht2Dca);
    let hyp = b.assume(f("P(a) & forall x (P(x) -> P(s(x)))"));
    let closure = b.axiom("dca", &[])?;
    let Formula::Quant(Quantifier::Forall, Binder::Pred(p), body) = dca(&s) else {
        return Err(BuildError("unexpected shape of the domain closure axiom".into()));
    };
    let inst = b.axiom(
        "so-all-e",
        &[
            ("v", MetaValue::SoVar(Var::Pred(p))),
            ("G", fm(*body)),
            ("w", MetaValue::SoTarget(SoTarget::PredConst("P".into()))),
        ],
    )?;
    let induction = b.mp(closure, inst)?;
    b.mp(hyp, induction)?;
    let fwd = b.discharge()?;

    let all = b.assume(f("forall x P(x)"));
    let pa = b.all_e(all, Term::constant("a"))?;
    let psx = b.all_e(all, Term::app("s", vec![x()]))?;
    let step = b.weaken(psx, &f("P(x)"))?;
    let step = b.gen(step, obj("x"))?;
    b.and_i(pa, step)?;
    let bwd = b.discharge()?;
    b.and_i(fwd, bwd)?;
    b.finish_with(f("P(a) & forall x (P(x) -> P(s(x))) <-> forall x P(x)"))
}

pub fn bad_rewritten() -> Res<Proof> {
    let s = sig("const a1. pred P/1. restrictor Odd/1, Even/1.");
    let f = |t: &str| fo(t, &s);
    let target = f("not not P(x) | not P(x)");
    let mut b = Builder::new(s.clone(), TheoryLevel::Hht);
    // hosoi with F := not P(x), G := P(x) gives weak excluded middle
    let h = b.axiom("hosoi", &[("F", fm(f("not P(x)"))), ("G", fm(f("P(x)")))])?;
    let n = b.assume(f("not P(x)"));
    b.or_ir(f("not not P(x)"), n)?;
    let case_n = b.discharge()?;
    let back = b.assume(f("not P(x) -> P(x)"));
    let n = b.assume(f("not P(x)"));
    let p = b.mp(n, back)?;
    b.mp(p, n)?;
    let nn = b.discharge()?;
    b.or_il(nn, f("not P(x)"))?;
    let case_back = b.discharge()?;
    let inner = b.assume(f("not P(x) | (not P(x) -> P(x))"));
    b.or_e(inner, case_n, case_back)?;
    let case_inner = b.discharge()?;
    let wem = b.or_e(h, case_inner, case_n)?;
    debug_assert_eq!(b.formula(wem), &target);
    let odd = b.weaken(wem, &f("Odd(x)"))?;
    let odd = b.gen(odd, obj("x"))?;
    let id = b.identity(&f("P(x)"))?;
    let even = b.weaken(id, &f("Even(x)"))?;
    let even = b.gen(even, obj("x"))?;
    b.and_i(odd, even)?;
    b.finish_with(f("forall (x:Odd) (not not P(x) | not P(x)) & forall (x:Even) (P(x) -> P(x))"))
}

// ---- substitutions ----

fn consts(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn signature_text(constants: &[String], rest: &str) -> Signature {
    sig(&format!("const {}. {rest}", constants.join(", ")))
}

fn atom(pred: &str, c: &str) -> GroundAtom {
    GroundAtom::new(pred, vec![GroundTerm::constant(c)])
}

fn put(psi: &mut Substitution, a: GroundAtom, p: Prop) {
    psi.insert(a, p).expect("corpus substitution entry");
}

/// `ψP(αi) = F_αi` over `A = {a1..an}`.
pub fn over_a(n: usize, _: usize) -> Option<Substitution> {
    if n == 0 {
        return None;
    }
    let a = consts("a", n);
    let mut psi = Substitution::new(signature_text(&a, "pred P/1."));
    for c in &a {
        put(&mut psi, atom("P", c), Prop::atom(format!("F_{c}")));
    }
    Some(psi)
}

/// As [`over_a`], plus `ψQ = G`.
pub fn over_a_q(n: usize, _: usize) -> Option<Substitution> {
    if n == 0 {
        return None;
    }
    let a = consts("a", n);
    let mut psi = Substitution::new(signature_text(&a, "pred P/1, Q/0."));
    for c in &a {
        put(&mut psi, atom("P", c), Prop::atom(format!("F_{c}")));
    }
    put(&mut psi, GroundAtom::new("Q", vec![]), Prop::atom("G"));
    Some(psi)
}

/// `B` is a proper subset of `A`: the first `m` of `a1..an`.
fn ex5_subst(n: usize, m: usize) -> Option<Substitution> {
    if m >= n {
        return None;
    }
    let a = consts("a", n);
    let mut psi = Substitution::new(signature_text(&a, "pred P/1. restrictor R/1."));
    for (i, c) in a.iter().enumerate() {
        put(&mut psi, atom("P", c), Prop::atom(format!("F_{c}")));
        put(&mut psi, atom("R", c), if i < m { Prop::top() } else { Prop::bot() });
    }
    Some(psi)
}

/// `A = {a1..an}`, `B = {b1..bm}`; the restrictors pick each family out,
/// and the atoms outside it are never reached.
fn ex6_subst(n: usize, m: usize) -> Option<Substitution> {
    if n == 0 || m == 0 {
        return None;
    }
    let (a, bs) = (consts("a", n), consts("b", m));
    let all: Vec<String> = a.iter().chain(&bs).cloned().collect();
    let mut psi = Substitution::new(signature_text(&all, "pred P/1, Q/1. restrictor R1/1, R2/1."));
    for c in &all {
        let in_a = a.contains(c);
        put(&mut psi, atom("R1", c), if in_a { Prop::top() } else { Prop::bot() });
        put(&mut psi, atom("R2", c), if in_a { Prop::bot() } else { Prop::top() });
        if in_a {
            put(&mut psi, atom("P", c), Prop::atom(format!("F_{c}")));
        } else {
            put(&mut psi, atom("Q", c), Prop::atom(format!("G_{c}")));
        }
    }
    psi.set_default("P", Prop::bot()).expect("declared");
    psi.set_default("Q", Prop::bot()).expect("declared");
    Some(psi)
}

/// `n` odd-indexed and `m` even-indexed constants; `ψP(ak) = F_k`.
fn bad_subst(n: usize, m: usize) -> Option<Substitution> {
    if n == 0 || m == 0 {
        return None;
    }
    let mut ks: Vec<usize> = (1..=n).map(|i| 2 * i - 1).chain((1..=m).map(|j| 2 * j)).collect();
    ks.sort_unstable();
    let names: Vec<String> = ks.iter().map(|k| format!("a{k}")).collect();
    let mut psi = Substitution::new(signature_text(&names, "pred P/1. restrictor Odd/1, Even/1."));
    for (k, c) in ks.iter().zip(&names) {
        put(&mut psi, atom("P", c), Prop::atom(format!("F{k}")));
        let odd = k % 2 == 1;
        put(&mut psi, atom("Odd", c), if odd { Prop::top() } else { Prop::bot() });
        put(&mut psi, atom("Even", c), if odd { Prop::bot() } else { Prop::top() });
    }
    Some(psi)
}

fn iterate(f: &str, c: &str, i: usize) -> GroundTerm {
    (0..i).fold(GroundTerm::constant(c), |t, _| GroundTerm::app(f, vec![t]))
}

/// Entries for `P(f^i(α))`, `i ≤ 3`: `F_α` when `i = 0` or `α ∈ B`, and
/// `F_α0` otherwise, with `α0 = a1 ∈ B`. Enough for depth 2.
fn ex5_alt_subst(n: usize, m: usize) -> Option<Substitution> {
    if m == 0 || m >= n {
        return None;
    }
    let a = consts("a", n);
    let mut psi = Substitution::new(signature_text(&a, "fn f/1. pred P/1."));
    for (k, c) in a.iter().enumerate() {
        for i in 0..=3 {
            let source = if i == 0 || k < m { c } else { &a[0] };
            put(&mut psi, GroundAtom::new("P", vec![iterate("f", c, i)]), Prop::atom(format!("F_{source}")));
        }
    }
    Some(psi)
}

/// `ψP(s^i(a)) = p_i` for `i ≤ 4`, enough for depth 3.
fn ex7_subst(_: usize, _: usize) -> Option<Substitution> {
    let mut psi = Substitution::new(sig("const a. fn s/1. pred P/1."));
    for i in 0..=4 {
        put(&mut psi, GroundAtom::new("P", vec![iterate("s", "a", i)]), Prop::atom(format!("p{i}")));
    }
    Some(psi)
}

// ---- fixed files ----

/// Claims `not not P(a) -> P(a)` as an instance of `efq`.
pub const CLASSICAL_PROOF: &str = "\
# Double-negation elimination is not intuitionistic. The line below is
# justified by ex falso, whose instance with F := P(a) is bot -> P(a), so the
# checker must reject it.
const a.
pred P/1.

level HHT;

1: not not P(a) -> P(a) by axiom efq with F := P(a);
";

pub const LEM_PROP: &str = "p | not p\n";

pub const DNE_PROP: &str = "not not p -> p\n";

pub const WEM_PROP: &str = "not p | not not p\n";

/// The non-uniform conjunction with four conjuncts. HT-valid, but not an
/// instance of a provable first-order formula; see `bad_rewritten`.
pub const BAD_PROP: &str = "\
And{not not F1 | not F1; F2 -> F2; not not F3 | not F3; F4 -> F4}
";

pub const DCA_AB_FOF: &str = "\
const a, b.

forall p/1 (p(a) & p(b) -> forall x p(x));
";

pub const LEM_FOF: &str = "\
const a.
pred P/1.

P(a) | not P(a);
";

/// Formula files derived from case conclusions.
fn conclusion_fof(case: &Case) -> Res<FofFile> {
    let proof = (case.proof)()?;
    let formula = proof.lines.last().expect("non-empty").formula.clone();
    Ok(FofFile { signature: proof.signature, formula })
}

/// Every shipped file as `(name, contents)`.
pub fn files() -> Res<Vec<(String, String)>> {
    let mut out = Vec::new();
    for case in cases() {
        let proof = (case.proof)()?;
        out.push((format!("{}.proof", case.name), write_proof(&proof)));
        let (a, b) = case.shipped;
        let psi = (case.substitution)(a, b).expect("shipped sizes fit the case");
        out.push((case.subst_file_name(), write_subst(&psi)));
        out.push((format!("{}.fof", case.name), write_fof(&conclusion_fof(&case)?)));
    }
    for (name, text) in [
        ("classical.proof", CLASSICAL_PROOF),
        ("lem.prop", LEM_PROP),
        ("dne.prop", DNE_PROP),
        ("wem.prop", WEM_PROP),
        ("bad.prop", BAD_PROP),
        ("dca_ab.fof", DCA_AB_FOF),
        ("lem.fof", LEM_FOF),
    ] {
        out.push((name.to_string(), text.to_string()));
    }
    out.sort();
    Ok(out)
}

pub fn write_all(dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    for (name, text) in files().map_err(io::Error::other)? {
        fs::write(dir.join(name), text)?;
    }
    Ok(())
}

