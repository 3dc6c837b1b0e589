mod support;

use hhtkit_core::ht::{g3_eval, ht_valid, satisfies, AtomState, HtInterpretation, Validity, World};
use hhtkit_core::Prop;
use proptest::prelude::*;

const ATOMS: [&str; 4] = ["p", "q", "r", "s"];

/// Classical truth under a single set of true atoms.
fn classical(true_atoms: &[&str], f: &Prop) -> bool {
    match f {
        Prop::Atom(a) => true_atoms.contains(&a.as_str()),
        Prop::And(s) => s.iter().all(|c| classical(true_atoms, c)),
        Prop::Or(s) => s.iter().any(|c| classical(true_atoms, c)),
        Prop::Imp(l, r) => !classical(true_atoms, l) || classical(true_atoms, r),
    }
}

/// Gödel three-valued table, written against states rather than worlds.
fn g3(i: &HtInterpretation, f: &Prop) -> u8 {
    match f {
        Prop::Atom(a) => match i.state(a) {
            AtomState::Both => 2,
            AtomState::ThereOnly => 1,
            AtomState::Absent => 0,
        },
        Prop::And(s) => s.iter().map(|c| g3(i, c)).min().unwrap_or(2),
        Prop::Or(s) => s.iter().map(|c| g3(i, c)).max().unwrap_or(0),
        Prop::Imp(l, r) => {
            let (a, b) = (g3(i, l), g3(i, r));
            if a <= b {
                2
            } else {
                b
            }
        }
    }
}

proptest! {
    #[test]
    fn persistence(seed in any::<u64>()) {
        let mut r = support::rng(seed);
        let f = support::prop(&mut r, &ATOMS, 4);
        let i = support::ht_interpretation(&mut r, ATOMS);
        prop_assert!(!satisfies(&i, World::H, &f) || satisfies(&i, World::T, &f));
    }

    #[test]
    fn g3_agrees_with_worlds(seed in any::<u64>()) {
        let mut r = support::rng(seed);
        let f = support::prop(&mut r, &ATOMS, 4);
        let i = support::ht_interpretation(&mut r, ATOMS);
        let expected = if satisfies(&i, World::H, &f) { 2 } else if satisfies(&i, World::T, &f) { 1 } else { 0 };
        prop_assert_eq!(g3_eval(&i, &f), expected);
        prop_assert_eq!(g3(&i, &f), expected);
    }

    #[test]
    fn total_interpretations_are_classical(seed in any::<u64>()) {
        let mut r = support::rng(seed);
        let f = support::prop(&mut r, &ATOMS, 4);
        let set: Vec<&str> = ATOMS.iter().copied().filter(|_| rand::Rng::gen_bool(&mut r, 0.5)).collect();
        let i = HtInterpretation::total(set.iter().map(|s| s.to_string()).collect());
        prop_assert_eq!(satisfies(&i, World::H, &f), classical(&set, &f));
        prop_assert_eq!(satisfies(&i, World::T, &f), classical(&set, &f));
    }

    #[test]
    fn validity_matches_g3_table(seed in any::<u64>()) {
        let mut r = support::rng(seed);
        let f = support::prop(&mut r, &ATOMS[..3], 3);
        let atoms: Vec<String> = f.atoms().into_iter().collect();
        // oracle: some assignment of 0/1/2 gives the formula a value below 2
        let mut witness = None;
        for k in 0..3u32.pow(atoms.len() as u32) {
            let mut idx = k;
            let mut states = vec![AtomState::Absent; atoms.len()];
            for s in states.iter_mut().rev() {
                *s = AtomState::ALL[(idx % 3) as usize];
                idx /= 3;
            }
            let i = HtInterpretation::from_states(atoms.iter().map(String::as_str).zip(states));
            if g3(&i, &f) < 2 {
                witness = Some(i);
                break;
            }
        }
        match (ht_valid(&f).unwrap(), witness) {
            (Validity::Valid, None) => {}
            (Validity::Countermodel(c), Some(w)) => prop_assert_eq!(c.interpretation, w),
            (v, w) => prop_assert!(false, "{f}: {v:?} vs {w:?}"),
        }
    }

    #[test]
    fn valid_formulas_are_classical_tautologies(seed in any::<u64>()) {
        let mut r = support::rng(seed);
        let f = support::prop(&mut r, &ATOMS[..3], 3);
        if ht_valid(&f).unwrap().is_valid() {
            for k in 0..8u32 {
                let set: Vec<&str> = ATOMS[..3].iter().enumerate().filter(|(j, _)| k >> j & 1 == 1).map(|(_, a)| *a).collect();
                prop_assert!(classical(&set, &f));
            }
        }
    }
}

#[test]
fn known_verdicts() {
    let p = Prop::atom("p");
    let q = Prop::atom("q");
    let lem = Prop::or(p.clone(), Prop::not(p.clone()));
    let dn = Prop::imp(Prop::not(Prop::not(p.clone())), p.clone());
    for f in [lem, dn] {
        match ht_valid(&f).unwrap() {
            Validity::Countermodel(c) => assert_eq!(c.render(), "p: there-only\n"),
            Validity::Valid => panic!("{f} should have a countermodel"),
        }
    }
    let hosoi = Prop::or(Prop::or(p.clone(), Prop::imp(p.clone(), q.clone())), Prop::not(q.clone()));
    assert!(ht_valid(&hosoi).unwrap().is_valid());
    assert!(ht_valid(&Prop::iff(Prop::top(), Prop::not(Prop::bot()))).unwrap().is_valid());
    // weak excluded middle holds in HT
    assert!(ht_valid(&Prop::or(Prop::not(p.clone()), Prop::not(Prop::not(p)))).unwrap().is_valid());
}
