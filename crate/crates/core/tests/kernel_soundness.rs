mod support;

use hhtkit_core::herbrand::{hht_valid_bruteforce, HerbrandValidity, DEFAULT_BUDGET};
use hhtkit_core::kernel::{check_proof, list_schemas, Justification, Proof, ProofLine, TheoryLevel};

const PER_SCHEMA: usize = 25;

#[test]
fn every_schema_instance_is_hht_valid() {
    let setups = support::soundness_setups();
    for info in list_schemas(TheoryLevel::Hht2Dca) {
        let (sig, mode) = setups.get(info.id).unwrap_or_else(|| panic!("no setup for {}", info.id));
        let mut r = support::rng(0x5eed ^ info.id.len() as u64);
        for _ in 0..PER_SCHEMA {
            let (_, inst) = support::schema_instance(&mut r, info.id, sig, 2);
            let closed = inst.universal_closure();
            match hht_valid_bruteforce(&closed, sig, *mode, DEFAULT_BUDGET) {
                Ok(HerbrandValidity::Valid) => {}
                other => panic!("{}: {closed} gave {other:?}", info.id),
            }
        }
    }
}

#[test]
fn checker_is_deterministic() {
    let sig = support::signature(&["a", "b"], &[], &[("P", 1), ("Q", 0)], &[]);
    let mut r = support::rng(7);
    let mut lines = Vec::new();
    for (n, info) in list_schemas(TheoryLevel::Hht).into_iter().filter(|s| !s.id.starts_with("cet")).enumerate() {
        let (binding, formula) = support::schema_instance(&mut r, info.id, &sig, 2);
        lines.push(ProofLine {
            number: n + 1,
            formula,
            justification: Justification::Axiom { schema: info.id.into(), binding },
        });
    }
    let mut p = Proof { signature: sig, level: TheoryLevel::Hht, lines };
    let first = check_proof(&p);
    assert!(first.is_ok(), "{first:?}");
    assert_eq!(check_proof(&p), first);
    // corrupt one line and compare error locations across runs
    p.lines[5].justification = Justification::Mp(1, 2);
    let e1 = check_proof(&p).unwrap_err();
    let e2 = check_proof(&p).unwrap_err();
    assert_eq!(e1, e2);
    assert_eq!(e1.line, 6);
}

