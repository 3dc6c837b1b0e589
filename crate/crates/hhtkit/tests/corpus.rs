use hhtkit::corpus::{cases, files, Expect};
use hhtkit::pipeline::{run_pipeline, Verdict};
use hhtkit_core::ht::DEFAULT_ATOM_LIMIT;

#[test]
fn every_case_builds_and_meets_its_expectation() {
    for case in cases() {
        let proof = (case.proof)().unwrap_or_else(|e| panic!("{}: {e}", case.name));
        let (a, b) = case.shipped;
        let psi = (case.substitution)(a, b).unwrap();
        let r = run_pipeline(&proof, &psi, case.mode, DEFAULT_ATOM_LIMIT);
        let valid = r.validity.as_ref().map(|v| v.valid);
        match case.expect {
            Expect::Valid => assert_eq!(r.verdict, Verdict::Certified, "{}: {}", case.name, r.render_text()),
            Expect::BoundedValid => {
                assert_eq!((r.verdict, valid), (Verdict::NonCertifying, Some(true)), "{}", case.name)
            }
            Expect::BoundedCountermodel => {
                assert_eq!((r.verdict, valid), (Verdict::NonCertifying, Some(false)), "{}", case.name)
            }
        }
    }
}

#[test]
fn shipped_files_are_current() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    for (name, text) in files().unwrap() {
        let on_disk = std::fs::read_to_string(dir.join(&name)).unwrap_or_default();
        assert_eq!(on_disk, text, "corpus/{name} is stale; run `cargo run -p hhtkit --example gen_corpus`");
    }
}
