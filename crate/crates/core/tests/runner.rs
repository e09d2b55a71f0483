use shimcover::certificate::Status;
use shimcover::corpus::{Corpus, RunOptions, Runner, CHECKS};

#[test]
fn builtin_corpus_passes_every_check() {
    let runner = Runner::new(Corpus::builtin(), RunOptions::default());
    let certs = runner.run_all();
    let bad: Vec<String> = certs.iter().filter(|c| !c.passed()).map(|c| format!("{}: {}", c.check, c.reason)).collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert!(certs.len() > CHECKS.len());
}

#[test]
fn reruns_are_identical() {
    let opts = RunOptions { samples: 100, ..RunOptions::default() };
    let a = Runner::new(Corpus::builtin(), opts.clone()).run_group("galois").unwrap();
    let b = Runner::new(Corpus::builtin(), opts).run_group("galois").unwrap();
    let ja: Vec<String> = a.iter().map(|c| c.stable_json()).collect();
    let jb: Vec<String> = b.iter().map(|c| c.stable_json()).collect();
    assert_eq!(ja, jb);
}

#[test]
fn too_few_samples_at_one_prime_is_flagged() {
    let opts = RunOptions { primes: vec![103], samples: 5, ..RunOptions::default() };
    let certs = Runner::new(Corpus::builtin(), opts).run_group("galois").unwrap();
    let mono = certs.iter().find(|c| c.check == "monodromy").unwrap();
    assert_ne!(mono.status, Status::Pass);
}
