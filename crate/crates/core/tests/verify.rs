use ck_core::verify::{run_verify, SuiteSelection, VerifyOptions};
use ck_core::AlgebraConfig;

fn options(workers: Option<usize>) -> VerifyOptions {
    VerifyOptions {
        seed: 17,
        trials: 6,
        bound: None,
        workers,
        timing: false,
    }
}

#[test]
fn every_suite_passes_on_the_reference_algebras() {
    for json in [
        r#"{"case":"A1","field":"Q","a":"-1","b":"-3","validation":"definite"}"#,
        r#"{"case":"A2","field":"F2(s,t)","a":"s","b":"t","validation":"search:200"}"#,
        r#"{"case":"B","field":"F2(a,b)","a":"a","b":"b","validation":"frobenius"}"#,
    ] {
        let cfg = AlgebraConfig::from_json(json).unwrap();
        let report = run_verify(&cfg, SuiteSelection::All, &options(None)).unwrap();
        assert!(report.all_passed(), "{json}: {:?}", report.failed_witnesses);
        assert!(report.passed > 0);
    }
}

#[test]
fn reports_are_reproducible_across_worker_counts() {
    let cfg = AlgebraConfig::from_json(
        r#"{"case":"A1","field":"Q","a":"-1","b":"-1","validation":"definite"}"#,
    )
    .unwrap();
    let render = |w| {
        serde_json::to_string(&run_verify(&cfg, SuiteSelection::All, &options(w)).unwrap()).unwrap()
    };
    let one = render(Some(1));
    assert_eq!(one, render(Some(2)));
    assert_eq!(one, render(None));
}

#[test]
fn seeds_change_the_samples() {
    let cfg = AlgebraConfig::from_json(
        r#"{"case":"A1","field":"Q","a":"-1","b":"-1","validation":"definite"}"#,
    )
    .unwrap();
    let a = run_verify(&cfg, "axioms".parse().unwrap(), &options(None)).unwrap();
    let mut other = options(None);
    other.seed = 18;
    let b = run_verify(&cfg, "axioms".parse().unwrap(), &other).unwrap();
    assert_eq!(a.passed, b.passed);
    assert_eq!(a.trials, 6);
}
