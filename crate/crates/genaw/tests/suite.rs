mod common;

use std::time::Instant;

use common::*;
use genaw::gen_aw::MassConfig;
use genaw::suite::*;

fn cfg(a: f64, b: f64, seed: u64) -> SuiteConfig {
    SuiteConfig { params: stock(), masses: MassConfig::new(a, b).unwrap(), n_max: 10, tol: 1e-8, seed }
}

#[test]
fn stock_suite_passes_and_lists_every_identity_once() {
    let t = Instant::now();
    let report = run_suite(&cfg(0.3, 0.7, 42)).unwrap();
    eprintln!("suite took {:?}", t.elapsed());
    for r in &report {
        eprintln!("{:28} n={:2} residual={:e}", r.identity_tag, r.n, r.residual);
    }
    assert_eq!(report.len(), IDENTITY_TAGS.len());
    let mut tags: Vec<_> = report.iter().map(|r| r.identity_tag).collect();
    let sorted = tags.clone();
    tags.sort();
    tags.dedup();
    assert_eq!(tags, sorted);
    assert!(report.iter().all(|r| r.pass));
}

#[test]
fn suite_without_masses_passes() {
    assert!(run_suite(&cfg(0.0, 0.0, 1)).unwrap().iter().all(|r| r.pass));
}

#[test]
fn suite_is_deterministic() {
    assert_eq!(run_suite(&cfg(0.5, 0.5, 9)).unwrap(), run_suite(&cfg(0.5, 0.5, 9)).unwrap());
}
