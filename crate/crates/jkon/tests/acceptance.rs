//! Acceptance gate: one test per certification criterion, each printing its
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see every line, or `jkon verify` for the same battery via the CLI.
//!
//! Two criteria fail for mathematical reasons documented in their suite
//! details (and measured precisely there): the alternative explicit forms
//! are distinct polynomials, and the dual family as constructed is only a
//! one-sided biorthogonal partner. The assertions state the criteria as
//! specified; the failures are the honest outcome, not defects of the
//! numerics, and every sub-check that can hold does hold.

use jkon::verify;
use std::collections::HashMap;

const SEED: u64 = 42;

fn no_overrides() -> HashMap<String, f64> {
    HashMap::new()
}

fn report(r: &verify::SuiteReport) {
    println!("{}", r.line());
    println!("    {}", r.detail);
}

#[test]
fn criterion_01_representation_equivalence() {
    let r = verify::representation_equivalence(SEED, &no_overrides()).unwrap();
    report(&r);
    assert!(
        r.pass,
        "criterion 1: {} (detail: {})",
        r.line(),
        r.detail
    );
}

#[test]
fn criterion_02_biorthogonality() {
    let r = verify::biorthogonality(&no_overrides()).unwrap();
    report(&r);
    assert!(
        r.pass,
        "criterion 2: {} (detail: {})",
        r.line(),
        r.detail
    );
}

#[test]
fn criterion_03_konhauser_pair() {
    let r = verify::konhauser_pair(&no_overrides()).unwrap();
    report(&r);
    assert!(r.pass, "criterion 3: {} ({})", r.line(), r.detail);
}

#[test]
fn criterion_04_ml_bridge() {
    let r = verify::ml_bridge(SEED, &no_overrides()).unwrap();
    report(&r);
    assert!(r.pass, "criterion 4: {} ({})", r.line(), r.detail);
}

#[test]
fn criterion_05_frac_integral_image() {
    let r = verify::frac_integral_image(&no_overrides()).unwrap();
    report(&r);
    assert!(r.pass, "criterion 5: {} ({})", r.line(), r.detail);
}

#[test]
fn criterion_06_frac_derivative_image() {
    let r = verify::frac_derivative_image(&no_overrides()).unwrap();
    report(&r);
    assert!(r.pass, "criterion 6: {} ({})", r.line(), r.detail);
}

#[test]
fn criterion_07_laplace_poly() {
    let r = verify::laplace_poly(&no_overrides()).unwrap();
    report(&r);
    assert!(r.pass, "criterion 7: {} ({})", r.line(), r.detail);
}

#[test]
fn criterion_08_xi_operator() {
    let r = verify::xi_operator(SEED, &no_overrides()).unwrap();
    report(&r);
    assert!(r.pass, "criterion 8: {} ({})", r.line(), r.detail);
}

#[test]
fn criterion_09_quadrature_exactness() {
    let r = verify::quadrature_exactness(&no_overrides()).unwrap();
    report(&r);
    assert!(r.pass, "criterion 9: {} ({})", r.line(), r.detail);
}

#[test]
fn criterion_10_generating_function() {
    let r = verify::generating_function(&no_overrides()).unwrap();
    report(&r);
    // the t = 0 and (x, y) = (1, 0) reductions are asserted; the full
    // identity comparison is recorded in the detail, never asserted
    assert!(r.pass, "criterion 10: {} ({})", r.line(), r.detail);
    assert!(
        r.detail.contains("reconstruction"),
        "diagnostic must record which right-hand variant matches"
    );
}

#[test]
fn verdicts_stable_across_seeds() {
    // tolerances must have headroom over sampling variation: a different
    // seed flips no verdict
    for seed in [7u64, 20260809] {
        let a = verify::representation_equivalence(seed, &no_overrides()).unwrap();
        let b = verify::ml_bridge(seed, &no_overrides()).unwrap();
        let c = verify::xi_operator(seed, &no_overrides()).unwrap();
        assert!(!a.pass, "criterion-1 verdict changed at seed {seed}");
        assert!(b.pass, "criterion-4 verdict changed at seed {seed}");
        assert!(c.pass, "criterion-8 verdict changed at seed {seed}");
    }
}

#[test]
fn tightened_tolerance_forces_failure() {
    // controlled failure path for the verification driver
    let mut over = HashMap::new();
    over.insert("konhauser_pair".to_string(), 1e-30);
    let r = verify::konhauser_pair(&over).unwrap();
    assert!(!r.pass);
}
