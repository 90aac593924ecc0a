//! Acceptance suite: every headline property at its stated tolerance and
//! runtime budget, one pass/fail line per criterion.
//!
//! All checks run with the default policy (seed 0, base trial count 1000,
//! grid 9) through the same suite runners the CLI uses; per-criterion
//! runtimes are taken from the suite's own timing records.

use std::sync::OnceLock;

use spingeom::report::SuiteReport;
use spingeom::suites::{run, SuiteConfig, SuiteId};

fn suite_report(id: SuiteId) -> &'static SuiteReport {
    static CLIFFORD: OnceLock<SuiteReport> = OnceLock::new();
    static MAP: OnceLock<SuiteReport> = OnceLock::new();
    static WAVES: OnceLock<SuiteReport> = OnceLock::new();
    static BILINEARS: OnceLock<SuiteReport> = OnceLock::new();
    static CONFORMAL: OnceLock<SuiteReport> = OnceLock::new();
    static FIVEGEOM: OnceLock<SuiteReport> = OnceLock::new();
    let slot = match id {
        SuiteId::Clifford => &CLIFFORD,
        SuiteId::Map => &MAP,
        SuiteId::Waves => &WAVES,
        SuiteId::Bilinears => &BILINEARS,
        SuiteId::Conformal => &CONFORMAL,
        SuiteId::FiveGeom => &FIVEGEOM,
    };
    slot.get_or_init(|| {
        run(&SuiteConfig {
            suites: vec![id],
            ..SuiteConfig::default()
        })
    })
}

struct Criterion {
    number: u32,
    label: &'static str,
}

impl Criterion {
    fn new(number: u32, label: &'static str) -> Self {
        Self { number, label }
    }

    /// Assert a named check passed, its residual is within `tol`, and its
    /// own elapsed time is under `budget_ms`.
    fn expect(&self, report: &SuiteReport, name: &str, tol: f64, budget_ms: f64) {
        let check = report
            .checks
            .iter()
            .find(|c| c.name == name)
            .unwrap_or_else(|| panic!("check {name} missing from report"));
        let elapsed = report
            .timing
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, ms)| *ms)
            .unwrap_or(f64::NAN);
        assert!(
            check.passed,
            "criterion {} ({}): check {name} FAILED with residual {:.3e}",
            self.number, self.label, check.max_residual
        );
        assert!(
            check.max_residual <= tol,
            "criterion {} ({}): {name} residual {:.3e} exceeds {tol:.1e}",
            self.number, self.label, check.max_residual
        );
        assert!(
            elapsed <= budget_ms,
            "criterion {} ({}): {name} took {elapsed:.0} ms (budget {budget_ms} ms)",
            self.number, self.label
        );
        println!(
            "criterion {:2} {}: PASS [{name}] residual={:.3e} trials={} elapsed={:.0}ms",
            self.number, self.label, check.max_residual, check.trials, elapsed
        );
    }
}

#[test]
fn criterion_01_exact_anticommutators() {
    let report = suite_report(SuiteId::Clifford);
    // Exact arithmetic, zero tolerance, under one second.
    Criterion::new(1, "clifford certification").expect(
        report,
        "clifford.anticommutator_exact",
        0.0,
        1000.0,
    );
}

#[test]
fn criterion_02_displacement_realness() {
    let report = suite_report(SuiteId::Map);
    let check = report
        .checks
        .iter()
        .find(|c| c.name == "map.realness")
        .expect("realness check present");
    assert_eq!(check.trials, 10_000, "criterion demands 1e4 samples");
    Criterion::new(2, "displacement realness").expect(report, "map.realness", 1e-13, 5000.0);
}

#[test]
fn criterion_03_lorentz_equivariance() {
    let report = suite_report(SuiteId::Map);
    let check = report
        .checks
        .iter()
        .find(|c| c.name == "map.equivariance")
        .expect("equivariance check present");
    assert_eq!(check.trials, 1000, "100 trials per generator plane");
    Criterion::new(3, "map equivariance").expect(report, "map.equivariance", 1e-8, 30_000.0);
}

#[test]
fn criterion_04_shell_equivalence() {
    let report = suite_report(SuiteId::Waves);
    let on = report
        .checks
        .iter()
        .find(|c| c.name == "waves.shell_on")
        .expect("on-shell check");
    let off = report
        .checks
        .iter()
        .find(|c| c.name == "waves.shell_off")
        .expect("off-shell check");
    assert_eq!(on.trials, 500);
    assert_eq!(off.trials, 500);
    let c = Criterion::new(4, "shell equivalence");
    c.expect(report, "waves.shell_on", 1e-10, 10_000.0);
    c.expect(report, "waves.shell_off", 0.0, 10_000.0);
}

#[test]
fn criterion_05_chain_rule() {
    let report = suite_report(SuiteId::Map);
    let check = report
        .checks
        .iter()
        .find(|c| c.name == "map.chain_rule")
        .expect("chain-rule check");
    assert_eq!(check.trials, 200);
    Criterion::new(5, "chain rule").expect(report, "map.chain_rule", 1e-8, 10_000.0);
}

#[test]
fn criterion_06_quadratic_invariant() {
    let report = suite_report(SuiteId::Bilinears);
    let c = Criterion::new(6, "quadratic invariant");
    c.expect(report, "bilinears.convention_oracle", 0.0, 5000.0);
    let check = report
        .checks
        .iter()
        .find(|c| c.name == "bilinears.quadratic_invariant")
        .expect("invariant check");
    assert_eq!(check.trials, 1000);
    c.expect(report, "bilinears.quadratic_invariant", 1e-10, 5000.0);
}

#[test]
fn criterion_07_zero_mass_factorization() {
    let report = suite_report(SuiteId::Bilinears);
    let check = report
        .checks
        .iter()
        .find(|c| c.name == "bilinears.zero_mass")
        .expect("zero-mass check");
    assert_eq!(check.trials, 1000, "500 chiral plus 500 generic spinors");
    Criterion::new(7, "zero-mass factorization").expect(
        report,
        "bilinears.zero_mass",
        1e-10,
        5000.0,
    );
}

#[test]
fn criterion_08_conformal_equivalence() {
    let report = suite_report(SuiteId::Conformal);
    let c = Criterion::new(8, "conformal equivalence");
    c.expect(report, "conformal.exponent_exact", 0.0, 60_000.0);
    c.expect(report, "conformal.equivalence_8d", 0.0, 60_000.0);
    c.expect(report, "conformal.wrong_exponent", 0.0, 60_000.0);
    // Order estimates within 2.0 ± 0.3 under h → h/2.
    c.expect(report, "conformal.fd_sphere_n2", 0.3, 60_000.0);
    c.expect(report, "conformal.fd_agreement_n3", 0.3, 60_000.0);
    c.expect(report, "conformal.fd_agreement_n4", 0.3, 60_000.0);
}

#[test]
fn criterion_09_five_metric() {
    let report = suite_report(SuiteId::FiveGeom);
    let c = Criterion::new(9, "five-metric");
    for name in [
        "fivegeom.null_lift",
        "fivegeom.inverse_det",
        "fivegeom.gauge_invariance",
    ] {
        let check = report
            .checks
            .iter()
            .find(|ch| ch.name == name)
            .expect("check present");
        assert_eq!(check.trials, 1000);
        c.expect(report, name, 1e-12, 5000.0);
    }
}

#[test]
fn criterion_10_flat_dispersion() {
    let report = suite_report(SuiteId::Waves);
    let check = report
        .checks
        .iter()
        .find(|c| c.name == "waves.dispersion_flat")
        .expect("dispersion check");
    assert_eq!(check.trials, 100);
    Criterion::new(10, "flat dispersion").expect(report, "waves.dispersion_flat", 1e-12, 1000.0);
}

#[test]
fn criterion_11_full_run_deterministic() {
    let config = SuiteConfig::default();

    let start = std::time::Instant::now();
    let first = run(&config);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 180.0,
        "full run took {:.1} s (budget 180 s)",
        elapsed.as_secs_f64()
    );
    assert!(first.all_passed(), "{}", first.emit_human());

    let second = run(&config);
    let a: serde_json::Value = serde_json::from_str(&first.emit_structured()).unwrap();
    let b: serde_json::Value = serde_json::from_str(&second.emit_structured()).unwrap();
    assert_eq!(
        serde_json::to_string(&a["report"]).unwrap(),
        serde_json::to_string(&b["report"]).unwrap(),
        "structured report must be byte-identical for a fixed seed"
    );

    println!(
        "criterion 11 full deterministic run: PASS {} checks in {:.1} s",
        first.checks.len(),
        elapsed.as_secs_f64()
    );
}
