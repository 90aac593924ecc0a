//! Suite reports: per-check records, frozen conventions, and the two
//! output formats (human lines and a machine-diffable structured document).

use serde::Serialize;

/// One executed check. `max_residual` is the worst defect observed; zero
/// is a perfect pass, and for lower-bounded (falsification) checks it is
//  the shortfall below the required margin.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
    pub trials: u64,
}

impl CheckRecord {
    pub fn new(name: &str, passed: bool, max_residual: f64, trials: u64) -> Self {
        Self {
            name: name.to_string(),
            passed,
            max_residual,
            trials,
        }
    }
}

/// The conventions frozen by the pre-build oracles, named so every fixture
/// is reproducible from the report alone.
#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub gamma_representation: String,
    pub index_placement: String,
    pub gradient_form: String,
    pub bilinear: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            gamma_representation: "dirac,gamma4=i*gamma5".into(),
            index_placement: "frame-row".into(),
            gradient_form: "gamma-eps-conj".into(),
            bilinear: "adjoint=eps,phase4=+i,phase5=+1,gamma5=+1".into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub version: String,
    pub seed: u64,
    pub trials: u64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub grid: usize,
    pub exact: bool,
    pub suites: Vec<String>,
    pub conventions: Conventions,
    pub checks: Vec<CheckRecord>,
    /// Elapsed milliseconds per check; excluded from the diffable section.
    #[serde(skip)]
    pub timing: Vec<(String, f64)>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn total_elapsed_ms(&self) -> f64 {
        self.timing.iter().map(|(_, ms)| ms).sum()
    }

    /// One line per check plus a header and an overall verdict.
    pub fn emit_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "verification report v{} (seed {}, trials {}, abs_tol {:e}, rel_tol {:e})\n",
            self.version, self.seed, self.trials, self.abs_tol, self.rel_tol
        ));
        out.push_str(&format!(
            "conventions: gamma={}; index={}; gradient={}; bilinear={}\n",
            self.conventions.gamma_representation,
            self.conventions.index_placement,
            self.conventions.gradient_form,
            self.conventions.bilinear
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} max_residual={:.3e} trials={}\n",
                c.name,
                if c.passed { "PASS" } else { "FAIL" },
                c.max_residual,
                c.trials
            ));
        }
        out.push_str(&format!(
            "overall: {} ({} checks, {:.2} s)\n",
            if self.all_passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.total_elapsed_ms() / 1000.0
        ));
        out
    }

    /// Structured document: the `report` object is deterministic for a
    /// fixed (config, seed); wall-clock data lives under `timing`.
    pub fn emit_structured(&self) -> String {
        let report = serde_json::to_value(self).expect("report serializes");
        let timing: serde_json::Map<String, serde_json::Value> = self
            .timing
            .iter()
            .map(|(name, ms)| (name.clone(), serde_json::json!(ms)))
            .collect();
        let doc = serde_json::json!({
            "report": report,
            "timing": {
                "per_check_ms": timing,
                "total_ms": self.total_elapsed_ms(),
            },
        });
        serde_json::to_string_pretty(&doc).expect("document serializes")
    }
}
