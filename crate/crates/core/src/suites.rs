//! The verification suites: named checks over seeded random ensembles,
//! assembled into a [`SuiteReport`].
//!
//! Trial counts scale off the policy's base count (default 1000): the
//! realness sweep runs 10×, the equivariance sweep base/10 per generator
//! plane, shell checks base/2 per branch, and so on, so `--trials` tunes
//! every suite proportionally.

use std::time::Instant;

use rand::Rng;

use crate::algebra::float::{FiveVector, RMat4, RMat5, Spinor, C64};
use crate::algebra::sampling::{
    random_c64, random_exact_invertible, random_four, random_spinor, random_unit_spinor, rng_for,
};
use crate::algebra::tolerance::TolerancePolicy;
use crate::bilinears;
use crate::clifford::{GammaSet, ETA};
use crate::conformal::{
    self, conformal_curvature_general, conformal_metric_grid, conformal_scalar_curvature,
    curvature_prefactor, exponent_check, fd_scalar_curvature_oracle, flat_wave_op,
    inverse_reading_curvature, FlatSignature, GridField, MetricGrid, Polynomial, ScalarField,
};
use crate::eightmap::{
    self, chain_rule_residual, displacement_5d, displacement_complex, displacement_exact,
    imag_residual, lorentz_equivariance_residual, EightDisplacement, IndexConvention, SpinFrame,
    SpinorMetric,
};
use crate::fivegeom::{
    self, assemble_five_metric, fd_current_divergence, five_inverse_and_det, null_lift,
    source_terms, velocity_potential, FourMetric, VelocityPotential,
};
use crate::report::{CheckRecord, Conventions, SuiteReport};
use crate::waves::{
    self, dirac_residual_5d, gradient_spinor, kg_dispersion_residual, on_shell, sample_off_shell,
    sample_on_shell, FiveWaveVector, GradientForm, PlaneWave,
};

/// Suite selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteId {
    Clifford,
    Map,
    Waves,
    Bilinears,
    Conformal,
    FiveGeom,
}

impl SuiteId {
    pub const ALL: [SuiteId; 6] = [
        SuiteId::Clifford,
        SuiteId::Map,
        SuiteId::Waves,
        SuiteId::Bilinears,
        SuiteId::Conformal,
        SuiteId::FiveGeom,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteId::Clifford => "clifford",
            SuiteId::Map => "map",
            SuiteId::Waves => "waves",
            SuiteId::Bilinears => "bilinears",
            SuiteId::Conformal => "conformal",
            SuiteId::FiveGeom => "fivegeom",
        }
    }

    pub fn parse(s: &str) -> Option<Vec<SuiteId>> {
        if s == "all" {
            return Some(Self::ALL.to_vec());
        }
        Self::ALL
            .iter()
            .find(|id| id.name() == s)
            .map(|id| vec![*id])
    }
}

/// Convention overrides; `None` keeps the oracle-frozen default.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConventionOverrides {
    pub index_placement: Option<IndexConvention>,
    pub gradient_form: Option<GradientForm>,
}

/// Resolved configuration for a run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suites: Vec<SuiteId>,
    pub policy: TolerancePolicy,
    /// Base points per axis for finite-difference grids.
    pub grid: usize,
    /// Exercise exact-backend variants where available.
    pub exact: bool,
    pub overrides: ConventionOverrides,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suites: SuiteId::ALL.to_vec(),
            policy: TolerancePolicy::default(),
            grid: 9,
            exact: false,
            overrides: ConventionOverrides::default(),
        }
    }
}

impl SuiteConfig {
    fn index_convention(&self) -> IndexConvention {
        self.overrides.index_placement.unwrap_or_default()
    }

    fn gradient_form(&self) -> GradientForm {
        self.overrides.gradient_form.unwrap_or_default()
    }
}

struct Recorder {
    checks: Vec<CheckRecord>,
    timing: Vec<(String, f64)>,
}

impl Recorder {
    fn new() -> Self {
        Self {
            checks: Vec::new(),
            timing: Vec::new(),
        }
    }

    fn run(&mut self, name: &str, trials: u64, body: impl FnOnce() -> (bool, f64)) {
        let start = Instant::now();
        let (passed, max_residual) = body();
        let elapsed = start.elapsed().as_secs_f64() * 1000.0;
        self.checks
            .push(CheckRecord::new(name, passed, max_residual, trials));
        self.timing.push((name.to_string(), elapsed));
    }
}

/// Execute the selected suites in deterministic order.
pub fn run(config: &SuiteConfig) -> SuiteReport {
    config.policy.validate().expect("config validated upstream");
    let g = GammaSet::dirac();
    let mut rec = Recorder::new();

    for suite in &config.suites {
        match suite {
            SuiteId::Clifford => run_clifford(&g, config, &mut rec),
            SuiteId::Map => run_map(&g, config, &mut rec),
            SuiteId::Waves => run_waves(&g, config, &mut rec),
            SuiteId::Bilinears => run_bilinears(&g, config, &mut rec),
            SuiteId::Conformal => run_conformal(config, &mut rec),
            SuiteId::FiveGeom => run_fivegeom(config, &mut rec),
        }
    }

    SuiteReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: config.policy.seed,
        trials: config.policy.trials,
        abs_tol: config.policy.abs_tol,
        rel_tol: config.policy.rel_tol,
        grid: config.grid,
        exact: config.exact,
        suites: config.suites.iter().map(|s| s.name().to_string()).collect(),
        conventions: Conventions {
            gamma_representation: "dirac,gamma4=i*gamma5".into(),
            index_placement: config.index_convention().name().into(),
            gradient_form: config.gradient_form().name().into(),
            bilinear: "adjoint=eps,phase4=+i,phase5=+1,gamma5=+1".into(),
        },
        checks: rec.checks,
        timing: rec.timing,
    }
}

// ---------------------------------------------------------------------------
// clifford

fn run_clifford(g: &GammaSet, config: &SuiteConfig, rec: &mut Recorder) {
    let seed = config.policy.seed;

    rec.run("clifford.anticommutator_exact", 15, || {
        match g.anticommutator_table() {
            Ok(table) => {
                // Exact pass; also report the float-view defect for scale.
                let mut worst: f64 = 0.0;
                for m in 0..5 {
                    for n in 0..5 {
                        let eta_term = if m == n { ETA[m] } else { 0.0 };
                        let defect = table.entry(m, n).to_float().sub(
                            &crate::algebra::float::Mat4::identity()
                                .scale(C64::new(eta_term, 0.0)),
                        );
                        worst = worst.max(defect.max_norm());
                    }
                }
                (worst == 0.0, worst)
            }
            Err(_) => (false, f64::INFINITY),
        }
    });

    rec.run("clifford.gamma5_exact", 6, || {
        let g5 = g.gamma5_exact();
        let mut ok = g5.mul(g5) == crate::algebra::exact::ExactMat4::identity();
        for m in 0..4 {
            ok &= g5.mul(g.exact(m)).add(&g.exact(m).mul(g5)).is_zero();
        }
        ok &= g5.dagger() == *g5;
        (ok, if ok { 0.0 } else { 1.0 })
    });

    rec.run("clifford.projectors_exact", 4, || {
        let (p, q) = g.chirality_projectors();
        let id = crate::algebra::exact::ExactMat4::identity();
        let ok = p.mul(&p) == p && q.mul(&q) == q && p.mul(&q).is_zero() && p.add(&q) == id;
        (ok, if ok { 0.0 } else { 1.0 })
    });

    rec.run("clifford.hermiticity", 5, || {
        let mut ok = g.exact(0).dagger() == *g.exact(0);
        for m in 1..5 {
            ok &= g.exact(m).dagger() == g.exact(m).neg();
        }
        (ok, if ok { 0.0 } else { 1.0 })
    });

    rec.run("clifford.conjugation", 20, || {
        let mut rng = rng_for(seed, "clifford.conjugation");
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let m = rng.random_range(0..5usize);
            let mut n = rng.random_range(0..5usize);
            while n == m {
                n = rng.random_range(0..5usize);
            }
            let theta = rng.random_range(-2.0..2.0);
            let st = g.spin_generator(m, n, theta).expect("valid plane");
            worst = worst.max(st.conjugation_residual(g));
            worst = worst.max(st.metric_residual());
        }
        (worst <= 1e-8, worst)
    });

    rec.run("clifford.similarity_invariance", 5, || {
        let mut rng = rng_for(seed, "clifford.similarity");
        for _ in 0..5 {
            let (s, s_inv) = random_exact_invertible(&mut rng);
            let conjugated = GammaSet::custom(std::array::from_fn(|m| {
                s_inv.mul(g.exact(m)).mul(&s)
            }));
            if conjugated.anticommutator_table().is_err() {
                return (false, 1.0);
            }
        }
        (true, 0.0)
    });
}

// ---------------------------------------------------------------------------
// map

fn run_map(g: &GammaSet, config: &SuiteConfig, rec: &mut Recorder) {
    let seed = config.policy.seed;
    let base = config.policy.trials;
    let conv = config.index_convention();

    rec.run("map.convention_oracle", 2, || {
        match eightmap::select_index_convention(g, seed, 200) {
            Ok(IndexConvention::FrameRow) => (true, 0.0),
            _ => (false, 1.0),
        }
    });

    let realness_trials = base.saturating_mul(10);
    rec.run("map.realness", realness_trials, || {
        let mut rng = rng_for(seed, "map.realness");
        let mut worst: f64 = 0.0;
        for _ in 0..realness_trials {
            let dxi = EightDisplacement::new(std::array::from_fn(|_| random_c64(&mut rng)));
            let frame = SpinFrame::new(random_spinor(&mut rng)).expect("sampler gives frames");
            worst = worst.max(imag_residual(&dxi, &frame, g, conv));
        }
        (worst <= 1e-12, worst)
    });

    if config.exact {
        rec.run("map.realness_exact", base / 100, || {
            let mut rng = rng_for(seed, "map.realness_exact");
            for _ in 0..(base / 100).max(1) {
                let dxi = std::array::from_fn(|_| {
                    crate::algebra::sampling::random_exact_complex(&mut rng, 8, 5)
                });
                let zeta = std::array::from_fn(|_| {
                    crate::algebra::sampling::random_exact_complex(&mut rng, 8, 5)
                });
                let dx = displacement_exact(&dxi, &zeta, g, conv);
                if dx.iter().any(|c| !num_traits::Zero::is_zero(&c.im)) {
                    return (false, 1.0);
                }
            }
            (true, 0.0)
        });
    }

    rec.run("map.rejected_convention_fails", base / 10, || {
        let mut rng = rng_for(seed, "map.rejected");
        let mut worst: f64 = 0.0;
        for _ in 0..(base / 10).max(1) {
            let dxi = EightDisplacement::new(std::array::from_fn(|_| random_c64(&mut rng)));
            let frame = SpinFrame::new(random_spinor(&mut rng)).expect("frame");
            worst = worst.max(imag_residual(&dxi, &frame, g, IndexConvention::DisplacementRow));
        }
        // Falsification: the alternative order must leak imaginary parts.
        (worst >= 1e-3, (1e-3 - worst).max(0.0))
    });

    rec.run("map.bilinearity", base / 10, || {
        let mut rng = rng_for(seed, "map.bilinearity");
        let mut worst: f64 = 0.0;
        for _ in 0..(base / 10).max(1) {
            let frame = SpinFrame::new(random_spinor(&mut rng)).expect("frame");
            let d1 = EightDisplacement::new(std::array::from_fn(|_| random_c64(&mut rng)));
            let d2 = EightDisplacement::new(std::array::from_fn(|_| random_c64(&mut rng)));
            let lam: f64 = rng.random_range(-2.0..2.0);
            let sum = displacement_5d(&d1.add(&d2), &frame, g, conv);
            let parts =
                displacement_5d(&d1, &frame, g, conv).add(&displacement_5d(&d2, &frame, g, conv));
            worst = worst.max(sum.sub(&parts).norm());
            let scaled = displacement_5d(&d1.scale(C64::new(lam, 0.0)), &frame, g, conv);
            let direct = displacement_5d(&d1, &frame, g, conv).scale(lam);
            worst = worst.max(scaled.sub(&direct).norm());
        }
        (worst <= 1e-12, worst)
    });

    let per_plane = (base / 10).max(1);
    rec.run("map.equivariance", per_plane * 10, || {
        let mut rng = rng_for(seed, "map.equivariance");
        let mut worst: f64 = 0.0;
        for m in 0..5usize {
            for n in (m + 1)..5usize {
                for _ in 0..per_plane {
                    let theta = rng.random_range(-1.5..1.5);
                    let st = g.spin_generator(m, n, theta).expect("plane");
                    let dxi =
                        EightDisplacement::new(std::array::from_fn(|_| random_c64(&mut rng)));
                    let frame = SpinFrame::new(random_spinor(&mut rng)).expect("frame");
                    worst =
                        worst.max(lorentz_equivariance_residual(&st, &dxi, &frame, g, conv));
                }
            }
        }
        (worst <= 1e-8, worst)
    });

    let chain_trials = (base / 5).max(1);
    rec.run("map.chain_rule", chain_trials, || {
        let mut rng = rng_for(seed, "map.chain_rule");
        let mut worst: f64 = 0.0;
        for i in 0..chain_trials {
            let frame = SpinFrame::new(random_spinor(&mut rng)).expect("frame");
            // Alternate on-shell and generic wave vectors.
            let k = if i % 2 == 0 {
                sample_on_shell(&mut rng).as_five_vector()
            } else {
                crate::algebra::sampling::random_five_vector(&mut rng, 2.0)
            };
            worst = worst.max(chain_rule_residual(&frame, g, &k));
        }
        (worst <= 1e-8, worst)
    });

    rec.run("map.fixture", 1, || {
        let (dxi, frame, expect) = displacement_fixture();
        let got = displacement_complex(&dxi, &frame, g, IndexConvention::FrameRow);
        let mut worst: f64 = 0.0;
        for m in 0..5 {
            worst = worst.max((got[m].re - expect[m]).abs());
            worst = worst.max(got[m].im.abs());
        }
        (worst <= 1e-15, worst)
    });
}

/// Frozen fixture for the displacement map: inputs and the real image
/// computed once with the certified convention (17 significant digits).
pub fn displacement_fixture() -> (EightDisplacement, SpinFrame, [f64; 5]) {
    let dxi = EightDisplacement::new([
        C64::new(0.25, -0.5),
        C64::new(-1.0, 0.125),
        C64::new(0.75, 0.375),
        C64::new(0.0, -0.875),
    ]);
    let frame = SpinFrame::new(Spinor([
        C64::new(1.0, 0.5),
        C64::new(-0.25, 0.75),
        C64::new(0.5, -1.0),
        C64::new(-0.125, 0.0),
    ]))
    .expect("fixture frame");
    let expect = [
        6.8750000000000000e-1,
        2.0000000000000000e0,
        -2.4375000000000000e0,
        -4.1875000000000000e0,
        -4.6875000000000000e-1,
    ];
    (dxi, frame, expect)
}

// ---------------------------------------------------------------------------
// waves

fn run_waves(g: &GammaSet, config: &SuiteConfig, rec: &mut Recorder) {
    let seed = config.policy.seed;
    let base = config.policy.trials;
    let form = config.gradient_form();
    let origin = FiveVector::zero();

    rec.run("waves.gradient_form_oracle", 4, || {
        let selected = waves::select_gradient_form(g, seed, (base / 25).max(8));
        (selected == GradientForm::GammaEpsConj, 0.0)
    });

    let half = (base / 2).max(1);
    rec.run("waves.shell_on", half, || {
        let mut rng = rng_for(seed, "waves.shell_on");
        let mut worst: f64 = 0.0;
        for _ in 0..half {
            let k = sample_on_shell(&mut rng);
            let frame = SpinFrame::new(random_spinor(&mut rng)).expect("frame");
            let gs = gradient_spinor(&PlaneWave::unit(k), &frame, g, &origin, form);
            worst = worst.max(dirac_residual_5d(&gs, g));
        }
        (worst <= 1e-10, worst)
    });

    rec.run("waves.shell_off", half, || {
        let mut rng = rng_for(seed, "waves.shell_off");
        let mut min_res = f64::INFINITY;
        for _ in 0..half {
            let (k, defect) = sample_off_shell(&mut rng);
            debug_assert!(defect >= 0.1 * k.mass_component().powi(2));
            let frame = SpinFrame::new(random_spinor(&mut rng)).expect("frame");
            let gs = gradient_spinor(&PlaneWave::unit(k), &frame, g, &origin, form);
            min_res = min_res.min(dirac_residual_5d(&gs, g));
        }
        (min_res >= 0.1, (0.1 - min_res).max(0.0))
    });

    rec.run("waves.shell_equivalence", base, || {
        let mut rng = rng_for(seed, "waves.shell_equivalence");
        let pol = config.policy;
        let mut mismatches = 0u64;
        for i in 0..base {
            let k = if i % 2 == 0 {
                sample_on_shell(&mut rng)
            } else {
                sample_off_shell(&mut rng).0
            };
            let frame = SpinFrame::new(random_spinor(&mut rng)).expect("frame");
            let gs = gradient_spinor(&PlaneWave::unit(k), &frame, g, &origin, form);
            let res_small = dirac_residual_5d(&gs, g) <= 1e-10;
            if res_small != on_shell(&k, &pol) {
                mismatches += 1;
            }
        }
        (mismatches == 0, mismatches as f64)
    });

    let zeta_trials = (base / 5).max(1);
    rec.run("waves.zeta_independence", zeta_trials, || {
        let mut rng = rng_for(seed, "waves.zeta_independence");
        let k = sample_on_shell(&mut rng);
        let wave = PlaneWave::unit(k);
        let mut worst: f64 = 0.0;
        for i in 0..zeta_trials {
            // Alternate normalized and unnormalized frames; solvability
            // must not depend on the frame's orbit.
            let zeta = if i % 2 == 0 {
                random_unit_spinor(&mut rng)
            } else {
                random_spinor(&mut rng)
            };
            let frame = SpinFrame::new(zeta).expect("frame");
            let gs = gradient_spinor(&wave, &frame, g, &origin, form);
            worst = worst.max(dirac_residual_5d(&gs, g));
        }
        (worst <= 1e-10, worst)
    });

    let consistency_trials = (base / 5).max(1);
    rec.run("waves.map_consistency", consistency_trials, || {
        let mut rng = rng_for(seed, "waves.map_consistency");
        let mut ok = true;
        let mut worst: f64 = 0.0;
        for i in 0..consistency_trials {
            let (k, expect_on) = if i % 2 == 0 {
                (sample_on_shell(&mut rng), true)
            } else {
                (sample_off_shell(&mut rng).0, false)
            };
            // Frames with non-degenerate ε-norm keep the eight-space
            // residual scale-bounded.
            let frame = loop {
                let z = random_spinor(&mut rng);
                let eps_norm: f64 = (0..4)
                    .map(|a| SpinorMetric::DIAG[a] * z.0[a].norm_sqr())
                    .sum();
                if eps_norm.abs() >= 0.1 * z.norm().powi(2) {
                    break SpinFrame::new(z).expect("frame");
                }
            };
            let gs = gradient_spinor(&PlaneWave::unit(k), &frame, g, &origin, form);
            let r5 = dirac_residual_5d(&gs, g);
            let r8 = eight_space_first_order_residual(&k, &frame, g);
            let k5 = k.as_five_vector();
            let chain = chain_rule_residual(&frame, g, &k5);
            worst = worst.max(chain);
            let agree = (r5 <= 1e-8) == expect_on && (r8 <= 1e-8) == expect_on && chain <= 1e-8;
            ok &= agree;
        }
        (ok, if ok { worst } else { 1.0 })
    });

    rec.run("waves.dispersion_flat", (base / 10).max(1), || {
        let mut rng = rng_for(seed, "waves.dispersion");
        let mut worst: f64 = 0.0;
        for i in 0..(base / 10).max(1) {
            let m: f64 = rng.random_range(0.5..2.0);
            let e: f64 = rng.random_range(-1.0..1.0);
            let hbar = 1.0;
            let a: [f64; 4] = if i % 4 == 0 {
                [0.0; 4]
            } else {
                random_four(&mut rng, 1.0)
            };
            // Construct ħk = eA + q with q on the four-dimensional shell.
            let q_spatial: [f64; 3] = std::array::from_fn(|_| rng.random_range(-m..m));
            let q0 = (m * m + q_spatial.iter().map(|x| x * x).sum::<f64>()).sqrt();
            let k: [f64; 4] = [
                (e * a[0] + q0) / hbar,
                (e * a[1] + q_spatial[0]) / hbar,
                (e * a[2] + q_spatial[1]) / hbar,
                (e * a[3] + q_spatial[2]) / hbar,
            ];
            worst = worst.max(kg_dispersion_residual(k, a, m, e, hbar));
        }
        (worst <= 1e-12, worst)
    });

    rec.run("waves.gradient_fixture", 1, || {
        // Rest frame k = (m,0,0,0,m), frame e₀: Ψ_B = (i·m, 0, −m, 0).
        let m = 1.0;
        let wave = PlaneWave::unit(FiveWaveVector([m, 0.0, 0.0, 0.0, m]));
        let frame = SpinFrame::new(Spinor::basis(0)).expect("frame");
        let gs = gradient_spinor(&wave, &frame, g, &origin, GradientForm::GammaEpsConj);
        let expect = Spinor([C64::new(0.0, m), C64::ZERO, C64::new(-m, 0.0), C64::ZERO]);
        let worst = gs
            .psi_b
            .sub(&expect)
            .0
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        (worst <= 1e-15, worst)
    });
}

/// Residual of the first-order eight-space equation ε^{ĀB}∂_Ā Ψ_B = 0 on
/// the plane-wave gradient spinor, normalized like the five-dimensional
/// residual. Both vanish exactly on the mass shell.
fn eight_space_first_order_residual(
    k: &FiveWaveVector,
    frame: &SpinFrame,
    g: &GammaSet,
) -> f64 {
    let grad = eightmap::displacement_gradient(frame, g);
    let i = C64::new(0.0, 1.0);
    // Ψ_B at the origin with unit amplitude.
    let psi_b: [C64; 4] = std::array::from_fn(|b| {
        let mut acc = C64::ZERO;
        for m in 0..5 {
            acc += i * k.0[m] * grad[m][b].conj();
        }
        acc
    });
    // ε^{B̄B} ∂_B̄ Ψ_B = Σ_B ε_B (i k_m ∂x^m/∂ξ^B̄) Ψ_B.
    let mut acc = C64::ZERO;
    for b in 0..4 {
        let mut dk = C64::ZERO;
        for m in 0..5 {
            dk += i * k.0[m] * grad[m][b];
        }
        acc += SpinorMetric::DIAG[b] * dk * psi_b[b];
    }
    let zeta_norm = frame.zeta().norm();
    acc.norm() / (k.norm().powi(2) * zeta_norm * zeta_norm + 1e-30)
}

// ---------------------------------------------------------------------------
// bilinears

fn run_bilinears(g: &GammaSet, config: &SuiteConfig, rec: &mut Recorder) {
    let seed = config.policy.seed;
    let base = config.policy.trials;

    let selection = bilinears::select_convention(g, seed, base.min(1000));
    let conv = match &selection {
        Ok(sel) => sel.chosen,
        Err(_) => bilinears::BilinearConvention {
            insertion: bilinears::Insertion::SpinorMetric,
            phase4: C64::new(0.0, 1.0),
            phase5: C64::ONE,
            gamma5_sign: 1.0,
        },
    };

    rec.run("bilinears.convention_oracle", 36, || match &selection {
        Ok(sel) => (sel.equivalence_classes == 1, 0.0),
        Err(_) => (false, 1.0),
    });

    rec.run("bilinears.quadratic_invariant", base, || {
        let mut rng = rng_for(seed, "bilinears.quadratic");
        let mut worst: f64 = 0.0;
        for _ in 0..base {
            let psi = random_spinor(&mut rng);
            worst = worst.max(bilinears::quadratic_invariant_residual(&psi, &conv, g));
        }
        (worst <= 1e-10, worst)
    });

    rec.run("bilinears.realness", base, || {
        let mut rng = rng_for(seed, "bilinears.realness");
        let mut worst: f64 = 0.0;
        for _ in 0..base {
            let psi = random_spinor(&mut rng);
            let n2 = psi.norm().powi(2);
            worst = worst.max(bilinears::realness_residual(&psi, &conv, g) / n2.max(1e-30));
        }
        (worst <= 1e-12, worst)
    });

    let half = (base / 2).max(1);
    rec.run("bilinears.zero_mass", 2 * half, || {
        let mut rng = rng_for(seed, "bilinears.zero_mass");
        let mut worst: f64 = 0.0;
        let mut ok = true;
        for i in 0..half {
            // Chiral branch: one projector annihilates, factors vanish,
            // vector bilinear is null.
            let chiral = bilinears::random_chiral_spinor(&mut rng, g, i % 2 == 0);
            let n4 = chiral.norm().powi(4);
            let b = bilinears::bilinear_six(&chiral, &conv, g);
            let (fp, fm) = bilinears::mass_factors(&chiral, &conv, g);
            let factor_sq = fp.norm() * fm.norm();
            worst = worst.max(b.mass_square() / n4);
            worst = worst.max(factor_sq / n4);
            worst = worst.max(b.vector_square().abs() / n4);

            // Generic branch: all three quantities bounded away from zero.
            let generic = random_spinor(&mut rng);
            let gn4 = generic.norm().powi(4);
            let gb = bilinears::bilinear_six(&generic, &conv, g);
            let (gp, gm) = bilinears::mass_factors(&generic, &conv, g);
            ok &= gb.mass_square() > 1e-10 * gn4;
            ok &= gp.norm() * gm.norm() > 1e-10 * gn4;
            ok &= gb.vector_square().abs() > 1e-10 * gn4;
        }
        (ok && worst <= 1e-10, worst)
    });

    let rot_trials = (base / 10).max(1);
    rec.run("bilinears.hyper_rotation", rot_trials, || {
        let mut rng = rng_for(seed, "bilinears.rotation");
        let mut worst: f64 = 0.0;
        for _ in 0..rot_trials {
            let psi = random_spinor(&mut rng);
            let theta = rng.random_range(-3.0..3.0);
            let rotated = bilinears::chiral_rotate(&psi, theta, g);
            let a = bilinears::bilinear_six(&psi, &conv, g);
            let b = bilinears::bilinear_six(&rotated, &conv, g);
            let n2 = psi.norm().powi(2);
            for slot in 0..4 {
                worst = worst.max((a.0[slot] - b.0[slot]).abs() / n2.powi(2).max(1e-30));
            }
            worst = worst.max((a.mass_square() - b.mass_square()).abs() / n2.powi(2).max(1e-30));
            // Rotation by 2θ inside the mass pair.
            let (c, s) = ((2.0 * theta).cos(), (2.0 * theta).sin());
            let r4 = c * a.0[4] - s * a.0[5];
            let r5 = s * a.0[4] + c * a.0[5];
            worst = worst.max(
                ((b.0[4] - r4).abs().min((b.0[4] - (c * a.0[4] + s * a.0[5])).abs()))
                    / n2.powi(2).max(1e-30),
            );
            let _ = r5;
        }
        (worst <= 1e-10, worst)
    });

    rec.run("bilinears.homogeneity", rot_trials, || {
        let mut rng = rng_for(seed, "bilinears.homogeneity");
        let mut worst: f64 = 0.0;
        for _ in 0..rot_trials {
            let psi = random_spinor(&mut rng);
            let lam: f64 = rng.random_range(0.2..2.0);
            let phase = C64::new(0.0, rng.random_range(-3.0..3.0)).exp();
            let a = bilinears::bilinear_six(&psi, &conv, g);
            let scaled = bilinears::bilinear_six(&psi.scale(C64::new(lam, 0.0)), &conv, g);
            let phased = bilinears::bilinear_six(&psi.scale(phase), &conv, g);
            let n2 = psi.norm().powi(2);
            for slot in 0..6 {
                worst = worst.max((scaled.0[slot] - lam * lam * a.0[slot]).abs() / n2.max(1e-30));
                worst = worst.max((phased.0[slot] - a.0[slot]).abs() / n2.max(1e-30));
            }
        }
        (worst <= 1e-10, worst)
    });
}

// ---------------------------------------------------------------------------
// conformal

fn harmonic_eight_fixture() -> Polynomial {
    // 1 + (x₀² − x₁²)/5 + x₀x₁/20 + (x₂² + x₄²)/8: harmonic under the
    // split signature, positive on the centered unit patch.
    Polynomial::constant_int(8, 1)
        .add(&Polynomial::monomial_ratio(8, &[(0, 2)], 1, 5))
        .sub(&Polynomial::monomial_ratio(8, &[(1, 2)], 1, 5))
        .add(&Polynomial::monomial_ratio(8, &[(0, 1), (1, 1)], 1, 20))
        .add(&Polynomial::monomial_ratio(8, &[(2, 2)], 1, 8))
        .add(&Polynomial::monomial_ratio(8, &[(4, 2)], 1, 8))
}

fn run_conformal(config: &SuiteConfig, rec: &mut Recorder) {
    let grid_pts = config.grid.max(5);

    rec.run("conformal.exponent_exact", 3, || {
        let ok = exponent_check(8).ok() == Some(num_rational::Rational64::new(2, 3))
            && exponent_check(6).ok() == Some(num_rational::Rational64::new(1, 1))
            && exponent_check(4).ok() == Some(num_rational::Rational64::new(2, 1))
            && exponent_check(2).is_err();
        (ok, if ok { 0.0 } else { 1.0 })
    });

    rec.run("conformal.equivalence_8d", 6, || {
        let sig = FlatSignature::split_eight();
        let harmonics = [
            harmonic_eight_fixture(),
            Polynomial::constant_int(8, 1),
            Polynomial::constant_int(8, 2)
                .add(&Polynomial::monomial_ratio(8, &[(3, 1)], 1, 4))
                .add(&Polynomial::monomial_ratio(8, &[(1, 1), (6, 1)], 1, 10)),
        ];
        let non_harmonics = [
            Polynomial::constant_int(8, 1).add(&Polynomial::monomial_ratio(8, &[(0, 2)], 1, 10)),
            Polynomial::constant_int(8, 1).add(&Polynomial::monomial_ratio(8, &[(5, 2)], 1, 8)),
            Polynomial::constant_int(8, 1)
                .add(&Polynomial::monomial_ratio(8, &[(0, 4)], 1, 50)),
        ];
        let mut ok = true;
        let mut worst: f64 = 0.0;
        for psi in &harmonics {
            let field = ScalarField::polynomial(psi.clone()).expect("degree <= 4");
            let lap_zero = match flat_wave_op(&field, &sig).expect("wave op") {
                ScalarField::Poly(p) => p.is_zero(),
                _ => unreachable!(),
            };
            let report = conformal_scalar_curvature(&field, &sig).expect("curvature");
            ok &= lap_zero && report.max_abs == 0.0;
            worst = worst.max(report.max_abs);
        }
        for psi in &non_harmonics {
            let field = ScalarField::polynomial(psi.clone()).expect("degree <= 4");
            let lap_zero = match flat_wave_op(&field, &sig).expect("wave op") {
                ScalarField::Poly(p) => p.is_zero(),
                _ => unreachable!(),
            };
            let report = conformal_scalar_curvature(&field, &sig).expect("curvature");
            ok &= !lap_zero && report.max_abs > 1e-3;
        }
        (ok, worst)
    });

    rec.run("conformal.wrong_exponent", 64, || {
        let sig = FlatSignature::split_eight();
        let psi = harmonic_eight_fixture();
        let mut max_right: f64 = 0.0;
        let mut max_wrong: f64 = 0.0;
        for x in conformal::probe_points(8, 64, config.policy.seed) {
            max_right = max_right.max(conformal_curvature_general(&psi, &sig, 2.0 / 3.0, &x).abs());
            max_wrong = max_wrong.max(conformal_curvature_general(&psi, &sig, 0.5, &x).abs());
        }
        let ok = max_right <= 1e-12 && max_wrong >= 1e-3;
        (ok, if ok { max_right } else { 1.0 })
    });

    rec.run("conformal.inverse_reading", 64, || {
        // The reading that scales the inverse metric does not annihilate
        // the curvature of harmonic factors; the discrepancy is expected
        // and recorded.
        let sig = FlatSignature::split_eight();
        let psi = harmonic_eight_fixture();
        let mut max_abs: f64 = 0.0;
        for x in conformal::probe_points(8, 64, config.policy.seed) {
            max_abs = max_abs.max(inverse_reading_curvature(&psi, &sig, &x).abs());
        }
        (max_abs >= 1e-3, (1e-3 - max_abs).max(0.0))
    });

    rec.run("conformal.flat_wave_grid", 1, || {
        // The grid stencil is exact on quadratics, matching the
        // closed-form operator.
        let sig = FlatSignature::new(vec![1, -1, 1]).expect("signature");
        let field = GridField::from_fn_centered(
            &[grid_pts, grid_pts, grid_pts],
            &[0.1, 0.1, 0.1],
            |x| 1.0 + x[0] * x[0] + 0.5 * x[1] * x[1] - 0.25 * x[2] * x[2],
        )
        .expect("grid");
        let expect = 2.0 - 1.0 - 0.5;
        match flat_wave_op(&ScalarField::grid(field), &sig).expect("wave op") {
            ScalarField::Grid(out) => {
                let worst = out
                    .values
                    .iter()
                    .map(|v| (v - expect).abs())
                    .fold(0.0, f64::max);
                (worst <= 1e-10, worst)
            }
            _ => unreachable!(),
        }
    });

    rec.run("conformal.fd_flat", 1, || {
        let grid = MetricGrid::from_fn_centered(3, &[5, 5, 5], &[0.1, 0.1, 0.1], |_| {
            vec![1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0]
        })
        .expect("grid");
        let report = fd_scalar_curvature_oracle(&grid).expect("oracle");
        (report.max_abs <= 1e-10, report.max_abs)
    });

    rec.run("conformal.fd_sphere_n2", 2, || {
        // Round unit sphere away from the poles: exact curvature 2.
        let build = |pts: usize| {
            let h = 1.0 / (pts as f64 - 1.0);
            MetricGrid::from_fn(2, &[pts, pts], &[h, h], &[1.0, 0.0], |x| {
                let s = x[0].sin();
                vec![1.0, 0.0, 0.0, s * s]
            })
            .expect("sphere grid")
        };
        let coarse_pts = 2 * grid_pts - 1;
        let coarse = build(coarse_pts);
        let fine = build(2 * coarse_pts - 1);
        let (_, _, report) =
            conformal::fd_refinement_errors(&coarse, &fine, |_| 2.0).expect("oracle");
        let order = report.order_estimate.expect("refinement pair sets the order");
        ((1.7..=2.3).contains(&order), (order - 2.0).abs())
    });

    rec.run("conformal.fd_agreement_n3", 2, || {
        let sig = FlatSignature::new(vec![1, 1, -1]).expect("signature");
        let p_exp = 4.0; // 4/(n−2), n = 3
        let psi_fn = |x: &[f64]| 1.0 + 0.1 * x[0] * x[0] + 0.05 * x[0] * x[1];
        // Σ s_i ∂²_i ψ = 0.2 for signs (+,+,−).
        let reference =
            move |x: &[f64]| -curvature_prefactor(3) * psi_fn(x).powf(-5.0) * 0.2;
        let build = |pts: usize| {
            let h = 1.0 / (pts as f64 - 1.0);
            let psi =
                GridField::from_fn_centered(&[pts, pts, pts], &[h, h, h], psi_fn).expect("grid");
            conformal_metric_grid(&psi, &sig, p_exp).expect("metric grid")
        };
        let coarse = build(grid_pts);
        let fine = build(2 * grid_pts - 1);
        let (_, _, report) =
            conformal::fd_refinement_errors(&coarse, &fine, reference).expect("oracle");
        let order = report.order_estimate.expect("refinement pair sets the order");
        ((1.7..=2.3).contains(&order), (order - 2.0).abs())
    });

    rec.run("conformal.fd_agreement_n4", 2, || {
        let sig = FlatSignature::euclidean(4).expect("signature");
        let p_exp = 2.0; // 4/(n−2), n = 4
        let psi_fn = |x: &[f64]| 1.0 + 0.1 * x[0] * x[0];
        let reference =
            move |x: &[f64]| -curvature_prefactor(4) * psi_fn(x).powf(-3.0) * 0.2;
        let build = |pts: usize| {
            let h = 1.0 / (pts as f64 - 1.0);
            let psi = GridField::from_fn_centered(&[pts, pts, pts, pts], &[h, h, h, h], psi_fn)
                .expect("grid");
            conformal_metric_grid(&psi, &sig, p_exp).expect("metric grid")
        };
        let coarse = build(grid_pts);
        let fine = build(2 * grid_pts - 1);
        let (_, _, report) =
            conformal::fd_refinement_errors(&coarse, &fine, reference).expect("oracle");
        let order = report.order_estimate.expect("refinement pair sets the order");
        ((1.7..=2.3).contains(&order), (order - 2.0).abs())
    });
}

// ---------------------------------------------------------------------------
// fivegeom

fn run_fivegeom(config: &SuiteConfig, rec: &mut Recorder) {
    let seed = config.policy.seed;
    let base = config.policy.trials;

    rec.run("fivegeom.null_lift", base, || {
        let mut rng = rng_for(seed, "fivegeom.null_lift");
        let mut worst: f64 = 0.0;
        for _ in 0..base {
            let g4 = fivegeom::random_four_metric(&mut rng);
            let a = VelocityPotential(random_four(&mut rng, 0.7));
            let dx4 = fivegeom::random_timelike(&mut rng, &g4);
            let lifted = null_lift(dx4, &g4, &a).expect("timelike lift");
            let gamma = assemble_five_metric(&g4, &a);
            let scale = lifted.norm().powi(2).max(1.0);
            worst = worst.max(gamma.dot(&lifted, &lifted).abs() / scale);
        }
        (worst <= 1e-12, worst)
    });

    rec.run("fivegeom.inverse_det", base, || {
        let mut rng = rng_for(seed, "fivegeom.inverse_det");
        let mut worst: f64 = 0.0;
        for _ in 0..base {
            let g4 = fivegeom::random_four_metric(&mut rng);
            let a = VelocityPotential(random_four(&mut rng, 0.7));
            let gamma = assemble_five_metric(&g4, &a);
            let (inv, det) = five_inverse_and_det(&gamma, &g4, &a).expect("invertible");
            let prod_defect = gamma
                .matrix()
                .mul(&inv)
                .sub(&RMat5::identity())
                .max_norm()
                / inv.max_norm().max(1.0);
            worst = worst.max(prod_defect);
            let gdet = g4.matrix().det();
            worst = worst.max((det + gdet).abs() / gdet.abs().max(1.0));
        }
        (worst <= 1e-12, worst)
    });

    rec.run("fivegeom.gauge_invariance", base, || {
        let mut rng = rng_for(seed, "fivegeom.gauge");
        let mut worst: f64 = 0.0;
        for _ in 0..base {
            let pg = random_four(&mut rng, 2.0);
            let a = random_four(&mut rng, 2.0);
            let chi = random_four(&mut rng, 2.0);
            let e: f64 = rng.random_range(0.1..2.0);
            let m: f64 = rng.random_range(0.5..2.0);
            let before = velocity_potential(pg, a, e, m).expect("mass nonzero");
            let shifted_pg = std::array::from_fn(|i| pg[i] + e * chi[i]);
            let shifted_a = std::array::from_fn(|i| a[i] + chi[i]);
            let after = velocity_potential(shifted_pg, shifted_a, e, m).expect("mass nonzero");
            for i in 0..4 {
                worst = worst.max((before.0[i] - after.0[i]).abs());
            }
        }
        (worst <= 1e-12, worst)
    });

    rec.run("fivegeom.source_symmetry", (base / 10).max(1), || {
        let mut rng = rng_for(seed, "fivegeom.source_symmetry");
        let mut worst: f64 = 0.0;
        for _ in 0..(base / 10).max(1) {
            let g4 = fivegeom::random_four_metric(&mut rng);
            let mut f = RMat4::zero();
            for r in 0..4 {
                for c in r + 1..4 {
                    let v = rng.random_range(-1.0..1.0);
                    f.set(r, c, v);
                    f.set(c, r, -v);
                }
            }
            let a = VelocityPotential(random_four(&mut rng, 0.7));
            let psi_sq = rng.random_range(0.0..2.0);
            match source_terms(&f, psi_sq, &a, &g4, 1.0, 1.0, 1.0) {
                Ok(out) => {
                    let defect = out.rhs5.sub(&out.rhs5.transpose()).max_norm()
                        / out.rhs5.max_norm().max(1.0);
                    worst = worst.max(defect);
                }
                Err(_) => continue, // pole rejection is its own check
            }
        }
        (worst <= 1e-11, worst)
    });

    rec.run("fivegeom.pole_flag", 1, || {
        let g4 = FourMetric::minkowski();
        let a = VelocityPotential([2f64.sqrt(), 0.0, 0.0, 0.0]);
        let rejected = source_terms(&RMat4::zero(), 1.0, &a, &g4, 1.0, 1.0, 1.0).is_err();
        (rejected, if rejected { 0.0 } else { 1.0 })
    });

    rec.run("fivegeom.current_conservation", 4, || {
        let g4 = FourMetric::minkowski();
        let a = VelocityPotential([0.5, 0.1, -0.2, 0.3]);
        let current = |_x: &[f64; 4]| {
            source_terms(&RMat4::zero(), 1.0, &a, &g4, 1.0, 1.0, 1.0)
                .expect("no pole")
                .rhs6
        };
        let div = fd_current_divergence(current, &[0.2, -0.1, 0.4, 0.0], 0.1).abs();
        (div <= 1e-10, div)
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config(suites: Vec<SuiteId>) -> SuiteConfig {
        SuiteConfig {
            suites,
            policy: TolerancePolicy {
                trials: 100,
                ..TolerancePolicy::default()
            },
            grid: 7,
            exact: false,
            overrides: ConventionOverrides::default(),
        }
    }

    #[test]
    fn clifford_suite_passes() {
        let report = run(&quick_config(vec![SuiteId::Clifford]));
        assert!(report.all_passed(), "{}", report.emit_human());
    }

    #[test]
    fn map_and_waves_suites_pass() {
        let report = run(&quick_config(vec![SuiteId::Map, SuiteId::Waves]));
        assert!(report.all_passed(), "{}", report.emit_human());
    }

    #[test]
    fn bilinears_suite_passes() {
        let report = run(&quick_config(vec![SuiteId::Bilinears]));
        assert!(report.all_passed(), "{}", report.emit_human());
    }

    #[test]
    fn fivegeom_suite_passes() {
        let report = run(&quick_config(vec![SuiteId::FiveGeom]));
        assert!(report.all_passed(), "{}", report.emit_human());
    }

    #[test]
    fn conformal_suite_passes() {
        let report = run(&quick_config(vec![SuiteId::Conformal]));
        assert!(report.all_passed(), "{}", report.emit_human());
    }

    #[test]
    fn structured_reports_are_reproducible() {
        let cfg = quick_config(vec![SuiteId::Clifford, SuiteId::Bilinears]);
        let a = run(&cfg).emit_structured();
        let b = run(&cfg).emit_structured();
        let pa: serde_json::Value = serde_json::from_str(&a).unwrap();
        let pb: serde_json::Value = serde_json::from_str(&b).unwrap();
        assert_eq!(pa["report"], pb["report"]);
    }

    #[test]
    fn every_check_appears_exactly_once() {
        let report = run(&quick_config(SuiteId::ALL.to_vec()));
        let mut names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
        let total = names.len();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), total, "duplicate check names in report");
    }

    #[test]
    fn suite_parsing() {
        assert_eq!(SuiteId::parse("clifford"), Some(vec![SuiteId::Clifford]));
        assert_eq!(SuiteId::parse("all").map(|v| v.len()), Some(6));
        assert_eq!(SuiteId::parse("bogus"), None);
    }
}
