//! Five anticommuting 4×4 matrices and the spin transformations they generate.
//!
//! The canonical set uses the Dirac representation for the first four
//! matrices and takes the fifth as i·γ⁵, so the full set satisfies
//! (1/2){γ^m, γ^n} = η^{mn}·I exactly with η = diag(1,−1,−1,−1,−1).
//! All entries are exact rationals; the float copies are derived views.

use thiserror::Error;

use crate::algebra::cmat::CMat4;
use crate::algebra::exact::{ExactComplex, ExactMat4};
use crate::algebra::float::{Mat4, RMat5, Spinor, C64};

/// Flat five-metric diag(1,−1,−1,−1,−1).
pub const ETA: [f64; 5] = [1.0, -1.0, -1.0, -1.0, -1.0];

/// Conjugation parity of each canonical generator times its metric sign:
/// entrywise conjugation sends γ^m to ±γ^m in the fixed representation
/// (γ² and γ⁴ are imaginary), and the product of that sign with η^{mm}
/// controls how conjugate-sector bilinears transform.
pub const CONJUGATION_PARITY: [f64; 5] = [1.0, -1.0, 1.0, -1.0, 1.0];

#[derive(Debug, Error)]
pub enum CliffordError {
    #[error("anticommutator violation at pair ({m}, {n})")]
    AnticommutatorViolation { m: usize, n: usize },
    #[error("generator axes must differ")]
    SameAxis,
    #[error("axis {0} out of range 0..5")]
    AxisOutOfRange(usize),
    #[error("rotation parameter {0} exceeds the supported range |theta| <= 10")]
    ThetaOutOfRange(f64),
}

/// The five generators, exact and float, plus γ⁵.
#[derive(Clone, Debug)]
pub struct GammaSet {
    exact: [ExactMat4; 5],
    float: [Mat4; 5],
    gamma5_exact: ExactMat4,
    gamma5_float: Mat4,
}

/// Dirac-representation γ⁰..γ³ as exact integer matrices.
fn dirac_four() -> [ExactMat4; 4] {
    let g0 = ExactMat4::from_int_pairs([
        [(1, 0), (0, 0), (0, 0), (0, 0)],
        [(0, 0), (1, 0), (0, 0), (0, 0)],
        [(0, 0), (0, 0), (-1, 0), (0, 0)],
        [(0, 0), (0, 0), (0, 0), (-1, 0)],
    ]);
    // Spatial block structure [[0, σ_i], [−σ_i, 0]].
    let g1 = ExactMat4::from_int_pairs([
        [(0, 0), (0, 0), (0, 0), (1, 0)],
        [(0, 0), (0, 0), (1, 0), (0, 0)],
        [(0, 0), (-1, 0), (0, 0), (0, 0)],
        [(-1, 0), (0, 0), (0, 0), (0, 0)],
    ]);
    let g2 = ExactMat4::from_int_pairs([
        [(0, 0), (0, 0), (0, 0), (0, -1)],
        [(0, 0), (0, 0), (0, 1), (0, 0)],
        [(0, 0), (0, 1), (0, 0), (0, 0)],
        [(0, -1), (0, 0), (0, 0), (0, 0)],
    ]);
    let g3 = ExactMat4::from_int_pairs([
        [(0, 0), (0, 0), (1, 0), (0, 0)],
        [(0, 0), (0, 0), (0, 0), (-1, 0)],
        [(-1, 0), (0, 0), (0, 0), (0, 0)],
        [(0, 0), (1, 0), (0, 0), (0, 0)],
    ]);
    [g0, g1, g2, g3]
}

impl GammaSet {
    /// Canonical construction: Dirac γ⁰..γ³, then γ⁵ = iγ⁰γ¹γ²γ³ and
    /// γ⁴ = iγ⁵, so (γ⁴)² = −I matches η⁴⁴ = −1.
    pub fn dirac() -> Self {
        let [g0, g1, g2, g3] = dirac_four();
        let i = ExactComplex::i();
        let gamma5 = g0.mul(&g1).mul(&g2).mul(&g3).scale(&i);
        let g4 = gamma5.scale(&i);
        Self::custom_with_gamma5([g0, g1, g2, g3, g4], gamma5)
    }

    /// Unchecked constructor for arbitrary candidate sets; γ⁵ is rebuilt
    /// from the first four generators.
    pub fn custom(gammas: [ExactMat4; 5]) -> Self {
        let gamma5 = gammas[0]
            .mul(&gammas[1])
            .mul(&gammas[2])
            .mul(&gammas[3])
            .scale(&ExactComplex::i());
        Self::custom_with_gamma5(gammas, gamma5)
    }

    fn custom_with_gamma5(gammas: [ExactMat4; 5], gamma5: ExactMat4) -> Self {
        let float = std::array::from_fn(|m| gammas[m].to_float());
        let gamma5_float = gamma5.to_float();
        Self {
            exact: gammas,
            float,
            gamma5_exact: gamma5,
            gamma5_float,
        }
    }

    pub fn exact(&self, m: usize) -> &ExactMat4 {
        &self.exact[m]
    }

    pub fn float(&self, m: usize) -> &Mat4 {
        &self.float[m]
    }

    pub fn gamma5_exact(&self) -> &ExactMat4 {
        &self.gamma5_exact
    }

    pub fn gamma5(&self) -> &Mat4 {
        &self.gamma5_float
    }

    /// Backend-tagged view of generator `m`.
    pub fn gamma_cmat(&self, m: usize) -> CMat4 {
        CMat4::Exact(self.exact[m].clone())
    }

    /// η^{mn} as an exact scalar.
    pub fn eta_exact(m: usize, n: usize) -> ExactComplex {
        if m != n {
            ExactComplex::zero()
        } else if m == 0 {
            ExactComplex::one()
        } else {
            ExactComplex::from_ints(-1, 0)
        }
    }

    /// Table of (1/2){γ^m, γ^n}, certified against η^{mn}·I; the first
    /// violating pair is reported as an error.
    pub fn anticommutator_table(&self) -> Result<AnticommutatorTable, CliffordError> {
        let half = ExactComplex::from_ratio(1, 2);
        let table = AnticommutatorTable(std::array::from_fn(|m| {
            std::array::from_fn(|n| {
                self.exact[m]
                    .mul(&self.exact[n])
                    .add(&self.exact[n].mul(&self.exact[m]))
                    .scale(&half)
            })
        }));
        for m in 0..5 {
            for n in 0..5 {
                let expect = ExactMat4::identity().scale(&Self::eta_exact(m, n));
                if table.0[m][n] != expect {
                    return Err(CliffordError::AnticommutatorViolation { m, n });
                }
            }
        }
        Ok(table)
    }

    /// Same table without certification, for inspecting bad candidate sets.
    pub fn anticommutator_table_unchecked(&self) -> AnticommutatorTable {
        let half = ExactComplex::from_ratio(1, 2);
        AnticommutatorTable(std::array::from_fn(|m| {
            std::array::from_fn(|n| {
                self.exact[m]
                    .mul(&self.exact[n])
                    .add(&self.exact[n].mul(&self.exact[m]))
                    .scale(&half)
            })
        }))
    }

    /// Chirality projectors (1 ± γ⁵)/2, exact.
    pub fn chirality_projectors(&self) -> (ExactMat4, ExactMat4) {
        let half = ExactComplex::from_ratio(1, 2);
        let id = ExactMat4::identity();
        let plus = id.add(&self.gamma5_exact).scale(&half);
        let minus = id.sub(&self.gamma5_exact).scale(&half);
        (plus, minus)
    }

    /// Spin transformation for the (m, n) generator plane.
    ///
    /// The spinor factor is s = exp((θ/4)[γ^n, γ^m]). Two 5×5 plane
    /// transforms ride along:
    ///
    /// * `lambda_spin` = exp(θ·G), G^k_l = η^{km}δ^n_l − η^{kn}δ^m_l,
    ///   satisfying the conjugation identity s γ^k s⁻¹ = Σ_l λ^k_l γ^l;
    /// * `lambda`, the matrix by which five-displacements built from
    ///   (ζ, dξ) actually transform when both spinors are mapped by s.
    ///
    /// The two coincide on planes where the conjugation parities of the
    /// axes differ and are mutual inverses where they agree — the
    /// conjugate term of the displacement map reverses the rotation sense
    /// in exactly those planes. Both are η-orthogonal transforms of the
    /// same (m, n) plane.
    pub fn spin_generator(
        &self,
        m: usize,
        n: usize,
        theta: f64,
    ) -> Result<SpinTransform, CliffordError> {
        if m >= 5 {
            return Err(CliffordError::AxisOutOfRange(m));
        }
        if n >= 5 {
            return Err(CliffordError::AxisOutOfRange(n));
        }
        if m == n {
            return Err(CliffordError::SameAxis);
        }
        if theta.abs() > 10.0 {
            return Err(CliffordError::ThetaOutOfRange(theta));
        }

        // [γ^n, γ^m]/4 = γ^n γ^m / 2 for distinct anticommuting axes.
        let generator = self.float[n].mul(&self.float[m]).scale(C64::new(0.5, 0.0));
        let s = generator.scale(C64::new(theta, 0.0)).expm();
        let s_inv = generator.scale(C64::new(-theta, 0.0)).expm();

        let mut g = RMat5::zero();
        for k in 0..5 {
            for l in 0..5 {
                let mut v = 0.0;
                if k == m && l == n {
                    v += ETA[m];
                }
                if k == n && l == m {
                    v -= ETA[n];
                }
                g.set(k, l, v);
            }
        }
        let lambda_spin = g.scale(theta).expm();
        let twist = -CONJUGATION_PARITY[m] * CONJUGATION_PARITY[n];
        let lambda = g.scale(twist * theta).expm();

        Ok(SpinTransform {
            s,
            s_inv,
            lambda,
            lambda_spin,
            plane: (m, n),
            theta,
        })
    }
}

/// 5×5 array of exact anticommutator halves.
#[derive(Debug)]
pub struct AnticommutatorTable(pub [[ExactMat4; 5]; 5]);

impl AnticommutatorTable {
    pub fn entry(&self, m: usize, n: usize) -> &ExactMat4 {
        &self.0[m][n]
    }
}

/// A spinor-space transformation with its five-vector images.
#[derive(Clone, Copy, Debug)]
pub struct SpinTransform {
    pub s: Mat4,
    pub s_inv: Mat4,
    /// Plane transform carried by displacement images.
    pub lambda: RMat5,
    /// Plane transform appearing in the gamma conjugation identity.
    pub lambda_spin: RMat5,
    pub plane: (usize, usize),
    pub theta: f64,
}

impl SpinTransform {
    pub fn identity() -> Self {
        Self {
            s: Mat4::identity(),
            s_inv: Mat4::identity(),
            lambda: RMat5::identity(),
            lambda_spin: RMat5::identity(),
            plane: (0, 1),
            theta: 0.0,
        }
    }

    pub fn apply(&self, psi: &Spinor) -> Spinor {
        self.s.mul_vec(psi)
    }

    /// Max-norm defect of s γ^k s⁻¹ − Σ_l λ_spin^k_l γ^l over all k.
    pub fn conjugation_residual(&self, g: &GammaSet) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..5 {
            let lhs = self.s.mul(g.float(k)).mul(&self.s_inv);
            let mut rhs = Mat4::zero();
            for l in 0..5 {
                rhs = rhs.add(&g.float(l).scale(C64::new(self.lambda_spin.get(k, l), 0.0)));
            }
            worst = worst.max(lhs.sub(&rhs).max_norm());
        }
        worst
    }

    /// Max-norm defect of λᵀ η λ − η for both plane transforms.
    pub fn metric_residual(&self) -> f64 {
        let eta = RMat5::diag(ETA);
        let defect = |lam: &RMat5| lam.transpose().mul(&eta).mul(lam).sub(&eta).max_norm();
        defect(&self.lambda).max(defect(&self.lambda_spin))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::sampling::rng_for;
    use rand::Rng;

    #[test]
    fn anticommutators_match_flat_metric_exactly() {
        let g = GammaSet::dirac();
        let table = g.anticommutator_table().expect("canonical set certifies");
        // Spot-check the printed cases: (0,0) → +I, (4,4) → −I, (0,3) → 0.
        assert_eq!(*table.entry(0, 0), ExactMat4::identity());
        assert_eq!(
            *table.entry(4, 4),
            ExactMat4::identity().scale(&ExactComplex::from_ints(-1, 0))
        );
        assert!(table.entry(0, 3).is_zero());
        // Symmetry of the table.
        for m in 0..5 {
            for n in 0..5 {
                assert_eq!(table.entry(m, n), table.entry(n, m));
            }
        }
    }

    #[test]
    fn gamma0_squared_is_identity() {
        let g = GammaSet::dirac();
        assert_eq!(g.exact(0).mul(g.exact(0)), ExactMat4::identity());
    }

    #[test]
    fn bad_fifth_generator_flagged_at_4_4() {
        let g = GammaSet::dirac();
        // Replace γ⁴ by γ⁵ itself (dropping the i): (γ⁵)² = +I ≠ −I.
        let bad = GammaSet::custom([
            g.exact(0).clone(),
            g.exact(1).clone(),
            g.exact(2).clone(),
            g.exact(3).clone(),
            g.gamma5_exact().clone(),
        ]);
        match bad.anticommutator_table() {
            Err(CliffordError::AnticommutatorViolation { m: 4, n: 4 }) => {}
            other => panic!("expected violation at (4,4), got {other:?}"),
        }
        let table = bad.anticommutator_table_unchecked();
        assert_eq!(*table.entry(4, 4), ExactMat4::identity());
    }

    #[test]
    fn hermiticity_pattern() {
        let g = GammaSet::dirac();
        assert_eq!(g.exact(0).dagger(), *g.exact(0));
        for m in 1..5 {
            assert_eq!(g.exact(m).dagger(), g.exact(m).neg(), "axis {m}");
        }
        assert_eq!(g.gamma5_exact().dagger(), *g.gamma5_exact());
    }

    #[test]
    fn gamma5_algebra_exact() {
        let g = GammaSet::dirac();
        let g5 = g.gamma5_exact();
        assert_eq!(g5.mul(g5), ExactMat4::identity());
        for m in 0..4 {
            let anti = g5.mul(g.exact(m)).add(&g.exact(m).mul(g5));
            assert!(anti.is_zero(), "gamma5 must anticommute with axis {m}");
        }
    }

    #[test]
    fn projectors_are_exact_idempotents() {
        let g = GammaSet::dirac();
        let (p, q) = g.chirality_projectors();
        assert_eq!(p.mul(&p), p);
        assert_eq!(q.mul(&q), q);
        assert!(p.mul(&q).is_zero());
        assert_eq!(p.add(&q), ExactMat4::identity());
    }

    #[test]
    fn positive_chirality_spinor_is_fixed_by_projector() {
        let g = GammaSet::dirac();
        let (p, _) = g.chirality_projectors();
        let inv_sqrt2 = C64::new(1.0 / 2.0_f64.sqrt(), 0.0);
        let psi = Spinor([inv_sqrt2, C64::ZERO, inv_sqrt2, C64::ZERO]);
        let projected = p.to_float().mul_vec(&psi);
        assert!(projected.sub(&psi).max_mag() < 1e-15);
    }

    use crate::algebra::tolerance::MaxMag;

    #[test]
    fn zero_angle_gives_identities() {
        let g = GammaSet::dirac();
        let st = g.spin_generator(1, 2, 0.0).unwrap();
        assert!(st.s.sub(&Mat4::identity()).max_norm() < 1e-15);
        assert!(st.lambda.sub(&RMat5::identity()).max_norm() < 1e-15);
    }

    #[test]
    fn quarter_turn_maps_gamma1_to_gamma2() {
        let g = GammaSet::dirac();
        let st = g.spin_generator(1, 2, std::f64::consts::FRAC_PI_2).unwrap();
        let conj = st.s_inv.mul(g.float(1)).mul(&st.s);
        assert!(conj.sub(g.float(2)).max_norm() < 1e-10);
        // λ is the quarter rotation of the (1,2) plane.
        assert!(st.metric_residual() < 1e-10);
        assert!(st.lambda.get(1, 2).abs() - 1.0 < 1e-10);
        assert!(st.lambda.get(0, 0) - 1.0 < 1e-12);
    }

    #[test]
    fn unit_boost_has_cosh_sinh_entries() {
        let g = GammaSet::dirac();
        let st = g.spin_generator(0, 1, 1.0).unwrap();
        assert!((st.lambda.get(0, 0) - 1f64.cosh()).abs() < 1e-10);
        assert!((st.lambda.get(1, 1) - 1f64.cosh()).abs() < 1e-10);
        assert!((st.lambda.get(0, 1).abs() - 1f64.sinh()).abs() < 1e-10);
        assert!(st.metric_residual() < 1e-10);
    }

    #[test]
    fn conjugation_identity_over_random_planes() {
        let g = GammaSet::dirac();
        let mut rng = rng_for(0, "clifford.conjugation.unit");
        for _ in 0..20 {
            let m = rng.random_range(0..5usize);
            let mut n = rng.random_range(0..5usize);
            while n == m {
                n = rng.random_range(0..5usize);
            }
            let theta = rng.random_range(-2.0..2.0);
            let st = g.spin_generator(m, n, theta).unwrap();
            assert!(
                st.conjugation_residual(&g) < 1e-8,
                "plane ({m},{n}) theta {theta}"
            );
            assert!(st.metric_residual() < 1e-8);
        }
    }

    #[test]
    fn oversized_angle_refused() {
        let g = GammaSet::dirac();
        assert!(matches!(
            g.spin_generator(0, 1, 10.5),
            Err(CliffordError::ThetaOutOfRange(_))
        ));
        assert!(matches!(
            g.spin_generator(2, 2, 0.1),
            Err(CliffordError::SameAxis)
        ));
    }

    #[test]
    fn similarity_transform_preserves_the_algebra() {
        use crate::algebra::sampling::random_exact_invertible;
        let g = GammaSet::dirac();
        let mut rng = rng_for(0, "clifford.similarity.unit");
        for _ in 0..3 {
            let (s, s_inv) = random_exact_invertible(&mut rng);
            let conjugated = GammaSet::custom(std::array::from_fn(|m| {
                s_inv.mul(g.exact(m)).mul(&s)
            }));
            assert!(conjugated.anticommutator_table().is_ok());
        }
    }
}
