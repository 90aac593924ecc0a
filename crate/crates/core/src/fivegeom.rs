//! Five-metric assembly from a four-metric and a velocity potential, the
//! null lift of four-displacements, and the printed source terms of the
//! coupled field equations.
//!
//! The five-metric has the block form
//!
//! ```text
//! γ_mn = [ g_μν − 𝒜_μ𝒜_ν   −𝒜_μ ]
//!        [ −𝒜_ν             −1  ]
//! ```
//!
//! whose inverse blocks are γ^{μν} = g^{μν}, γ^{μ4} = −g^{μα}𝒜_α,
//! γ^{44} = −1 + 𝒜², and whose determinant is −det(g); both identities are
//! certified against brute-force 5×5 inversion rather than assumed.

use thiserror::Error;

use crate::algebra::float::{FiveVector, RMat4, RMat5};

#[derive(Debug, Error)]
pub enum FiveGeomError {
    #[error("four-metric must be symmetric")]
    NotSymmetric,
    #[error("four-metric is singular")]
    SingularMetric,
    #[error("four-metric must have signature (+,-,-,-); inertia {plus}+/{minus}-")]
    WrongSignature { plus: usize, minus: usize },
    #[error("mass must be nonzero")]
    ZeroMass,
    #[error("displacement is spacelike; no real proper-time root")]
    SpacelikeDisplacement,
    #[error("five-metric is singular")]
    SingularFiveMetric,
    #[error("velocity potential square {0} is within 1e-6 of the pole at 2")]
    VelocityPole(f64),
}

/// Symmetric invertible 4×4 metric with signature (+,−,−,−).
#[derive(Clone, Copy, Debug)]
pub struct FourMetric {
    g: RMat4,
    g_inv: RMat4,
}

impl FourMetric {
    pub fn new(g: RMat4) -> Result<Self, FiveGeomError> {
        if !g.is_symmetric(1e-12 * g.max_norm().max(1.0)) {
            return Err(FiveGeomError::NotSymmetric);
        }
        let g_inv = g.inverse().ok_or(FiveGeomError::SingularMetric)?;
        let eigen = g.symmetric_eigenvalues();
        let plus = eigen.iter().filter(|&&e| e > 0.0).count();
        let minus = eigen.iter().filter(|&&e| e < 0.0).count();
        if (plus, minus) != (1, 3) {
            return Err(FiveGeomError::WrongSignature { plus, minus });
        }
        Ok(Self { g, g_inv })
    }

    pub fn minkowski() -> Self {
        Self::new(RMat4::diag([1.0, -1.0, -1.0, -1.0])).expect("flat metric is admissible")
    }

    pub fn matrix(&self) -> &RMat4 {
        &self.g
    }

    pub fn inverse(&self) -> &RMat4 {
        &self.g_inv
    }

    /// g_{μν} u^μ v^ν.
    pub fn dot(&self, u: &[f64; 4], v: &[f64; 4]) -> f64 {
        let gu = self.g.mul_array(u);
        (0..4).map(|i| gu[i] * v[i]).sum()
    }

    /// Raise an index: v^μ = g^{μν} v_ν.
    pub fn raise(&self, v: &[f64; 4]) -> [f64; 4] {
        self.g_inv.mul_array(v)
    }
}

/// Quantum-corrected kinetic four-velocity 𝒜_μ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VelocityPotential(pub [f64; 4]);

impl VelocityPotential {
    pub fn zero() -> Self {
        Self([0.0; 4])
    }

    /// 𝒜² = g^{μν} 𝒜_μ 𝒜_ν.
    pub fn square(&self, g: &FourMetric) -> f64 {
        let raised = g.raise(&self.0);
        (0..4).map(|i| raised[i] * self.0[i]).sum()
    }
}

/// 𝒜_ν = (∂_ν phase − e·A_ν)/m, the gauge-covariant phase velocity.
pub fn velocity_potential(
    phase_gradient: [f64; 4],
    a: [f64; 4],
    e: f64,
    m: f64,
) -> Result<VelocityPotential, FiveGeomError> {
    if m == 0.0 {
        return Err(FiveGeomError::ZeroMass);
    }
    Ok(VelocityPotential(std::array::from_fn(|nu| {
        (phase_gradient[nu] - e * a[nu]) / m
    })))
}

/// Symmetric 5×5 metric in block form.
#[derive(Clone, Copy, Debug)]
pub struct FiveMetric {
    gamma: RMat5,
}

impl FiveMetric {
    pub fn matrix(&self) -> &RMat5 {
        &self.gamma
    }

    /// γ_{mn} u^m v^n.
    pub fn dot(&self, u: &FiveVector, v: &FiveVector) -> f64 {
        let gu = self.gamma.mul_array(&u.0);
        (0..5).map(|i| gu[i] * v.0[i]).sum()
    }
}

/// Assemble γ_mn from the four-metric and the velocity potential.
pub fn assemble_five_metric(g: &FourMetric, a: &VelocityPotential) -> FiveMetric {
    let gm = g.matrix();
    let gamma = RMat5::from_fn(|r, c| match (r, c) {
        (4, 4) => -1.0,
        (4, mu) => -a.0[mu],
        (mu, 4) => -a.0[mu],
        (mu, nu) => gm.get(mu, nu) - a.0[mu] * a.0[nu],
    });
    FiveMetric { gamma }
}

/// Lift a timelike or null four-displacement to a null five-displacement:
/// dx⁴ = −𝒜_μ dx^μ − dτ with dτ = +√(g_{μν}dx^μdx^ν).
pub fn null_lift(
    dx4: [f64; 4],
    g: &FourMetric,
    a: &VelocityPotential,
) -> Result<FiveVector, FiveGeomError> {
    let interval = g.dot(&dx4, &dx4);
    if interval < 0.0 {
        return Err(FiveGeomError::SpacelikeDisplacement);
    }
    let dtau = interval.sqrt();
    let a_dot_dx: f64 = (0..4).map(|mu| a.0[mu] * dx4[mu]).sum();
    Ok(FiveVector([
        dx4[0],
        dx4[1],
        dx4[2],
        dx4[3],
        -a_dot_dx - dtau,
    ]))
}

/// Inverse and determinant of the five-metric by brute-force elimination,
/// cross-checked against the block-form candidate and det(γ) = −det(g).
pub fn five_inverse_and_det(
    gamma: &FiveMetric,
    g: &FourMetric,
    a: &VelocityPotential,
) -> Result<(RMat5, f64), FiveGeomError> {
    let inv = gamma
        .matrix()
        .inverse()
        .ok_or(FiveGeomError::SingularFiveMetric)?;
    let det = gamma.matrix().det();

    // Block-form candidate for the inverse.
    let gi = g.inverse();
    let a_up = g.raise(&a.0);
    let a_sq = a.square(g);
    let candidate = RMat5::from_fn(|r, c| match (r, c) {
        (4, 4) => -1.0 + a_sq,
        (4, mu) => -a_up[mu],
        (mu, 4) => -a_up[mu],
        (mu, nu) => gi.get(mu, nu),
    });

    let scale = inv.max_norm().max(1.0);
    debug_assert!(
        inv.sub(&candidate).max_norm() <= 1e-9 * scale,
        "block inverse candidate disagrees with elimination"
    );
    let _ = candidate;

    Ok((inv, det))
}

/// Right sides of the printed gravitational and electromagnetic field
/// equations.
#[derive(Clone, Copy, Debug)]
pub struct SourceTerms {
    /// Symmetric stress-like tensor with both indices raised.
    pub rhs5: RMat4,
    /// Current density 4πe|ψ|²𝒜^β.
    pub rhs6: [f64; 4],
}

/// Evaluate the source sides for a field strength F_{μν}, density |ψ|²,
/// velocity potential, and coupling constants. Inputs within 1e-6 of the
/// pole 𝒜² = 2 in the trace term are rejected.
#[allow(clippy::too_many_arguments)]
pub fn source_terms(
    f_lower: &RMat4,
    psi_sq: f64,
    a: &VelocityPotential,
    g: &FourMetric,
    m: f64,
    e: f64,
    kappa: f64,
) -> Result<SourceTerms, FiveGeomError> {
    assert!(psi_sq >= 0.0, "density must be non-negative");
    let antisym_defect = f_lower.add(&f_lower.transpose()).max_norm();
    assert!(
        antisym_defect <= 1e-12 * f_lower.max_norm().max(1.0),
        "field strength must be antisymmetric"
    );

    let a_sq = a.square(g);
    if (a_sq - 2.0).abs() < 1e-6 {
        return Err(FiveGeomError::VelocityPole(a_sq));
    }

    let gi = g.inverse();
    // F^α_μ F^{μβ} = (g⁻¹ F g⁻¹ F g⁻¹)^{αβ}.
    let em = gi.mul(f_lower).mul(gi).mul(f_lower).mul(gi);
    let a_up = g.raise(&a.0);
    let trace_coeff = m * psi_sq * (1.0 - a_sq) / (2.0 - a_sq);

    let rhs5 = RMat4::from_fn(|al, be| {
        8.0 * std::f64::consts::PI
            * kappa
            * (em.get(al, be) + m * psi_sq * a_up[al] * a_up[be] + trace_coeff * gi.get(al, be))
    });
    let rhs6 = std::array::from_fn(|be| 4.0 * std::f64::consts::PI * e * psi_sq * a_up[be]);

    Ok(SourceTerms { rhs5, rhs6 })
}

/// Divergence of the current field by centered differences over a uniform
/// grid of sampled values; the conservation anchor for constant
/// configurations.
pub fn fd_current_divergence(
    current_at: impl Fn(&[f64; 4]) -> [f64; 4],
    x0: &[f64; 4],
    h: f64,
) -> f64 {
    let mut div = 0.0;
    for mu in 0..4 {
        let mut xp = *x0;
        let mut xm = *x0;
        xp[mu] += h;
        xm[mu] -= h;
        div += (current_at(&xp)[mu] - current_at(&xm)[mu]) / (2.0 * h);
    }
    div
}

/// Random metric with the right signature: g = Lᵀ η L for a random
/// invertible L, by rejection on conditioning.
pub fn random_four_metric(rng: &mut impl rand::Rng) -> FourMetric {
    loop {
        let l = RMat4::from_fn(|r, c| {
            if r == c {
                rng.random_range(0.5..1.5)
            } else {
                rng.random_range(-0.3..0.3)
            }
        });
        let eta = RMat4::diag([1.0, -1.0, -1.0, -1.0]);
        let g = l.transpose().mul(&eta).mul(&l);
        if let Ok(metric) = FourMetric::new(g) {
            return metric;
        }
    }
}

/// Random future-pointing timelike displacement for the given metric.
pub fn random_timelike(rng: &mut impl rand::Rng, g: &FourMetric) -> [f64; 4] {
    loop {
        let spatial: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let dt = rng.random_range(0.1..3.0);
        let dx = [dt, spatial[0], spatial[1], spatial[2]];
        if g.dot(&dx, &dx) > 1e-6 {
            return dx;
        }
    }
}
