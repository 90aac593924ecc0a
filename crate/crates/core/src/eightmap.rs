//! The eight-to-five dimensional displacement map.
//!
//! Four complex coordinate differentials dξ^A (paired with their
//! conjugates) are contracted against the gamma matrices, a spin frame ζ,
//! and the spinor metric ε = diag(1,1,−1,−1) to produce a real
//! five-displacement:
//!
//! ```text
//! dx^m = Σ ζ_A γ^m[A][B] ε_B conj(dξ_B)  +  Σ conj(ζ_A) γ̄^m[A][B] ε_B dξ_B
//! ```
//!
//! The second (conjugate-sector) term is printed with barred indices whose
//! contraction order is ambiguous; both candidate orders are implemented
//! behind [`IndexConvention`] and the shipping default is the one whose
//! displacements come out real, which the other order violently fails.

use thiserror::Error;

use crate::algebra::exact::ExactComplex;
use crate::algebra::float::{FiveVector, Spinor, C64};
use crate::algebra::sampling::{random_c64, rng_for};
use crate::clifford::{GammaSet, SpinTransform};

#[derive(Debug, Error)]
pub enum EightMapError {
    #[error("spin frame must be finite and nonzero")]
    DegenerateFrame,
    #[error("no index convention satisfies the realness property")]
    NoRealConvention,
}

/// Four complex displacement components; the conjugate half of the eight
/// real coordinates is always derived, never stored.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EightDisplacement {
    pub dxi: [C64; 4],
}

impl EightDisplacement {
    pub fn new(dxi: [C64; 4]) -> Self {
        Self { dxi }
    }

    pub fn zero() -> Self {
        Self { dxi: [C64::ZERO; 4] }
    }

    /// Pair real and imaginary coordinate increments into dξ^A = xr^A + i·xi^A.
    pub fn pair_coordinates(xr: [f64; 4], xi: [f64; 4]) -> Self {
        Self {
            dxi: std::array::from_fn(|a| C64::new(xr[a], xi[a])),
        }
    }

    /// The derived conjugates dξ^Ā.
    pub fn conjugates(&self) -> [C64; 4] {
        std::array::from_fn(|a| self.dxi[a].conj())
    }

    pub fn real_parts(&self) -> [f64; 4] {
        std::array::from_fn(|a| self.dxi[a].re)
    }

    pub fn imag_parts(&self) -> [f64; 4] {
        std::array::from_fn(|a| self.dxi[a].im)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dxi: std::array::from_fn(|a| s * self.dxi[a]),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            dxi: std::array::from_fn(|a| self.dxi[a] + rhs.dxi[a]),
        }
    }

    pub fn transform(&self, st: &SpinTransform) -> Self {
        let v = st.s.mul_vec(&Spinor(self.dxi));
        Self { dxi: v.0 }
    }
}

/// Spinor metric ε = diag(1,1,−1,−1); its own inverse, signature (2,2).
pub struct SpinorMetric;

impl SpinorMetric {
    pub const DIAG: [f64; 4] = [1.0, 1.0, -1.0, -1.0];

    pub fn diag_exact(a: usize) -> ExactComplex {
        if a < 2 {
            ExactComplex::one()
        } else {
            ExactComplex::from_ints(-1, 0)
        }
    }

    pub fn apply(v: &Spinor) -> Spinor {
        Spinor(std::array::from_fn(|a| Self::DIAG[a] * v.0[a]))
    }
}

/// Relative orientation of the spin space.
#[derive(Clone, Copy, Debug)]
pub struct SpinFrame {
    zeta: Spinor,
}

impl SpinFrame {
    pub fn new(zeta: Spinor) -> Result<Self, EightMapError> {
        if !zeta.is_finite() || zeta.norm() == 0.0 {
            return Err(EightMapError::DegenerateFrame);
        }
        Ok(Self { zeta })
    }

    pub fn zeta(&self) -> &Spinor {
        &self.zeta
    }

    pub fn transform(&self, st: &SpinTransform) -> Self {
        Self {
            zeta: st.s.mul_vec(&self.zeta),
        }
    }
}

/// Contraction order of the conjugate-sector term. The bar of conjugation
/// sits on an index, so the print leaves open which slot of the conjugated
/// gamma matrix the frame contracts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IndexConvention {
    /// Conjugated frame contracts the row index of γ̄ (default; real).
    #[default]
    FrameRow,
    /// The displacement contracts the row index of γ̄ (fails realness).
    DisplacementRow,
}

impl IndexConvention {
    pub fn name(&self) -> &'static str {
        match self {
            IndexConvention::FrameRow => "frame-row",
            IndexConvention::DisplacementRow => "displacement-row",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "frame-row" => Some(IndexConvention::FrameRow),
            "displacement-row" => Some(IndexConvention::DisplacementRow),
            _ => None,
        }
    }
}

/// Both terms of the displacement, kept complex so the realness property
/// can be measured rather than enforced.
pub fn displacement_complex(
    dxi: &EightDisplacement,
    frame: &SpinFrame,
    g: &GammaSet,
    conv: IndexConvention,
) -> [C64; 5] {
    let zeta = frame.zeta().0;
    let eps = SpinorMetric::DIAG;
    std::array::from_fn(|m| {
        let gm = g.float(m);
        let mut first = C64::ZERO;
        let mut second = C64::ZERO;
        for a in 0..4 {
            for b in 0..4 {
                let e = gm.get(a, b);
                first += zeta[a] * e * eps[b] * dxi.dxi[b].conj();
                match conv {
                    IndexConvention::FrameRow => {
                        second += zeta[a].conj() * e.conj() * eps[b] * dxi.dxi[b];
                    }
                    IndexConvention::DisplacementRow => {
                        second += dxi.dxi[a] * e.conj() * eps[b] * zeta[b].conj();
                    }
                }
            }
        }
        first + second
    })
}

/// The real five-displacement image of (dξ, ζ).
pub fn displacement_5d(
    dxi: &EightDisplacement,
    frame: &SpinFrame,
    g: &GammaSet,
    conv: IndexConvention,
) -> FiveVector {
    let z = displacement_complex(dxi, frame, g, conv);
    FiveVector(std::array::from_fn(|m| z[m].re))
}

/// Largest imaginary part left over by the two-term sum.
pub fn imag_residual(
    dxi: &EightDisplacement,
    frame: &SpinFrame,
    g: &GammaSet,
    conv: IndexConvention,
) -> f64 {
    displacement_complex(dxi, frame, g, conv)
        .iter()
        .map(|z| z.im.abs())
        .fold(0.0, f64::max)
}

/// Exact-backend displacement for rational inputs; with the default
/// convention the imaginary parts cancel identically.
pub fn displacement_exact(
    dxi: &[ExactComplex; 4],
    zeta: &[ExactComplex; 4],
    g: &GammaSet,
    conv: IndexConvention,
) -> [ExactComplex; 5] {
    std::array::from_fn(|m| {
        let gm = g.exact(m);
        let mut acc = ExactComplex::zero();
        for a in 0..4 {
            for b in 0..4 {
                let e = gm.get(a, b);
                let eps_b = SpinorMetric::diag_exact(b);
                let first = &(&(&zeta[a] * e) * &eps_b) * &dxi[b].conj();
                let second = match conv {
                    IndexConvention::FrameRow => {
                        &(&(&zeta[a].conj() * &e.conj()) * &eps_b) * &dxi[b]
                    }
                    IndexConvention::DisplacementRow => {
                        &(&(&dxi[a] * &e.conj()) * &eps_b) * &zeta[b].conj()
                    }
                };
                acc = &acc + &(&first + &second);
            }
        }
        acc
    })
}

/// Coefficients ∂x^m/∂ξ^Ā of the map, read off the dξ̄ slot.
pub fn displacement_gradient(frame: &SpinFrame, g: &GammaSet) -> [[C64; 4]; 5] {
    let zeta = frame.zeta().0;
    std::array::from_fn(|m| {
        let gm = g.float(m);
        std::array::from_fn(|b| {
            let mut c = C64::ZERO;
            for a in 0..4 {
                c += zeta[a] * gm.get(a, b);
            }
            c * SpinorMetric::DIAG[b]
        })
    })
}

/// Realness oracle: returns the unique convention whose displacements are
/// real to machine precision over `trials` random samples.
pub fn select_index_convention(
    g: &GammaSet,
    seed: u64,
    trials: u64,
) -> Result<IndexConvention, EightMapError> {
    let candidates = [IndexConvention::FrameRow, IndexConvention::DisplacementRow];
    let mut rng = rng_for(seed, "map.convention_oracle");
    let mut passing = Vec::new();
    for conv in candidates {
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for _ in 0..trials {
            let dxi = EightDisplacement::new(std::array::from_fn(|_| random_c64(&mut rng)));
            let frame = SpinFrame::new(crate::algebra::sampling::random_spinor(&mut rng)).unwrap();
            worst = worst.max(imag_residual(&dxi, &frame, g, conv));
            scale = scale.max(
                displacement_complex(&dxi, &frame, g, conv)
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max),
            );
        }
        if worst <= 1e-13 * scale.max(1.0) {
            passing.push(conv);
        }
    }
    match passing.as_slice() {
        [one] => Ok(*one),
        _ => Err(EightMapError::NoRealConvention),
    }
}

/// Residual of the covariance law dx(S·dξ, S·ζ) = λ·dx(dξ, ζ).
pub fn lorentz_equivariance_residual(
    st: &SpinTransform,
    dxi: &EightDisplacement,
    frame: &SpinFrame,
    g: &GammaSet,
    conv: IndexConvention,
) -> f64 {
    let lhs = displacement_5d(&dxi.transform(st), &frame.transform(st), g, conv);
    let rhs = FiveVector(st.lambda.mul_array(&displacement_5d(dxi, frame, g, conv).0));
    lhs.sub(&rhs).0.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Compares the eight-space wave operator route against the direct
/// gamma-contraction route on a plane wave with wave vector `k`.
///
/// Route one sends ε^{ĀB}∂_Ā through the coordinate map's ∂x^m/∂ξ^Ā;
/// route two applies ζ^D γ^m[D][B] ∂_m directly. The two agree as an
/// operator identity whether or not `k` satisfies the mass shell.
pub fn chain_rule_residual(
    frame: &SpinFrame,
    g: &GammaSet,
    k: &FiveVector,
) -> f64 {
    let grad = displacement_gradient(frame, g);
    let zeta = frame.zeta().0;
    let i = C64::new(0.0, 1.0);

    let mut worst: f64 = 0.0;
    for b in 0..4 {
        // ε^{B̄B}·(i k_m ∂x^m/∂ξ^B̄)
        let mut route1 = C64::ZERO;
        for m in 0..5 {
            route1 += i * k.0[m] * grad[m][b];
        }
        route1 *= SpinorMetric::DIAG[b];

        // ζ^D γ^m[D][B]·(i k_m)
        let mut route2 = C64::ZERO;
        for m in 0..5 {
            let gm = g.float(m);
            for d in 0..4 {
                route2 += i * k.0[m] * zeta[d] * gm.get(d, b);
            }
        }
        worst = worst.max((route1 - route2).norm());
    }
    let scale = k.norm() * Spinor(zeta).norm() + 1e-30;
    worst / scale
}
