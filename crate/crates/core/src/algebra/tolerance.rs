//! Shared tolerance policy for all floating-point suites.

use serde::{Deserialize, Serialize};

use crate::algebra::cmat::AlgebraError;
use crate::algebra::float::{FiveVector, Mat4, RMat, Spinor, C64};

/// Absolute/relative tolerance pair plus the trial count and seed shared by
/// randomized suites. Checked identities are low-degree polynomials in
/// bounded inputs, so a single default pair covers them all.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub trials: u64,
    pub seed: u64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            trials: 1000,
            seed: 0,
        }
    }
}

impl TolerancePolicy {
    pub fn validate(&self) -> Result<(), AlgebraError> {
        if self.abs_tol <= 0.0 || self.rel_tol <= 0.0 {
            return Err(AlgebraError::InvalidPolicy(
                "tolerances must be positive".into(),
            ));
        }
        if self.trials < 1 {
            return Err(AlgebraError::InvalidPolicy(
                "trial count must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale
    }
}

/// Anything with a max-magnitude norm that can be tested against zero.
pub trait MaxMag {
    fn max_mag(&self) -> f64;
}

impl MaxMag for f64 {
    fn max_mag(&self) -> f64 {
        self.abs()
    }
}

impl MaxMag for C64 {
    fn max_mag(&self) -> f64 {
        self.norm()
    }
}

impl MaxMag for Mat4 {
    fn max_mag(&self) -> f64 {
        self.max_norm()
    }
}

impl<const N: usize> MaxMag for RMat<N> {
    fn max_mag(&self) -> f64 {
        self.max_norm()
    }
}

impl MaxMag for Spinor {
    fn max_mag(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl MaxMag for FiveVector {
    fn max_mag(&self) -> f64 {
        self.0.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }
}

impl MaxMag for [f64] {
    fn max_mag(&self) -> f64 {
        self.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }
}

/// True iff the max magnitude of `x` is within `abs_tol + rel_tol·scale`.
pub fn approx_zero<T: MaxMag + ?Sized>(x: &T, pol: &TolerancePolicy, scale: f64) -> bool {
    assert!(scale >= 0.0, "scale must be non-negative");
    x.max_mag() <= pol.threshold(scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_approx_zero_under_any_policy() {
        let pol = TolerancePolicy::default();
        assert!(approx_zero(&0.0, &pol, 0.0));
        assert!(approx_zero(&C64::ZERO, &pol, 1e6));
    }

    #[test]
    fn small_value_within_abs_tol() {
        let pol = TolerancePolicy::default();
        assert!(approx_zero(&1e-15, &pol, 0.0));
    }

    #[test]
    fn large_value_rejected() {
        let pol = TolerancePolicy::default();
        assert!(!approx_zero(&1e-3, &pol, 1.0));
    }

    #[test]
    fn invalid_policies_rejected() {
        let mut pol = TolerancePolicy::default();
        pol.abs_tol = 0.0;
        assert!(pol.validate().is_err());
        let mut pol = TolerancePolicy::default();
        pol.trials = 0;
        assert!(pol.validate().is_err());
    }
}
