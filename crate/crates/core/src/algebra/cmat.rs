//! Backend-tagged 4×4 complex matrix.
//!
//! A matrix is either exact (rational entries) or float; arithmetic across
//! backends is rejected rather than silently promoted, so every exact
//! certification stays exact end to end.

use thiserror::Error;

use crate::algebra::exact::{ExactComplex, ExactMat4};
use crate::algebra::float::{Mat4, C64};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("backend mismatch: {0} vs {1}")]
    BackendMismatch(Backend, Backend),
    #[error("invalid tolerance policy: {0}")]
    InvalidPolicy(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Backend::Exact => write!(f, "exact"),
            Backend::Float => write!(f, "float"),
        }
    }
}

/// 4×4 complex matrix with a uniform per-matrix backend tag.
#[derive(Clone, Debug, PartialEq)]
pub enum CMat4 {
    Exact(ExactMat4),
    Float(Mat4),
}

impl CMat4 {
    pub fn backend(&self) -> Backend {
        match self {
            CMat4::Exact(_) => Backend::Exact,
            CMat4::Float(_) => Backend::Float,
        }
    }

    pub fn exact_identity() -> Self {
        CMat4::Exact(ExactMat4::identity())
    }

    pub fn float_identity() -> Self {
        CMat4::Float(Mat4::identity())
    }

    pub fn to_float(&self) -> Mat4 {
        match self {
            CMat4::Exact(m) => m.to_float(),
            CMat4::Float(m) => *m,
        }
    }

    pub fn as_exact(&self) -> Option<&ExactMat4> {
        match self {
            CMat4::Exact(m) => Some(m),
            CMat4::Float(_) => None,
        }
    }

    pub fn scale_exact(&self, s: &ExactComplex) -> Option<Self> {
        self.as_exact().map(|m| CMat4::Exact(m.scale(s)))
    }

    pub fn scale_float(&self, s: C64) -> Self {
        match self {
            CMat4::Exact(m) => CMat4::Float(m.to_float().scale(s)),
            CMat4::Float(m) => CMat4::Float(m.scale(s)),
        }
    }
}

/// Standard matrix product; exact backend yields exact entries.
pub fn mat_mul(a: &CMat4, b: &CMat4) -> Result<CMat4, AlgebraError> {
    match (a, b) {
        (CMat4::Exact(x), CMat4::Exact(y)) => Ok(CMat4::Exact(x.mul(y))),
        (CMat4::Float(x), CMat4::Float(y)) => Ok(CMat4::Float(x.mul(y))),
        _ => Err(AlgebraError::BackendMismatch(a.backend(), b.backend())),
    }
}

pub fn mat_add(a: &CMat4, b: &CMat4) -> Result<CMat4, AlgebraError> {
    match (a, b) {
        (CMat4::Exact(x), CMat4::Exact(y)) => Ok(CMat4::Exact(x.add(y))),
        (CMat4::Float(x), CMat4::Float(y)) => Ok(CMat4::Float(x.add(y))),
        _ => Err(AlgebraError::BackendMismatch(a.backend(), b.backend())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_times_identity() {
        let i = CMat4::exact_identity();
        assert_eq!(mat_mul(&i, &i).unwrap(), i);
        let f = CMat4::float_identity();
        assert_eq!(mat_mul(&f, &f).unwrap(), f);
    }

    #[test]
    fn mixed_backend_rejected() {
        let e = CMat4::exact_identity();
        let f = CMat4::float_identity();
        assert!(matches!(
            mat_mul(&e, &f),
            Err(AlgebraError::BackendMismatch(Backend::Exact, Backend::Float))
        ));
        assert!(mat_add(&f, &e).is_err());
    }
}
