//! Scalar and matrix arithmetic shared by all suites: exact rationals,
//! float kernels, backend tagging, tolerances, and seeded sampling.

pub mod cmat;
pub mod exact;
pub mod float;
pub mod sampling;
pub mod tolerance;

pub use cmat::{mat_add, mat_mul, AlgebraError, Backend, CMat4};
pub use exact::{ExactComplex, ExactMat4};
pub use float::{FiveVector, Mat4, RMat, RMat4, RMat5, Spinor, C64};
pub use sampling::{derive_seed, random_spinor, random_unit_spinor, rng_for};
pub use tolerance::{approx_zero, MaxMag, TolerancePolicy};
