//! Verification kernels for a spinor-geometric model of the electron:
//! exact Clifford-algebra certification, an eight-to-five dimensional
//! displacement map, five-dimensional plane-wave solutions, bilinear
//! covariant identities, conformally flat curvature, and the five-metric
//! assembly, together with the randomized suites that certify them.

pub mod algebra;
pub mod bilinears;
pub mod clifford;
pub mod conformal;
pub mod eightmap;
pub mod fivegeom;
pub mod report;
pub mod suites;
pub mod waves;

pub use algebra::{TolerancePolicy, C64};
pub use clifford::{GammaSet, SpinTransform};
pub use report::SuiteReport;
pub use suites::{run, SuiteConfig, SuiteId};
