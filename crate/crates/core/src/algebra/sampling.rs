//! Seeded random sampling for the verification suites.
//!
//! Every suite derives its generator from (base seed, check tag), so runs
//! are reproducible and checks stay independent of execution order.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::exact::{ExactComplex, ExactMat4};
use crate::algebra::float::{FiveVector, Spinor, C64};

fn fnv1a(tag: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in tag.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Deterministic per-check seed derived from a base seed and a tag.
pub fn derive_seed(base: u64, tag: &str) -> u64 {
    splitmix64(base ^ fnv1a(tag))
}

pub fn rng_for(base_seed: u64, tag: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(base_seed, tag))
}

pub fn random_c64(rng: &mut impl Rng) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Random spinor with each coordinate from a bounded symmetric distribution,
/// rejected until the norm falls in [1e-2, 1e2].
pub fn random_spinor(rng: &mut impl Rng) -> Spinor {
    loop {
        let s = Spinor(std::array::from_fn(|_| random_c64(rng)));
        let n = s.norm();
        if (1e-2..=1e2).contains(&n) {
            return s;
        }
    }
}

pub fn random_unit_spinor(rng: &mut impl Rng) -> Spinor {
    let s = random_spinor(rng);
    s.scale(C64::new(1.0 / s.norm(), 0.0))
}

pub fn random_five_vector(rng: &mut impl Rng, bound: f64) -> FiveVector {
    FiveVector(std::array::from_fn(|_| rng.random_range(-bound..bound)))
}

pub fn random_four(rng: &mut impl Rng, bound: f64) -> [f64; 4] {
    std::array::from_fn(|_| rng.random_range(-bound..bound))
}

/// Random rational with numerator in [-bound, bound] and denominator in [1, den_max].
pub fn random_rational(rng: &mut impl Rng, bound: i64, den_max: i64) -> BigRational {
    let num = rng.random_range(-bound..=bound);
    let den = rng.random_range(1..=den_max);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn random_exact_complex(rng: &mut impl Rng, bound: i64, den_max: i64) -> ExactComplex {
    ExactComplex::new(
        random_rational(rng, bound, den_max),
        random_rational(rng, bound, den_max),
    )
}

pub fn random_exact_mat4(rng: &mut impl Rng, bound: i64, den_max: i64) -> ExactMat4 {
    ExactMat4::from_fn(|_, _| random_exact_complex(rng, bound, den_max))
}

/// Random exact invertible matrix, by rejection.
pub fn random_exact_invertible(rng: &mut impl Rng) -> (ExactMat4, ExactMat4) {
    loop {
        let m = random_exact_mat4(rng, 3, 2);
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}
