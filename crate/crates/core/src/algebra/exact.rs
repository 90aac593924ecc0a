//! Exact complex arithmetic over arbitrary-precision rationals.
//!
//! Gaussian integers would cover the gamma matrices themselves, but the
//! chirality projectors (1 ± γ⁵)/2 need honest rationals, so the scalar
//! type is a complex number with `BigRational` parts. Equality is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::float::{Mat4, C64};

/// Complex scalar with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    /// Real rational `num/den`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let denom = &self.re * &self.re + &self.im * &self.im;
        if denom.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &denom, -(&self.im / &denom)))
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl std::ops::Add for &ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl std::ops::Sub for &ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl std::ops::Mul for &ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl std::ops::Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for ExactComplex {
            type Output = ExactComplex;
            fn $method(self, rhs: ExactComplex) -> ExactComplex {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        -&self
    }
}

/// Dense 4×4 matrix of exact complex scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMat4 {
    e: Box<[[ExactComplex; 4]; 4]>,
}

impl ExactMat4 {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> ExactComplex) -> Self {
        Self {
            e: Box::new(std::array::from_fn(|r| std::array::from_fn(|c| f(r, c)))),
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| ExactComplex::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| {
            if r == c {
                ExactComplex::one()
            } else {
                ExactComplex::zero()
            }
        })
    }

    /// Build from integer (re, im) pairs, row major.
    pub fn from_int_pairs(rows: [[(i64, i64); 4]; 4]) -> Self {
        Self::from_fn(|r, c| ExactComplex::from_ints(rows[r][c].0, rows[r][c].1))
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactComplex {
        &self.e[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactComplex) {
        self.e[r][c] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| {
            let mut acc = ExactComplex::zero();
            for k in 0..4 {
                acc = &acc + &(&self.e[r][k] * &rhs.e[k][c]);
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| &self.e[r][c] + &rhs.e[r][c])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| &self.e[r][c] - &rhs.e[r][c])
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(|r, c| -&self.e[r][c])
    }

    pub fn scale(&self, s: &ExactComplex) -> Self {
        Self::from_fn(|r, c| s * &self.e[r][c])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|r, c| self.e[r][c].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.e[c][r].clone())
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(|r, c| self.e[c][r].conj())
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(ExactComplex::is_zero)
    }

    pub fn to_float(&self) -> Mat4 {
        Mat4::from_fn(|r, c| self.e[r][c].to_c64())
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let mut a: Vec<Vec<ExactComplex>> = (0..4)
            .map(|r| {
                let mut row: Vec<ExactComplex> =
                    (0..4).map(|c| self.e[r][c].clone()).collect();
                for c in 0..4 {
                    row.push(if r == c {
                        ExactComplex::one()
                    } else {
                        ExactComplex::zero()
                    });
                }
                row
            })
            .collect();

        for col in 0..4 {
            let pivot_row = (col..4).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot_row);
            let inv_pivot = a[col][col].inv()?;
            for c in col..8 {
                a[col][c] = &a[col][c] * &inv_pivot;
            }
            for r in 0..4 {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in col..8 {
                        a[r][c] = &a[r][c] - &(&factor * &a[col][c]);
                    }
                }
            }
        }

        Some(Self::from_fn(|r, c| a[r][c + 4].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn complex_inverse_roundtrip() {
        let z = ExactComplex::new(rat(3, 7), rat(-2, 5));
        let w = &z * &z.inv().unwrap();
        assert_eq!(w, ExactComplex::one());
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(ExactComplex::zero().inv().is_none());
    }

    #[test]
    fn scalar_inverse_matrices() {
        // 2·I times (1/2)·I is the identity, exactly.
        let two = ExactMat4::identity().scale(&ExactComplex::from_ints(2, 0));
        let half = ExactMat4::identity().scale(&ExactComplex::from_ratio(1, 2));
        assert_eq!(two.mul(&half), ExactMat4::identity());
    }

    #[test]
    fn matrix_inverse_exact() {
        let m = ExactMat4::from_int_pairs([
            [(1, 0), (2, 1), (0, 0), (3, 0)],
            [(0, 2), (1, 0), (1, 1), (0, 0)],
            [(5, 0), (0, 0), (2, 0), (1, 0)],
            [(0, 0), (1, 3), (0, 1), (4, 0)],
        ]);
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.mul(&inv), ExactMat4::identity());
        assert_eq!(inv.mul(&m), ExactMat4::identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let mut m = ExactMat4::identity();
        m.set(3, 3, ExactComplex::zero());
        assert!(m.inverse().is_none());
    }
}
