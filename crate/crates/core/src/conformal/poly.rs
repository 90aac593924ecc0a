//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Conformal-factor fields on the eight-dimensional patch are certified on
//! closed-form polynomials, where the signed wave operator is computed
//! exactly and "identically zero" is a coefficient statement, not a
//! tolerance.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Polynomial in `n_vars` variables: multi-index exponents → coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        Self {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; n_vars], c);
        }
        p
    }

    pub fn constant_int(n_vars: usize, c: i64) -> Self {
        Self::constant(n_vars, BigRational::from_integer(BigInt::from(c)))
    }

    /// Single term c·x^e.
    pub fn monomial(n_vars: usize, exponents: &[(usize, u32)], coeff: BigRational) -> Self {
        let mut e = vec![0u32; n_vars];
        for &(axis, pow) in exponents {
            assert!(axis < n_vars, "axis out of range");
            e[axis] += pow;
        }
        let mut p = Self::zero(n_vars);
        if !coeff.is_zero() {
            p.terms.insert(e, coeff);
        }
        p
    }

    pub fn monomial_ratio(n_vars: usize, exponents: &[(usize, u32)], num: i64, den: i64) -> Self {
        Self::monomial(
            n_vars,
            exponents,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn insert(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero(self.n_vars);
        if s.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = (0..self.n_vars).map(|i| ea[i] + eb[i]).collect();
                out.insert(e, ca * cb);
            }
        }
        out
    }

    pub fn partial_derivative(&self, axis: usize) -> Self {
        assert!(axis < self.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e[axis] == 0 {
                continue;
            }
            let mut de = e.clone();
            de[axis] -= 1;
            let factor = BigRational::from_integer(BigInt::from(e[axis]));
            out.insert(de, c * &factor);
        }
        out
    }

    /// Signed second-order wave operator Σ_i s_i ∂²_i, exact.
    pub fn signed_laplacian(&self, signs: &[i8]) -> Self {
        assert_eq!(signs.len(), self.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (axis, &s) in signs.iter().enumerate() {
            let dd = self.partial_derivative(axis).partial_derivative(axis);
            let signed = dd.scale(&BigRational::from_integer(BigInt::from(s as i64)));
            out = out.add(&signed);
        }
        out
    }

    /// Signed gradient square Σ_i s_i (∂_i ·)², exact.
    pub fn signed_gradient_square(&self, signs: &[i8]) -> Self {
        assert_eq!(signs.len(), self.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (axis, &s) in signs.iter().enumerate() {
            let d = self.partial_derivative(axis);
            let sq = d.mul(&d).scale(&BigRational::from_integer(BigInt::from(s as i64)));
            out = out.add(&sq);
        }
        out
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n_vars);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut term = c.to_f64().unwrap_or(f64::NAN);
            for (axis, &pow) in e.iter().enumerate() {
                term *= x[axis].powi(pow as i32);
            }
            acc += term;
        }
        acc
    }

    pub fn eval_rational(&self, x: &[BigRational]) -> BigRational {
        assert_eq!(x.len(), self.n_vars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (axis, &pow) in e.iter().enumerate() {
                for _ in 0..pow {
                    term *= &x[axis];
                }
            }
            acc += term;
        }
        acc
    }

    /// Largest coefficient magnitude, as a coarse scale for reports.
    pub fn coeff_scale(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}
