//! Small fixed-size float matrices and vectors.
//!
//! Only the shapes the verification kernels need: complex 4×4, real N×N for
//! N ≤ 5, spinors, and five-vectors. Nothing here aspires to be a general
//! linear algebra library.

pub use num_complex::Complex64 as C64;

/// Complex 4×4 matrix, double precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4 {
    e: [[C64; 4]; 4],
}

impl Mat4 {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        Self {
            e: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))),
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| C64::ZERO)
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { C64::ONE } else { C64::ZERO })
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.e[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.e[r][c] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| (0..4).map(|k| self.e[r][k] * rhs.e[k][c]).sum())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| self.e[r][c] + rhs.e[r][c])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| self.e[r][c] - rhs.e[r][c])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(|r, c| s * self.e[r][c])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|r, c| self.e[r][c].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.e[c][r])
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(|r, c| self.e[c][r].conj())
    }

    pub fn mul_vec(&self, v: &Spinor) -> Spinor {
        Spinor(std::array::from_fn(|r| {
            (0..4).map(|c| self.e[r][c] * v.0[c]).sum()
        }))
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Matrix exponential by scaling-and-squaring with a fixed-degree
    /// Taylor expansion of the scaled argument.
    pub fn expm(&self) -> Self {
        let norm = self.max_norm() * 4.0;
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(C64::new(1.0 / f64::powi(2.0, squarings as i32), 0.0));

        // Degree-12 Taylor series at the scaled argument.
        let mut term = Mat4::identity();
        let mut sum = Mat4::identity();
        for k in 1..=12u32 {
            term = term.mul(&scaled).scale(C64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
        }

        let mut result = sum;
        for _ in 0..squarings {
            result = result.mul(&result);
        }
        result
    }
}

/// Four-component complex spinor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spinor(pub [C64; 4]);

impl Spinor {
    pub fn zero() -> Self {
        Spinor([C64::ZERO; 4])
    }

    /// Standard basis spinor e_i, i in 0..4.
    pub fn basis(i: usize) -> Self {
        let mut s = Self::zero();
        s.0[i] = C64::ONE;
        s
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> Self {
        Spinor(std::array::from_fn(|i| s * self.0[i]))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Spinor(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Spinor(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }

    pub fn conj(&self) -> Self {
        Spinor(std::array::from_fn(|i| self.0[i].conj()))
    }

    /// Hermitian inner product ⟨self, rhs⟩ = Σ conj(self_i)·rhs_i.
    pub fn dot(&self, rhs: &Self) -> C64 {
        (0..4).map(|i| self.0[i].conj() * rhs.0[i]).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Real five-component vector (displacements, wave vectors).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiveVector(pub [f64; 5]);

impl FiveVector {
    pub fn zero() -> Self {
        FiveVector([0.0; 5])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        FiveVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        FiveVector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }

    pub fn scale(&self, s: f64) -> Self {
        FiveVector(std::array::from_fn(|i| s * self.0[i]))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Minkowski-type square with the flat diag(1,−1,−1,−1,−1) metric.
    pub fn eta_square(&self) -> f64 {
        let k = &self.0;
        k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - k[3] * k[3] - k[4] * k[4]
    }
}

/// Real N×N matrix with const-generic size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RMat<const N: usize> {
    e: [[f64; N]; N],
}

pub type RMat4 = RMat<4>;
pub type RMat5 = RMat<5>;

impl<const N: usize> RMat<N> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Self {
            e: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))),
        }
    }

    pub fn from_rows(rows: [[f64; N]; N]) -> Self {
        Self { e: rows }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| 0.0)
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { 1.0 } else { 0.0 })
    }

    pub fn diag(d: [f64; N]) -> Self {
        Self::from_fn(|r, c| if r == c { d[r] } else { 0.0 })
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.e[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.e[r][c] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| (0..N).map(|k| self.e[r][k] * rhs.e[k][c]).sum())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| self.e[r][c] + rhs.e[r][c])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| self.e[r][c] - rhs.e[r][c])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(|r, c| s * self.e[r][c])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.e[c][r])
    }

    pub fn max_norm(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|x| x.abs())
            .fold(0.0, f64::max)
    }

    pub fn mul_array(&self, v: &[f64; N]) -> [f64; N] {
        std::array::from_fn(|r| (0..N).map(|c| self.e[r][c] * v[c]).sum())
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        for r in 0..N {
            for c in 0..r {
                if (self.e[r][c] - self.e[c][r]).abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> f64 {
        let mut a = self.e;
        let mut det = 1.0;
        for col in 0..N {
            let (pivot_row, pivot_val) = (col..N)
                .map(|r| (r, a[r][col].abs()))
                .fold((col, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_val == 0.0 {
                return 0.0;
            }
            if pivot_row != col {
                a.swap(col, pivot_row);
                det = -det;
            }
            det *= a[col][col];
            for r in col + 1..N {
                let f = a[r][col] / a[col][col];
                for c in col..N {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan with partial pivoting; `None` when a pivot
    /// falls below `1e-300` in magnitude.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.e;
        let mut inv = Self::identity().e;
        for col in 0..N {
            let (pivot_row, pivot_val) = (col..N)
                .map(|r| (r, a[r][col].abs()))
                .fold((col, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_val < 1e-300 {
                return None;
            }
            a.swap(col, pivot_row);
            inv.swap(col, pivot_row);
            let p = a[col][col];
            for c in 0..N {
                a[col][c] /= p;
                inv[col][c] /= p;
            }
            for r in 0..N {
                if r != col {
                    let f = a[r][col];
                    if f != 0.0 {
                        for c in 0..N {
                            a[r][c] -= f * a[col][c];
                            inv[r][c] -= f * inv[col][c];
                        }
                    }
                }
            }
        }
        Some(Self { e: inv })
    }

    /// Matrix exponential, same scheme as the complex case.
    pub fn expm(&self) -> Self {
        let norm = self.max_norm() * N as f64;
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(1.0 / f64::powi(2.0, squarings as i32));

        let mut term = Self::identity();
        let mut sum = Self::identity();
        for k in 1..=12u32 {
            term = term.mul(&scaled).scale(1.0 / k as f64);
            sum = sum.add(&term);
        }

        let mut result = sum;
        for _ in 0..squarings {
            result = result.mul(&result);
        }
        result
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
    pub fn symmetric_eigenvalues(&self) -> [f64; N] {
        let mut a = self.e;
        for _sweep in 0..64 {
            let mut off = 0.0;
            for r in 0..N {
                for c in r + 1..N {
                    off += a[r][c] * a[r][c];
                }
            }
            if off < 1e-28 {
                break;
            }
            for p in 0..N {
                for q in p + 1..N {
                    if a[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..N {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..N {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        std::array::from_fn(|i| a[i][i])
    }
}
