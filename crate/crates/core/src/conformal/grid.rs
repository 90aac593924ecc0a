//! Uniform grids for sampled scalar fields and metric fields, plus the
//! finite-difference curvature oracle.
//!
//! The oracle computes Christoffel symbols, the Riemann tensor, Ricci, and
//! the curvature scalar from metric samples alone by centered differences,
//! with no conformal shortcut, so it can independently check the
//! closed-form transformation law. Supported in dimensions n ≤ 4; larger
//! grids are certified on closed-form polynomial fields instead.

use crate::conformal::ConformalError;

const MAX_DIM: usize = 4;

/// Scalar samples on a uniform rectangular grid.
#[derive(Clone, Debug)]
pub struct GridField {
    pub dims: Vec<usize>,
    pub h: Vec<f64>,
    pub origin: Vec<f64>,
    pub values: Vec<f64>,
}

pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

pub(crate) fn n_points(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// Iterate multi-indices with `margin` points trimmed from every face.
pub(crate) fn interior_indices(dims: &[usize], margin: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = dims.iter().map(|_| margin).collect();
    if dims.iter().any(|&d| d < 2 * margin + 1) {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut axis = dims.len();
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < dims[axis] - margin {
                break;
            }
            idx[axis] = margin;
        }
    }
}

impl GridField {
    /// Centered patch: origin = −h·(dims−1)/2 per axis.
    pub fn from_fn_centered(
        dims: &[usize],
        h: &[f64],
        f: impl Fn(&[f64]) -> f64,
    ) -> Result<Self, ConformalError> {
        let origin: Vec<f64> = dims
            .iter()
            .zip(h)
            .map(|(&d, &hh)| -hh * (d as f64 - 1.0) / 2.0)
            .collect();
        Self::from_fn(dims, h, &origin, f)
    }

    pub fn from_fn(
        dims: &[usize],
        h: &[f64],
        origin: &[f64],
        f: impl Fn(&[f64]) -> f64,
    ) -> Result<Self, ConformalError> {
        if dims.iter().any(|&d| d < 5) {
            return Err(ConformalError::GridTooSmall);
        }
        assert_eq!(dims.len(), h.len());
        assert_eq!(dims.len(), origin.len());
        let st = strides(dims);
        let total = n_points(dims);
        let mut values = vec![0.0; total];
        let mut idx = vec![0usize; dims.len()];
        for (flat, slot) in values.iter_mut().enumerate() {
            let mut rem = flat;
            for (axis, s) in st.iter().enumerate() {
                idx[axis] = rem / s;
                rem %= s;
            }
            let x: Vec<f64> = idx
                .iter()
                .enumerate()
                .map(|(axis, &i)| origin[axis] + h[axis] * i as f64)
                .collect();
            *slot = f(&x);
        }
        Ok(Self {
            dims: dims.to_vec(),
            h: h.to_vec(),
            origin: origin.to_vec(),
            values,
        })
    }

    pub fn n_dims(&self) -> usize {
        self.dims.len()
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        let st = strides(&self.dims);
        idx.iter().zip(&st).map(|(i, s)| i * s).sum()
    }

    pub fn value(&self, idx: &[usize]) -> f64 {
        self.values[self.flat_index(idx)]
    }

    pub fn point(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter()
            .enumerate()
            .map(|(axis, &i)| self.origin[axis] + self.h[axis] * i as f64)
            .collect()
    }

    /// Centered second difference along `axis`; caller guarantees margin.
    pub fn second_difference(&self, idx: &[usize], axis: usize) -> f64 {
        let st = strides(&self.dims);
        let flat = self.flat_index(idx);
        let s = st[axis];
        (self.values[flat + s] - 2.0 * self.values[flat] + self.values[flat - s])
            / (self.h[axis] * self.h[axis])
    }

    /// Minimum value over all samples.
    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Symmetric n×n metric samples on a uniform grid, row-major per point.
#[derive(Clone, Debug)]
pub struct MetricGrid {
    pub n: usize,
    pub dims: Vec<usize>,
    pub h: Vec<f64>,
    pub origin: Vec<f64>,
    comps: Vec<f64>,
}

impl MetricGrid {
    pub fn from_fn(
        n: usize,
        dims: &[usize],
        h: &[f64],
        origin: &[f64],
        f: impl Fn(&[f64]) -> Vec<f64>,
    ) -> Result<Self, ConformalError> {
        if n > MAX_DIM {
            return Err(ConformalError::UnsupportedDimension(n));
        }
        if dims.len() != n || h.len() != n || origin.len() != n {
            return Err(ConformalError::UnsupportedDimension(dims.len()));
        }
        if dims.iter().any(|&d| d < 5) {
            return Err(ConformalError::GridTooSmall);
        }
        let st = strides(dims);
        let total = n_points(dims);
        let mut comps = vec![0.0; total * n * n];
        let mut idx = vec![0usize; n];
        for flat in 0..total {
            let mut rem = flat;
            for (axis, s) in st.iter().enumerate() {
                idx[axis] = rem / s;
                rem %= s;
            }
            let x: Vec<f64> = idx
                .iter()
                .enumerate()
                .map(|(axis, &i)| origin[axis] + h[axis] * i as f64)
                .collect();
            let g = f(&x);
            assert_eq!(g.len(), n * n, "metric sample must be n×n");
            comps[flat * n * n..(flat + 1) * n * n].copy_from_slice(&g);
        }
        Ok(Self {
            n,
            dims: dims.to_vec(),
            h: h.to_vec(),
            origin: origin.to_vec(),
            comps,
        })
    }

    pub fn from_fn_centered(
        n: usize,
        dims: &[usize],
        h: &[f64],
        f: impl Fn(&[f64]) -> Vec<f64>,
    ) -> Result<Self, ConformalError> {
        let origin: Vec<f64> = dims
            .iter()
            .zip(h)
            .map(|(&d, &hh)| -hh * (d as f64 - 1.0) / 2.0)
            .collect();
        Self::from_fn(n, dims, h, &origin, f)
    }

    pub fn point(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter()
            .enumerate()
            .map(|(axis, &i)| self.origin[axis] + self.h[axis] * i as f64)
            .collect()
    }
}

/// Invert a small dense matrix in place; `None` when singular.
fn invert_small(n: usize, a: &[f64]) -> Option<Vec<f64>> {
    let mut m = a.to_vec();
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for col in 0..n {
        let mut pivot = col;
        for r in col + 1..n {
            if m[r * n + col].abs() > m[pivot * n + col].abs() {
                pivot = r;
            }
        }
        if m[pivot * n + col].abs() < 1e-300 {
            return None;
        }
        for c in 0..n {
            m.swap(col * n + c, pivot * n + c);
            inv.swap(col * n + c, pivot * n + c);
        }
        let p = m[col * n + col];
        for c in 0..n {
            m[col * n + c] /= p;
            inv[col * n + c] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = m[r * n + col];
                if f != 0.0 {
                    for c in 0..n {
                        m[r * n + c] -= f * m[col * n + c];
                        inv[r * n + c] -= f * inv[col * n + c];
                    }
                }
            }
        }
    }
    Some(inv)
}

/// Scalar curvature by centered finite differences from metric samples.
///
/// Christoffel symbols need one ring of neighbors, their derivatives one
/// more, so the report covers interior points at margin 2 and is O(h²)
/// accurate.
pub fn fd_scalar_curvature_oracle(grid: &MetricGrid) -> Result<super::CurvatureReport, ConformalError> {
    let n = grid.n;
    let dims = &grid.dims;
    if dims.iter().any(|&d| d < 5) {
        return Err(ConformalError::GridTooSmall);
    }
    let st = strides(dims);
    let total = n_points(dims);

    // Inverse metric everywhere.
    let mut g_inv = vec![0.0; total * n * n];
    for flat in 0..total {
        let block = &grid.comps[flat * n * n..(flat + 1) * n * n];
        let inv = invert_small(n, block).ok_or(ConformalError::SingularMetricSample(flat))?;
        g_inv[flat * n * n..(flat + 1) * n * n].copy_from_slice(&inv);
    }

    // Christoffel field at margin ≥ 1: Γ^a_{bc} = ½ g^{ad}(∂_b g_{dc} + ∂_c g_{db} − ∂_d g_{bc}).
    let g_at = |flat: usize, r: usize, c: usize| grid.comps[flat * n * n + r * n + c];
    let dg = |flat: usize, axis: usize, r: usize, c: usize| {
        (g_at(flat + st[axis], r, c) - g_at(flat - st[axis], r, c)) / (2.0 * grid.h[axis])
    };

    let mut gamma = vec![0.0; total * n * n * n]; // Γ^a_{bc} at a·n² + b·n + c
    for idx in interior_indices(dims, 1) {
        let flat: usize = idx.iter().zip(&st).map(|(i, s)| i * s).sum();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut sum = 0.0;
                    for d in 0..n {
                        sum += g_inv[flat * n * n + a * n + d]
                            * (dg(flat, b, d, c) + dg(flat, c, b, d) - dg(flat, d, b, c));
                    }
                    gamma[flat * n * n * n + a * n * n + b * n + c] = 0.5 * sum;
                }
            }
        }
    }

    let gam = |flat: usize, a: usize, b: usize, c: usize| gamma[flat * n * n * n + a * n * n + b * n + c];
    let dgam = |flat: usize, axis: usize, a: usize, b: usize, c: usize| {
        (gam(flat + st[axis], a, b, c) - gam(flat - st[axis], a, b, c)) / (2.0 * grid.h[axis])
    };

    // Ricci and scalar curvature at margin 2:
    // R^a_{bcd} = ∂_c Γ^a_{db} − ∂_d Γ^a_{cb} + Γ^a_{ce}Γ^e_{db} − Γ^a_{de}Γ^e_{cb},
    // Ricci_{bd} = R^a_{bad}, R = g^{bd} Ricci_{bd}.
    let mut samples = Vec::new();
    let mut max_abs: f64 = 0.0;
    for idx in interior_indices(dims, 2) {
        let flat: usize = idx.iter().zip(&st).map(|(i, s)| i * s).sum();
        let mut scalar = 0.0;
        for b in 0..n {
            for d in 0..n {
                let mut ricci_bd = 0.0;
                for a in 0..n {
                    let mut riem = dgam(flat, a, a, d, b) - dgam(flat, d, a, a, b);
                    for e in 0..n {
                        riem += gam(flat, a, a, e) * gam(flat, e, d, b)
                            - gam(flat, a, d, e) * gam(flat, e, a, b);
                    }
                    ricci_bd += riem;
                }
                scalar += g_inv[flat * n * n + b * n + d] * ricci_bd;
            }
        }
        max_abs = max_abs.max(scalar.abs());
        samples.push(scalar);
    }

    Ok(super::CurvatureReport {
        samples,
        max_abs,
        order_estimate: None,
    })
}

/// Map a coarse grid size to the fine size that halves the spacing over
/// the same patch: dims' = 2·dims − 1, so coarse index i sits at fine
/// index 2i.
pub fn refine_dims(dims: &[usize]) -> Vec<usize> {
    dims.iter().map(|&d| 2 * d - 1).collect()
}

/// Convergence order log₂(err_h / err_half) from a refinement pair.
pub fn refinement_order(err_h: f64, err_half: f64) -> f64 {
    (err_h / err_half).log2()
}

/// Error of the oracle against a reference function of position, measured
/// over the grid's own interior points.
pub fn oracle_error_against(
    grid: &MetricGrid,
    reference: impl Fn(&[f64]) -> f64,
) -> Result<f64, ConformalError> {
    let report = fd_scalar_curvature_oracle(grid)?;
    let mut worst: f64 = 0.0;
    for (sample, idx) in report
        .samples
        .iter()
        .zip(interior_indices(&grid.dims, 2))
    {
        let x = grid.point(&idx);
        worst = worst.max((sample - reference(&x)).abs());
    }
    Ok(worst)
}

/// Oracle errors on a grid and its half-spacing refinement, compared at
/// the same physical points (the coarse interior), plus the fine-grid
/// curvature report carrying the convergence-order estimate.
pub fn fd_refinement_errors(
    coarse: &MetricGrid,
    fine: &MetricGrid,
    reference: impl Fn(&[f64]) -> f64,
) -> Result<(f64, f64, super::CurvatureReport), ConformalError> {
    assert_eq!(refine_dims(&coarse.dims), fine.dims, "fine grid must halve the spacing");
    let coarse_report = fd_scalar_curvature_oracle(coarse)?;
    let mut fine_report = fd_scalar_curvature_oracle(fine)?;

    let fine_interior = interior_indices(&fine.dims, 2);
    let fine_lookup: std::collections::HashMap<Vec<usize>, usize> = fine_interior
        .iter()
        .cloned()
        .zip(0..)
        .collect();

    let mut err_coarse: f64 = 0.0;
    let mut err_fine: f64 = 0.0;
    for (sample, idx) in coarse_report
        .samples
        .iter()
        .zip(interior_indices(&coarse.dims, 2))
    {
        let x = coarse.point(&idx);
        let r = reference(&x);
        err_coarse = err_coarse.max((sample - r).abs());
        let fine_idx: Vec<usize> = idx.iter().map(|&i| 2 * i).collect();
        let slot = fine_lookup
            .get(&fine_idx)
            .expect("coarse interior points lie inside the fine interior");
        err_fine = err_fine.max((fine_report.samples[*slot] - r).abs());
    }
    fine_report.order_estimate = Some(refinement_order(err_coarse, err_fine));
    Ok((err_coarse, err_fine, fine_report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_enumeration_counts() {
        assert_eq!(interior_indices(&[5, 5], 1).len(), 9);
        assert_eq!(interior_indices(&[5, 5], 2).len(), 1);
        assert_eq!(interior_indices(&[5], 3).len(), 0);
    }

    #[test]
    fn grid_field_second_difference_is_exact_on_quadratics() {
        let field = GridField::from_fn_centered(&[7, 7], &[0.1, 0.1], |x| x[0] * x[0]).unwrap();
        let d = field.second_difference(&[3, 3], 0);
        assert!((d - 2.0).abs() < 1e-10);
        let d1 = field.second_difference(&[3, 3], 1);
        assert!(d1.abs() < 1e-10);
    }

    #[test]
    fn flat_metric_has_zero_curvature() {
        let grid = MetricGrid::from_fn_centered(3, &[5, 5, 5], &[0.1, 0.1, 0.1], |_| {
            vec![1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0]
        })
        .unwrap();
        let report = fd_scalar_curvature_oracle(&grid).unwrap();
        assert!(report.max_abs < 1e-10);
        assert_eq!(report.samples.len(), 1);
    }

    #[test]
    fn round_sphere_curvature_is_two() {
        // Unit two-sphere patch away from the poles: g = dθ² + sin²θ dφ².
        let dims = [33, 33];
        let h = [1.0 / 32.0, 1.0 / 32.0];
        let origin = [1.0, 0.0];
        let grid = MetricGrid::from_fn(2, &dims, &h, &origin, |x| {
            let s = x[0].sin();
            vec![1.0, 0.0, 0.0, s * s]
        })
        .unwrap();
        let err = oracle_error_against(&grid, |_| 2.0).unwrap();
        assert!(err < 1e-2, "sphere error {err}");
    }

    #[test]
    fn sphere_error_converges_at_second_order() {
        let build = |pts: usize| {
            let h = 1.0 / (pts as f64 - 1.0);
            MetricGrid::from_fn(2, &[pts, pts], &[h, h], &[1.0, 0.0], |x| {
                let s = x[0].sin();
                vec![1.0, 0.0, 0.0, s * s]
            })
            .unwrap()
        };
        let (err_h, err_half, report) =
            fd_refinement_errors(&build(17), &build(33), |_| 2.0).unwrap();
        let order = report.order_estimate.unwrap();
        assert!(
            (1.7..=2.3).contains(&order),
            "order {order}, errors {err_h} {err_half}"
        );
    }

    #[test]
    fn singular_sample_is_reported() {
        let grid = MetricGrid::from_fn_centered(2, &[5, 5], &[0.1, 0.1], |x| {
            // Degenerate at the center point.
            let s = if x[0].abs() < 1e-9 && x[1].abs() < 1e-9 {
                0.0
            } else {
                1.0
            };
            vec![s, 0.0, 0.0, 1.0]
        })
        .unwrap();
        assert!(matches!(
            fd_scalar_curvature_oracle(&grid),
            Err(ConformalError::SingularMetricSample(_))
        ));
    }

    #[test]
    fn oversized_dimension_rejected() {
        assert!(matches!(
            MetricGrid::from_fn_centered(5, &[5, 5, 5, 5, 5], &[0.1; 5], |_| vec![0.0; 25]),
            Err(ConformalError::UnsupportedDimension(5))
        ));
    }
}
