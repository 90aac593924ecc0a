//! Conformally flat curvature: the equivalence between zero scalar
//! curvature of g = Ψ^{4/(n−2)}·(flat metric) and the flat second-order
//! wave equation on Ψ.
//!
//! The closed-form route uses the conformal transformation law
//!
//! ```text
//! R[g] = −c(n)·Ψ^{−(n+2)/(n−2)}·(Σ_i s_i ∂²_i Ψ),   c(n) = 4(n−1)/(n−2),
//! ```
//!
//! exact on polynomial fields. A finite-difference oracle recomputes the
//! curvature from metric samples alone (dimensions 2–4) so the law itself
//! is cross-checked, and a general-exponent evaluator shows that any other
//! power leaves a gradient-squared remnant, so the exponent is forced.

pub mod grid;
pub mod poly;

use num_rational::Rational64;
use thiserror::Error;

pub use grid::{
    fd_refinement_errors, fd_scalar_curvature_oracle, oracle_error_against, refine_dims,
    refinement_order, GridField,
    MetricGrid,
};
pub use poly::Polynomial;

use crate::algebra::sampling::rng_for;
use rand::Rng;

#[derive(Debug, Error)]
pub enum ConformalError {
    #[error("dimension {0} too small; the conformal exponent needs n >= 3")]
    DimensionTooSmall(usize),
    #[error("grids need at least 5 points per axis")]
    GridTooSmall,
    #[error("conformal factor must be positive on the patch")]
    NonPositiveField,
    #[error("singular metric sample at flat index {0}")]
    SingularMetricSample(usize),
    #[error("finite-difference oracle supports dimensions up to 4, got {0}")]
    UnsupportedDimension(usize),
    #[error("polynomial descriptors are limited to total degree 4, got {0}")]
    DegreeTooHigh(u32),
    #[error("signature length {signs} does not match field dimension {field}")]
    SignatureMismatch { signs: usize, field: usize },
    #[error("fixture parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Flat metric signature: a dimension n ≥ 3 and a ±1 sign per axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatSignature {
    signs: Vec<i8>,
}

impl FlatSignature {
    pub fn new(signs: Vec<i8>) -> Result<Self, ConformalError> {
        if signs.len() < 3 {
            return Err(ConformalError::DimensionTooSmall(signs.len()));
        }
        assert!(signs.iter().all(|s| *s == 1 || *s == -1));
        Ok(Self { signs })
    }

    pub fn euclidean(n: usize) -> Result<Self, ConformalError> {
        Self::new(vec![1; n])
    }

    /// The split signature induced on the eight real coordinates by the
    /// spinor metric diag(1,1,−1,−1) acting on complex pairs, coordinates
    /// ordered (r₁, i₁, r₂, i₂, r₃, i₃, r₄, i₄).
    pub fn split_eight() -> Self {
        Self {
            signs: vec![1, 1, 1, 1, -1, -1, -1, -1],
        }
    }

    pub fn n(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
}

/// Conformal factor exponent 4/(n−2); exactly 2/3 in eight dimensions.
pub fn exponent_check(n: usize) -> Result<Rational64, ConformalError> {
    if n < 3 {
        return Err(ConformalError::DimensionTooSmall(n));
    }
    Ok(Rational64::new(4, n as i64 - 2))
}

/// c(n) = 4(n−1)/(n−2), the prefactor of the transformation law.
pub fn curvature_prefactor(n: usize) -> f64 {
    4.0 * (n as f64 - 1.0) / (n as f64 - 2.0)
}

/// A sampled or closed-form scalar field.
#[derive(Clone, Debug)]
pub enum ScalarField {
    Grid(GridField),
    Poly(Polynomial),
}

impl ScalarField {
    pub fn polynomial(p: Polynomial) -> Result<Self, ConformalError> {
        if p.total_degree() > 4 {
            return Err(ConformalError::DegreeTooHigh(p.total_degree()));
        }
        Ok(ScalarField::Poly(p))
    }

    pub fn grid(g: GridField) -> Self {
        ScalarField::Grid(g)
    }

    pub fn n_dims(&self) -> usize {
        match self {
            ScalarField::Grid(g) => g.n_dims(),
            ScalarField::Poly(p) => p.n_vars(),
        }
    }
}

/// Signed second-order wave operator Σ_i s_i ∂²_i.
///
/// Grid fields are differenced with the centered three-point stencil and
/// the result lives on the interior (one ring smaller per axis);
/// polynomials are differentiated exactly.
pub fn flat_wave_op(psi: &ScalarField, sig: &FlatSignature) -> Result<ScalarField, ConformalError> {
    if sig.n() != psi.n_dims() {
        return Err(ConformalError::SignatureMismatch {
            signs: sig.n(),
            field: psi.n_dims(),
        });
    }
    match psi {
        ScalarField::Poly(p) => Ok(ScalarField::Poly(p.signed_laplacian(sig.signs()))),
        ScalarField::Grid(g) => {
            if g.dims.iter().any(|&d| d < 3) {
                return Err(ConformalError::GridTooSmall);
            }
            let inner_dims: Vec<usize> = g.dims.iter().map(|&d| d - 2).collect();
            let inner_origin: Vec<f64> = g
                .origin
                .iter()
                .zip(&g.h)
                .map(|(o, hh)| o + hh)
                .collect();
            let mut out = GridField {
                dims: inner_dims.clone(),
                h: g.h.clone(),
                origin: inner_origin,
                values: vec![0.0; grid::n_points(&inner_dims)],
            };
            let st_out = grid::strides(&inner_dims);
            for idx in grid::interior_indices(&g.dims, 1) {
                let mut acc = 0.0;
                for (axis, &s) in sig.signs().iter().enumerate() {
                    acc += s as f64 * g.second_difference(&idx, axis);
                }
                let flat_out: usize = idx
                    .iter()
                    .zip(&st_out)
                    .map(|(i, s)| (i - 1) * s)
                    .sum();
                out.values[flat_out] = acc;
            }
            Ok(ScalarField::Grid(out))
        }
    }
}

/// Curvature samples with the largest magnitude and, when produced by a
/// refinement pair, a convergence-order estimate.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    pub samples: Vec<f64>,
    pub max_abs: f64,
    pub order_estimate: Option<f64>,
}

/// Deterministic probe points inside the centered unit patch for
/// closed-form fields.
pub fn probe_points(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng_for(seed, "conformal.probes");
    let mut out = vec![vec![0.0; n]];
    for _ in 0..count {
        out.push((0..n).map(|_| rng.random_range(-0.5..0.5)).collect());
    }
    out
}

/// Scalar curvature of g = Ψ^{4/(n−2)}·(flat metric with the given signs)
/// by the closed-form transformation law.
pub fn conformal_scalar_curvature(
    psi: &ScalarField,
    sig: &FlatSignature,
) -> Result<CurvatureReport, ConformalError> {
    let n = sig.n() as f64;
    let c = curvature_prefactor(sig.n());
    let power = -(n + 2.0) / (n - 2.0);
    match psi {
        ScalarField::Poly(p) => {
            if sig.n() != p.n_vars() {
                return Err(ConformalError::SignatureMismatch {
                    signs: sig.n(),
                    field: p.n_vars(),
                });
            }
            let lap = p.signed_laplacian(sig.signs());
            let probes = probe_points(p.n_vars(), 64, 0);
            for x in &probes {
                if p.eval_f64(x) <= 0.0 {
                    return Err(ConformalError::NonPositiveField);
                }
            }
            if lap.is_zero() {
                // Identically flat wave: zero curvature with no tolerance.
                return Ok(CurvatureReport {
                    samples: vec![0.0; probes.len()],
                    max_abs: 0.0,
                    order_estimate: None,
                });
            }
            let mut samples = Vec::with_capacity(probes.len());
            let mut max_abs: f64 = 0.0;
            for x in &probes {
                let v = p.eval_f64(x);
                let r = -c * v.powf(power) * lap.eval_f64(x);
                max_abs = max_abs.max(r.abs());
                samples.push(r);
            }
            Ok(CurvatureReport {
                samples,
                max_abs,
                order_estimate: None,
            })
        }
        ScalarField::Grid(g) => {
            if sig.n() != g.n_dims() {
                return Err(ConformalError::SignatureMismatch {
                    signs: sig.n(),
                    field: g.n_dims(),
                });
            }
            if g.min_value() <= 0.0 {
                return Err(ConformalError::NonPositiveField);
            }
            let mut samples = Vec::new();
            let mut max_abs: f64 = 0.0;
            for idx in grid::interior_indices(&g.dims, 1) {
                let mut lap = 0.0;
                for (axis, &s) in sig.signs().iter().enumerate() {
                    lap += s as f64 * g.second_difference(&idx, axis);
                }
                let v = g.value(&idx);
                let r = -c * v.powf(power) * lap;
                max_abs = max_abs.max(r.abs());
                samples.push(r);
            }
            Ok(CurvatureReport {
                samples,
                max_abs,
                order_estimate: None,
            })
        }
    }
}

/// Scalar curvature of g = Ψ^p·(flat metric) for an arbitrary exponent,
/// evaluated at one point:
///
/// ```text
/// R = −(n−1)p·Ψ^{−p−1}·□Ψ + (n−1)p·(1 − (n−2)p/4)·Ψ^{−p−2}·|∇Ψ|²
/// ```
///
/// The gradient-squared coefficient vanishes exactly when p = 4/(n−2).
pub fn conformal_curvature_general(
    psi: &Polynomial,
    sig: &FlatSignature,
    p: f64,
    x: &[f64],
) -> f64 {
    let n = sig.n() as f64;
    let lap = psi.signed_laplacian(sig.signs()).eval_f64(x);
    let grad_sq = psi.signed_gradient_square(sig.signs()).eval_f64(x);
    let v = psi.eval_f64(x);
    let lead = -(n - 1.0) * p * v.powf(-p - 1.0) * lap;
    let remnant = (n - 1.0) * p * (1.0 - (n - 2.0) * p / 4.0) * v.powf(-p - 2.0) * grad_sq;
    lead + remnant
}

/// The reading that conformally scales the inverse metric instead of the
/// covariant one; equivalent to the exponent −4/(n−2) on the covariant
/// side, so a harmonic Ψ does not give zero curvature. Shipped as a check
/// that the covariant placement is the one consistent with the wave
/// equation.
pub fn inverse_reading_curvature(psi: &Polynomial, sig: &FlatSignature, x: &[f64]) -> f64 {
    let p = 4.0 / (sig.n() as f64 - 2.0);
    conformal_curvature_general(psi, sig, -p, x)
}

/// Metric grid for g_ij = Ψ^p·s_i·δ_ij over the field's patch, for the
/// finite-difference oracle.
pub fn conformal_metric_grid(
    psi: &GridField,
    sig: &FlatSignature,
    p: f64,
) -> Result<MetricGrid, ConformalError> {
    let n = sig.n();
    if n != psi.n_dims() {
        return Err(ConformalError::SignatureMismatch {
            signs: n,
            field: psi.n_dims(),
        });
    }
    if psi.min_value() <= 0.0 {
        return Err(ConformalError::NonPositiveField);
    }
    let dims = psi.dims.clone();
    let h = psi.h.clone();
    let origin = psi.origin.clone();
    let values = psi.values.clone();
    let st = grid::strides(&dims);
    let lookup = {
        let origin = origin.clone();
        let h = h.clone();
        move |x: &[f64]| {
            // Positions land exactly on lattice points.
            let mut flat = 0;
            for axis in 0..n {
                let i = ((x[axis] - origin[axis]) / h[axis]).round() as usize;
                flat += i * st[axis];
            }
            let omega = values[flat].powf(p);
            let mut g = vec![0.0; n * n];
            for (i, &s) in sig.signs().iter().enumerate() {
                g[i * n + i] = omega * s as f64;
            }
            g
        }
    };
    MetricGrid::from_fn(n, &dims, &h, &origin, lookup)
}

/// Write a sampled field as the plain-text fixture format: a header with
/// n, signs, dims, and spacings, then row-major values with 17 significant
/// digits.
pub fn write_field_text(field: &GridField, sig: &FlatSignature) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", sig.n()));
    let signs: Vec<String> = sig.signs().iter().map(|s| format!("{s:+}")).collect();
    out.push_str(&format!("signs {}\n", signs.join(" ")));
    let dims: Vec<String> = field.dims.iter().map(|d| d.to_string()).collect();
    out.push_str(&format!("dims {}\n", dims.join(" ")));
    let h: Vec<String> = field.h.iter().map(|x| format!("{x:.16e}")).collect();
    out.push_str(&format!("h {}\n", h.join(" ")));
    for v in &field.values {
        out.push_str(&format!("{v:.16e}\n"));
    }
    out
}

/// Parse the fixture format written by [`write_field_text`]; the patch is
/// centered on the origin by convention.
pub fn read_field_text(text: &str) -> Result<(GridField, FlatSignature), ConformalError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let mut take = |key: &str| -> Result<(usize, Vec<String>), ConformalError> {
        let (lineno, line) = lines.next().ok_or(ConformalError::Parse {
            line: 0,
            message: format!("missing `{key}` header"),
        })?;
        let mut parts = line.split_whitespace();
        let head = parts.next().unwrap_or("");
        if head != key {
            return Err(ConformalError::Parse {
                line: lineno + 1,
                message: format!("expected `{key}`, found `{head}`"),
            });
        }
        Ok((lineno + 1, parts.map(str::to_string).collect()))
    };

    let (line_n, n_parts) = take("n")?;
    let n: usize = n_parts
        .first()
        .and_then(|s| s.parse().ok())
        .ok_or(ConformalError::Parse {
            line: line_n,
            message: "bad dimension".into(),
        })?;
    let (line_s, sign_parts) = take("signs")?;
    let signs: Vec<i8> = sign_parts
        .iter()
        .map(|s| s.parse::<i8>())
        .collect::<Result<_, _>>()
        .map_err(|e| ConformalError::Parse {
            line: line_s,
            message: e.to_string(),
        })?;
    let (line_d, dim_parts) = take("dims")?;
    let dims: Vec<usize> = dim_parts
        .iter()
        .map(|s| s.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| ConformalError::Parse {
            line: line_d,
            message: e.to_string(),
        })?;
    let (line_h, h_parts) = take("h")?;
    let h: Vec<f64> = h_parts
        .iter()
        .map(|s| s.parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| ConformalError::Parse {
            line: line_h,
            message: e.to_string(),
        })?;
    if signs.len() != n || dims.len() != n || h.len() != n {
        return Err(ConformalError::Parse {
            line: line_h,
            message: "header lengths disagree with n".into(),
        });
    }

    let total = grid::n_points(&dims);
    let mut values = Vec::with_capacity(total);
    for (lineno, line) in lines {
        let v: f64 = line.trim().parse().map_err(|_| ConformalError::Parse {
            line: lineno + 1,
            message: format!("bad value `{}`", line.trim()),
        })?;
        values.push(v);
    }
    if values.len() != total {
        return Err(ConformalError::Parse {
            line: 0,
            message: format!("expected {total} values, found {}", values.len()),
        });
    }
    let origin: Vec<f64> = dims
        .iter()
        .zip(&h)
        .map(|(&d, &hh)| -hh * (d as f64 - 1.0) / 2.0)
        .collect();
    Ok((
        GridField {
            dims,
            h,
            origin,
            values,
        },
        FlatSignature::new(signs)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn exponent_values() {
        assert_eq!(exponent_check(8).unwrap(), Rational64::new(2, 3));
        assert_eq!(exponent_check(6).unwrap(), Rational64::new(1, 1));
        assert_eq!(exponent_check(4).unwrap(), Rational64::new(2, 1));
        assert!(exponent_check(2).is_err());
    }

    #[test]
    fn wave_op_on_polynomials() {
        let sig = FlatSignature::split_eight();
        // Constant and linear fields are annihilated.
        let constant = ScalarField::polynomial(Polynomial::constant_int(8, 3)).unwrap();
        match flat_wave_op(&constant, &sig).unwrap() {
            ScalarField::Poly(p) => assert!(p.is_zero()),
            _ => unreachable!(),
        }
        let linear =
            ScalarField::polynomial(Polynomial::monomial(8, &[(0, 1)], rat(2))).unwrap();
        match flat_wave_op(&linear, &sig).unwrap() {
            ScalarField::Poly(p) => assert!(p.is_zero()),
            _ => unreachable!(),
        }
        // x₀² on a plus axis gives the constant 2.
        let quad = ScalarField::polynomial(Polynomial::monomial(8, &[(0, 2)], rat(1))).unwrap();
        match flat_wave_op(&quad, &sig).unwrap() {
            ScalarField::Poly(p) => assert_eq!(p, Polynomial::constant_int(8, 2)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn wave_op_on_grid_matches_polynomial() {
        let sig = FlatSignature::new(vec![1, -1, 1]).unwrap();
        let field = GridField::from_fn_centered(&[9, 9, 9], &[0.1, 0.1, 0.1], |x| {
            x[0] * x[0] + 0.5 * x[1] * x[1] - x[2] * x[2]
        })
        .unwrap();
        match flat_wave_op(&ScalarField::grid(field), &sig).unwrap() {
            ScalarField::Grid(g) => {
                // Σ s_i ∂²_i = 2 − 1 − 2 = −1 everywhere, exactly for quadratics.
                for v in &g.values {
                    assert!((v + 1.0).abs() < 1e-10);
                }
                assert_eq!(g.dims, vec![7, 7, 7]);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn constant_factor_is_flat() {
        let sig = FlatSignature::split_eight();
        let one = ScalarField::polynomial(Polynomial::constant_int(8, 1)).unwrap();
        let report = conformal_scalar_curvature(&one, &sig).unwrap();
        assert_eq!(report.max_abs, 0.0);
    }

    #[test]
    fn harmonic_eight_dimensional_fields_are_scalar_flat() {
        let sig = FlatSignature::split_eight();
        // 1 + a(x₀² − x₁²) + b·x₀x₁ + c(x₀² + x₄²): each piece harmonic
        // under the split signature (+,+,+,+,−,−,−,−).
        let psi = Polynomial::constant_int(8, 1)
            .add(&Polynomial::monomial_ratio(8, &[(0, 2)], 1, 10))
            .sub(&Polynomial::monomial_ratio(8, &[(1, 2)], 1, 10))
            .add(&Polynomial::monomial_ratio(8, &[(0, 1), (1, 1)], 1, 20))
            .add(&Polynomial::monomial_ratio(8, &[(2, 2)], 1, 8))
            .add(&Polynomial::monomial_ratio(8, &[(4, 2)], 1, 8));
        assert!(psi.signed_laplacian(sig.signs()).is_zero());
        let report =
            conformal_scalar_curvature(&ScalarField::polynomial(psi).unwrap(), &sig).unwrap();
        assert_eq!(report.max_abs, 0.0);
    }

    #[test]
    fn non_harmonic_field_has_curvature() {
        let sig = FlatSignature::split_eight();
        let psi = Polynomial::constant_int(8, 1)
            .add(&Polynomial::monomial_ratio(8, &[(0, 2)], 1, 10));
        let report =
            conformal_scalar_curvature(&ScalarField::polynomial(psi.clone(), ).unwrap(), &sig)
                .unwrap();
        assert!(report.max_abs > 0.3);
        // Pointwise value matches −c(8)·Ψ^{−5/3}·(2/10) at the center.
        let center = vec![0.0; 8];
        let expect = -curvature_prefactor(8) * 1.0f64.powf(-5.0 / 3.0) * 0.2;
        let via_general = conformal_curvature_general(&psi, &sig, 2.0 / 3.0, &center);
        assert!((via_general - expect).abs() < 1e-12);
    }

    #[test]
    fn wrong_exponent_leaves_a_remnant() {
        let sig = FlatSignature::split_eight();
        // Harmonic, nonlinear: x₀² − x₁².
        let psi = Polynomial::constant_int(8, 1)
            .add(&Polynomial::monomial_ratio(8, &[(0, 2)], 1, 5))
            .sub(&Polynomial::monomial_ratio(8, &[(1, 2)], 1, 5));
        assert!(psi.signed_laplacian(sig.signs()).is_zero());
        // Right exponent: zero everywhere.
        let x = vec![0.25; 8];
        assert!(conformal_curvature_general(&psi, &sig, 2.0 / 3.0, &x).abs() < 1e-15);
        // Wrong exponent 1/2: bounded away from zero where the gradient is.
        let r = conformal_curvature_general(&psi, &sig, 0.5, &x);
        assert!(r.abs() >= 1e-3, "remnant {r}");
        // The inverse-metric reading also fails to vanish.
        let ri = inverse_reading_curvature(&psi, &sig, &x);
        assert!(ri.abs() >= 1e-3, "inverse reading {ri}");
    }

    #[test]
    fn non_positive_field_rejected() {
        let sig = FlatSignature::split_eight();
        let psi = Polynomial::monomial(8, &[(0, 1)], rat(1)); // vanishes at 0
        assert!(matches!(
            conformal_scalar_curvature(&ScalarField::polynomial(psi).unwrap(), &sig),
            Err(ConformalError::NonPositiveField)
        ));
    }

    #[test]
    fn degree_cap_enforced() {
        let p = Polynomial::monomial(3, &[(0, 5)], rat(1));
        assert!(matches!(
            ScalarField::polynomial(p),
            Err(ConformalError::DegreeTooHigh(5))
        ));
    }

    #[test]
    fn fd_oracle_agrees_with_closed_form_in_3d() {
        let sig = FlatSignature::euclidean(3).unwrap();
        let p_exp = 4.0; // 4/(n−2) for n = 3
        let psi_fn = |x: &[f64]| 1.0 + 0.1 * x[0] * x[0] + 0.05 * x[0] * x[1];
        let lap = |_x: &[f64]| 0.2;
        let reference = move |x: &[f64]| {
            -curvature_prefactor(3) * psi_fn(x).powf(-5.0) * lap(x)
        };

        let build = |pts: usize| {
            let h = 1.0 / (pts as f64 - 1.0);
            let psi = GridField::from_fn_centered(&[pts, pts, pts], &[h, h, h], psi_fn).unwrap();
            conformal_metric_grid(&psi, &sig, p_exp).unwrap()
        };
        let (err_h, err_half, report) =
            grid::fd_refinement_errors(&build(9), &build(17), reference).unwrap();
        let order = report.order_estimate.unwrap();
        assert!(
            (1.7..=2.3).contains(&order),
            "order {order} (errors {err_h}, {err_half})"
        );
    }

    #[test]
    fn field_fixture_roundtrip() {
        let sig = FlatSignature::new(vec![1, -1, 1]).unwrap();
        let field = GridField::from_fn_centered(&[5, 5, 5], &[0.25, 0.25, 0.25], |x| {
            1.0 + 0.3 * x[0] - 0.2 * x[1] * x[2]
        })
        .unwrap();
        let text = write_field_text(&field, &sig);
        let (parsed, parsed_sig) = read_field_text(&text).unwrap();
        assert_eq!(parsed_sig, sig);
        assert_eq!(parsed.dims, field.dims);
        assert_eq!(parsed.values, field.values);
        assert_eq!(parsed.origin, field.origin);
    }

    #[test]
    fn fixture_parse_errors_carry_line_numbers() {
        let bad = "n 3\nsigns +1 -1 +1\ndims 5 5 5\nh 0.1 0.1 oops\n";
        match read_field_text(bad) {
            Err(ConformalError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
