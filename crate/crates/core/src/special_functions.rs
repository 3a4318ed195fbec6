//! Classical generalized Laguerre polynomials and the exceptional X1/Xm
//! Laguerre families built from them.
//!
//! Every exceptional value is assembled from classical polynomials. The
//! second-order equation the exceptional family satisfies is only used as a
//! residual diagnostic (see [`diagnose_r_coefficient`]).
//!
//! Degree `-1` denotes the zero polynomial throughout, so identities that
//! reach `L_{n-1}` at `n = 0` need no special casing.

use serde::Serialize;

use crate::error::{finite, invalid, Error, Result};

/// Upward three-term recurrence for `L_n^(alpha)(x)`; `n < 0` gives 0.
///
/// At negative `x` every term of the recurrence has the same sign for
/// `alpha > -1`, so the same loop serves `L_m(-g)` without cancellation.
pub(crate) fn laguerre_unchecked(n: i64, alpha: f64, x: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut curr = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * curr - (kf + alpha) * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// `L̂_{n+m}^(alpha)(g)` without argument validation.
pub(crate) fn xm_laguerre_unchecked(n: i64, m: i64, alpha: f64, g: f64) -> f64 {
    laguerre_unchecked(m, alpha, -g) * laguerre_unchecked(n, alpha - 1.0, g)
        + laguerre_unchecked(m, alpha - 1.0, -g) * laguerre_unchecked(n - 1, alpha, g)
}

/// `L_m^(alpha-1)(-g)` without argument validation.
pub(crate) fn xm_denominator_unchecked(m: i64, alpha: f64, g: f64) -> f64 {
    laguerre_unchecked(m, alpha - 1.0, -g)
}

fn check_degree(n: i32) -> Result<i64> {
    if n < -1 {
        return Err(invalid("n", format!("degree must be >= -1, got {n}")));
    }
    Ok(n as i64)
}

fn check_exceptional_args(alpha: f64, g: f64) -> Result<()> {
    finite("alpha", alpha)?;
    finite("g", g)?;
    if alpha <= 0.0 {
        return Err(invalid("alpha", format!("must be > 0, got {alpha}")));
    }
    if g < 0.0 {
        return Err(invalid("g", format!("must be >= 0, got {g}")));
    }
    Ok(())
}

/// Generalized Laguerre polynomial `L_n^(alpha)(x)`.
///
/// `n = -1` returns 0. Negative arguments are allowed.
pub fn laguerre(n: i32, alpha: f64, x: f64) -> Result<f64> {
    let n = check_degree(n)?;
    finite("alpha", alpha)?;
    finite("x", x)?;
    Ok(laguerre_unchecked(n, alpha, x))
}

/// `d/dx L_n^(alpha)(x) = -L_{n-1}^(alpha+1)(x)`.
pub fn laguerre_derivative(n: i32, alpha: f64, x: f64) -> Result<f64> {
    let n = check_degree(n)?;
    finite("alpha", alpha)?;
    finite("x", x)?;
    Ok(-laguerre_unchecked(n - 1, alpha + 1.0, x))
}

/// X1 exceptional Laguerre polynomial of degree `n_hat = n + 1`:
/// `-(g + alpha + 1) L_n^(alpha)(g) + L_{n-1}^(alpha)(g)`.
///
/// Equal to `-xm_laguerre(n_hat - 1, 1, alpha, g)`.
pub fn x1_laguerre(n_hat: u32, alpha: f64, g: f64) -> Result<f64> {
    if n_hat == 0 {
        return Err(invalid("n_hat", "the X1 family starts at degree 1"));
    }
    check_exceptional_args(alpha, g)?;
    let n = n_hat as i64 - 1;
    Ok(-(g + alpha + 1.0) * laguerre_unchecked(n, alpha, g) + laguerre_unchecked(n - 1, alpha, g))
}

/// Xm exceptional Laguerre polynomial `L̂_{n+m}^(alpha)(g)`:
/// `L_m^(alpha)(-g) L_n^(alpha-1)(g) + L_m^(alpha-1)(-g) L_{n-1}^(alpha)(g)`.
///
/// Reduces to `L_n^(alpha)(g)` at `m = 0`.
pub fn xm_laguerre(n: u32, m: u32, alpha: f64, g: f64) -> Result<f64> {
    check_exceptional_args(alpha, g)?;
    Ok(xm_laguerre_unchecked(n as i64, m as i64, alpha, g))
}

/// Value, first and second `g`-derivatives of `L̂_{n+m}^(alpha)(g)`,
/// from the classical derivative identities.
pub fn xm_laguerre_with_derivatives(n: u32, m: u32, alpha: f64, g: f64) -> Result<(f64, f64, f64)> {
    check_exceptional_args(alpha, g)?;
    let (n, m) = (n as i64, m as i64);
    let l = laguerre_unchecked;
    // y = a(g) b(g) + c(g) d(g)
    let (a, a1, a2) = (
        l(m, alpha, -g),
        l(m - 1, alpha + 1.0, -g),
        l(m - 2, alpha + 2.0, -g),
    );
    let (b, b1, b2) = (
        l(n, alpha - 1.0, g),
        -l(n - 1, alpha, g),
        l(n - 2, alpha + 1.0, g),
    );
    let (c, c1, c2) = (
        l(m, alpha - 1.0, -g),
        l(m - 1, alpha, -g),
        l(m - 2, alpha + 1.0, -g),
    );
    let (d, d1, d2) = (
        l(n - 1, alpha, g),
        -l(n - 2, alpha + 1.0, g),
        l(n - 3, alpha + 2.0, g),
    );
    let y = a * b + c * d;
    let y1 = a1 * b + a * b1 + c1 * d + c * d1;
    let y2 = a2 * b + 2.0 * a1 * b1 + a * b2 + c2 * d + 2.0 * c1 * d1 + c * d2;
    Ok((y, y1, y2))
}

/// Denominator `L_m^(alpha-1)(-g)` of the Xm eigenfunctions and potentials.
///
/// Strictly positive for `alpha > 0`, `g >= 0`: every series coefficient of
/// `L_m^(beta)(-g)` is positive when `beta > -1`.
pub fn xm_denominator(m: u32, alpha: f64, g: f64) -> Result<f64> {
    check_exceptional_args(alpha, g)?;
    Ok(xm_denominator_unchecked(m as i64, alpha, g))
}

/// Which Laguerre polynomial divides the `alpha`-dependent part of `R_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RDenominator {
    /// `L_m^(alpha)(-g)`; at `m = 1` this is `g + alpha + 1`.
    Alpha,
    /// `L_m^(alpha-1)(-g)`; at `m = 1` this is `g + alpha`.
    AlphaMinusOne,
}

/// Coefficients of `y'' + Q y' + R y = 0` at one point.
///
/// `R = degree / g + r_linear(..)`; only the `degree`-independent part is
/// stored, once for each candidate denominator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeCoefficients {
    pub q: f64,
    pub r_linear_alpha: f64,
    pub r_linear_alpha_minus_one: f64,
}

impl OdeCoefficients {
    pub fn r_linear(&self, form: RDenominator) -> f64 {
        match form {
            RDenominator::Alpha => self.r_linear_alpha,
            RDenominator::AlphaMinusOne => self.r_linear_alpha_minus_one,
        }
    }

    /// Full `R` for a polynomial of total degree `degree` (that is `n + m`).
    pub fn r(&self, degree: u32, g: f64, form: RDenominator) -> f64 {
        degree as f64 / g + self.r_linear(form)
    }
}

/// `Q_m(g)` and both candidate `R_m(g)` linear parts of the Xm Laguerre
/// equation.
pub fn ode_coefficients(m: u32, alpha: f64, g: f64) -> Result<OdeCoefficients> {
    if m == 0 {
        return Err(invalid("m", "exceptional coefficients need m >= 1"));
    }
    check_exceptional_args(alpha, g)?;
    if g == 0.0 {
        return Err(Error::Pole("g = 0"));
    }
    let m = m as i64;
    let num = laguerre_unchecked(m - 1, alpha, -g);
    let q = (alpha + 1.0 - g) / g - 2.0 * num / xm_denominator_unchecked(m, alpha, g);
    let r_linear_alpha = -2.0 * alpha * num / laguerre_unchecked(m, alpha, -g) / g;
    let r_linear_alpha_minus_one = -2.0 * alpha * num / xm_denominator_unchecked(m, alpha, g) / g;
    Ok(OdeCoefficients {
        q,
        r_linear_alpha,
        r_linear_alpha_minus_one,
    })
}

/// Outcome of testing both candidate `R` coefficients against the closed-form
/// Xm polynomials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RCoefficientDiagnosis {
    pub m: u32,
    pub alpha: f64,
    /// Largest scaled residual with the `L_m^(alpha)(-g)` denominator.
    pub residual_alpha: f64,
    /// Largest scaled residual with the `L_m^(alpha-1)(-g)` denominator.
    pub residual_alpha_minus_one: f64,
    pub tolerance: f64,
    /// The single denominator that annihilates every sampled polynomial, if
    /// exactly one does.
    pub consistent: Option<RDenominator>,
}

pub const ODE_RESIDUAL_TOL: f64 = 1e-9;

/// Evaluates `g y'' + g Q y' + g R y` for `y = L̂_{n+m}^(alpha)` with
/// `n <= 4` on a `g` grid, for both denominators. Residuals are scaled by
/// the sum of the magnitudes of the three terms.
pub fn diagnose_r_coefficient(m: u32, alpha: f64) -> Result<RCoefficientDiagnosis> {
    let mut worst = [0.0f64; 2];
    let forms = [RDenominator::Alpha, RDenominator::AlphaMinusOne];
    for n in 0..=4u32 {
        for i in 1..=80 {
            let g = 0.25 * i as f64;
            let coeff = ode_coefficients(m, alpha, g)?;
            let (y, y1, y2) = xm_laguerre_with_derivatives(n, m, alpha, g)?;
            for (slot, form) in worst.iter_mut().zip(forms) {
                let r = coeff.r(n + m, g, form);
                let terms = [g * y2, g * coeff.q * y1, g * r * y];
                let scale: f64 = terms.iter().map(|t| t.abs()).sum();
                let res = terms.iter().sum::<f64>().abs() / scale.max(f64::MIN_POSITIVE);
                *slot = slot.max(res);
            }
        }
    }
    let passes: Vec<RDenominator> = forms
        .iter()
        .zip(worst)
        .filter(|(_, r)| *r <= ODE_RESIDUAL_TOL)
        .map(|(f, _)| *f)
        .collect();
    Ok(RCoefficientDiagnosis {
        m,
        alpha,
        residual_alpha: worst[0],
        residual_alpha_minus_one: worst[1],
        tolerance: ODE_RESIDUAL_TOL,
        consistent: (passes.len() == 1).then(|| passes[0]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(0, 3.7, 5.2).unwrap(), 1.0);
        assert_eq!(laguerre(1, 2.0, 1.0).unwrap(), 2.0);
        assert_relative_eq!(laguerre(2, 0.0, 2.0).unwrap(), -1.0, epsilon = 1e-15);
        assert_eq!(laguerre(1, 0.0, -1.0).unwrap(), 2.0);
        assert_eq!(laguerre(-1, 0.5, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn laguerre_rejects_bad_input() {
        assert!(laguerre(-2, 0.0, 1.0).is_err());
        assert_eq!(laguerre(2, 0.0, f64::NAN), Err(Error::NonFinite("x")));
        assert!(laguerre(2, f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(laguerre_derivative(0, 1.3, 7.0).unwrap(), 0.0);
        assert_eq!(laguerre_derivative(1, 2.0, 1.0).unwrap(), -1.0);
        assert_relative_eq!(
            laguerre_derivative(2, 0.0, 2.0).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn x1_examples() {
        assert_eq!(x1_laguerre(1, 1.0, 1.0).unwrap(), -3.0);
        assert_eq!(x1_laguerre(1, 2.5, 0.0).unwrap(), -3.5);
        let lhs = x1_laguerre(2, 1.0, 2.0).unwrap();
        let rhs = -xm_laguerre(1, 1, 1.0, 2.0).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-14);
        assert!(x1_laguerre(0, 1.0, 1.0).is_err());
    }

    #[test]
    fn xm_examples() {
        let v = xm_laguerre(0, 2, 1.5, 0.7).unwrap();
        assert_relative_eq!(v, laguerre(2, 1.5, -0.7).unwrap(), max_relative = 1e-15);
        for n in 0..=6 {
            let v = xm_laguerre(n, 0, 2.3, 4.1).unwrap();
            assert_relative_eq!(
                v,
                laguerre(n as i32, 2.3, 4.1).unwrap(),
                max_relative = 1e-12
            );
        }
        assert!(xm_laguerre(1, 1, 0.0, 1.0).is_err());
        assert!(xm_laguerre(1, 1, 1.0, -0.1).is_err());
    }

    #[test]
    fn denominator_examples() {
        assert_eq!(xm_denominator(0, 3.0, 9.0).unwrap(), 1.0);
        assert_eq!(xm_denominator(1, 1.0, 1.0).unwrap(), 2.0);
        assert_relative_eq!(
            xm_denominator(2, 2.0, 0.0).unwrap(),
            3.0,
            max_relative = 1e-15
        );
        assert!(xm_denominator(2, 0.0, 1.0).is_err());
        assert!(xm_denominator(2, -0.5, 1.0).is_err());
    }

    #[test]
    fn ode_coefficient_examples() {
        assert_relative_eq!(
            ode_coefficients(1, 1.0, 1.0).unwrap().q,
            0.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            ode_coefficients(1, 2.0, 2.0).unwrap().q,
            0.0,
            epsilon = 1e-15
        );
        // 50-digit evaluation of both coefficient sets.
        let c = ode_coefficients(2, 1.5, 0.5).unwrap();
        assert_relative_eq!(c.q, 2.153_846_153_846_154, max_relative = 1e-14);
        assert_relative_eq!(c.r_linear_alpha, -2.88, max_relative = 1e-14);
        assert_relative_eq!(
            c.r_linear_alpha_minus_one,
            -5.538_461_538_461_538,
            max_relative = 1e-14
        );
        assert_eq!(ode_coefficients(2, 1.5, 0.0), Err(Error::Pole("g = 0")));
        assert!(ode_coefficients(0, 1.5, 0.5).is_err());
    }

    #[test]
    fn x1_coefficients_match_factored_form() {
        // Q_1 = -(g - alpha)(g + alpha + 1) / (g (g + alpha))
        // R_1 = ((g - alpha)/(g + alpha) + n - 1) / g
        let alpha = 1.7;
        for i in 1..40 {
            let g = 0.3 * i as f64;
            let c = ode_coefficients(1, alpha, g).unwrap();
            let q = -(g - alpha) * (g + alpha + 1.0) / (g * (g + alpha));
            assert_relative_eq!(c.q, q, max_relative = 1e-12, epsilon = 1e-14);
            for n in 1..5u32 {
                let r = ((g - alpha) / (g + alpha) + n as f64 - 1.0) / g;
                assert_relative_eq!(
                    c.r(n, g, RDenominator::AlphaMinusOne),
                    r,
                    max_relative = 1e-12,
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn only_shifted_denominator_annihilates_polynomials() {
        for m in 1..=3 {
            for alpha in [0.5, 1.0, 2.5, 5.5] {
                let d = diagnose_r_coefficient(m, alpha).unwrap();
                assert_eq!(d.consistent, Some(RDenominator::AlphaMinusOne), "{d:?}");
                assert!(d.residual_alpha > 1e-3, "{d:?}");
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let (n, m, alpha, g) = (3, 2, 1.8, 2.4);
        let (_, y1, y2) = xm_laguerre_with_derivatives(n, m, alpha, g).unwrap();
        let f = |x: f64| xm_laguerre(n, m, alpha, x).unwrap();
        let h = 1e-4;
        let d1 = (f(g + h) - f(g - h)) / (2.0 * h);
        let d2 = (f(g + h) - 2.0 * f(g) + f(g - h)) / (h * h);
        assert_relative_eq!(y1, d1, max_relative = 1e-7);
        assert_relative_eq!(y2, d2, max_relative = 1e-5);
    }
}
