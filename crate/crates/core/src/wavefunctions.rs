//! Analytic eigenfunctions of the conventional and extended radial problems,
//! the truncated Jastrow factor, and norms and node counts under the radial
//! measure `rho^tau d rho`.
//!
//! All eigenfunctions are unnormalized.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::grid::RadialGrid;
use crate::model::{energy_level, Configuration, ModelParams};
use crate::quadrature::{GaussLegendre, NeumaierSum};
use crate::special_functions::{
    laguerre_unchecked, xm_denominator_unchecked, xm_laguerre_unchecked,
};

/// A point of the hyperradial coordinate and its dimensionless form `g = omega rho^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialPoint {
    pub rho: f64,
    pub g: f64,
}

impl RadialPoint {
    pub fn new(rho: f64, omega: f64) -> Result<Self> {
        let g = omega * rho * rho;
        if !(rho.is_finite() && g.is_finite()) || rho < 0.0 {
            return Err(invalid(
                "rho",
                format!("must be finite and >= 0, got {rho}"),
            ));
        }
        Ok(RadialPoint { rho, g })
    }
}

/// `e^{-g/2} L_n^(alpha)(g)`.
pub fn conventional_eigenfunction(n: u32, p: &ModelParams, rho: f64) -> f64 {
    let g = p.omega() * rho * rho;
    (-0.5 * g).exp() * laguerre_unchecked(n as i64, p.alpha(), g)
}

/// Radial eigenfunction `Phi_n` of level `n` for the model's `m`.
///
/// `m = 0` is [`conventional_eigenfunction`]; otherwise
/// `e^{-g/2} L̂_{n+m}^(alpha)(g) / L_m^(alpha-1)(-g)`.
pub fn radial_eigenfunction(n: u32, p: &ModelParams, rho: f64) -> f64 {
    if p.m() == 0 {
        return conventional_eigenfunction(n, p, rho);
    }
    let (a, m) = (p.alpha(), p.m() as i64);
    let g = p.omega() * rho * rho;
    (-0.5 * g).exp() * xm_laguerre_unchecked(n as i64, m, a, g) / xm_denominator_unchecked(m, a, g)
}

/// Denominator choice for the X1 eigenfunction written with the X1 polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum X1Denominator {
    /// `omega rho^2 + alpha`, the `m = 1` case of `L_m^(alpha-1)(-g)`.
    Corrected,
    /// `2 omega rho^2 + alpha`; not an eigenfunction. Kept as a residual witness.
    Doubled,
}

/// `e^{-g/2} L̂_{n+1}^(alpha)(g) / denominator`, independent of `p.m`.
/// With [`X1Denominator::Corrected`] this is `-radial_eigenfunction` at `m = 1`.
pub fn x1_eigenfunction(n: u32, p: &ModelParams, rho: f64, denominator: X1Denominator) -> f64 {
    let a = p.alpha();
    let g = p.omega() * rho * rho;
    let n = n as i64;
    let poly = -(g + a + 1.0) * laguerre_unchecked(n, a, g) + laguerre_unchecked(n - 1, a, g);
    let den = match denominator {
        X1Denominator::Corrected => g + a,
        X1Denominator::Doubled => 2.0 * g + a,
    };
    (-0.5 * g).exp() * poly / den
}

fn check_particles(c: &Configuration, p: &ModelParams) -> Result<()> {
    if c.len() != p.n_particles() {
        return Err(Error::Configuration(format!(
            "expected {} positions, got {}",
            p.n_particles(),
            c.len()
        )));
    }
    Ok(())
}

/// Truncated Jastrow factor `prod_{i<j, |i-j| <= r} (x_j - x_i)^lambda`,
/// positive on the ordered sector.
pub fn jastrow(c: &Configuration, p: &ModelParams) -> Result<f64> {
    check_particles(c, p)?;
    let x = c.positions();
    let n = x.len();
    let mut prod = 1.0;
    for i in 0..n {
        for j in i + 1..=(i + p.range()).min(n - 1) {
            prod *= (x[j] - x[i]).powf(p.lambda());
        }
    }
    Ok(prod)
}

/// Ground state `Psi = jastrow * Phi_0(rho)` in the `s = 0` sector.
pub fn manybody_groundstate(c: &Configuration, p: &ModelParams) -> Result<f64> {
    if p.degree() != 0 {
        return Err(Error::Unsupported(format!(
            "many-body wavefunctions need s = 0 (P_0 = 1), got s = {}",
            p.degree()
        )));
    }
    Ok(jastrow(c, p)? * radial_eigenfunction(0, p, c.hyperradius()))
}

/// Composite Gauss-Legendre rule on `[0, rho_max]`, split at `rho_split`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub rho_max: f64,
    pub rho_split: f64,
    /// Panels on each of the two segments.
    pub panels: usize,
    pub order: usize,
}

/// Smallest admissible `omega rho_max^2` for level `n`.
pub(crate) fn min_g_max(n: u32, p: &ModelParams) -> f64 {
    2.0 * (2.0 * n as f64 + p.alpha() + 1.0) + 20.0
}

impl QuadratureSpec {
    /// Spec covering levels `0..=max_level`: split at the classical turning
    /// point of the top level, cutoff at `g = 4 (2n + alpha + 1) + 40`.
    pub fn for_levels(p: &ModelParams, max_level: u32) -> Self {
        let w = p.omega();
        let g_max =
            min_g_max(max_level, p).max(4.0 * (2.0 * max_level as f64 + p.alpha() + 1.0) + 40.0);
        QuadratureSpec {
            rho_max: (g_max / w).sqrt(),
            rho_split: (2.0 * energy_level(max_level, p)).sqrt() / w,
            panels: 8,
            order: 64,
        }
    }

    pub fn with_panels(self, panels: usize) -> Self {
        QuadratureSpec { panels, ..self }
    }

    fn integrate(&self, rule: &GaussLegendre, f: impl Fn(f64) -> f64) -> f64 {
        let split = self.rho_split.clamp(0.0, self.rho_max);
        let mut s = NeumaierSum::default();
        if split > 0.0 {
            s.add(rule.integrate_composite(0.0, split, self.panels, &f));
        }
        s.add(rule.integrate_composite(split, self.rho_max, self.panels, &f));
        s.value()
    }
}

/// Tail above `rho_max` may contribute at most this fraction of the total.
pub const TAIL_TOLERANCE: f64 = 1e-10;

/// `<Phi_i, Phi_j>` with weight `rho^tau` on `[0, rho_max]`.
pub fn inner_product(i: u32, j: u32, p: &ModelParams, quad: &QuadratureSpec) -> Result<f64> {
    let top = i.max(j);
    let g_max = p.omega() * quad.rho_max * quad.rho_max;
    if g_max < min_g_max(top, p) {
        return Err(invalid(
            "rho_max",
            format!(
                "omega rho_max^2 = {g_max:.4} is below 2(2n+alpha+1)+20 = {:.4}",
                min_g_max(top, p)
            ),
        ));
    }
    if quad.panels == 0 || quad.order == 0 {
        return Err(invalid(
            "quadrature",
            "need at least one panel and one node",
        ));
    }
    let tau = p.tau();
    let rule = GaussLegendre::new(quad.order);
    let f = |rho: f64| {
        radial_eigenfunction(i, p, rho) * radial_eigenfunction(j, p, rho) * rho.powf(tau)
    };
    let total = quad.integrate(&rule, f);
    let tail =
        rule.integrate_composite(quad.rho_max, 2.0 * quad.rho_max, quad.panels, |rho: f64| {
            f(rho).abs()
        });
    let reference = if i == j {
        total.abs()
    } else {
        let ni = quad.integrate(&rule, |rho: f64| {
            radial_eigenfunction(i, p, rho).powi(2) * rho.powf(tau)
        });
        let nj = quad.integrate(&rule, |rho: f64| {
            radial_eigenfunction(j, p, rho).powi(2) * rho.powf(tau)
        });
        (ni * nj).sqrt()
    };
    if !(total.is_finite() && tail.is_finite()) || tail > TAIL_TOLERANCE * reference {
        return Err(Error::Quadrature(format!(
            "tail beyond rho_max = {} is {tail:.3e} against {reference:.3e}",
            quad.rho_max
        )));
    }
    Ok(total)
}

/// `int_0^rho_max Phi_n^2 rho^tau d rho`.
pub fn norm(n: u32, p: &ModelParams, quad: &QuadratureSpec) -> Result<f64> {
    let v = inner_product(n, n, p, quad)?;
    if v <= 0.0 {
        return Err(Error::Quadrature(format!("non-positive norm {v}")));
    }
    Ok(v)
}

impl RadialGrid {
    /// Grid for [`count_nodes`]: reaches `omega rho^2 = 2(2n+alpha+1)+20` with
    /// at least 200 points per unit `g`.
    pub fn for_nodes(p: &ModelParams, n: u32) -> Result<Self> {
        let w = p.omega();
        let rho_max = (min_g_max(n, p) / w).sqrt();
        // dg = 2 omega rho h at the far end.
        let h = 1.0 / (200.0 * 2.0 * w * rho_max) * 0.99;
        let points = (rho_max / h).ceil() as usize;
        RadialGrid::origin_anchored(rho_max + h, points)
    }
}

/// Sign changes of `Phi_n` over the grid points.
///
/// Two sign changes in adjacent cells are treated as an unresolved
/// near-tangency and reported as [`Error::NodeAmbiguity`].
pub fn count_nodes(n: u32, p: &ModelParams, grid: &RadialGrid) -> Result<usize> {
    let w = p.omega();
    let dg = w * (grid.rho_max().powi(2) - (grid.rho_max() - grid.spacing()).powi(2));
    if dg > 1.0 / 200.0 {
        return Err(Error::Grid(format!(
            "grid spacing gives dg = {dg:.3e} near rho_max; need at least 200 points per unit g"
        )));
    }
    let mut count = 0;
    let mut last_sign = 0.0;
    let mut last_change: Option<usize> = None;
    for (i, rho) in grid.points().enumerate() {
        let v = radial_eigenfunction(n, p, rho);
        if v == 0.0 {
            continue;
        }
        let s = v.signum();
        if last_sign != 0.0 && s != last_sign {
            if let Some(prev) = last_change {
                if i - prev <= 1 {
                    return Err(Error::NodeAmbiguity { rho });
                }
            }
            count += 1;
            last_change = Some(i);
        }
        last_sign = s;
    }
    Ok(count)
}
