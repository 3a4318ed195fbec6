//! Model parameters, the many-body interaction and the radial potentials of
//! the conventional and rationally extended truncated Calogero-Sutherland
//! model.
//!
//! Units: `hbar = mass = 1`, so `omega` is an inverse time and `rho` a length.

use serde::{Deserialize, Serialize};

use crate::error::{finite, invalid, Error, Result};
use crate::special_functions::{laguerre_unchecked, xm_denominator_unchecked};

/// Default minimum particle separation accepted by [`Configuration::new`].
pub const DEFAULT_MIN_SEPARATION: f64 = 1e-3;

/// Validated model parameters `(N, lambda, r, omega, s, m)`.
///
/// Serializes to a JSON object with exactly the keys
/// `N`, `lambda`, `r`, `omega`, `s`, `m`; unknown keys are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsDocument", into = "ParamsDocument")]
pub struct ModelParams {
    n_particles: usize,
    lambda: f64,
    range: usize,
    omega: f64,
    degree: u32,
    m: u32,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsDocument {
    #[serde(rename = "N")]
    n_particles: usize,
    lambda: f64,
    r: usize,
    omega: f64,
    s: u32,
    m: u32,
}

impl TryFrom<ParamsDocument> for ModelParams {
    type Error = Error;

    fn try_from(d: ParamsDocument) -> Result<Self> {
        ModelParams::new(d.n_particles, d.lambda, d.r, d.omega, d.s, d.m)
    }
}

impl From<ModelParams> for ParamsDocument {
    fn from(p: ModelParams) -> Self {
        ParamsDocument {
            n_particles: p.n_particles,
            lambda: p.lambda,
            r: p.range,
            omega: p.omega,
            s: p.degree,
            m: p.m,
        }
    }
}

impl ModelParams {
    /// `n_particles` = N, `range` = r (index window of the interaction),
    /// `degree` = s (degree of the homogeneous polynomial sector),
    /// `m` = exceptional index (0 is the conventional model).
    pub fn new(
        n_particles: usize,
        lambda: f64,
        range: usize,
        omega: f64,
        degree: u32,
        m: u32,
    ) -> Result<Self> {
        finite("lambda", lambda)?;
        finite("omega", omega)?;
        if n_particles < 2 {
            return Err(invalid(
                "N",
                format!("need at least 2 particles, got {n_particles}"),
            ));
        }
        if range < 1 || range > n_particles - 1 {
            return Err(invalid(
                "r",
                format!(
                    "must satisfy 1 <= r <= N-1 = {}, got {range}",
                    n_particles - 1
                ),
            ));
        }
        if omega <= 0.0 {
            return Err(invalid("omega", format!("must be > 0, got {omega}")));
        }
        if lambda <= 0.0 {
            return Err(invalid(
                "lambda",
                format!("must be > 0 for a normalizable Jastrow factor, got {lambda}"),
            ));
        }
        let p = ModelParams {
            n_particles,
            lambda,
            range,
            omega,
            degree,
            m,
        };
        if p.tau() <= 1.0 {
            return Err(invalid(
                "lambda",
                format!("derived tau = {} must exceed 1", p.tau()),
            ));
        }
        Ok(p)
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Degree `s` of the homogeneous polynomial factor.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn with_m(&self, m: u32) -> Self {
        ModelParams { m, ..*self }
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(
            self.n_particles,
            lambda,
            self.range,
            self.omega,
            self.degree,
            self.m,
        )
    }

    pub fn with_range(&self, range: usize) -> Result<Self> {
        Self::new(
            self.n_particles,
            self.lambda,
            range,
            self.omega,
            self.degree,
            self.m,
        )
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(
            self.n_particles,
            self.lambda,
            self.range,
            omega,
            self.degree,
            self.m,
        )
    }

    /// Number of pairs with `|i - j| <= r`: `r (2N - r - 1) / 2`.
    pub fn pair_count(&self) -> usize {
        self.range * (2 * self.n_particles - self.range - 1) / 2
    }

    /// Coefficient of `Phi'/rho` in the radial equation.
    pub fn tau(&self) -> f64 {
        let n = self.n_particles as f64;
        n + 2.0 * self.degree as f64 - 1.0 + self.lambda * 2.0 * self.pair_count() as f64
    }

    /// Laguerre parameter `(tau - 1) / 2`.
    pub fn alpha(&self) -> f64 {
        0.5 * (self.tau() - 1.0)
    }

    /// Non-fatal remarks about the parameter choice.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.lambda < 1.0 {
            out.push(format!(
                "lambda = {} lies in the attractive regime: the two-body term lambda(lambda-1)/x^2 is negative",
                self.lambda
            ));
        }
        out
    }
}

/// `(tau, alpha, pair_count)` derived from a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedParams {
    pub tau: f64,
    pub alpha: f64,
    pub pair_count: usize,
}

pub fn derived_params(p: &ModelParams) -> DerivedParams {
    DerivedParams {
        tau: p.tau(),
        alpha: p.alpha(),
        pair_count: p.pair_count(),
    }
}

/// `E_n = omega (2n + alpha + 1)`; the same for every `m`.
pub fn energy_level(n: u32, p: &ModelParams) -> f64 {
    p.omega * (2.0 * n as f64 + p.alpha() + 1.0)
}

/// Ordered particle positions `x_1 < x_2 < ... < x_N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Configuration {
    positions: Vec<f64>,
    min_separation: f64,
}

impl Configuration {
    pub fn new(positions: Vec<f64>) -> Result<Self> {
        Self::with_min_separation(positions, DEFAULT_MIN_SEPARATION)
    }

    pub fn with_min_separation(positions: Vec<f64>, min_separation: f64) -> Result<Self> {
        if positions.len() < 2 {
            return Err(Error::Configuration("need at least two particles".into()));
        }
        if let Some(i) = positions.iter().position(|x| !x.is_finite()) {
            return Err(Error::Configuration(format!("position {i} is not finite")));
        }
        for (i, w) in positions.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::Configuration(format!(
                    "positions must be strictly increasing (index {i})"
                )));
            }
            if w[1] - w[0] < min_separation {
                return Err(Error::Configuration(format!(
                    "particles {i} and {} closer than {min_separation:e}",
                    i + 1
                )));
            }
        }
        Ok(Configuration {
            positions,
            min_separation,
        })
    }

    /// Sorts the positions first; labels follow position order.
    pub fn from_unsorted(mut positions: Vec<f64>) -> Result<Self> {
        positions.sort_by(f64::total_cmp);
        Self::new(positions)
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn min_separation(&self) -> f64 {
        self.min_separation
    }

    /// `rho = sqrt(sum x_i^2)`.
    pub fn hyperradius(&self) -> f64 {
        self.positions.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Orientation and range of the three-body term.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreeBodyForm {
    /// `lambda^2 r_ij.r_kj / (r_ij^2 r_kj^2)` over `i<j<k` with
    /// `|i-j| <= r`, `|j-k| <= r` and `|i-k| > r`. Makes the truncated
    /// Jastrow state an exact eigenfunction and vanishes at `r = N-1`.
    #[default]
    Consistent,
    /// `lambda^2 r_ij.r_jk / (r_ji^2 r_jk^2)` over every `i<j<k` with
    /// `|i-j| <= r`, `|j-k| <= r`: opposite orientation and no `|i-k| > r`
    /// exclusion. The Jastrow state is not an eigenfunction of it; kept as a
    /// negative control.
    Unrestricted,
}

/// Two- and three-body interaction with the default [`ThreeBodyForm`].
pub fn v_interaction(c: &Configuration, p: &ModelParams) -> Result<f64> {
    v_interaction_with(c, p, ThreeBodyForm::default())
}

pub fn v_interaction_with(c: &Configuration, p: &ModelParams, form: ThreeBodyForm) -> Result<f64> {
    let n = p.n_particles;
    if c.len() != n {
        return Err(Error::Configuration(format!(
            "expected {n} positions, got {}",
            c.len()
        )));
    }
    let x = c.positions();
    let (lam, r) = (p.lambda, p.range);
    let mut two = 0.0;
    for i in 0..n {
        for j in i + 1..=(i + r).min(n - 1) {
            let d = x[i] - x[j];
            two += lam * (lam - 1.0) / (d * d);
        }
    }
    let mut three = 0.0;
    for j in 1..n - 1 {
        for i in j.saturating_sub(r)..j {
            for k in j + 1..=(j + r).min(n - 1) {
                let (rij, rjk) = (x[i] - x[j], x[j] - x[k]);
                let denom = rij * rij * rjk * rjk;
                match form {
                    ThreeBodyForm::Consistent if k - i > r => {
                        three += lam * lam * rij * (-rjk) / denom
                    }
                    ThreeBodyForm::Consistent => {}
                    ThreeBodyForm::Unrestricted => three += lam * lam * rij * rjk / denom,
                }
            }
        }
    }
    Ok(two + three)
}

/// Rational extension `V_{m,new}(rho)`; identically 0 for `m = 0`.
///
/// With `g = omega rho^2` and `D = L_m^(alpha-1)(-g)`:
/// `-2 omega g L_{m-2}^(alpha+1)(-g)/D + 2 omega (alpha + g - 1) L_{m-1}^(alpha)(-g)/D
///  + 4 omega g (L_{m-1}^(alpha)(-g)/D)^2 - 2 m omega`.
pub fn v_new(rho: f64, p: &ModelParams) -> f64 {
    if p.m == 0 {
        return 0.0;
    }
    let (w, a, m) = (p.omega, p.alpha(), p.m as i64);
    let g = w * rho * rho;
    let d = xm_denominator_unchecked(m, a, g);
    let ratio = laguerre_unchecked(m - 1, a, -g) / d;
    let w2r2 = w * w * rho * rho;
    -2.0 * w2r2 * laguerre_unchecked(m - 2, a + 1.0, -g) / d
        + 2.0 * w * (a + g - 1.0) * ratio
        + 4.0 * w2r2 * ratio * ratio
        - 2.0 * m as f64 * w
}

/// The X1 potential in its partial-fraction form
/// `4 omega/(2 omega rho^2 + tau - 1) - 8 omega (tau - 1)/(2 omega rho^2 + tau - 1)^2`.
/// Independent of `p.m`.
pub fn v_new_x1_partial_fractions(rho: f64, p: &ModelParams) -> f64 {
    let (w, t) = (p.omega, p.tau());
    let den = 2.0 * w * rho * rho + t - 1.0;
    4.0 * w / den - 8.0 * w * (t - 1.0) / (den * den)
}

/// Constants of the ansatz `(alpha1 + alpha2 omega^2 rho^2)/(beta1 + beta2 omega^2 rho^2)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtConstants {
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl ExtConstants {
    pub fn evaluate(&self, rho: f64, omega: f64) -> f64 {
        let w2r2 = omega * omega * rho * rho;
        let den = self.beta1 + self.beta2 * w2r2;
        (self.alpha1 + self.alpha2 * w2r2) / (den * den)
    }
}

/// Constants for which the rational ansatz reproduces the X1 potential.
/// Only defined for `m = 1`.
pub fn ext_constants(p: &ModelParams) -> Result<ExtConstants> {
    if p.m != 1 {
        return Err(Error::Unsupported(format!(
            "the two-constant rational ansatz describes the X1 extension only (m = 1), got m = {}",
            p.m
        )));
    }
    let (w, t) = (p.omega, p.tau());
    Ok(ExtConstants {
        alpha1: -4.0 * w * (t - 1.0),
        alpha2: 8.0,
        beta1: t - 1.0,
        beta2: 2.0 / w,
    })
}

/// Effective potential of `u = rho^(tau/2) Phi` with `V_new` scaled by
/// `v_new_scale` (0 for the conventional model).
pub(crate) fn v_eff_scaled(rho: f64, p: &ModelParams, v_new_scale: f64) -> f64 {
    let w = p.omega;
    let half_tau = 0.5 * p.tau();
    let base = 0.5 * w * w * rho * rho + half_tau * (half_tau - 1.0) / (2.0 * rho * rho);
    if v_new_scale == 0.0 {
        base
    } else {
        base + v_new_scale * v_new(rho, p)
    }
}

/// `V_eff = omega^2 rho^2 / 2 + (tau/2)(tau/2 - 1)/(2 rho^2) [+ V_new]`, so that
/// `-u''/2 + V_eff u = E u` for `u = rho^(tau/2) Phi`.
pub fn v_eff_radial(rho: f64, p: &ModelParams, extended: bool) -> Result<f64> {
    finite("rho", rho)?;
    if rho <= 0.0 {
        return Err(invalid(
            "rho",
            "effective potential is singular at rho <= 0",
        ));
    }
    Ok(v_eff_scaled(rho, p, if extended { 1.0 } else { 0.0 }))
}
