//! Direct N-body check of the ground state: the local energy `(H Psi)/Psi`
//! must be the same at every configuration and equal `E_0`.
//!
//! Works in the ordered sector `x_1 < ... < x_N`, where the Jastrow factor is
//! positive for any real `lambda`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::model::{
    energy_level, v_interaction_with, v_new, Configuration, ModelParams, ThreeBodyForm,
};
use crate::quadrature::NeumaierSum;
use crate::wavefunctions::radial_eigenfunction;

pub const DEFAULT_FD_STEP: f64 = 1e-3;
/// Acceptance bound on `stddev/|mean|` and `|mean - E_0|/E_0`.
pub const CONSTANCY_TOL: f64 = 1e-5;

/// Knobs for [`local_energy_with`]. The non-default settings exist for
/// negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalEnergyOptions {
    pub step: f64,
    pub three_body: ThreeBodyForm,
    /// Added to `lambda` in the trial wavefunction only.
    pub trial_lambda_shift: f64,
    /// Multiplies `V_new` in the Hamiltonian.
    pub v_new_scale: f64,
}

impl Default for LocalEnergyOptions {
    fn default() -> Self {
        LocalEnergyOptions {
            step: DEFAULT_FD_STEP,
            three_body: ThreeBodyForm::Consistent,
            trial_lambda_shift: 0.0,
            v_new_scale: 1.0,
        }
    }
}

fn groundstate_unchecked(x: &[f64], p: &ModelParams) -> f64 {
    let n = x.len();
    let mut jastrow = 1.0;
    for i in 0..n {
        for j in i + 1..=(i + p.range()).min(n - 1) {
            jastrow *= (x[j] - x[i]).powf(p.lambda());
        }
    }
    let rho = x.iter().map(|t| t * t).sum::<f64>().sqrt();
    jastrow * radial_eigenfunction(0, p, rho)
}

/// Local energy of the `s = 0` ground state with finite-difference step `h`.
pub fn local_energy(c: &Configuration, p: &ModelParams, h: f64) -> Result<f64> {
    local_energy_with(
        c,
        p,
        &LocalEnergyOptions {
            step: h,
            ..Default::default()
        },
    )
}

/// `-1/2 sum_i (d^2 Psi/dx_i^2)/Psi + omega^2 rho^2/2 + V_int + V_new` with
/// 4th-order central differences per coordinate.
pub fn local_energy_with(
    c: &Configuration,
    p: &ModelParams,
    opts: &LocalEnergyOptions,
) -> Result<f64> {
    if p.degree() != 0 {
        return Err(Error::Unsupported(format!(
            "local energy needs s = 0, got s = {}",
            p.degree()
        )));
    }
    let h = opts.step;
    if !(h.is_finite() && h > 0.0) {
        return Err(invalid(
            "h",
            format!("finite-difference step must be positive, got {h}"),
        ));
    }
    if c.len() != p.n_particles() {
        return Err(Error::Configuration(format!(
            "expected {} positions, got {}",
            p.n_particles(),
            c.len()
        )));
    }
    let x = c.positions();
    if let Some(i) = x.windows(2).position(|w| w[0] + 2.0 * h >= w[1] - 2.0 * h) {
        return Err(Error::Configuration(format!(
            "finite-difference stencil of particles {i} and {} leaves the ordered sector; separate them by more than 4h",
            i + 1
        )));
    }
    let trial = if opts.trial_lambda_shift != 0.0 {
        p.with_lambda(p.lambda() + opts.trial_lambda_shift)?
    } else {
        *p
    };

    let psi0 = groundstate_unchecked(x, &trial);
    let mut shifted = x.to_vec();
    let mut laplacian = NeumaierSum::default();
    for i in 0..x.len() {
        let mut at = |k: f64| {
            shifted[i] = x[i] + k * h;
            groundstate_unchecked(&shifted, &trial)
        };
        let (m2, m1, p1, p2) = (at(-2.0), at(-1.0), at(1.0), at(2.0));
        shifted[i] = x[i];
        laplacian.add((-m2 + 16.0 * m1 - 30.0 * psi0 + 16.0 * p1 - p2) / (12.0 * h * h));
    }
    let kinetic = -0.5 * laplacian.value() / psi0;

    let w = p.omega();
    let rho = c.hyperradius();
    let trap = 0.5 * w * w * rho * rho;
    let interaction = v_interaction_with(c, p, opts.three_body)?;
    let extension = opts.v_new_scale * v_new(rho, p);
    Ok(kinetic + trap + interaction + extension)
}

/// Summary of the local energy over sampled configurations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanStatistics {
    pub params: ModelParams,
    pub n_samples: usize,
    pub seed: u64,
    pub mean: f64,
    pub stddev: f64,
    pub max_dev: f64,
    #[serde(rename = "E_analytic")]
    pub e_analytic: f64,
    pub pass: bool,
}

impl ScanStatistics {
    pub fn relative_spread(&self) -> f64 {
        self.stddev / self.mean.abs()
    }

    pub fn relative_bias(&self) -> f64 {
        (self.mean - self.e_analytic).abs() / self.e_analytic.abs()
    }
}

/// Draws ordered configurations: particle `i` sits near
/// `shift + (i - (N-1)/2) * spacing`, with `spacing` uniform in
/// `[0.7, 1.5] l`, a jitter uniform in `[-0.25, 0.25] l` and `shift` uniform
/// in `[-0.5, 0.5] l`, where `l = 1/sqrt(omega)`. Separations are therefore at
/// least `0.2 l`.
pub fn sample_configurations(
    p: &ModelParams,
    n_samples: usize,
    seed: u64,
    step: f64,
) -> Result<Vec<Configuration>> {
    let n = p.n_particles();
    let ell = 1.0 / p.omega().sqrt();
    let min_sep = (10.0 * step).max(0.2 * ell);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n_samples);
    let max_attempts = 100 * n_samples.max(1);
    let mut attempts = 0;
    while out.len() < n_samples {
        if attempts == max_attempts {
            return Err(Error::Sampling(format!(
                "only {} valid configurations after {attempts} attempts",
                out.len()
            )));
        }
        attempts += 1;
        let spacing = rng.gen_range(0.7..1.5) * ell;
        let shift = rng.gen_range(-0.5..0.5) * ell;
        let positions: Vec<f64> = (0..n)
            .map(|i| {
                shift
                    + (i as f64 - 0.5 * (n - 1) as f64) * spacing
                    + rng.gen_range(-0.25..0.25) * ell
            })
            .collect();
        if let Ok(c) = Configuration::with_min_separation(positions, min_sep) {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn constancy_scan(p: &ModelParams, n_samples: usize, seed: u64) -> Result<ScanStatistics> {
    constancy_scan_with(p, n_samples, seed, &LocalEnergyOptions::default())
}

/// Local energy over `n_samples` seeded configurations. Samples are evaluated
/// in parallel and reduced in sample order, so the result is independent of
/// the thread count.
pub fn constancy_scan_with(
    p: &ModelParams,
    n_samples: usize,
    seed: u64,
    opts: &LocalEnergyOptions,
) -> Result<ScanStatistics> {
    if n_samples < 2 {
        return Err(invalid("n_samples", "need at least two samples"));
    }
    let configs = sample_configurations(p, n_samples, seed, opts.step)?;
    let energies: Vec<f64> = configs
        .par_iter()
        .map(|c| local_energy_with(c, p, opts))
        .collect::<Result<_>>()?;
    let mean = energies.iter().copied().collect::<NeumaierSum>().value() / n_samples as f64;
    let var = energies
        .iter()
        .map(|e| (e - mean).powi(2))
        .collect::<NeumaierSum>()
        .value()
        / (n_samples - 1) as f64;
    let max_dev = energies
        .iter()
        .map(|e| (e - mean).abs())
        .fold(0.0, f64::max);
    let e_analytic = energy_level(0, p);
    let stddev = var.sqrt();
    let pass = stddev / mean.abs() <= CONSTANCY_TOL
        && (mean - e_analytic).abs() <= CONSTANCY_TOL * e_analytic;
    Ok(ScanStatistics {
        params: *p,
        n_samples,
        seed,
        mean,
        stddev,
        max_dev,
        e_analytic,
        pass,
    })
}
