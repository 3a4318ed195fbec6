use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;

use xlag::manybody::{constancy_scan_with, LocalEnergyOptions, CONSTANCY_TOL};
use xlag::spectral::{
    consistency_suite, isospectrality_check_with, ode_residual, ode_residual_of,
    orthogonality_matrix, DEFAULT_POINTS, RESIDUAL_TOL,
};
use xlag::wavefunctions::{x1_eigenfunction, QuadratureSpec, X1Denominator};
use xlag::{Error, ModelParams, RadialGrid, VerificationReport};

pub const DEFAULT_SEED: u64 = 20240611;
pub const DEFAULT_SAMPLES: usize = 200;
const ORTHOGONALITY_TOL: f64 = 1e-8;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Residual,
    Spectrum,
    Ortho,
    Consistency,
    LocalEnergy,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Residual => "residual",
            Suite::Spectrum => "spectrum",
            Suite::Ortho => "ortho",
            Suite::Consistency => "consistency",
            Suite::LocalEnergy => "local-energy",
            Suite::All => "all",
        }
    }
}

pub struct Options {
    pub levels: u32,
    pub points: Option<usize>,
    pub seed: u64,
    pub perturb: f64,
}

fn residual(p: &ModelParams, opts: &Options) -> xlag::Result<VerificationReport> {
    let mut r = VerificationReport::new("residual", Some(*p));
    for n in 0..opts.levels {
        let grid = RadialGrid::for_residual(p, n)?;
        r.at_most(
            format!("n={n} scaled residual"),
            ode_residual(n, p, &grid)?,
            RESIDUAL_TOL,
        );
        if p.m() == 1 {
            let doubled = ode_residual_of(n, p, &grid, |rho| {
                x1_eigenfunction(n, p, rho, X1Denominator::Doubled)
            })?;
            r.above(
                format!("n={n} residual with denominator 2g+alpha (must fail)"),
                doubled,
                1e-2,
            );
        }
    }
    if p.m() == 1 {
        r.note("the X1 eigenfunction with denominator 2 omega rho^2 + alpha is not a solution; omega rho^2 + alpha is");
    }
    Ok(r)
}

fn spectrum(p: &ModelParams, opts: &Options) -> xlag::Result<VerificationReport> {
    let grid = RadialGrid::for_spectrum_with_points(
        p,
        opts.levels,
        opts.points.unwrap_or(DEFAULT_POINTS),
    )?;
    isospectrality_check_with(p, opts.levels, &grid, opts.perturb)
}

fn ortho(p: &ModelParams, opts: &Options) -> xlag::Result<VerificationReport> {
    let k = opts.levels.max(1);
    let quad = QuadratureSpec::for_levels(p, k - 1);
    let mat = orthogonality_matrix(p, k, &quad)?;
    let mut r = VerificationReport::new("ortho", Some(*p));
    for (i, row) in mat.iter().enumerate() {
        for (j, v) in row.iter().take(i).enumerate() {
            r.at_most(format!("<Phi_{i}, Phi_{j}>"), v.abs(), ORTHOGONALITY_TOL);
        }
    }
    Ok(r)
}

fn local_energy(p: &ModelParams, opts: &Options) -> xlag::Result<VerificationReport> {
    let le = LocalEnergyOptions {
        v_new_scale: opts.perturb,
        ..Default::default()
    };
    let s = constancy_scan_with(p, DEFAULT_SAMPLES, opts.seed, &le)?;
    let mut r = VerificationReport::new("local-energy", Some(*p));
    r.at_most("stddev/|mean|", s.relative_spread(), CONSTANCY_TOL);
    r.at_most("|mean - E_0|/E_0", s.relative_bias(), CONSTANCY_TOL);
    r.note(format!(
        "{} samples, seed {}, mean {:.16e}, stddev {:.16e}, max_dev {:.16e}, E_0 {:.16e}",
        s.n_samples, s.seed, s.mean, s.stddev, s.max_dev, s.e_analytic
    ));
    Ok(r)
}

fn run_one(suite: Suite, p: &ModelParams, opts: &Options) -> xlag::Result<VerificationReport> {
    let mut r = match suite {
        Suite::Residual => residual(p, opts),
        Suite::Spectrum => spectrum(p, opts),
        Suite::Ortho => ortho(p, opts),
        Suite::Consistency => consistency_suite(p),
        Suite::LocalEnergy => local_energy(p, opts),
        Suite::All => unreachable!(),
    }?;
    if opts.perturb != 1.0 && suite == Suite::LocalEnergy {
        r.note(format!(
            "negative control: V_new scaled by {}",
            opts.perturb
        ));
    }
    Ok(r)
}

fn write_report(dir: &Path, r: &VerificationReport) -> Result<()> {
    let json = dir.join(format!("{}.json", r.suite));
    let text = dir.join(format!("{}.txt", r.suite));
    fs::write(&json, format!("{}\n", r.to_json()))
        .with_context(|| format!("writing {}", json.display()))?;
    fs::write(&text, r.to_text()).with_context(|| format!("writing {}", text.display()))?;
    Ok(())
}

/// Runs the selected suites; `Ok(false)` if any check failed. With
/// [`Suite::All`], suites that do not apply to `p` (for example the
/// local-energy scan at `s > 0`) are skipped and noted.
pub fn run(p: &ModelParams, suite: Suite, opts: &Options, out: Option<&Path>) -> Result<bool> {
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let reports = if suite == Suite::All {
        let mut combined = VerificationReport::new("all", Some(*p));
        let mut parts = Vec::new();
        for s in [
            Suite::Residual,
            Suite::Spectrum,
            Suite::Ortho,
            Suite::Consistency,
            Suite::LocalEnergy,
        ] {
            match run_one(s, p, opts) {
                Ok(r) => parts.push(r),
                Err(Error::Unsupported(why)) => {
                    combined.note(format!("{} skipped: {why}", s.name()))
                }
                Err(e) => return Err(e).with_context(|| format!("suite {}", s.name())),
            }
        }
        for r in &parts {
            combined.merge(r.clone());
        }
        parts.push(combined);
        parts
    } else {
        vec![run_one(suite, p, opts).with_context(|| format!("suite {}", suite.name()))?]
    };
    let summary = reports.last().expect("at least one report");
    print!("{}", summary.to_text());
    if let Some(dir) = out {
        for r in &reports {
            write_report(dir, r)?;
        }
    }
    Ok(summary.passed)
}
