use anyhow::{bail, Result};

use xlag::model::{v_eff_radial, v_new};
use xlag::special_functions::xm_laguerre;
use xlag::spectral::{numeric_spectrum, SpectrumReport, DEFAULT_POINTS};
use xlag::wavefunctions::{conventional_eigenfunction, radial_eigenfunction};
use xlag::{ModelParams, RadialGrid};

use crate::num;

const DEFAULT_TABLE_POINTS: usize = 400;

/// `rho_i = rho_max i / points` for `i = 1..=points`; the default `rho_max`
/// reaches `omega rho^2 = 2 (2n + alpha + 1) + 20`.
fn table_grid(
    p: &ModelParams,
    rho_max: Option<f64>,
    points: Option<usize>,
    level: u32,
) -> Result<Vec<f64>> {
    let w = p.omega();
    let rho_max = rho_max
        .unwrap_or_else(|| ((2.0 * (2.0 * level as f64 + p.alpha() + 1.0) + 20.0) / w).sqrt());
    let points = points.unwrap_or(DEFAULT_TABLE_POINTS);
    if !(rho_max.is_finite() && rho_max > 0.0) {
        bail!("--rho-max must be positive and finite, got {rho_max}");
    }
    if points == 0 {
        bail!("--points must be at least 1");
    }
    Ok((1..=points)
        .map(|i| rho_max * i as f64 / points as f64)
        .collect())
}

pub fn potential(
    p: &ModelParams,
    rho_max: Option<f64>,
    points: Option<usize>,
    level: u32,
) -> Result<String> {
    let w = p.omega();
    let mut out = String::from("rho,g,v_oscillator,v_new,v_eff_conventional,v_eff_extended\n");
    for rho in table_grid(p, rho_max, points, level)? {
        let row = [
            rho,
            w * rho * rho,
            0.5 * w * w * rho * rho,
            v_new(rho, p),
            v_eff_radial(rho, p, false)?,
            v_eff_radial(rho, p, true)?,
        ];
        out.push_str(&row.map(num).join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn wavefunction(
    p: &ModelParams,
    rho_max: Option<f64>,
    points: Option<usize>,
    level: u32,
) -> Result<String> {
    let w = p.omega();
    let mut out =
        String::from("rho,g,phi_conventional,phi_extended,v_eff_conventional,v_eff_extended\n");
    for rho in table_grid(p, rho_max, points, level)? {
        let row = [
            rho,
            w * rho * rho,
            conventional_eigenfunction(level, p, rho),
            radial_eigenfunction(level, p, rho),
            v_eff_radial(rho, p, false)?,
            v_eff_radial(rho, p, true)?,
        ];
        out.push_str(&row.map(num).join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn spectrum(p: &ModelParams, levels: u32, points: Option<usize>) -> Result<String> {
    let grid = RadialGrid::for_spectrum_with_points(p, levels, points.unwrap_or(DEFAULT_POINTS))?;
    let report = numeric_spectrum(p, levels, &grid)?;
    let mut out = String::from(SpectrumReport::CSV_HEADER);
    out.push('\n');
    for r in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n,
            num(r.e_analytic),
            num(r.e_numeric_conventional),
            num(r.e_numeric_extended),
            num(r.rel_err_conventional),
            num(r.rel_err_extended)
        ));
    }
    Ok(out)
}

/// `L̂_{n+m}^(alpha)(g)` for `n <= 6`, `m <= 3`, `alpha in {0.5, 1, 2.5, 7}`, `g = 0, 0.5, ..., 10`.
pub fn polynomial_dump() -> String {
    let mut out = String::from("n,m,alpha,g,value\n");
    for m in 0..=3u32 {
        for n in 0..=6u32 {
            for alpha in [0.5, 1.0, 2.5, 7.0] {
                for i in 0..=20 {
                    let g = 0.5 * i as f64;
                    let v = xm_laguerre(n, m, alpha, g).expect("arguments are in range");
                    out.push_str(&format!("{n},{m},{},{},{}\n", num(alpha), num(g), num(v)));
                }
            }
        }
    }
    out
}
