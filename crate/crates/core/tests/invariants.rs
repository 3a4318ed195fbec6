use proptest::prelude::*;
use statrs::function::gamma::ln_gamma;

use xlag::manybody::constancy_scan;
use xlag::model::{energy_level, v_eff_radial, v_new};
use xlag::special_functions::{
    laguerre, laguerre_derivative, xm_denominator, xm_laguerre_with_derivatives,
};
use xlag::spectral::{eigenvector_overlap, level_count_below, solve_radial, TOL_ISO_PER_OMEGA};
use xlag::wavefunctions::{norm, radial_eigenfunction, QuadratureSpec};
use xlag::{ModelParams, RadialGrid};

/// `sum_k (-1)^k binom(n + alpha, n - k) x^k / k!` and the sum of the term magnitudes.
fn laguerre_series(n: u32, alpha: f64, x: f64) -> (f64, f64) {
    let (mut sum, mut scale) = (0.0, 0.0);
    for k in 0..=n {
        let mut binom = 1.0;
        for j in 1..=(n - k) {
            binom *= (alpha + k as f64 + j as f64) / j as f64;
        }
        let mut term = binom;
        for j in 1..=k {
            term *= -x / j as f64;
        }
        sum += term;
        scale += term.abs();
    }
    (sum, scale)
}

fn battery_base() -> impl Strategy<Value = ModelParams> {
    let bases = vec![
        (2usize, 1.0, 1usize, 0u32, 1.0),
        (3, 1.0, 1, 0, 1.0),
        (3, 1.5, 2, 0, 1.0),
        (4, 0.5, 3, 0, 2.0),
        (3, 2.0, 1, 1, 1.0),
    ];
    (prop::sample::select(bases), 0u32..4)
        .prop_map(|((n, lam, r, s, w), m)| ModelParams::new(n, lam, r, w, s, m).unwrap())
}

proptest! {
    #[test]
    fn recurrence_matches_series(n in 0u32..=8, alpha in -0.9f64..6.0, x in -10.0f64..10.0) {
        let (want, scale) = laguerre_series(n, alpha, x);
        let got = laguerre(n as i32, alpha, x).unwrap();
        prop_assert!((got - want).abs() <= 1e-12 * scale.max(1.0), "{got} vs {want}");
    }

    #[test]
    fn derivative_matches_difference(n in 0u32..=8, alpha in -0.9f64..6.0, x in -5.0f64..10.0) {
        let h = 1e-5;
        let fd = (laguerre(n as i32, alpha, x + h).unwrap() - laguerre(n as i32, alpha, x - h).unwrap()) / (2.0 * h);
        let d = laguerre_derivative(n as i32, alpha, x).unwrap();
        let (_, scale) = laguerre_series(n, alpha, x.abs() + 1.0);
        prop_assert!((d - fd).abs() <= 1e-6 * scale.max(1.0), "{d} vs {fd}");
    }

    #[test]
    fn exceptional_derivatives_match_difference(n in 0u32..=5, m in 1u32..=4, alpha in 0.5f64..6.0, g in 0.2f64..12.0) {
        let h = 1e-4;
        let (y, y1, y2) = xm_laguerre_with_derivatives(n, m, alpha, g).unwrap();
        let (ym, _, _) = xm_laguerre_with_derivatives(n, m, alpha, g - h).unwrap();
        let (yp, _, _) = xm_laguerre_with_derivatives(n, m, alpha, g + h).unwrap();
        let scale = y.abs().max(y1.abs()).max(y2.abs()).max(1.0);
        prop_assert!((y1 - (yp - ym) / (2.0 * h)).abs() <= 1e-6 * scale);
        prop_assert!((y2 - (yp - 2.0 * y + ym) / (h * h)).abs() <= 1e-4 * scale);
    }

    #[test]
    fn denominator_positive(m in 0u32..=6, alpha in 0.01f64..10.0, g in 0.0f64..50.0) {
        prop_assert!(xm_denominator(m, alpha, g).unwrap() > 0.0);
    }

    #[test]
    fn potential_scales_with_omega(p in battery_base(), w in 0.2f64..5.0, rho in 0.05f64..6.0) {
        let unit = p.with_omega(1.0).unwrap();
        let scaled = p.with_omega(w).unwrap();
        let a = v_new(rho, &scaled);
        let b = w * v_new(rho * w.sqrt(), &unit);
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()) * w.max(1.0), "{a} vs {b}");
    }

    #[test]
    fn conventional_potential_unchanged_at_m0(p in battery_base(), rho in 0.01f64..10.0) {
        let p0 = p.with_m(0);
        prop_assert_eq!(v_new(rho, &p0).to_bits(), 0.0f64.to_bits());
        prop_assert_eq!(v_eff_radial(rho, &p0, true).unwrap().to_bits(), v_eff_radial(rho, &p0, false).unwrap().to_bits());
    }

    #[test]
    fn tail_decays_monotonically(p in battery_base(), n in 0u32..=4) {
        // |Phi_n| e^{g/4} decreases beyond the outermost node and turning point.
        let w = p.omega();
        let turning = 2.0 * energy_level(n, &p) / w;
        let g_start = turning + 4.0 * n as f64 + 4.0;
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let g = g_start + 0.25 * i as f64;
            let rho = (g / w).sqrt();
            let v = radial_eigenfunction(n, &p, rho).abs() * (0.25 * g).exp();
            prop_assert!(v < prev, "not decreasing at g = {g}");
            prev = v;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn norm_matches_gamma_closed_form(p in battery_base(), n in 0u32..=4) {
        let p0 = p.with_m(0);
        let a = p0.alpha();
        let quad = QuadratureSpec::for_levels(&p0, n);
        let want = (ln_gamma(n as f64 + a + 1.0) - ln_gamma(n as f64 + 1.0)).exp() / (2.0 * p0.omega().powf(a + 1.0));
        let got = norm(n, &p0, &quad).unwrap();
        prop_assert!((got - want).abs() <= 1e-10 * want, "{got} vs {want}");
    }

    #[test]
    fn norm_stable_under_panel_refinement(p in battery_base(), n in 0u32..=4) {
        let quad = QuadratureSpec::for_levels(&p, n);
        let a = norm(n, &p, &quad).unwrap();
        let b = norm(n, &p, &quad.with_panels(2 * quad.panels)).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn sturm_count_matches_analytic_levels(p in battery_base(), e_frac in 0.05f64..0.95, top in 1u32..=4) {
        let w = p.omega();
        // An energy strictly between two analytic levels.
        let energy = energy_level(top - 1, &p) + 2.0 * w * e_frac;
        let grid = RadialGrid::for_spectrum_with_points(&p, top + 1, 4001).unwrap();
        let count = level_count_below(&p, &grid, energy, 1.0).unwrap();
        prop_assert_eq!(count, top as usize);
    }
}

#[test]
fn eigenvectors_match_closed_forms() {
    for (n_p, lam, r, s, w) in [
        (3, 1.5, 2, 0, 1.0),
        (4, 0.5, 3, 0, 2.0),
        (3, 2.0, 1, 1, 1.0),
    ] {
        for m in 0..4 {
            let p = ModelParams::new(n_p, lam, r, w, s, m).unwrap();
            let grid = RadialGrid::for_spectrum(&p, 4).unwrap();
            for n in 0..4 {
                let o = eigenvector_overlap(&p, n, &grid).unwrap();
                assert!(o >= 1.0 - 1e-6, "m={m} n={n}: overlap {o}");
            }
        }
    }
}

#[test]
fn scaled_extension_shifts_levels() {
    let p = ModelParams::new(3, 1.5, 2, 1.0, 0, 2).unwrap();
    let grid = RadialGrid::for_spectrum_with_points(&p, 4, 4001).unwrap();
    let exact = solve_radial(&p, 4, &grid, 1.0).unwrap();
    let off = solve_radial(&p, 4, &grid, 1.01).unwrap();
    let shift = exact
        .extrapolated
        .iter()
        .zip(&off.extrapolated)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(shift > 10.0 * TOL_ISO_PER_OMEGA * p.omega(), "{shift}");
}

#[test]
fn local_energy_independent_of_m() {
    let p = ModelParams::new(3, 1.5, 2, 1.0, 0, 0).unwrap();
    let a = constancy_scan(&p, 50, 3).unwrap();
    let b = constancy_scan(&p.with_m(2), 50, 3).unwrap();
    assert!(
        (a.mean - b.mean).abs() <= 1e-6 * a.mean.abs(),
        "{} vs {}",
        a.mean,
        b.mean
    );
}

#[test]
fn wrong_exponent_is_not_an_eigenfunction() {
    use xlag::manybody::{constancy_scan_with, LocalEnergyOptions};
    let p = ModelParams::new(3, 1.0, 1, 1.0, 0, 0).unwrap();
    let opts = LocalEnergyOptions {
        trial_lambda_shift: 0.1,
        ..Default::default()
    };
    let s = constancy_scan_with(&p, 200, 1, &opts).unwrap();
    assert!(!s.pass);
    assert!(s.relative_spread() > 1e-2, "{}", s.relative_spread());
}
