//! Reference values from 50-digit evaluations; regenerate with
//! `tests/oracle/reference_values.py`. Literals keep all printed digits.
#![allow(clippy::excessive_precision)]

use approx::assert_relative_eq;
use xlag::model::v_new;
use xlag::special_functions::{laguerre, ode_coefficients, xm_laguerre};
use xlag::wavefunctions::radial_eigenfunction;
use xlag::ModelParams;

/// Parameters with the given `alpha` and `omega`:
/// 1 -> (2, 1, 1), 1.5 -> (2, 1.5, 1), 4 -> (4, 0.5, 3), 5 -> (3, 1.5, 2), 5.5 -> (3, 2, 1, s=1).
fn with_alpha(alpha: f64, omega: f64, m: u32) -> ModelParams {
    let p = match alpha {
        1.0 => ModelParams::new(2, 1.0, 1, omega, 0, m),
        1.5 => ModelParams::new(2, 1.5, 1, omega, 0, m),
        4.0 => ModelParams::new(4, 0.5, 3, omega, 0, m),
        5.0 => ModelParams::new(3, 1.5, 2, omega, 0, m),
        5.5 => ModelParams::new(3, 2.0, 1, omega, 1, m),
        _ => unreachable!(),
    }
    .unwrap();
    assert_eq!(p.alpha(), alpha);
    p
}

#[test]
fn classical_laguerre() {
    let cases = [
        (3, 0.5, 2.0, -0.89583333333333333333),
        (5, 2.5, -3.0, 524.13046875),
        (6, 4.0, 7.5, -8.9794921875),
        (8, -0.5, 1.25, 0.36858037350669739738),
    ];
    for (n, a, x, want) in cases {
        assert_relative_eq!(laguerre(n, a, x).unwrap(), want, max_relative = 1e-13);
    }
}

#[test]
fn exceptional_laguerre() {
    let cases = [
        (0, 2, 4.0, 1.0, 21.5),
        (2, 3, 1.5, 0.7, 15.993226666666667248),
        (4, 2, 5.5, 3.0, 112.7353515625),
        (3, 1, 2.0, 2.5, -10.010416666666666667),
    ];
    for (n, m, a, g, want) in cases {
        assert_relative_eq!(xm_laguerre(n, m, a, g).unwrap(), want, max_relative = 1e-13);
    }
}

#[test]
fn extension_potential() {
    let cases = [
        (1.0, 2, 4.0, 1.0, -0.43288241415192507804),
        (0.7, 3, 1.5, 2.0, -0.42368026993494004679),
        (2.2, 1, 5.0, 1.0, -0.0033049110978914500501),
        (1.5, 3, 5.5, 1.0, -0.26614002595691711784),
    ];
    for (rho, m, a, w, want) in cases {
        let p = with_alpha(a, w, m);
        assert_relative_eq!(v_new(rho, &p), want, max_relative = 1e-12);
    }
}

#[test]
fn eigenfunctions() {
    let cases = [
        (1, 2, 4.0, 1.0, 1.3, 1.7557879576192832327),
        (3, 3, 5.5, 1.0, 0.9, 39.015049997071876298),
        (2, 1, 1.0, 2.0, 1.1, -0.47664097282196703444),
    ];
    for (n, m, a, w, rho, want) in cases {
        let p = with_alpha(a, w, m);
        assert_relative_eq!(radial_eigenfunction(n, &p, rho), want, max_relative = 1e-12);
    }
}

#[test]
fn ode_coefficient_values() {
    let c = ode_coefficients(2, 1.5, 0.5).unwrap();
    assert_relative_eq!(c.q, 2.153846153846154, max_relative = 1e-14);
    assert_relative_eq!(c.r_linear_alpha, -2.88, max_relative = 1e-14);
    assert_relative_eq!(
        c.r_linear_alpha_minus_one,
        -5.538461538461538,
        max_relative = 1e-14
    );
}
