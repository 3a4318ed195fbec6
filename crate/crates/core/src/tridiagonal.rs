//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.

use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
    off_sq: Vec<f64>,
}

impl SymTridiagonal {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Solver(format!(
                "off-diagonal length {} does not match diagonal length {}",
                off.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&off).any(|x| !x.is_finite()) {
            return Err(Error::Solver("matrix entries must be finite".into()));
        }
        let off_sq = off.iter().map(|e| e * e).collect();
        Ok(SymTridiagonal { diag, off, off_sq })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of the
    /// `LDL^T` factorization of `T - x I`).
    pub fn sturm_count(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.diag.len() {
            if i > 0 {
                q = self.diag[i] - x - self.off_sq[i - 1] / q;
            }
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// `k`-th smallest eigenvalue (0-based), bisected until the bracket
    /// cannot shrink further in floating point.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::Solver(format!(
                "requested eigenvalue {k} of a {}x{} matrix",
                self.len(),
                self.len()
            )));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
        lo -= pad;
        hi += pad;
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// The `k` smallest eigenvalues in ascending order. Each is bisected
    /// independently, so the result does not depend on thread count.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        (0..k).into_par_iter().map(|i| self.eigenvalue(i)).collect()
    }

    /// Unit eigenvector for an (accurate) eigenvalue by inverse iteration.
    /// Sign is fixed so that the largest-magnitude component is positive.
    pub fn eigenvector(&self, eigenvalue: f64) -> Vec<f64> {
        let n = self.len();
        let mut v = vec![1.0 / (n as f64).sqrt(); n];
        let shift = eigenvalue + 4.0 * f64::EPSILON * eigenvalue.abs().max(1.0);
        let mut c = vec![0.0; n];
        let mut y = vec![0.0; n];
        for _ in 0..3 {
            // Thomas algorithm on T - shift I.
            let guard = |q: f64| if q == 0.0 { f64::EPSILON } else { q };
            let mut q = guard(self.diag[0] - shift);
            c[0] = if n > 1 { self.off[0] / q } else { 0.0 };
            y[0] = v[0] / q;
            for i in 1..n {
                q = guard(self.diag[i] - shift - self.off[i - 1] * c[i - 1]);
                c[i] = if i + 1 < n { self.off[i] / q } else { 0.0 };
                y[i] = (v[i] - self.off[i - 1] * y[i - 1]) / q;
            }
            for i in (0..n - 1).rev() {
                y[i] -= c[i] * y[i + 1];
            }
            let norm = y.iter().map(|t| t * t).sum::<f64>().sqrt();
            for (vi, yi) in v.iter_mut().zip(&y) {
                *vi = yi / norm;
            }
        }
        let big = v
            .iter()
            .copied()
            .fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
        if big < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        v
    }
}
