use serde::Serialize;

use crate::error::{Error, Result};

/// Uniform grid on `[rho_min, rho_max]`.
///
/// For the finite-difference eigensolver the grid points are the unknowns and
/// Dirichlet zeros sit one spacing outside each end, at `rho_min - h` and
/// `rho_max + h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialGrid {
    rho_min: f64,
    rho_max: f64,
    n_points: usize,
}

impl RadialGrid {
    pub fn new(rho_min: f64, rho_max: f64, n_points: usize) -> Result<Self> {
        if !(rho_min.is_finite() && rho_max.is_finite()) {
            return Err(Error::Grid("bounds must be finite".into()));
        }
        if n_points < 3 {
            return Err(Error::Grid(format!(
                "need at least 3 points, got {n_points}"
            )));
        }
        if rho_max <= rho_min {
            return Err(Error::Grid(format!(
                "rho_max = {rho_max} must exceed rho_min = {rho_min}"
            )));
        }
        let h = (rho_max - rho_min) / (n_points - 1) as f64;
        // Allow for rounding in the constructors below.
        if rho_min < 0.5 * h * (1.0 - 1e-12) {
            return Err(Error::Grid(format!(
                "rho_min = {rho_min} must be at least h/2 = {}",
                0.5 * h
            )));
        }
        Ok(RadialGrid {
            rho_min,
            rho_max,
            n_points,
        })
    }

    /// `n_points` unknowns at `rho_i = i h`, `i = 1..=n_points`, with
    /// `h = extent / (n_points + 1)`: the Dirichlet zeros are at 0 and `extent`.
    pub fn origin_anchored(extent: f64, n_points: usize) -> Result<Self> {
        let h = extent / (n_points + 1) as f64;
        Self::new(h, extent - h, n_points)
    }

    pub fn rho_min(&self) -> f64 {
        self.rho_min
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.rho_max - self.rho_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.rho_min + i as f64 * self.spacing()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        (0..self.n_points).map(move |i| self.rho_min + i as f64 * h)
    }

    /// Same Dirichlet end points, half the spacing (`2n + 1` points).
    pub fn refined(&self) -> Self {
        let h = self.spacing();
        RadialGrid {
            rho_min: self.rho_min - 0.5 * h,
            rho_max: self.rho_max + 0.5 * h,
            n_points: 2 * self.n_points + 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn validation() {
        assert!(RadialGrid::new(0.1, 1.0, 2).is_err());
        assert!(RadialGrid::new(1.0, 0.5, 10).is_err());
        assert!(RadialGrid::new(0.0, 1.0, 11).is_err());
        assert!(RadialGrid::new(0.05, 1.05, 11).is_ok());
        assert!(RadialGrid::new(0.1, f64::INFINITY, 11).is_err());
    }

    #[test]
    fn origin_anchored_spacing() {
        let g = RadialGrid::origin_anchored(10.0, 9).unwrap();
        assert_relative_eq!(g.spacing(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(g.rho_min(), 1.0);
        assert_relative_eq!(g.rho_max(), 9.0);
        assert_eq!(g.points().count(), 9);
    }

    #[test]
    fn refinement_nests_points() {
        let g = RadialGrid::origin_anchored(8.0, 15).unwrap();
        let f = g.refined();
        assert_eq!(f.n_points(), 31);
        assert_relative_eq!(f.spacing(), 0.5 * g.spacing(), max_relative = 1e-14);
        assert_relative_eq!(f.rho_min(), f.spacing(), max_relative = 1e-14);
        for (i, x) in g.points().enumerate() {
            assert_relative_eq!(f.point(2 * i + 1), x, max_relative = 1e-14);
        }
    }
}
