//! Rationally extended truncated Calogero-Sutherland model.
//!
//! N particles on a line in a harmonic trap, with inverse-square two-body and
//! three-body interactions between index neighbours within range `r`. The
//! rational extension adds a hyperradial term `V_new(rho)` built from
//! Laguerre polynomials of index `m`. The spectrum is unchanged and the
//! eigenfunctions become exceptional Xm Laguerre polynomials.
//!
//! The crate provides:
//!
//! * [`special_functions`]: classical and exceptional Laguerre polynomials;
//! * [`model`]: parameters, energies, the many-body interaction and the
//!   extended radial potentials;
//! * [`wavefunctions`]: closed-form eigenfunctions, norms, node counts;
//! * [`spectral`]: a finite-difference eigensolver and residual,
//!   orthogonality and consistency checks against the closed forms;
//! * [`manybody`]: local-energy checks of the N-body ground state.
//!
//! ```
//! use xlag::model::{energy_level, ModelParams};
//! use xlag::spectral::isospectrality_check;
//!
//! let p = ModelParams::new(3, 1.5, 2, 1.0, 0, 2).unwrap();
//! assert_eq!(energy_level(0, &p), 6.0);
//! assert!(isospectrality_check(&p, 2).unwrap().passed);
//! ```

pub mod error;
pub mod grid;
pub mod manybody;
pub mod model;
pub mod quadrature;
pub mod report;
pub mod special_functions;
pub mod spectral;
pub mod tridiagonal;
pub mod wavefunctions;

pub use error::{Error, Result};
pub use grid::RadialGrid;
pub use model::{Configuration, ModelParams};
pub use report::VerificationReport;
