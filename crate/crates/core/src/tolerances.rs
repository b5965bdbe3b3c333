//! Numerical policy shared by every check.
//!
//! Strict inequalities are accepted only with a positive margin of at least
//! `delta_strict`; equalities are accepted within `tol_eq`. Every report
//! carries the `Tolerances` it was produced with.

use serde::{Deserialize, Serialize};

pub const DEFAULT_GRID_N: usize = 4096;
pub const DEFAULT_DELTA_STRICT: f64 = 1e-9;
pub const DEFAULT_TOL_EQ: f64 = 1e-10;
pub const DEFAULT_BISECTION_TOL: f64 = 1e-12;
pub const DEFAULT_TOL_DET: f64 = 1e-9;

/// Boundary values f(0) = 1, g(0) = 0, g(2π) = 0 are checked to this bound.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Bisection never runs longer than this, whatever `bisection_tol` says.
pub const MAX_BISECTION_ITERS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub grid_n: usize,
    pub delta_strict: f64,
    pub tol_eq: f64,
    pub bisection_tol: f64,
    pub tol_det: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            grid_n: DEFAULT_GRID_N,
            delta_strict: DEFAULT_DELTA_STRICT,
            tol_eq: DEFAULT_TOL_EQ,
            bisection_tol: DEFAULT_BISECTION_TOL,
            tol_det: DEFAULT_TOL_DET,
        }
    }
}

impl Tolerances {
    pub fn with_grid(mut self, grid_n: usize) -> Self {
        self.grid_n = grid_n;
        self
    }
}

/// Smallest grid that resolves a trigonometric polynomial with `harmonics`
/// harmonics.
pub fn min_grid(harmonics: usize) -> usize {
    4 * harmonics + 16
}
