//! Shared error type for the solver stack.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("solver did not converge after {iterations} iterations (last residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("positivity lost; reduce dt (t = {t:.6}, min node value {min_value:.3e})")]
    PositivityLost { t: f64, min_value: f64 },

    #[error("CFL violation: dt = {dt:.3e} exceeds stable bound {bound:.3e}")]
    CflViolation { dt: f64, bound: f64 },

    #[error("ESS constraint violated: min H = {min_h:.6e}")]
    EssViolated { min_h: f64 },

    #[error("degenerate density: total mass is not positive")]
    DegenerateDensity,

    #[error("principal eigenfunction lost positivity (min node value {min_value:.3e})")]
    EigenfunctionNotPositive { min_value: f64 },

    #[error("eigenpair solve failed at trait node {node}: {source}")]
    AtTraitNode {
        node: usize,
        #[source]
        source: Box<SolverError>,
    },

    #[error("run failed at t = {t:.6}: {source}")]
    AtTime {
        t: f64,
        #[source]
        source: Box<SolverError>,
    },

    #[error("trait window around theta_m is empty; grid too coarse")]
    EmptyTraitWindow,

    #[error("steady-state cap exceeded at t = {t:.3} (residual {residual:.3e} > tol {tol:.3e})")]
    SteadyCapExceeded { t: f64, residual: f64, tol: f64 },

    #[error("unsupported boundary configuration: {0}")]
    UnsupportedBoundary(String),

    #[error("{0}")]
    Precondition(String),
}

impl SolverError {
    pub fn at_node(self, node: usize) -> Self {
        SolverError::AtTraitNode {
            node,
            source: Box::new(self),
        }
    }

    pub fn at_time(self, t: f64) -> Self {
        SolverError::AtTime {
            t,
            source: Box::new(self),
        }
    }
}
