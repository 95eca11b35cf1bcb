//! Model configuration: coefficient presets, solver parameters, validation of
//! the standing assumptions, and the compiled-in experiment presets.

use std::f64::consts::PI;
use std::fmt;

use crate::grid::{SpatialBc, SpatialGrid, TraitBc, TraitGrid};

/// Dispersal rate D(theta), 1-periodic in the trait.
#[derive(Debug, Clone, PartialEq)]
pub enum DispersalSpec {
    /// base + amp * cos(2 pi theta); minimum at theta = 0.5 for amp > 0.
    Cosine { base: f64, amp: f64 },
    /// slope * theta.
    Linear { slope: f64 },
    /// offset + slope * theta.
    Affine { offset: f64, slope: f64 },
    Constant { value: f64 },
    /// One value per trait node.
    Samples(Vec<f64>),
}

impl DispersalSpec {
    pub fn value_at(&self, theta: f64, grid: &TraitGrid) -> f64 {
        match self {
            DispersalSpec::Cosine { base, amp } => base + amp * (2.0 * PI * theta).cos(),
            DispersalSpec::Linear { slope } => slope * theta,
            DispersalSpec::Affine { offset, slope } => offset + slope * theta,
            DispersalSpec::Constant { value } => *value,
            DispersalSpec::Samples(values) => {
                // piecewise-linear interpolation between grid nodes
                let h = grid.spacing();
                match grid.bc {
                    TraitBc::Periodic => {
                        let t = theta.rem_euclid(1.0) / h;
                        let j = t.floor() as usize % values.len();
                        let frac = t - t.floor();
                        let jn = (j + 1) % values.len();
                        values[j] * (1.0 - frac) + values[jn] * frac
                    }
                    TraitBc::Dirichlet => {
                        let t = (theta.clamp(0.0, 1.0) / h).min(values.len() as f64 - 1.0);
                        let j = (t.floor() as usize).min(values.len() - 2);
                        let frac = t - j as f64;
                        values[j] * (1.0 - frac) + values[j + 1] * frac
                    }
                }
            }
        }
    }

    /// D'(theta): analytic for closed-form presets, centered differences of
    /// the samples otherwise.
    pub fn derivative_at(&self, theta: f64, grid: &TraitGrid) -> f64 {
        match self {
            DispersalSpec::Cosine { amp, .. } => -2.0 * PI * amp * (2.0 * PI * theta).sin(),
            DispersalSpec::Linear { slope } => *slope,
            DispersalSpec::Affine { slope, .. } => *slope,
            DispersalSpec::Constant { .. } => 0.0,
            DispersalSpec::Samples(values) => {
                let h = grid.spacing();
                let j = grid.nearest_node(theta);
                let (left, right) = grid.neighbors(j);
                match (left, right) {
                    (Some(l), Some(r)) => (values[r] - values[l]) / (2.0 * h),
                    (None, Some(r)) => (values[r] - values[j]) / h,
                    (Some(l), None) => (values[j] - values[l]) / h,
                    (None, None) => 0.0,
                }
            }
        }
    }

    pub fn samples(&self, grid: &TraitGrid) -> Vec<f64> {
        match self {
            DispersalSpec::Samples(values) => values.clone(),
            _ => (0..grid.n_theta)
                .map(|j| self.value_at(grid.node(j), grid))
                .collect(),
        }
    }
}

/// Carrying capacity K(x) on the spatial domain.
#[derive(Debug, Clone, PartialEq)]
pub enum CapacitySpec {
    /// base + amp * (1 - 4 ((x/length) - 1/2)^2)^power : a centered hump.
    Bump { base: f64, amp: f64, power: i32 },
    /// base + amp * cos(pi x / length): Neumann-compatible slope.
    Cosine { base: f64, amp: f64 },
    /// offset + slope * x.
    Affine { offset: f64, slope: f64 },
    Constant { value: f64 },
    Samples(Vec<f64>),
}

impl CapacitySpec {
    pub fn value_at(&self, x: f64, grid: &SpatialGrid) -> f64 {
        match self {
            CapacitySpec::Bump { base, amp, power } => {
                let s = x / grid.length - 0.5;
                base + amp * (1.0 - 4.0 * s * s).powi(*power)
            }
            CapacitySpec::Cosine { base, amp } => base + amp * (PI * x / grid.length).cos(),
            CapacitySpec::Affine { offset, slope } => offset + slope * x,
            CapacitySpec::Constant { value } => *value,
            CapacitySpec::Samples(values) => {
                let t = (x / grid.spacing()).clamp(0.0, values.len() as f64 - 1.0);
                let j = (t.floor() as usize).min(values.len() - 2);
                let frac = t - j as f64;
                values[j] * (1.0 - frac) + values[j + 1] * frac
            }
        }
    }

    pub fn samples(&self, grid: &SpatialGrid) -> Vec<f64> {
        match self {
            CapacitySpec::Samples(values) => values.clone(),
            _ => (0..grid.n_x)
                .map(|i| self.value_at(grid.node(i), grid))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReactionTreatment {
    Explicit,
    SemiImplicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradientFactor {
    One,
    Dispersal,
}

#[derive(Debug, Clone)]
pub struct SolverParams {
    /// Residual max-norm target for eigenpair iterations.
    pub eig_tol: f64,
    pub eig_max_iter: usize,
    /// Residual max-norm target for the Fisher-KPP Newton solve.
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// Relative state-change rate below which the parabolic run is steady.
    pub steady_tol: f64,
    /// Simulation-time cap for steady runs.
    pub steady_max_time: f64,
    /// Safety factor applied to the explicit stability bound.
    pub dt_safety: f64,
    pub reaction: ReactionTreatment,
    /// Coefficient on the squared trait gradient in the transient HJ step.
    pub gradient_factor: GradientFactor,
    /// Regularizes the inverse curvature in the canonical equation.
    pub curvature_floor: f64,
    /// |min H| above this is an ESS violation for the constrained HJ solve.
    pub ess_tol: f64,
    /// Tolerance for the monotonicity-transfer checks.
    pub mono_tol: f64,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            eig_tol: 1e-10,
            eig_max_iter: 2000,
            newton_tol: 1e-8,
            newton_max_iter: 60,
            steady_tol: 1e-9,
            steady_max_time: 2000.0,
            dt_safety: 0.9,
            reaction: ReactionTreatment::Explicit,
            gradient_factor: GradientFactor::Dispersal,
            curvature_floor: 1e-2,
            ess_tol: 1e-2,
            mono_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OutputParams {
    /// Record a diagnostic snapshot every this many steps.
    pub sample_every: usize,
    /// Times at which the transient driver writes profile snapshots.
    pub snapshot_times: Vec<f64>,
    /// Transient integration horizon.
    pub horizon: f64,
    /// Center and width of the initial trait bump.
    pub bump_center: f64,
    pub bump_width: f64,
    /// Starting trait and step for the quasi-static trajectory driver.
    pub theta_bar0: f64,
    pub quasistatic_dt: f64,
    pub quasistatic_t: f64,
    /// Epsilon sweep for the convergence study.
    pub epsilons: Vec<f64>,
}

impl Default for OutputParams {
    fn default() -> Self {
        Self {
            sample_every: 100,
            snapshot_times: vec![0.4, 1.2, 3.6],
            horizon: 4.0,
            bump_center: 0.7,
            bump_width: 0.1,
            theta_bar0: 0.7,
            quasistatic_dt: 2e-3,
            quasistatic_t: 4.0,
            epsilons: vec![0.1, 0.05, 0.025],
        }
    }
}

#[derive(Debug, Clone)]
pub struct ModelConfig {
    pub spatial: SpatialGrid,
    pub trait_grid: TraitGrid,
    pub dispersal: DispersalSpec,
    pub capacity: CapacitySpec,
    /// Mutation size; the trait diffusion carries epsilon^2.
    pub epsilon: f64,
    /// Declared minimizer of D on [0, 1).
    pub theta_m: f64,
    pub solver: SolverParams,
    pub output: OutputParams,
}

impl ModelConfig {
    pub fn d_samples(&self) -> Vec<f64> {
        self.dispersal.samples(&self.trait_grid)
    }

    pub fn k_samples(&self) -> Vec<f64> {
        self.capacity.samples(&self.spatial)
    }

    pub fn d_at(&self, theta: f64) -> f64 {
        self.dispersal.value_at(theta, &self.trait_grid)
    }

    /// Minimum sampled dispersal rate over nodes where the density lives.
    pub fn d_min(&self) -> f64 {
        let d = self.d_samples();
        self.trait_grid
            .interior()
            .map(|j| d[j])
            .fold(f64::INFINITY, f64::min)
    }

    pub fn k_max(&self) -> f64 {
        self.k_samples().iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    GridTooCoarse { axis: &'static str, n: usize },
    NonPositiveLength { length: f64 },
    NonPositiveEpsilon { epsilon: f64 },
    ThetaMOutOfRange { theta_m: f64 },
    CapacityNotBoundedBelow { index: usize, value: f64 },
    DispersalNotPositive { index: usize, value: f64 },
    NonUniqueDispersalMinimizer { minima: Vec<usize> },
    NoDispersalMinimizer,
    DeclaredMinimizerMismatch { declared: f64, sampled_argmin: f64 },
    SampleLengthMismatch { what: &'static str, expected: usize, got: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GridTooCoarse { axis, n } => {
                write!(f, "{axis} grid needs at least 3 nodes, got {n}")
            }
            Violation::NonPositiveLength { length } => {
                write!(f, "domain length must be positive, got {length}")
            }
            Violation::NonPositiveEpsilon { epsilon } => {
                write!(f, "epsilon must be positive, got {epsilon}")
            }
            Violation::ThetaMOutOfRange { theta_m } => {
                write!(f, "theta_m must lie in [0, 1), got {theta_m}")
            }
            Violation::CapacityNotBoundedBelow { index, value } => {
                write!(
                    f,
                    "K not bounded below by positive K_m: K[{index}] = {value}"
                )
            }
            Violation::DispersalNotPositive { index, value } => {
                write!(f, "D must be positive: D[{index}] = {value}")
            }
            Violation::NonUniqueDispersalMinimizer { minima } => {
                write!(f, "non-unique minimizer of D: local minima at nodes {minima:?}")
            }
            Violation::NoDispersalMinimizer => {
                write!(f, "sampled D has no strict local minimizer (constant?)")
            }
            Violation::DeclaredMinimizerMismatch {
                declared,
                sampled_argmin,
            } => {
                write!(
                    f,
                    "declared theta_m = {declared} but sampled argmin of D is {sampled_argmin}"
                )
            }
            Violation::SampleLengthMismatch {
                what,
                expected,
                got,
            } => {
                write!(f, "{what} sample array has {got} entries, grid has {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Strict local minima of the sampled dispersal rate, circular in periodic
/// mode, with one-sided comparisons at Dirichlet endpoints of the live range.
fn dispersal_minima(d: &[f64], grid: &TraitGrid) -> Vec<usize> {
    let mut minima = Vec::new();
    match grid.bc {
        TraitBc::Periodic => {
            let n = d.len();
            for j in 0..n {
                let l = d[(j + n - 1) % n];
                let r = d[(j + 1) % n];
                if d[j] < l && d[j] < r {
                    minima.push(j);
                }
            }
        }
        TraitBc::Dirichlet => {
            // boundary rows are pinned; the live range is the interior
            let lo = 1;
            let hi = d.len() - 2;
            for j in lo..=hi {
                let left_ok = j == lo || d[j] < d[j - 1];
                let right_ok = j == hi || d[j] < d[j + 1];
                let strict = (j > lo && d[j] < d[j - 1]) || (j < hi && d[j] < d[j + 1]);
                if left_ok && right_ok && strict {
                    minima.push(j);
                }
            }
        }
    }
    minima
}

/// Check the standing assumptions: K bounded below by a positive constant,
/// positive D with a unique local minimizer, sane grids. Returns structured
/// violation records and never aborts. A constant K only warns.
pub fn validate_config(config: &ModelConfig) -> ValidationReport {
    let mut report = ValidationReport::default();

    if config.spatial.n_x < 3 {
        report.violations.push(Violation::GridTooCoarse {
            axis: "spatial",
            n: config.spatial.n_x,
        });
    }
    if config.trait_grid.n_theta < 3 {
        report.violations.push(Violation::GridTooCoarse {
            axis: "trait",
            n: config.trait_grid.n_theta,
        });
    }
    if !(config.spatial.length > 0.0) {
        report.violations.push(Violation::NonPositiveLength {
            length: config.spatial.length,
        });
    }
    if !(config.epsilon > 0.0) {
        report.violations.push(Violation::NonPositiveEpsilon {
            epsilon: config.epsilon,
        });
    }
    if !(0.0..1.0).contains(&config.theta_m) {
        report.violations.push(Violation::ThetaMOutOfRange {
            theta_m: config.theta_m,
        });
    }
    if !report.violations.is_empty() {
        return report; // grid-dependent checks below would index out of range
    }

    if let CapacitySpec::Samples(v) = &config.capacity {
        if v.len() != config.spatial.n_x {
            report.violations.push(Violation::SampleLengthMismatch {
                what: "K",
                expected: config.spatial.n_x,
                got: v.len(),
            });
            return report;
        }
    }
    if let DispersalSpec::Samples(v) = &config.dispersal {
        if v.len() != config.trait_grid.n_theta {
            report.violations.push(Violation::SampleLengthMismatch {
                what: "D",
                expected: config.trait_grid.n_theta,
                got: v.len(),
            });
            return report;
        }
    }

    let k = config.k_samples();
    for (i, &v) in k.iter().enumerate() {
        if !(v > 0.0) {
            report
                .violations
                .push(Violation::CapacityNotBoundedBelow { index: i, value: v });
        }
    }
    let k_max = k.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let k_min = k.iter().copied().fold(f64::INFINITY, f64::min);
    if k_max - k_min < 1e-12 * k_max.abs().max(1.0) {
        report
            .warnings
            .push("K is constant; selection gradients degenerate".to_string());
    }

    let d = config.d_samples();
    // Dirichlet trait boundaries pin the density to zero, so D is only used
    // on the interior there.
    for j in config.trait_grid.interior() {
        if !(d[j] > 0.0) {
            report.violations.push(Violation::DispersalNotPositive {
                index: j,
                value: d[j],
            });
        }
    }

    let minima = dispersal_minima(&d, &config.trait_grid);
    match minima.len() {
        0 => report.violations.push(Violation::NoDispersalMinimizer),
        1 => {
            let sampled = config.trait_grid.node(minima[0]);
            let dist = config.trait_grid.distance(sampled, config.theta_m);
            if dist > config.trait_grid.spacing() + 1e-12 {
                report.violations.push(Violation::DeclaredMinimizerMismatch {
                    declared: config.theta_m,
                    sampled_argmin: sampled,
                });
            }
        }
        _ => report
            .violations
            .push(Violation::NonUniqueDispersalMinimizer { minima }),
    }

    report
}

// ---------------------------------------------------------------------------
// Compiled-in presets
// ---------------------------------------------------------------------------

pub mod presets {
    use super::*;

    /// The transient dispersal-selection experiment: D(theta) = 1.5 theta,
    /// K(x) = 1 + 20 (1 - 4 (x - 1/2)^2)^8, epsilon = 0.01, Dirichlet
    /// boundaries in both directions, initial trait bump at 0.7.
    pub fn figure1() -> ModelConfig {
        ModelConfig {
            spatial: SpatialGrid::new(1.0, 200, SpatialBc::Dirichlet),
            trait_grid: TraitGrid::dirichlet(200),
            dispersal: DispersalSpec::Linear { slope: 1.5 },
            capacity: CapacitySpec::Bump {
                base: 1.0,
                amp: 20.0,
                power: 8,
            },
            epsilon: 1e-2,
            theta_m: 0.0,
            solver: SolverParams::default(),
            output: OutputParams::default(),
        }
    }

    /// The analysis setting: Neumann in space, periodic in trait, smooth
    /// coefficients with the dispersal minimum at theta = 0.5.
    pub fn smooth_periodic() -> ModelConfig {
        ModelConfig {
            spatial: SpatialGrid::new(1.0, 100, SpatialBc::Neumann),
            trait_grid: TraitGrid::periodic(100),
            dispersal: DispersalSpec::Cosine {
                base: 0.5,
                amp: 0.4,
            },
            capacity: CapacitySpec::Cosine {
                base: 1.0,
                amp: 0.5,
            },
            epsilon: 0.05,
            theta_m: 0.5,
            solver: SolverParams::default(),
            output: OutputParams {
                bump_center: 0.25,
                horizon: 40.0,
                snapshot_times: vec![5.0, 15.0, 40.0],
                ..OutputParams::default()
            },
        }
    }
}
