//! Discrete fields on the space x trait grid and basic trait functionals.

use crate::error::SolverError;
use crate::grid::{SpatialGrid, TraitBc, TraitGrid};

/// The simulator state n(x, theta) stored row-major by trait node, so each
/// trait row is contiguous in x (the direction of the implicit solves).
#[derive(Debug, Clone)]
pub struct TraitSpaceDensity {
    pub n_x: usize,
    pub n_theta: usize,
    values: Vec<f64>,
}

impl TraitSpaceDensity {
    pub fn from_fn(
        spatial: &SpatialGrid,
        trait_grid: &TraitGrid,
        mut f: impl FnMut(f64, f64) -> f64,
    ) -> Self {
        let (n_x, n_theta) = (spatial.n_x, trait_grid.n_theta);
        let mut values = Vec::with_capacity(n_x * n_theta);
        for j in 0..n_theta {
            let theta = trait_grid.node(j);
            for i in 0..n_x {
                values.push(f(spatial.node(i), theta));
            }
        }
        Self {
            n_x,
            n_theta,
            values,
        }
    }

    pub fn from_values(n_x: usize, n_theta: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), n_x * n_theta);
        Self {
            n_x,
            n_theta,
            values,
        }
    }

    pub fn constant(n_x: usize, n_theta: usize, value: f64) -> Self {
        Self {
            n_x,
            n_theta,
            values: vec![value; n_x * n_theta],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.n_x + i]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.values[j * self.n_x + i]
    }

    /// Contiguous x-row at trait node `j`.
    pub fn trait_row(&self, j: usize) -> &[f64] {
        &self.values[j * self.n_x..(j + 1) * self.n_x]
    }

    pub fn trait_row_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.values[j * self.n_x..(j + 1) * self.n_x]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Minimum over nodes that are not pinned by a Dirichlet trait boundary.
    pub fn min_interior(&self, trait_grid: &TraitGrid) -> f64 {
        trait_grid
            .interior()
            .flat_map(|j| self.trait_row(j).iter().copied())
            .fold(f64::INFINITY, f64::min)
    }
}

/// A one-dimensional spatial field: rho(x), a carrying capacity, or an
/// eigenfunction slice.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub values: Vec<f64>,
}

impl DensityProfile {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn constant(n_x: usize, value: f64) -> Self {
        Self {
            values: vec![value; n_x],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_diff(&self, other: &DensityProfile) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Trait-direction quadrature of the density: rho_i = sum_j w_j n(i, j).
///
/// Periodic mode uses the rectangle rule (exact for trigonometric polynomials
/// below the Nyquist order), Dirichlet mode the trapezoid rule.
pub fn integrate_trait(n: &TraitSpaceDensity, trait_grid: &TraitGrid) -> DensityProfile {
    let mut rho = vec![0.0; n.n_x];
    for j in 0..n.n_theta {
        let w = trait_grid.weight(j);
        let row = n.trait_row(j);
        for (r, v) in rho.iter_mut().zip(row) {
            *r += w * v;
        }
    }
    DensityProfile::new(rho)
}

/// The theta-marginal: m_j = integral of n(x, theta_j) over x.
pub fn trait_marginal(n: &TraitSpaceDensity, spatial: &SpatialGrid) -> Vec<f64> {
    (0..n.n_theta)
        .map(|j| spatial.integrate(n.trait_row(j)))
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct TraitMoments {
    pub mass: f64,
    pub mean_trait: f64,
    pub trait_stddev: f64,
    /// False when the trait marginal is too diffuse for a circular mean to be
    /// meaningful (resultant length near zero).
    pub mean_reliable: bool,
}

/// Maximum value the circular trait spread can take (uniform marginal).
pub const MAX_CIRCULAR_STDDEV: f64 = std::f64::consts::SQRT_2 / (2.0 * std::f64::consts::PI);

/// Total mass and the mean / spread of the theta-marginal.
///
/// Periodic mode uses the first trigonometric moment (circular mean and the
/// angular deviation sqrt(2(1 - Rbar)) / 2 pi, which matches the linear
/// standard deviation for concentrated marginals); Dirichlet mode uses the
/// ordinary mean and standard deviation.
pub fn trait_moments(
    n: &TraitSpaceDensity,
    spatial: &SpatialGrid,
    trait_grid: &TraitGrid,
) -> Result<TraitMoments, SolverError> {
    let marginal = trait_marginal(n, spatial);
    let mass = trait_grid.integrate(&marginal);
    if !(mass > 0.0) {
        return Err(SolverError::DegenerateDensity);
    }
    match trait_grid.bc {
        TraitBc::Periodic => {
            let two_pi = 2.0 * std::f64::consts::PI;
            let (mut c, mut s) = (0.0, 0.0);
            for (j, m) in marginal.iter().enumerate() {
                let w = trait_grid.weight(j) * m;
                let ang = two_pi * trait_grid.node(j);
                c += w * ang.cos();
                s += w * ang.sin();
            }
            let resultant = (c * c + s * s).sqrt() / mass;
            let mean_reliable = resultant > 1e-8;
            let mean_trait = if mean_reliable {
                (s.atan2(c) / two_pi).rem_euclid(1.0)
            } else {
                0.0
            };
            let trait_stddev = (2.0 * (1.0 - resultant.min(1.0))).sqrt() / two_pi;
            Ok(TraitMoments {
                mass,
                mean_trait,
                trait_stddev,
                mean_reliable,
            })
        }
        TraitBc::Dirichlet => {
            let mut mean = 0.0;
            for (j, m) in marginal.iter().enumerate() {
                mean += trait_grid.weight(j) * m * trait_grid.node(j);
            }
            mean /= mass;
            let mut var = 0.0;
            for (j, m) in marginal.iter().enumerate() {
                let d = trait_grid.node(j) - mean;
                var += trait_grid.weight(j) * m * d * d;
            }
            var /= mass;
            Ok(TraitMoments {
                mass,
                mean_trait: mean,
                trait_stddev: var.max(0.0).sqrt(),
                mean_reliable: true,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::SpatialBc;

    fn grids(n_x: usize, n_theta: usize) -> (SpatialGrid, TraitGrid) {
        (
            SpatialGrid::new(1.0, n_x, SpatialBc::Neumann),
            TraitGrid::periodic(n_theta),
        )
    }

    #[test]
    fn unit_density_integrates_to_one() {
        let (sg, tg) = grids(7, 9);
        let n = TraitSpaceDensity::constant(sg.n_x, tg.n_theta, 1.0);
        let rho = integrate_trait(&n, &tg);
        for v in &rho.values {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn separable_density_factorizes() {
        let (sg, tg) = grids(11, 8);
        let f = |x: f64| 1.0 + x * x;
        let g = |t: f64| 0.3 + t;
        let n = TraitSpaceDensity::from_fn(&sg, &tg, |x, t| f(x) * g(t));
        // independent oracle: direct rectangle-rule sum of g
        let g_int: f64 = (0..tg.n_theta).map(|j| tg.weight(j) * g(tg.node(j))).sum();
        let rho = integrate_trait(&n, &tg);
        for (i, v) in rho.values.iter().enumerate() {
            assert!((v - f(sg.node(i)) * g_int).abs() < 1e-13);
        }
    }

    #[test]
    fn rectangle_rule_annihilates_first_harmonic() {
        // n = 1 + cos(2 pi theta) integrates to exactly 1 on the periodic grid;
        // oracle: direct summation of the cosine values is zero to rounding.
        let (sg, tg) = grids(5, 16);
        let direct: f64 = (0..tg.n_theta)
            .map(|j| (2.0 * std::f64::consts::PI * tg.node(j)).cos())
            .sum();
        assert!(direct.abs() < 1e-12);
        let n = TraitSpaceDensity::from_fn(&sg, &tg, |_, t| {
            1.0 + (2.0 * std::f64::consts::PI * t).cos()
        });
        let rho = integrate_trait(&n, &tg);
        for v in &rho.values {
            assert!((v - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn point_mass_moments() {
        let (sg, tg) = grids(6, 10);
        let target = 3; // theta = 0.3
        let n = TraitSpaceDensity::from_fn(&sg, &tg, |_, t| {
            if (t - tg.node(target)).abs() < 1e-12 {
                5.0
            } else {
                0.0
            }
        });
        let m = trait_moments(&n, &sg, &tg).unwrap();
        assert!((m.mean_trait - 0.3).abs() < 1e-8);
        assert!(m.trait_stddev < 1e-6);
        assert!(m.mean_reliable);
    }

    #[test]
    fn uniform_marginal_flags_unreliable_mean() {
        let (sg, tg) = grids(6, 12);
        let n = TraitSpaceDensity::constant(sg.n_x, tg.n_theta, 2.0);
        let m = trait_moments(&n, &sg, &tg).unwrap();
        assert!(!m.mean_reliable);
        assert!((m.trait_stddev - MAX_CIRCULAR_STDDEV).abs() < 1e-12);
    }

    #[test]
    fn dirichlet_gaussian_mean_within_one_cell() {
        let sg = SpatialGrid::new(1.0, 6, SpatialBc::Neumann);
        let tg = TraitGrid::dirichlet(101);
        let n = TraitSpaceDensity::from_fn(&sg, &tg, |_, t| (-(t - 0.7) * (t - 0.7) / 0.005).exp());
        // direct quadrature oracle for the mean
        let mut mass = 0.0;
        let mut first = 0.0;
        for j in 0..tg.n_theta {
            let v: f64 = (-(tg.node(j) - 0.7) * (tg.node(j) - 0.7) / 0.005).exp();
            mass += tg.weight(j) * v;
            first += tg.weight(j) * v * tg.node(j);
        }
        let oracle_mean = first / mass;
        let m = trait_moments(&n, &sg, &tg).unwrap();
        assert!((m.mean_trait - oracle_mean).abs() < 1e-12);
        assert!((m.mean_trait - 0.7).abs() < tg.spacing());
    }

    #[test]
    fn zero_mass_is_degenerate() {
        let (sg, tg) = grids(4, 4);
        let n = TraitSpaceDensity::constant(sg.n_x, tg.n_theta, 0.0);
        assert!(matches!(
            trait_moments(&n, &sg, &tg),
            Err(SolverError::DegenerateDensity)
        ));
    }
}
