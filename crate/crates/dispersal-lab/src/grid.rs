//! Uniform grids: the spatial interval (0, length) and the unit trait circle.
//!
//! Spatial grids store both endpoints; Neumann conditions are discretized with
//! mirrored ghost nodes, Dirichlet pins the boundary values to zero. The trait
//! grid is periodic by default (node 1 is identified with node 0 and not
//! stored); the Dirichlet variant stores both endpoints and exists to
//! reproduce runs with absorbing trait boundaries.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpatialBc {
    Neumann,
    Dirichlet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraitBc {
    Periodic,
    Dirichlet,
}

#[derive(Debug, Clone, Copy)]
pub struct SpatialGrid {
    pub length: f64,
    pub n_x: usize,
    pub bc: SpatialBc,
}

impl SpatialGrid {
    pub fn new(length: f64, n_x: usize, bc: SpatialBc) -> Self {
        Self { length, n_x, bc }
    }

    /// Node spacing; both endpoints are stored.
    pub fn spacing(&self) -> f64 {
        self.length / (self.n_x as f64 - 1.0)
    }

    pub fn node(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }

    /// Trapezoid quadrature weight of node `i`; weights sum to `length`.
    pub fn weight(&self, i: usize) -> f64 {
        let h = self.spacing();
        if i == 0 || i == self.n_x - 1 {
            0.5 * h
        } else {
            h
        }
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.n_x);
        values
            .iter()
            .enumerate()
            .map(|(i, v)| self.weight(i) * v)
            .sum()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TraitGrid {
    pub n_theta: usize,
    pub bc: TraitBc,
}

impl TraitGrid {
    pub fn periodic(n_theta: usize) -> Self {
        Self {
            n_theta,
            bc: TraitBc::Periodic,
        }
    }

    pub fn dirichlet(n_theta: usize) -> Self {
        Self {
            n_theta,
            bc: TraitBc::Dirichlet,
        }
    }

    pub fn spacing(&self) -> f64 {
        match self.bc {
            TraitBc::Periodic => 1.0 / self.n_theta as f64,
            TraitBc::Dirichlet => 1.0 / (self.n_theta as f64 - 1.0),
        }
    }

    pub fn node(&self, j: usize) -> f64 {
        j as f64 * self.spacing()
    }

    /// Quadrature weight: rectangle rule on the circle, trapezoid on the interval.
    pub fn weight(&self, j: usize) -> f64 {
        let h = self.spacing();
        match self.bc {
            TraitBc::Periodic => h,
            TraitBc::Dirichlet => {
                if j == 0 || j == self.n_theta - 1 {
                    0.5 * h
                } else {
                    h
                }
            }
        }
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.n_theta);
        values
            .iter()
            .enumerate()
            .map(|(j, v)| self.weight(j) * v)
            .sum()
    }

    /// Index of the grid node nearest to `theta` (wrapping in periodic mode).
    pub fn nearest_node(&self, theta: f64) -> usize {
        match self.bc {
            TraitBc::Periodic => {
                let t = theta.rem_euclid(1.0);
                let j = (t / self.spacing()).round() as usize;
                j % self.n_theta
            }
            TraitBc::Dirichlet => {
                let j = (theta.clamp(0.0, 1.0) / self.spacing()).round() as usize;
                j.min(self.n_theta - 1)
            }
        }
    }

    /// Neighbor indices of node `j`, respecting the boundary mode.
    /// At a Dirichlet endpoint the missing neighbor is reported as `None`.
    pub fn neighbors(&self, j: usize) -> (Option<usize>, Option<usize>) {
        match self.bc {
            TraitBc::Periodic => {
                let n = self.n_theta;
                (Some((j + n - 1) % n), Some((j + 1) % n))
            }
            TraitBc::Dirichlet => {
                let left = if j > 0 { Some(j - 1) } else { None };
                let right = if j + 1 < self.n_theta {
                    Some(j + 1)
                } else {
                    None
                };
                (left, right)
            }
        }
    }

    /// Distance between two trait values, along the circle in periodic mode.
    pub fn distance(&self, a: f64, b: f64) -> f64 {
        match self.bc {
            TraitBc::Periodic => circle_distance(a, b),
            TraitBc::Dirichlet => (a - b).abs(),
        }
    }

    /// Interior node range: everything in periodic mode, endpoints excluded
    /// in Dirichlet mode.
    pub fn interior(&self) -> std::ops::Range<usize> {
        match self.bc {
            TraitBc::Periodic => 0..self.n_theta,
            TraitBc::Dirichlet => 1..self.n_theta - 1,
        }
    }
}

/// Shortest distance between two points on the unit circle.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spatial_weights_sum_to_length() {
        let g = SpatialGrid::new(2.5, 17, SpatialBc::Neumann);
        let total: f64 = (0..g.n_x).map(|i| g.weight(i)).sum();
        assert!((total - 2.5).abs() < 1e-14);
    }

    #[test]
    fn periodic_weights_sum_to_one() {
        let g = TraitGrid::periodic(10);
        let total: f64 = (0..g.n_theta).map(|j| g.weight(j)).sum();
        assert!((total - 1.0).abs() < 1e-14);
        assert!((g.node(9) - 0.9).abs() < 1e-14);
    }

    #[test]
    fn dirichlet_trait_grid_includes_endpoint() {
        let g = TraitGrid::dirichlet(11);
        assert!((g.node(10) - 1.0).abs() < 1e-14);
        let total: f64 = (0..g.n_theta).map(|j| g.weight(j)).sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn nearest_node_wraps() {
        let g = TraitGrid::periodic(10);
        assert_eq!(g.nearest_node(0.96), 0); // wraps past 1
        assert_eq!(g.nearest_node(0.34), 3);
        assert_eq!(g.nearest_node(-0.1), 9);
    }

    #[test]
    fn circle_distance_is_symmetric_and_short() {
        assert!((circle_distance(0.1, 0.9) - 0.2).abs() < 1e-14);
        assert!((circle_distance(0.9, 0.1) - 0.2).abs() < 1e-14);
        assert!(circle_distance(0.25, 0.75) <= 0.5 + 1e-14);
    }
}
