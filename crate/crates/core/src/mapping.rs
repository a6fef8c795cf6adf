//! Algebraic map of `x ∈ [-1, 1]` onto `r ∈ [0, r_max]`,
//! `r(x) = L (1 + x) / (1 - x + α)` with `L = α r_max / 2`.

use std::sync::Arc;

use crate::collocation::CollocationSet;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 300;
pub const DEFAULT_R_MAX: f64 = 200.0;
/// `L = 10` bohr at the default `r_max`. Larger values flatten the map and
/// starve the inner region of nodes; at `α = 25` the 25th quartic state is
/// off by more than 200 hartree.
pub const DEFAULT_ALPHA: f64 = 0.1;

/// Collocation order plus mapping parameters. `L` is derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    order: usize,
    r_max: f64,
    alpha: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER,
            r_max: DEFAULT_R_MAX,
            alpha: DEFAULT_ALPHA,
        }
    }
}

impl GridSpec {
    pub fn new(order: usize, r_max: f64, alpha: f64) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidGrid(format!(
                "order must be >= 2, got {order}"
            )));
        }
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "r_max must be positive, got {r_max}"
            )));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        Ok(Self {
            order,
            r_max,
            alpha,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `L = α r_max / 2`.
    pub fn length_scale(&self) -> f64 {
        self.alpha * self.r_max / 2.0
    }

    pub fn with_order(self, order: usize) -> Result<Self> {
        Self::new(order, self.r_max, self.alpha)
    }

    pub fn with_r_max(self, r_max: f64) -> Result<Self> {
        Self::new(self.order, r_max, self.alpha)
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        Self::new(self.order, self.r_max, alpha)
    }
}

/// A [`GridSpec`] together with its collocation set and the mapped node
/// positions `r_j = r(x_j)` and Jacobians `r'(x_j)`.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    spec: GridSpec,
    set: Arc<CollocationSet>,
    radii: Vec<f64>,
    jacobians: Vec<f64>,
}

impl RadialGrid {
    pub fn new(spec: GridSpec) -> Result<Self> {
        let set = Arc::new(CollocationSet::new(spec.order)?);
        Ok(Self::with_set(spec, set))
    }

    /// Reuses an existing collocation set of the same order.
    pub fn with_set(spec: GridSpec, set: Arc<CollocationSet>) -> Self {
        assert_eq!(set.order(), spec.order, "collocation order mismatch");
        let radii = set.nodes().iter().map(|&x| to_radial(x, &spec)).collect();
        let jacobians = set
            .nodes()
            .iter()
            .map(|&x| map_derivatives(x, &spec).0)
            .collect();
        Self {
            spec,
            set,
            radii,
            jacobians,
        }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn set(&self) -> &CollocationSet {
        &self.set
    }

    pub fn shared_set(&self) -> Arc<CollocationSet> {
        Arc::clone(&self.set)
    }

    /// `r_j` for all `N + 1` nodes; `r_0 = 0`, `r_N = r_max`.
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// `r'(x_j)` for all nodes.
    pub fn jacobians(&self) -> &[f64] {
        &self.jacobians
    }

    /// Quadrature of a radial integrand sampled at the nodes:
    /// `∫ f(r) dr ≈ Σ w_j r'(x_j) f(r_j)`.
    pub fn integrate(&self, samples: &[f64]) -> f64 {
        self.set
            .weights()
            .iter()
            .zip(&self.jacobians)
            .zip(samples)
            .map(|((w, j), f)| w * j * f)
            .sum()
    }
}

/// `r(x)`. The endpoints are pinned so that `r(-1) = 0` and `r(1) = r_max`
/// hold exactly.
pub fn to_radial(x: f64, g: &GridSpec) -> f64 {
    if x == -1.0 {
        return 0.0;
    }
    if x == 1.0 {
        return g.r_max;
    }
    g.length_scale() * (1.0 + x) / (1.0 - x + g.alpha)
}

/// `(r', r'', r''')` at `x`.
pub fn map_derivatives(x: f64, g: &GridSpec) -> (f64, f64, f64) {
    let l = g.length_scale();
    let a = g.alpha;
    let d = 1.0 - x + a;
    let first = l * (2.0 + a) / (d * d);
    let second = 2.0 * first / d;
    let third = 3.0 * second / d;
    (first, second, third)
}

/// Curvature correction `v_m = [3 (r'')² - 2 r''' r'] / [8 (r')⁴]`.
///
/// Identically zero for this map; evaluated from the general formula anyway.
pub fn mapping_potential(x: f64, g: &GridSpec) -> f64 {
    let (r1, r2, r3) = map_derivatives(x, g);
    (3.0 * r2 * r2 - 2.0 * r3 * r1) / (8.0 * r1.powi(4))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_midpoint() {
        let g = GridSpec::new(300, 200.0, 25.0).unwrap();
        assert_eq!(g.length_scale(), 2500.0);
        assert_eq!(GridSpec::default().length_scale(), 10.0);
        assert_eq!(to_radial(-1.0, &g), 0.0);
        assert_eq!(to_radial(1.0, &g), 200.0);
        assert!((to_radial(0.0, &g) - 2500.0 / 26.0).abs() < 1e-12);
    }

    #[test]
    fn derivative_at_origin() {
        let g = GridSpec::new(300, 200.0, 25.0).unwrap();
        let (r1, r2, _) = map_derivatives(-1.0, &g);
        assert!((r1 - 2500.0 / 27.0).abs() < 1e-12);
        assert!((r2 / r1 - 2.0 / 27.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let g = GridSpec::new(300, 200.0, 25.0).unwrap();
        let h = 1e-5;
        let fd = (to_radial(h, &g) - to_radial(-h, &g)) / (2.0 * h);
        let (r1, _, _) = map_derivatives(0.0, &g);
        assert!((fd - r1).abs() / r1 < 1e-9);
    }

    #[test]
    fn mapping_potential_vanishes_on_parameter_grid() {
        for r_max in [50.0, 100.0, 150.0, 200.0, 300.0] {
            for alpha in [5.0, 15.0, 20.0, 25.0, 40.0] {
                let g = GridSpec::new(100, r_max, alpha).unwrap();
                let l = g.length_scale();
                for x in [-1.0, -0.5, 0.0, 0.9, 1.0] {
                    // exact zero in real arithmetic; only rounding of the three
                    // derivative factors survives
                    assert!(mapping_potential(x, &g).abs() < 1e-14 / (l * l));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(GridSpec::new(1, 200.0, 25.0).is_err());
        assert!(GridSpec::new(10, -1.0, 25.0).is_err());
        assert!(GridSpec::new(10, 200.0, 0.0).is_err());
    }
}
