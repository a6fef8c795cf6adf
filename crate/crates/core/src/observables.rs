//! Wavefunctions, node counts, moments and radial densities.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mapping::RadialGrid;

/// Entries below this fraction of `max |ψ|` are treated as zero when
/// counting sign changes.
const NODE_NOISE: f64 = 1e-12;

/// One eigenpair of the radial problem in terms of the reduced radial
/// function `ψ = r R`.
#[derive(Debug, Clone)]
pub struct BoundState {
    pub energy: f64,
    pub l: u32,
    pub n_r: usize,
    /// Interior coefficients `A_1 .. A_{N-1}`.
    pub coefficients: Vec<f64>,
    /// `ψ(r_j)` on all `N + 1` nodes, zero at both boundaries.
    pub psi: Vec<f64>,
    pub normalized: bool,
    /// False when the outer turning point lies close to `r_max`.
    pub physical: bool,
    grid: Arc<RadialGrid>,
}

impl BoundState {
    pub fn from_coefficients(
        grid: Arc<RadialGrid>,
        l: u32,
        energy: f64,
        coefficients: Vec<f64>,
    ) -> Self {
        let psi = reconstruct(&coefficients, &grid);
        let n_r = count_nodes(&psi);
        Self {
            energy,
            l,
            n_r,
            coefficients,
            psi,
            normalized: false,
            physical: true,
            grid,
        }
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn radii(&self) -> &[f64] {
        self.grid.radii()
    }

    /// `Σ w_j r'_j ψ_j²`.
    pub fn norm_squared(&self) -> f64 {
        let sq: Vec<f64> = self.psi.iter().map(|p| p * p).collect();
        self.grid.integrate(&sq)
    }

    /// Scales to unit norm and applies the sign convention: the extremum at
    /// smallest `r` is positive.
    pub fn normalize(&mut self) -> Result<()> {
        let norm2 = self.norm_squared();
        if !(norm2 > 0.0) || !norm2.is_finite() {
            return Err(Error::ZeroState);
        }
        let mut scale = 1.0 / norm2.sqrt();
        if first_extremum_sign(&self.psi) < 0.0 {
            scale = -scale;
        }
        for v in self.coefficients.iter_mut().chain(self.psi.iter_mut()) {
            *v *= scale;
        }
        self.normalized = true;
        Ok(())
    }

    /// `⟨r^p⟩ = Σ w_j r'_j r_j^p ψ_j²`. Boundary nodes carry `ψ = 0` and are
    /// skipped so that negative powers never touch `r = 0`.
    pub fn expectation(&self, power: i32) -> f64 {
        let radii = self.grid.radii();
        let weights = self.grid.set().weights();
        let jac = self.grid.jacobians();
        let n = radii.len() - 1;
        (1..n)
            .map(|j| weights[j] * jac[j] * radii[j].powi(power) * self.psi[j] * self.psi[j])
            .sum::<f64>()
            / self.norm_squared()
    }

    /// Expectation of an arbitrary radial function over interior nodes.
    pub fn expectation_of(&self, f: impl Fn(f64) -> f64) -> f64 {
        let radii = self.grid.radii();
        let weights = self.grid.set().weights();
        let jac = self.grid.jacobians();
        let n = radii.len() - 1;
        (1..n)
            .map(|j| weights[j] * jac[j] * f(radii[j]) * self.psi[j] * self.psi[j])
            .sum::<f64>()
            / self.norm_squared()
    }

    /// Overlap `Σ w_j r'_j ψ_a ψ_b` with another state on the same grid.
    pub fn overlap(&self, other: &BoundState) -> f64 {
        let prod: Vec<f64> = self
            .psi
            .iter()
            .zip(&other.psi)
            .map(|(a, b)| a * b)
            .collect();
        self.grid.integrate(&prod)
    }

    /// `(r_j, ψ_j²)` at every node, ascending in `r`.
    pub fn radial_density(&self) -> Vec<(f64, f64)> {
        self.grid
            .radii()
            .iter()
            .zip(&self.psi)
            .map(|(&r, &p)| (r, p * p))
            .collect()
    }

    /// `R(r_j) = ψ_j / r_j` on interior nodes.
    pub fn radial_function(&self) -> Vec<(f64, f64)> {
        let radii = self.grid.radii();
        (1..radii.len() - 1)
            .map(|j| (radii[j], self.psi[j] / radii[j]))
            .collect()
    }
}

/// `ψ(r_j) = A_j P_N(x_j) / √r'(x_j)` on interior nodes, with `ψ = 0` at
/// both ends.
pub fn reconstruct(coefficients: &[f64], grid: &RadialGrid) -> Vec<f64> {
    let n = grid.set().order();
    assert_eq!(
        coefficients.len(),
        n - 1,
        "expected {} interior coefficients",
        n - 1
    );
    let p = grid.set().legendre_at_nodes();
    let jac = grid.jacobians();
    let mut psi = vec![0.0; n + 1];
    for (k, &a) in coefficients.iter().enumerate() {
        let j = k + 1;
        psi[j] = a * p[j] / jac[j].sqrt();
    }
    psi
}

/// Strict sign changes of `psi`, ignoring entries below the noise floor.
pub fn count_nodes(psi: &[f64]) -> usize {
    let peak = psi.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return 0;
    }
    let floor = NODE_NOISE * peak;
    let mut last = 0.0_f64;
    let mut nodes = 0;
    for &v in psi {
        if v.abs() < floor {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            nodes += 1;
        }
        last = v;
    }
    nodes
}

// Sign of the first local extremum of psi above a small noise floor.
fn first_extremum_sign(psi: &[f64]) -> f64 {
    let peak = psi.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let floor = 1e-8 * peak;
    for j in 1..psi.len().saturating_sub(1) {
        let (a, b, c) = (psi[j - 1], psi[j], psi[j + 1]);
        if b.abs() > floor && (b - a) * (c - b) <= 0.0 && b.abs() >= a.abs() {
            return b.signum();
        }
    }
    psi.iter()
        .find(|v| v.abs() > floor)
        .map_or(1.0, |v| v.signum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::GridSpec;

    #[test]
    fn node_counting() {
        assert_eq!(count_nodes(&[0.0, 1.0, 2.0, 1.0, 0.0]), 0);
        assert_eq!(count_nodes(&[0.0, 1.0, -1.0, 0.5, 0.0]), 2);
        // noise below the floor does not register
        assert_eq!(count_nodes(&[0.0, -1e-20, 1.0, 2.0, 0.0]), 0);
        assert_eq!(count_nodes(&[0.0; 4]), 0);
    }

    #[test]
    fn zero_coefficients_give_zero_psi() {
        let grid = Arc::new(RadialGrid::new(GridSpec::new(20, 50.0, 10.0).unwrap()).unwrap());
        let mut state = BoundState::from_coefficients(Arc::clone(&grid), 0, 0.0, vec![0.0; 19]);
        assert!(state.psi.iter().all(|&v| v == 0.0));
        assert!(matches!(state.normalize(), Err(Error::ZeroState)));
    }

    #[test]
    fn sign_convention() {
        assert_eq!(first_extremum_sign(&[0.0, -1.0, -2.0, 1.0, 0.0]), -1.0);
        assert_eq!(first_extremum_sign(&[0.0, 1.0, 3.0, -5.0, 0.0]), 1.0);
    }
}

#[cfg(test)]
mod physics {
    use super::*;
    use crate::mapping::GridSpec;
    use crate::operator::solve;
    use crate::potentials::PotentialSpec;

    fn grid() -> Arc<RadialGrid> {
        Arc::new(RadialGrid::new(GridSpec::default()).unwrap())
    }

    fn hydrogen(k: usize) -> Vec<BoundState> {
        let p = PotentialSpec::coulomb(1.0, 0.0, 0.0).unwrap();
        solve(grid(), &p, 0, k).unwrap().states
    }

    #[test]
    fn hydrogen_ground_state_shape_and_moments() {
        let s = &hydrogen(1)[0];
        assert!(s.normalized);
        assert!((s.norm_squared() - 1.0).abs() < 1e-12);
        for (&r, &psi) in s.radii().iter().zip(&s.psi) {
            if r < 20.0 {
                assert!((psi - 2.0 * r * (-r).exp()).abs() < 1e-9, "r={r}");
            }
        }
        assert!((s.expectation(1) - 1.5).abs() < 1e-10);
        assert!((s.expectation(-1) - 1.0).abs() < 1e-10);
        assert!((s.expectation(2) - 3.0).abs() < 1e-9);
    }

    #[test]
    fn normalization_is_idempotent_and_scale_invariant() {
        let s = &hydrogen(2)[1];
        let mut twice = s.clone();
        twice.normalize().unwrap();
        assert!(twice
            .psi
            .iter()
            .zip(&s.psi)
            .all(|(a, b)| (a - b).abs() < 1e-14));
        let scaled: Vec<f64> = s.coefficients.iter().map(|c| -3.7 * c).collect();
        let mut other = BoundState::from_coefficients(Arc::clone(&s.grid), 0, s.energy, scaled);
        other.normalize().unwrap();
        assert!(other
            .psi
            .iter()
            .zip(&s.psi)
            .all(|(a, b)| (a - b).abs() < 1e-13));
        assert!((other.expectation(1) - s.expectation(1)).abs() < 1e-12);
    }

    #[test]
    fn orthonormal_states() {
        let states = hydrogen(4);
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((a.overlap(b) - expected).abs() < 1e-9, "({i},{j})");
            }
        }
    }

    #[test]
    fn expectation_of_matches_power() {
        let s = &hydrogen(1)[0];
        assert!((s.expectation_of(|r| r * r) - s.expectation(2)).abs() < 1e-12);
    }

    #[test]
    fn virial_relation() {
        // 2⟨T⟩ = ⟨r dV/dr⟩ with ⟨T⟩ = E - ⟨V⟩
        let p = PotentialSpec::coulomb(0.5, 0.5, 0.5).unwrap();
        let s = &solve(grid(), &p, 1, 1).unwrap().states[0];
        let v = s.expectation_of(|r| p.value(r));
        let rdv = s.expectation_of(|r| p.r_dv_dr(r));
        assert!((2.0 * (s.energy - v) - rdv).abs() < 1e-8);
    }

    #[test]
    fn moments_of_a_tabulated_state() {
        let p = PotentialSpec::coulomb(0.5, 0.5, 0.5).unwrap();
        let s = &solve(grid(), &p, 0, 1).unwrap().states[0];
        assert!((s.expectation(-1) - 1.426727774).abs() < 1e-7);
        assert!((s.expectation(1) - 0.9267277745).abs() < 1e-7);
    }

    #[test]
    fn density_has_one_peak() {
        let p = PotentialSpec::coulomb(10.0, 5.0, 1.0).unwrap();
        let s = &solve(grid(), &p, 0, 1).unwrap().states[0];
        let d: Vec<f64> = s.radial_density().into_iter().map(|(_, v)| v).collect();
        let peaks = (1..d.len() - 1)
            .filter(|&j| d[j] > d[j - 1] && d[j] > d[j + 1] && d[j] > 1e-12)
            .count();
        assert_eq!(peaks, 1);
        assert!(s
            .radial_function()
            .iter()
            .all(|&(r, v)| r > 0.0 && v.is_finite()));
    }
}
