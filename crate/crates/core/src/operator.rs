//! Discrete radial Hamiltonian on the interior collocation nodes and its
//! dense symmetric eigensolve.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::mapping::{mapping_potential, RadialGrid};
use crate::observables::BoundState;
use crate::potentials::{centrifugal, PotentialSpec};

/// Classical outer turning points beyond this fraction of `r_max` mark a
/// state as contaminated by the box wall.
pub const CONFINEMENT_FRACTION: f64 = 0.8;

const SYMMETRY_TOL: f64 = 1e-12;

/// Real symmetric `(N-1) × (N-1)` Hamiltonian acting on the interior
/// coefficients `A_j = √r'_j ψ(r_j) / P_N(x_j)`.
#[derive(Debug, Clone)]
pub struct SymmetricOperator {
    grid: Arc<RadialGrid>,
    potential: PotentialSpec,
    l: u32,
    matrix: DMatrix<f64>,
}

impl SymmetricOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn potential(&self) -> &PotentialSpec {
        &self.potential
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Effective potential `v(r_j) + v_m(x_j)` on interior node `j` (1-based
    /// node index).
    fn diagonal_potential(grid: &RadialGrid, potential: &PotentialSpec, l: u32, j: usize) -> f64 {
        let r = grid.radii()[j];
        let x = grid.set().nodes()[j];
        potential.value(r) + centrifugal(l, r) + mapping_potential(x, grid.spec())
    }

    /// The kinetic part alone, `-(1/2) r'⁻¹ P⁻¹ d² P r'⁻¹` on interior nodes.
    pub fn kinetic(grid: &RadialGrid) -> DMatrix<f64> {
        let set = grid.set();
        let n = set.order();
        let p = set.legendre_at_nodes();
        let jac = grid.jacobians();
        DMatrix::from_fn(n - 1, n - 1, |a, b| {
            let (row, col) = (a + 1, b + 1);
            -0.5 * set.d2(row, col) * p[col] / (p[row] * jac[row] * jac[col])
        })
    }
}

/// Builds the Hamiltonian matrix for `potential` at angular momentum `l`.
pub fn assemble(
    grid: Arc<RadialGrid>,
    potential: &PotentialSpec,
    l: u32,
) -> Result<SymmetricOperator> {
    potential.validate()?;
    let mut matrix = SymmetricOperator::kinetic(&grid);
    let dim = matrix.nrows();
    for a in 0..dim {
        matrix[(a, a)] += SymmetricOperator::diagonal_potential(&grid, potential, l, a + 1);
    }
    for a in 0..dim {
        for b in 0..a {
            let (upper, lower) = (matrix[(b, a)], matrix[(a, b)]);
            if (upper - lower).abs() > SYMMETRY_TOL * upper.abs().max(1.0) {
                return Err(Error::Asymmetric {
                    row: a + 1,
                    col: b + 1,
                    upper,
                    lower,
                });
            }
        }
    }
    Ok(SymmetricOperator {
        grid,
        potential: potential.clone(),
        l,
        matrix,
    })
}

/// The lowest eigenpairs of one `(potential, ℓ)` operator.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub states: Vec<BoundState>,
    pub residual_norms: Vec<f64>,
}

impl Spectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.energy).collect()
    }

    /// States below the confinement ceiling.
    pub fn physical(&self) -> impl Iterator<Item = &BoundState> {
        self.states.iter().filter(|s| s.physical)
    }

    /// Checks the residual, ordering and node-ladder invariants.
    pub fn verify(&self) -> Result<()> {
        for (k, (state, res)) in self.states.iter().zip(&self.residual_norms).enumerate() {
            if *res > 1e-9 * state.energy.abs().max(1.0) {
                return Err(Error::Invariant(format!(
                    "state {k}: residual {res:e} exceeds 1e-9·max(1,|E|) at E = {}",
                    state.energy
                )));
            }
            if state.physical && state.n_r != k {
                return Err(Error::Invariant(format!(
                    "state {k}: node count {} breaks the node ladder",
                    state.n_r
                )));
            }
        }
        for (k, w) in self.states.windows(2).enumerate() {
            if w[1].energy <= w[0].energy {
                return Err(Error::Invariant(format!(
                    "energies {} and {} not strictly increasing at index {k}",
                    w[0].energy, w[1].energy
                )));
            }
        }
        Ok(())
    }
}

/// Diagonalises `op` and returns its `k` lowest states, normalised and
/// sign-fixed.
pub fn eigen_lowest(op: &SymmetricOperator, k: usize) -> Result<Spectrum> {
    let dim = op.dim();
    if k == 0 || k > dim {
        return Err(Error::Domain(format!(
            "requested {k} states from a {dim}-dimensional operator"
        )));
    }
    let eig = SymmetricEigen::try_new(op.matrix.clone(), f64::EPSILON, 0).ok_or_else(|| {
        let diag = op.matrix.diagonal();
        Error::Eigensolver(format!(
            "symmetric QR did not converge (dim {dim}, diagonal range [{:e}, {:e}])",
            diag.min(),
            diag.max()
        ))
    })?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut states = Vec::with_capacity(k);
    let mut residual_norms = Vec::with_capacity(k);
    for &idx in order.iter().take(k) {
        let (energy, coeffs) = polish(
            op,
            eig.eigenvalues[idx],
            eig.eigenvectors.column(idx).into_owned(),
        );
        residual_norms.push(residual_norm(op, energy, coeffs.as_slice()));
        let mut state = BoundState::from_coefficients(
            Arc::clone(&op.grid),
            op.l,
            energy,
            coeffs.as_slice().to_vec(),
        );
        state.normalize()?;
        state.physical = below_ceiling(op, energy);
        states.push(state);
    }
    Ok(Spectrum {
        states,
        residual_norms,
    })
}

/// Shifted inverse iteration followed by a Rayleigh quotient.
///
/// Rows next to `r = 0` (singular potentials) or `r = r_max` (confining
/// powers) carry diagonal entries many orders of magnitude above the
/// spectrum of interest. The QR eigenvalues are unaffected, but the
/// eigenvector entries there hold rounding noise that the huge diagonal
/// amplifies in `H A`. Solving `(H - σ) y = A` with LU recovers those entries
/// to componentwise accuracy.
fn polish(op: &SymmetricOperator, shift: f64, start: DVector<f64>) -> (f64, DVector<f64>) {
    const STEPS: usize = 2;
    let dim = op.dim();
    let scale = shift.abs().max(1.0);
    let mut shifted = op.matrix.clone();
    // A tiny offset keeps the factorisation away from exact singularity.
    let sigma = shift + 1e-13 * scale;
    for i in 0..dim {
        shifted[(i, i)] -= sigma;
    }
    let lu = shifted.lu();
    let mut v = start;
    for _ in 0..STEPS {
        match lu.solve(&v) {
            Some(y) if y.iter().all(|x| x.is_finite()) => {
                let norm = y.norm();
                if norm == 0.0 {
                    break;
                }
                v = y / norm;
            }
            _ => break,
        }
    }
    let rayleigh = v.dot(&(&op.matrix * &v));
    (rayleigh, v)
}

/// `‖H A - ε A‖₂ / ‖A‖₂`.
pub fn residual_norm(op: &SymmetricOperator, energy: f64, coefficients: &[f64]) -> f64 {
    let a = DVector::from_column_slice(coefficients);
    let r = &op.matrix * &a - energy * &a;
    r.norm() / a.norm()
}

/// Residual of a state produced by [`eigen_lowest`] on the same operator.
pub fn residual_check(op: &SymmetricOperator, state: &BoundState) -> f64 {
    residual_norm(op, state.energy, &state.coefficients)
}

/// Outermost node radius where the effective potential is still below
/// `energy`, i.e. the discrete outer classical turning point.
pub fn outer_turning_point(op: &SymmetricOperator, energy: f64) -> f64 {
    let radii = op.grid.radii();
    let n = radii.len() - 1;
    (1..n)
        .rev()
        .find(|&j| op.potential.value(radii[j]) + centrifugal(op.l, radii[j]) <= energy)
        .map_or(0.0, |j| radii[j])
}

fn below_ceiling(op: &SymmetricOperator, energy: f64) -> bool {
    outer_turning_point(op, energy) < CONFINEMENT_FRACTION * op.grid.spec().r_max()
}

/// Assembles and solves in one call.
pub fn solve(
    grid: Arc<RadialGrid>,
    potential: &PotentialSpec,
    l: u32,
    k: usize,
) -> Result<Spectrum> {
    let op = assemble(grid, potential, l)?;
    eigen_lowest(&op, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::GridSpec;

    fn grid() -> Arc<RadialGrid> {
        Arc::new(RadialGrid::new(GridSpec::default()).unwrap())
    }

    #[test]
    fn hydrogen_levels() {
        let p = PotentialSpec::coulomb(1.0, 0.0, 0.0).unwrap();
        for l in 0..3u32 {
            let s = solve(grid(), &p, l, 4).unwrap();
            s.verify().unwrap();
            for (k, e) in s.energies().iter().enumerate() {
                let n = (k + l as usize + 1) as f64;
                assert!((e + 0.5 / (n * n)).abs() < 1e-10, "l={l} k={k}: {e}");
            }
        }
    }

    #[test]
    fn harmonic_levels() {
        let p = PotentialSpec::series(vec![(0.5, 2)]).unwrap();
        let s = solve(grid(), &p, 0, 3).unwrap();
        for (k, e) in s.energies().iter().enumerate() {
            assert!((e - (2.0 * k as f64 + 1.5)).abs() < 1e-10, "{e}");
        }
    }

    #[test]
    fn operator_is_symmetric_and_sized() {
        let p = PotentialSpec::oscillator(0.5, 0.5, 0.4).unwrap();
        let op = assemble(grid(), &p, 2).unwrap();
        assert_eq!(op.dim(), 299);
        let m = op.matrix();
        assert!((0..op.dim()).all(|i| (0..i).all(|j| m[(i, j)] == m[(j, i)]
            || (m[(i, j)] - m[(j, i)]).abs() <= 1e-12 * m[(i, j)].abs().max(1.0))));
    }

    #[test]
    fn residual_detects_perturbation() {
        let p = PotentialSpec::oscillator(0.5, 0.5, 0.4).unwrap();
        let op = assemble(grid(), &p, 0).unwrap();
        let s = eigen_lowest(&op, 1).unwrap();
        let st = &s.states[0];
        assert!((st.energy - 2.46735982710).abs() < 1e-9);
        assert!(residual_check(&op, st) < 1e-9);
        assert!(residual_norm(&op, st.energy + 1e-6, &st.coefficients) > 5e-7);
    }

    #[test]
    fn too_many_states_is_an_error() {
        let p = PotentialSpec::Quartic;
        let g = Arc::new(RadialGrid::new(GridSpec::new(20, 10.0, 0.5).unwrap()).unwrap());
        assert!(solve(Arc::clone(&g), &p, 0, 20).is_err());
        assert!(solve(g, &p, 0, 0).is_err());
    }

    #[test]
    fn confinement_ceiling_marks_box_states() {
        // a barely confining potential: high states feel the wall at r_max = 20
        let p = PotentialSpec::series(vec![(0.005, 2)]).unwrap();
        let g = Arc::new(RadialGrid::new(GridSpec::new(120, 20.0, 0.5).unwrap()).unwrap());
        let s = solve(g, &p, 0, 30).unwrap();
        assert!(s.states[0].physical);
        assert!(!s.states[29].physical);
    }
}
