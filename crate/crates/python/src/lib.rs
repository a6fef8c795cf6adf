//! Python bindings: grids, potentials, spectra, observables, the reference
//! tables and the shooting cross-check.

use std::sync::Arc;

use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use radial_gps::cli::{run_table, truncate as truncate_decimal};
use radial_gps::oracle;
use radial_gps::{BoundState, Error, GridSpec, PotentialSpec, RadialGrid};

/// `(index, gps, numerov, delta, flagged)`.
type ValidationRow = (usize, f64, f64, f64, bool);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(_)
        | Error::Parse { .. }
        | Error::InvalidPotential(_)
        | Error::InvalidGrid(_)
        | Error::Bracket { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

#[pyclass(name = "GridSpec", frozen, from_py_object)]
#[derive(Clone)]
struct PyGridSpec {
    inner: GridSpec,
}

#[pymethods]
impl PyGridSpec {
    #[new]
    #[pyo3(signature = (order=300, r_max=200.0, alpha=0.1))]
    fn new(order: usize, r_max: f64, alpha: f64) -> PyResult<Self> {
        GridSpec::new(order, r_max, alpha)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn r_max(&self) -> f64 {
        self.inner.r_max()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }

    /// `L = alpha * r_max / 2`.
    #[getter]
    fn length_scale(&self) -> f64 {
        self.inner.length_scale()
    }

    /// Radial nodes `r_0 .. r_N`.
    fn radii(&self) -> PyResult<Vec<f64>> {
        let grid = RadialGrid::new(self.inner).map_err(to_py)?;
        Ok(grid.radii().to_vec())
    }

    fn __repr__(&self) -> String {
        format!(
            "GridSpec(order={}, r_max={}, alpha={})",
            self.inner.order(),
            self.inner.r_max(),
            self.inner.alpha()
        )
    }
}

#[pyclass(name = "Potential", frozen, from_py_object)]
#[derive(Clone)]
struct PyPotential {
    inner: PotentialSpec,
}

#[pymethods]
impl PyPotential {
    /// Parses a descriptor such as `"coulomb Z=1 g=0 lambda=1/32"`.
    #[new]
    fn new(descriptor: &str) -> PyResult<Self> {
        descriptor
            .parse()
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    fn oscillator(a: f64, b: f64, c: f64) -> PyResult<Self> {
        PotentialSpec::oscillator(a, b, c)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    #[pyo3(signature = (z, g=0.0, lam=0.0))]
    fn coulomb(z: f64, g: f64, lam: f64) -> PyResult<Self> {
        PotentialSpec::coulomb(z, g, lam)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    fn quartic() -> Self {
        Self {
            inner: PotentialSpec::Quartic,
        }
    }

    /// `[(coefficient, power), ...]`.
    #[staticmethod]
    fn series(terms: Vec<(f64, i32)>) -> PyResult<Self> {
        PotentialSpec::series(terms)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    fn __call__(&self, r: f64) -> PyResult<f64> {
        self.inner.evaluate(r).map_err(to_py)
    }

    #[pyo3(signature = (r, l=0))]
    fn effective(&self, r: f64, l: u32) -> PyResult<f64> {
        self.inner.effective(l, r).map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Potential({:?})", self.inner.to_string())
    }
}

#[pyclass(name = "State", frozen)]
struct PyState {
    inner: BoundState,
}

#[pymethods]
impl PyState {
    #[getter]
    fn energy(&self) -> f64 {
        self.inner.energy
    }

    #[getter]
    fn l(&self) -> u32 {
        self.inner.l
    }

    #[getter]
    fn n_r(&self) -> usize {
        self.inner.n_r
    }

    #[getter]
    fn physical(&self) -> bool {
        self.inner.physical
    }

    #[getter]
    fn radii(&self) -> Vec<f64> {
        self.inner.radii().to_vec()
    }

    /// Reduced radial function `r R(r)` on every node.
    #[getter]
    fn psi(&self) -> Vec<f64> {
        self.inner.psi.clone()
    }

    /// `<r^power>`.
    fn expectation(&self, power: i32) -> f64 {
        self.inner.expectation(power)
    }

    fn norm(&self) -> f64 {
        self.inner.norm_squared().sqrt()
    }

    /// `[(r, psi^2), ...]`.
    fn density(&self) -> Vec<(f64, f64)> {
        self.inner.radial_density()
    }

    fn __repr__(&self) -> String {
        format!(
            "State(l={}, n_r={}, energy={})",
            self.inner.l, self.inner.n_r, self.inner.energy
        )
    }
}

#[pyclass(name = "Spectrum", frozen)]
struct PySpectrum {
    states: Vec<Py<PyState>>,
    energies: Vec<f64>,
    residual_norms: Vec<f64>,
    verdict: Option<String>,
}

#[pymethods]
impl PySpectrum {
    #[getter]
    fn energies(&self) -> Vec<f64> {
        self.energies.clone()
    }

    #[getter]
    fn residual_norms(&self) -> Vec<f64> {
        self.residual_norms.clone()
    }

    #[getter]
    fn states(&self, py: Python<'_>) -> Vec<Py<PyState>> {
        self.states.iter().map(|s| s.clone_ref(py)).collect()
    }

    /// Raises if the residual, ordering or node-ladder checks failed.
    fn verify(&self) -> PyResult<()> {
        match &self.verdict {
            None => Ok(()),
            Some(msg) => Err(PyRuntimeError::new_err(msg.clone())),
        }
    }

    fn __len__(&self) -> usize {
        self.states.len()
    }

    fn __getitem__(&self, py: Python<'_>, index: isize) -> PyResult<Py<PyState>> {
        let n = self.states.len() as isize;
        let i = if index < 0 { index + n } else { index };
        if !(0..n).contains(&i) {
            return Err(PyIndexError::new_err("state index out of range"));
        }
        Ok(self.states[i as usize].clone_ref(py))
    }
}

fn grid_or_default(grid: Option<PyGridSpec>) -> GridSpec {
    grid.map_or_else(GridSpec::default, |g| g.inner)
}

/// Lowest `states` eigenpairs of `potential` at angular momentum `l`.
#[pyfunction]
#[pyo3(signature = (potential, l=0, states=5, grid=None))]
fn solve(
    py: Python<'_>,
    potential: PyPotential,
    l: u32,
    states: usize,
    grid: Option<PyGridSpec>,
) -> PyResult<PySpectrum> {
    let spec = grid_or_default(grid);
    let spectrum = py
        .detach(|| {
            let grid = Arc::new(RadialGrid::new(spec)?);
            radial_gps::solve(grid, &potential.inner, l, states)
        })
        .map_err(to_py)?;
    let verdict = spectrum.verify().err().map(|e| e.to_string());
    let energies = spectrum.energies();
    let states = spectrum
        .states
        .into_iter()
        .map(|inner| Py::new(py, PyState { inner }))
        .collect::<PyResult<_>>()?;
    Ok(PySpectrum {
        states,
        energies,
        residual_norms: spectrum.residual_norms,
        verdict,
    })
}

/// Reproduces reference table `id` (1..6).
#[pyfunction]
#[pyo3(signature = (id, grid=None))]
fn table<'py>(py: Python<'py>, id: u8, grid: Option<PyGridSpec>) -> PyResult<Bound<'py, PyDict>> {
    let spec = grid_or_default(grid);
    let report = py.detach(|| run_table(id, spec)).map_err(to_py)?;
    let out = PyDict::new(py);
    let cells: Vec<(String, f64, String, f64, bool)> = report
        .cells
        .iter()
        .map(|c| {
            (
                c.label.clone(),
                c.computed,
                c.printed.to_string(),
                c.delta,
                c.pass(),
            )
        })
        .collect();
    let checks: Vec<(String, bool, String)> = report
        .checks
        .iter()
        .map(|c| (c.name.clone(), c.pass, c.detail.clone()))
        .collect();
    out.set_item("id", id)?;
    out.set_item("passed", report.passed())?;
    out.set_item("max_delta", report.max_delta())?;
    out.set_item("cells", cells)?;
    out.set_item("checks", checks)?;
    Ok(out)
}

/// Numerov cross-check of the lowest `states` levels;
/// returns `[(index, gps, numerov, delta, flagged), ...]`.
#[pyfunction]
#[pyo3(signature = (potential, l=0, states=3, grid=None, steps=oracle::DEFAULT_STEPS))]
fn validate(
    py: Python<'_>,
    potential: PyPotential,
    l: u32,
    states: usize,
    grid: Option<PyGridSpec>,
    steps: usize,
) -> PyResult<Vec<ValidationRow>> {
    let spec = grid_or_default(grid);
    let report = py
        .detach(|| {
            let grid = Arc::new(RadialGrid::new(spec)?);
            let spectrum = radial_gps::solve(grid, &potential.inner, l, states)?;
            oracle::cross_validate(&potential.inner, l, states, &spectrum.energies(), steps)
        })
        .map_err(to_py)?;
    Ok(report
        .rows
        .iter()
        .map(|r| (r.index, r.gps, r.numerov, r.delta, r.flagged))
        .collect())
}

/// Decimal string of `x` cut after `digits` places.
#[pyfunction]
fn truncate(x: f64, digits: usize) -> String {
    truncate_decimal(x, digits)
}

#[pymodule]
fn radialgps(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGridSpec>()?;
    m.add_class::<PyPotential>()?;
    m.add_class::<PyState>()?;
    m.add_class::<PySpectrum>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(truncate, m)?)?;
    Ok(())
}
