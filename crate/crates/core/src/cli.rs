//! Command-line front end: argument types, the subcommand drivers and
//! their text/CSV renderers. The binary only parses and dispatches.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mapping::{GridSpec, RadialGrid};
use crate::observables::BoundState;
use crate::operator::{solve, Spectrum};
use crate::oracle::{self, ValidationReport};
use crate::potentials::{parse_potential, PotentialSpec};
use crate::tables::{self, Cell, ParameterSet};

pub const MAX_DIGITS: usize = 12;
pub const DEFAULT_DIGITS: usize = 11;

#[derive(Debug, Parser)]
#[command(
    name = "radial-gps",
    version,
    about = "Bound states of singular central potentials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest eigenvalues for each requested ℓ.
    Solve {
        #[command(flatten)]
        problem: Problem,
        #[command(flatten)]
        output: Output,
    },
    /// Reproduce one of the six reference tables.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
        id: u8,
        #[command(flatten)]
        output: Output,
    },
    /// Energies under variation of one grid parameter.
    Scan {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, value_enum)]
        axis: Axis,
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        values: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Radial probability density of one state.
    Density {
        #[arg(long, value_parser = potential_arg)]
        potential: PotentialSpec,
        #[arg(long, default_value_t = 0)]
        l: u32,
        /// 0-based state index within ℓ.
        #[arg(long, default_value_t = 0)]
        state: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Radial moments ⟨r^p⟩.
    Expect {
        #[command(flatten)]
        problem: Problem,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "-1,1,2",
            allow_hyphen_values = true
        )]
        powers: Vec<i32>,
        #[command(flatten)]
        output: Output,
    },
    /// Cross-check against Numerov shooting.
    Validate {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, default_value_t = oracle::DEFAULT_STEPS)]
        steps: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Problem {
    #[arg(long, value_parser = potential_arg)]
    pub potential: PotentialSpec,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub l: Vec<u32>,
    #[arg(long, default_value_t = 5)]
    pub states: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// N,r_max,alpha
    #[arg(long, value_parser = grid_arg, default_value = "300,200,0.1")]
    pub grid: GridSpec,
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    pub digits: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    #[value(name = "N", alias = "n")]
    Order,
    #[value(name = "r_max", alias = "rmax")]
    RMax,
    #[value(name = "alpha")]
    Alpha,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Order => "N",
            Axis::RMax => "r_max",
            Axis::Alpha => "alpha",
        }
    }

    pub fn apply(self, base: GridSpec, value: f64) -> Result<GridSpec> {
        match self {
            Axis::Order => {
                if value.fract() != 0.0 || value < 2.0 {
                    return Err(Error::InvalidGrid(format!(
                        "N must be an integer >= 2, got {value}"
                    )));
                }
                base.with_order(value as usize)
            }
            Axis::RMax => base.with_r_max(value),
            Axis::Alpha => base.with_alpha(value),
        }
    }
}

fn potential_arg(s: &str) -> std::result::Result<PotentialSpec, String> {
    parse_potential(s).map_err(|e| e.to_string())
}

fn grid_arg(s: &str) -> std::result::Result<GridSpec, String> {
    parse_grid(s).map_err(|e| e.to_string())
}

/// Parses `N,r_max,alpha`.
pub fn parse_grid(s: &str) -> Result<GridSpec> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::InvalidGrid(format!(
            "expected N,r_max,alpha, got {s:?}"
        )));
    }
    let order = parts[0]
        .parse::<usize>()
        .map_err(|e| Error::InvalidGrid(format!("N {:?}: {e}", parts[0])))?;
    let num = |t: &str| {
        t.parse::<f64>()
            .map_err(|e| Error::InvalidGrid(format!("{t:?}: {e}")))
    };
    GridSpec::new(order, num(parts[1])?, num(parts[2])?)
}

/// Decimal representation of `x` cut, not rounded, after `digits` places.
pub fn truncate(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    // 1100 places cover the exact binary expansion of every finite f64.
    let exact = format!("{x:.1100}");
    let (int, frac) = exact
        .split_once('.')
        .expect("fixed-point output has a point");
    let frac = frac.get(..digits).unwrap_or(frac);
    if digits == 0 {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    }
}

fn check_digits(digits: usize) -> Result<()> {
    if digits > MAX_DIGITS {
        return Err(Error::Domain(format!(
            "at most {MAX_DIGITS} digits can be printed, got {digits}"
        )));
    }
    Ok(())
}

/// Everything `solve` needs.
#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub potential: PotentialSpec,
    pub l_values: Vec<u32>,
    pub num_states: usize,
    pub grid: GridSpec,
    pub format: Format,
    pub digits: usize,
}

impl SolveConfig {
    pub fn new(problem: &Problem, output: &Output) -> Result<Self> {
        let cfg = Self {
            potential: problem.potential.clone(),
            l_values: problem.l.clone(),
            num_states: problem.states,
            grid: output.grid,
            format: output.format,
            digits: output.digits,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_states == 0 {
            return Err(Error::Domain("--states must be at least 1".into()));
        }
        if self.l_values.is_empty() {
            return Err(Error::Domain("no ℓ values given".into()));
        }
        if self.num_states >= self.grid.order() {
            return Err(Error::Domain(format!(
                "{} states requested from a grid with {} interior nodes",
                self.num_states,
                self.grid.order() - 1
            )));
        }
        check_digits(self.digits)?;
        self.potential.validate()
    }
}

/// Spectra for every ℓ, in input order.
pub fn run_solve(cfg: &SolveConfig) -> Result<Vec<(u32, Spectrum)>> {
    cfg.validate()?;
    let grid = Arc::new(RadialGrid::new(cfg.grid)?);
    cfg.l_values
        .par_iter()
        .map(|&l| solve(Arc::clone(&grid), &cfg.potential, l, cfg.num_states).map(|s| (l, s)))
        .collect()
}

/// Residual, ordering, node-ladder and confinement checks over all spectra.
pub fn check_spectra(spectra: &[(u32, Spectrum)]) -> Result<()> {
    for (l, spectrum) in spectra {
        spectrum
            .verify()
            .map_err(|e| Error::Invariant(format!("ℓ = {l}: {e}")))?;
        if let Some(s) = spectrum.states.iter().find(|s| !s.physical) {
            return Err(Error::Invariant(format!(
                "ℓ = {l}, n_r = {}: outer turning point beyond the confinement ceiling at E = {}",
                s.n_r, s.energy
            )));
        }
    }
    Ok(())
}

pub fn render_spectra(cfg: &SolveConfig, spectra: &[(u32, Spectrum)]) -> String {
    let mut out = String::new();
    match cfg.format {
        Format::Csv => {
            out.push_str("l,state,n_r,energy\n");
            for (l, spectrum) in spectra {
                for (k, s) in spectrum.states.iter().enumerate() {
                    let _ = writeln!(out, "{l},{k},{},{}", s.n_r, truncate(s.energy, cfg.digits));
                }
            }
        }
        Format::Table => {
            let _ = writeln!(out, "# {}", cfg.potential);
            let _ = writeln!(out, "# {}", grid_label(&cfg.grid));
            let _ = writeln!(
                out,
                "{:>3} {:>5} {:>4}  {:>22}",
                "l", "state", "n_r", "energy"
            );
            for (l, spectrum) in spectra {
                for (k, s) in spectrum.states.iter().enumerate() {
                    let flag = if s.physical { "" } else { "  (beyond ceiling)" };
                    let _ = writeln!(
                        out,
                        "{l:>3} {k:>5} {:>4}  {:>22}{flag}",
                        s.n_r,
                        truncate(s.energy, cfg.digits)
                    );
                }
            }
        }
    }
    out
}

fn grid_label(g: &GridSpec) -> String {
    format!(
        "grid N={} r_max={} alpha={}",
        g.order(),
        g.r_max(),
        g.alpha()
    )
}

// ---------------------------------------------------------------------------
// table

/// Per-table tolerance on `|computed - printed|`.
pub fn table_tolerance(id: u8) -> f64 {
    match id {
        1 => 1e-8,
        2 | 3 => 1e-9,
        4 | 5 => 1e-8,
        6 => 1e-7,
        _ => f64::NAN,
    }
}

#[derive(Debug, Clone)]
pub struct CellResult {
    pub label: String,
    pub computed: f64,
    pub printed: &'static str,
    pub decimals: usize,
    pub delta: f64,
    pub tolerance: f64,
}

impl CellResult {
    fn new(label: String, computed: f64, cell: &Cell, tolerance: f64) -> Self {
        Self {
            label,
            computed,
            printed: cell.printed,
            decimals: cell.decimals(),
            delta: (computed - cell.value()).abs(),
            tolerance,
        }
    }

    pub fn pass(&self) -> bool {
        self.delta <= self.tolerance
    }
}

/// A named pass/fail condition beyond the per-cell tolerance.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub id: u8,
    pub cells: Vec<CellResult>,
    pub checks: Vec<Check>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(CellResult::pass) && self.checks.iter().all(|c| c.pass)
    }

    pub fn max_delta(&self) -> f64 {
        self.cells.iter().map(|c| c.delta).fold(0.0, f64::max)
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str("cell,computed,paper,delta,tolerance,pass\n");
                for c in &self.cells {
                    let _ = writeln!(
                        out,
                        "{},{},{},{:e},{:e},{}",
                        c.label,
                        truncate(c.computed, c.decimals),
                        c.printed,
                        c.delta,
                        c.tolerance,
                        c.pass()
                    );
                }
            }
            Format::Table => {
                let _ = writeln!(out, "table {}", self.id);
                let _ = writeln!(
                    out,
                    "{:<28} {:>18} {:>18} {:>10}",
                    "cell", "computed", "paper", "|delta|"
                );
                for c in &self.cells {
                    let _ = writeln!(
                        out,
                        "{:<28} {:>18} {:>18} {:>10.2e}{}",
                        c.label,
                        truncate(c.computed, c.decimals),
                        c.printed,
                        c.delta,
                        if c.pass() { "" } else { "  FAIL" }
                    );
                }
                for ch in &self.checks {
                    let _ = writeln!(
                        out,
                        "{} {}: {}",
                        if ch.pass { "ok  " } else { "FAIL" },
                        ch.name,
                        ch.detail
                    );
                }
                let _ = writeln!(
                    out,
                    "{} cells, max |delta| {:.2e}, tolerance {:e}: {}",
                    self.cells.len(),
                    self.max_delta(),
                    table_tolerance(self.id),
                    if self.passed() { "PASS" } else { "FAIL" }
                );
            }
        }
        out
    }
}

type Solved = Vec<Vec<Spectrum>>;

// Solves every (set, column) pair concurrently; results keep input order.
fn solve_sets(grid: &Arc<RadialGrid>, sets: &[ParameterSet]) -> Result<Solved> {
    sets.par_iter()
        .map(|set| {
            let p = set.params.potential();
            set.columns
                .par_iter()
                .map(|col| solve(Arc::clone(grid), &p, col.l, col.cells.len()))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

fn invariant_check(name: &str, spectra: impl IntoIterator<Item = (String, Spectrum)>) -> Check {
    let mut failures = Vec::new();
    for (label, s) in spectra {
        if let Err(e) = s.verify() {
            failures.push(format!("{label}: {e}"));
        }
        if s.states.iter().any(|st| !st.physical) {
            failures.push(format!("{label}: state beyond the confinement ceiling"));
        }
    }
    Check {
        name: name.into(),
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "residuals, ordering and node ladder".into()
        } else {
            failures.join("; ")
        },
    }
}

fn exact_check(name: String, computed: f64, exact: f64, tol: f64) -> Check {
    let delta = (computed - exact).abs();
    Check {
        name,
        pass: delta <= tol,
        detail: format!(
            "computed {computed:.13}, exact {exact}, |delta| {delta:.2e} (tol {tol:e})"
        ),
    }
}

fn eigen_cells(id: u8, sets: &[ParameterSet], solved: &Solved) -> Vec<CellResult> {
    let tol = table_tolerance(id);
    let mut cells = Vec::new();
    for (si, (set, spectra)) in sets.iter().zip(solved).enumerate() {
        for (col, spectrum) in set.columns.iter().zip(spectra) {
            for (k, (cell, state)) in col.cells.iter().zip(&spectrum.states).enumerate() {
                let label = if sets.len() > 1 {
                    format!("set{} l={} state={k}", si + 1, col.l)
                } else {
                    format!("l={} state={k}", col.l)
                };
                cells.push(CellResult::new(label, state.energy, cell, tol));
            }
        }
    }
    cells
}

fn labelled(sets: &[ParameterSet], solved: &Solved) -> Vec<(String, Spectrum)> {
    sets.iter()
        .zip(solved)
        .enumerate()
        .flat_map(|(si, (set, spectra))| {
            set.columns
                .iter()
                .zip(spectra)
                .map(move |(col, s)| (format!("set{} l={}", si + 1, col.l), s.clone()))
        })
        .collect()
}

/// Computes every cell of table `id` on `grid` and compares with the
/// printed values.
pub fn run_table(id: u8, grid: GridSpec) -> Result<TableReport> {
    let rgrid = Arc::new(RadialGrid::new(grid)?);
    let tol = table_tolerance(id);
    let mut checks = Vec::new();
    let cells = match id {
        1 => {
            let results: Vec<(Spectrum, &tables::QuarticRow)> = tables::TABLE1
                .par_iter()
                .map(|row| {
                    solve(
                        Arc::clone(&rgrid),
                        &PotentialSpec::Quartic,
                        row.l,
                        row.n_r() + 1,
                    )
                    .map(|s| (s, row))
                })
                .collect::<Result<_>>()?;
            checks.push(invariant_check(
                "invariants",
                results
                    .iter()
                    .map(|(s, r)| (format!("l={}", r.l), s.clone())),
            ));
            results
                .iter()
                .map(|(s, row)| {
                    let label = format!("v={} l={} n_r={}", row.v, row.l, row.n_r());
                    CellResult::new(label, s.states[row.n_r()].energy, &row.cell, tol)
                })
                .collect()
        }
        2 => {
            let solved = solve_sets(&rgrid, tables::TABLE2)?;
            checks.push(invariant_check(
                "invariants",
                labelled(tables::TABLE2, &solved),
            ));
            for &(set, l, state, exact) in tables::TABLE2_EXACT {
                let col = tables::TABLE2[set]
                    .columns
                    .iter()
                    .position(|c| c.l == l)
                    .expect("column");
                checks.push(exact_check(
                    format!("exact set{} l={l} state={state}", set + 1),
                    solved[set][col].states[state].energy,
                    exact,
                    1e-9,
                ));
            }
            eigen_cells(2, tables::TABLE2, &solved)
        }
        3 => {
            let sets = std::slice::from_ref(&tables::TABLE3);
            let solved = solve_sets(&rgrid, sets)?;
            checks.push(invariant_check("invariants", labelled(sets, &solved)));
            let cells = eigen_cells(3, sets, &solved);
            let mut mismatches = Vec::new();
            let mut count = 0;
            for (cell_ref, result) in sets[0].columns.iter().flat_map(|c| c.cells).zip(&cells) {
                if cell_ref.references.is_empty() {
                    continue;
                }
                count += 1;
                let shown = truncate(result.computed, result.decimals);
                if shown != cell_ref.printed {
                    mismatches.push(format!("{}: {shown} vs {}", result.label, cell_ref.printed));
                }
            }
            checks.push(Check {
                name: format!("digit-for-digit reference cells ({count})"),
                pass: mismatches.is_empty(),
                detail: if mismatches.is_empty() {
                    "all truncated values identical".into()
                } else {
                    mismatches.join("; ")
                },
            });
            cells
        }
        4 => {
            let solved = solve_sets(&rgrid, tables::TABLE4)?;
            checks.push(invariant_check(
                "invariants",
                labelled(tables::TABLE4, &solved),
            ));
            for &(set, lo, hi) in tables::TABLE4_BOUNDS {
                let e = solved[set][0].states[0].energy;
                checks.push(Check {
                    name: format!("moment bounds set{}", set + 1),
                    pass: lo <= e && e <= hi,
                    detail: format!("{e:.11} in [{lo}, {hi}]"),
                });
            }
            for &(set, l, state, exact) in tables::TABLE4_EXACT {
                let col = tables::TABLE4[set]
                    .columns
                    .iter()
                    .position(|c| c.l == l)
                    .expect("column");
                checks.push(exact_check(
                    format!("supersymmetric set{} l={l} state={state}", set + 1),
                    solved[set][col].states[state].energy,
                    exact,
                    1e-9,
                ));
            }
            eigen_cells(4, tables::TABLE4, &solved)
        }
        5 => {
            let sets = std::slice::from_ref(&tables::TABLE5);
            let solved = solve_sets(&rgrid, sets)?;
            checks.push(invariant_check("invariants", labelled(sets, &solved)));
            for &(l, state, exact) in tables::TABLE5_EXACT {
                let col = tables::TABLE5
                    .columns
                    .iter()
                    .position(|c| c.l == l)
                    .expect("column");
                checks.push(exact_check(
                    format!("supersymmetric l={l} state={state}"),
                    solved[0][col].states[state].energy,
                    exact,
                    1e-9,
                ));
            }
            eigen_cells(5, sets, &solved)
        }
        6 => {
            let per_set: Vec<Vec<(u32, Spectrum)>> = tables::TABLE6
                .par_iter()
                .map(|set| {
                    let p = set.params.potential();
                    let mut ls: Vec<u32> = set.rows.iter().map(|r| r.l).collect();
                    ls.dedup();
                    ls.iter()
                        .map(|&l| {
                            let k = set
                                .rows
                                .iter()
                                .filter(|r| r.l == l)
                                .map(|r| r.state + 1)
                                .max()
                                .unwrap_or(1);
                            solve(Arc::clone(&rgrid), &p, l, k).map(|s| (l, s))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            checks.push(invariant_check(
                "invariants",
                per_set.iter().enumerate().flat_map(|(si, v)| {
                    v.iter()
                        .map(move |(l, s)| (format!("set{} l={l}", si + 1), s.clone()))
                }),
            ));
            let mut cells = Vec::new();
            let mut reference_failures = Vec::new();
            let mut reference_count = 0;
            for (si, (set, spectra)) in tables::TABLE6.iter().zip(&per_set).enumerate() {
                for row in set.rows {
                    let spectrum = &spectra
                        .iter()
                        .find(|(l, _)| *l == row.l)
                        .expect("solved ℓ")
                        .1;
                    let state = &spectrum.states[row.state];
                    for (name, power, cell) in [("<1/r>", -1, &row.inverse_r), ("<r>", 1, &row.r)] {
                        let value = state.expectation(power);
                        let label = format!("set{} l={} state={} {name}", si + 1, row.l, row.state);
                        for reference in cell.references {
                            reference_count += 1;
                            let r: f64 = reference.parse().expect("reference decimal");
                            let delta = (value - r).abs();
                            if delta > 1e-7 {
                                reference_failures.push(format!(
                                    "{label}: {value:.10} vs ({reference}) {delta:.2e}"
                                ));
                            }
                        }
                        cells.push(CellResult::new(label, value, cell, tol));
                    }
                }
            }
            checks.push(Check {
                name: format!("independent reference values ({reference_count})"),
                pass: reference_failures.is_empty(),
                detail: if reference_failures.is_empty() {
                    "all within 1e-7".into()
                } else {
                    reference_failures.join("; ")
                },
            });
            cells
        }
        _ => return Err(Error::Domain(format!("no table {id}; expected 1..6"))),
    };
    Ok(TableReport { id, cells, checks })
}

// ---------------------------------------------------------------------------
// scan

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub axis: Axis,
    pub values: Vec<f64>,
    /// `(ℓ, state, energies per axis value)`.
    pub rows: Vec<(u32, usize, Vec<f64>)>,
}

impl ScanReport {
    /// Largest pairwise difference across axis values, per row.
    pub fn spreads(&self) -> Vec<f64> {
        self.rows.iter().map(|(_, _, e)| spread(e)).collect()
    }

    pub fn max_spread(&self) -> f64 {
        self.spreads().into_iter().fold(0.0, f64::max)
    }

    pub fn render(&self, digits: usize, format: Format) -> String {
        let mut out = String::new();
        let sep = if format == Format::Csv { "," } else { "  " };
        let mut header = vec!["l".to_string(), "state".to_string()];
        header.extend(
            self.values
                .iter()
                .map(|v| format!("{}={v}", self.axis.name())),
        );
        header.push("spread".into());
        out.push_str(&header.join(sep));
        out.push('\n');
        for ((l, k, energies), s) in self.rows.iter().zip(self.spreads()) {
            let mut line = vec![l.to_string(), k.to_string()];
            line.extend(energies.iter().map(|&e| truncate(e, digits)));
            line.push(format!("{s:e}"));
            out.push_str(&line.join(sep));
            out.push('\n');
        }
        out
    }
}

pub fn spread(values: &[f64]) -> f64 {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

pub fn run_scan(cfg: &SolveConfig, axis: Axis, values: &[f64]) -> Result<ScanReport> {
    if values.len() < 2 {
        return Err(Error::Domain(
            "a scan needs at least two axis values".into(),
        ));
    }
    cfg.validate()?;
    let grids: Vec<GridSpec> = values
        .iter()
        .map(|&v| axis.apply(cfg.grid, v))
        .collect::<Result<_>>()?;
    let per_value: Vec<Vec<(u32, Spectrum)>> = grids
        .par_iter()
        .map(|&g| {
            run_solve(&SolveConfig {
                grid: g,
                ..cfg.clone()
            })
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (li, &l) in cfg.l_values.iter().enumerate() {
        for k in 0..cfg.num_states {
            let energies = per_value
                .iter()
                .map(|spectra| spectra[li].1.states[k].energy)
                .collect();
            rows.push((l, k, energies));
        }
    }
    Ok(ScanReport {
        axis,
        values: values.to_vec(),
        rows,
    })
}

// ---------------------------------------------------------------------------
// density, expectation values, validation

#[derive(Debug, Clone)]
pub struct DensityReport {
    pub potential: PotentialSpec,
    pub grid: GridSpec,
    pub state: BoundState,
    pub index: usize,
}

impl DensityReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# potential: {}", self.potential);
        let _ = writeln!(out, "# {}", grid_label(&self.grid));
        let _ = writeln!(
            out,
            "# l = {} state = {} n_r = {} energy = {}",
            self.state.l,
            self.index,
            self.state.n_r,
            truncate(self.state.energy, MAX_DIGITS)
        );
        out.push_str("# r psi^2\n");
        for (r, d) in self.state.radial_density() {
            let _ = writeln!(out, "{r:.17e} {d:.17e}");
        }
        out
    }
}

pub fn run_density(
    potential: &PotentialSpec,
    l: u32,
    index: usize,
    grid: GridSpec,
) -> Result<DensityReport> {
    if index + 1 >= grid.order() {
        return Err(Error::Domain(format!(
            "state {index} out of range for a grid with {} interior nodes",
            grid.order() - 1
        )));
    }
    let rgrid = Arc::new(RadialGrid::new(grid)?);
    let mut spectrum = solve(rgrid, potential, l, index + 1)?;
    spectrum.verify()?;
    let state = spectrum.states.swap_remove(index);
    Ok(DensityReport {
        potential: potential.clone(),
        grid,
        state,
        index,
    })
}

pub fn render_expectations(
    cfg: &SolveConfig,
    spectra: &[(u32, Spectrum)],
    powers: &[i32],
) -> String {
    let mut out = String::new();
    let sep = if cfg.format == Format::Csv { "," } else { "  " };
    let mut header = vec!["l".to_string(), "state".into(), "energy".into()];
    header.extend(powers.iter().map(|p| format!("<r^{p}>")));
    out.push_str(&header.join(sep));
    out.push('\n');
    for (l, spectrum) in spectra {
        for (k, s) in spectrum.states.iter().enumerate() {
            let mut line = vec![l.to_string(), k.to_string(), truncate(s.energy, cfg.digits)];
            line.extend(
                powers
                    .iter()
                    .map(|&p| truncate(s.expectation(p), cfg.digits)),
            );
            out.push_str(&line.join(sep));
            out.push('\n');
        }
    }
    out
}

pub fn run_validate(cfg: &SolveConfig, steps: usize) -> Result<Vec<ValidationReport>> {
    let spectra = run_solve(cfg)?;
    spectra
        .par_iter()
        .map(|(l, s)| {
            oracle::cross_validate(&cfg.potential, *l, cfg.num_states, &s.energies(), steps)
        })
        .collect()
}

pub fn render_validation(reports: &[ValidationReport], digits: usize, format: Format) -> String {
    let mut out = String::new();
    let sep = if format == Format::Csv { "," } else { "  " };
    out.push_str(&["l", "state", "gps", "numerov", "delta", "flagged"].join(sep));
    out.push('\n');
    for rep in reports {
        for row in &rep.rows {
            let line = [
                rep.l.to_string(),
                row.index.to_string(),
                truncate(row.gps, digits),
                truncate(row.numerov, digits),
                format!("{:e}", row.delta),
                row.flagged.to_string(),
            ];
            out.push_str(&line.join(sep));
            out.push('\n');
        }
    }
    out
}

/// Outcome of one invocation: text for stdout or `--out`, and whether every
/// check held.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub success: bool,
    pub diagnostics: Vec<String>,
}

pub fn execute(command: &Command) -> Result<(Outcome, Option<PathBuf>)> {
    let (outcome, out) = match command {
        Command::Solve { problem, output } => {
            let cfg = SolveConfig::new(problem, output)?;
            let spectra = run_solve(&cfg)?;
            let check = check_spectra(&spectra);
            (
                Outcome {
                    text: render_spectra(&cfg, &spectra),
                    success: check.is_ok(),
                    diagnostics: check.err().map(|e| e.to_string()).into_iter().collect(),
                },
                output.out.clone(),
            )
        }
        Command::Table { id, output } => {
            let report = run_table(*id, output.grid)?;
            let diagnostics = report
                .cells
                .iter()
                .filter(|c| !c.pass())
                .map(|c| {
                    format!(
                        "{}: |delta| {:e} exceeds {:e}",
                        c.label, c.delta, c.tolerance
                    )
                })
                .chain(
                    report
                        .checks
                        .iter()
                        .filter(|c| !c.pass)
                        .map(|c| format!("{}: {}", c.name, c.detail)),
                )
                .collect();
            (
                Outcome {
                    text: report.render(output.format),
                    success: report.passed(),
                    diagnostics,
                },
                output.out.clone(),
            )
        }
        Command::Scan {
            problem,
            axis,
            values,
            output,
        } => {
            let cfg = SolveConfig::new(problem, output)?;
            let report = run_scan(&cfg, *axis, values)?;
            (
                Outcome {
                    text: report.render(cfg.digits, output.format),
                    success: true,
                    diagnostics: Vec::new(),
                },
                output.out.clone(),
            )
        }
        Command::Density {
            potential,
            l,
            state,
            output,
        } => {
            let report = run_density(potential, *l, *state, output.grid)?;
            let mut diagnostics = Vec::new();
            if !report.state.physical {
                diagnostics.push("state reaches beyond the confinement ceiling".to_string());
            }
            (
                Outcome {
                    text: report.render(),
                    success: diagnostics.is_empty(),
                    diagnostics,
                },
                output.out.clone(),
            )
        }
        Command::Expect {
            problem,
            powers,
            output,
        } => {
            let cfg = SolveConfig::new(problem, output)?;
            let spectra = run_solve(&cfg)?;
            let check = check_spectra(&spectra);
            (
                Outcome {
                    text: render_expectations(&cfg, &spectra, powers),
                    success: check.is_ok(),
                    diagnostics: check.err().map(|e| e.to_string()).into_iter().collect(),
                },
                output.out.clone(),
            )
        }
        Command::Validate {
            problem,
            steps,
            output,
        } => {
            let cfg = SolveConfig::new(problem, output)?;
            let reports = run_validate(&cfg, *steps)?;
            let diagnostics = reports
                .iter()
                .flat_map(|r| {
                    r.rows.iter().filter(|row| row.flagged).map(move |row| {
                        format!(
                            "ℓ = {} state {}: |delta| {:e} exceeds {:e}",
                            r.l,
                            row.index,
                            row.delta,
                            oracle::FLAG_THRESHOLD
                        )
                    })
                })
                .collect::<Vec<_>>();
            (
                Outcome {
                    text: render_validation(&reports, cfg.digits, output.format),
                    success: diagnostics.is_empty(),
                    diagnostics,
                },
                output.out.clone(),
            )
        }
    };
    Ok((outcome, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_never_rounds() {
        assert_eq!(truncate(-0.999999999999763, 12), "-0.999999999999");
        assert_eq!(truncate(2.99999999999999, 11), "2.99999999999");
        assert_eq!(truncate(0.125, 2), "0.12");
        assert_eq!(truncate(-0.125, 2), "-0.12");
        assert_eq!(truncate(3.0, 3), "3.000");
        assert_eq!(truncate(7.9, 0), "7");
    }

    #[test]
    fn grid_argument() {
        let g = parse_grid("250,150,0.12").unwrap();
        assert_eq!((g.order(), g.r_max(), g.alpha()), (250, 150.0, 0.12));
        assert!(parse_grid("250,150").is_err());
        assert!(parse_grid("x,150,1").is_err());
        assert!(parse_grid("1,150,1").is_err());
    }

    #[test]
    fn axis_application() {
        let base = GridSpec::default();
        assert_eq!(Axis::Order.apply(base, 250.0).unwrap().order(), 250);
        assert!(Axis::Order.apply(base, 250.5).is_err());
        assert_eq!(Axis::RMax.apply(base, 150.0).unwrap().r_max(), 150.0);
        assert_eq!(Axis::Alpha.apply(base, 0.12).unwrap().alpha(), 0.12);
    }

    #[test]
    fn config_validation() {
        let cfg = SolveConfig {
            potential: PotentialSpec::Quartic,
            l_values: vec![0],
            num_states: 3,
            grid: GridSpec::default(),
            format: Format::Table,
            digits: 13,
        };
        assert!(cfg.validate().is_err());
        assert!(SolveConfig {
            digits: 12,
            ..cfg.clone()
        }
        .validate()
        .is_ok());
        assert!(SolveConfig {
            num_states: 0,
            digits: 12,
            ..cfg
        }
        .validate()
        .is_err());
    }

    #[test]
    fn arguments_parse() {
        let cli = Cli::try_parse_from([
            "radial-gps",
            "solve",
            "--potential",
            "coulomb Z=1 g=0 lambda=1/32",
            "--l",
            "0,2",
            "--states",
            "4",
            "--grid",
            "200,100,0.1",
            "--format",
            "csv",
        ])
        .unwrap();
        match cli.command {
            Command::Solve { problem, output } => {
                assert_eq!(problem.l, vec![0, 2]);
                assert_eq!(problem.states, 4);
                assert_eq!(output.grid.order(), 200);
                assert_eq!(output.format, Format::Csv);
                assert_eq!(
                    problem.potential,
                    PotentialSpec::coulomb(1.0, 0.0, 0.03125).unwrap()
                );
            }
            other => panic!("{other:?}"),
        }
        assert!(Cli::try_parse_from(["radial-gps", "table", "7"]).is_err());
        let scan = Cli::try_parse_from([
            "radial-gps",
            "scan",
            "--potential",
            "quartic",
            "--axis",
            "r_max",
            "--values",
            "150,200",
        ])
        .unwrap();
        assert!(matches!(
            scan.command,
            Command::Scan {
                axis: Axis::RMax,
                ..
            }
        ));
    }

    #[test]
    fn spread_of_values() {
        assert_eq!(spread(&[1.0, 3.0, 2.0]), 2.0);
        assert_eq!(spread(&[5.0]), 0.0);
    }
}
