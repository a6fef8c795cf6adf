//! Numerov shooting on a uniform radial mesh.
//!
//! This is an independent check on the collocation solver and deliberately
//! uses nothing from `collocation`, `mapping` or `operator`; only the
//! potential catalogue is shared.
//!
//! The reduced equation is written as `u'' = f(r) u` with
//! `f = 2 (V + ℓ(ℓ+1)/(2r²) - E)`. Outward integration starts from the
//! dominant small-`r` behaviour, inward integration from a Dirichlet zero
//! deep in the classically forbidden tail. Eigenvalues are located by
//! counting nodes, then refined by bisection on the Wronskian of the two
//! solutions at the outer classical turning point.

use crate::error::{Error, Result};
use crate::potentials::{centrifugal, PotentialSpec};

/// Rescale running solutions once they exceed this magnitude.
const OVERFLOW: f64 = 1e150;

/// Decay exponent `∫ κ dr` accumulated past a turning point before the
/// wavefunction is treated as zero.
const TAIL_EXPONENT: f64 = 40.0;

pub const DEFAULT_STEPS: usize = 100_000;
pub const DEFAULT_R_MIN: f64 = 1e-6;
pub const FLAG_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
    pub energy_bracket: (f64, f64),
    pub match_tolerance: f64,
}

impl ShootingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0) {
            return Err(Error::Domain(format!(
                "r_min must be > 0, got {}",
                self.r_min
            )));
        }
        if !(self.r_max > self.r_min) {
            return Err(Error::Domain(format!(
                "r_max {} must exceed r_min {}",
                self.r_max, self.r_min
            )));
        }
        if self.steps < 16 {
            return Err(Error::Domain(format!("too few steps: {}", self.steps)));
        }
        let (lo, hi) = self.energy_bracket;
        if !(lo < hi) {
            return Err(Error::Domain(format!("empty energy bracket [{lo}, {hi}]")));
        }
        if !(self.match_tolerance > 0.0) {
            return Err(Error::Domain("match tolerance must be positive".into()));
        }
        Ok(())
    }

    /// Picks a mesh for `bracket`.
    ///
    /// The outer end sits where the WKB decay exponent beyond the turning
    /// point at `E_hi` reaches [`TAIL_EXPONENT`]. The inner end is
    /// [`DEFAULT_R_MIN`], unless a strongly repulsive core
    /// (`c r^k`, `k < -2`, `c > 0`) already suppresses the solution there.
    pub fn automatic(p: &PotentialSpec, l: u32, bracket: (f64, f64), steps: usize) -> Self {
        let (_, e_hi) = bracket;
        let r_min = core_radius(p).max(DEFAULT_R_MIN);
        let r_max = tail_radius(p, l, e_hi);
        Self {
            r_min,
            r_max,
            steps,
            energy_bracket: bracket,
            match_tolerance: 1e-11 * e_hi.abs().max(1.0),
        }
    }

    fn step(&self) -> f64 {
        (self.r_max - self.r_min) / self.steps as f64
    }

    fn radius(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.step()
    }
}

fn effective(p: &PotentialSpec, l: u32, r: f64) -> f64 {
    p.value(r) + centrifugal(l, r)
}

// Radius where the WKB exponent of a repulsive core c r^k (k < -2) equals
// TAIL_EXPONENT, or 0 when the core does not dominate.
fn core_radius(p: &PotentialSpec) -> f64 {
    match p.leading_singularity() {
        Some((c, k)) if k < -2 && c > 0.0 => {
            // ∫_0^r √(2c) s^{k/2} ds = √(2c) r^{1+k/2} / (-(1+k/2))
            let m = -(1.0 + k as f64 / 2.0);
            ((2.0 * c).sqrt() / (m * TAIL_EXPONENT)).powf(1.0 / m)
        }
        _ => 0.0,
    }
}

fn tail_radius(p: &PotentialSpec, l: u32, energy: f64) -> f64 {
    let mut r = 1.0_f64;
    // march outward past the last turning point
    let mut guard = 0;
    while effective(p, l, r) <= energy || effective(p, l, 2.0 * r) <= energy {
        r *= 2.0;
        guard += 1;
        if guard > 60 {
            break;
        }
    }
    let dr = r / 2000.0;
    let mut exponent = 0.0;
    loop {
        let kappa2 = 2.0 * (effective(p, l, r) - energy);
        if kappa2 > 0.0 {
            exponent += kappa2.sqrt() * dr;
        }
        r += dr;
        if exponent >= TAIL_EXPONENT || r > 1e6 {
            return r;
        }
    }
}

/// Log of the small-`r` seed, `ln u(r)` up to a constant.
fn log_seed(p: &PotentialSpec, l: u32, r: f64) -> f64 {
    if let Some((c, k)) = p.leading_singularity() {
        if k < -2 && c > 0.0 {
            let m = -(1.0 + k as f64 / 2.0);
            return -(2.0 * c).sqrt() * r.powf(-m) / m;
        }
    }
    let lf = l as f64;
    let inverse_square: f64 = p
        .to_series()
        .iter()
        .filter(|t| t.1 == -2)
        .map(|t| t.0)
        .sum();
    let s = 0.5 + (0.25 + lf * (lf + 1.0) + 2.0 * inverse_square).sqrt();
    let inverse_first: f64 = p
        .to_series()
        .iter()
        .filter(|t| t.1 == -1)
        .map(|t| t.0)
        .sum();
    // u ≈ r^s (1 + c₋₁ r / s), the first Frobenius correction
    s * r.ln() + (1.0 + inverse_first * r / s).abs().ln()
}

/// Result of one outward sweep over the whole mesh.
struct Sweep {
    values: Vec<f64>,
    nodes: usize,
}

fn numerov_coeffs(p: &PotentialSpec, l: u32, cfg: &ShootingConfig, energy: f64) -> Vec<f64> {
    let h2 = cfg.step() * cfg.step();
    (0..=cfg.steps)
        .map(|i| {
            let r = cfg.radius(i);
            h2 * 2.0 * (effective(p, l, r) - energy) / 12.0
        })
        .collect()
}

fn outward(p: &PotentialSpec, l: u32, cfg: &ShootingConfig, energy: f64, until: usize) -> Sweep {
    let q = numerov_coeffs(p, l, cfg, energy);
    let s0 = log_seed(p, l, cfg.radius(0));
    let s1 = log_seed(p, l, cfg.radius(1));
    let mut u = vec![0.0; until + 1];
    u[0] = (s0 - s1).exp();
    u[1] = 1.0;
    let mut nodes = 0;
    for i in 1..until {
        let next =
            (2.0 * (1.0 + 5.0 * q[i]) * u[i] - (1.0 - q[i - 1]) * u[i - 1]) / (1.0 - q[i + 1]);
        u[i + 1] = next;
        if next != 0.0 && u[i] != 0.0 && next.signum() != u[i].signum() {
            nodes += 1;
        }
        if next.abs() > OVERFLOW {
            let scale = 1.0 / next.abs();
            for v in &mut u[..=i + 1] {
                *v *= scale;
            }
        }
    }
    Sweep { values: u, nodes }
}

fn inward(p: &PotentialSpec, l: u32, cfg: &ShootingConfig, energy: f64, from: usize) -> Vec<f64> {
    let q = numerov_coeffs(p, l, cfg, energy);
    let n = cfg.steps;
    let mut u = vec![0.0; n + 1];
    u[n] = 0.0;
    u[n - 1] = 1e-30;
    for i in (from + 1..n).rev() {
        let prev =
            (2.0 * (1.0 + 5.0 * q[i]) * u[i] - (1.0 - q[i + 1]) * u[i + 1]) / (1.0 - q[i - 1]);
        u[i - 1] = prev;
        if prev.abs() > OVERFLOW {
            let scale = 1.0 / prev.abs();
            for v in &mut u[i - 1..] {
                *v *= scale;
            }
        }
    }
    u
}

/// Number of eigenvalues below `energy` on the mesh (Sturm count of the
/// outward solution).
pub fn count_below(p: &PotentialSpec, l: u32, cfg: &ShootingConfig, energy: f64) -> usize {
    outward(p, l, cfg, energy, cfg.steps).nodes
}

fn matching_index(p: &PotentialSpec, l: u32, cfg: &ShootingConfig, energy: f64) -> usize {
    let n = cfg.steps;
    let turning = (1..n - 1)
        .rev()
        .find(|&i| effective(p, l, cfg.radius(i)) <= energy);
    match turning {
        Some(i) => i.clamp(2, n - 3),
        None => {
            // no classically allowed region; match at the potential minimum
            (1..n - 1)
                .min_by(|&a, &b| {
                    effective(p, l, cfg.radius(a)).total_cmp(&effective(p, l, cfg.radius(b)))
                })
                .unwrap_or(n / 2)
        }
    }
}

// Discrete Wronskian u_out(m+1) u_in(m) - u_in(m+1) u_out(m). Both solutions
// are only ever rescaled by positive factors, so its sign is continuous in E.
fn wronskian(p: &PotentialSpec, l: u32, cfg: &ShootingConfig, energy: f64, m: usize) -> f64 {
    let out = outward(p, l, cfg, energy, m + 1).values;
    let inn = inward(p, l, cfg, energy, m);
    let no = out[m].abs().max(out[m + 1].abs());
    let ni = inn[m].abs().max(inn[m + 1].abs());
    (out[m + 1] * inn[m] - inn[m + 1] * out[m]) / (no * ni)
}

/// Converged eigenvalue inside `cfg.energy_bracket`, which must contain
/// exactly one level.
pub fn numerov_eigenvalue(p: &PotentialSpec, l: u32, cfg: &ShootingConfig) -> Result<f64> {
    cfg.validate()?;
    let (mut lo, mut hi) = cfg.energy_bracket;
    let nodes_lo = count_below(p, l, cfg, lo);
    let nodes_hi = count_below(p, l, cfg, hi);
    if nodes_hi != nodes_lo + 1 {
        return Err(Error::Bracket {
            lo,
            hi,
            nodes_lo,
            nodes_hi,
            count: nodes_hi as isize - nodes_lo as isize,
        });
    }
    let m = matching_index(p, l, cfg, 0.5 * (lo + hi));
    let mut w_lo = wronskian(p, l, cfg, lo, m);
    for _ in 0..200 {
        if hi - lo < cfg.match_tolerance {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let w_mid = wronskian(p, l, cfg, mid, m);
        if w_mid == 0.0 {
            return Ok(mid);
        }
        if w_mid.signum() == w_lo.signum() {
            lo = mid;
            w_lo = w_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Finds `[lo, hi]` around `guess` holding exactly the level with `index`
/// nodes, widening and bisecting on node counts.
pub fn bracket_level(
    p: &PotentialSpec,
    l: u32,
    index: usize,
    guess: f64,
    steps: usize,
) -> Result<(f64, f64, ShootingConfig)> {
    let mut half = 1e-2 * guess.abs().max(1.0);
    let mut lo = guess - half;
    let mut hi = guess + half;
    let mut cfg = ShootingConfig::automatic(p, l, (lo, hi + half), steps);
    for _ in 0..60 {
        let c_lo = count_below(p, l, &cfg, lo);
        let c_hi = count_below(p, l, &cfg, hi);
        if c_lo <= index && c_hi > index {
            break;
        }
        half *= 2.0;
        if c_lo > index {
            lo -= half;
        }
        if c_hi <= index {
            hi += half;
            cfg = ShootingConfig::automatic(p, l, (lo, hi + half), steps);
        }
    }
    for _ in 0..200 {
        let c_lo = count_below(p, l, &cfg, lo);
        let c_hi = count_below(p, l, &cfg, hi);
        if c_lo == index && c_hi == index + 1 {
            cfg.energy_bracket = (lo, hi);
            return Ok((lo, hi, cfg));
        }
        if c_lo > index || c_hi <= index {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if count_below(p, l, &cfg, mid) <= index {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let nodes_lo = count_below(p, l, &cfg, lo);
    let nodes_hi = count_below(p, l, &cfg, hi);
    Err(Error::Bracket {
        lo,
        hi,
        nodes_lo,
        nodes_hi,
        count: nodes_hi as isize - nodes_lo as isize,
    })
}

/// Per-state comparison of collocation and shooting energies.
#[derive(Debug, Clone)]
pub struct ValidationRow {
    pub index: usize,
    pub gps: f64,
    pub numerov: f64,
    pub delta: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub l: u32,
    pub rows: Vec<ValidationRow>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| !r.flagged)
    }

    pub fn max_delta(&self) -> f64 {
        self.rows.iter().map(|r| r.delta).fold(0.0, f64::max)
    }
}

/// Shoots each of the `k` lowest levels near the supplied collocation
/// energies and flags deviations above [`FLAG_THRESHOLD`].
pub fn cross_validate(
    p: &PotentialSpec,
    l: u32,
    k: usize,
    gps_energies: &[f64],
    steps: usize,
) -> Result<ValidationReport> {
    if gps_energies.len() < k {
        return Err(Error::Domain(format!(
            "{k} states requested but only {} energies supplied",
            gps_energies.len()
        )));
    }
    let mut rows = Vec::with_capacity(k);
    for (index, &gps) in gps_energies.iter().take(k).enumerate() {
        let wrap = |e: Error| Error::State {
            index,
            source: Box::new(e),
        };
        let (_, _, cfg) = bracket_level(p, l, index, gps, steps).map_err(wrap)?;
        let numerov = numerov_eigenvalue(p, l, &cfg).map_err(wrap)?;
        let delta = (gps - numerov).abs();
        rows.push(ValidationRow {
            index,
            gps,
            numerov,
            delta,
            flagged: delta > FLAG_THRESHOLD,
        });
    }
    Ok(ValidationReport { l, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hydrogen() -> PotentialSpec {
        PotentialSpec::coulomb(1.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn hydrogen_ground_state() {
        let p = hydrogen();
        let cfg = ShootingConfig::automatic(&p, 0, (-0.6, -0.4), DEFAULT_STEPS);
        let e = numerov_eigenvalue(&p, 0, &cfg).unwrap();
        assert!((e + 0.5).abs() < 1e-8, "{e}");
    }

    #[test]
    fn bracket_with_two_levels_is_rejected() {
        let p = hydrogen();
        let cfg = ShootingConfig::automatic(&p, 0, (-0.6, -0.1), DEFAULT_STEPS);
        assert!(matches!(
            numerov_eigenvalue(&p, 0, &cfg),
            Err(Error::Bracket { count: 2, .. })
        ));
    }

    #[test]
    fn conditionally_exact_oscillator() {
        let p = PotentialSpec::oscillator(0.5, 0.5, 0.5).unwrap();
        let (_, _, cfg) = bracket_level(&p, 0, 0, 2.4, DEFAULT_STEPS).unwrap();
        let e = numerov_eigenvalue(&p, 0, &cfg).unwrap();
        assert!((e - 2.5).abs() < 1e-7, "{e}");
    }

    #[test]
    fn corrupted_energy_is_flagged() {
        let p = hydrogen();
        let report = cross_validate(&p, 0, 2, &[-0.5 + 1e-3, -0.125], DEFAULT_STEPS).unwrap();
        assert!(report.rows[0].flagged);
        assert!(!report.rows[1].flagged);
        assert!(!report.all_pass());
    }

    #[test]
    fn config_validation() {
        let mut cfg = ShootingConfig::automatic(&hydrogen(), 0, (-0.6, -0.4), 1000);
        assert!(cfg.validate().is_ok());
        cfg.r_min = 0.0;
        assert!(cfg.validate().is_err());
        cfg.r_min = 1e-6;
        cfg.energy_bracket = (1.0, 0.0);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn core_radius_for_sextic_term() {
        let p = PotentialSpec::oscillator(0.5, -5.625, 1.7578125).unwrap();
        let r = core_radius(&p);
        // √(2c) / (2 r²) equals the tail exponent there
        let c: f64 = 1.7578125;
        assert!(((2.0 * c).sqrt() / (2.0 * r * r) - TAIL_EXPONENT).abs() < 1e-9);
        assert_eq!(core_radius(&hydrogen()), 0.0);
    }
    #[test]
    fn sextic_core_exact_levels() {
        let p = PotentialSpec::oscillator(0.5, -5.625, 1.7578125).unwrap();
        let report = cross_validate(&p, 0, 2, &[-0.99, 3.01], DEFAULT_STEPS).unwrap();
        assert!(
            (report.rows[0].numerov + 1.0).abs() < 1e-7,
            "{:?}",
            report.rows[0]
        );
        assert!(
            (report.rows[1].numerov - 3.0).abs() < 1e-7,
            "{:?}",
            report.rows[1]
        );
        let p = PotentialSpec::oscillator(0.5, 22.5, 112.5).unwrap();
        let report = cross_validate(&p, 0, 1, &[5.4], DEFAULT_STEPS).unwrap();
        assert!(
            (report.rows[0].numerov - 5.5).abs() < 1e-7,
            "{:?}",
            report.rows[0]
        );
    }

    #[test]
    fn fourth_order_convergence() {
        let p = hydrogen();
        let base = ShootingConfig {
            r_min: 1e-6,
            r_max: 40.0,
            steps: 1000,
            energy_bracket: (-0.6, -0.4),
            match_tolerance: 1e-14,
        };
        let err = |steps| {
            let cfg = ShootingConfig { steps, ..base };
            (numerov_eigenvalue(&p, 0, &cfg).unwrap() + 0.5).abs()
        };
        let (coarse, fine) = (err(1000), err(2000));
        let order = (coarse / fine).log2();
        assert!((3.5..=4.5).contains(&order), "observed order {order}");
    }
}
