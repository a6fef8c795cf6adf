//! Catalogue of central potentials and the descriptor grammar used by the CLI.
//!
//! ```text
//! oscillator a=<f> b=<f> c=<f>      V = a r² + b r⁻⁴ + c r⁻⁶
//! coulomb Z=<f> g=<f> lambda=<f>    V = -Z/r + g r + λ r²
//! quartic                           V = r⁴
//! series <coeff>:<power>[,...]      V = Σ c_k r^k
//! ```
//!
//! Numbers may be decimals or exact rationals such as `1/32`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    /// `a r² + b r⁻⁴ + c r⁻⁶` with `a, c > 0`.
    PerturbedOscillator { a: f64, b: f64, c: f64 },
    /// `-Z/r + g r + λ r²`.
    PerturbedCoulomb { z: f64, g: f64, lambda: f64 },
    /// `r⁴`.
    Quartic,
    /// `Σ coefficient · r^power`.
    PowerSeries { terms: Vec<(f64, i32)> },
}

impl PotentialSpec {
    pub fn oscillator(a: f64, b: f64, c: f64) -> Result<Self> {
        let p = Self::PerturbedOscillator { a, b, c };
        p.validate()?;
        Ok(p)
    }

    pub fn coulomb(z: f64, g: f64, lambda: f64) -> Result<Self> {
        let p = Self::PerturbedCoulomb { z, g, lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn series(terms: Vec<(f64, i32)>) -> Result<Self> {
        let p = Self::PowerSeries { terms };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidPotential(format!("{name} must be finite")))
            }
        };
        match *self {
            Self::PerturbedOscillator { a, b, c } => {
                finite("a", a)?;
                finite("b", b)?;
                finite("c", c)?;
                if a <= 0.0 {
                    return Err(Error::InvalidPotential(format!(
                        "oscillator requires a > 0, got a = {a}"
                    )));
                }
                if c <= 0.0 {
                    return Err(Error::InvalidPotential(format!(
                        "oscillator requires c > 0, got c = {c}"
                    )));
                }
            }
            Self::PerturbedCoulomb { z, g, lambda } => {
                finite("Z", z)?;
                finite("g", g)?;
                finite("lambda", lambda)?;
                if z <= 0.0 {
                    return Err(Error::InvalidPotential(format!(
                        "coulomb requires Z > 0, got Z = {z}"
                    )));
                }
                if g < 0.0 {
                    return Err(Error::InvalidPotential(format!(
                        "coulomb requires g >= 0, got g = {g}"
                    )));
                }
                if lambda < 0.0 {
                    return Err(Error::InvalidPotential(format!(
                        "coulomb requires lambda >= 0, got lambda = {lambda}"
                    )));
                }
            }
            Self::Quartic => {}
            Self::PowerSeries { ref terms } => {
                if terms.is_empty() {
                    return Err(Error::InvalidPotential(
                        "series needs at least one term".into(),
                    ));
                }
                for &(c, _) in terms {
                    finite("series coefficient", c)?;
                }
                let top = terms
                    .iter()
                    .filter(|&&(c, k)| k > 0 && c != 0.0)
                    .max_by_key(|&&(_, k)| k);
                match top {
                    Some(&(c, k)) if c < 0.0 => {
                        return Err(Error::InvalidPotential(format!(
                            "highest positive power r^{k} has negative coefficient {c}; spectrum is not confined"
                        )));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// `V(r)` in hartree for `r > 0` (bohr).
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!(
                "potential evaluated at r = {r}; need r > 0"
            )));
        }
        Ok(self.value(r))
    }

    /// `V(r) + ℓ(ℓ+1) / (2 r²)`.
    pub fn effective(&self, l: u32, r: f64) -> Result<f64> {
        Ok(self.evaluate(r)? + centrifugal(l, r))
    }

    pub(crate) fn value(&self, r: f64) -> f64 {
        match *self {
            Self::PerturbedOscillator { a, b, c } => {
                let r2 = r * r;
                let inv2 = 1.0 / r2;
                let inv4 = inv2 * inv2;
                a * r2 + b * inv4 + c * inv4 * inv2
            }
            Self::PerturbedCoulomb { z, g, lambda } => -z / r + g * r + lambda * r * r,
            Self::Quartic => {
                let r2 = r * r;
                r2 * r2
            }
            Self::PowerSeries { ref terms } => terms.iter().map(|&(c, k)| c * r.powi(k)).sum(),
        }
    }

    /// `r dV/dr`, used by virial checks.
    pub fn r_dv_dr(&self, r: f64) -> f64 {
        match *self {
            Self::PerturbedOscillator { a, b, c } => {
                2.0 * a * r * r - 4.0 * b * r.powi(-4) - 6.0 * c * r.powi(-6)
            }
            Self::PerturbedCoulomb { z, g, lambda } => z / r + g * r + 2.0 * lambda * r * r,
            Self::Quartic => 4.0 * r.powi(4),
            Self::PowerSeries { ref terms } => {
                terms.iter().map(|&(c, k)| k as f64 * c * r.powi(k)).sum()
            }
        }
    }

    /// Equivalent power-series form.
    pub fn to_series(&self) -> Vec<(f64, i32)> {
        match *self {
            Self::PerturbedOscillator { a, b, c } => vec![(a, 2), (b, -4), (c, -6)],
            Self::PerturbedCoulomb { z, g, lambda } => vec![(-z, -1), (g, 1), (lambda, 2)],
            Self::Quartic => vec![(1.0, 4)],
            Self::PowerSeries { ref terms } => terms.clone(),
        }
    }

    /// Most singular inverse power present with nonzero coefficient, and its
    /// coefficient. Centrifugal terms are not included.
    pub fn leading_singularity(&self) -> Option<(f64, i32)> {
        self.to_series()
            .into_iter()
            .filter(|&(c, k)| k < 0 && c != 0.0)
            .min_by_key(|&(_, k)| k)
    }
}

#[inline]
pub fn centrifugal(l: u32, r: f64) -> f64 {
    let lf = l as f64;
    lf * (lf + 1.0) / (2.0 * r * r)
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PerturbedOscillator { a, b, c } => write!(f, "oscillator a={a} b={b} c={c}"),
            Self::PerturbedCoulomb { z, g, lambda } => {
                write!(f, "coulomb Z={z} g={g} lambda={lambda}")
            }
            Self::Quartic => write!(f, "quartic"),
            Self::PowerSeries { terms } => {
                write!(f, "series ")?;
                for (i, (c, k)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}:{k}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for PotentialSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_potential(s)
    }
}

/// Parses a potential descriptor and validates it.
pub fn parse_potential(text: &str) -> Result<PotentialSpec> {
    let tokens = tokenize(text);
    let Some(&(kind_pos, kind)) = tokens.first() else {
        return Err(Error::Parse {
            position: 0,
            message: "empty potential descriptor".into(),
        });
    };
    let rest = &tokens[1..];
    let spec =
        match kind.to_ascii_lowercase().as_str() {
            "oscillator" => {
                let v = keyed(rest, &[&["a"], &["b"], &["c"]])?;
                PotentialSpec::PerturbedOscillator {
                    a: v[0],
                    b: v[1],
                    c: v[2],
                }
            }
            "coulomb" => {
                let v = keyed(rest, &[&["Z", "z"], &["g"], &["lambda", "l"]])?;
                PotentialSpec::PerturbedCoulomb {
                    z: v[0],
                    g: v[1],
                    lambda: v[2],
                }
            }
            "quartic" => {
                if let Some(&(pos, tok)) = rest.first() {
                    return Err(Error::Parse {
                        position: pos,
                        message: format!("quartic takes no parameters, found '{tok}'"),
                    });
                }
                PotentialSpec::Quartic
            }
            "series" => {
                let joined_pos = rest.first().map_or(text.len(), |t| t.0);
                let body: String = rest.iter().map(|t| t.1).collect::<Vec<_>>().join("");
                if body.is_empty() {
                    return Err(Error::Parse {
                        position: joined_pos,
                        message: "series needs <coeff>:<power> terms".into(),
                    });
                }
                let mut terms = Vec::new();
                let mut offset = joined_pos;
                for item in body.split(',') {
                    let (c, k) = item.split_once(':').ok_or_else(|| Error::Parse {
                        position: offset,
                        message: format!("expected <coeff>:<power>, found '{item}'"),
                    })?;
                    let coeff = parse_number(c, offset)?;
                    let power = k.trim().parse::<i32>().map_err(|_| Error::Parse {
                        position: offset + c.len() + 1,
                        message: format!("power must be an integer, found '{k}'"),
                    })?;
                    terms.push((coeff, power));
                    offset += item.len() + 1;
                }
                PotentialSpec::PowerSeries { terms }
            }
            other => return Err(Error::Parse {
                position: kind_pos,
                message: format!(
                    "unknown potential '{other}' (expected oscillator, coulomb, quartic or series)"
                ),
            }),
        };
    spec.validate()?;
    Ok(spec)
}

fn tokenize(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

fn keyed(tokens: &[(usize, &str)], keys: &[&[&str]]) -> Result<Vec<f64>> {
    let mut values: Vec<Option<f64>> = vec![None; keys.len()];
    for &(pos, tok) in tokens {
        let (k, v) = tok.split_once('=').ok_or_else(|| Error::Parse {
            position: pos,
            message: format!("expected key=value, found '{tok}'"),
        })?;
        let slot = keys
            .iter()
            .position(|names| names.contains(&k))
            .ok_or_else(|| Error::Parse {
                position: pos,
                message: format!("unknown parameter '{k}'"),
            })?;
        if values[slot].is_some() {
            return Err(Error::Parse {
                position: pos,
                message: format!("parameter '{k}' given twice"),
            });
        }
        values[slot] = Some(parse_number(v, pos + k.len() + 1)?);
    }
    values
        .into_iter()
        .zip(keys)
        .map(|(v, names)| {
            v.ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("missing parameter '{}'", names[0]),
            })
        })
        .collect()
}

/// Parses a decimal or a rational `p/q`. Rationals with integer parts are
/// divided exactly before rounding to `f64`.
pub fn parse_number(text: &str, position: usize) -> Result<f64> {
    let text = text.trim();
    let bad = || Error::Parse {
        position,
        message: format!("invalid number '{text}'"),
    };
    if let Some((num, den)) = text.split_once('/') {
        // Both sides are exact in f64 below 2^53, so the single division is
        // the correctly rounded value of the rational.
        if let (Ok(p), Ok(q)) = (num.trim().parse::<i64>(), den.trim().parse::<i64>()) {
            if q == 0 {
                return Err(Error::Parse {
                    position,
                    message: "division by zero in rational literal".into(),
                });
            }
            return Ok(p as f64 / q as f64);
        }
        let p: f64 = num.trim().parse().map_err(|_| bad())?;
        let q: f64 = den.trim().parse().map_err(|_| bad())?;
        if q == 0.0 {
            return Err(bad());
        }
        return Ok(p / q);
    }
    let v: f64 = text.parse().map_err(|_| bad())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        let p = PotentialSpec::oscillator(0.5, -5.625, 1.7578125).unwrap();
        assert_eq!(p.evaluate(1.0).unwrap(), -3.3671875);
        let p = PotentialSpec::coulomb(1.0, 0.0, 0.1).unwrap();
        assert!((p.evaluate(2.0).unwrap() + 0.1).abs() < 1e-15);
        assert_eq!(PotentialSpec::Quartic.evaluate(2.0).unwrap(), 16.0);
        assert!(PotentialSpec::Quartic.evaluate(0.0).is_err());
        assert!(PotentialSpec::Quartic.evaluate(-1.0).is_err());
    }

    #[test]
    fn effective_examples() {
        let p = PotentialSpec::coulomb(1.0, 0.0, 0.0).unwrap();
        assert_eq!(p.effective(0, 3.0).unwrap(), p.evaluate(3.0).unwrap());
        assert_eq!(p.effective(1, 2.0).unwrap(), -0.25);
        let p = PotentialSpec::oscillator(0.5, 0.5, 0.4).unwrap();
        assert!((p.effective(2, 1.0).unwrap() - 4.4).abs() < 1e-14);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_potential("oscillator a=0.5 b=-5.625 c=1.7578125").unwrap(),
            PotentialSpec::PerturbedOscillator {
                a: 0.5,
                b: -5.625,
                c: 1.7578125
            }
        );
        assert_eq!(
            parse_potential("coulomb Z=12 g=1 lambda=1/32").unwrap(),
            PotentialSpec::PerturbedCoulomb {
                z: 12.0,
                g: 1.0,
                lambda: 0.03125
            }
        );
        assert_eq!(
            parse_potential("series 1:4").unwrap(),
            PotentialSpec::PowerSeries {
                terms: vec![(1.0, 4)]
            }
        );
        assert_eq!(
            parse_potential("  quartic ").unwrap(),
            PotentialSpec::Quartic
        );
        assert_eq!(
            parse_potential("series 0.5:2, -1:-1").unwrap(),
            PotentialSpec::PowerSeries {
                terms: vec![(0.5, 2), (-1.0, -1)]
            }
        );
    }

    #[test]
    fn parse_errors() {
        let err = parse_potential("oscillator a=0.5 b=1 c=0").unwrap_err();
        assert!(
            matches!(err, Error::InvalidPotential(ref m) if m.contains("c > 0")),
            "{err}"
        );
        assert!(matches!(parse_potential(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_potential("morse D=1"),
            Err(Error::Parse { position: 0, .. })
        ));
        match parse_potential("coulomb Z=1 g=x lambda=0") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 14),
            other => panic!("{other:?}"),
        }
        assert!(parse_potential("coulomb Z=1 g=0").is_err());
        assert!(parse_potential("coulomb Z=1 g=0 lambda=1/0").is_err());
        assert!(parse_potential("series -1:4,3:2").is_err());
        assert!(parse_potential("series 1:2.5").is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "oscillator a=0.5 b=-5.625 c=1.7578125",
            "coulomb Z=8 g=1 lambda=0.03125",
            "quartic",
            "series 1:4,-2:-1",
        ] {
            let p = parse_potential(text).unwrap();
            assert_eq!(parse_potential(&p.to_string()).unwrap(), p);
        }
    }
}
