//! Dielectric response on the imaginary frequency axis.
//!
//! Every model evaluates the permittivity `ε(iξ)` for `ξ > 0` (ħξ in eV).
//! On the imaginary axis a passive material has real `ε ≥ 1`, non-increasing
//! in `ξ`, approaching 1 from above as `ξ → ∞`; a constant model is the one
//! deliberate exception (it never relaxes to vacuum and is rejected by the
//! planar kernel whenever that would make a frequency integral diverge).
//!
//! The ideal metal is kept symbolic: it has no finite `ε`, and the reflection
//! coefficient treats it as the limit `ε → ∞` with the correct sign on each
//! side of the interface.

use crate::error::{Error, Result};

/// Drude plasma frequency of the default metal, eV. Together with
/// [`DEFAULT_DAMPING_EV`] this is a documented stand-in for gold.
pub const DEFAULT_PLASMA_EV: f64 = 9.0;
/// Drude damping of the default metal, eV.
pub const DEFAULT_DAMPING_EV: f64 = 0.035;

/// Permittivity value at one frequency: finite, or the symbolic ideal metal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Epsilon {
    Finite(f64),
    IdealMetal,
}

/// One Lorentz oscillator term: `s / (ω₀² + ξ² + γξ)` added to ε(iξ).
///
/// `strength` is in eV², `resonance` and `damping` in eV. A zero resonance
/// with zero damping degenerates to a lossless Drude term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    pub strength: f64,
    pub resonance: f64,
    pub damping: f64,
}

/// Tabulated permittivity samples `(ħξ in eV, ε)`, strictly ascending in ξ.
///
/// Evaluation interpolates log-log inside the sampled range, clamps to the
/// first sample's value below it and to vacuum (ε = 1) above it.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialTable {
    samples: Vec<(f64, f64)>,
}

/// A dielectric model evaluable on the imaginary frequency axis.
#[derive(Debug, Clone, PartialEq)]
pub enum DielectricModel {
    /// Perfect reflector at all frequencies; only meaningful as an outer,
    /// semi-infinite medium.
    IdealMetal,
    /// Frequency-independent ε ≥ 1 (ε = 1 is vacuum).
    Constant { eps: f64 },
    /// `ε(iξ) = 1 + ω_p² / (ξ (ξ + γ))`, both parameters in eV.
    Drude { plasma: f64, damping: f64 },
    /// `ε(iξ) = 1 + Σ_j s_j / (ω_j² + ξ² + γ_j ξ)`.
    OscillatorSum { terms: Vec<Oscillator> },
    Tabulated(MaterialTable),
}

impl DielectricModel {
    /// The vacuum model.
    pub fn vacuum() -> Self {
        DielectricModel::Constant { eps: 1.0 }
    }

    /// Drude model with the default gold-like parameters
    /// (ω_p = 9.0 eV, γ = 0.035 eV).
    pub fn gold() -> Self {
        DielectricModel::Drude {
            plasma: DEFAULT_PLASMA_EV,
            damping: DEFAULT_DAMPING_EV,
        }
    }

    /// Check the model parameters.
    pub fn validate(&self) -> Result<()> {
        match self {
            DielectricModel::IdealMetal => Ok(()),
            DielectricModel::Constant { eps } => {
                if !(eps.is_finite() && *eps >= 1.0) {
                    return Err(Error::Config(format!(
                        "constant permittivity must be finite and >= 1, got {eps}"
                    )));
                }
                Ok(())
            }
            DielectricModel::Drude { plasma, damping } => {
                if !(plasma.is_finite() && *plasma > 0.0) {
                    return Err(Error::Config(format!(
                        "Drude plasma frequency must be positive, got {plasma}"
                    )));
                }
                if !(damping.is_finite() && *damping >= 0.0) {
                    return Err(Error::Config(format!(
                        "Drude damping must be non-negative, got {damping}"
                    )));
                }
                Ok(())
            }
            DielectricModel::OscillatorSum { terms } => {
                if terms.is_empty() {
                    return Err(Error::Config(
                        "oscillator model needs at least one term".into(),
                    ));
                }
                for (i, t) in terms.iter().enumerate() {
                    if !(t.strength.is_finite() && t.strength >= 0.0) {
                        return Err(Error::Config(format!(
                            "oscillator term {i}: strength must be non-negative, got {}",
                            t.strength
                        )));
                    }
                    if !(t.resonance.is_finite() && t.resonance >= 0.0) {
                        return Err(Error::Config(format!(
                            "oscillator term {i}: resonance must be non-negative, got {}",
                            t.resonance
                        )));
                    }
                    if !(t.damping.is_finite() && t.damping >= 0.0) {
                        return Err(Error::Config(format!(
                            "oscillator term {i}: damping must be non-negative, got {}",
                            t.damping
                        )));
                    }
                    if t.resonance == 0.0 && t.damping == 0.0 && t.strength == 0.0 {
                        continue;
                    }
                }
                Ok(())
            }
            DielectricModel::Tabulated(_) => Ok(()), // validated on construction
        }
    }

    /// Evaluate `ε(iξ)` for a model with a finite permittivity.
    ///
    /// `xi` is ħξ in eV and must be positive. The ideal metal is a domain
    /// error here; use [`DielectricModel::epsilon_at`] where the symbolic
    /// value is acceptable.
    pub fn epsilon_iw(&self, xi: f64) -> Result<f64> {
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::Domain(format!(
                "imaginary frequency must be positive and finite, got {xi}"
            )));
        }
        match self {
            DielectricModel::IdealMetal => Err(Error::Domain(
                "ideal metal has no finite permittivity; it is handled symbolically".into(),
            )),
            DielectricModel::Constant { eps } => Ok(*eps),
            DielectricModel::Drude { plasma, damping } => {
                Ok(1.0 + plasma * plasma / (xi * (xi + damping)))
            }
            DielectricModel::OscillatorSum { terms } => {
                let mut eps = 1.0;
                for t in terms {
                    eps += t.strength / (t.resonance * t.resonance + xi * xi + t.damping * xi);
                }
                Ok(eps)
            }
            DielectricModel::Tabulated(table) => Ok(table.eval(xi)),
        }
    }

    /// Evaluate the permittivity, keeping the ideal metal symbolic.
    pub fn epsilon_at(&self, xi: f64) -> Result<Epsilon> {
        match self {
            DielectricModel::IdealMetal => Ok(Epsilon::IdealMetal),
            _ => Ok(Epsilon::Finite(self.epsilon_iw(xi)?)),
        }
    }

    /// The `ξ → ∞` limit of the permittivity. Finite 1 for relaxing models,
    /// the constant's own value, symbolic for the ideal metal.
    pub fn epsilon_infinity(&self) -> Epsilon {
        match self {
            DielectricModel::IdealMetal => Epsilon::IdealMetal,
            DielectricModel::Constant { eps } => Epsilon::Finite(*eps),
            DielectricModel::Drude { .. }
            | DielectricModel::OscillatorSum { .. }
            | DielectricModel::Tabulated(_) => Epsilon::Finite(1.0),
        }
    }

    /// A characteristic frequency (eV) over which the response varies, used
    /// to scale semi-infinite frequency integrals. At least 1 eV.
    pub fn frequency_scale(&self) -> f64 {
        let raw: f64 = match self {
            DielectricModel::IdealMetal | DielectricModel::Constant { .. } => 1.0,
            DielectricModel::Drude { plasma, .. } => *plasma,
            DielectricModel::OscillatorSum { terms } => terms
                .iter()
                .map(|t| (t.resonance * t.resonance + t.strength).sqrt())
                .fold(1.0, f64::max),
            DielectricModel::Tabulated(t) => t.samples.last().map(|s| s.0).unwrap_or(1.0),
        };
        raw.max(1.0)
    }
}

impl MaterialTable {
    /// Build a table from `(ξ, ε)` samples; ξ strictly ascending and
    /// positive, ε ≥ 1 everywhere.
    pub fn from_samples(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Validation("material table is empty".into()));
        }
        let mut prev = 0.0;
        for (i, &(xi, eps)) in samples.iter().enumerate() {
            if !(xi.is_finite() && xi > 0.0) {
                return Err(Error::Validation(format!(
                    "sample {i}: frequency must be positive and finite, got {xi}"
                )));
            }
            if xi <= prev {
                return Err(Error::Validation(format!(
                    "sample {i}: frequencies must be strictly ascending ({xi} after {prev})"
                )));
            }
            if !(eps.is_finite() && eps >= 1.0) {
                return Err(Error::Validation(format!(
                    "sample {i}: permittivity must be finite and >= 1, got {eps}"
                )));
            }
            prev = xi;
        }
        Ok(MaterialTable { samples })
    }

    /// Parse the two-column text format: one `ξ ε` pair per line, whitespace
    /// separated, `#` starts a comment, blank lines ignored. Errors carry the
    /// 1-based line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut samples: Vec<(f64, f64)> = Vec::new();
        let mut prev = 0.0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 2 columns, found {}", fields.len()),
                });
            }
            let xi: f64 = fields[0].parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid frequency {:?}", fields[0]),
            })?;
            let eps: f64 = fields[1].parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid permittivity {:?}", fields[1]),
            })?;
            if !(xi.is_finite() && xi > 0.0) {
                return Err(Error::Parse {
                    line,
                    message: format!("frequency must be positive and finite, got {xi}"),
                });
            }
            if xi <= prev {
                return Err(Error::Parse {
                    line,
                    message: format!("frequencies must be strictly ascending ({xi} after {prev})"),
                });
            }
            if !(eps.is_finite() && eps >= 1.0) {
                return Err(Error::Parse {
                    line,
                    message: format!("permittivity must be finite and >= 1, got {eps}"),
                });
            }
            prev = xi;
            samples.push((xi, eps));
        }
        if samples.is_empty() {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: "no data lines in material table".into(),
            });
        }
        Ok(MaterialTable { samples })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    /// Log-log linear interpolation, clamped outside the sampled range.
    fn eval(&self, xi: f64) -> f64 {
        let s = &self.samples;
        if xi <= s[0].0 {
            return s[0].1;
        }
        if xi >= s[s.len() - 1].0 {
            return 1.0;
        }
        let hi = s.partition_point(|&(x, _)| x < xi);
        let (x0, e0) = s[hi - 1];
        let (x1, e1) = s[hi];
        let t = (xi.ln() - x0.ln()) / (x1.ln() - x0.ln());
        (e0.ln() * (1.0 - t) + e1.ln() * t).exp()
    }
}

/// Electrostatic (non-retarded, TM) reflection coefficient of the interface
/// crossed from medium `i` into medium `j`:
///
/// `r_ij = (ε_j − ε_i) / (ε_j + ε_i)`.
///
/// An ideal metal gives +1 as medium `j` and −1 as medium `i`; an interface
/// between two ideal metals has no defined coefficient.
pub fn fresnel_r(eps_i: Epsilon, eps_j: Epsilon) -> Result<f64> {
    match (eps_i, eps_j) {
        (Epsilon::IdealMetal, Epsilon::IdealMetal) => Err(Error::Domain(
            "reflection between two ideal metals is undefined".into(),
        )),
        (_, Epsilon::IdealMetal) => Ok(1.0),
        (Epsilon::IdealMetal, _) => Ok(-1.0),
        (Epsilon::Finite(ei), Epsilon::Finite(ej)) => {
            if !(ei.is_finite() && ei >= 1.0) || !(ej.is_finite() && ej >= 1.0) {
                return Err(Error::Domain(format!(
                    "permittivities must be finite and >= 1, got {ei} and {ej}"
                )));
            }
            Ok((ej - ei) / (ej + ei))
        }
    }
}
