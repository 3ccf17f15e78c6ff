//! The curve container every data-emitting subcommand produces, plus its
//! CSV and JSON encodings. Identical inputs must give byte-identical
//! output, so all float formatting here is fixed-width scientific.

use casimir_pfa::{Error, Result};
use serde::{Deserialize, Serialize};

/// Version stamped into curve metadata (the workspace version, shared by
/// the library and this front end).
pub const LIBRARY_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub abscissa: f64,
    pub value: f64,
    pub abs_value: f64,
    pub rel_error_estimate: f64,
    /// Local log-log slope, present only when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_exponent: Option<f64>,
}

/// One sweep: ordered samples plus enough metadata to reproduce them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForceCurve {
    pub geometry: String,
    /// Distinguishes curves within a batch (e.g. `alpha-deg=5`).
    pub label: String,
    pub materials: String,
    pub abscissa_label: String,
    pub value_label: String,
    pub tolerance: f64,
    pub version: String,
    pub rows: Vec<CurveRow>,
}

impl ForceCurve {
    pub fn new(
        geometry: impl Into<String>,
        label: impl Into<String>,
        materials: impl Into<String>,
        abscissa_label: impl Into<String>,
        value_label: impl Into<String>,
        tolerance: f64,
        rows: Vec<CurveRow>,
    ) -> Result<Self> {
        let curve = ForceCurve {
            geometry: geometry.into(),
            label: label.into(),
            materials: materials.into(),
            abscissa_label: abscissa_label.into(),
            value_label: value_label.into(),
            tolerance,
            version: LIBRARY_VERSION.into(),
            rows,
        };
        curve.check()?;
        Ok(curve)
    }

    fn check(&self) -> Result<()> {
        for (name, text) in [
            ("geometry", &self.geometry),
            ("label", &self.label),
            ("materials", &self.materials),
            ("abscissa_label", &self.abscissa_label),
            ("value_label", &self.value_label),
            ("version", &self.version),
        ] {
            if text.is_empty() {
                return Err(Error::Validation(format!("curve metadata '{name}' is empty")));
            }
        }
        if self.rows.is_empty() {
            return Err(Error::Validation("curve has no rows".into()));
        }
        for pair in self.rows.windows(2) {
            if !(pair[1].abscissa > pair[0].abscissa) {
                return Err(Error::Validation(format!(
                    "curve abscissa must be strictly increasing, got {} then {}",
                    pair[0].abscissa, pair[1].abscissa
                )));
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# geometry: {}\n", self.geometry));
        out.push_str(&format!("# label: {}\n", self.label));
        out.push_str(&format!("# materials: {}\n", self.materials));
        out.push_str(&format!("# abscissa: {}\n", self.abscissa_label));
        out.push_str(&format!("# value: {}\n", self.value_label));
        out.push_str(&format!("# tolerance: {:e}\n", self.tolerance));
        out.push_str(&format!("# version: {}\n", self.version));
        let with_exponent = self.rows.iter().any(|r| r.local_exponent.is_some());
        out.push_str("abscissa,value,abs_value,rel_error_estimate");
        if with_exponent {
            out.push_str(",local_exponent");
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                r.abscissa, r.value, r.abs_value, r.rel_error_estimate
            ));
            if with_exponent {
                out.push(',');
                if let Some(z) = r.local_exponent {
                    out.push_str(&format!("{z:.16e}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Curves concatenated as CSV blocks separated by blank lines.
pub fn curves_to_csv(curves: &[ForceCurve]) -> String {
    let mut out = String::new();
    for (i, c) in curves.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&c.to_csv());
    }
    out
}

pub fn curves_to_json(curves: &[ForceCurve]) -> Result<String> {
    let mut text = serde_json::to_string_pretty(curves)
        .map_err(|e| Error::Validation(format!("json encoding failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Reload curves written by [`curves_to_json`]. The parse entry point for
/// untrusted curve files.
pub fn curves_from_json(text: &str) -> Result<Vec<ForceCurve>> {
    let curves: Vec<ForceCurve> =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("json: {e}")))?;
    for c in &curves {
        c.check()?;
    }
    Ok(curves)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ForceCurve {
        ForceCurve::new(
            "sphere-substrate",
            "sphere-substrate",
            "gold | vacuum | gold",
            "z/R",
            "R*F [eV]",
            1e-8,
            vec![
                CurveRow {
                    abscissa: 0.1,
                    value: -2.0,
                    abs_value: 2.0,
                    rel_error_estimate: 1e-8,
                    local_exponent: None,
                },
                CurveRow {
                    abscissa: 1.0,
                    value: -0.5,
                    abs_value: 0.5,
                    rel_error_estimate: 1e-8,
                    local_exponent: None,
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip_is_exact() {
        let curves = vec![sample()];
        let text = curves_to_json(&curves).unwrap();
        let back = curves_from_json(&text).unwrap();
        assert_eq!(curves, back);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let text = sample().to_csv();
        assert!(text.contains("abscissa,value,abs_value,rel_error_estimate\n"));
        assert_eq!(text.lines().count(), 7 + 1 + 2);
        assert!(text.contains("# value: R*F [eV]"));
    }

    #[test]
    fn non_monotone_abscissa_rejected() {
        let mut c = sample();
        c.rows.reverse();
        assert!(c.check().is_err());
        let err = curves_from_json(&serde_json::to_string(&vec![c]).unwrap());
        assert!(err.is_err());
    }

    #[test]
    fn exponent_column_only_when_present() {
        let mut c = sample();
        assert!(!c.to_csv().contains("local_exponent"));
        c.rows[0].local_exponent = Some(2.0);
        c.rows[1].local_exponent = Some(2.5);
        let text = c.to_csv();
        assert!(text.contains(",local_exponent\n"));
        let reloaded = curves_from_json(&curves_to_json(&vec![c.clone()]).unwrap()).unwrap();
        assert_eq!(vec![c], reloaded);
    }
}
