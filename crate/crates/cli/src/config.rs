//! Declarative run configuration: one TOML document with sections
//! [materials], [stack], [kernel], [geometry], [sweep], [output] and
//! [tolerances]. Any key can also be set on the command line with
//! `--param section.key=value`; a bare key is shorthand for [geometry].

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use casimir_pfa::materials::{DielectricModel, MaterialTable, Oscillator};
use casimir_pfa::planar::{
    sheet_scale_from_density, EnergyPerArea, LayerStack, PowerLawEnergy, StackEnergy,
};
use casimir_pfa::shapes::GeometrySpec;
use casimir_pfa::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub materials: BTreeMap<String, MaterialConfig>,
    pub stack: StackConfig,
    pub kernel: KernelConfig,
    pub geometry: GeometryConfig,
    pub sweep: SweepConfig,
    pub output: OutputConfig,
    pub tolerances: ToleranceConfig,
}

impl RunConfig {
    /// Read the TOML file (an empty document when `path` is `None`), apply
    /// the `--param key=value` overrides, and deserialize.
    pub fn load(path: Option<&Path>, params: &[String]) -> Result<RunConfig> {
        let text = match path {
            Some(p) => fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("{}: {e}", p.display())))?,
            None => String::new(),
        };
        Self::parse(&text, params).map_err(|e| match path {
            Some(p) => Error::Config(format!("{}: {e}", p.display())),
            None => e,
        })
    }

    /// Parse a TOML document plus `--param` overrides. The entry point for
    /// untrusted configuration text.
    pub fn parse(text: &str, params: &[String]) -> Result<RunConfig> {
        let mut root: toml::Table = text
            .parse()
            .map_err(|e| Error::Config(format!("toml: {e}")))?;
        for param in params {
            apply_param(&mut root, param)?;
        }
        toml::Value::Table(root)
            .try_into()
            .map_err(|e| Error::Config(e.to_string()))
    }
}

fn apply_param(root: &mut toml::Table, param: &str) -> Result<()> {
    let (key, raw) = param
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("--param needs KEY=VALUE, got '{param}'")))?;
    let key = key.trim();
    if key.is_empty() || key.split('.').any(str::is_empty) {
        return Err(Error::Config(format!("--param has an empty key in '{param}'")));
    }
    let segments: Vec<&str> = key.split('.').collect();
    let path = if segments.len() == 1 {
        vec!["geometry", segments[0]]
    } else {
        segments
    };
    set_path(root, &path, parse_value(raw.trim()));
    Ok(())
}

/// A bare `--param` value: a comma list of numbers becomes an array, then
/// anything TOML can parse as a value, then a plain string.
fn parse_value(raw: &str) -> toml::Value {
    if raw.contains(',') {
        let floats: Option<Vec<f64>> = raw.split(',').map(|s| s.trim().parse().ok()).collect();
        if let Some(xs) = floats {
            return toml::Value::Array(xs.into_iter().map(toml::Value::Float).collect());
        }
    }
    if let Ok(table) = format!("v = {raw}").parse::<toml::Table>() {
        if let Some(v) = table.get("v") {
            return v.clone();
        }
    }
    toml::Value::String(raw.to_string())
}

fn set_path(root: &mut toml::Table, path: &[&str], leaf: toml::Value) {
    let mut table = root;
    for seg in &path[..path.len() - 1] {
        let entry = table
            .entry(seg.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        if !entry.is_table() {
            *entry = toml::Value::Table(toml::Table::new());
        }
        table = entry.as_table_mut().expect("just ensured a table");
    }
    table.insert(path[path.len() - 1].to_string(), leaf);
}

/// A named dielectric model. `path` tables use the two-column text format
/// of [`MaterialTable::parse`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum MaterialConfig {
    Vacuum,
    IdealMetal,
    Constant {
        eps: f64,
    },
    Drude {
        plasma: f64,
        damping: f64,
    },
    /// Rows of `[strength, resonance, damping]`, all in eV.
    Oscillators {
        terms: Vec<[f64; 3]>,
    },
    Table {
        #[serde(default)]
        path: Option<String>,
        #[serde(default)]
        samples: Option<Vec<[f64; 2]>>,
    },
}

impl MaterialConfig {
    pub fn resolve(&self) -> Result<DielectricModel> {
        let model = match self {
            MaterialConfig::Vacuum => DielectricModel::vacuum(),
            MaterialConfig::IdealMetal => DielectricModel::IdealMetal,
            MaterialConfig::Constant { eps } => DielectricModel::Constant { eps: *eps },
            MaterialConfig::Drude { plasma, damping } => DielectricModel::Drude {
                plasma: *plasma,
                damping: *damping,
            },
            MaterialConfig::Oscillators { terms } => DielectricModel::OscillatorSum {
                terms: terms
                    .iter()
                    .map(|&[strength, resonance, damping]| Oscillator {
                        strength,
                        resonance,
                        damping,
                    })
                    .collect(),
            },
            MaterialConfig::Table { path, samples } => {
                let table = match (path, samples) {
                    (Some(p), None) => {
                        let text = fs::read_to_string(p)
                            .map_err(|e| Error::Config(format!("{p}: {e}")))?;
                        MaterialTable::parse(&text)
                            .map_err(|e| Error::Config(format!("{p}: {e}")))?
                    }
                    (None, Some(rows)) => {
                        MaterialTable::from_samples(rows.iter().map(|&[xi, eps]| (xi, eps)).collect())?
                    }
                    _ => {
                        return Err(Error::Config(
                            "a table material needs exactly one of 'path' or 'samples'".into(),
                        ))
                    }
                };
                DielectricModel::Tabulated(table)
            }
        };
        model.validate()?;
        Ok(model)
    }
}

/// Look a material name up in `[materials]`, falling back to the
/// built-ins `gold`, `ideal-metal`, `vacuum`.
pub fn resolve_material(
    name: &str,
    materials: &BTreeMap<String, MaterialConfig>,
) -> Result<DielectricModel> {
    if let Some(cfg) = materials.get(name) {
        return cfg.resolve();
    }
    match name {
        "vacuum" => Ok(DielectricModel::vacuum()),
        "gold" => Ok(DielectricModel::gold()),
        "ideal-metal" => Ok(DielectricModel::IdealMetal),
        _ => Err(Error::Config(format!(
            "unknown material '{name}'; define it under [materials] \
             or use a built-in (gold, ideal-metal, vacuum)"
        ))),
    }
}

/// Region assignment for the planar structure. Coats with zero thickness
/// are absent.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct StackConfig {
    pub left: String,
    pub left_coat: String,
    /// Thickness of the left coating in nm.
    pub left_coat_thickness: f64,
    pub gap: String,
    pub right_coat: String,
    pub right_coat_thickness: f64,
    pub right: String,
}

impl Default for StackConfig {
    fn default() -> Self {
        StackConfig {
            left: "gold".into(),
            left_coat: "vacuum".into(),
            left_coat_thickness: 0.0,
            gap: "vacuum".into(),
            right_coat: "vacuum".into(),
            right_coat_thickness: 0.0,
            right: "gold".into(),
        }
    }
}

impl StackConfig {
    pub fn build(&self, materials: &BTreeMap<String, MaterialConfig>) -> Result<LayerStack> {
        LayerStack::new(
            resolve_material(&self.left, materials)?,
            resolve_material(&self.left_coat, materials)?,
            resolve_material(&self.gap, materials)?,
            resolve_material(&self.right_coat, materials)?,
            resolve_material(&self.right, materials)?,
            self.left_coat_thickness,
            self.right_coat_thickness,
        )
    }

    /// Human-readable region list for curve metadata.
    pub fn describe(&self) -> String {
        let mut parts = vec![self.left.clone()];
        if self.left_coat_thickness > 0.0 {
            parts.push(format!("{}({} nm)", self.left_coat, self.left_coat_thickness));
        }
        parts.push(self.gap.clone());
        if self.right_coat_thickness > 0.0 {
            parts.push(format!(
                "{}({} nm)",
                self.right_coat, self.right_coat_thickness
            ));
        }
        parts.push(self.right.clone());
        parts.join(" | ")
    }
}

/// Which planar energy law drives the sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum KernelConfig {
    /// Adaptive quadrature over the configured [stack].
    Stack,
    /// Pure power law `E_p = -coefficient * w^(-exponent)`.
    Power { coefficient: f64, exponent: f64 },
    /// Ultra-thin coating as a 2D electron sheet, `E_p` going as `w^(-5/2)`.
    /// Give either `scale` (eV) or the 3D carrier `density` (nm^-3).
    Sheet {
        #[serde(default)]
        scale: Option<f64>,
        #[serde(default)]
        density: Option<f64>,
        /// Film thickness in nm.
        delta: f64,
    },
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig::Stack
    }
}

impl KernelConfig {
    /// Build the energy-per-area provider plus a description string for
    /// curve metadata.
    pub fn build(
        &self,
        stack: &StackConfig,
        materials: &BTreeMap<String, MaterialConfig>,
        tolerances: &ToleranceConfig,
    ) -> Result<(Box<dyn EnergyPerArea + Send + Sync>, String)> {
        match self {
            KernelConfig::Stack => {
                let built = stack.build(materials)?;
                Ok((
                    Box::new(StackEnergy::new(built, tolerances.quadrature)?),
                    stack.describe(),
                ))
            }
            KernelConfig::Power {
                coefficient,
                exponent,
            } => Ok((
                Box::new(PowerLawEnergy::new(*coefficient, *exponent)?),
                format!("power law (C = {coefficient}, zeta = {exponent})"),
            )),
            KernelConfig::Sheet {
                scale,
                density,
                delta,
            } => {
                let scale = match (scale, density) {
                    (Some(s), None) => *s,
                    (None, Some(n)) => sheet_scale_from_density(*n)?,
                    (None, None) => {
                        return Err(Error::Config(
                            "the sheet kernel needs 'scale' or 'density'".into(),
                        ))
                    }
                    (Some(_), Some(_)) => {
                        return Err(Error::Config(
                            "give the sheet kernel 'scale' or 'density', not both".into(),
                        ))
                    }
                };
                Ok((
                    Box::new(PowerLawEnergy::thin_sheet_limit(scale, *delta)?),
                    format!("2d-sheet limit (scale = {scale} eV, delta = {delta} nm)"),
                ))
            }
        }
    }
}

/// A parameter that is either one value or a batch of them. At most one
/// geometry parameter may be a batch per run.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct GeometryConfig {
    /// One of the kebab-case variant names, e.g. `sphere-substrate`.
    pub kind: String,
    pub radius: Option<OneOrMany>,
    pub length: Option<OneOrMany>,
    pub side: Option<OneOrMany>,
    pub polar: Option<OneOrMany>,
    pub gamma: Option<OneOrMany>,
    /// Half-opening / tilt angle in degrees.
    pub alpha_deg: Option<OneOrMany>,
    pub tip_radius: Option<OneOrMany>,
    pub thickness: Option<OneOrMany>,
}

const KNOWN_KINDS: &str = "sphere-substrate, sphere-sphere, oblate-substrate, \
     prolate-substrate, oblate-oblate, prolate-prolate, cylinder-substrate, \
     cylinder-cylinder, standing-cylinder, cube-straight, cube-tilted, \
     cone-pointed, cone-spherical-tip, wings-thick, wings-thin";

impl GeometryConfig {
    fn fields(&self) -> [(&'static str, &Option<OneOrMany>); 8] {
        [
            ("radius", &self.radius),
            ("length", &self.length),
            ("side", &self.side),
            ("polar", &self.polar),
            ("gamma", &self.gamma),
            ("alpha-deg", &self.alpha_deg),
            ("tip-radius", &self.tip_radius),
            ("thickness", &self.thickness),
        ]
    }

    /// All `(label, geometry)` pairs this configuration describes: one
    /// entry normally, one per value when a parameter is a list.
    pub fn expand(&self) -> Result<Vec<(String, GeometrySpec)>> {
        if self.kind.is_empty() {
            return Err(Error::Config(
                "no geometry selected; set [geometry] kind or pass --geometry".into(),
            ));
        }
        let mut swept: Option<(&str, &Vec<f64>)> = None;
        for (name, slot) in self.fields() {
            if let Some(OneOrMany::Many(vals)) = slot {
                if vals.is_empty() {
                    return Err(Error::Config(format!("geometry list '{name}' is empty")));
                }
                if let Some((prev, _)) = swept {
                    return Err(Error::Config(format!(
                        "only one geometry parameter may be a list; \
                         both '{prev}' and '{name}' are"
                    )));
                }
                swept = Some((name, vals));
            }
        }
        match swept {
            None => Ok(vec![(self.kind.clone(), self.build_one(None)?)]),
            Some((name, vals)) => vals
                .iter()
                .map(|&v| Ok((format!("{name}={v}"), self.build_one(Some((name, v)))?)))
                .collect(),
        }
    }

    fn scalar(slot: &Option<OneOrMany>, name: &str, ov: Option<(&str, f64)>, default: f64) -> f64 {
        if let Some((n, v)) = ov {
            if n == name {
                return v;
            }
        }
        match slot {
            Some(OneOrMany::One(x)) => *x,
            _ => default,
        }
    }

    fn alpha_rad(&self, ov: Option<(&str, f64)>) -> Result<f64> {
        if let Some(("alpha-deg", v)) = ov {
            return Ok(v.to_radians());
        }
        match &self.alpha_deg {
            Some(OneOrMany::One(x)) => Ok(x.to_radians()),
            _ => Err(Error::Config(format!(
                "geometry '{}' needs 'alpha-deg'",
                self.kind
            ))),
        }
    }

    fn build_one(&self, ov: Option<(&str, f64)>) -> Result<GeometrySpec> {
        let radius = Self::scalar(&self.radius, "radius", ov, 1.0);
        let length = Self::scalar(&self.length, "length", ov, 1.0);
        let side = Self::scalar(&self.side, "side", ov, 1.0);
        let polar = Self::scalar(&self.polar, "polar", ov, 1.0);
        let gamma = Self::scalar(&self.gamma, "gamma", ov, 2.0);
        let tip_radius = Self::scalar(&self.tip_radius, "tip-radius", ov, 1.0);
        let thickness = Self::scalar(&self.thickness, "thickness", ov, 0.01);
        use GeometrySpec::*;
        let g = match self.kind.as_str() {
            "sphere-substrate" => SphereSubstrate { radius },
            "sphere-sphere" => SphereSphere { radius },
            "oblate-substrate" => OblateSubstrate { polar, gamma },
            "prolate-substrate" => ProlateSubstrate { polar, gamma },
            "oblate-oblate" => OblateOblate { polar, gamma },
            "prolate-prolate" => ProlateProlate { polar, gamma },
            "cylinder-substrate" => CylinderSubstrate { radius, length },
            "cylinder-cylinder" => CylinderCylinder { radius, length },
            "standing-cylinder" => StandingCylinder { radius, length },
            "cube-straight" => CubeStraight { side },
            "cube-tilted" => CubeTilted {
                side,
                alpha: self.alpha_rad(ov)?,
            },
            "cone-pointed" => ConePointed {
                length,
                alpha: self.alpha_rad(ov)?,
            },
            "cone-spherical-tip" => ConeSphericalTip {
                length,
                tip_radius,
                alpha: self.alpha_rad(ov)?,
            },
            "wings-thick" => WingsThick {
                length,
                alpha: self.alpha_rad(ov)?,
            },
            "wings-thin" => WingsThin {
                length,
                alpha: self.alpha_rad(ov)?,
                thickness,
            },
            other => {
                return Err(Error::Config(format!(
                    "unknown geometry '{other}'; known kinds: {KNOWN_KINDS}"
                )))
            }
        };
        g.validate()?;
        Ok(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaleKind {
    Log,
    Linear,
}

/// The sweep grid. Gaps in nm normally; in universal mode the grid is the
/// dimensionless scaled gap x.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct SweepConfig {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub scale: ScaleKind,
    /// Emit size-independent curves: scaled force against scaled gap.
    pub universal: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            min: 0.1,
            max: 10.0,
            points: 50,
            scale: ScaleKind::Log,
            universal: false,
        }
    }
}

impl SweepConfig {
    pub fn grid(&self) -> Result<Vec<f64>> {
        if !(self.min.is_finite() && self.max.is_finite() && 0.0 < self.min && self.min < self.max)
        {
            return Err(Error::Config(format!(
                "sweep needs 0 < min < max, got {} .. {}",
                self.min, self.max
            )));
        }
        if self.points < 2 {
            return Err(Error::Config(format!(
                "sweep needs at least 2 points, got {}",
                self.points
            )));
        }
        let n = self.points;
        let mut xs = Vec::with_capacity(n);
        for i in 0..n {
            let t = i as f64 / (n - 1) as f64;
            xs.push(match self.scale {
                ScaleKind::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                ScaleKind::Linear => self.min + t * (self.max - self.min),
            });
        }
        xs[0] = self.min;
        xs[n - 1] = self.max;
        Ok(xs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct OutputConfig {
    pub format: OutputFormat,
    /// Output file; stdout when absent.
    pub path: Option<String>,
    /// Emit |value| instead of the signed value (for log-log plots).
    pub magnitude: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            format: OutputFormat::Csv,
            path: None,
            magnitude: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct ToleranceConfig {
    /// Relative tolerance for the planar quadrature.
    pub quadrature: f64,
    /// Relative tolerance for oracle comparison integrals.
    pub oracle: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            quadrature: 1e-8,
            oracle: 1e-8,
        }
    }
}
