//! Closed-form extended-PFA forces for shaped objects facing a substrate or
//! each other.
//!
//! Every force here is the projected-surface approximation
//! `F(z) = −d/dz ∫_S dS·E_p(w(S))` evaluated in closed form where the gap
//! profile allows it, with the planar kernel `E_p` supplied by the caller.
//! Forces are in eV·nm⁻¹ and negative when attractive; `z` is always the
//! closest-approach distance in nm, and each variant owns the definition of
//! its scaled gap `x` (see [`GeometrySpec::gap_scale`]).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::planar::{EnergyPerArea, DEFAULT_TOL, SHEET_COEFF};
use crate::quad::integrate_result;

/// One of the supported object configurations.
///
/// Lengths are nm, angles rad. For the spheroids, `polar` is the semi-axis
/// along the approach direction (B for oblate, A for prolate) and `gamma`
/// the long-to-short aspect ratio `A/B ≥ 1`; `gamma = 1` degenerates to the
/// sphere. Pair variants (`SphereSphere`, `OblateOblate`, ...) describe two
/// identical objects; `z` is the surface-to-surface gap on the line of
/// centers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeometrySpec {
    SphereSubstrate { radius: f64 },
    SphereSphere { radius: f64 },
    OblateSubstrate { polar: f64, gamma: f64 },
    ProlateSubstrate { polar: f64, gamma: f64 },
    OblateOblate { polar: f64, gamma: f64 },
    ProlateProlate { polar: f64, gamma: f64 },
    /// Cylinder of radius R lying parallel to the substrate, length L.
    CylinderSubstrate { radius: f64, length: f64 },
    /// Two identical parallel cylinders, gap on the line of centers.
    CylinderCylinder { radius: f64, length: f64 },
    /// Cylinder standing on end: a flat circular face toward the substrate.
    StandingCylinder { radius: f64, length: f64 },
    CubeStraight { side: f64 },
    /// Cube tilted so an edge is closest; `alpha` in (0, π/2) is mapped to
    /// the equivalent angle in (0, π/4] by the square's symmetry.
    CubeTilted { side: f64, alpha: f64 },
    /// Cone of axial height `length`, apex toward the substrate,
    /// half-aperture `alpha`.
    ConePointed { length: f64, alpha: f64 },
    /// Cone whose apex is rounded by a tangent sphere of radius
    /// `tip_radius`; `length` is the axial height of the conical part
    /// (0 for the bare tip, infinity for the infinite cone).
    ConeSphericalTip {
        length: f64,
        tip_radius: f64,
        alpha: f64,
    },
    /// Two square plates of side `length` joined at an edge, each raised by
    /// `alpha` from the substrate plane (a V lying on its open side);
    /// `alpha = 0` is the flat double plate.
    WingsThick { length: f64, alpha: f64 },
    /// Wings of finite sheet thickness; the thickness enters through the
    /// energy kernel, which must describe the coated film.
    WingsThin {
        length: f64,
        alpha: f64,
        thickness: f64,
    },
}

fn check_len(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::Config(format!(
            "{name} must be positive and finite, got {v}"
        )));
    }
    Ok(())
}

fn check_gap(z: f64) -> Result<()> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::Domain(format!(
            "separation must be positive and finite, got {z}"
        )));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain(format!(
            "scaled gap must be positive and finite, got {x}"
        )));
    }
    Ok(())
}

impl GeometrySpec {
    pub fn validate(&self) -> Result<()> {
        use GeometrySpec::*;
        match *self {
            SphereSubstrate { radius } | SphereSphere { radius } => check_len("radius", radius),
            OblateSubstrate { polar, gamma }
            | ProlateSubstrate { polar, gamma }
            | OblateOblate { polar, gamma }
            | ProlateProlate { polar, gamma } => {
                check_len("polar semi-axis", polar)?;
                if !(gamma.is_finite() && gamma >= 1.0) {
                    return Err(Error::Config(format!(
                        "aspect ratio must be finite and >= 1, got {gamma}"
                    )));
                }
                Ok(())
            }
            CylinderSubstrate { radius, length }
            | CylinderCylinder { radius, length }
            | StandingCylinder { radius, length } => {
                check_len("radius", radius)?;
                check_len("length", length)
            }
            CubeStraight { side } => check_len("side", side),
            CubeTilted { side, alpha } => {
                check_len("side", side)?;
                if !(alpha > 0.0 && alpha < PI / 2.0) {
                    return Err(Error::Config(format!(
                        "tilt angle must lie in (0, pi/2), got {alpha}"
                    )));
                }
                Ok(())
            }
            ConePointed { length, alpha } => {
                check_len("length", length)?;
                check_aperture(alpha)
            }
            ConeSphericalTip {
                length,
                tip_radius,
                alpha,
            } => {
                if length.is_nan() || length < 0.0 {
                    return Err(Error::Config(format!(
                        "cone length must be >= 0 (infinity allowed), got {length}"
                    )));
                }
                check_len("tip radius", tip_radius)?;
                check_aperture(alpha)
            }
            WingsThick { length, alpha } => {
                check_len("length", length)?;
                check_wing_angle(alpha)
            }
            WingsThin {
                length,
                alpha,
                thickness,
            } => {
                check_len("length", length)?;
                check_len("thickness", thickness)?;
                check_wing_angle(alpha)
            }
        }
    }

    /// Short stable name, used in output metadata and config files.
    pub fn name(&self) -> &'static str {
        use GeometrySpec::*;
        match self {
            SphereSubstrate { .. } => "sphere-substrate",
            SphereSphere { .. } => "sphere-sphere",
            OblateSubstrate { .. } => "oblate-substrate",
            ProlateSubstrate { .. } => "prolate-substrate",
            OblateOblate { .. } => "oblate-oblate",
            ProlateProlate { .. } => "prolate-prolate",
            CylinderSubstrate { .. } => "cylinder-substrate",
            CylinderCylinder { .. } => "cylinder-cylinder",
            StandingCylinder { .. } => "standing-cylinder",
            CubeStraight { .. } => "cube-straight",
            CubeTilted { .. } => "cube-tilted",
            ConePointed { .. } => "cone-pointed",
            ConeSphericalTip { .. } => "cone-spherical-tip",
            WingsThick { .. } => "wings-thick",
            WingsThin { .. } => "wings-thin",
        }
    }

    /// Length dividing `z` to form the variant's scaled gap `x`.
    pub fn gap_scale(&self) -> f64 {
        use GeometrySpec::*;
        match *self {
            SphereSubstrate { radius } => radius,
            SphereSphere { radius } => 2.0 * radius,
            OblateSubstrate { polar, .. } => polar,
            ProlateSubstrate { polar, .. } => polar,
            OblateOblate { polar, .. } => 2.0 * polar,
            ProlateProlate { polar, .. } => 2.0 * polar,
            CylinderSubstrate { radius, .. } => radius,
            CylinderCylinder { radius, .. } => 2.0 * radius,
            StandingCylinder { radius, .. } => radius,
            CubeStraight { side } | CubeTilted { side, .. } => side,
            ConePointed { length, .. } => length,
            ConeSphericalTip { tip_radius, .. } => tip_radius,
            WingsThick { length, .. } | WingsThin { length, .. } => length,
        }
    }

    /// Factor multiplying the force to form the size-independent scaled
    /// product (for an inverse-square kernel), e.g. `R·F` for the sphere.
    pub fn force_scale(&self) -> f64 {
        use GeometrySpec::*;
        match *self {
            SphereSubstrate { radius } => radius,
            SphereSphere { radius } => 8.0 * radius,
            OblateSubstrate { polar, gamma } => polar / (gamma * gamma),
            ProlateSubstrate { polar, gamma } => polar * gamma * gamma,
            OblateOblate { polar, gamma } => 8.0 * polar / (gamma * gamma),
            ProlateProlate { polar, gamma } => 8.0 * polar * gamma * gamma,
            CylinderSubstrate { radius, length } => radius * radius / length,
            CylinderCylinder { radius, length } => 8.0 * radius * radius / length,
            StandingCylinder { radius, .. } => radius,
            CubeStraight { side } | CubeTilted { side, .. } => side,
            ConePointed { length, alpha } => {
                let t = alpha.tan();
                length / (t * t)
            }
            ConeSphericalTip { tip_radius, .. } => tip_radius,
            WingsThick { length, .. } | WingsThin { length, .. } => length,
        }
    }

    pub fn scaled_gap_label(&self) -> &'static str {
        use GeometrySpec::*;
        match self {
            SphereSubstrate { .. } | CylinderSubstrate { .. } | StandingCylinder { .. } => "z/R",
            SphereSphere { .. } | CylinderCylinder { .. } => "z/2R",
            OblateSubstrate { .. } => "z/B",
            ProlateSubstrate { .. } => "z/A",
            OblateOblate { .. } => "z/2B",
            ProlateProlate { .. } => "z/2A",
            ConeSphericalTip { .. } => "z/R",
            CubeStraight { .. } | CubeTilted { .. } | ConePointed { .. } => "z/L",
            WingsThick { .. } | WingsThin { .. } => "z/L",
        }
    }

    pub fn scaled_force_label(&self) -> &'static str {
        use GeometrySpec::*;
        match self {
            SphereSubstrate { .. } | StandingCylinder { .. } | ConeSphericalTip { .. } => "R*F",
            SphereSphere { .. } => "8R*F",
            OblateSubstrate { .. } => "(B/gamma^2)*F",
            ProlateSubstrate { .. } => "(A*gamma^2)*F",
            OblateOblate { .. } => "(8B/gamma^2)*F",
            ProlateProlate { .. } => "(8A*gamma^2)*F",
            CylinderSubstrate { .. } => "(R^2/L)*F",
            CylinderCylinder { .. } => "(8R^2/L)*F",
            CubeStraight { .. } | CubeTilted { .. } => "L*F",
            ConePointed { .. } => "(L/tan^2(alpha))*F",
            WingsThick { .. } | WingsThin { .. } => "L*F",
        }
    }

    /// Same shape with every length multiplied by `factor` (angles and
    /// aspect ratios untouched).
    pub fn scale_lengths(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::Config(format!(
                "scale factor must be positive and finite, got {factor}"
            )));
        }
        use GeometrySpec::*;
        let scaled = match *self {
            SphereSubstrate { radius } => SphereSubstrate {
                radius: radius * factor,
            },
            SphereSphere { radius } => SphereSphere {
                radius: radius * factor,
            },
            OblateSubstrate { polar, gamma } => OblateSubstrate {
                polar: polar * factor,
                gamma,
            },
            ProlateSubstrate { polar, gamma } => ProlateSubstrate {
                polar: polar * factor,
                gamma,
            },
            OblateOblate { polar, gamma } => OblateOblate {
                polar: polar * factor,
                gamma,
            },
            ProlateProlate { polar, gamma } => ProlateProlate {
                polar: polar * factor,
                gamma,
            },
            CylinderSubstrate { radius, length } => CylinderSubstrate {
                radius: radius * factor,
                length: length * factor,
            },
            CylinderCylinder { radius, length } => CylinderCylinder {
                radius: radius * factor,
                length: length * factor,
            },
            StandingCylinder { radius, length } => StandingCylinder {
                radius: radius * factor,
                length: length * factor,
            },
            CubeStraight { side } => CubeStraight {
                side: side * factor,
            },
            CubeTilted { side, alpha } => CubeTilted {
                side: side * factor,
                alpha,
            },
            ConePointed { length, alpha } => ConePointed {
                length: length * factor,
                alpha,
            },
            ConeSphericalTip {
                length,
                tip_radius,
                alpha,
            } => ConeSphericalTip {
                length: length * factor,
                tip_radius: tip_radius * factor,
                alpha,
            },
            WingsThick { length, alpha } => WingsThick {
                length: length * factor,
                alpha,
            },
            WingsThin {
                length,
                alpha,
                thickness,
            } => WingsThin {
                length: length * factor,
                alpha,
                thickness: thickness * factor,
            },
        };
        Ok(scaled)
    }

    /// The variant reduced to unit primary length (gap scale divided out),
    /// used to evaluate universal curves without touching absolute sizes.
    pub fn unit_scaled(&self) -> Result<Self> {
        use GeometrySpec::*;
        let base = match *self {
            SphereSubstrate { radius } | SphereSphere { radius } => radius,
            OblateSubstrate { polar, .. }
            | ProlateSubstrate { polar, .. }
            | OblateOblate { polar, .. }
            | ProlateProlate { polar, .. } => polar,
            CylinderSubstrate { radius, .. }
            | CylinderCylinder { radius, .. }
            | StandingCylinder { radius, .. } => radius,
            CubeStraight { side } | CubeTilted { side, .. } => side,
            ConePointed { length, .. } => length,
            ConeSphericalTip { tip_radius, .. } => tip_radius,
            WingsThick { length, .. } | WingsThin { length, .. } => length,
        };
        self.scale_lengths(1.0 / base)
    }
}

fn check_aperture(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < PI / 2.0) {
        return Err(Error::Config(format!(
            "half-aperture must lie in (0, pi/2), got {alpha}"
        )));
    }
    Ok(())
}

fn check_wing_angle(alpha: f64) -> Result<()> {
    if !(alpha >= 0.0 && alpha < PI / 2.0) {
        return Err(Error::Config(format!(
            "wing angle must lie in [0, pi/2), got {alpha}"
        )));
    }
    Ok(())
}

/// Tilt angle folded into (0, π/4] by the square's symmetry.
fn canonical_tilt(alpha: f64) -> f64 {
    if alpha > PI / 4.0 {
        PI / 2.0 - alpha
    } else {
        alpha
    }
}

/// Generic geometry correction for a kernel `E_p ∝ w^(−ζ)` on a gap profile
/// whose projection density falls off linearly (spheres, spheroids, and
/// their pairs): `Corr(ζ, x) ∈ (0, 1]`, with `Corr(2, x) = 1/(1+x)`.
pub fn corr_factor(zeta: f64, x: f64) -> Result<f64> {
    if !(zeta.is_finite() && zeta > 0.0) {
        return Err(Error::Domain(format!(
            "kernel exponent must be positive and finite, got {zeta}"
        )));
    }
    check_x(x)?;
    // Corr = 1 − x ∫_0^{1/x} (1+s)^(−ζ) ds, closed form via
    // ln(x/(1+x)); the ζ = 1 branch is the continuous limit.
    let l = (x / (1.0 + x)).ln();
    let dz = zeta - 1.0;
    if dz.abs() < 1e-9 {
        Ok(1.0 + x * l * (1.0 + dz * l / 2.0))
    } else {
        Ok(1.0 + x * (dz * l).exp_m1() / dz)
    }
}

/// Geometry correction for a cylinder facing a substrate (and, with the
/// pair's own scaled gap, for two parallel cylinders), inverse-square
/// kernel. Tends to 1 at contact and falls off as `x^(−1/2)`.
fn cylinder_correction(x: f64) -> f64 {
    let root = (x * x + 2.0 * x).sqrt();
    let xp1 = x + 1.0;
    let num = 6.0 * xp1 * xp1 * (1.0 / root).atan()
        + 3.0 * PI * xp1 * xp1
        + 2.0 * root * (2.0 * x * x + 4.0 * x + 3.0);
    let den = 0.75 * PI * std::f64::consts::SQRT_2 * xp1 * (x + 2.0).powf(2.5);
    num / den
}

/// Correction for the tilted cube, inverse-square kernel: exact ratio of
/// the two-face force to its leading edge term.
fn tilted_correction(x: f64, alpha: f64) -> f64 {
    let a = canonical_tilt(alpha);
    let (s, c) = a.sin_cos();
    1.0 - c * c * x * x / ((x + s) * (x + s)) - s * s * x * x / ((x + c) * (x + c))
}

/// Leading (uncorrected) PFA force for the variant, as listed in the
/// summary table: the contact projection density times `E_p(z)` (curved
/// objects), or the equivalent `2·Area·E_p(z)/z` form for flat faces, which
/// follows the inverse-square kernel convention of that table. The exact
/// any-kernel evaluation lives in [`full_force`].
pub fn pfa_force(geom: &GeometrySpec, z: f64, ep: &dyn EnergyPerArea) -> Result<f64> {
    geom.validate()?;
    check_gap(z)?;
    use GeometrySpec::*;
    let e = ep.energy(z)?;
    let f = match *geom {
        SphereSubstrate { radius } => 2.0 * PI * radius * e,
        SphereSphere { radius } => PI * radius * e,
        OblateSubstrate { polar, gamma } => 2.0 * PI * gamma * gamma * polar * e,
        ProlateSubstrate { polar, gamma } => 2.0 * PI * polar / (gamma * gamma) * e,
        OblateOblate { polar, gamma } => PI * gamma * gamma * polar * e,
        ProlateProlate { polar, gamma } => PI * polar / (gamma * gamma) * e,
        CylinderSubstrate { radius, length } => {
            0.75 * PI * length * (2.0 * radius / z).sqrt() * e
        }
        CylinderCylinder { radius, length } => 0.75 * PI * length * (radius / z).sqrt() * e,
        StandingCylinder { radius, .. } => 2.0 * PI * radius * radius * e / z,
        CubeStraight { side } => 2.0 * side * side * e / z,
        CubeTilted { side, alpha } => {
            let a = canonical_tilt(alpha);
            side * e / (a.sin() * a.cos())
        }
        ConePointed { alpha, .. } => {
            let t = alpha.tan();
            2.0 * PI * t * t * z * e
        }
        ConeSphericalTip { tip_radius, .. } => 2.0 * PI * tip_radius * e,
        WingsThick { length, alpha } | WingsThin { length, alpha, .. } => {
            if alpha == 0.0 {
                4.0 * length * length * e / z
            } else {
                2.0 * length * (alpha.cos() / alpha.sin()) * e
            }
        }
    };
    Ok(f)
}

/// Closed-form geometry correction of the summary table (inverse-square
/// kernel), as a function of the variant's own scaled gap `x`.
pub fn correction(geom: &GeometrySpec, x: f64) -> Result<f64> {
    geom.validate()?;
    check_x(x)?;
    use GeometrySpec::*;
    match *geom {
        SphereSubstrate { .. }
        | SphereSphere { .. }
        | OblateSubstrate { .. }
        | ProlateSubstrate { .. }
        | OblateOblate { .. }
        | ProlateProlate { .. } => Ok(1.0 / (1.0 + x)),
        CylinderSubstrate { .. } | CylinderCylinder { .. } => Ok(cylinder_correction(x)),
        StandingCylinder { .. } | CubeStraight { .. } => Ok(1.0),
        CubeTilted { alpha, .. } => Ok(tilted_correction(x, alpha)),
        ConePointed { .. } => Ok(1.0 / ((1.0 + x) * (1.0 + x))),
        WingsThick { alpha, .. } => {
            if alpha == 0.0 {
                Ok(1.0)
            } else {
                let y = x / alpha.sin();
                Ok((1.0 + 2.0 * y) / ((1.0 + y) * (1.0 + y)))
            }
        }
        ConeSphericalTip { .. } => Err(Error::Unsupported(
            "the rounded-tip cone has no single closed-form correction; \
             use force_cone_spherical_tip"
                .into(),
        )),
        WingsThin { .. } => Err(Error::Unsupported(
            "finite-thickness wings have no closed-form correction; \
             full_force evaluates the finite-thickness formula directly"
                .into(),
        )),
    }
}

/// Lowest-order term of `correction(x) − 1` for small `x`.
pub fn epsilon_leading(geom: &GeometrySpec, x: f64) -> Result<f64> {
    geom.validate()?;
    check_x(x)?;
    use GeometrySpec::*;
    match *geom {
        SphereSubstrate { .. }
        | SphereSphere { .. }
        | OblateSubstrate { .. }
        | ProlateSubstrate { .. }
        | OblateOblate { .. }
        | ProlateProlate { .. } => Ok(-x),
        CylinderSubstrate { .. } | CylinderCylinder { .. } => Ok(-x / 4.0),
        StandingCylinder { .. } | CubeStraight { .. } => Ok(0.0),
        CubeTilted { alpha, .. } => {
            let a = canonical_tilt(alpha);
            let (t, c) = (a.tan(), 1.0 / a.tan());
            Ok(-(t * t + c * c) * x * x)
        }
        ConePointed { .. } => Ok(-2.0 * x),
        WingsThick { alpha, .. } => {
            if alpha == 0.0 {
                Ok(0.0)
            } else {
                let y = x / alpha.sin();
                Ok(-y * y)
            }
        }
        ConeSphericalTip { .. } => Err(Error::Unsupported(
            "the rounded-tip cone has no tabulated expansion; \
             use force_cone_spherical_tip"
                .into(),
        )),
        WingsThin { .. } => Err(Error::Unsupported(
            "finite-thickness wings have no tabulated expansion".into(),
        )),
    }
}

/// Force on a geometry whose projection density is affine,
/// `g(t) = g0·(1 − t/Δ)`: closed form `g0·E(z)·Corr(ζ, z/Δ)` for a
/// power-law kernel, otherwise the exact bracket
/// `g0·[E(z) − (1/Δ)∫_0^Δ E(z+t) dt]`.
fn affine_force(
    g0: f64,
    delta: f64,
    z: f64,
    ep: &dyn EnergyPerArea,
    zeta: Option<f64>,
) -> Result<f64> {
    if let Some(zeta) = zeta {
        return Ok(g0 * ep.energy(z)? * corr_factor(zeta, z / delta)?);
    }
    let mean = integrate_result(|t| ep.energy(z + t), 0.0, delta, DEFAULT_TOL)? / delta;
    Ok(g0 * (ep.energy(z)? - mean))
}

/// Lying-cylinder force by direct quadrature, valid for any kernel. The
/// chord parameterization `t = s²` removes the rim singularity of the
/// projection density.
fn cylinder_force_numeric(
    pair: bool,
    radius: f64,
    length: f64,
    z: f64,
    ep: &dyn EnergyPerArea,
) -> Result<f64> {
    let r = radius;
    let (upper, density): (f64, Box<dyn Fn(f64) -> f64>) = if pair {
        (
            (2.0 * r).sqrt(),
            Box::new(move |s: f64| {
                2.0 * length * (r - s * s / 2.0) / (r - s * s / 4.0).sqrt()
            }),
        )
    } else {
        (
            r.sqrt(),
            Box::new(move |s: f64| {
                4.0 * length * (r - s * s) / (2.0 * r - s * s).sqrt()
            }),
        )
    };
    let f = |s: f64| Ok(-density(s) * ep.derivative(z + s * s)?);
    integrate_result(f, 0.0, upper, DEFAULT_TOL)
}

/// Pointed-cone force for a pure power-law kernel `E_p = −c·w^(−n)`,
/// any positive exponent (logarithmic branch at n = 1).
pub fn force_cone_pointed_power(
    length: f64,
    alpha: f64,
    z: f64,
    c: f64,
    n: f64,
) -> Result<f64> {
    check_len("length", length)?;
    check_aperture(alpha)?;
    check_gap(z)?;
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::Domain(format!(
            "kernel exponent must be positive and finite, got {n}"
        )));
    }
    let t = alpha.tan();
    let y = z / length;
    let pref = 2.0 * PI * c * t * t;
    if (n - 1.0).abs() < 1e-8 {
        Ok(pref * (1.0 / (1.0 + y) + (y / (1.0 + y)).ln()))
    } else {
        let bracket = (y + n) / (y + 1.0).powf(n) - y.powf(1.0 - n);
        Ok(pref / length.powf(n - 1.0) * bracket / (n - 1.0))
    }
}

/// Pointed-cone force for an arbitrary kernel: base boundary term plus the
/// flank integral (the projection density grows linearly from the apex).
fn cone_pointed_general(
    length: f64,
    alpha: f64,
    z: f64,
    ep: &dyn EnergyPerArea,
) -> Result<f64> {
    let t2 = alpha.tan().powi(2);
    let base = -2.0 * PI * length * t2 * ep.energy(z + length)?;
    let flank =
        2.0 * PI * t2 * integrate_result(|t| ep.energy(z + t), 0.0, length, DEFAULT_TOL)?;
    Ok(base + flank)
}

/// Force on a cone ending in a tangent spherical tip, for an inverse-square
/// kernel. `length` is the axial height of the conical section (0 gives the
/// truncated tip alone, infinity the infinite cone); the sphere has radius
/// `tip_radius` and meets the flank where their slopes agree.
///
/// Split as tip part plus cone part: the cone part vanishes exactly at
/// `length = 0`, and for growing length the force approaches the
/// infinite-cone limit from below.
pub fn force_cone_spherical_tip(
    length: f64,
    tip_radius: f64,
    alpha: f64,
    z: f64,
    ep: &dyn EnergyPerArea,
) -> Result<f64> {
    let spec = GeometrySpec::ConeSphericalTip {
        length,
        tip_radius,
        alpha,
    };
    spec.validate()?;
    check_gap(z)?;
    let zeta = ep.power_law_exponent().ok_or_else(|| {
        Error::Unsupported(
            "the rounded-tip closed form assumes an inverse-square kernel; \
             for other kernels integrate the composite profile with the oracle"
                .into(),
        )
    })?;
    cone_tip_with_zeta(length, tip_radius, alpha, z, ep, zeta)
}

fn cone_tip_with_zeta(
    length: f64,
    tip_radius: f64,
    alpha: f64,
    z: f64,
    ep: &dyn EnergyPerArea,
    zeta: f64,
) -> Result<f64> {
    if (zeta - 2.0).abs() > 1e-12 {
        return Err(Error::Unsupported(format!(
            "the rounded-tip closed form assumes an inverse-square kernel \
             (got exponent {zeta}); for other kernels integrate the \
             composite profile with the oracle"
        )));
    }
    let r = tip_radius;
    let x = z / r;
    let s = alpha.sin();
    let t2 = alpha.tan().powi(2);
    let lam = length / r;
    let epx = ep.energy(z)?;
    let a = x + 1.0 - s;
    let rf1 = 2.0 * PI * r * r * epx * (1.0 - x + x * x / a - s * x * x / (a * a));
    let rf2 = if length == 0.0 {
        0.0
    } else if lam.is_infinite() {
        2.0 * PI * r * r * epx * x * x * (t2 / a + s / (a * a))
    } else {
        let b = a + lam;
        2.0 * PI
            * r
            * r
            * epx
            * x
            * x
            * (t2 * (1.0 / a - (a + 2.0 * lam) / (b * b)) + s * (1.0 / (a * a) - 1.0 / (b * b)))
    };
    Ok((rf1 + rf2) / r)
}

/// Full extended-PFA force for any variant.
///
/// When the kernel is a pure power law (declared by the provider or
/// asserted through `zeta_hint`), the closed forms are used; otherwise the
/// exact projected-surface integrals are evaluated with the supplied
/// kernel. Flat faces, the tilted cube, and wings have endpoint-exact
/// expressions valid for every kernel. The rounded-tip cone supports only
/// the inverse-square closed form here; other kernels belong to the oracle.
pub fn full_force(
    geom: &GeometrySpec,
    z: f64,
    ep: &dyn EnergyPerArea,
    zeta_hint: Option<f64>,
) -> Result<f64> {
    geom.validate()?;
    check_gap(z)?;
    let zeta = zeta_hint.or_else(|| ep.power_law_exponent());
    use GeometrySpec::*;
    match *geom {
        SphereSubstrate { radius } => affine_force(2.0 * PI * radius, radius, z, ep, zeta),
        SphereSphere { radius } => affine_force(PI * radius, 2.0 * radius, z, ep, zeta),
        OblateSubstrate { polar, gamma } => {
            affine_force(2.0 * PI * gamma * gamma * polar, polar, z, ep, zeta)
        }
        ProlateSubstrate { polar, gamma } => {
            affine_force(2.0 * PI * polar / (gamma * gamma), polar, z, ep, zeta)
        }
        OblateOblate { polar, gamma } => {
            affine_force(PI * gamma * gamma * polar, 2.0 * polar, z, ep, zeta)
        }
        ProlateProlate { polar, gamma } => {
            affine_force(PI * polar / (gamma * gamma), 2.0 * polar, z, ep, zeta)
        }
        CylinderSubstrate { radius, length } => {
            if matches!(zeta, Some(zt) if (zt - 2.0).abs() < 1e-12) {
                Ok(pfa_force(geom, z, ep)? * cylinder_correction(z / radius))
            } else {
                cylinder_force_numeric(false, radius, length, z, ep)
            }
        }
        CylinderCylinder { radius, length } => {
            if matches!(zeta, Some(zt) if (zt - 2.0).abs() < 1e-12) {
                Ok(pfa_force(geom, z, ep)? * cylinder_correction(z / (2.0 * radius)))
            } else {
                cylinder_force_numeric(true, radius, length, z, ep)
            }
        }
        StandingCylinder { radius, .. } => Ok(-PI * radius * radius * ep.derivative(z)?),
        CubeStraight { side } => Ok(-side * side * ep.derivative(z)?),
        CubeTilted { side, alpha } => {
            let a = canonical_tilt(alpha);
            let (s, c) = a.sin_cos();
            let bracket = c * c * ep.energy(z + side * s)? + s * s * ep.energy(z + side * c)?
                - ep.energy(z)?;
            Ok(-side / (s * c) * bracket)
        }
        ConePointed { length, alpha } => {
            if let Some(n) = zeta {
                let c = -ep.energy(z)? * z.powf(n);
                force_cone_pointed_power(length, alpha, z, c, n)
            } else {
                cone_pointed_general(length, alpha, z, ep)
            }
        }
        ConeSphericalTip {
            length,
            tip_radius,
            alpha,
        } => {
            let zeta = zeta.ok_or_else(|| {
                Error::Unsupported(
                    "the rounded-tip closed form assumes an inverse-square \
                     kernel; for other kernels integrate the composite \
                     profile with the oracle"
                        .into(),
                )
            })?;
            cone_tip_with_zeta(length, tip_radius, alpha, z, ep, zeta)
        }
        WingsThick { length, alpha } | WingsThin { length, alpha, .. } => {
            wings_force(length, alpha, z, ep)
        }
    }
}

/// Wings force, endpoint-exact for any kernel; the zero-angle branch is the
/// flat double plate.
fn wings_force(length: f64, alpha: f64, z: f64, ep: &dyn EnergyPerArea) -> Result<f64> {
    if alpha == 0.0 {
        return Ok(-2.0 * length * length * ep.derivative(z)?);
    }
    let (s, c) = alpha.sin_cos();
    Ok(2.0 * length * (c / s) * (ep.energy(z)? - ep.energy(z + length * s)?))
}

/// Force from an explicit projection density `g(t) = dS/dw` supported on
/// `[0, Δ]`, by the decomposition
/// `F = g(0)·E(z) − g(Δ)·E(z+Δ) + ∫ g'(t)·E(z+t) dt`
/// (the slope is taken numerically from the supplied density).
pub fn force_from_projection(
    g: impl Fn(f64) -> f64,
    delta: f64,
    z: f64,
    ep: &dyn EnergyPerArea,
) -> Result<f64> {
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(Error::Domain(format!(
            "projection support must be finite and >= 0, got {delta}"
        )));
    }
    check_gap(z)?;
    let boundary = g(0.0) * ep.energy(z)?;
    if delta == 0.0 {
        return Ok(boundary);
    }
    let far = -g(delta) * ep.energy(z + delta)?;
    let h = delta * 3e-6;
    let slope = move |t: f64| {
        let lo = (t - h).max(0.0);
        let hi = (t + h).min(delta);
        (g(hi) - g(lo)) / (hi - lo)
    };
    let interior = integrate_result(
        |t| Ok(slope(t) * ep.energy(z + t)?),
        0.0,
        delta,
        DEFAULT_TOL,
    )?;
    Ok(boundary + far + interior)
}

/// Interaction between two bodies with one common curvature scale each:
/// spheres (`n = 0`, energy eV), parallel cylinders per unit length
/// (`n = 1`, eV·nm⁻¹), or half spaces per unit area (`n = 2`, eV·nm⁻²).
/// `r2` may be infinite for a substrate; `series_sum` is `Σ ⟨ω_l⟩/l³` eV.
pub fn general_interaction(n: u8, r1: f64, r2: f64, z: f64, series_sum: f64) -> Result<f64> {
    check_gap(z)?;
    if !series_sum.is_finite() {
        return Err(Error::Domain(format!(
            "series sum must be finite, got {series_sum}"
        )));
    }
    let base = -series_sum / (32.0 * PI * PI);
    match n {
        2 => Ok(base / (z * z)),
        0 | 1 => {
            check_len("first radius", r1)?;
            if r2.is_nan() || r2 <= 0.0 {
                return Err(Error::Config(format!(
                    "second radius must be positive (infinity allowed), got {r2}"
                )));
            }
            let bracket = if r2.is_infinite() {
                2.0 * PI * r1
            } else {
                2.0 * PI * r1 * r2 / (r1 + r2)
            };
            if n == 0 {
                Ok(base / z * bracket)
            } else {
                // Γ(3/2) = √π/2
                let gamma_3_2 = PI.sqrt() / 2.0;
                Ok(base * gamma_3_2 * bracket.sqrt() / z.powf(1.5))
            }
        }
        _ => Err(Error::Domain(format!(
            "dimension index must be 0 (spheres), 1 (cylinders) or 2 (half spaces), got {n}"
        ))),
    }
}

/// Scale and film thickness of a two-dimensional electron sheet;
/// `sheet_scale = √(n ħ²e²/m_e)` in eV (see
/// [`crate::planar::sheet_scale_from_density`]), `delta` nm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetParams {
    pub sheet_scale: f64,
    pub delta: f64,
}

impl SheetParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sheet_scale.is_finite() && self.sheet_scale > 0.0) {
            return Err(Error::Config(format!(
                "sheet scale must be positive and finite, got {}",
                self.sheet_scale
            )));
        }
        if !(self.delta.is_finite() && self.delta > 0.0) {
            return Err(Error::Config(format!(
                "sheet thickness must be positive and finite, got {}",
                self.delta
            )));
        }
        Ok(())
    }
}

/// Geometry carrying a 2D-sheet coating.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SheetGeometry {
    SphereSubstrate { radius: f64 },
    Wings { length: f64, alpha: f64 },
}

/// Which expression of the wing sheet force to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SheetBranch {
    Exact,
    /// `α → 0` limit, `∝ x^(−7/2)`.
    SmallAngle,
    /// `x → 0` limit, `∝ cotα·x^(−5/2)`.
    SmallGap,
    /// `x → ∞` limit, `∝ cosα·x^(−7/2)`.
    LargeGap,
}

/// Scaled force of an object coated by a 2D electron sheet, at scaled gap
/// `x`: `R·F` for the sphere (x = z/R), `L·F` for wings (x = z/L), in eV.
/// Negative (attractive); the sheet kernel is `∝ w^(−5/2)`, so these decay
/// as `x^(−5/2)` to `x^(−7/2)`.
pub fn sheet2d_limit(
    geom: &SheetGeometry,
    params: &SheetParams,
    x: f64,
    branch: SheetBranch,
) -> Result<f64> {
    params.validate()?;
    check_x(x)?;
    let scale = params.sheet_scale;
    match *geom {
        SheetGeometry::SphereSubstrate { radius } => {
            check_len("radius", radius)?;
            if branch != SheetBranch::Exact {
                return Err(Error::Unsupported(
                    "asymptote branches apply to the wing sheet only".into(),
                ));
            }
            Ok(-2.0 * PI * SHEET_COEFF * scale * (params.delta / radius).sqrt() * x.powf(-2.5))
        }
        SheetGeometry::Wings { length, alpha } => {
            check_len("length", length)?;
            check_wing_angle(alpha)?;
            let amp = 2.0 * SHEET_COEFF * scale * (params.delta / length).sqrt();
            let s = alpha.sin();
            let value = match branch {
                SheetBranch::Exact => {
                    if alpha == 0.0 {
                        // continuous limit of cotα·[x^(-5/2) − (x+s)^(-5/2)]
                        -2.5 * amp * x.powf(-3.5)
                    } else {
                        -amp * (alpha.cos() / s) * (x.powf(-2.5) - (x + s).powf(-2.5))
                    }
                }
                SheetBranch::SmallAngle => -2.5 * amp * x.powf(-3.5),
                SheetBranch::SmallGap => {
                    if alpha == 0.0 {
                        return Err(Error::Domain(
                            "the small-gap asymptote needs a nonzero wing angle".into(),
                        ));
                    }
                    -amp * (alpha.cos() / s) * x.powf(-2.5)
                }
                SheetBranch::LargeGap => -2.5 * amp * alpha.cos() * x.powf(-3.5),
            };
            Ok(value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::PowerLawEnergy;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    /// Wraps a provider, hiding its power-law declaration, to force the
    /// numeric code paths.
    struct Opaque<T>(T);
    impl<T: EnergyPerArea> EnergyPerArea for Opaque<T> {
        fn energy(&self, w: f64) -> Result<f64> {
            self.0.energy(w)
        }
        fn derivative(&self, w: f64) -> Result<f64> {
            self.0.derivative(w)
        }
    }

    fn inv_square() -> PowerLawEnergy {
        PowerLawEnergy::new(1.0, 2.0).unwrap()
    }

    #[test]
    fn corr_factor_reference_points() {
        assert_relative_eq!(corr_factor(2.0, 1.0).unwrap(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(
            corr_factor(1.0, 1.0).unwrap(),
            1.0 - 2.0f64.ln(),
            max_relative = 1e-14
        );
        for i in 0..50 {
            let x = 1e-3 * 10f64.powf(4.0 * i as f64 / 49.0); // 1e-3..10
            let c = corr_factor(2.0, x).unwrap();
            assert_relative_eq!(c, 1.0 / (1.0 + x), max_relative = 1e-14);
        }
    }

    #[test]
    fn corr_factor_continuous_at_unit_exponent() {
        for x in [0.01, 0.5, 3.0] {
            let at = corr_factor(1.0, x).unwrap();
            let above = corr_factor(1.0 + 1e-12, x).unwrap();
            let below = corr_factor(1.0 - 1e-12, x).unwrap();
            assert_abs_diff_eq!(at, above, epsilon = 1e-11);
            assert_abs_diff_eq!(at, below, epsilon = 1e-11);
            // outside the guarded window the branches still agree closely
            let near = corr_factor(1.0 + 1e-7, x).unwrap();
            assert_abs_diff_eq!(at, near, epsilon = 1e-6);
        }
        assert!(corr_factor(2.0, 0.0).is_err());
        assert!(corr_factor(0.0, 1.0).is_err());
    }

    #[test]
    fn corr_factor_zero_gap_limit() {
        for zeta in [1.5, 2.0, 2.5, 3.0] {
            let c = corr_factor(zeta, 1e-9).unwrap();
            assert_abs_diff_eq!(c, 1.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn pfa_sphere_reference() {
        let g = GeometrySpec::SphereSubstrate { radius: 1.0 };
        let f = pfa_force(&g, 0.1, &inv_square()).unwrap();
        assert_relative_eq!(f, -200.0 * PI, max_relative = 1e-14); // −628.319
    }

    #[test]
    fn pfa_flat_face_ratio() {
        let cube = GeometrySpec::CubeStraight { side: 2.0 };
        let cyl = GeometrySpec::StandingCylinder {
            radius: 0.7,
            length: 5.0,
        };
        let ep = inv_square();
        for z in [0.1, 1.0, 4.0] {
            let ratio = pfa_force(&cube, z, &ep).unwrap() / pfa_force(&cyl, z, &ep).unwrap();
            assert_relative_eq!(ratio, 4.0 / (PI * 0.49), max_relative = 1e-13);
        }
    }

    #[test]
    fn pfa_sphere_pair_matches_half_radius_leading() {
        let ep = inv_square();
        let pair = GeometrySpec::SphereSphere { radius: 1.0 };
        let half = GeometrySpec::SphereSubstrate { radius: 0.5 };
        let f1 = pfa_force(&pair, 0.01, &ep).unwrap();
        let f2 = pfa_force(&half, 0.01, &ep).unwrap();
        assert_relative_eq!(f1, f2, max_relative = 1e-14);
    }

    #[test]
    fn sphere_closed_form_and_numeric_route_agree() {
        let r = 1.3;
        let g = GeometrySpec::SphereSubstrate { radius: r };
        let ep = inv_square();
        for z in [0.05, 0.4, 2.0] {
            let closed = full_force(&g, z, &ep, None).unwrap();
            assert_relative_eq!(
                closed,
                2.0 * PI * r * ep.energy(z).unwrap() / (1.0 + z / r),
                max_relative = 1e-13
            );
            let numeric = full_force(&g, z, &Opaque(ep), None).unwrap();
            assert_relative_eq!(closed, numeric, max_relative = 1e-7);
        }
    }

    #[test]
    fn spheroids_reduce_to_spheres_at_unit_aspect() {
        let ep = inv_square();
        let z = 0.3;
        let sphere = full_force(&GeometrySpec::SphereSubstrate { radius: 0.8 }, z, &ep, None)
            .unwrap();
        for g in [
            GeometrySpec::OblateSubstrate {
                polar: 0.8,
                gamma: 1.0,
            },
            GeometrySpec::ProlateSubstrate {
                polar: 0.8,
                gamma: 1.0,
            },
        ] {
            assert_relative_eq!(
                full_force(&g, z, &ep, None).unwrap(),
                sphere,
                max_relative = 1e-14
            );
        }
        let pair = full_force(&GeometrySpec::SphereSphere { radius: 0.8 }, z, &ep, None).unwrap();
        assert_relative_eq!(
            full_force(
                &GeometrySpec::OblateOblate {
                    polar: 0.8,
                    gamma: 1.0
                },
                z,
                &ep,
                None
            )
            .unwrap(),
            pair,
            max_relative = 1e-14
        );
    }

    #[test]
    fn cylinder_pair_and_substrate_share_correction() {
        let g1 = GeometrySpec::CylinderSubstrate {
            radius: 1.0,
            length: 1.0,
        };
        let g2 = GeometrySpec::CylinderCylinder {
            radius: 1.0,
            length: 1.0,
        };
        for x in [0.05, 0.3, 2.0] {
            assert_eq!(correction(&g1, x).unwrap(), correction(&g2, x).unwrap());
        }
        // closed form against the direct quadrature route
        let ep = inv_square();
        for (g, _scale) in [(g1, 1.0), (g2, 2.0)] {
            for z in [0.1, 0.8] {
                let closed = full_force(&g, z, &ep, None).unwrap();
                let numeric = full_force(&g, z, &Opaque(ep), None).unwrap();
                assert_relative_eq!(closed, numeric, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn tilted_cube_matches_bracket_form() {
        let ep = inv_square();
        for alpha in [PI / 9.0, PI / 4.0, PI / 3.0] {
            let g = GeometrySpec::CubeTilted { side: 1.0, alpha };
            for z in [0.01, 0.2, 1.5] {
                let full = full_force(&g, z, &ep, None).unwrap();
                let table = pfa_force(&g, z, &ep).unwrap() * correction(&g, z).unwrap();
                assert_relative_eq!(full, table, max_relative = 1e-12);
                assert!(full < 0.0);
            }
        }
        // symmetry fold: alpha and pi/2 − alpha are the same cube
        let a = GeometrySpec::CubeTilted {
            side: 1.0,
            alpha: PI / 5.0,
        };
        let b = GeometrySpec::CubeTilted {
            side: 1.0,
            alpha: PI / 2.0 - PI / 5.0,
        };
        assert_eq!(
            full_force(&a, 0.3, &ep, None).unwrap(),
            full_force(&b, 0.3, &ep, None).unwrap()
        );
    }

    #[test]
    fn wings_zero_angle_is_double_flat_plate() {
        let ep = inv_square();
        let wings = GeometrySpec::WingsThick {
            length: 1.0,
            alpha: 0.0,
        };
        let cube = GeometrySpec::CubeStraight { side: 1.0 };
        for z in [0.05, 0.5, 3.0] {
            let fw = full_force(&wings, z, &ep, None).unwrap();
            let fc = full_force(&cube, z, &ep, None).unwrap();
            assert_relative_eq!(fw, 2.0 * fc, max_relative = 1e-14);
        }
    }

    #[test]
    fn wings_closed_form_reference() {
        // frozen from an independent evaluation of
        // 2cotα[x^(−2) − (x+sinα)^(−2)] at α = 25°, x = 0.7, L = C = 1
        let g = GeometrySpec::WingsThick {
            length: 1.0,
            alpha: 25.0f64.to_radians(),
        };
        let f = full_force(&g, 0.7, &inv_square(), None).unwrap();
        let alpha = 25.0f64.to_radians();
        let expect = -2.0 * (alpha.cos() / alpha.sin())
            * (1.0 / 0.7f64.powi(2) - 1.0 / (0.7 + alpha.sin()).powi(2));
        assert_relative_eq!(f, expect, max_relative = 1e-14);
        assert!(f < 0.0);
    }

    #[test]
    fn wings_table_correction_consistent() {
        let ep = inv_square();
        for alpha in [5f64.to_radians(), 25f64.to_radians(), 1.0] {
            let g = GeometrySpec::WingsThick { length: 1.0, alpha };
            for z in [0.01, 0.3] {
                let full = full_force(&g, z, &ep, None).unwrap();
                let table = pfa_force(&g, z, &ep).unwrap() * correction(&g, z).unwrap();
                assert_relative_eq!(full, table, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn cone_pointed_closed_form_consistency() {
        let ep = inv_square();
        let g = GeometrySpec::ConePointed {
            length: 1.0,
            alpha: PI / 6.0,
        };
        for z in [0.02, 0.3, 2.0] {
            let full = full_force(&g, z, &ep, None).unwrap();
            let table = pfa_force(&g, z, &ep).unwrap() * correction(&g, z).unwrap();
            assert_relative_eq!(full, table, max_relative = 1e-12);
            let numeric = full_force(&g, z, &Opaque(ep), None).unwrap();
            assert_relative_eq!(full, numeric, max_relative = 1e-7);
        }
    }

    #[test]
    fn cone_pointed_general_exponents() {
        // n = 2.5 closed branch against direct quadrature
        let ep = PowerLawEnergy::new(0.7, 2.5).unwrap();
        let g = GeometrySpec::ConePointed {
            length: 2.0,
            alpha: 0.4,
        };
        for z in [0.1, 1.0] {
            let closed = full_force(&g, z, &ep, None).unwrap();
            let numeric = full_force(&g, z, &Opaque(ep), None).unwrap();
            assert_relative_eq!(closed, numeric, max_relative = 1e-7);
            assert!(closed < 0.0);
        }
        // n = 1 logarithmic branch
        let f = force_cone_pointed_power(2.0, 0.4, 1.0, 0.7, 1.0).unwrap();
        let ep1 = Opaque(PowerLawEnergy::new(0.7, 1.0).unwrap());
        let g1 = full_force(&g, 1.0, &ep1, None).unwrap();
        assert_relative_eq!(f, g1, max_relative = 1e-7);
        assert!(f < 0.0);
    }

    #[test]
    fn cone_tip_reference_values() {
        let ep = inv_square();
        // frozen from an independent quadrature of the composite profile
        let f = force_cone_spherical_tip(1.0, 1.0, PI / 4.0, 1.0, &ep).unwrap();
        assert_relative_eq!(f, -4.9390858158, max_relative = 1e-9);
        let cap = force_cone_spherical_tip(0.0, 1.0, PI / 4.0, 0.5, &ep).unwrap();
        assert_relative_eq!(cap, -13.42374222, max_relative = 1e-8);
    }

    #[test]
    fn cone_tip_zero_aperture_is_sphere() {
        let ep = inv_square();
        for z in [0.1, 1.0, 5.0] {
            let tip = force_cone_spherical_tip(3.0, 1.0, 1e-9, z, &ep).unwrap();
            let sphere = full_force(
                &GeometrySpec::SphereSubstrate { radius: 1.0 },
                z,
                &ep,
                None,
            )
            .unwrap();
            assert_relative_eq!(tip, sphere, max_relative = 1e-7);
        }
    }

    #[test]
    fn cone_tip_approaches_infinite_cone_from_below() {
        let ep = inv_square();
        let alpha = PI / 4.0;
        for x in [0.1, 0.5, 1.0, 3.0] {
            let limit = force_cone_spherical_tip(f64::INFINITY, 1.0, alpha, x, &ep).unwrap();
            let mut prev_gap = f64::INFINITY;
            for lam in [2.0, 8.0, 32.0] {
                let f = force_cone_spherical_tip(lam, 1.0, alpha, x, &ep).unwrap();
                assert!(f.abs() < limit.abs(), "finite cone must stay below the limit");
                let gap = limit.abs() - f.abs();
                assert!(gap < prev_gap, "gap must shrink as the cone grows");
                prev_gap = gap;
            }
        }
    }

    #[test]
    fn cone_tip_requires_inverse_square_kernel() {
        let ep = PowerLawEnergy::new(1.0, 2.5).unwrap();
        assert!(matches!(
            force_cone_spherical_tip(1.0, 1.0, 0.5, 1.0, &ep),
            Err(Error::Unsupported(_))
        ));
        let opaque = Opaque(inv_square());
        assert!(force_cone_spherical_tip(1.0, 1.0, 0.5, 1.0, &opaque).is_err());
        // but a hint through full_force unlocks it
        let g = GeometrySpec::ConeSphericalTip {
            length: 1.0,
            tip_radius: 1.0,
            alpha: 0.5,
        };
        let hinted = full_force(&g, 1.0, &opaque, Some(2.0)).unwrap();
        let declared = full_force(&g, 1.0, &inv_square(), None).unwrap();
        assert_relative_eq!(hinted, declared, max_relative = 1e-14);
    }

    #[test]
    fn epsilon_leading_reference_values() {
        let x = 0.01;
        let sphere = GeometrySpec::SphereSubstrate { radius: 1.0 };
        assert_eq!(epsilon_leading(&sphere, x).unwrap(), -0.01);
        let cone = GeometrySpec::ConePointed {
            length: 1.0,
            alpha: 0.3,
        };
        assert_eq!(epsilon_leading(&cone, x).unwrap(), -0.02);
        let tilted = GeometrySpec::CubeTilted {
            side: 1.0,
            alpha: PI / 4.0,
        };
        assert_relative_eq!(
            epsilon_leading(&tilted, x).unwrap(),
            -2.0 * x * x,
            max_relative = 1e-12
        );
        let cyl = GeometrySpec::CylinderSubstrate {
            radius: 1.0,
            length: 1.0,
        };
        assert_eq!(epsilon_leading(&cyl, x).unwrap(), -x / 4.0);
        assert!(epsilon_leading(
            &GeometrySpec::ConeSphericalTip {
                length: 1.0,
                tip_radius: 1.0,
                alpha: 0.5
            },
            x
        )
        .is_err());
    }

    #[test]
    fn expansions_match_corrections_at_small_gap() {
        let variants = [
            GeometrySpec::SphereSubstrate { radius: 1.0 },
            GeometrySpec::CylinderSubstrate {
                radius: 1.0,
                length: 1.0,
            },
            GeometrySpec::ConePointed {
                length: 1.0,
                alpha: 0.5,
            },
            GeometrySpec::CubeTilted {
                side: 1.0,
                alpha: PI / 9.0,
            },
        ];
        for g in variants {
            let x = 1e-3;
            let ratio =
                (correction(&g, x).unwrap() - 1.0) / epsilon_leading(&g, x).unwrap();
            assert!(
                (ratio - 1.0).abs() < 0.01,
                "{}: ratio {ratio}",
                g.name()
            );
        }
    }

    #[test]
    fn force_from_projection_reference_cases() {
        let ep = inv_square();
        let r = 1.0;
        // linear sphere density reproduces the closed form
        let f = force_from_projection(|t| 2.0 * PI * (r - t), r, 0.3, &ep).unwrap();
        let closed = 2.0 * PI * r * ep.energy(0.3).unwrap() / (1.0 + 0.3 / r);
        assert_relative_eq!(f, closed, max_relative = 1e-8);
        // constant density: pure boundary difference
        let g = force_from_projection(|_| 3.0, 2.0, 0.5, &ep).unwrap();
        let expect = 3.0 * (ep.energy(0.5).unwrap() - ep.energy(2.5).unwrap());
        assert_relative_eq!(g, expect, max_relative = 1e-8);
        // empty density
        assert_eq!(
            force_from_projection(|_| 0.0, 1.0, 0.5, &ep).unwrap(),
            0.0
        );
    }

    #[test]
    fn general_interaction_reference_cases() {
        let s = 32.0 * PI * PI; // makes E_p(z) = −1/z²
        // half spaces: E_p itself
        assert_relative_eq!(
            general_interaction(2, 1.0, 1.0, 2.0, s).unwrap(),
            -0.25,
            max_relative = 1e-14
        );
        // equal spheres: πRz·E_p(z)
        let r = 2.0;
        let z = 0.5;
        assert_relative_eq!(
            general_interaction(0, r, r, z, s).unwrap(),
            PI * r * z * (-1.0 / (z * z)),
            max_relative = 1e-14
        );
        // sphere above substrate: 2πRz·E_p(z)
        assert_relative_eq!(
            general_interaction(0, r, f64::INFINITY, z, s).unwrap(),
            2.0 * PI * r * z * (-1.0 / (z * z)),
            max_relative = 1e-14
        );
        // cylinder above substrate: Γ(3/2)·√(2πRz)·E_p(z)
        assert_relative_eq!(
            general_interaction(1, r, f64::INFINITY, z, s).unwrap(),
            (PI.sqrt() / 2.0) * (2.0 * PI * r * z).sqrt() * (-1.0 / (z * z)),
            max_relative = 1e-14
        );
        assert!(general_interaction(3, 1.0, 1.0, 1.0, s).is_err());
    }

    #[test]
    fn sheet_limit_scalings() {
        let p = SheetParams {
            sheet_scale: 10.0,
            delta: 0.01,
        };
        let sphere = SheetGeometry::SphereSubstrate { radius: 5.0 };
        let f1 = sheet2d_limit(&sphere, &p, 0.2, SheetBranch::Exact).unwrap();
        let f2 = sheet2d_limit(&sphere, &p, 0.4, SheetBranch::Exact).unwrap();
        assert!(f1 < 0.0);
        assert_relative_eq!(f2 / f1, 2f64.powf(-2.5), max_relative = 1e-13);

        let wings = SheetGeometry::Wings {
            length: 1.0,
            alpha: 25f64.to_radians(),
        };
        // exact approaches the small-gap asymptote at tiny x
        let x = 1e-4;
        let exact = sheet2d_limit(&wings, &p, x, SheetBranch::Exact).unwrap();
        let asym = sheet2d_limit(&wings, &p, x, SheetBranch::SmallGap).unwrap();
        assert_relative_eq!(exact, asym, max_relative = 1e-6);
        // and the large-gap asymptote at large x
        let x = 1e4;
        let exact = sheet2d_limit(&wings, &p, x, SheetBranch::Exact).unwrap();
        let asym = sheet2d_limit(&wings, &p, x, SheetBranch::LargeGap).unwrap();
        assert_relative_eq!(exact, asym, max_relative = 1e-3);
        // zero-angle wings collapse onto the small-angle branch
        let flat = SheetGeometry::Wings {
            length: 1.0,
            alpha: 0.0,
        };
        assert_eq!(
            sheet2d_limit(&flat, &p, 0.3, SheetBranch::Exact).unwrap(),
            sheet2d_limit(&flat, &p, 0.3, SheetBranch::SmallAngle).unwrap()
        );
    }

    #[test]
    fn universal_scaled_product_is_size_free() {
        let ep = inv_square();
        let geoms = [
            GeometrySpec::SphereSubstrate { radius: 1.0 },
            GeometrySpec::SphereSphere { radius: 1.0 },
            GeometrySpec::CylinderSubstrate {
                radius: 1.0,
                length: 1.0,
            },
            GeometrySpec::ConePointed {
                length: 1.0,
                alpha: 0.5,
            },
            GeometrySpec::WingsThick {
                length: 1.0,
                alpha: 0.4,
            },
        ];
        for g in geoms {
            let big = g.scale_lengths(2.0).unwrap();
            for x in [0.1, 1.0] {
                let p1 = g.force_scale()
                    * full_force(&g, x * g.gap_scale(), &ep, None).unwrap();
                let p2 = big.force_scale()
                    * full_force(&big, x * big.gap_scale(), &ep, None).unwrap();
                assert_relative_eq!(p1, p2, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn forces_negative_and_decaying() {
        let ep = inv_square();
        let geoms = [
            GeometrySpec::SphereSubstrate { radius: 1.0 },
            GeometrySpec::OblateSubstrate {
                polar: 1.0,
                gamma: 2.0,
            },
            GeometrySpec::ProlateProlate {
                polar: 1.0,
                gamma: 3.0,
            },
            GeometrySpec::CylinderCylinder {
                radius: 1.0,
                length: 2.0,
            },
            GeometrySpec::StandingCylinder {
                radius: 1.0,
                length: 1.0,
            },
            GeometrySpec::CubeTilted {
                side: 1.0,
                alpha: 0.3,
            },
            GeometrySpec::ConePointed {
                length: 1.0,
                alpha: 0.6,
            },
            GeometrySpec::ConeSphericalTip {
                length: 2.0,
                tip_radius: 1.0,
                alpha: 0.6,
            },
            GeometrySpec::WingsThick {
                length: 1.0,
                alpha: 0.2,
            },
        ];
        for g in geoms {
            let mut prev = f64::INFINITY;
            for x in [0.01, 0.1, 1.0, 10.0] {
                let f = full_force(&g, x * g.gap_scale(), &ep, None).unwrap();
                assert!(f < 0.0, "{}: force {f} at x={x}", g.name());
                assert!(f.abs() < prev, "{}: |F| must decay", g.name());
                prev = f.abs();
            }
        }
    }

    #[test]
    fn geometry_validation_rejects_bad_parameters() {
        assert!(GeometrySpec::SphereSubstrate { radius: 0.0 }
            .validate()
            .is_err());
        assert!(GeometrySpec::OblateSubstrate {
            polar: 1.0,
            gamma: 0.5
        }
        .validate()
        .is_err());
        assert!(GeometrySpec::CubeTilted {
            side: 1.0,
            alpha: 2.0
        }
        .validate()
        .is_err());
        assert!(GeometrySpec::ConePointed {
            length: 1.0,
            alpha: PI / 2.0
        }
        .validate()
        .is_err());
        assert!(GeometrySpec::WingsThin {
            length: 1.0,
            alpha: 0.1,
            thickness: -1.0
        }
        .validate()
        .is_err());
        assert!(GeometrySpec::ConeSphericalTip {
            length: -1.0,
            tip_radius: 1.0,
            alpha: 0.5
        }
        .validate()
        .is_err());
        // infinite cone length is a valid limit
        assert!(GeometrySpec::ConeSphericalTip {
            length: f64::INFINITY,
            tip_radius: 1.0,
            alpha: 0.5
        }
        .validate()
        .is_ok());
    }
}
