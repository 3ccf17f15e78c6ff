//! Independent numerical check of the closed-form shape forces.
//!
//! A [`GapProfile`] describes how the gap opens away from the point of
//! closest approach; potential and force are then plain quadratures of the
//! planar kernel over that profile, with no knowledge of the closed forms
//! in [`crate::shapes`]. The force is computed twice, through the kernel
//! derivative and through a finite-difference stencil on the potential,
//! and the two answers must agree before either is returned.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::planar::EnergyPerArea;
use crate::quad::integrate_result;
use crate::shapes::GeometrySpec;

type Curve = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// One straight strip of a translationally invariant profile: the gap above
/// the strip coordinate `u ∈ [0, u_max]` is `z + offset(u)`, taken `weight`
/// times (symmetric halves), with an optional parameterization jacobian
/// (`du` measure when absent).
pub struct Segment {
    offset: Curve,
    jacobian: Option<Curve>,
    u_max: f64,
    weight: f64,
}

impl Segment {
    pub fn new(
        offset: impl Fn(f64) -> f64 + Send + Sync + 'static,
        u_max: f64,
        weight: f64,
    ) -> Result<Self> {
        Self::build(Box::new(offset), None, u_max, weight)
    }

    /// A segment in a smoother parameterization: the strip integral is
    /// `∫ jacobian(s)·E(z + offset(s)) ds` over `[0, u_max]`.
    pub fn with_jacobian(
        offset: impl Fn(f64) -> f64 + Send + Sync + 'static,
        jacobian: impl Fn(f64) -> f64 + Send + Sync + 'static,
        u_max: f64,
        weight: f64,
    ) -> Result<Self> {
        Self::build(Box::new(offset), Some(Box::new(jacobian)), u_max, weight)
    }

    fn build(offset: Curve, jacobian: Option<Curve>, u_max: f64, weight: f64) -> Result<Self> {
        if !(u_max.is_finite() && u_max > 0.0) {
            return Err(Error::Validation(format!(
                "segment extent must be positive and finite, got {u_max}"
            )));
        }
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::Validation(format!(
                "segment weight must be positive and finite, got {weight}"
            )));
        }
        let seg = Segment {
            offset,
            jacobian,
            u_max,
            weight,
        };
        sample_offsets(&seg.offset, seg.u_max)?;
        if let Some(j) = &seg.jacobian {
            for i in 0..=64 {
                let u = seg.u_max * i as f64 / 64.0;
                if !j(u).is_finite() {
                    return Err(Error::Validation(format!(
                        "segment jacobian is not finite at u = {u}"
                    )));
                }
            }
        }
        Ok(seg)
    }
}

/// Gap profile of an object above a substrate (or of a symmetric pair,
/// folded onto the line of centers): every surface element sits at gap
/// `z + offset`, with `offset ≥ 0` and zero at closest approach.
pub enum GapProfile {
    /// Rotationally symmetric: surface measure `2πρ dρ`, gap offset a
    /// function of the radial coordinate `ρ ∈ [0, rho_max]`.
    Axisymmetric { offset: Curve, rho_max: f64 },
    /// Invariant along a horizontal axis of length `length`; the cross
    /// section is a set of strips.
    Translational { segments: Vec<Segment>, length: f64 },
    /// Explicit projection density `g(t) = dS/dw` on `[0, delta]` plus a
    /// flat patch of area `flat_area` at contact distance (a point mass of
    /// the density at zero offset).
    ProjectionDensity {
        flat_area: f64,
        g: Curve,
        delta: f64,
    },
}

fn sample_offsets(offset: &Curve, extent: f64) -> Result<()> {
    let slack = -1e-12 * extent.max(1.0);
    for i in 0..=128 {
        let u = extent * i as f64 / 128.0;
        let off = offset(u);
        if !off.is_finite() {
            return Err(Error::Validation(format!(
                "profile offset is not finite at coordinate {u}"
            )));
        }
        if off < slack {
            return Err(Error::Validation(format!(
                "profile offset is negative ({off}) at coordinate {u}; \
                 offsets are measured from the closest-approach plane"
            )));
        }
    }
    Ok(())
}

impl GapProfile {
    pub fn axisymmetric(
        offset: impl Fn(f64) -> f64 + Send + Sync + 'static,
        rho_max: f64,
    ) -> Result<Self> {
        if !(rho_max.is_finite() && rho_max > 0.0) {
            return Err(Error::Validation(format!(
                "profile radius must be positive and finite, got {rho_max}"
            )));
        }
        let offset: Curve = Box::new(offset);
        sample_offsets(&offset, rho_max)?;
        Ok(GapProfile::Axisymmetric { offset, rho_max })
    }

    pub fn translational(segments: Vec<Segment>, length: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Validation(format!(
                "profile length must be positive and finite, got {length}"
            )));
        }
        if segments.is_empty() {
            return Err(Error::Validation(
                "a translational profile needs at least one segment".into(),
            ));
        }
        Ok(GapProfile::Translational { segments, length })
    }

    pub fn projection_density(
        flat_area: f64,
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
        delta: f64,
    ) -> Result<Self> {
        if !(flat_area.is_finite() && flat_area >= 0.0) {
            return Err(Error::Validation(format!(
                "flat area must be finite and >= 0, got {flat_area}"
            )));
        }
        if !(delta.is_finite() && delta >= 0.0) {
            return Err(Error::Validation(format!(
                "density support must be finite and >= 0, got {delta}"
            )));
        }
        let g: Curve = Box::new(g);
        if delta > 0.0 {
            // interior samples only: densities may blow up integrably at 0
            for i in 1..=128 {
                let t = delta * i as f64 / 128.0;
                let v = g(t);
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::Validation(format!(
                        "projection density must be finite and >= 0, got {v} at t = {t}"
                    )));
                }
            }
        }
        Ok(GapProfile::ProjectionDensity { flat_area, g, delta })
    }

    /// Shift the whole profile away from the substrate by `c` (gap offset
    /// raised everywhere); potentials obey
    /// `potential(shifted, z) = potential(original, z + c)`.
    pub fn shifted(self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::Validation(format!(
                "profile shift must be finite and >= 0, got {c}"
            )));
        }
        Ok(match self {
            GapProfile::Axisymmetric { offset, rho_max } => GapProfile::Axisymmetric {
                offset: Box::new(move |rho| offset(rho) + c),
                rho_max,
            },
            GapProfile::Translational { segments, length } => GapProfile::Translational {
                segments: segments
                    .into_iter()
                    .map(|s| Segment {
                        offset: {
                            let off = s.offset;
                            Box::new(move |u| off(u) + c)
                        },
                        jacobian: s.jacobian,
                        u_max: s.u_max,
                        weight: s.weight,
                    })
                    .collect(),
                length,
            },
            profile @ GapProfile::ProjectionDensity { .. } => {
                // a point mass cannot be expressed as a shifted density here
                if c != 0.0 {
                    return Err(Error::Unsupported(
                        "shifting a projection-density profile is not supported".into(),
                    ));
                }
                profile
            }
        })
    }
}

fn check_eval(z: f64, tol: f64) -> Result<()> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::Domain(format!(
            "separation must be positive and finite, got {z}"
        )));
    }
    if !(tol.is_finite() && tol > 0.0 && tol < 1.0) {
        return Err(Error::Domain(format!(
            "tolerance must lie in (0, 1), got {tol}"
        )));
    }
    Ok(())
}

/// Interaction potential `∫ dS·E(z + offset)` in the units of the kernel
/// times nm² (eV for axisymmetric and density profiles, eV per full length
/// for translational ones).
pub fn potential(
    profile: &GapProfile,
    z: f64,
    ep: &dyn EnergyPerArea,
    tol: f64,
) -> Result<f64> {
    check_eval(z, tol)?;
    integrate_profile(profile, z, tol, &|w| ep.energy(w))
}

/// The same surface integral applied to an arbitrary gap function; the
/// force paths reuse it with the kernel derivative.
fn integrate_profile(
    profile: &GapProfile,
    z: f64,
    tol: f64,
    kernel: &dyn Fn(f64) -> Result<f64>,
) -> Result<f64> {
    match profile {
        GapProfile::Axisymmetric { offset, rho_max } => integrate_result(
            |rho| Ok(2.0 * PI * rho * kernel(z + offset(rho).max(0.0))?),
            0.0,
            *rho_max,
            tol,
        ),
        GapProfile::Translational { segments, length } => {
            let mut sum = 0.0;
            for seg in segments {
                let val = integrate_result(
                    |u| {
                        let jac = seg.jacobian.as_ref().map_or(1.0, |j| j(u));
                        Ok(jac * kernel(z + (seg.offset)(u).max(0.0))?)
                    },
                    0.0,
                    seg.u_max,
                    tol,
                )?;
                sum += seg.weight * val;
            }
            Ok(length * sum)
        }
        GapProfile::ProjectionDensity { flat_area, g, delta } => {
            let mut total = flat_area * kernel(z)?;
            if *delta > 0.0 {
                total += integrate_result(|t| Ok(g(t) * kernel(z + t)?), 0.0, *delta, tol)?;
            }
            Ok(total)
        }
    }
}

/// Force `−dV/dz` computed two independent ways: through the kernel
/// derivative under the integral, and through a five-point stencil on the
/// potential. Returns both `(derivative path, stencil path)`.
pub fn force_paths(
    profile: &GapProfile,
    z: f64,
    ep: &dyn EnergyPerArea,
    tol: f64,
) -> Result<(f64, f64)> {
    check_eval(z, tol)?;
    let analytic = -integrate_profile(profile, z, tol, &|w| ep.derivative(w))?;

    // the stencil needs tighter potentials: quadrature noise is amplified
    // by 1/h in the difference
    let h = z * 1e-3;
    let fine = (tol * 1e-3).max(5e-14);
    let mut v = [0.0; 4];
    for (i, step) in [-2.0, -1.0, 1.0, 2.0].into_iter().enumerate() {
        v[i] = potential(profile, z + step * h, ep, fine)?;
    }
    let stencil = -(v[0] - 8.0 * v[1] + 8.0 * v[2] - v[3]) / (12.0 * h);
    Ok((analytic, stencil))
}

/// Attractive force on the object, with the two internal routes required
/// to agree to `10·tol` before the (more accurate) derivative-path value
/// is returned.
pub fn force(profile: &GapProfile, z: f64, ep: &dyn EnergyPerArea, tol: f64) -> Result<f64> {
    let (analytic, stencil) = force_paths(profile, z, ep, tol)?;
    let scale = analytic.abs().max(stencil.abs());
    if scale > 0.0 && (analytic - stencil).abs() > 10.0 * tol * scale {
        return Err(Error::Numerical(format!(
            "force paths disagree: derivative route {analytic:e} vs \
             stencil route {stencil:e} at z = {z} (gate 10x{tol:e})"
        )));
    }
    Ok(analytic)
}

/// The gap profile of a built-in geometry, constructed from its surface
/// shape alone (no reference to the closed-form corrections).
pub fn profile_from_geometry(geom: &GeometrySpec) -> Result<GapProfile> {
    geom.validate()?;
    use GeometrySpec::*;
    match *geom {
        SphereSubstrate { radius } => {
            let r = radius;
            GapProfile::axisymmetric(
                move |rho| r - (r * r - rho * rho).max(0.0).sqrt(),
                r,
            )
        }
        SphereSphere { radius } => {
            let r = radius;
            GapProfile::axisymmetric(
                move |rho| 2.0 * (r - (r * r - rho * rho).max(0.0).sqrt()),
                r,
            )
        }
        OblateSubstrate { polar, gamma } => spheroid_profile(polar, gamma * polar, 1.0),
        ProlateSubstrate { polar, gamma } => spheroid_profile(polar, polar / gamma, 1.0),
        OblateOblate { polar, gamma } => spheroid_profile(polar, gamma * polar, 2.0),
        ProlateProlate { polar, gamma } => spheroid_profile(polar, polar / gamma, 2.0),
        CylinderSubstrate { radius, length } => {
            lying_cylinder_profile(radius, length, 1.0)
        }
        CylinderCylinder { radius, length } => lying_cylinder_profile(radius, length, 2.0),
        StandingCylinder { radius, .. } => {
            GapProfile::projection_density(PI * radius * radius, |_| 0.0, 0.0)
        }
        CubeStraight { side } => GapProfile::projection_density(side * side, |_| 0.0, 0.0),
        CubeTilted { side, alpha } => {
            let (s, c) = alpha.sin_cos();
            let (ts, tc) = (alpha.tan(), c / s);
            let segs = vec![
                Segment::new(move |u| u * ts, side * c, 1.0)?,
                Segment::new(move |u| u * tc, side * s, 1.0)?,
            ];
            GapProfile::translational(segs, side)
        }
        ConePointed { length, alpha } => {
            let cot = 1.0 / alpha.tan();
            GapProfile::axisymmetric(move |rho| rho * cot, length * alpha.tan())
        }
        ConeSphericalTip {
            length,
            tip_radius,
            alpha,
        } => {
            if length.is_infinite() {
                return Err(Error::Unsupported(
                    "an infinite cone has no finite profile; truncate the length".into(),
                ));
            }
            let r = tip_radius;
            let s = alpha.sin();
            let rho_j = r * alpha.cos();
            let cot = 1.0 / alpha.tan();
            let rho_max = rho_j + length * alpha.tan();
            GapProfile::axisymmetric(
                move |rho| {
                    if rho <= rho_j {
                        r - (r * r - rho * rho).max(0.0).sqrt()
                    } else {
                        r * (1.0 - s) + (rho - rho_j) * cot
                    }
                },
                rho_max,
            )
        }
        WingsThick { length, alpha } | WingsThin { length, alpha, .. } => {
            if alpha == 0.0 {
                GapProfile::projection_density(2.0 * length * length, |_| 0.0, 0.0)
            } else {
                let t = alpha.tan();
                let seg = Segment::new(move |u| u * t, length * alpha.cos(), 2.0)?;
                GapProfile::translational(vec![seg], length)
            }
        }
    }
}

/// Lower half of a spheroid with vertical semi-axis `b` and horizontal
/// semi-axis `a`; `sag` = 1 for a substrate partner, 2 for the mirror pair.
fn spheroid_profile(b: f64, a: f64, sag: f64) -> Result<GapProfile> {
    GapProfile::axisymmetric(
        move |rho| {
            let q = 1.0 - (rho / a) * (rho / a);
            sag * b * (1.0 - q.max(0.0).sqrt())
        },
        a,
    )
}

/// Lying cylinder in the rim-free angular parameterization
/// `u = R sinθ, offset = sag·R(1−cosθ)`.
fn lying_cylinder_profile(radius: f64, length: f64, sag: f64) -> Result<GapProfile> {
    let r = radius;
    let seg = Segment::with_jacobian(
        move |theta: f64| sag * r * (1.0 - theta.cos()),
        move |theta: f64| r * theta.cos(),
        PI / 2.0,
        2.0,
    )?;
    GapProfile::translational(vec![seg], length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::PowerLawEnergy;
    use crate::shapes;
    use approx::assert_relative_eq;

    fn inv_square() -> PowerLawEnergy {
        PowerLawEnergy::new(1.0, 2.0).unwrap()
    }

    #[test]
    fn flat_patch_reference() {
        let p = GapProfile::projection_density(3.0, |_| 0.0, 0.0).unwrap();
        let ep = inv_square();
        let z = 0.5;
        assert_relative_eq!(
            potential(&p, z, &ep, 1e-8).unwrap(),
            3.0 * ep.energy(z).unwrap(),
            max_relative = 1e-14
        );
        // F = −A·E'(z) = −2AC/z³
        assert_relative_eq!(
            force(&p, z, &ep, 1e-8).unwrap(),
            -2.0 * 3.0 / (z * z * z),
            max_relative = 1e-12
        );
    }

    #[test]
    fn sphere_potential_log_form() {
        let r = 1.0;
        let p = profile_from_geometry(&GeometrySpec::SphereSubstrate { radius: r }).unwrap();
        let ep = inv_square();
        for z in [0.1, 1.0, 4.0] {
            let v = potential(&p, z, &ep, 1e-9).unwrap();
            let exact = -2.0 * PI * (r / z - (1.0 + r / z).ln());
            assert_relative_eq!(v, exact, max_relative = 1e-8);
        }
    }

    #[test]
    fn sphere_force_closed_form() {
        let r = 1.0;
        let p = profile_from_geometry(&GeometrySpec::SphereSubstrate { radius: r }).unwrap();
        let ep = inv_square();
        for z in [0.05, 0.5, 2.0] {
            let f = force(&p, z, &ep, 1e-8).unwrap();
            let closed = 2.0 * PI * r * ep.energy(z).unwrap() / (1.0 + z / r);
            assert_relative_eq!(f, closed, max_relative = 1e-7);
        }
    }

    #[test]
    fn translation_consistency() {
        let r = 1.0;
        let ep = inv_square();
        let base = profile_from_geometry(&GeometrySpec::SphereSubstrate { radius: r }).unwrap();
        let shifted = profile_from_geometry(&GeometrySpec::SphereSubstrate { radius: r })
            .unwrap()
            .shifted(0.3)
            .unwrap();
        let v1 = potential(&shifted, 0.4, &ep, 1e-9).unwrap();
        let v2 = potential(&base, 0.7, &ep, 1e-9).unwrap();
        assert_relative_eq!(v1, v2, max_relative = 1e-9);
    }

    #[test]
    fn cylinder_force_matches_closed_correction() {
        let g = GeometrySpec::CylinderSubstrate {
            radius: 1.0,
            length: 1.0,
        };
        let p = profile_from_geometry(&g).unwrap();
        let ep = inv_square();
        for z in [0.1, 0.7] {
            let f = force(&p, z, &ep, 1e-8).unwrap();
            let closed = shapes::full_force(&g, z, &ep, None).unwrap();
            assert_relative_eq!(f, closed, max_relative = 1e-7);
        }
    }

    #[test]
    fn wings_force_matches_closed_form() {
        let g = GeometrySpec::WingsThick {
            length: 1.0,
            alpha: 25f64.to_radians(),
        };
        let p = profile_from_geometry(&g).unwrap();
        let ep = inv_square();
        let f = force(&p, 0.3, &ep, 1e-8).unwrap();
        let closed = shapes::full_force(&g, 0.3, &ep, None).unwrap();
        assert_relative_eq!(f, closed, max_relative = 1e-7);
    }

    #[test]
    fn cone_tip_profile_continuous_and_matching() {
        let g = GeometrySpec::ConeSphericalTip {
            length: 1.0,
            tip_radius: 1.0,
            alpha: PI / 4.0,
        };
        let p = profile_from_geometry(&g).unwrap();
        let ep = inv_square();
        let f = force(&p, 1.0, &ep, 1e-8).unwrap();
        assert_relative_eq!(f, -4.9390858158, max_relative = 1e-7);
        let closed = shapes::full_force(&g, 1.0, &ep, None).unwrap();
        assert_relative_eq!(f, closed, max_relative = 1e-7);
    }

    #[test]
    fn validation_rejects_bad_profiles() {
        assert!(GapProfile::axisymmetric(|rho| 0.5 - rho, 1.0).is_err()); // negative offsets
        assert!(GapProfile::axisymmetric(|_| f64::NAN, 1.0).is_err());
        assert!(GapProfile::axisymmetric(|rho| rho, 0.0).is_err());
        assert!(GapProfile::translational(vec![], 1.0).is_err());
        assert!(Segment::new(|u| u, -1.0, 1.0).is_err());
        assert!(GapProfile::projection_density(-1.0, |_| 0.0, 0.0).is_err());
        assert!(GapProfile::projection_density(0.0, |_| -1.0, 1.0).is_err());
    }

    #[test]
    fn zero_profile_gives_zero_force() {
        let p = GapProfile::projection_density(0.0, |_| 0.0, 0.0).unwrap();
        assert_eq!(force(&p, 1.0, &inv_square(), 1e-8).unwrap(), 0.0);
    }

    #[test]
    fn provider_errors_propagate() {
        struct Broken;
        impl EnergyPerArea for Broken {
            fn energy(&self, _: f64) -> crate::Result<f64> {
                Err(Error::Domain("broken kernel".into()))
            }
            fn derivative(&self, _: f64) -> crate::Result<f64> {
                Err(Error::Domain("broken kernel".into()))
            }
        }
        let p = profile_from_geometry(&GeometrySpec::SphereSubstrate { radius: 1.0 }).unwrap();
        assert!(matches!(
            force(&p, 1.0, &Broken, 1e-8),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn infinite_cone_has_no_profile() {
        let g = GeometrySpec::ConeSphericalTip {
            length: f64::INFINITY,
            tip_radius: 1.0,
            alpha: 0.5,
        };
        assert!(matches!(
            profile_from_geometry(&g),
            Err(Error::Unsupported(_))
        ));
    }
}
