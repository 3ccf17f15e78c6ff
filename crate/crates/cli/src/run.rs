//! Sweep execution behind each subcommand. Rows are computed in parallel
//! but collected in grid order, so identical configurations produce
//! byte-identical output.

use casimir_pfa::oracle;
use casimir_pfa::planar::{local_exponent, EnergyPerArea, PowerLawEnergy};
use casimir_pfa::shapes::{self, GeometrySpec};
use casimir_pfa::validate;
use casimir_pfa::{Error, Result};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::curve::{CurveRow, ForceCurve};

fn rel_dev(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        (a - b).abs()
    } else {
        ((a - b) / b).abs()
    }
}

/// Planar energy per area over the sweep grid (gap w in nm). With
/// `with_exponent`, each row also carries the local log-log slope.
pub fn planar_curves(config: &RunConfig, with_exponent: bool) -> Result<Vec<ForceCurve>> {
    let (kernel, materials) =
        config
            .kernel
            .build(&config.stack, &config.materials, &config.tolerances)?;
    let ep = kernel.as_ref();
    let grid = config.sweep.grid()?;
    let tol = config.tolerances.quadrature;
    let magnitude = config.output.magnitude;
    let rows = grid
        .par_iter()
        .map(|&w| {
            let e = ep.energy(w)?;
            let zeta = match with_exponent {
                true => Some(local_exponent(ep, w, 0.05)?),
                false => None,
            };
            Ok(CurveRow {
                abscissa: w,
                value: if magnitude { e.abs() } else { e },
                abs_value: e.abs(),
                rel_error_estimate: tol,
                local_exponent: zeta,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![ForceCurve::new(
        "planar",
        "planar",
        materials,
        "w [nm]",
        "E_p [eV/nm^2]",
        tol,
        rows,
    )?])
}

/// Force sweeps for the configured geometry (or batch of geometries).
/// Universal mode emits scaled force against scaled gap; otherwise the
/// absolute force against the gap in nm.
pub fn force_curves(config: &RunConfig, compare_oracle: bool) -> Result<Vec<ForceCurve>> {
    let (kernel, materials) =
        config
            .kernel
            .build(&config.stack, &config.materials, &config.tolerances)?;
    let ep = kernel.as_ref();
    let grid = config.sweep.grid()?;
    let geometries = config.geometry.expand()?;
    let mut curves = Vec::with_capacity(geometries.len());
    for (label, geom) in &geometries {
        let curve = if config.sweep.universal {
            universal_curve(geom, label, ep, &materials, &grid, config, compare_oracle)?
        } else {
            absolute_curve(geom, label, ep, &materials, &grid, config, compare_oracle)?
        };
        curves.push(curve);
    }
    Ok(curves)
}

/// The scaled-force curve is computed on the unit-size variant, so two
/// runs differing only in absolute size are byte-identical.
fn universal_curve(
    geom: &GeometrySpec,
    label: &str,
    ep: &(dyn EnergyPerArea + Send + Sync),
    materials: &str,
    grid: &[f64],
    config: &RunConfig,
    compare_oracle: bool,
) -> Result<ForceCurve> {
    let zeta = ep.power_law_exponent().ok_or_else(|| {
        Error::Config(
            "universal scaling needs a power-law kernel (bare two-half-space \
             stack, power, or sheet); a coated stack has no single exponent"
                .into(),
        )
    })?;
    let power = PowerLawEnergy::new(-ep.energy(1.0)?, zeta)?;
    let unit = geom.unit_scaled()?;
    let profile = match compare_oracle {
        true => Some(oracle::profile_from_geometry(&unit)?),
        false => None,
    };
    let tol = config.tolerances.quadrature;
    let magnitude = config.output.magnitude;
    let gap = unit.gap_scale();
    let force_scale = unit.force_scale();
    let rows = grid
        .par_iter()
        .map(|&x| {
            let z = x * gap;
            let f = shapes::full_force(&unit, z, &power, None)?;
            let value = force_scale * f;
            let rel = match &profile {
                Some(p) => rel_dev(f, oracle::force(p, z, &power, config.tolerances.oracle)?),
                None => tol,
            };
            Ok(CurveRow {
                abscissa: x,
                value: if magnitude { value.abs() } else { value },
                abs_value: value.abs(),
                rel_error_estimate: rel,
                local_exponent: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ForceCurve::new(
        geom.name(),
        label,
        materials,
        geom.scaled_gap_label(),
        format!("{} [eV]", geom.scaled_force_label()),
        tol,
        rows,
    )
}

fn absolute_curve(
    geom: &GeometrySpec,
    label: &str,
    ep: &(dyn EnergyPerArea + Send + Sync),
    materials: &str,
    grid: &[f64],
    config: &RunConfig,
    compare_oracle: bool,
) -> Result<ForceCurve> {
    let profile = match compare_oracle {
        true => Some(oracle::profile_from_geometry(geom)?),
        false => None,
    };
    let tol = config.tolerances.quadrature;
    let magnitude = config.output.magnitude;
    let rows = grid
        .par_iter()
        .map(|&z| {
            let f = shapes::full_force(geom, z, ep, None)?;
            let rel = match &profile {
                Some(p) => rel_dev(f, oracle::force(p, z, ep, config.tolerances.oracle)?),
                None => tol,
            };
            Ok(CurveRow {
                abscissa: z,
                value: if magnitude { f.abs() } else { f },
                abs_value: f.abs(),
                rel_error_estimate: rel,
                local_exponent: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ForceCurve::new(
        geom.name(),
        label,
        materials,
        "z [nm]",
        "F [eV/nm]",
        tol,
        rows,
    )
}

/// Correction-factor curves over the sweep grid: `corr_factor(zeta, x)`
/// when an exponent is given, otherwise the configured geometry's closed
/// form. Exact expressions, so the error estimate is 0.
pub fn corr_curves(config: &RunConfig, zeta: Option<f64>) -> Result<Vec<ForceCurve>> {
    let grid = config.sweep.grid()?;
    if let Some(zt) = zeta {
        let rows = grid
            .iter()
            .map(|&x| {
                let c = shapes::corr_factor(zt, x)?;
                Ok(CurveRow {
                    abscissa: x,
                    value: c,
                    abs_value: c.abs(),
                    rel_error_estimate: 0.0,
                    local_exponent: None,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(vec![ForceCurve::new(
            "corr-factor",
            format!("zeta={zt}"),
            "any power-law kernel",
            "x = z/Delta",
            "Corr(zeta, x)",
            0.0,
            rows,
        )?]);
    }
    config
        .geometry
        .expand()?
        .iter()
        .map(|(label, geom)| {
            let rows = grid
                .iter()
                .map(|&x| {
                    let c = shapes::correction(geom, x)?;
                    Ok(CurveRow {
                        abscissa: x,
                        value: c,
                        abs_value: c.abs(),
                        rel_error_estimate: 0.0,
                        local_exponent: None,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            ForceCurve::new(
                geom.name(),
                label,
                "inverse-square kernel",
                geom.scaled_gap_label(),
                "correction factor",
                0.0,
                rows,
            )
        })
        .collect()
}

/// One line per variant: scaled-gap definition, correction factor and its
/// leading small-x term at the given x, and the scaled-force column name.
pub fn table1_report(x: f64) -> Result<String> {
    shapes::corr_factor(2.0, x)
        .map_err(|_| Error::Config(format!("the summary needs x > 0, got {x}")))?;
    let mut out = format!("closed-form corrections at x = {x}\n\n");
    out.push_str(&format!(
        "{:<20} {:<6} {:>14} {:>14}   {}\n",
        "variant", "gap", "Corr(x)", "Corr(x)-1 lead", "scaled force"
    ));
    for geom in validate::standard_variants() {
        let corr = match shapes::correction(&geom, x) {
            Ok(c) => format!("{c:.8}"),
            Err(_) => "-".into(),
        };
        let eps = match shapes::epsilon_leading(&geom, x) {
            Ok(e) => format!("{e:.3e}"),
            Err(_) => "-".into(),
        };
        out.push_str(&format!(
            "{:<20} {:<6} {:>14} {:>14}   {}\n",
            geom.name(),
            geom.scaled_gap_label(),
            corr,
            eps,
            geom.scaled_force_label()
        ));
    }
    out.push_str(
        "\n'-' marks variants without a single closed form; the force \
         commands evaluate those numerically.\n",
    );
    Ok(out)
}

/// Run the acceptance checks, optionally filtered by id or name fragment.
/// Returns the report text and the process exit code (0 all passed,
/// 1 any failure, 2 nothing matched).
pub fn validate_report(only: Option<&str>) -> (String, u8) {
    // "table1" selects the per-variant expansion checks, matching the
    // subcommand that prints those closed forms
    let filter = match only {
        Some("table1") => Some("small-gap"),
        other => other,
    };
    let reports = validate::run_matching(filter);
    if reports.is_empty() {
        return (
            format!("no criterion matches '{}'\n", only.unwrap_or("")),
            2,
        );
    }
    let mut out = String::new();
    let mut failed = 0usize;
    for r in &reports {
        out.push_str(&r.summary_line());
        out.push('\n');
        if !r.passed {
            failed += 1;
        }
    }
    out.push_str(&format!(
        "{}/{} criteria passed\n",
        reports.len() - failed,
        reports.len()
    ));
    (out, if failed > 0 { 1 } else { 0 })
}
