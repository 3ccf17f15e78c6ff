//! The acceptance checks: every closed form in the crate validated against
//! an independent route, with tolerances pinned here.
//!
//! Each criterion returns a [`CriterionReport`]; the `validate` CLI
//! subcommand and the acceptance test target both run these.

use std::f64::consts::PI;

use crate::materials::DielectricModel;
use crate::oracle;
use crate::planar::{
    energy_series, local_exponent, CharacteristicSeries, EnergyPerArea, LayerStack,
    PowerLawEnergy, StackEnergy,
};
use crate::shapes::{self, GeometrySpec};

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionReport {
    pub fn summary_line(&self) -> String {
        format!(
            "criterion {:2} {:28} {}  {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.details
        )
    }
}

type Outcome = std::result::Result<String, String>;

const CRITERIA: [(usize, &str, fn() -> Outcome); 11] = [
    (1, "series-vs-quadrature", series_vs_quadrature),
    (2, "characteristic-frequencies", characteristic_frequencies),
    (3, "correction-identity", correction_identity),
    (4, "small-gap-expansions", small_gap_expansions),
    (5, "oracle-agreement", oracle_agreement),
    (6, "universal-scaling", universal_scaling),
    (7, "coating-limits", coating_limits),
    (8, "thin-film-exponent", thin_film_exponent),
    (9, "cone-tip-bound", cone_tip_bound),
    (10, "wings-consistency", wings_consistency),
    (11, "oracle-differentiation", oracle_differentiation),
];

/// Names and ids of all criteria, in execution order.
pub fn criteria() -> Vec<(usize, &'static str)> {
    CRITERIA.iter().map(|(id, name, _)| (*id, *name)).collect()
}

/// Run one criterion by id (1-based).
pub fn run_one(id: usize) -> Option<CriterionReport> {
    CRITERIA
        .iter()
        .find(|(cid, _, _)| *cid == id)
        .map(|(cid, name, f)| report(*cid, name, f()))
}

/// Run every criterion whose name contains `filter` (all when `None`; a
/// numeric filter selects by id).
pub fn run_matching(filter: Option<&str>) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .filter(|(id, name, _)| match filter {
            None => true,
            Some(f) => {
                if let Ok(n) = f.parse::<usize>() {
                    *id == n
                } else {
                    name.contains(f)
                }
            }
        })
        .map(|(id, name, f)| report(*id, name, f()))
        .collect()
}

pub fn run_all() -> Vec<CriterionReport> {
    run_matching(None)
}

fn report(id: usize, name: &'static str, outcome: Outcome) -> CriterionReport {
    match outcome {
        Ok(details) => CriterionReport {
            id,
            name,
            passed: true,
            details,
        },
        Err(details) => CriterionReport {
            id,
            name,
            passed: false,
            details,
        },
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn gold() -> DielectricModel {
    DielectricModel::gold()
}

fn vacuum() -> DielectricModel {
    DielectricModel::vacuum()
}

fn inv_square() -> PowerLawEnergy {
    PowerLawEnergy::new(1.0, 2.0).unwrap()
}

/// The representative parameter set used for cross-checks, one entry per
/// variant.
pub fn standard_variants() -> Vec<GeometrySpec> {
    vec![
        GeometrySpec::SphereSubstrate { radius: 1.0 },
        GeometrySpec::SphereSphere { radius: 1.0 },
        GeometrySpec::OblateSubstrate {
            polar: 1.0,
            gamma: 2.0,
        },
        GeometrySpec::ProlateSubstrate {
            polar: 1.0,
            gamma: 2.0,
        },
        GeometrySpec::OblateOblate {
            polar: 1.0,
            gamma: 2.0,
        },
        GeometrySpec::ProlateProlate {
            polar: 1.0,
            gamma: 2.0,
        },
        GeometrySpec::CylinderSubstrate {
            radius: 1.0,
            length: 1.0,
        },
        GeometrySpec::CylinderCylinder {
            radius: 1.0,
            length: 1.0,
        },
        GeometrySpec::StandingCylinder {
            radius: 1.0,
            length: 1.0,
        },
        GeometrySpec::CubeStraight { side: 1.0 },
        GeometrySpec::CubeTilted {
            side: 1.0,
            alpha: PI / 9.0,
        },
        GeometrySpec::ConePointed {
            length: 1.0,
            alpha: PI / 6.0,
        },
        GeometrySpec::ConeSphericalTip {
            length: 2.0,
            tip_radius: 1.0,
            alpha: 0.5,
        },
        GeometrySpec::WingsThick {
            length: 1.0,
            alpha: 25f64.to_radians(),
        },
        GeometrySpec::WingsThin {
            length: 1.0,
            alpha: 25f64.to_radians(),
            thickness: 0.01,
        },
    ]
}

/// 1: mode-sum quadrature and the characteristic-frequency series must
/// agree for the gold half spaces at w = 1, 10, 100 nm (rel 1e-6).
fn series_vs_quadrature() -> Outcome {
    let gate = 1e-6;
    let stack = LayerStack::gold_vacuum_gold();
    let series = CharacteristicSeries::compute(&gold(), &vacuum(), &gold(), 1e-8)
        .map_err(|e| format!("series failed: {e}"))?;
    let mut worst = 0.0f64;
    for w in [1.0, 10.0, 100.0] {
        let quad = stack
            .energy_per_area(w, 1e-8)
            .map_err(|e| format!("quadrature failed at w={w}: {e}"))?;
        let summed =
            energy_series(w, &series).map_err(|e| format!("series eval failed: {e}"))?;
        let r = rel(quad, summed);
        worst = worst.max(r);
        if r > gate {
            return Err(format!(
                "w={w}: quadrature {quad:e} vs series {summed:e}, rel {r:.2e} > {gate:e}"
            ));
        }
    }
    Ok(format!(
        "gold half spaces, {} terms, worst rel {worst:.2e} <= {gate:e}",
        series.terms().len()
    ))
}

/// 2: the first two characteristic frequencies of the lossless-metal half
/// spaces match their closed forms (rel 1e-8).
fn characteristic_frequencies() -> Outcome {
    let gate = 1e-8;
    let wp = crate::materials::DEFAULT_PLASMA_EV;
    let metal = DielectricModel::Drude {
        plasma: wp,
        damping: 0.0,
    };
    let sqrt2 = std::f64::consts::SQRT_2;
    let targets = [
        (1, PI * wp / (2.0 * sqrt2)),
        (2, 5.0 * PI * wp / (16.0 * sqrt2)),
    ];
    let mut details = String::new();
    for (l, expect) in targets {
        let got = crate::planar::characteristic_integral(l, &metal, &vacuum(), &metal)
            .map_err(|e| format!("l={l} failed: {e}"))?;
        let r = rel(got, expect);
        if r > gate {
            return Err(format!(
                "l={l}: got {got:.12} expected {expect:.12}, rel {r:.2e} > {gate:e}"
            ));
        }
        details.push_str(&format!("<w_{l}> rel {r:.1e}  "));
    }
    Ok(format!("{details}(gate {gate:e})"))
}

/// 3: the generic correction at exponent 2 reproduces 1/(1+x) to machine
/// precision on 50 log-spaced points in [1e-3, 10].
fn correction_identity() -> Outcome {
    let gate = 1e-14;
    let mut worst = 0.0f64;
    for i in 0..50 {
        let x = 1e-3 * 10f64.powf(4.0 * i as f64 / 49.0);
        let c = shapes::corr_factor(2.0, x).map_err(|e| format!("corr failed: {e}"))?;
        let r = rel(c, 1.0 / (1.0 + x));
        worst = worst.max(r);
        if r > gate {
            return Err(format!("x={x:e}: rel {r:.2e} > {gate:e}"));
        }
    }
    Ok(format!("50 points, worst rel {worst:.2e} <= {gate:e}"))
}

/// 4: each tabulated small-gap expansion matches its correction factor:
/// (correction - 1)/epsilon within 1% at expansion parameter 1e-3.
fn small_gap_expansions() -> Outcome {
    let mut checks: Vec<(GeometrySpec, f64)> = Vec::new();
    let x = 1e-3;
    for g in standard_variants() {
        match g {
            GeometrySpec::ConeSphericalTip { .. } | GeometrySpec::WingsThin { .. } => {}
            GeometrySpec::CubeTilted { side, .. } => {
                checks.push((
                    GeometrySpec::CubeTilted {
                        side,
                        alpha: PI / 9.0,
                    },
                    x,
                ));
                checks.push((
                    GeometrySpec::CubeTilted {
                        side,
                        alpha: PI / 4.0,
                    },
                    x,
                ));
            }
            GeometrySpec::WingsThick { length, .. } => {
                // the expansion variable is x/sin(alpha); evaluate where it
                // equals 1e-3 so the window tests the slope, not higher orders
                for alpha in [5f64.to_radians(), 25f64.to_radians()] {
                    checks.push((
                        GeometrySpec::WingsThick { length, alpha },
                        x * alpha.sin(),
                    ));
                }
            }
            other => checks.push((other, x)),
        }
    }
    let mut worst = 0.0f64;
    for (g, x) in checks {
        let eps = shapes::epsilon_leading(&g, x).map_err(|e| format!("{}: {e}", g.name()))?;
        let corr = shapes::correction(&g, x).map_err(|e| format!("{}: {e}", g.name()))?;
        if eps == 0.0 {
            if corr != 1.0 {
                return Err(format!(
                    "{}: flat-face correction must be exactly 1, got {corr}",
                    g.name()
                ));
            }
            continue;
        }
        let ratio = (corr - 1.0) / eps;
        let dev = (ratio - 1.0).abs();
        worst = worst.max(dev);
        if dev > 0.01 {
            return Err(format!(
                "{} at x={x:e}: (corr-1)/eps = {ratio:.4}, off by {dev:.2e} > 1e-2",
                g.name()
            ));
        }
    }
    Ok(format!("all tabulated expansions, worst dev {worst:.2e} <= 1e-2"))
}

/// 5: the closed-form force of every variant matches the oracle's direct
/// surface integration at x = 0.01, 0.1, 1 (rel 1e-6).
fn oracle_agreement() -> Outcome {
    let gate = 1e-6;
    let square = inv_square();
    let sheetish = PowerLawEnergy::new(0.5, 2.5).unwrap();
    let mut worst = 0.0f64;
    for g in standard_variants() {
        let ep: &dyn EnergyPerArea = if matches!(g, GeometrySpec::WingsThin { .. }) {
            &sheetish
        } else {
            &square
        };
        let profile =
            oracle::profile_from_geometry(&g).map_err(|e| format!("{}: {e}", g.name()))?;
        for x in [0.01, 0.1, 1.0] {
            let z = x * g.gap_scale();
            let closed = shapes::full_force(&g, z, ep, None)
                .map_err(|e| format!("{} closed form at x={x}: {e}", g.name()))?;
            let numeric = oracle::force(&profile, z, ep, 1e-8)
                .map_err(|e| format!("{} oracle at x={x}: {e}", g.name()))?;
            let r = rel(closed, numeric);
            worst = worst.max(r);
            if r > gate {
                return Err(format!(
                    "{} at x={x}: closed {closed:e} vs oracle {numeric:e}, rel {r:.2e} > {gate:e}",
                    g.name()
                ));
            }
        }
    }
    Ok(format!(
        "15 variants x 3 gaps, worst rel {worst:.2e} <= {gate:e}"
    ))
}

/// 6: the scaled force product is independent of absolute size: doubling
/// every length changes it by less than rel 1e-12 at fixed scaled gap.
fn universal_scaling() -> Outcome {
    let gate = 1e-12;
    let ep = inv_square();
    let mut worst = 0.0f64;
    for g in standard_variants() {
        let doubled = g
            .scale_lengths(2.0)
            .map_err(|e| format!("{}: {e}", g.name()))?;
        for x in [0.1, 1.0] {
            let p1 = g.force_scale()
                * shapes::full_force(&g, x * g.gap_scale(), &ep, None)
                    .map_err(|e| format!("{}: {e}", g.name()))?;
            let p2 = doubled.force_scale()
                * shapes::full_force(&doubled, x * doubled.gap_scale(), &ep, None)
                    .map_err(|e| format!("{} doubled: {e}", g.name()))?;
            let r = rel(p1, p2);
            worst = worst.max(r);
            if r > gate {
                return Err(format!(
                    "{} at x={x}: {p1:e} vs doubled {p2:e}, rel {r:.2e} > {gate:e}",
                    g.name()
                ));
            }
        }
    }
    Ok(format!(
        "15 variants x 2 gaps, worst rel {worst:.2e} <= {gate:e}"
    ))
}

/// 7: a coated half space interpolates between its limiting stacks: at
/// coat thickness 100·w it matches the solid-coat stack, at 1e-4·w the
/// bare substrate (rel 1e-4, w = 1 nm).
fn coating_limits() -> Outcome {
    let gate = 1e-4;
    let w = 1.0;
    let coat = DielectricModel::Drude {
        plasma: 5.0,
        damping: 0.1,
    };
    let thick = LayerStack::coated_right(gold(), vacuum(), coat.clone(), 100.0, gold())
        .map_err(|e| format!("thick stack: {e}"))?;
    let coat_solid = LayerStack::three_region(gold(), vacuum(), coat.clone())
        .map_err(|e| format!("solid-coat stack: {e}"))?;
    let thin = LayerStack::coated_right(gold(), vacuum(), coat, 1e-4, gold())
        .map_err(|e| format!("thin stack: {e}"))?;
    let bare = LayerStack::three_region(gold(), vacuum(), gold())
        .map_err(|e| format!("bare stack: {e}"))?;

    let tol = 1e-8;
    let e_thick = thick
        .energy_per_area(w, tol)
        .map_err(|e| format!("thick: {e}"))?;
    let e_solid = coat_solid
        .energy_per_area(w, tol)
        .map_err(|e| format!("solid: {e}"))?;
    let r_thick = rel(e_thick, e_solid);
    if r_thick > gate {
        return Err(format!(
            "coat 100w: {e_thick:e} vs solid coat {e_solid:e}, rel {r_thick:.2e} > {gate:e}"
        ));
    }
    let e_thin = thin
        .energy_per_area(w, tol)
        .map_err(|e| format!("thin: {e}"))?;
    let e_bare = bare
        .energy_per_area(w, tol)
        .map_err(|e| format!("bare: {e}"))?;
    let r_thin = rel(e_thin, e_bare);
    if r_thin > gate {
        return Err(format!(
            "coat 1e-4 w: {e_thin:e} vs bare {e_bare:e}, rel {r_thin:.2e} > {gate:e}"
        ));
    }
    Ok(format!(
        "thick rel {r_thick:.2e}, thin rel {r_thin:.2e} <= {gate:e}"
    ))
}

/// 8: a free-standing thin metal film shows the 5/2 power law: the local
/// exponent of the film stack reaches 2.5 +- 0.1 somewhere in
/// w/delta in [3, 300].
fn thin_film_exponent() -> Outcome {
    let delta = 1.0;
    let stack = LayerStack::new(
        gold(),
        vacuum(),
        vacuum(),
        gold(),
        vacuum(),
        0.0,
        delta,
    )
    .map_err(|e| format!("film stack: {e}"))?;
    let ep = StackEnergy::new(stack, 1e-8).map_err(|e| format!("provider: {e}"))?;
    let mut closest = (f64::INFINITY, 0.0, 0.0);
    let n = 25;
    for i in 0..n {
        let ratio = 3.0 * 100f64.powf(i as f64 / (n - 1) as f64); // 3..300
        let w = ratio * delta;
        let zeta = match local_exponent(&ep, w, 0.05) {
            Ok(z) => z,
            Err(e) => return Err(format!("local exponent failed at w/delta={ratio:.1}: {e}")),
        };
        let dev = (zeta - 2.5).abs();
        if dev < closest.0 {
            closest = (dev, ratio, zeta);
        }
        if dev <= 0.1 {
            return Ok(format!(
                "local exponent {zeta:.3} at w/delta = {ratio:.1} (gate 2.5 +- 0.1)"
            ));
        }
    }
    Err(format!(
        "exponent never reached 2.5 +- 0.1 in w/delta in [3, 300]; closest {:.3} at {:.1}",
        closest.2, closest.1
    ))
}

/// 9: the rounded-tip cone force stays below the infinite-cone limit and
/// approaches it monotonically as the cone grows (L/R = 2, 8, 32).
fn cone_tip_bound() -> Outcome {
    let ep = inv_square();
    let alpha = PI / 5.0;
    let mut min_margin = f64::INFINITY;
    for x in [0.1, 0.5, 1.0, 3.0] {
        let limit = shapes::force_cone_spherical_tip(f64::INFINITY, 1.0, alpha, x, &ep)
            .map_err(|e| format!("infinite cone: {e}"))?;
        let mut prev_gap = f64::INFINITY;
        for lam in [2.0, 8.0, 32.0] {
            let f = shapes::force_cone_spherical_tip(lam, 1.0, alpha, x, &ep)
                .map_err(|e| format!("L/R={lam}: {e}"))?;
            if f.abs() >= limit.abs() {
                return Err(format!(
                    "L/R={lam}, x={x}: |F| = {:.6e} not below the limit {:.6e}",
                    f.abs(),
                    limit.abs()
                ));
            }
            let gap = limit.abs() - f.abs();
            if gap >= prev_gap {
                return Err(format!(
                    "L/R={lam}, x={x}: gap {gap:e} did not shrink (was {prev_gap:e})"
                ));
            }
            min_margin = min_margin.min(gap / limit.abs());
            prev_gap = gap;
        }
    }
    Ok(format!(
        "below the infinite-cone curve at every sample, smallest margin {min_margin:.1e}"
    ))
}

/// 10: wings limits: zero angle doubles the straight cube (rel 1e-8);
/// small and large scaled gaps reach their leading expressions within 1%.
fn wings_consistency() -> Outcome {
    let ep = inv_square();
    let flat = GeometrySpec::WingsThick {
        length: 1.0,
        alpha: 0.0,
    };
    let cube = GeometrySpec::CubeStraight { side: 1.0 };
    for x in [0.1, 1.0] {
        let fw = shapes::full_force(&flat, x, &ep, None).map_err(|e| e.to_string())?;
        let fc = shapes::full_force(&cube, x, &ep, None).map_err(|e| e.to_string())?;
        let r = rel(fw, 2.0 * fc);
        if r > 1e-8 {
            return Err(format!(
                "alpha=0 at x={x}: wings {fw:e} vs 2x cube {:e}, rel {r:.2e} > 1e-8",
                2.0 * fc
            ));
        }
    }

    let alpha = 25f64.to_radians();
    let g = GeometrySpec::WingsThick { length: 1.0, alpha };
    let (s, c) = alpha.sin_cos();

    let x = 1e-3;
    let f = shapes::full_force(&g, x, &ep, None).map_err(|e| e.to_string())?;
    let leading = 2.0 * (c / s) * ep.energy(x).unwrap();
    let small_ratio = f / leading;
    if (small_ratio - 1.0).abs() > 0.01 {
        return Err(format!(
            "small gap: F/(2 cot a E) = {small_ratio:.4} at x={x:e}, off > 1%"
        ));
    }

    let x = 100.0;
    let f = shapes::full_force(&g, x, &ep, None).map_err(|e| e.to_string())?;
    let asym = 4.0 * c * ep.energy(x).unwrap() / x;
    let large_ratio = f / asym;
    if (large_ratio - 1.0).abs() > 0.01 {
        return Err(format!(
            "large gap: F/(4 cos a E/x) = {large_ratio:.4} at x={x}, off > 1%"
        ));
    }
    Ok(format!(
        "flat limit exact, small-gap ratio {small_ratio:.4}, large-gap ratio {large_ratio:.4}"
    ))
}

/// 11: the oracle's two differentiation routes agree within 10x the
/// requested tolerance on every built-in profile.
fn oracle_differentiation() -> Outcome {
    let tol = 1e-8;
    let gate = 10.0 * tol;
    let square = inv_square();
    let sheetish = PowerLawEnergy::new(0.5, 2.5).unwrap();
    let mut worst = 0.0f64;
    for g in standard_variants() {
        let ep: &dyn EnergyPerArea = if matches!(g, GeometrySpec::WingsThin { .. }) {
            &sheetish
        } else {
            &square
        };
        let profile =
            oracle::profile_from_geometry(&g).map_err(|e| format!("{}: {e}", g.name()))?;
        for x in [0.1, 1.0] {
            let z = x * g.gap_scale();
            let (a, b) = oracle::force_paths(&profile, z, ep, tol)
                .map_err(|e| format!("{} at x={x}: {e}", g.name()))?;
            let r = rel(a, b);
            worst = worst.max(r);
            if r > gate {
                return Err(format!(
                    "{} at x={x}: derivative {a:e} vs stencil {b:e}, rel {r:.2e} > {gate:e}",
                    g.name()
                ));
            }
        }
    }
    Ok(format!(
        "15 profiles x 2 gaps, worst rel {worst:.2e} <= {gate:e}"
    ))
}
