//! Interaction energy per unit area of layered planar structures.
//!
//! The kernel is the non-retarded (TM surface mode) interaction energy of a
//! five-region stack 1|2|3|4|5, where region 3 is the gap of variable width
//! `w` and regions 2, 4 are coatings of thickness `d2`, `d4` (either may be
//! 0 or infinite). Everything downstream (shaped objects, oracle, CLI)
//! consumes `E_p(w)` through the [`EnergyPerArea`] trait.
//!
//! Conventions: `E_p < 0` means attraction; `E_p` is in eV·nm⁻², gaps in nm,
//! frequencies in eV.

use std::cell::RefCell;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::materials::{fresnel_r, DielectricModel, Epsilon};
use crate::quad::{integrate, integrate_semi_infinite};

/// Default relative quadrature tolerance used when callers have no opinion.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Coefficient of the two-dimensional electron sheet energy,
/// `E_p(w, δ) = −0.02477·s·√δ·w^(−5/2)` with `s = √(n ħ²e²/m_e)`.
pub const SHEET_COEFF: f64 = 0.02477;

/// ħc in eV·nm.
pub const HBAR_C_EV_NM: f64 = 197.326_980_4;
/// Squared elementary charge in Gaussian units, eV·nm.
pub const E2_EV_NM: f64 = 1.439_964_5;
/// Electron rest energy, eV.
pub const ME_C2_EV: f64 = 510_998.95;

/// `ħ²e²/m_e` in eV²·nm³, the composite constant of the sheet scale.
pub fn hbar2_e2_over_me() -> f64 {
    HBAR_C_EV_NM * HBAR_C_EV_NM * E2_EV_NM / ME_C2_EV
}

/// Sheet scale `√(n ħ²e²/m_e)` in eV from an electron density in nm⁻³.
pub fn sheet_scale_from_density(n: f64) -> Result<f64> {
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::Config(format!(
            "electron density must be positive and finite, got {n}"
        )));
    }
    Ok((n * hbar2_e2_over_me()).sqrt())
}

/// A planar 1|2|3|4|5 structure. Region 3 is the gap; its width is supplied
/// per evaluation, not stored.
#[derive(Debug, Clone)]
pub struct LayerStack {
    eps: [DielectricModel; 5],
    d2: f64,
    d4: f64,
}

/// Interface reflection coefficients of a stack at one imaginary frequency.
/// Indices follow the regions: `r12` is crossed from 1 into 2, and so on.
#[derive(Debug, Clone, Copy)]
struct Reflections {
    r12: f64,
    r23: f64,
    r34: f64,
    r45: f64,
}

/// Effective reflection of a coated half space seen from the gap:
/// coating interface coefficient `r_inner`, rear interface `r_outer`,
/// attenuated by `a = e^(−2 k d)` across the coating.
fn compose(r_outer: f64, r_inner: f64, a: f64) -> f64 {
    (r_inner + a * r_outer) / (1.0 + a * r_outer * r_inner)
}

/// Whether an interface keeps a nonzero reflection in the `ξ → ∞` limit.
fn contrast_at_infinity(a: Epsilon, b: Epsilon) -> bool {
    match (a, b) {
        (Epsilon::Finite(x), Epsilon::Finite(y)) => x != y,
        _ => true, // an ideal metal reflects at every frequency
    }
}

fn check_thickness(name: &str, d: f64) -> Result<()> {
    if d.is_nan() || d < 0.0 {
        return Err(Error::Config(format!(
            "{name} must be >= 0 (infinity allowed), got {d}"
        )));
    }
    Ok(())
}

impl LayerStack {
    /// Build a general five-region stack. Thicknesses may be 0 (layer
    /// absent) or infinite (layer becomes the semi-infinite medium). The
    /// ideal metal is only accepted in the outer regions 1 and 5.
    pub fn new(
        eps1: DielectricModel,
        eps2: DielectricModel,
        eps3: DielectricModel,
        eps4: DielectricModel,
        eps5: DielectricModel,
        d2: f64,
        d4: f64,
    ) -> Result<Self> {
        let eps = [eps1, eps2, eps3, eps4, eps5];
        for (i, m) in eps.iter().enumerate() {
            m.validate()
                .map_err(|e| Error::Config(format!("region {}: {e}", i + 1)))?;
        }
        for (i, m) in eps.iter().enumerate() {
            let region = i + 1;
            if matches!(m, DielectricModel::IdealMetal) && !(region == 1 || region == 5) {
                return Err(Error::Config(format!(
                    "region {region}: ideal metal is only supported as a \
                     semi-infinite outer region (1 or 5)"
                )));
            }
        }
        check_thickness("d2", d2)?;
        check_thickness("d4", d4)?;
        Ok(LayerStack { eps, d2, d4 })
    }

    /// Uncoated 1|3|5 structure.
    pub fn three_region(
        eps1: DielectricModel,
        eps3: DielectricModel,
        eps5: DielectricModel,
    ) -> Result<Self> {
        Self::new(
            eps1,
            DielectricModel::vacuum(),
            eps3,
            DielectricModel::vacuum(),
            eps5,
            0.0,
            0.0,
        )
    }

    /// 1|3|4|5 structure: a coating of thickness `d4` on the right body.
    pub fn coated_right(
        eps1: DielectricModel,
        eps3: DielectricModel,
        eps4: DielectricModel,
        d4: f64,
        eps5: DielectricModel,
    ) -> Result<Self> {
        Self::new(
            eps1,
            DielectricModel::vacuum(),
            eps3,
            eps4,
            eps5,
            0.0,
            d4,
        )
    }

    /// 1|2|3|5 structure: a coating of thickness `d2` on the left body.
    pub fn coated_left(
        eps1: DielectricModel,
        eps2: DielectricModel,
        d2: f64,
        eps3: DielectricModel,
        eps5: DielectricModel,
    ) -> Result<Self> {
        Self::new(
            eps1,
            eps2,
            eps3,
            DielectricModel::vacuum(),
            eps5,
            d2,
            0.0,
        )
    }

    /// Two default-metal half spaces across a vacuum gap.
    pub fn gold_vacuum_gold() -> Self {
        Self::three_region(
            DielectricModel::gold(),
            DielectricModel::vacuum(),
            DielectricModel::gold(),
        )
        .expect("static parameters are valid")
    }

    pub fn models(&self) -> &[DielectricModel; 5] {
        &self.eps
    }

    pub fn d2(&self) -> f64 {
        self.d2
    }

    pub fn d4(&self) -> f64 {
        self.d4
    }

    /// The same physical structure seen from the other side.
    pub fn mirrored(&self) -> Self {
        let [e1, e2, e3, e4, e5] = self.eps.clone();
        LayerStack {
            eps: [e5, e4, e3, e2, e1],
            d2: self.d4,
            d4: self.d2,
        }
    }

    /// True when both coating thicknesses are degenerate (0 or infinite), so
    /// the structure is two bare half spaces and `E_p ∝ w⁻²` exactly.
    pub fn is_two_half_spaces(&self) -> bool {
        let deg = |d: f64| d == 0.0 || d.is_infinite();
        deg(self.d2) && deg(self.d4)
    }

    /// Largest characteristic frequency among the regions, eV (at least 1).
    pub fn frequency_scale(&self) -> f64 {
        self.eps
            .iter()
            .map(|m| m.frequency_scale())
            .fold(1.0, f64::max)
    }

    fn reflections(&self, xi: f64) -> Result<Reflections> {
        let e: Vec<Epsilon> = self
            .eps
            .iter()
            .map(|m| m.epsilon_at(xi))
            .collect::<Result<_>>()?;
        Ok(Reflections {
            r12: fresnel_r(e[0], e[1])?,
            r23: fresnel_r(e[1], e[2])?,
            r34: fresnel_r(e[2], e[3])?,
            r45: fresnel_r(e[3], e[4])?,
        })
    }

    /// Reflection seen from the gap toward region 1, with the sign of the
    /// 1→3 crossing convention (equals r13 when d2 = 0, r23 when d2 = ∞).
    fn rho_left(&self, r: &Reflections, k: f64) -> f64 {
        if self.d2 == 0.0 {
            compose(r.r12, r.r23, 1.0)
        } else if self.d2.is_infinite() {
            r.r23
        } else {
            compose(r.r12, r.r23, (-2.0 * k * self.d2).exp())
        }
    }

    /// Reflection seen from the gap toward region 5 (3→5 crossing sign).
    fn rho_right(&self, r: &Reflections, k: f64) -> f64 {
        if self.d4 == 0.0 {
            compose(r.r45, r.r34, 1.0)
        } else if self.d4.is_infinite() {
            r.r34
        } else {
            compose(r.r45, r.r34, (-2.0 * k * self.d4).exp())
        }
    }

    /// Ratio of the mode condition function at gap `w` to its `w → ∞`
    /// reference, `1 + e^(−2kw)·ρ_L·ρ_R`. Strictly positive; tends to 1 as
    /// `w → ∞`; for bare half spaces it is `1 + e^(−2kw)·r13·r35`.
    pub fn mode_ratio(&self, k: f64, xi: f64, w: f64) -> Result<f64> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::Domain(format!(
                "wave number must be positive and finite, got {k}"
            )));
        }
        if !(w > 0.0) {
            return Err(Error::Domain(format!(
                "gap width must be positive, got {w}"
            )));
        }
        let r = self.reflections(xi)?;
        let q = self.rho_left(&r, k) * self.rho_right(&r, k);
        Ok(1.0 + (-2.0 * k * w).exp() * q)
    }

    /// Error unless at least one side of the gap loses its dielectric
    /// contrast as `ξ → ∞`; otherwise the frequency integral diverges.
    pub fn check_convergence(&self) -> Result<()> {
        let inf: Vec<Epsilon> = self.eps.iter().map(|m| m.epsilon_infinity()).collect();
        let side = |outer: Epsilon, coat: Epsilon, d: f64| -> bool {
            // true when the side's reflection vanishes at infinite frequency
            if d == 0.0 {
                !contrast_at_infinity(outer, inf[2])
            } else if d.is_infinite() {
                !contrast_at_infinity(coat, inf[2])
            } else {
                !contrast_at_infinity(coat, inf[2]) && !contrast_at_infinity(outer, coat)
            }
        };
        if side(inf[0], inf[1], self.d2) || side(inf[4], inf[3], self.d4) {
            Ok(())
        } else {
            Err(Error::Domain(
                "dielectric contrast persists at infinite frequency on both sides \
                 of the gap; the frequency integral diverges. At least one side \
                 must relax to the gap medium as ξ → ∞ (constant-ε pairs and \
                 double ideal-metal stacks do not)"
                    .into(),
            ))
        }
    }

    fn check_tol(tol: f64) -> Result<()> {
        if !(tol > 1e-12 && tol < 1e-2) {
            return Err(Error::Domain(format!(
                "relative tolerance must lie in (1e-12, 1e-2), got {tol}"
            )));
        }
        Ok(())
    }

    fn check_gap(w: f64) -> Result<()> {
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::Domain(format!(
                "gap width must be positive and finite, got {w}"
            )));
        }
        Ok(())
    }

    /// Shared driver for the double integral
    /// `∫₀^∞ dξ ∫₀^U du inner(u, q(u, ξ))` with `q = ρ_L·ρ_R` at
    /// `k = u/(2w)`. The inner integrand sees the mode-coupling strength
    /// only; the u-weighting differs between energy and force kernels.
    fn double_integral(
        &self,
        w: f64,
        tol: f64,
        inner: impl Fn(f64, f64) -> f64,
    ) -> Result<f64> {
        // e^(−U) bounds the dropped tail of the u-integral
        let u_max = (-1.5 * tol.ln()).clamp(35.0, 60.0);
        let inner_tol = tol / 10.0;
        let stashed: RefCell<Option<Error>> = RefCell::new(None);
        let outer = |xi: f64| -> f64 {
            let r = match self.reflections(xi) {
                Ok(r) => r,
                Err(e) => {
                    stashed.borrow_mut().get_or_insert(e);
                    return f64::NAN;
                }
            };
            let f = |u: f64| {
                let k = u / (2.0 * w);
                let q = self.rho_left(&r, k) * self.rho_right(&r, k);
                inner(u, q)
            };
            match integrate(f, 0.0, u_max, inner_tol) {
                Ok(res) => res.value,
                Err(e) => {
                    stashed.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            }
        };
        let result = integrate_semi_infinite(outer, self.frequency_scale(), tol);
        if let Some(e) = stashed.into_inner() {
            return Err(e);
        }
        Ok(result?.value)
    }

    /// Interaction energy per unit area `E_p(w)` in eV·nm⁻², referenced to
    /// the infinitely separated structure. Negative for like materials
    /// across a vacuum gap.
    pub fn energy_per_area(&self, w: f64, tol: f64) -> Result<f64> {
        Self::check_gap(w)?;
        Self::check_tol(tol)?;
        self.check_convergence()?;
        let raw = self.double_integral(w, tol, |u, q| u * (q * (-u).exp()).ln_1p())?;
        Ok(raw / (16.0 * PI * PI * w * w))
    }

    /// Derivative `dE_p/dw` in eV·nm⁻³ (positive for attraction: the energy
    /// rises toward zero with distance). Evaluated by differentiating the
    /// mode-sum integrand analytically, not by finite differences.
    pub fn derivative_per_area(&self, w: f64, tol: f64) -> Result<f64> {
        Self::check_gap(w)?;
        Self::check_tol(tol)?;
        self.check_convergence()?;
        let raw = self.double_integral(w, tol, |u, q| {
            let x = q * (-u).exp();
            u * u * x / (1.0 + x)
        })?;
        Ok(-raw / (16.0 * PI * PI * w * w * w))
    }
}

/// Characteristic dielectric integral
/// `⟨ω_l⟩ = 2 ∫₀^∞ dξ [r13(iξ)·r53(iξ)]^l` in eV, for a bare 1|3|5
/// structure. These are the coefficients of the `1/w²` energy series.
pub fn characteristic_integral(
    l: u32,
    eps1: &DielectricModel,
    eps3: &DielectricModel,
    eps5: &DielectricModel,
) -> Result<f64> {
    if l == 0 {
        return Err(Error::Domain("series order l must be >= 1".into()));
    }
    for m in [eps1, eps3, eps5] {
        m.validate()?;
    }
    if contrast_at_infinity(eps1.epsilon_infinity(), eps3.epsilon_infinity())
        && contrast_at_infinity(eps5.epsilon_infinity(), eps3.epsilon_infinity())
    {
        return Err(Error::Domain(
            "reflection product does not vanish at infinite frequency; \
             ⟨ω_l⟩ diverges (both outer media keep their contrast against \
             the gap, e.g. two ideal metals)"
                .into(),
        ));
    }
    let scale = eps1
        .frequency_scale()
        .max(eps3.frequency_scale())
        .max(eps5.frequency_scale());
    let power = l as i32;
    let stashed: RefCell<Option<Error>> = RefCell::new(None);
    let f = |xi: f64| -> f64 {
        let p = reflection_product(xi, eps1, eps3, eps5);
        match p {
            Ok(p) => p.powi(power),
            Err(e) => {
                stashed.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let res = integrate_semi_infinite(f, scale, 1e-10);
    if let Some(e) = stashed.into_inner() {
        return Err(e);
    }
    Ok(2.0 * res?.value)
}

fn reflection_product(
    xi: f64,
    eps1: &DielectricModel,
    eps3: &DielectricModel,
    eps5: &DielectricModel,
) -> Result<f64> {
    let e1 = eps1.epsilon_at(xi)?;
    let e3 = eps3.epsilon_at(xi)?;
    let e5 = eps5.epsilon_at(xi)?;
    Ok(fresnel_r(e1, e3)? * fresnel_r(e5, e3)?)
}

/// Truncated series `Σ ⟨ω_l⟩/l³` with a bound on the dropped tail.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicSeries {
    terms: Vec<f64>,
    truncation_bound: f64,
}

impl CharacteristicSeries {
    pub fn new(terms: Vec<f64>, truncation_bound: f64) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Validation(
                "characteristic series needs at least one term".into(),
            ));
        }
        if terms.iter().any(|t| !t.is_finite()) {
            return Err(Error::Validation(
                "characteristic series terms must be finite".into(),
            ));
        }
        if !(truncation_bound.is_finite() && truncation_bound >= 0.0) {
            return Err(Error::Validation(format!(
                "truncation bound must be finite and >= 0, got {truncation_bound}"
            )));
        }
        Ok(CharacteristicSeries {
            terms,
            truncation_bound,
        })
    }

    /// Compute terms until the tail bound drops below `rel_tol` times the
    /// accumulated sum. Two bounds are tried: the geometric one from the
    /// sampled supremum of |r13·r53| (sharp for dielectrics), and the
    /// monotone bound `m_L/(2L²)` that still works when the supremum
    /// reaches 1 (metals at ξ → 0).
    pub fn compute(
        eps1: &DielectricModel,
        eps3: &DielectricModel,
        eps5: &DielectricModel,
        rel_tol: f64,
    ) -> Result<Self> {
        if !(rel_tol > 1e-12 && rel_tol < 1e-2) {
            return Err(Error::Domain(format!(
                "relative tolerance must lie in (1e-12, 1e-2), got {rel_tol}"
            )));
        }
        // probe the reflection product on a log grid to learn its sup and sign
        let scale = eps1
            .frequency_scale()
            .max(eps3.frequency_scale())
            .max(eps5.frequency_scale());
        let mut sup: f64 = 0.0;
        let mut all_non_negative = true;
        for i in 0..200 {
            let xi = scale * 1e-6 * 10f64.powf(i as f64 * 0.04); // 1e-6..1e2 times scale
            let p = reflection_product(xi, eps1, eps3, eps5)?;
            sup = sup.max(p.abs());
            if p < -1e-14 {
                all_non_negative = false;
            }
        }

        let mut terms: Vec<f64> = Vec::new();
        let mut sum = 0.0;
        const L_CAP: u32 = 100_000;
        loop {
            let l = terms.len() as u32 + 1;
            let t = characteristic_integral(l, eps1, eps3, eps5)?;
            terms.push(t);
            sum += t / (l as f64).powi(3);

            let lf = l as f64;
            // magnitude integral m_l = 2∫|p|^l dξ dominates every later term
            let m_l = if all_non_negative {
                t.abs()
            } else {
                magnitude_integral(l, scale, eps1, eps3, eps5)?
            };
            let monotone = m_l / (2.0 * lf * lf);
            // m1 = |⟨ω_1⟩| exactly only when the product never changes sign
            let geometric = if sup < 1.0 && all_non_negative {
                terms[0].abs() * sup.powi(l as i32) / ((lf + 1.0).powi(3) * (1.0 - sup))
            } else {
                f64::INFINITY
            };
            let tail = monotone.min(geometric);
            let target = rel_tol * sum.abs().max(f64::MIN_POSITIVE) * 0.5;
            if tail <= target || (sum == 0.0 && m_l == 0.0) {
                return CharacteristicSeries::new(terms, tail.min(monotone));
            }
            if l >= L_CAP {
                return Err(Error::Numerical(format!(
                    "characteristic series did not meet the tail target within \
                     {L_CAP} terms (bound {tail:.3e}, target {target:.3e})"
                )));
            }
        }
    }

    pub fn terms(&self) -> &[f64] {
        &self.terms
    }

    pub fn truncation_bound(&self) -> f64 {
        self.truncation_bound
    }

    /// `Σ ⟨ω_l⟩/l³` over the stored terms, eV.
    pub fn weighted_sum(&self) -> f64 {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| t / ((i + 1) as f64).powi(3))
            .sum()
    }

    /// Energy per area at gap `w` and the propagated truncation error,
    /// both in eV·nm⁻².
    pub fn energy_with_error(&self, w: f64) -> Result<(f64, f64)> {
        LayerStack::check_gap(w)?;
        let norm = 32.0 * PI * PI * w * w;
        Ok((-self.weighted_sum() / norm, self.truncation_bound / norm))
    }
}

fn magnitude_integral(
    l: u32,
    scale: f64,
    eps1: &DielectricModel,
    eps3: &DielectricModel,
    eps5: &DielectricModel,
) -> Result<f64> {
    let power = l as i32;
    let stashed: RefCell<Option<Error>> = RefCell::new(None);
    let f = |xi: f64| match reflection_product(xi, eps1, eps3, eps5) {
        Ok(p) => p.abs().powi(power),
        Err(e) => {
            stashed.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let res = integrate_semi_infinite(f, scale, 1e-8);
    if let Some(e) = stashed.into_inner() {
        return Err(e);
    }
    Ok(2.0 * res?.value)
}

/// Series form of the planar energy, `−(1/32π²w²)·Σ ⟨ω_l⟩/l³`, eV·nm⁻².
pub fn energy_series(w: f64, series: &CharacteristicSeries) -> Result<f64> {
    Ok(series.energy_with_error(w)?.0)
}

/// Anything that can serve as the planar energy kernel `E_p(w)` of a PFA
/// formula. `energy` is eV·nm⁻², `derivative` its w-derivative in eV·nm⁻³.
pub trait EnergyPerArea {
    fn energy(&self, w: f64) -> Result<f64>;
    fn derivative(&self, w: f64) -> Result<f64>;

    /// `Some(ζ)` when the provider is exactly `−C·w^(−ζ)` and closed-form
    /// geometry corrections may be dispatched on that knowledge.
    fn power_law_exponent(&self) -> Option<f64> {
        None
    }
}

impl<T: EnergyPerArea + ?Sized> EnergyPerArea for &T {
    fn energy(&self, w: f64) -> Result<f64> {
        (**self).energy(w)
    }
    fn derivative(&self, w: f64) -> Result<f64> {
        (**self).derivative(w)
    }
    fn power_law_exponent(&self) -> Option<f64> {
        (**self).power_law_exponent()
    }
}

/// Pure power law `E_p(w) = −C·w^(−ζ)`. A positive coefficient means
/// attraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawEnergy {
    coefficient: f64,
    exponent: f64,
}

impl PowerLawEnergy {
    pub fn new(coefficient: f64, exponent: f64) -> Result<Self> {
        if !coefficient.is_finite() {
            return Err(Error::Config(format!(
                "power-law coefficient must be finite, got {coefficient}"
            )));
        }
        if !(exponent.is_finite() && exponent > 0.0) {
            return Err(Error::Config(format!(
                "power-law exponent must be positive and finite, got {exponent}"
            )));
        }
        Ok(PowerLawEnergy {
            coefficient,
            exponent,
        })
    }

    /// The `w⁻²` law equivalent to a characteristic series.
    pub fn from_series(series: &CharacteristicSeries) -> Result<Self> {
        Self::new(series.weighted_sum() / (32.0 * PI * PI), 2.0)
    }

    /// Ultra-thin metal coating as a two-dimensional electron sheet:
    /// `E_p = −0.02477·sheet_scale·√δ·w^(−5/2)`, `sheet_scale` in eV
    /// (see [`sheet_scale_from_density`]), `delta` the film thickness nm.
    pub fn thin_sheet_limit(sheet_scale: f64, delta: f64) -> Result<Self> {
        if !(sheet_scale.is_finite() && sheet_scale > 0.0) {
            return Err(Error::Config(format!(
                "sheet scale must be positive and finite, got {sheet_scale}"
            )));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::Config(format!(
                "sheet thickness must be positive and finite, got {delta}"
            )));
        }
        Self::new(SHEET_COEFF * sheet_scale * delta.sqrt(), 2.5)
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }
}

impl EnergyPerArea for PowerLawEnergy {
    fn energy(&self, w: f64) -> Result<f64> {
        LayerStack::check_gap(w)?;
        Ok(-self.coefficient * w.powf(-self.exponent))
    }

    fn derivative(&self, w: f64) -> Result<f64> {
        LayerStack::check_gap(w)?;
        Ok(self.exponent * self.coefficient * w.powf(-self.exponent - 1.0))
    }

    fn power_law_exponent(&self) -> Option<f64> {
        Some(self.exponent)
    }
}

/// A [`LayerStack`] bound to a quadrature tolerance, usable as a kernel.
/// Declares the exact `w⁻²` exponent only for bare half-space structures;
/// coated stacks are not power laws and report `None`.
#[derive(Debug, Clone)]
pub struct StackEnergy {
    stack: LayerStack,
    tol: f64,
}

impl StackEnergy {
    pub fn new(stack: LayerStack, tol: f64) -> Result<Self> {
        LayerStack::check_tol(tol)?;
        stack.check_convergence()?;
        Ok(StackEnergy { stack, tol })
    }

    pub fn stack(&self) -> &LayerStack {
        &self.stack
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

impl EnergyPerArea for StackEnergy {
    fn energy(&self, w: f64) -> Result<f64> {
        self.stack.energy_per_area(w, self.tol)
    }

    fn derivative(&self, w: f64) -> Result<f64> {
        self.stack.derivative_per_area(w, self.tol)
    }

    fn power_law_exponent(&self) -> Option<f64> {
        if self.stack.is_two_half_spaces() {
            Some(2.0)
        } else {
            None
        }
    }
}

/// Local logarithmic slope `ζ(w) = −d ln|E_p|/d ln w` by a symmetric
/// stencil at `w·e^(±step)`.
pub fn local_exponent(ep: &dyn EnergyPerArea, w: f64, step: f64) -> Result<f64> {
    LayerStack::check_gap(w)?;
    if !(step.is_finite() && step > 0.0 && step <= 1.0) {
        return Err(Error::Domain(format!(
            "log-spacing step must lie in (0, 1], got {step}"
        )));
    }
    let hi = ep.energy(w * step.exp())?;
    let lo = ep.energy(w * (-step).exp())?;
    if hi == 0.0 || lo == 0.0 || (hi < 0.0) != (lo < 0.0) {
        return Err(Error::Numerical(format!(
            "energy changes sign or vanishes across the stencil at w = {w} \
             (values {lo:.3e}, {hi:.3e}); no local exponent is defined"
        )));
    }
    Ok(-(hi.abs().ln() - lo.abs().ln()) / (2.0 * step))
}
