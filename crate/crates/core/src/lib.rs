//! Non-retarded Casimir / van der Waals interactions between shaped objects,
//! computed with the extended proximity force approximation (PFA).
//!
//! The crate is organised around a planar energy kernel and a set of geometry
//! corrections derived from it:
//!
//! * [`materials`] — dielectric models evaluated on the imaginary frequency
//!   axis, and the electrostatic reflection coefficient between two media.
//! * [`planar`] — the energy per unit area `E_p(w)` of a planar five-region
//!   stack with a gap of width `w`, both as a double quadrature over modes and
//!   as a series over characteristic frequency integrals.
//! * [`shapes`] — closed-form PFA forces, correction factors, and small-gap
//!   expansions for spheres, spheroids, cylinders, cubes, cones and wedge
//!   "wings" facing a substrate or each other.
//! * [`oracle`] — an independent numerical evaluation of the same forces by
//!   direct quadrature over the gap profile, used to validate every closed
//!   form in `shapes`.
//! * [`validate`] — the runnable acceptance checks tying the above together.
//!
//! # Units and conventions
//!
//! Lengths are in nanometres, frequencies and energies `ħω` in electron
//! volts, with `ħ = 1`. The planar kernel `E_p` carries eV·nm⁻², forces
//! carry eV·nm⁻¹. Attractive forces and binding energies are **negative**
//! throughout; every magnitude-style output is derived from the signed value.

pub mod error;
pub mod materials;
pub mod oracle;
pub mod planar;
mod quad;
pub mod shapes;
pub mod validate;

pub use error::{Error, Result};
