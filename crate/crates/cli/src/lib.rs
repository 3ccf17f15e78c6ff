//! Configuration, sweep execution, and curve emission behind the `pfa`
//! binary. Split out as a library so integration tests and fuzz targets
//! can drive the pieces directly.

pub mod config;
pub mod curve;
pub mod run;
