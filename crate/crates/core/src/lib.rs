//! Numerical certification of Reifenberg-flat planar domains.
//!
//! The crate rasterizes parameterized domains, estimates their boundary
//! flatness scale by scale, certifies flatness against a requested `(eps,
//! r0)` pair, constructs the explicit Jones curves joining interior point
//! pairs, and verifies the quantitative length and cigar inequalities along
//! them. Companion modules compare domains under Hausdorff and
//! symmetric-difference metrics and bound connected-component structure.

pub mod components;
pub mod domains;
pub mod error;
pub mod flatness;
pub mod geometry;
pub mod jones;
pub mod metrics;
pub mod raster;
pub mod render;

pub use error::{Error, Result};
