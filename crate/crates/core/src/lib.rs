//! Exact quantum cohomology of Fano complete intersections in projective
//! space, and the counts of lines, conics and twisted cubics it encodes.

pub mod bipoly;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod grassmann;
pub mod qring;
pub mod scalar;

pub use bipoly::BiPoly;
pub use error::{Error, Result};
pub use grassmann::{CIData, LVector};
pub use qring::{BasisElement, QRing, RingElement};
pub use scalar::ExactScalar;
