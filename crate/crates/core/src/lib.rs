//! Curvature, Cotton tensors and Cotton solitons of three-dimensional Lie
//! groups with left-invariant metrics, plus a jet-based coordinate pipeline
//! for explicit metrics on the Heisenberg group and on E(1,1).

// tensor code reads best with explicit component indices
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod chart;
pub mod error;
pub mod frame_geometry;
pub mod report;
pub mod scan;
pub mod soliton_frame;

pub use catalog::{build_algebra, Family, FamilySpec};
pub use error::{Error, Result};
pub use frame_geometry::{FrameGeometry, LieAlgebra3};
