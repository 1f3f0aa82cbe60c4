//! Layout algorithms with crossing guarantees.

use alloc::string::String;
use thiserror::Error;

use crate::drawing::{verify_drawing, Drawing, DrawingError};

pub mod bandwidth;
mod engine;
pub mod fan;
pub mod outerpath;

pub use bandwidth::{draw_bandwidth, exact_bandwidth, BandwidthLabeling};
pub use fan::{draw_fan, fan_partition, FanPartition};
pub use outerpath::draw_outerpath;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("input is not a fan with the given central vertex")]
    NotAFan,
    #[error("input is not an outerpath")]
    NotAnOuterpath,
    #[error("input contains a directed cycle")]
    CyclicInput,
    #[error("labeling is not a valid labeling of the graph")]
    InvalidLabeling,
    #[error("{n} vertices exceed the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    /// The produced drawing failed its own verification; this is a defect.
    #[error("internal verification failure: {0}")]
    Verification(String),
}

impl LayoutError {
    pub fn is_internal(&self) -> bool {
        matches!(self, LayoutError::Verification(_))
    }
}

pub(crate) fn check_output(d: Drawing, k: usize) -> Result<Drawing, LayoutError> {
    match verify_drawing(&d, k) {
        Ok((true, _)) => Ok(d),
        Ok((false, r)) => Err(LayoutError::Verification(alloc::format!(
            "upward={} simple={} max_per_edge={} (bound {k})",
            r.is_upward,
            r.is_simple,
            r.max_per_edge
        ))),
        Err(DrawingError::NonSimple(e)) => Err(LayoutError::Verification(alloc::format!("{e}"))),
        Err(e) => Err(LayoutError::Verification(alloc::format!("{e}"))),
    }
}
