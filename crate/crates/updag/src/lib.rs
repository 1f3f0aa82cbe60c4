//! File formats, SVG rendering and the command-line interface over
//! `updag-core`.

pub mod cli;
pub mod format;
pub mod random;
pub mod svg;

pub use updag_core as core;
