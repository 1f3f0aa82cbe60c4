#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod dag;
pub mod drawing;
pub mod embedding;
pub mod generators;
pub mod geom;
pub mod layouts;
pub mod outer1p;
pub mod outerplanar;
pub mod planarity;
pub mod planarize;
pub mod upward;

pub use dag::{blocks, linear_extension, parse_dag, Block, Dag, DagError, LinearExtension};
