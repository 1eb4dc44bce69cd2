//! Spatial configurations from spatially extended AMR graphs.

pub mod extract;
pub mod fixtures;
pub mod model;
pub mod penman;
pub mod qsr;
pub mod registry;
pub mod score;
pub mod stats;
