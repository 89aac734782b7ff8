//! Exact analysis of plane curve singularities.

pub mod exact;
pub mod frontend;
pub mod graph;
pub mod gring;
pub mod newton;
pub mod oracle;
pub mod realize;
pub mod toric;
