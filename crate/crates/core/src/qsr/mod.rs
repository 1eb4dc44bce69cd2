//! RCC8 relation algebra and algebraic closure over topological QT constraints.
//!
//! Directional and distance qualitative types are carried in annotations but not
//! reasoned over here.

mod closure;
mod network;
mod relation;
mod table;

pub use closure::{algebraic_closure, Closure, Refinement};
pub use network::{
    network_from_annotation, ConstraintEntry, NetworkFile, Notice, QsrError, QtConstraintNetwork,
};
pub use relation::{Rcc8, RelationSet};
pub use table::{compose, converse, CompositionTable, TableError};
