//! Penman notation: parsing and printing of AMR graphs and corpus files.
//!
//! Constants (numbers, `+`, `-`, quoted strings, bare symbols such as
//! `imperative`) are leaf values on edges and never become nodes. Edge order is
//! the order of appearance in the text.

mod document;
mod graph;
mod parse;
mod print;

pub use document::{parse_document, AmrDocumentEntry, DocumentError};
pub use graph::{
    invert_role, is_inverse_role, is_valid_role, is_variable_shaped, AmrEdge, AmrGraph, AmrNode,
    Constant, GraphError, NormalizedEdge, Target,
};
pub use parse::{parse_graph, parse_graph_at, ParseError, Pos};
pub use print::print_graph;
