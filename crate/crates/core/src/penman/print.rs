use std::collections::HashSet;
use std::fmt::Write;

use super::graph::{is_symbol_safe, AmrGraph, Constant, Target};

const INDENT: usize = 4;

/// Renders a graph in canonical Penman layout: one role per line, children
/// indented one level deeper than their parent.
pub fn print_graph(graph: &AmrGraph) -> String {
    let mut out = String::new();
    let mut printed = HashSet::new();
    write_node(graph, graph.root(), 0, &mut printed, &mut out);
    out
}

fn write_node<'a>(
    graph: &'a AmrGraph,
    var: &'a str,
    depth: usize,
    printed: &mut HashSet<&'a str>,
    out: &mut String,
) {
    printed.insert(var);
    let concept = graph.concept(var).unwrap_or_default();
    out.push('(');
    out.push_str(var);
    out.push_str(" / ");
    if is_symbol_safe(concept) {
        out.push_str(concept);
    } else {
        let _ = write!(out, "{}", Constant::Str(concept.to_string()));
    }
    for edge in graph.outgoing(var) {
        out.push('\n');
        out.extend(std::iter::repeat(' ').take((depth + 1) * INDENT));
        out.push_str(&edge.role);
        out.push(' ');
        match &edge.target {
            Target::Var(t) if !printed.contains(t.as_str()) => {
                write_node(graph, t, depth + 1, printed, out)
            }
            Target::Var(t) => out.push_str(t),
            Target::Const(c) => {
                let _ = write!(out, "{c}");
            }
        }
    }
    out.push(')');
}
