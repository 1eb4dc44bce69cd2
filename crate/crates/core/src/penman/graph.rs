use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

/// Leaf value attached to an edge. Constants never become nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constant {
    /// Unquoted token: numbers, `+`, `-`, or bare symbols like `imperative`.
    Symbol(String),
    /// Double-quoted string, stored without the quotes.
    Str(String),
}

impl Constant {
    pub fn text(&self) -> &str {
        match self {
            Constant::Symbol(s) | Constant::Str(s) => s,
        }
    }

    /// Numeric value of a symbol constant such as `5` or `2.5`.
    pub fn as_number(&self) -> Option<f64> {
        match self {
            Constant::Symbol(s) => s.parse().ok(),
            Constant::Str(_) => None,
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Symbol(s) => f.write_str(s),
            Constant::Str(s) => {
                f.write_str("\"")?;
                for c in s.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Var(String),
    Const(Constant),
}

impl Target {
    pub fn as_var(&self) -> Option<&str> {
        match self {
            Target::Var(v) => Some(v),
            Target::Const(_) => None,
        }
    }

    pub fn as_const(&self) -> Option<&Constant> {
        match self {
            Target::Const(c) => Some(c),
            Target::Var(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AmrNode {
    pub variable: String,
    pub concept: String,
}

/// A role edge as written: `source` is the textual parent even for `-of` roles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AmrEdge {
    pub source: String,
    pub role: String,
    pub target: Target,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("root variable `{0}` is not a node")]
    MissingRoot(String),
    #[error("variable `{0}` is defined more than once")]
    DuplicateVariable(String),
    #[error("node `{0}` has an empty concept")]
    EmptyConcept(String),
    #[error("edge endpoint `{0}` is not a node")]
    UnknownEndpoint(String),
    #[error("malformed role `{0}`")]
    MalformedRole(String),
    #[error("malformed constant `{0}`")]
    MalformedConstant(String),
    #[error("node `{0}` is unreachable from the root")]
    Unreachable(String),
}

/// Roles ending in `-of` that are not inverses.
const NON_INVERSE_OF: &[&str] = &[":consist-of", ":prep-out-of", ":prep-on-behalf-of"];

pub fn is_inverse_role(role: &str) -> bool {
    role.ends_with("-of") && !NON_INVERSE_OF.contains(&role)
}

/// Flips a role between its forward and `-of` forms. Involution on valid roles.
pub fn invert_role(role: &str) -> String {
    if is_inverse_role(role) {
        role[..role.len() - 3].to_string()
    } else {
        format!("{role}-of")
    }
}

pub fn is_valid_role(role: &str) -> bool {
    role.len() > 1
        && role.starts_with(':')
        && !role[1..].starts_with(':')
        && !role
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | '"' | '/' | '~'))
}

/// Whether a bare token in target position names a variable rather than a constant.
///
/// Variable-shaped tokens are a single letter optionally followed by digits (`a`, `b4`)
/// or a run of letters followed by at least one digit (`vv10`, `y2`).
pub fn is_variable_shaped(token: &str) -> bool {
    let letters = token.chars().take_while(|c| c.is_ascii_alphabetic()).count();
    let rest = &token[letters..];
    letters > 0
        && rest.chars().all(|c| c.is_ascii_digit())
        && (letters == 1 || !rest.is_empty())
}

pub(crate) fn is_symbol_safe(token: &str) -> bool {
    !token.is_empty()
        && !token.starts_with(':')
        && !token
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | '"' | '/' | '~' | '#'))
}

/// Rooted, labeled, possibly re-entrant graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmrGraph {
    root: String,
    nodes: Vec<AmrNode>,
    edges: Vec<AmrEdge>,
    index: HashMap<String, usize>,
}

/// Edge after inverse normalization: `:ARG1-of` from `a` to `b` becomes `:ARG1` from `b` to `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalizedEdge {
    pub source: String,
    pub role: String,
    pub target: Target,
    /// True when the edge was written in inverse form.
    pub inverted: bool,
}

impl AmrGraph {
    pub fn new(
        root: impl Into<String>,
        nodes: Vec<AmrNode>,
        edges: Vec<AmrEdge>,
    ) -> Result<Self, GraphError> {
        let root = root.into();
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            if n.concept.is_empty() {
                return Err(GraphError::EmptyConcept(n.variable.clone()));
            }
            if index.insert(n.variable.clone(), i).is_some() {
                return Err(GraphError::DuplicateVariable(n.variable.clone()));
            }
        }
        if !index.contains_key(&root) {
            return Err(GraphError::MissingRoot(root));
        }
        for e in &edges {
            if !index.contains_key(&e.source) {
                return Err(GraphError::UnknownEndpoint(e.source.clone()));
            }
            if !is_valid_role(&e.role) {
                return Err(GraphError::MalformedRole(e.role.clone()));
            }
            match &e.target {
                Target::Var(v) if !index.contains_key(v) => {
                    return Err(GraphError::UnknownEndpoint(v.clone()))
                }
                Target::Const(Constant::Symbol(s))
                    if !is_symbol_safe(s) || is_variable_shaped(s) || index.contains_key(s) =>
                {
                    return Err(GraphError::MalformedConstant(s.clone()))
                }
                _ => {}
            }
        }
        let graph = AmrGraph {
            root,
            nodes,
            edges,
            index,
        };
        let reach = graph.reachable();
        if let Some(n) = graph.nodes.iter().find(|n| !reach.contains(n.variable.as_str())) {
            return Err(GraphError::Unreachable(n.variable.clone()));
        }
        Ok(graph)
    }

    fn reachable(&self) -> HashSet<&str> {
        let mut seen = HashSet::new();
        let mut stack = vec![self.root.as_str()];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            for e in self.outgoing(v) {
                if let Target::Var(t) = &e.target {
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn root(&self) -> &str {
        &self.root
    }

    pub fn nodes(&self) -> &[AmrNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[AmrEdge] {
        &self.edges
    }

    pub fn node(&self, var: &str) -> Option<&AmrNode> {
        self.index.get(var).map(|&i| &self.nodes[i])
    }

    pub fn concept(&self, var: &str) -> Option<&str> {
        self.node(var).map(|n| n.concept.as_str())
    }

    /// Edges written under `var`, in textual order.
    pub fn outgoing<'a>(&'a self, var: &'a str) -> impl Iterator<Item = &'a AmrEdge> + 'a {
        self.edges.iter().filter(move |e| e.source == var)
    }

    /// All edges with inverse roles flipped to their forward form, in textual order.
    /// Inverse edges pointing at constants cannot be flipped and are kept as written.
    pub fn normalized_edges(&self) -> Vec<NormalizedEdge> {
        self.edges
            .iter()
            .map(|e| match &e.target {
                Target::Var(t) if is_inverse_role(&e.role) => NormalizedEdge {
                    source: t.clone(),
                    role: invert_role(&e.role),
                    target: Target::Var(e.source.clone()),
                    inverted: true,
                },
                _ => NormalizedEdge {
                    source: e.source.clone(),
                    role: e.role.clone(),
                    target: e.target.clone(),
                    inverted: false,
                },
            })
            .collect()
    }

    /// Instance and role triples in textual order, with `:instance` first for every node.
    pub fn triples(&self) -> Vec<(String, String, String)> {
        let mut out: Vec<_> = self
            .nodes
            .iter()
            .map(|n| (n.variable.clone(), ":instance".to_string(), n.concept.clone()))
            .collect();
        out.extend(self.edges.iter().map(|e| {
            let t = match &e.target {
                Target::Var(v) => v.clone(),
                Target::Const(c) => c.to_string(),
            };
            (e.source.clone(), e.role.clone(), t)
        }));
        out
    }

    /// Nodes in depth-first pre-order of the written tree: each node is visited at the
    /// first edge (in textual order) that reaches it.
    pub fn preorder(&self) -> Vec<&str> {
        let mut seen = HashSet::new();
        let mut order = Vec::with_capacity(self.nodes.len());
        self.visit(&self.root, &mut seen, &mut order);
        order
    }

    fn visit<'a>(&'a self, var: &'a str, seen: &mut HashSet<&'a str>, order: &mut Vec<&'a str>) {
        if !seen.insert(var) {
            return;
        }
        order.push(var);
        for e in self.outgoing(var) {
            if let Target::Var(t) = &e.target {
                self.visit(t, seen, order);
            }
        }
    }
}
