use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::graph::{
    is_valid_role, is_variable_shaped, AmrEdge, AmrGraph, AmrNode, Constant, Target,
};

/// 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: unbalanced parentheses")]
    UnbalancedParens { pos: Pos },
    #[error("{pos}: variable `{var}` already defined at {first}")]
    DuplicateVariableDefinition { var: String, pos: Pos, first: Pos },
    #[error("{pos}: reference to undefined variable `{var}`")]
    DanglingReference { var: String, pos: Pos },
    #[error("{pos}: node `{var}` has no concept")]
    EmptyConcept { var: String, pos: Pos },
    #[error("{pos}: expected {expected}, found {found}")]
    UnexpectedToken {
        expected: &'static str,
        found: String,
        pos: Pos,
    },
    #[error("{pos}: unterminated string")]
    UnterminatedString { pos: Pos },
    #[error("{pos}: no graph found")]
    Empty { pos: Pos },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::UnbalancedParens { pos }
            | ParseError::DuplicateVariableDefinition { pos, .. }
            | ParseError::DanglingReference { pos, .. }
            | ParseError::EmptyConcept { pos, .. }
            | ParseError::UnexpectedToken { pos, .. }
            | ParseError::UnterminatedString { pos }
            | ParseError::Empty { pos } => *pos,
        }
    }

    fn shift(mut self, lines: usize) -> Self {
        match &mut self {
            ParseError::UnbalancedParens { pos }
            | ParseError::DanglingReference { pos, .. }
            | ParseError::EmptyConcept { pos, .. }
            | ParseError::UnexpectedToken { pos, .. }
            | ParseError::UnterminatedString { pos }
            | ParseError::Empty { pos } => pos.line += lines,
            ParseError::DuplicateVariableDefinition { pos, first, .. } => {
                pos.line += lines;
                first.line += lines;
            }
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Slash,
    Role(String),
    Str(String),
    Symbol(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Role(r) => format!("role `{r}`"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::Symbol(s) => format!("`{s}`"),
        }
    }
}

fn is_delim(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '"' | '/' | '~')
}

fn lex(text: &str) -> Result<(Vec<(Tok, Pos)>, Pos), ParseError> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pos = Pos { line: 1, column: 1 };
    let advance = |c: char, pos: &mut Pos| {
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let start = pos;
        match c {
            c if c.is_whitespace() => {
                chars.next();
                advance(c, &mut pos);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    advance(c, &mut pos);
                }
            }
            '(' | ')' | '/' => {
                chars.next();
                advance(c, &mut pos);
                toks.push((
                    match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        _ => Tok::Slash,
                    },
                    start,
                ));
            }
            '~' => {
                // alignment marker, e.g. `~e.3`; discarded
                chars.next();
                advance(c, &mut pos);
                while let Some(&c) = chars.peek() {
                    if is_delim(c) {
                        break;
                    }
                    chars.next();
                    advance(c, &mut pos);
                }
            }
            '"' => {
                chars.next();
                advance(c, &mut pos);
                let mut s = String::new();
                let mut closed = false;
                while let Some(c) = chars.next() {
                    advance(c, &mut pos);
                    match c {
                        '\\' => {
                            if let Some(n) = chars.next() {
                                advance(n, &mut pos);
                                s.push(n);
                            }
                        }
                        '"' => {
                            closed = true;
                            break;
                        }
                        c => s.push(c),
                    }
                }
                if !closed {
                    return Err(ParseError::UnterminatedString { pos: start });
                }
                toks.push((Tok::Str(s), start));
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if is_delim(c) || (c == ':' && !s.is_empty() && !s.starts_with(':')) {
                        break;
                    }
                    s.push(c);
                    chars.next();
                    advance(c, &mut pos);
                }
                if s.starts_with(':') {
                    toks.push((Tok::Role(s), start));
                } else {
                    toks.push((Tok::Symbol(s), start));
                }
            }
        }
    }
    Ok((toks, pos))
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
    nodes: Vec<AmrNode>,
    defined: HashMap<String, Pos>,
    edges: Vec<AmrEdge>,
    /// Bare symbols in target position, resolved once every definition is known.
    pending: Vec<(usize, String, Pos)>,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, Pos)> {
        self.toks.get(self.i)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.i).cloned();
        self.i += 1;
        t
    }

    fn node(&mut self, open: Pos) -> Result<String, ParseError> {
        let (var, vpos) = match self.next() {
            Some((Tok::Symbol(v), p)) => (v, p),
            Some((t, p)) => {
                return Err(ParseError::UnexpectedToken {
                    expected: "variable",
                    found: t.describe(),
                    pos: p,
                })
            }
            None => return Err(ParseError::UnbalancedParens { pos: open }),
        };
        match self.peek() {
            Some((Tok::Slash, _)) => {
                self.i += 1;
            }
            Some((Tok::RParen | Tok::Role(_), _)) | None => {
                return Err(ParseError::EmptyConcept { var, pos: vpos })
            }
            Some((t, p)) => {
                return Err(ParseError::UnexpectedToken {
                    expected: "`/`",
                    found: t.describe(),
                    pos: *p,
                })
            }
        }
        let concept = match self.next() {
            Some((Tok::Symbol(c) | Tok::Str(c), _)) if !c.is_empty() => c,
            Some((Tok::Str(_) | Tok::RParen | Tok::Role(_), _)) | None => {
                return Err(ParseError::EmptyConcept { var, pos: vpos })
            }
            Some((t, p)) => {
                return Err(ParseError::UnexpectedToken {
                    expected: "concept",
                    found: t.describe(),
                    pos: p,
                })
            }
        };
        if let Some(first) = self.defined.get(&var) {
            return Err(ParseError::DuplicateVariableDefinition {
                var,
                pos: vpos,
                first: *first,
            });
        }
        self.defined.insert(var.clone(), vpos);
        self.nodes.push(AmrNode {
            variable: var.clone(),
            concept,
        });

        loop {
            match self.next() {
                Some((Tok::RParen, _)) => return Ok(var),
                Some((Tok::Role(role), rpos)) => {
                    if !is_valid_role(&role) {
                        return Err(ParseError::UnexpectedToken {
                            expected: "role",
                            found: format!("`{role}`"),
                            pos: rpos,
                        });
                    }
                    let target = match self.next() {
                        Some((Tok::LParen, p)) => Target::Var(self.node(p)?),
                        Some((Tok::Str(s), _)) => Target::Const(Constant::Str(s)),
                        Some((Tok::Symbol(s), p)) => {
                            self.pending.push((self.edges.len(), s.clone(), p));
                            Target::Const(Constant::Symbol(s))
                        }
                        Some((t, p)) => {
                            return Err(ParseError::UnexpectedToken {
                                expected: "role target",
                                found: t.describe(),
                                pos: p,
                            })
                        }
                        None => return Err(ParseError::UnbalancedParens { pos: open }),
                    };
                    self.edges.push(AmrEdge {
                        source: var.clone(),
                        role,
                        target,
                    });
                }
                Some((t, p)) => {
                    return Err(ParseError::UnexpectedToken {
                        expected: "role or `)`",
                        found: t.describe(),
                        pos: p,
                    })
                }
                None => return Err(ParseError::UnbalancedParens { pos: open }),
            }
        }
    }
}

/// Parses a single parenthesized Penman expression.
pub fn parse_graph(text: &str) -> Result<AmrGraph, ParseError> {
    let (toks, end) = lex(text)?;
    let mut p = Parser {
        toks,
        i: 0,
        end,
        nodes: Vec::new(),
        defined: HashMap::new(),
        edges: Vec::new(),
        pending: Vec::new(),
    };
    let root = match p.next() {
        Some((Tok::LParen, open)) => p.node(open)?,
        Some((Tok::RParen, pos)) => return Err(ParseError::UnbalancedParens { pos }),
        Some((t, pos)) => {
            return Err(ParseError::UnexpectedToken {
                expected: "`(`",
                found: t.describe(),
                pos,
            })
        }
        None => return Err(ParseError::Empty { pos: p.end }),
    };
    if let Some((t, pos)) = p.next() {
        return Err(match t {
            Tok::RParen => ParseError::UnbalancedParens { pos },
            t => ParseError::UnexpectedToken {
                expected: "end of graph",
                found: t.describe(),
                pos,
            },
        });
    }
    for (edge, sym, pos) in std::mem::take(&mut p.pending) {
        if p.defined.contains_key(&sym) {
            p.edges[edge].target = Target::Var(sym);
        } else if is_variable_shaped(&sym) {
            return Err(ParseError::DanglingReference { var: sym, pos });
        }
    }
    // the parser only builds well-formed trees, so construction cannot fail
    Ok(AmrGraph::new(root, p.nodes, p.edges).expect("parser produced an invalid graph"))
}

/// Like [`parse_graph`], reporting positions relative to a larger file whose
/// line `first_line` (1-based) is the first line of `text`.
pub fn parse_graph_at(text: &str, first_line: usize) -> Result<AmrGraph, ParseError> {
    parse_graph(text).map_err(|e| e.shift(first_line.saturating_sub(1)))
}
