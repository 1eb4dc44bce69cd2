use thiserror::Error;

use super::graph::AmrGraph;
use super::parse::{parse_graph_at, ParseError};

/// Header keys that standard AMR tooling emits. Anything else is kept but noted.
const KNOWN_KEYS: &[&str] = &[
    "id", "snt", "tok", "date", "annotator", "save-date", "file", "alignments", "preferred",
];

/// One graph block of a corpus file.
#[derive(Debug, Clone, PartialEq)]
pub struct AmrDocumentEntry {
    /// Header keys in file order; keys are unique.
    pub metadata: Vec<(String, String)>,
    pub graph: AmrGraph,
    /// First and last line (1-based, inclusive) of the block.
    pub source_span: (usize, usize),
}

impl AmrDocumentEntry {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn id(&self) -> Option<&str> {
        self.get("id")
    }

    pub fn sentence(&self) -> Option<&str> {
        self.get("snt")
    }

    pub fn unknown_keys(&self) -> impl Iterator<Item = &str> {
        self.metadata
            .iter()
            .map(|(k, _)| k.as_str())
            .filter(|k| !KNOWN_KEYS.contains(k))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("entry {}: {source}", id.as_deref().unwrap_or("<no id>"))]
    Graph {
        id: Option<String>,
        #[source]
        source: ParseError,
    },
    #[error("entry {} (line {line}): header without a graph", id.as_deref().unwrap_or("<no id>"))]
    MissingGraph { id: Option<String>, line: usize },
    #[error("entry {} (line {line}): duplicate metadata key `{key}`", id.as_deref().unwrap_or("<no id>"))]
    DuplicateMetadata {
        id: Option<String>,
        key: String,
        line: usize,
    },
}

struct Block {
    metadata: Vec<(String, String)>,
    graph_lines: Vec<(usize, String)>,
    first: usize,
    last: usize,
    depth: i64,
}

impl Block {
    fn new(line: usize) -> Self {
        Block {
            metadata: Vec::new(),
            graph_lines: Vec::new(),
            first: line,
            last: line,
            depth: 0,
        }
    }

    fn id(&self) -> Option<String> {
        self.metadata
            .iter()
            .find(|(k, _)| k == "id")
            .map(|(_, v)| v.clone())
    }
}

/// Splits a `# ::a x ::b y` header line into key/value pairs.
fn header_fields(line: &str) -> Vec<(String, String)> {
    let body = line.trim_start_matches('#').trim();
    body.split("::")
        .filter(|s| !s.trim().is_empty())
        .map(|field| {
            let field = field.trim();
            match field.split_once(char::is_whitespace) {
                Some((k, v)) => (k.to_string(), v.trim().to_string()),
                None => (field.to_string(), String::new()),
            }
        })
        .collect()
}

fn paren_delta(line: &str) -> i64 {
    let mut d = 0;
    let mut in_str = false;
    let mut escaped = false;
    for c in line.chars() {
        if in_str {
            match c {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => in_str = false,
                _ => {}
            }
            continue;
        }
        match c {
            '"' => in_str = true,
            '(' => d += 1,
            ')' => d -= 1,
            _ => {}
        }
    }
    d
}

/// Parses a corpus file of blank-line separated blocks, each made of optional
/// `# ::key value` header lines followed by one Penman graph.
pub fn parse_document(text: &str) -> Result<Vec<AmrDocumentEntry>, DocumentError> {
    let mut entries = Vec::new();
    let mut current: Option<Block> = None;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end();
        let in_graph = current.as_ref().is_some_and(|b| b.depth > 0);
        if line.trim().is_empty() && !in_graph {
            if let Some(block) = current.take() {
                entries.push(finish(block)?);
            }
            continue;
        }
        let trimmed = line.trim_start();
        if trimmed.starts_with('#') && !in_graph {
            if !trimmed.contains("::") {
                continue;
            }
            let block = current.get_or_insert_with(|| Block::new(lineno));
            if !block.graph_lines.is_empty() {
                // header after a finished graph starts a new block
                let done = current.take().expect("block present");
                entries.push(finish(done)?);
                current = Some(Block::new(lineno));
            }
            let block = current.as_mut().expect("block present");
            for (k, v) in header_fields(trimmed) {
                if block.metadata.iter().any(|(existing, _)| *existing == k) {
                    return Err(DocumentError::DuplicateMetadata {
                        id: block.id(),
                        key: k,
                        line: lineno,
                    });
                }
                block.metadata.push((k, v));
            }
            block.last = lineno;
            continue;
        }
        let block = current.get_or_insert_with(|| Block::new(lineno));
        block.depth += paren_delta(line);
        block.graph_lines.push((lineno, line.to_string()));
        block.last = lineno;
    }
    if let Some(block) = current.take() {
        entries.push(finish(block)?);
    }
    Ok(entries)
}

fn finish(block: Block) -> Result<AmrDocumentEntry, DocumentError> {
    let Some(&(first_graph_line, _)) = block.graph_lines.first() else {
        return Err(DocumentError::MissingGraph {
            id: block.id(),
            line: block.first,
        });
    };
    let text = block
        .graph_lines
        .iter()
        .map(|(_, l)| l.as_str())
        .collect::<Vec<_>>()
        .join("\n");
    let graph = parse_graph_at(&text, first_graph_line).map_err(|source| DocumentError::Graph {
        id: block.id(),
        source,
    })?;
    Ok(AmrDocumentEntry {
        metadata: block.metadata,
        graph,
        source_span: (block.first, block.last),
    })
}
