use serde::Deserialize;
use thiserror::Error;

use super::relation::{Rcc8, RelationSet};

const STANDARD: &str = include_str!("../../../../data/rcc8_composition.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("malformed composition table: {0}")]
    Malformed(String),
}

#[derive(Deserialize)]
struct TableFile {
    calculus: String,
    order: Vec<String>,
    rows: Vec<Vec<Vec<String>>>,
}

/// Composition table over the eight base relations. A value of this type is always
/// complete, so composition cannot fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionTable {
    cells: [[RelationSet; 8]; 8],
}

impl CompositionTable {
    /// The bundled table under `data/`.
    pub fn standard() -> CompositionTable {
        CompositionTable::from_json(STANDARD).expect("bundled composition table is valid")
    }

    pub fn from_json(text: &str) -> Result<CompositionTable, TableError> {
        let file: TableFile =
            serde_json::from_str(text).map_err(|e| TableError::Malformed(e.to_string()))?;
        if file.calculus != "RCC8" {
            return Err(TableError::Malformed(format!(
                "expected calculus RCC8, found {}",
                file.calculus
            )));
        }
        let order: Vec<Rcc8> = file
            .order
            .iter()
            .map(|n| n.parse().map_err(TableError::Malformed))
            .collect::<Result<_, _>>()?;
        let mut seen = RelationSet::EMPTY;
        for r in &order {
            seen = seen.with(*r);
        }
        if order.len() != 8 || !seen.is_universal() {
            return Err(TableError::Malformed("order must list each base relation once".into()));
        }
        if file.rows.len() != 8 || file.rows.iter().any(|r| r.len() != 8) {
            return Err(TableError::Malformed("expected 8 rows of 8 cells".into()));
        }
        let mut cells = [[RelationSet::EMPTY; 8]; 8];
        for (i, row) in file.rows.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                let mut set = RelationSet::EMPTY;
                for name in cell {
                    set = set.with(name.parse().map_err(TableError::Malformed)?);
                }
                if set.is_empty() {
                    return Err(TableError::Malformed(format!(
                        "empty cell {} ∘ {}",
                        order[i], order[j]
                    )));
                }
                cells[order[i].index()][order[j].index()] = set;
            }
        }
        Ok(CompositionTable { cells })
    }

    pub fn base(&self, a: Rcc8, b: Rcc8) -> RelationSet {
        self.cells[a.index()][b.index()]
    }

    /// Union of base compositions over every pair drawn from the two sets.
    pub fn compose(&self, a: RelationSet, b: RelationSet) -> RelationSet {
        let mut out = RelationSet::EMPTY;
        for x in a.iter() {
            for y in b.iter() {
                out = out.union(self.cells[x.index()][y.index()]);
                if out.is_universal() {
                    return out;
                }
            }
        }
        out
    }
}

/// Composition with the bundled table.
pub fn compose(a: RelationSet, b: RelationSet) -> RelationSet {
    use std::sync::OnceLock;
    static TABLE: OnceLock<CompositionTable> = OnceLock::new();
    TABLE.get_or_init(CompositionTable::standard).compose(a, b)
}

/// Element-wise converse.
pub fn converse(r: RelationSet) -> RelationSet {
    r.converse()
}
