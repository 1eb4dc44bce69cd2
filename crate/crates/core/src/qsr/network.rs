use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::relation::{Rcc8, RelationSet};
use crate::model::{GType, SentenceAnnotation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QsrError {
    #[error("configuration {config}: topological meaning `{f_meaning}` is not an RCC8 relation")]
    UnknownFMeaning { config: String, f_meaning: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed network file: {0}")]
    Malformed(String),
}

/// Dense constraint network; `constraint(x, y)` is always the converse of
/// `constraint(y, x)` and the diagonal is `{EQ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QtConstraintNetwork {
    vars: Vec<String>,
    rel: Vec<Vec<RelationSet>>,
}

impl QtConstraintNetwork {
    pub fn new() -> Self {
        QtConstraintNetwork {
            vars: Vec::new(),
            rel: Vec::new(),
        }
    }

    pub fn with_variables<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Self {
        let mut n = QtConstraintNetwork::new();
        for v in vars {
            n.add_variable(v);
        }
        n
    }

    /// Adds a variable unconstrained against every other; returns its index.
    pub fn add_variable(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(i) = self.index(&name) {
            return i;
        }
        for row in &mut self.rel {
            row.push(RelationSet::UNIVERSAL);
        }
        self.vars.push(name);
        let n = self.vars.len();
        let mut row = vec![RelationSet::UNIVERSAL; n];
        row[n - 1] = Rcc8::EQ.into();
        self.rel.push(row);
        n - 1
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn at(&self, i: usize, j: usize) -> RelationSet {
        self.rel[i][j]
    }

    pub(crate) fn set_at(&mut self, i: usize, j: usize, r: RelationSet) {
        self.rel[i][j] = r;
        self.rel[j][i] = r.converse();
    }

    pub fn constraint(&self, x: &str, y: &str) -> Option<RelationSet> {
        Some(self.rel[self.index(x)?][self.index(y)?])
    }

    /// Intersects the existing constraint between `x` and `y` with `r`, adding
    /// either variable when missing.
    pub fn constrain(&mut self, x: &str, y: &str, r: RelationSet) {
        let i = self.add_variable(x);
        let j = self.add_variable(y);
        let r = if i == j { r.intersection(Rcc8::EQ.into()) } else { r };
        let merged = self.rel[i][j].intersection(r);
        self.set_at(i, j, merged);
    }

    /// Non-universal constraints with `x` before `y` in variable order.
    pub fn constraints(&self) -> Vec<(&str, &str, RelationSet)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if !self.rel[i][j].is_universal() {
                    out.push((self.vars[i].as_str(), self.vars[j].as_str(), self.rel[i][j]));
                }
            }
        }
        out
    }

    /// Same network with variables listed in the given order.
    pub fn permuted(&self, order: &[usize]) -> QtConstraintNetwork {
        let vars = order.iter().map(|&i| self.vars[i].clone()).collect();
        let rel = order
            .iter()
            .map(|&i| order.iter().map(|&j| self.rel[i][j]).collect())
            .collect();
        QtConstraintNetwork { vars, rel }
    }
}

impl Default for QtConstraintNetwork {
    fn default() -> Self {
        QtConstraintNetwork::new()
    }
}

impl fmt::Display for QtConstraintNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, y, r) in self.constraints() {
            writeln!(f, "{x} {r} {y}")?;
        }
        Ok(())
    }
}

/// Interchange form of a network: variables plus a list of constraints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkFile {
    #[serde(default)]
    pub variables: Vec<String>,
    pub constraints: Vec<ConstraintEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintEntry {
    pub x: String,
    pub y: String,
    pub rel: RelationSet,
}

impl NetworkFile {
    pub fn parse(text: &str) -> Result<QtConstraintNetwork, QsrError> {
        let file: NetworkFile =
            serde_json::from_str(text).map_err(|e| QsrError::Malformed(e.to_string()))?;
        Ok(file.into_network())
    }

    pub fn into_network(self) -> QtConstraintNetwork {
        let mut n = QtConstraintNetwork::with_variables(self.variables);
        for c in self.constraints {
            n.constrain(&c.x, &c.y, c.rel);
        }
        n
    }

    pub fn from_network(n: &QtConstraintNetwork) -> NetworkFile {
        NetworkFile {
            variables: n.variables().to_vec(),
            constraints: n
                .constraints()
                .into_iter()
                .map(|(x, y, rel)| ConstraintEntry {
                    x: x.to_string(),
                    y: y.to_string(),
                    rel,
                })
                .collect(),
        }
    }
}

/// Why a QT slot did not contribute a constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Notice {
    pub config: String,
    pub message: String,
}

impl fmt::Display for Notice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.config, self.message)
    }
}

/// Topological constraints between trajector and landmark entities of every
/// configuration. Entity ids are the network variables.
pub fn network_from_annotation(
    annotation: &SentenceAnnotation,
) -> Result<(QtConstraintNetwork, Vec<Notice>), QsrError> {
    let mut net = QtConstraintNetwork::new();
    let mut notices = Vec::new();
    for c in &annotation.configurations {
        for qt in &c.qts {
            if qt.g_type != GType::Topology {
                notices.push(Notice {
                    config: c.id.clone(),
                    message: format!("⟨{}, {}⟩ is not reasoned over", qt.g_type, qt.f_meaning),
                });
                continue;
            }
            let rel = RelationSet::from_f_meaning(&qt.f_meaning).ok_or_else(|| {
                QsrError::UnknownFMeaning {
                    config: c.id.clone(),
                    f_meaning: qt.f_meaning.clone(),
                }
            })?;
            let Some(tr) = c.trajector.entity.id() else {
                notices.push(Notice {
                    config: c.id.clone(),
                    message: "implicit trajector".into(),
                });
                continue;
            };
            let mut grounds: BTreeMap<&str, ()> = BTreeMap::new();
            for lm in &c.landmarks {
                match lm.entity.id() {
                    Some(e) => {
                        if grounds.insert(e, ()).is_none() {
                            net.constrain(tr, e, rel);
                        }
                    }
                    None => notices.push(Notice {
                        config: c.id.clone(),
                        message: format!("implicit landmark {}", lm.id),
                    }),
                }
            }
        }
    }
    Ok((net, notices))
}
