use std::collections::VecDeque;

use serde::Serialize;

use super::network::QtConstraintNetwork;
use super::relation::RelationSet;
use super::table::CompositionTable;

/// One tightening step: `x→z` shrank through the path `x→y→z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refinement {
    pub x: String,
    pub y: String,
    pub z: String,
    pub before: RelationSet,
    pub after: RelationSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub network: QtConstraintNetwork,
    pub consistent: bool,
    pub trace: Vec<Refinement>,
    /// First pair whose constraint became empty.
    pub witness: Option<(String, String)>,
}

/// Path-consistency to a fixpoint. Sound for inconsistency, not complete in general.
pub fn algebraic_closure(network: &QtConstraintNetwork, table: &CompositionTable) -> Closure {
    let mut net = network.clone();
    let n = net.len();
    let mut trace = Vec::new();
    let mut queued = vec![vec![false; n]; n];
    let mut queue = VecDeque::new();
    for (i, row) in queued.iter_mut().enumerate() {
        for (j, q) in row.iter_mut().enumerate().skip(i + 1) {
            *q = true;
            queue.push_back((i, j));
        }
    }
    for i in 0..n {
        if net.at(i, i).is_empty() {
            let v = net.variables()[i].clone();
            return Closure {
                network: net,
                consistent: false,
                trace,
                witness: Some((v.clone(), v)),
            };
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && net.at(i, j).is_empty() {
                let vars = net.variables();
                let witness = Some((vars[i].clone(), vars[j].clone()));
                return Closure {
                    network: net,
                    consistent: false,
                    trace,
                    witness,
                };
            }
        }
    }

    while let Some((i, j)) = queue.pop_front() {
        queued[i][j] = false;
        let rij = net.at(i, j);
        for k in 0..n {
            if k == i || k == j {
                continue;
            }
            // tighten i→k through j, and k→j through i
            for (a, b, via) in [(i, k, j), (k, j, i)] {
                let (first, second) = if via == j {
                    (rij, net.at(j, k))
                } else {
                    (net.at(k, i), rij)
                };
                let before = net.at(a, b);
                let after = before.intersection(table.compose(first, second));
                if after == before {
                    continue;
                }
                net.set_at(a, b, after);
                let vars = net.variables();
                trace.push(Refinement {
                    x: vars[a].clone(),
                    y: vars[via].clone(),
                    z: vars[b].clone(),
                    before,
                    after,
                });
                if after.is_empty() {
                    let witness = Some((vars[a].clone(), vars[b].clone()));
                    return Closure {
                        network: net,
                        consistent: false,
                        trace,
                        witness,
                    };
                }
                let (p, q) = if a < b { (a, b) } else { (b, a) };
                if !queued[p][q] {
                    queued[p][q] = true;
                    queue.push_back((p, q));
                }
            }
        }
    }
    Closure {
        network: net,
        consistent: true,
        trace,
        witness: None,
    }
}
