//! Random Penman graphs and a structural isomorphism check that ignores variable names.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use spatconf::penman::{AmrEdge, AmrGraph, AmrNode, Constant, Target};

const CONCEPTS: &[&str] = &[
    "place-01", "move-01", "block", "column", "above-01", "touch-01", "and", "space", "bell",
    "name", "thing", "right-04", "composite-entity", "have-configuration-91",
];
const ROLES: &[&str] = &[
    ":ARG0", ":ARG1", ":ARG2", ":ARG1-of", ":ARG2-of", ":mod", ":op1", ":op2", ":location",
    ":part-of", ":consist-of", ":domain", ":poss-of",
];
const CONST_ROLES: &[&str] = &[":quant", ":polarity", ":mode", ":op1", ":value", ":name"];

fn constant(rng: &mut impl Rng) -> Constant {
    match rng.gen_range(0..6) {
        0 => Constant::Symbol(rng.gen_range(0..100).to_string()),
        1 => Constant::Symbol("-".into()),
        2 => Constant::Symbol("+".into()),
        3 => Constant::Symbol("imperative".into()),
        4 => Constant::Symbol(format!("{}.5", rng.gen_range(0..10))),
        _ => {
            let words = ["Nvidia", "New York", "say \"hi\"", "a\\b", "(paren)", ":colon"];
            Constant::Str(words.choose(rng).unwrap().to_string())
        }
    }
}

/// Connected rooted graph with `1..=max_nodes` nodes, re-entrancies, inverse roles
/// and constants. Every node is reachable from the root along written edges.
pub fn random_graph(rng: &mut impl Rng, max_nodes: usize) -> AmrGraph {
    let n = rng.gen_range(1..=max_nodes);
    let mut names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    names.shuffle(rng);
    let nodes: Vec<AmrNode> = names
        .iter()
        .map(|v| AmrNode {
            variable: v.clone(),
            concept: CONCEPTS.choose(rng).unwrap().to_string(),
        })
        .collect();
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        edges.push(AmrEdge {
            source: names[parent].clone(),
            role: ROLES.choose(rng).unwrap().to_string(),
            target: Target::Var(names[i].clone()),
        });
    }
    for _ in 0..rng.gen_range(0..=n / 2) {
        edges.push(AmrEdge {
            source: names[rng.gen_range(0..n)].clone(),
            role: ROLES.choose(rng).unwrap().to_string(),
            target: Target::Var(names[rng.gen_range(0..n)].clone()),
        });
    }
    for _ in 0..rng.gen_range(0..=n) {
        edges.push(AmrEdge {
            source: names[rng.gen_range(0..n)].clone(),
            role: CONST_ROLES.choose(rng).unwrap().to_string(),
            target: Target::Const(constant(rng)),
        });
    }
    edges.shuffle(rng);
    // a shuffled tree edge may now follow its child's own edges; still reachable
    AmrGraph::new(names[0].clone(), nodes, edges).expect("generated graph is well formed")
}

/// Same graph with every variable renamed.
pub fn renamed(g: &AmrGraph, rng: &mut impl Rng) -> AmrGraph {
    let mut fresh: Vec<String> = (0..g.nodes().len()).map(|i| format!("x{}", i + 100)).collect();
    fresh.shuffle(rng);
    let map: HashMap<&str, String> = g
        .nodes()
        .iter()
        .zip(fresh)
        .map(|(n, f)| (n.variable.as_str(), f))
        .collect();
    let nodes = g
        .nodes()
        .iter()
        .map(|n| AmrNode { variable: map[n.variable.as_str()].clone(), concept: n.concept.clone() })
        .collect();
    let edges = g
        .edges()
        .iter()
        .map(|e| AmrEdge {
            source: map[e.source.as_str()].clone(),
            role: e.role.clone(),
            target: match &e.target {
                Target::Var(v) => Target::Var(map[v.as_str()].clone()),
                c => c.clone(),
            },
        })
        .collect();
    AmrGraph::new(map[g.root()].clone(), nodes, edges).unwrap()
}

type EdgeBag = BTreeMap<(usize, String, Result<usize, Constant>), usize>;

fn bag(g: &AmrGraph, index: &HashMap<&str, usize>, map: &[usize]) -> EdgeBag {
    let mut out = BTreeMap::new();
    for e in g.edges() {
        let t = match &e.target {
            Target::Var(v) => Ok(map[index[v.as_str()]]),
            Target::Const(c) => Err(c.clone()),
        };
        *out.entry((map[index[e.source.as_str()]], e.role.clone(), t)).or_insert(0) += 1;
    }
    out
}

/// Whether a root-preserving bijection maps nodes to equal concepts and the written
/// edge multiset of `a` onto that of `b`.
pub fn isomorphic(a: &AmrGraph, b: &AmrGraph) -> bool {
    let n = a.nodes().len();
    if n != b.nodes().len() || a.edges().len() != b.edges().len() {
        return false;
    }
    let ia: HashMap<&str, usize> = a.nodes().iter().enumerate().map(|(i, x)| (x.variable.as_str(), i)).collect();
    let ib: HashMap<&str, usize> = b.nodes().iter().enumerate().map(|(i, x)| (x.variable.as_str(), i)).collect();
    let identity: Vec<usize> = (0..n).collect();
    let target = bag(b, &ib, &identity);

    // visit order over a: breadth first along written edges, each node with the
    // edge (parent, role) that discovered it
    let mut order = vec![(ia[a.root()], None::<(usize, String)>)];
    let mut seen = vec![false; n];
    seen[ia[a.root()]] = true;
    let mut queue = VecDeque::from([a.root().to_string()]);
    while let Some(v) = queue.pop_front() {
        for e in a.outgoing(&v) {
            if let Target::Var(t) = &e.target {
                let ti = ia[t.as_str()];
                if !seen[ti] {
                    seen[ti] = true;
                    order.push((ti, Some((ia[v.as_str()], e.role.clone()))));
                    queue.push_back(t.clone());
                }
            }
        }
    }
    if order.len() != n {
        return false;
    }

    let signature = |g: &AmrGraph, v: &str| {
        let mut out: Vec<String> = g.outgoing(v).map(|e| e.role.clone()).collect();
        out.sort();
        let mut inc: Vec<String> = g
            .edges()
            .iter()
            .filter(|e| e.target.as_var() == Some(v))
            .map(|e| e.role.clone())
            .collect();
        inc.sort();
        (g.concept(v).unwrap().to_string(), out, inc)
    };
    let sig_a: Vec<_> = a.nodes().iter().map(|x| signature(a, &x.variable)).collect();
    let sig_b: Vec<_> = b.nodes().iter().map(|x| signature(b, &x.variable)).collect();
    if sig_a[ia[a.root()]] != sig_b[ib[b.root()]] {
        return false;
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[ia[a.root()]] = ib[b.root()];
    used[ib[b.root()]] = true;
    search(a, b, &ib, &order, 1, &sig_a, &sig_b, &mut map, &mut used, &ia, &target)
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &AmrGraph,
    b: &AmrGraph,
    ib: &HashMap<&str, usize>,
    order: &[(usize, Option<(usize, String)>)],
    at: usize,
    sig_a: &[(String, Vec<String>, Vec<String>)],
    sig_b: &[(String, Vec<String>, Vec<String>)],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    ia: &HashMap<&str, usize>,
    target: &EdgeBag,
) -> bool {
    if at == order.len() {
        return bag(a, ia, map) == *target;
    }
    let (u, via) = &order[at];
    let (parent, role) = via.as_ref().unwrap();
    let parent_b = &b.nodes()[map[*parent]].variable;
    let mut candidates: Vec<usize> = b
        .outgoing(parent_b)
        .filter(|e| &e.role == role)
        .filter_map(|e| e.target.as_var().map(|t| ib[t]))
        .filter(|&c| !used[c] && sig_b[c] == sig_a[*u])
        .collect();
    candidates.sort_unstable();
    candidates.dedup();
    for c in candidates {
        map[*u] = c;
        used[c] = true;
        if search(a, b, ib, order, at + 1, sig_a, sig_b, map, used, ia, target) {
            return true;
        }
        used[c] = false;
    }
    map[*u] = usize::MAX;
    false
}
