//! Triple-matching precision, recall and F1 between two annotations of a sentence.
//!
//! Annotations are flattened into triples whose subjects and some objects are local
//! identifiers (entity ids, configuration ids, landmark role ids). Identifiers of the
//! two sides are aligned kind by kind with an injective mapping chosen to maximize
//! the number of shared triples.

mod triples;

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::model::{validate, SentenceAnnotation, Violation};

pub use triples::{normalize_span, Triple, TripleObject};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("{side} annotation `{sentence}` is invalid: {}", .violations[0])]
    InvalidAnnotation {
        side: &'static str,
        sentence: String,
        violations: Vec<Violation>,
    },
}

fn checked(a: &SentenceAnnotation, side: &'static str) -> Result<(), ScoreError> {
    let violations = validate(a);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ScoreError::InvalidAnnotation {
            side,
            sentence: a.sentence_id.clone(),
            violations,
        })
    }
}

/// Deterministic flattening of a valid annotation.
pub fn to_triples(a: &SentenceAnnotation) -> Result<Vec<Triple>, ScoreError> {
    checked(a, "input")?;
    Ok(triples::flatten(a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Exhaustive when both sides have at most `exhaustive_limit` identifiers.
    #[default]
    Auto,
    Exhaustive,
    HillClimb,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreOptions {
    pub restarts: usize,
    pub seed: u64,
    pub mode: SearchMode,
    pub exhaustive_limit: usize,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        ScoreOptions {
            restarts: 4,
            seed: 0,
            mode: SearchMode::Auto,
            exhaustive_limit: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreReport {
    pub matched: usize,
    pub gold_total: usize,
    pub pred_total: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Gold identifier to predicted identifier. Landmark role ids are qualified by
    /// their configuration (`c1/l2`).
    pub mapping: Vec<(String, String)>,
    /// Whether the mapping is a proven optimum.
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Prf {
    /// Two empty sides agree perfectly.
    pub fn from_counts(matched: usize, gold: usize, pred: usize) -> Prf {
        if gold == 0 && pred == 0 {
            return Prf {
                precision: 1.0,
                recall: 1.0,
                f1: 1.0,
            };
        }
        let ratio = |n: usize, d: usize| if d == 0 { 0.0 } else { n as f64 / d as f64 };
        let precision = ratio(matched, pred);
        let recall = ratio(matched, gold);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Prf {
            precision,
            recall,
            f1,
        }
    }
}

const KINDS: usize = 3;
const ENTITY: u8 = 0;
const CONFIG: u8 = 1;
const LANDMARK: u8 = 2;

type Node = (u8, u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Obj {
    Node(Node),
    Const(u32),
    Tagged(Node, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct CTriple {
    subj: Node,
    rel: u32,
    obj: Obj,
}

#[derive(Default)]
struct Interner(HashMap<String, u32>);

impl Interner {
    fn get(&mut self, s: &str) -> u32 {
        let n = self.0.len() as u32;
        *self.0.entry(s.to_string()).or_insert(n)
    }
}

struct Side {
    ids: [Vec<String>; KINDS],
    triples: Vec<CTriple>,
}

fn compile(a: &SentenceAnnotation, strings: &mut Interner) -> Side {
    let mut ids: [Vec<String>; KINDS] = Default::default();
    let mut index: HashMap<(u8, String), u32> = HashMap::new();
    let mut declare = |kind: u8, name: String, ids: &mut [Vec<String>; KINDS]| {
        index.entry((kind, name.clone())).or_insert_with(|| {
            ids[kind as usize].push(name);
            ids[kind as usize].len() as u32 - 1
        });
    };
    for e in &a.entities {
        declare(ENTITY, e.id.clone(), &mut ids);
    }
    for c in &a.configurations {
        declare(CONFIG, c.id.clone(), &mut ids);
        for l in &c.landmarks {
            declare(LANDMARK, format!("{}/{}", c.id, l.id), &mut ids);
        }
    }
    let node = |kind: u8, name: &str| -> Option<Node> {
        index.get(&(kind, name.to_string())).map(|&i| (kind, i))
    };
    let mut out = Vec::new();
    for t in triples::flatten(a) {
        let is_config = a.configurations.iter().any(|c| c.id == t.subject);
        let subj_kind = if is_config { CONFIG } else { ENTITY };
        let Some(subj) = node(subj_kind, &t.subject) else {
            continue;
        };
        let landmark = |l: &str| node(LANDMARK, &format!("{}/{l}", t.subject));
        let obj = match &t.object {
            TripleObject::Const(s) => Some(Obj::Const(strings.get(s))),
            TripleObject::Id(id) if t.relation.starts_with("path-part:") => landmark(id).map(Obj::Node),
            TripleObject::Id(id) => node(ENTITY, id).map(Obj::Node),
            TripleObject::Tagged(l, v) => landmark(l).map(|n| Obj::Tagged(n, strings.get(v))),
        };
        if let Some(obj) = obj {
            out.push(CTriple {
                subj,
                rel: strings.get(&t.relation),
                obj,
            });
        }
    }
    Side { ids, triples: out }
}

/// `map[kind][gold index]` = predicted index.
type Mapping = [Vec<Option<u32>>; KINDS];

struct Problem {
    gold: Side,
    pred: Side,
    pred_set: HashSet<CTriple>,
}

impl Problem {
    fn map_node(&self, m: &Mapping, (k, i): Node) -> Option<Node> {
        m[k as usize][i as usize].map(|p| (k, p))
    }

    fn matched(&self, m: &Mapping) -> usize {
        self.gold
            .triples
            .iter()
            .filter(|t| {
                let Some(subj) = self.map_node(m, t.subj) else {
                    return false;
                };
                let obj = match t.obj {
                    Obj::Const(c) => Obj::Const(c),
                    Obj::Node(n) => match self.map_node(m, n) {
                        Some(n) => Obj::Node(n),
                        None => return false,
                    },
                    Obj::Tagged(n, v) => match self.map_node(m, n) {
                        Some(n) => Obj::Tagged(n, v),
                        None => return false,
                    },
                };
                self.pred_set.contains(&CTriple {
                    subj,
                    rel: t.rel,
                    obj,
                })
            })
            .count()
    }

    fn sizes(&self, k: usize) -> (usize, usize) {
        (self.gold.ids[k].len(), self.pred.ids[k].len())
    }

    /// Views of every triple touching a node, with that node blanked out.
    fn signatures(side: &Side, kind: u8) -> Vec<HashSet<(u32, u8, u32, bool)>> {
        let mut out = vec![HashSet::new(); side.ids[kind as usize].len()];
        for t in &side.triples {
            let c = match t.obj {
                Obj::Const(c) | Obj::Tagged(_, c) => c,
                Obj::Node(_) => u32::MAX,
            };
            if t.subj.0 == kind {
                out[t.subj.1 as usize].insert((t.rel, 0, c, true));
            }
            match t.obj {
                Obj::Node(n) | Obj::Tagged(n, _) if n.0 == kind => {
                    out[n.1 as usize].insert((t.rel, 1, c, false));
                }
                _ => {}
            }
        }
        out
    }

    fn greedy(&self) -> Mapping {
        let mut m: Mapping = Default::default();
        for k in 0..KINDS {
            let (g, p) = self.sizes(k);
            let gs = Problem::signatures(&self.gold, k as u8);
            let ps = Problem::signatures(&self.pred, k as u8);
            let mut pairs = Vec::with_capacity(g * p);
            for (i, a) in gs.iter().enumerate() {
                for (j, b) in ps.iter().enumerate() {
                    pairs.push((a.intersection(b).count(), i, j));
                }
            }
            pairs.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
            m[k] = vec![None; g];
            let mut used = vec![false; p];
            for (_, i, j) in pairs {
                if m[k][i].is_none() && !used[j] {
                    m[k][i] = Some(j as u32);
                    used[j] = true;
                }
            }
        }
        m
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Mapping {
        let mut m: Mapping = Default::default();
        for k in 0..KINDS {
            let (g, p) = self.sizes(k);
            let mut targets: Vec<Option<u32>> = (0..p as u32).map(Some).collect();
            targets.resize(g.max(p), None);
            targets.shuffle(rng);
            targets.truncate(g);
            m[k] = if g > p {
                targets
            } else {
                targets.into_iter().collect()
            };
            if g <= p {
                // every gold id must be mapped in a maximal injection
                let mut free: Vec<u32> = (0..p as u32)
                    .filter(|j| !m[k].contains(&Some(*j)))
                    .collect();
                for slot in m[k].iter_mut().filter(|s| s.is_none()) {
                    *slot = free.pop();
                }
            }
        }
        m
    }

    /// Best-improvement local search over swaps and moves to unused targets.
    fn climb(&self, mut m: Mapping) -> (Mapping, usize) {
        let mut best = self.matched(&m);
        loop {
            let mut improved: Option<(Mapping, usize)> = None;
            for k in 0..KINDS {
                let (g, p) = self.sizes(k);
                for i in 0..g {
                    for j in i + 1..g {
                        if m[k][i] == m[k][j] {
                            continue;
                        }
                        let mut n = m.clone();
                        n[k].swap(i, j);
                        let s = self.matched(&n);
                        if s > improved.as_ref().map_or(best, |x| x.1) {
                            improved = Some((n, s));
                        }
                    }
                    for y in 0..p as u32 {
                        if m[k].contains(&Some(y)) {
                            continue;
                        }
                        let mut n = m.clone();
                        n[k][i] = Some(y);
                        let s = self.matched(&n);
                        if s > improved.as_ref().map_or(best, |x| x.1) {
                            improved = Some((n, s));
                        }
                    }
                }
            }
            match improved {
                Some((n, s)) => {
                    m = n;
                    best = s;
                }
                None => return (m, best),
            }
        }
    }

    fn exhaustive(&self) -> (Mapping, usize) {
        let mut slots = Vec::new();
        for k in 0..KINDS {
            for i in 0..self.gold.ids[k].len() {
                slots.push((k, i));
            }
        }
        let mut m: Mapping = Default::default();
        for k in 0..KINDS {
            m[k] = vec![None; self.gold.ids[k].len()];
        }
        let mut used: [Vec<bool>; KINDS] = Default::default();
        let mut nones = [0usize; KINDS];
        for k in 0..KINDS {
            used[k] = vec![false; self.pred.ids[k].len()];
            let (g, p) = self.sizes(k);
            nones[k] = g.saturating_sub(p);
        }
        let mut best = (m.clone(), 0usize, false);
        self.enumerate(&slots, 0, &mut m, &mut used, &mut nones, &mut best);
        (best.0, best.1)
    }

    fn enumerate(
        &self,
        slots: &[(usize, usize)],
        at: usize,
        m: &mut Mapping,
        used: &mut [Vec<bool>; KINDS],
        nones: &mut [usize; KINDS],
        best: &mut (Mapping, usize, bool),
    ) {
        if at == slots.len() {
            let s = self.matched(m);
            if !best.2 || s > best.1 {
                *best = (m.clone(), s, true);
            }
            return;
        }
        let (k, i) = slots[at];
        for y in 0..used[k].len() {
            if used[k][y] {
                continue;
            }
            used[k][y] = true;
            m[k][i] = Some(y as u32);
            self.enumerate(slots, at + 1, m, used, nones, best);
            used[k][y] = false;
        }
        if nones[k] > 0 {
            nones[k] -= 1;
            m[k][i] = None;
            self.enumerate(slots, at + 1, m, used, nones, best);
            nones[k] += 1;
        }
        m[k][i] = None;
    }
}

fn identifier_count(side: &Side) -> usize {
    side.ids.iter().map(Vec::len).sum()
}

/// Scores with default options and the given number of random restarts.
pub fn score(
    gold: &SentenceAnnotation,
    pred: &SentenceAnnotation,
    restarts: usize,
) -> Result<ScoreReport, ScoreError> {
    score_with(
        gold,
        pred,
        &ScoreOptions {
            restarts,
            ..ScoreOptions::default()
        },
    )
}

pub fn score_with(
    gold: &SentenceAnnotation,
    pred: &SentenceAnnotation,
    options: &ScoreOptions,
) -> Result<ScoreReport, ScoreError> {
    checked(gold, "gold")?;
    checked(pred, "pred")?;
    let mut strings = Interner::default();
    let gold = compile(gold, &mut strings);
    let pred = compile(pred, &mut strings);
    let pred_set: HashSet<CTriple> = pred.triples.iter().copied().collect();
    let problem = Problem {
        gold,
        pred,
        pred_set,
    };

    let small = identifier_count(&problem.gold) <= options.exhaustive_limit
        && identifier_count(&problem.pred) <= options.exhaustive_limit;
    let exact = match options.mode {
        SearchMode::Auto => small,
        SearchMode::Exhaustive => true,
        SearchMode::HillClimb => false,
    };
    let (mapping, matched) = if exact {
        problem.exhaustive()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let mut best = problem.climb(problem.greedy());
        for _ in 0..options.restarts {
            let start = problem.random(&mut rng);
            let candidate = problem.climb(start);
            if candidate.1 > best.1 {
                best = candidate;
            }
        }
        best
    };

    let gold_total = problem.gold.triples.len();
    let pred_total = problem.pred.triples.len();
    let prf = Prf::from_counts(matched, gold_total, pred_total);
    let mut pairs = Vec::new();
    for (k, row) in mapping.iter().enumerate() {
        for (i, target) in row.iter().enumerate() {
            if let Some(j) = target {
                pairs.push((
                    problem.gold.ids[k][i].clone(),
                    problem.pred.ids[k][*j as usize].clone(),
                ));
            }
        }
    }
    Ok(ScoreReport {
        matched,
        gold_total,
        pred_total,
        precision: prf.precision,
        recall: prf.recall,
        f1: prf.f1,
        mapping: pairs,
        exact,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SentenceScore {
    pub sentence_id: String,
    pub report: ScoreReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusReport {
    pub sentences: Vec<SentenceScore>,
    pub matched: usize,
    pub gold_total: usize,
    pub pred_total: usize,
    pub micro: Prf,
    #[serde(rename = "macro")]
    pub macro_avg: Prf,
}

/// Pairs gold and predicted annotations by sentence id, in gold order. Predicted
/// sentences without gold are appended and scored against an empty annotation;
/// missing predictions score against an empty one.
pub fn pair_by_id<'a>(
    gold: &'a [SentenceAnnotation],
    pred: &'a [SentenceAnnotation],
) -> Vec<(SentenceAnnotation, SentenceAnnotation)> {
    let mut out = Vec::new();
    let mut taken = vec![false; pred.len()];
    for g in gold {
        let p = pred
            .iter()
            .enumerate()
            .find(|(i, p)| !taken[*i] && p.sentence_id == g.sentence_id);
        match p {
            Some((i, p)) => {
                taken[i] = true;
                out.push((g.clone(), p.clone()));
            }
            None => out.push((g.clone(), SentenceAnnotation::empty(&g.sentence_id, &g.text))),
        }
    }
    for (i, p) in pred.iter().enumerate() {
        if !taken[i] {
            out.push((SentenceAnnotation::empty(&p.sentence_id, &p.text), p.clone()));
        }
    }
    out
}

/// Micro averages pool triple counts; macro averages per-sentence ratios.
pub fn aggregate(sentences: Vec<SentenceScore>) -> CorpusReport {
    let matched = sentences.iter().map(|s| s.report.matched).sum();
    let gold_total = sentences.iter().map(|s| s.report.gold_total).sum();
    let pred_total = sentences.iter().map(|s| s.report.pred_total).sum();
    let n = sentences.len();
    let mean = |f: fn(&ScoreReport) -> f64| {
        if n == 0 {
            1.0
        } else {
            sentences.iter().map(|s| f(&s.report)).sum::<f64>() / n as f64
        }
    };
    let macro_avg = Prf {
        precision: mean(|r| r.precision),
        recall: mean(|r| r.recall),
        f1: mean(|r| r.f1),
    };
    CorpusReport {
        micro: Prf::from_counts(matched, gold_total, pred_total),
        macro_avg,
        matched,
        gold_total,
        pred_total,
        sentences,
    }
}

pub fn score_corpus(
    gold: &[SentenceAnnotation],
    pred: &[SentenceAnnotation],
    options: &ScoreOptions,
) -> Result<CorpusReport, ScoreError> {
    let scores = pair_by_id(gold, pred)
        .into_iter()
        .map(|(g, p)| {
            Ok(SentenceScore {
                sentence_id: g.sentence_id.clone(),
                report: score_with(&g, &p, options)?,
            })
        })
        .collect::<Result<Vec<_>, ScoreError>>()?;
    Ok(aggregate(scores))
}
