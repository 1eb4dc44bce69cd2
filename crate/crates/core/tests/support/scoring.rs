//! Brute-force scoring oracle with its own flattening. It enumerates every
//! kind-respecting partial injection of gold identifiers into predicted ones.

use std::collections::{BTreeSet, HashMap};

use spatconf::model::{Ref, SentenceAnnotation};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Obj {
    Node(usize, String),
    Lit(String),
    Tag(usize, String, String),
}

type T = (usize, String, String, Obj);

fn norm(s: &str) -> String {
    s.to_lowercase().split_whitespace().collect::<Vec<_>>().join(" ")
}

fn flatten(a: &SentenceAnnotation) -> (BTreeSet<T>, [Vec<String>; 3]) {
    let mut set = BTreeSet::new();
    let mut ids: [Vec<String>; 3] = Default::default();
    for e in &a.entities {
        ids[0].push(e.id.clone());
        set.insert((0, e.id.clone(), "instance".into(), Obj::Lit("entity".into())));
        set.insert((0, e.id.clone(), "head".into(), Obj::Lit(norm(&e.head))));
        for p in &e.props {
            set.insert((0, e.id.clone(), format!("prop:{}", p.name), Obj::Lit(norm(&p.span))));
        }
    }
    let ent = |r: &Ref| match r {
        Ref::Id(e) => Obj::Node(0, e.clone()),
        Ref::Implicit => Obj::Lit("implicit".into()),
    };
    for c in &a.configurations {
        ids[1].push(c.id.clone());
        let q = |l: &str| format!("{}::{l}", c.id);
        let mut add = |r: &str, o: Obj| {
            set.insert((1, c.id.clone(), r.to_string(), o));
        };
        add("tr", ent(&c.trajector.entity));
        for l in &c.landmarks {
            ids[2].push(q(&l.id));
            add("lm", ent(&l.entity));
        }
        for s in &c.indicators {
            add("sp", Obj::Lit(norm(&s.span)));
        }
        for m in &c.motion {
            add("m", Obj::Lit(norm(&m.span)));
        }
        for seg in c.path.iter().flat_map(|p| &p.segments) {
            let o = match &seg.lm {
                Ref::Id(l) => Obj::Node(2, q(l)),
                Ref::Implicit => Obj::Lit("implicit".into()),
            };
            add(&format!("path-part:{}", seg.part), o);
        }
        for f in &c.fors {
            add("for", Obj::Tag(2, q(&f.lm), f.value.to_string()));
        }
        if let Some(v) = c.viewer {
            add("viewer", Obj::Lit(v.to_string()));
        }
        for qt in &c.qts {
            add("qt", Obj::Lit(format!("{}={}", qt.g_type, qt.f_meaning)));
        }
    }
    (set, ids)
}

pub fn triple_count(a: &SentenceAnnotation) -> usize {
    flatten(a).0.len()
}

fn apply(t: &T, m: &[HashMap<String, String>; 3]) -> Option<T> {
    let subj = m[t.0].get(&t.1)?.clone();
    let obj = match &t.3 {
        Obj::Node(k, x) => Obj::Node(*k, m[*k].get(x)?.clone()),
        Obj::Tag(k, x, v) => Obj::Tag(*k, m[*k].get(x)?.clone(), v.clone()),
        o => o.clone(),
    };
    Some((t.0, subj, t.2.clone(), obj))
}

/// Maximum matched-triple count over all mappings, with both totals.
pub fn best_match(gold: &SentenceAnnotation, pred: &SentenceAnnotation) -> (usize, usize, usize) {
    let (g, gids) = flatten(gold);
    let (p, pids) = flatten(pred);
    let mut best = 0;
    let mut maps: [HashMap<String, String>; 3] = Default::default();
    let slots: Vec<(usize, String)> = (0..3).flat_map(|k| gids[k].iter().map(move |x| (k, x.clone()))).collect();
    enumerate(&slots, 0, &pids, &mut maps, &mut |m| {
        let n = g.iter().filter(|t| apply(t, m).is_some_and(|x| p.contains(&x))).count();
        best = best.max(n);
    });
    (best, g.len(), p.len())
}

fn enumerate(
    slots: &[(usize, String)],
    at: usize,
    pids: &[Vec<String>; 3],
    maps: &mut [HashMap<String, String>; 3],
    visit: &mut dyn FnMut(&[HashMap<String, String>; 3]),
) {
    if at == slots.len() {
        visit(maps);
        return;
    }
    let (k, x) = &slots[at];
    enumerate(slots, at + 1, pids, maps, visit);
    for y in &pids[*k] {
        if maps[*k].values().any(|v| v == y) {
            continue;
        }
        maps[*k].insert(x.clone(), y.clone());
        enumerate(slots, at + 1, pids, maps, visit);
        maps[*k].remove(x);
    }
}
