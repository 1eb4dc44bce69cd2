//! Annotation generators: arbitrary ones for serialization, degraded fixtures for scoring.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use spatconf::model::*;

fn pick<'a, R: Rng>(rng: &mut R, xs: &[&'a str]) -> &'a str {
    xs.choose(rng).unwrap()
}

fn text<R: Rng>(rng: &mut R) -> String {
    let words = ["block", "red", "5 spaces", "über", "a \"quoted\" word", "top", "  padded ", "⟨x⟩", ""];
    pick(rng, &words).to_string()
}

fn props<R: Rng>(rng: &mut R) -> Vec<Property> {
    (0..rng.gen_range(0..3))
        .map(|_| Property::new(pick(rng, &["col", "size", "area", "metric", "degree"]), text(rng)))
        .collect()
}

fn reference<R: Rng>(rng: &mut R, prefix: &str) -> Ref {
    if rng.gen_bool(0.2) {
        Ref::Implicit
    } else {
        Ref::Id(format!("{prefix}{}", rng.gen_range(1..6)))
    }
}

fn indicator<R: Rng>(rng: &mut R, prefix: &str, i: usize) -> Indicator {
    Indicator { id: format!("{prefix}{i}"), span: text(rng), props: props(rng) }
}

/// Structurally arbitrary (not necessarily valid) annotation.
pub fn arbitrary<R: Rng>(rng: &mut R) -> SentenceAnnotation {
    let entities = (0..rng.gen_range(0..5))
        .map(|i| SpatialEntity {
            id: format!("e{}", i + 1),
            head: text(rng),
            props: props(rng),
            implicit: rng.gen_bool(0.1),
        })
        .collect();
    let configurations = (0..rng.gen_range(0..4))
        .map(|i| SpatialConfiguration {
            id: format!("c{}", i + 1),
            trajector: RoleBinding { id: format!("t{}", i + 1), entity: reference(rng, "e") },
            landmarks: (0..rng.gen_range(0..3))
                .map(|j| RoleBinding { id: format!("l{}", j + 1), entity: reference(rng, "e") })
                .collect(),
            indicators: (0..rng.gen_range(0..3)).map(|j| indicator(rng, "s", j + 1)).collect(),
            motion: (0..rng.gen_range(0..2)).map(|j| indicator(rng, "m", j + 1)).collect(),
            path: rng.gen_bool(0.4).then(|| Path {
                segments: (0..rng.gen_range(0..3))
                    .map(|_| PathSegment {
                        lm: reference(rng, "l"),
                        sp: rng.gen_bool(0.7).then(|| format!("s{}", rng.gen_range(1..3))),
                        part: *PathPart::ALL.choose(rng).unwrap(),
                    })
                    .collect(),
                props: props(rng),
            }),
            fors: (0..rng.gen_range(0..3))
                .map(|j| ForAssignment {
                    lm: format!("l{}", j + 1),
                    value: *[ForValue::Intrinsic, ForValue::Relative, ForValue::Absolute].choose(rng).unwrap(),
                })
                .collect(),
            viewer: [None, Some(Viewer::FirstPerson), Some(Viewer::SecondPerson), Some(Viewer::ThirdPerson)]
                .choose(rng)
                .copied()
                .unwrap(),
            qts: (0..rng.gen_range(0..3))
                .map(|_| QtPair::new(*[GType::Direction, GType::Distance, GType::Topology].choose(rng).unwrap(), pick(rng, &["EC", "DC", "relative", "quantitative"])))
                .collect(),
        })
        .collect();
    SentenceAnnotation {
        sentence_id: format!("s{}", rng.gen_range(0..1000)),
        text: text(rng),
        entities,
        configurations,
    }
}

pub fn identifier_count(a: &SentenceAnnotation) -> usize {
    a.entities.len()
        + a.configurations.len()
        + a.configurations.iter().map(|c| c.landmarks.len()).sum::<usize>()
}

/// Renames every entity and configuration id and every landmark role id.
pub fn rename_ids(a: &SentenceAnnotation) -> SentenceAnnotation {
    let ent = |id: &str| format!("ent{}", id.trim_start_matches('e').parse::<usize>().unwrap_or(0) * 7 + 3);
    let lmk = |id: &str| format!("lm{id}x");
    let fix = |r: &Ref| match r {
        Ref::Id(e) => Ref::Id(ent(e)),
        Ref::Implicit => Ref::Implicit,
    };
    let mut b = a.clone();
    for e in &mut b.entities {
        e.id = ent(&e.id);
    }
    b.entities.reverse();
    for c in &mut b.configurations {
        c.id = format!("cfg-{}", c.id);
        c.trajector.entity = fix(&c.trajector.entity);
        for l in &mut c.landmarks {
            l.entity = fix(&l.entity);
            l.id = lmk(&l.id);
        }
        for f in &mut c.fors {
            f.lm = lmk(&f.lm);
        }
        if let Some(p) = &mut c.path {
            for s in &mut p.segments {
                if let Ref::Id(l) = &s.lm {
                    s.lm = Ref::Id(lmk(l));
                }
            }
        }
    }
    b.configurations.reverse();
    b
}

/// One random edit; the result may be invalid.
pub fn degrade_once<R: Rng>(a: &mut SentenceAnnotation, rng: &mut R) {
    let nc = a.configurations.len();
    let ne = a.entities.len();
    match rng.gen_range(0..11) {
        0 if nc > 0 => {
            a.configurations.remove(rng.gen_range(0..nc));
        }
        1 if ne > 0 => a.entities[rng.gen_range(0..ne)].props.clear(),
        2 if ne > 0 => a.entities[rng.gen_range(0..ne)].head = pick(rng, &["cube", "tower", "block"]).into(),
        3 if nc > 0 => {
            let c = &mut a.configurations[rng.gen_range(0..nc)];
            if let Some(q) = c.qts.first_mut() {
                q.f_meaning = pick(rng, &["EC", "DC", "PO", "relative"]).into();
            }
        }
        4 if nc > 0 => {
            let c = &mut a.configurations[rng.gen_range(0..nc)];
            for f in &mut c.fors {
                f.value = ForValue::Intrinsic;
            }
        }
        5 if nc > 0 => {
            let c = &mut a.configurations[rng.gen_range(0..nc)];
            if let Some(l) = c.landmarks.first_mut() {
                std::mem::swap(&mut c.trajector.entity, &mut l.entity);
            }
        }
        6 if nc > 0 => {
            let c = &mut a.configurations[rng.gen_range(0..nc)];
            c.viewer = Some(Viewer::ThirdPerson);
        }
        7 if nc > 0 => {
            let c = &mut a.configurations[rng.gen_range(0..nc)];
            if let Some(l) = c.landmarks.pop() {
                c.fors.retain(|f| f.lm != l.id);
                if let Some(p) = &mut c.path {
                    p.segments.retain(|s| s.lm != Ref::Id(l.id.clone()));
                }
            }
        }
        8 => a.entities.shuffle(rng),
        9 if nc > 0 => {
            let c = &mut a.configurations[rng.gen_range(0..nc)];
            if let Some(s) = c.indicators.first_mut() {
                s.span = pick(rng, &["onto", "beside", "TO"]).into();
            }
        }
        10 if ne > 0 => {
            let i = rng.gen_range(0..ne);
            let id = a.entities[i].id.clone();
            a.entities[i].id = format!("{id}b");
            for c in &mut a.configurations {
                for b in std::iter::once(&mut c.trajector).chain(c.landmarks.iter_mut()) {
                    if b.entity == Ref::Id(id.clone()) {
                        b.entity = Ref::Id(format!("{id}b"));
                    }
                }
            }
        }
        _ => {}
    }
}

/// Valid degraded copies of `gold` with at most `limit` identifiers.
pub fn degraded<R: Rng>(gold: &SentenceAnnotation, rng: &mut R, count: usize, limit: usize) -> Vec<SentenceAnnotation> {
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 50 {
        attempts += 1;
        let mut p = gold.clone();
        for _ in 0..rng.gen_range(1..=3) {
            degrade_once(&mut p, rng);
        }
        if validate(&p).is_empty() && identifier_count(&p) <= limit {
            out.push(p);
        }
    }
    out
}

pub fn without_c2(a: &SentenceAnnotation) -> SentenceAnnotation {
    let mut b = a.clone();
    b.configurations.retain(|c| c.id != "c2");
    b
}

/// Fixture golds (cut down to at most 8 identifiers) against seeded degradations,
/// plus a few cross-fixture pairs.
pub fn degraded_pairs() -> Vec<(String, SentenceAnnotation, SentenceAnnotation)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut bases: Vec<(String, SentenceAnnotation)> = ["heart", "nlvr", "blocks"]
        .iter()
        .map(|n| (n.to_string(), super::gold(n)))
        .collect();
    bases.push(("tower-c1".into(), without_c2(&super::gold("tower"))));
    let mut bell = super::gold("bell");
    bell.configurations.pop();
    bases.push(("bell-c12".into(), bell));
    let mut pairs = Vec::new();
    for (name, base) in &bases {
        assert!(identifier_count(base) <= 8, "{name}");
        for p in degraded(base, &mut rng, 12, 8) {
            pairs.push((name.clone(), base.clone(), p));
        }
    }
    for (a, b) in [("nlvr", "blocks"), ("blocks", "heart"), ("heart", "nlvr")] {
        pairs.push((format!("{a}/{b}"), super::gold(a), super::gold(b)));
    }
    pairs
}

