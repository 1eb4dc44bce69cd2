use std::fmt;

use serde::Serialize;

use crate::model::{Ref, SentenceAnnotation};

/// Object slot of a triple: another identifier, a literal, or an identifier paired
/// with a literal (`l1=relative`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TripleObject {
    Id(String),
    Const(String),
    Tagged(String, String),
}

impl fmt::Display for TripleObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripleObject::Id(s) | TripleObject::Const(s) => f.write_str(s),
            TripleObject::Tagged(id, v) => write!(f, "{id}={v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triple {
    pub subject: String,
    pub relation: String,
    pub object: TripleObject,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.subject, self.relation, self.object)
    }
}

/// Lowercase with runs of whitespace collapsed to one space.
pub fn normalize_span(s: &str) -> String {
    s.split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

fn entity_object(r: &Ref) -> TripleObject {
    match r {
        Ref::Id(e) => TripleObject::Id(e.clone()),
        Ref::Implicit => TripleObject::Const("implicit".into()),
    }
}

/// Flattens an annotation into a sorted, duplicate-free triple list. The caller is
/// responsible for passing a valid annotation.
pub(crate) fn flatten(a: &SentenceAnnotation) -> Vec<Triple> {
    let mut out = Vec::new();
    let mut push = |s: &str, r: String, o: TripleObject| {
        out.push(Triple {
            subject: s.to_string(),
            relation: r,
            object: o,
        })
    };
    let lit = |s: &str| TripleObject::Const(normalize_span(s));
    for e in &a.entities {
        push(&e.id, "instance".into(), TripleObject::Const("entity".into()));
        push(&e.id, "head".into(), lit(&e.head));
        for p in &e.props {
            push(&e.id, format!("prop:{}", p.name), lit(&p.span));
        }
    }
    for c in &a.configurations {
        push(&c.id, "tr".into(), entity_object(&c.trajector.entity));
        for l in &c.landmarks {
            push(&c.id, "lm".into(), entity_object(&l.entity));
        }
        for s in &c.indicators {
            push(&c.id, "sp".into(), lit(&s.span));
        }
        for m in &c.motion {
            push(&c.id, "m".into(), lit(&m.span));
        }
        if let Some(path) = &c.path {
            for seg in &path.segments {
                let obj = match &seg.lm {
                    Ref::Id(l) => TripleObject::Id(l.clone()),
                    Ref::Implicit => TripleObject::Const("implicit".into()),
                };
                push(&c.id, format!("path-part:{}", seg.part), obj);
            }
        }
        for f in &c.fors {
            push(&c.id, "for".into(), TripleObject::Tagged(f.lm.clone(), f.value.to_string()));
        }
        if let Some(v) = c.viewer {
            push(&c.id, "viewer".into(), TripleObject::Const(v.to_string()));
        }
        for q in &c.qts {
            push(
                &c.id,
                "qt".into(),
                TripleObject::Const(format!("{}={}", q.g_type, q.f_meaning)),
            );
        }
    }
    out.sort();
    out.dedup();
    out
}
