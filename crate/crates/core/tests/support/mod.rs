#![allow(dead_code)]

pub mod annotations;
pub mod graphs;
pub mod grid;
pub mod scoring;

use std::path::PathBuf;

use spatconf::model::{deserialize_annotation, Indicator, Rule, SentenceAnnotation};

pub const FIXTURES: [&str; 5] = ["tower", "heart", "nlvr", "blocks", "bell"];

pub fn fixture_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn gold(name: &str) -> SentenceAnnotation {
    let text = std::fs::read_to_string(fixture_root().join(format!("gold/{name}.json"))).unwrap();
    deserialize_annotation(&text).unwrap()
}

/// The six targeted schema mutations with the one rule each must trigger.
pub fn mutations() -> Vec<(&'static str, SentenceAnnotation, Rule)> {
    let mut out = Vec::new();

    let mut a = gold("tower");
    a.configurations[0].motion.push(Indicator::new("m2", "shift"));
    out.push(("duplicate motion indicator", a, Rule::MotionCardinality));

    let mut a = gold("nlvr");
    a.configurations[0].indicators.push(Indicator::new("s2", "against"));
    out.push(("second sp without a path", a, Rule::OneSpPerConfig));

    let mut a = gold("heart");
    a.configurations[1].fors[0].lm = "l9".into();
    out.push(("dangling FoR landmark", a, Rule::ForDanglingLandmark));

    let mut a = gold("tower");
    a.configurations[0].path.as_mut().unwrap().segments[1].lm = "l7".into();
    out.push(("dangling path landmark", a, Rule::PathDanglingLandmark));

    let mut a = gold("blocks");
    a.configurations[0].viewer = None;
    out.push(("missing viewer", a, Rule::ViewerCardinality));

    let mut a = gold("bell");
    a.configurations[2].qts.clear();
    out.push(("empty QT", a, Rule::QtEmpty));

    out
}
