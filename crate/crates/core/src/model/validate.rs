use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::{PathPart, Ref, SentenceAnnotation, SpatialConfiguration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    EntityIdDuplicate,
    EntityHeadEmpty,
    PropertyEmpty,
    ConfigIdDuplicate,
    RoleIdDuplicate,
    RoleIdPrefix,
    DanglingEntity,
    MotionCardinality,
    OneSpPerConfig,
    IndicatorSpanEmpty,
    PathEmpty,
    PathPartDuplicate,
    PathDanglingLandmark,
    PathDanglingIndicator,
    PathSegmentIndicatorMissing,
    ForDanglingLandmark,
    ViewerCardinality,
    QtEmpty,
}

impl Rule {
    pub fn code(self) -> &'static str {
        match self {
            Rule::EntityIdDuplicate => "ENTITY_ID_DUPLICATE",
            Rule::EntityHeadEmpty => "ENTITY_HEAD_EMPTY",
            Rule::PropertyEmpty => "PROPERTY_EMPTY",
            Rule::ConfigIdDuplicate => "CONFIG_ID_DUPLICATE",
            Rule::RoleIdDuplicate => "ROLE_ID_DUPLICATE",
            Rule::RoleIdPrefix => "ROLE_ID_PREFIX",
            Rule::DanglingEntity => "DANGLING_ENTITY",
            Rule::MotionCardinality => "MOTION_CARDINALITY",
            Rule::OneSpPerConfig => "ONE_SP_PER_CONFIG",
            Rule::IndicatorSpanEmpty => "INDICATOR_SPAN_EMPTY",
            Rule::PathEmpty => "PATH_EMPTY",
            Rule::PathPartDuplicate => "PATH_PART_DUPLICATE",
            Rule::PathDanglingLandmark => "PATH_DANGLING_LANDMARK",
            Rule::PathDanglingIndicator => "PATH_DANGLING_INDICATOR",
            Rule::PathSegmentIndicatorMissing => "PATH_SEGMENT_INDICATOR_MISSING",
            Rule::ForDanglingLandmark => "FOR_DANGLING_LANDMARK",
            Rule::ViewerCardinality => "VIEWER_CARDINALITY",
            Rule::QtEmpty => "QT_EMPTY",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    /// Id of the offending entity, configuration or role.
    pub id: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.rule, self.id, self.message)
    }
}

struct Report(Vec<Violation>);

impl Report {
    fn push(&mut self, rule: Rule, id: &str, message: impl Into<String>) {
        self.0.push(Violation {
            rule,
            id: id.to_string(),
            message: message.into(),
        });
    }
}

/// Checks every schema invariant. An empty result means the annotation is valid.
pub fn validate(annotation: &SentenceAnnotation) -> Vec<Violation> {
    let mut r = Report(Vec::new());

    let mut entity_ids = HashSet::new();
    for e in &annotation.entities {
        if !entity_ids.insert(e.id.as_str()) {
            r.push(Rule::EntityIdDuplicate, &e.id, "entity id declared twice");
        }
        if !e.implicit && e.head.trim().is_empty() {
            r.push(Rule::EntityHeadEmpty, &e.id, "non-implicit entity has no head");
        }
        for p in &e.props {
            if p.name.trim().is_empty() || p.span.trim().is_empty() {
                r.push(Rule::PropertyEmpty, &e.id, "property with empty name or span");
            }
        }
    }

    let mut config_ids = HashSet::new();
    for c in &annotation.configurations {
        if !config_ids.insert(c.id.as_str()) {
            r.push(Rule::ConfigIdDuplicate, &c.id, "configuration id declared twice");
        }
        check_configuration(c, &entity_ids, &mut r);
    }
    r.0
}

fn check_configuration(c: &SpatialConfiguration, entities: &HashSet<&str>, r: &mut Report) {
    let mut role_ids = HashSet::new();
    let mut role = |r: &mut Report, id: &str, prefix: char, what: &str| {
        if !role_ids.insert(id.to_string()) {
            r.push(Rule::RoleIdDuplicate, id, format!("role id reused in {}", c.id));
        }
        let ok = id.starts_with(prefix) && id.len() > 1;
        if !ok {
            r.push(Rule::RoleIdPrefix, id, format!("{what} id must start with `{prefix}`"));
        }
    };

    role(r, &c.trajector.id, 't', "trajector");
    for l in &c.landmarks {
        role(r, &l.id, 'l', "landmark");
    }
    for s in &c.indicators {
        role(r, &s.id, 's', "spatial indicator");
    }
    for m in &c.motion {
        role(r, &m.id, 'm', "motion indicator");
    }

    for b in std::iter::once(&c.trajector).chain(&c.landmarks) {
        if let Ref::Id(e) = &b.entity {
            if !entities.contains(e.as_str()) {
                r.push(Rule::DanglingEntity, &b.id, format!("references undeclared entity {e}"));
            }
        }
    }

    for ind in c.indicators.iter().chain(&c.motion) {
        if ind.span.trim().is_empty() {
            r.push(Rule::IndicatorSpanEmpty, &ind.id, "indicator has no span");
        }
        for p in &ind.props {
            if p.name.trim().is_empty() || p.span.trim().is_empty() {
                r.push(Rule::PropertyEmpty, &ind.id, "property with empty name or span");
            }
        }
    }

    if c.motion.len() > 1 {
        r.push(
            Rule::MotionCardinality,
            &c.id,
            format!("{} motion indicators; at most one allowed", c.motion.len()),
        );
    }

    match &c.path {
        None => {
            if c.indicators.len() != 1 {
                r.push(
                    Rule::OneSpPerConfig,
                    &c.id,
                    format!(
                        "configuration without a path needs exactly one spatial indicator, found {}",
                        c.indicators.len()
                    ),
                );
            }
        }
        Some(path) => {
            if path.segments.is_empty() {
                r.push(Rule::PathEmpty, &c.id, "path has no segments");
            }
            for part in [PathPart::Begin, PathPart::End] {
                if path.segments.iter().filter(|s| s.part == part).count() > 1 {
                    r.push(Rule::PathPartDuplicate, &c.id, format!("more than one {part} segment"));
                }
            }
            for seg in &path.segments {
                match &seg.lm {
                    Ref::Id(l) if c.landmark(l).is_none() => {
                        r.push(Rule::PathDanglingLandmark, l, format!("path landmark not declared in {}", c.id))
                    }
                    Ref::Id(l) if seg.sp.is_none() => r.push(
                        Rule::PathSegmentIndicatorMissing,
                        l,
                        "explicit path segment has no spatial indicator",
                    ),
                    _ => {}
                }
                if let Some(sp) = &seg.sp {
                    if c.indicator(sp).is_none() {
                        r.push(Rule::PathDanglingIndicator, sp, format!("path indicator not declared in {}", c.id));
                    }
                }
            }
            for p in &path.props {
                if p.name.trim().is_empty() || p.span.trim().is_empty() {
                    r.push(Rule::PropertyEmpty, &c.id, "path property with empty name or span");
                }
            }
        }
    }

    for f in &c.fors {
        if c.landmark(&f.lm).is_none() {
            r.push(Rule::ForDanglingLandmark, &f.lm, format!("frame of reference names undeclared landmark in {}", c.id));
        }
    }

    if c.viewer.is_none() {
        r.push(Rule::ViewerCardinality, &c.id, "configuration has no viewer");
    }

    if c.qts.is_empty() {
        r.push(Rule::QtEmpty, &c.id, "configuration has no qualitative type");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::*;

    fn nlvr() -> SentenceAnnotation {
        SentenceAnnotation {
            sentence_id: "nlvr".into(),
            text: "There is a blue square closely touching the bottom of a box.".into(),
            entities: vec![
                SpatialEntity { id: "e1".into(), head: "square".into(), props: vec![Property::new("col", "blue")], implicit: false },
                SpatialEntity { id: "e2".into(), head: "box".into(), props: vec![Property::new("part-of", "bottom")], implicit: false },
            ],
            configurations: vec![SpatialConfiguration {
                id: "c1".into(),
                trajector: RoleBinding::new("t1", "e1"),
                landmarks: vec![RoleBinding::new("l1", "e2")],
                indicators: vec![Indicator {
                    id: "s1".into(),
                    span: "touching".into(),
                    props: vec![Property::new("degree", "closely")],
                }],
                motion: vec![],
                path: None,
                fors: vec![ForAssignment { lm: "l1".into(), value: ForValue::Intrinsic }],
                viewer: Some(Viewer::FirstPerson),
                qts: vec![QtPair::new(GType::Topology, "EC")],
            }],
        }
    }

    fn rules(a: &SentenceAnnotation) -> Vec<Rule> {
        validate(a).into_iter().map(|v| v.rule).collect()
    }

    #[test]
    fn valid_fixture() {
        assert!(validate(&nlvr()).is_empty());
    }

    #[test]
    fn two_motion_indicators() {
        let mut a = nlvr();
        a.configurations[0].motion = vec![Indicator::new("m1", "move"), Indicator::new("m2", "slide")];
        assert_eq!(rules(&a), vec![Rule::MotionCardinality]);
    }

    #[test]
    fn two_indicators_without_path() {
        let mut a = nlvr();
        a.configurations[0].indicators.push(Indicator::new("s2", "near"));
        assert_eq!(rules(&a), vec![Rule::OneSpPerConfig]);
    }

    #[test]
    fn dangling_references() {
        let mut a = nlvr();
        a.configurations[0].fors[0].lm = "l9".into();
        a.configurations[0].trajector.entity = "e7".into();
        assert_eq!(rules(&a), vec![Rule::DanglingEntity, Rule::ForDanglingLandmark]);
    }

    #[test]
    fn missing_viewer_and_qt() {
        let mut a = nlvr();
        a.configurations[0].viewer = None;
        a.configurations[0].qts.clear();
        assert_eq!(rules(&a), vec![Rule::ViewerCardinality, Rule::QtEmpty]);
    }

    #[test]
    fn role_prefixes_and_duplicates() {
        let mut a = nlvr();
        a.configurations[0].landmarks[0].id = "x1".into();
        a.configurations[0].fors[0].lm = "x1".into();
        assert_eq!(rules(&a), vec![Rule::RoleIdPrefix]);
        let mut b = nlvr();
        b.configurations[0].indicators[0].id = "t1".into();
        assert_eq!(rules(&b), vec![Rule::RoleIdDuplicate, Rule::RoleIdPrefix]);
    }

    #[test]
    fn path_rules() {
        let mut a = nlvr();
        let c = &mut a.configurations[0];
        c.indicators.push(Indicator::new("s2", "to"));
        c.path = Some(Path {
            segments: vec![
                PathSegment { lm: Ref::Implicit, sp: None, part: PathPart::Begin },
                PathSegment { lm: "l1".into(), sp: Some("s2".into()), part: PathPart::End },
            ],
            props: vec![],
        });
        assert!(validate(&a).is_empty());
        let c = &mut a.configurations[0];
        c.path.as_mut().unwrap().segments.push(PathSegment { lm: "l5".into(), sp: Some("s9".into()), part: PathPart::End });
        assert_eq!(
            rules(&a),
            vec![Rule::PathPartDuplicate, Rule::PathDanglingLandmark, Rule::PathDanglingIndicator]
        );
    }

    #[test]
    fn entity_rules() {
        let mut a = nlvr();
        a.entities[1].id = "e1".into();
        a.entities[0].head = " ".into();
        a.entities[0].props.push(Property::new("col", ""));
        assert_eq!(
            rules(&a),
            vec![Rule::EntityHeadEmpty, Rule::PropertyEmpty, Rule::EntityIdDuplicate, Rule::DanglingEntity]
        );
        let mut b = nlvr();
        b.entities[0].head.clear();
        b.entities[0].implicit = true;
        assert!(validate(&b).is_empty());
    }
}
