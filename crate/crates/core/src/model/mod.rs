//! Spatial configuration schema: entities, configurations and their slots.
//!
//! A sentence is a set of spatial entities and a set of configurations. Each
//! configuration holds one trajector, landmarks or a path, spatial indicators,
//! at most one motion indicator, per-landmark frames of reference, one viewer
//! and one or more qualitative types.

mod json;
mod render;
mod validate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use json::{
    deserialize_annotation, deserialize_annotations, serialize_annotation, serialize_annotations,
    SchemaError,
};
pub use render::{render_table, RenderError};
pub use validate::{validate, Rule, Violation};

/// Serialized marker for an implicit entity or landmark.
pub const IMPLICIT: &str = "IMPLICIT";

/// Either a concrete identifier or the implicit marker.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "String", into = "String")]
pub enum Ref {
    Implicit,
    Id(String),
}

impl Ref {
    pub fn id(&self) -> Option<&str> {
        match self {
            Ref::Id(s) => Some(s),
            Ref::Implicit => None,
        }
    }

    pub fn is_implicit(&self) -> bool {
        matches!(self, Ref::Implicit)
    }
}

impl From<String> for Ref {
    fn from(s: String) -> Self {
        if s == IMPLICIT {
            Ref::Implicit
        } else {
            Ref::Id(s)
        }
    }
}

impl From<&str> for Ref {
    fn from(s: &str) -> Self {
        Ref::from(s.to_string())
    }
}

impl From<Ref> for String {
    fn from(r: Ref) -> String {
        match r {
            Ref::Implicit => IMPLICIT.to_string(),
            Ref::Id(s) => s,
        }
    }
}

impl fmt::Display for Ref {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ref::Implicit => f.write_str(IMPLICIT),
            Ref::Id(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Property {
    pub name: String,
    pub span: String,
}

impl Property {
    pub fn new(name: impl Into<String>, span: impl Into<String>) -> Self {
        Property {
            name: name.into(),
            span: span.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpatialEntity {
    pub id: String,
    pub head: String,
    #[serde(default)]
    pub props: Vec<Property>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub implicit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleBinding {
    pub id: String,
    pub entity: Ref,
}

impl RoleBinding {
    pub fn new(id: impl Into<String>, entity: impl Into<Ref>) -> Self {
        RoleBinding {
            id: id.into(),
            entity: entity.into(),
        }
    }
}

/// Spatial or motion indicator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Indicator {
    pub id: String,
    pub span: String,
    #[serde(default)]
    pub props: Vec<Property>,
}

impl Indicator {
    pub fn new(id: impl Into<String>, span: impl Into<String>) -> Self {
        Indicator {
            id: id.into(),
            span: span.into(),
            props: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathPart {
    Begin,
    Middle,
    End,
    Whole,
}

impl PathPart {
    pub const ALL: [PathPart; 4] = [PathPart::Begin, PathPart::Middle, PathPart::End, PathPart::Whole];

    pub fn as_str(self) -> &'static str {
        match self {
            PathPart::Begin => "begin",
            PathPart::Middle => "middle",
            PathPart::End => "end",
            PathPart::Whole => "whole",
        }
    }
}

impl fmt::Display for PathPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSegment {
    /// Landmark role id, or implicit.
    pub lm: Ref,
    /// Spatial indicator id; absent only for implicit endpoints.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sp: Option<String>,
    pub part: PathPart,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Path {
    pub segments: Vec<PathSegment>,
    #[serde(default)]
    pub props: Vec<Property>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForValue {
    Intrinsic,
    Relative,
    Absolute,
}

impl ForValue {
    pub fn as_str(self) -> &'static str {
        match self {
            ForValue::Intrinsic => "intrinsic",
            ForValue::Relative => "relative",
            ForValue::Absolute => "absolute",
        }
    }
}

impl fmt::Display for ForValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForAssignment {
    /// Landmark role id.
    pub lm: String,
    pub value: ForValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Viewer {
    FirstPerson,
    SecondPerson,
    ThirdPerson,
}

impl Viewer {
    pub fn as_str(self) -> &'static str {
        match self {
            Viewer::FirstPerson => "first-person",
            Viewer::SecondPerson => "second-person",
            Viewer::ThirdPerson => "third-person",
        }
    }
}

impl fmt::Display for Viewer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// General type of a qualitative relation. Input accepts the adjectival
/// spellings used in annotation tables ("directional", "distal", "topological").
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GType {
    #[serde(alias = "directional")]
    Direction,
    #[serde(alias = "distal")]
    Distance,
    #[serde(alias = "topological")]
    Topology,
}

impl GType {
    pub fn as_str(self) -> &'static str {
        match self {
            GType::Direction => "direction",
            GType::Distance => "distance",
            GType::Topology => "topology",
        }
    }

    /// Adjectival form used in rendered tables.
    pub fn adjective(self) -> &'static str {
        match self {
            GType::Direction => "directional",
            GType::Distance => "distal",
            GType::Topology => "topological",
        }
    }
}

impl fmt::Display for GType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direction" | "directional" => Ok(GType::Direction),
            "distance" | "distal" => Ok(GType::Distance),
            "topology" | "topological" => Ok(GType::Topology),
            other => Err(format!("unknown general type `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QtPair {
    pub g_type: GType,
    pub f_meaning: String,
}

impl QtPair {
    pub fn new(g_type: GType, f_meaning: impl Into<String>) -> Self {
        QtPair {
            g_type,
            f_meaning: f_meaning.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpatialConfiguration {
    pub id: String,
    #[serde(rename = "tr")]
    pub trajector: RoleBinding,
    #[serde(rename = "lm", default)]
    pub landmarks: Vec<RoleBinding>,
    #[serde(rename = "sp", default)]
    pub indicators: Vec<Indicator>,
    /// At most one element in a valid configuration.
    #[serde(rename = "m", default)]
    pub motion: Vec<Indicator>,
    #[serde(default)]
    pub path: Option<Path>,
    #[serde(rename = "for", default)]
    pub fors: Vec<ForAssignment>,
    /// Exactly one in a valid configuration.
    #[serde(rename = "v", default)]
    pub viewer: Option<Viewer>,
    #[serde(rename = "qt", default)]
    pub qts: Vec<QtPair>,
}

impl SpatialConfiguration {
    pub fn landmark(&self, role_id: &str) -> Option<&RoleBinding> {
        self.landmarks.iter().find(|l| l.id == role_id)
    }

    pub fn indicator(&self, id: &str) -> Option<&Indicator> {
        self.indicators.iter().find(|s| s.id == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceAnnotation {
    pub sentence_id: String,
    #[serde(default)]
    pub text: String,
    pub entities: Vec<SpatialEntity>,
    pub configurations: Vec<SpatialConfiguration>,
}

impl SentenceAnnotation {
    pub fn empty(sentence_id: impl Into<String>, text: impl Into<String>) -> Self {
        SentenceAnnotation {
            sentence_id: sentence_id.into(),
            text: text.into(),
            entities: Vec::new(),
            configurations: Vec::new(),
        }
    }

    pub fn entity(&self, id: &str) -> Option<&SpatialEntity> {
        self.entities.iter().find(|e| e.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gtype_spellings() {
        assert_eq!("distal".parse::<GType>(), Ok(GType::Distance));
        assert_eq!("topology".parse::<GType>(), Ok(GType::Topology));
        let qt: QtPair = serde_json::from_str(r#"{"g_type": "directional", "f_meaning": "relative"}"#).unwrap();
        assert_eq!(qt.g_type, GType::Direction);
        assert_eq!(serde_json::to_string(&qt).unwrap(), r#"{"g_type":"direction","f_meaning":"relative"}"#);
    }

    #[test]
    fn implicit_marker_round_trips() {
        let seg = PathSegment { lm: Ref::Implicit, sp: None, part: PathPart::Begin };
        let text = serde_json::to_string(&seg).unwrap();
        assert_eq!(text, r#"{"lm":"IMPLICIT","part":"begin"}"#);
        assert_eq!(serde_json::from_str::<PathSegment>(&text).unwrap(), seg);
    }
}
