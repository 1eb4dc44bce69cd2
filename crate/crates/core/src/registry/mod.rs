//! Inventory of spatial rolesets, general frames and extraction lexicons.
//!
//! The registry is loaded from a JSON data file (see `docs/formats.md`); the
//! seed inventory ships as `data/registry.json` and is embedded in the crate.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ForValue, PathPart, QtPair};

const SEED: &str = include_str!("../../../../data/registry.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FunctionTag {
    SE1,
    SE2,
    ANC,
    AXS,
    PRT,
    WHL,
    ANG,
    ORT,
    SCL,
}

impl FunctionTag {
    pub const ALL: [FunctionTag; 9] = [
        FunctionTag::SE1,
        FunctionTag::SE2,
        FunctionTag::ANC,
        FunctionTag::AXS,
        FunctionTag::PRT,
        FunctionTag::WHL,
        FunctionTag::ANG,
        FunctionTag::ORT,
        FunctionTag::SCL,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FunctionTag::SE1 => "SE1",
            FunctionTag::SE2 => "SE2",
            FunctionTag::ANC => "ANC",
            FunctionTag::AXS => "AXS",
            FunctionTag::PRT => "PRT",
            FunctionTag::WHL => "WHL",
            FunctionTag::ANG => "ANG",
            FunctionTag::ORT => "ORT",
            FunctionTag::SCL => "SCL",
        }
    }

    /// Tags naming the figure side of a relation.
    pub fn is_figure(self) -> bool {
        matches!(self, FunctionTag::SE1 | FunctionTag::PRT)
    }

    /// Tags naming the ground side of a relation.
    pub fn is_ground(self) -> bool {
        matches!(self, FunctionTag::SE2 | FunctionTag::WHL)
    }
}

impl fmt::Display for FunctionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FunctionTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| s.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RolesetKind {
    StaticRelation,
    Motion,
    InternalRelation,
    GeneralFrame,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionHints {
    #[serde(default)]
    pub default_qt: Vec<QtPair>,
    pub default_for: ForValue,
    /// The predicate may fold into an area / part-of property of its ground entity.
    #[serde(default)]
    pub region_collapsible: bool,
    /// Property name used when collapsing ("area", "part-of").
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region_property: Option<String>,
    /// Property span used when collapsing; defaults to the roleset stem.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region_span: Option<String>,
    /// Per-roleset overrides of the registry-wide role to property map.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub property_role_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RolesetEntry {
    pub name: String,
    #[serde(default)]
    pub gloss: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub kind: RolesetKind,
    /// Argument role (":ARG0".. ":ARG6") to its spatial function tag, if any.
    pub args: BTreeMap<String, Option<FunctionTag>>,
    pub hints: ExtractionHints,
}

impl RolesetEntry {
    /// Name without the sense number: `on-top-03` → `on-top`.
    pub fn stem(&self) -> &str {
        sense_stem(&self.name)
    }

    pub fn tag_of(&self, role: &str) -> Option<FunctionTag> {
        self.args.get(role).copied().flatten()
    }

    pub fn role_with(&self, tag: FunctionTag) -> Option<&str> {
        self.args
            .iter()
            .find(|(_, t)| **t == Some(tag))
            .map(|(r, _)| r.as_str())
    }

    /// Alias lemmas with the part-of-speech suffix removed.
    pub fn alias_lemmas(&self) -> impl Iterator<Item = &str> {
        self.aliases.iter().map(|a| strip_pos(a))
    }

    /// Property span produced when this predicate collapses onto its ground entity.
    pub fn region_span(&self) -> &str {
        self.hints
            .region_span
            .as_deref()
            .unwrap_or_else(|| self.stem())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameSlot {
    Member,
    Configuration,
    Axis,
    Origin,
    Housing,
    Coordinate,
    Framework,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameArg {
    pub role: String,
    pub slot: FrameSlot,
    #[serde(default)]
    pub gloss: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralFrameEntry {
    pub name: String,
    pub args: Vec<FrameArg>,
}

impl GeneralFrameEntry {
    pub fn role_for(&self, slot: FrameSlot) -> impl Iterator<Item = &str> {
        self.args
            .iter()
            .filter(move |a| a.slot == slot)
            .map(|a| a.role.as_str())
    }
}

/// Names of the general frames the extractor understands.
pub const GENERAL_FRAMES: [&str; 4] = [
    "have-configuration-91",
    "spatial-sequence-91",
    "cartesian-framework-91",
    "cartesian-coordinate-entity",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RoleProperty {
    role: String,
    property: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ConceptProperty {
    concept: String,
    property: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RolePart {
    role: String,
    part: PathPart,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct PartSpans {
    part: PathPart,
    spans: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegistryFile {
    rolesets: Vec<RolesetEntry>,
    #[serde(default)]
    general_frames: Vec<GeneralFrameEntry>,
    #[serde(default)]
    general_roles: Vec<String>,
    #[serde(default)]
    property_role_map: Vec<RoleProperty>,
    #[serde(default)]
    modifier_lexicon: Vec<ConceptProperty>,
    #[serde(default)]
    indicator_roles: Vec<RoleProperty>,
    #[serde(default)]
    path_roles: Vec<RolePart>,
    #[serde(default)]
    path_indicators: Vec<PartSpans>,
    #[serde(default)]
    property_order: Vec<String>,
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("duplicate roleset name `{0}`")]
    DuplicateName(String),
    #[error("alias `{alias}` is declared by both `{first}` and `{second}`")]
    DuplicateAlias {
        alias: String,
        first: String,
        second: String,
    },
    #[error("unknown function tag `{tag}` at {path}")]
    UnknownFunctionTag { tag: String, path: String },
    #[error("roleset `{0}` mixes SE1/SE2 with PRT/WHL")]
    ConflictingTags(String),
    #[error("roleset `{name}` has kind {kind:?} but its tags imply otherwise")]
    KindMismatch { name: String, kind: RolesetKind },
    #[error("general frame `{0}` violates its argument limits")]
    FrameArity(String),
    #[error("malformed registry file at {path}: {message}")]
    MalformedFile { path: String, message: String },
    #[error("cannot read registry: {0}")]
    Io(#[from] std::io::Error),
}

/// Read-only lookup tables for extraction.
#[derive(Debug, Clone)]
pub struct Registry {
    rolesets: Vec<RolesetEntry>,
    by_name: HashMap<String, usize>,
    by_alias: HashMap<String, usize>,
    general_frames: Vec<GeneralFrameEntry>,
    general_roles: Vec<String>,
    property_roles: BTreeMap<String, String>,
    modifier_lexicon: BTreeMap<String, String>,
    indicator_roles: BTreeMap<String, String>,
    path_roles: BTreeMap<String, PathPart>,
    path_indicators: BTreeMap<PathPart, Vec<String>>,
    property_order: Vec<String>,
}

/// `above-01` → `above`; names without a sense number are returned unchanged.
pub fn sense_stem(name: &str) -> &str {
    match name.rsplit_once('-') {
        Some((stem, sense)) if !sense.is_empty() && sense.chars().all(|c| c.is_ascii_digit()) => {
            stem
        }
        _ => name,
    }
}

/// Whether a concept looks like a predicate sense (`touch-01`).
pub fn is_predicate_concept(concept: &str) -> bool {
    sense_stem(concept) != concept
}

/// `in-line-p` → `in-line`.
pub fn strip_pos(alias: &str) -> &str {
    match alias.rsplit_once('-') {
        Some((lemma, pos)) if matches!(pos, "p" | "r" | "v" | "j" | "n") => lemma,
        _ => alias,
    }
}

impl Registry {
    /// The bundled seed registry.
    pub fn seed() -> Registry {
        Registry::from_json(SEED).expect("bundled registry is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Registry, RegistryError> {
        let text = std::fs::read_to_string(path)?;
        Registry::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Registry, RegistryError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: RegistryFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let message = inner.to_string();
            if let Some(tag) = unknown_tag(&message) {
                RegistryError::UnknownFunctionTag { tag, path }
            } else {
                RegistryError::MalformedFile { path, message }
            }
        })?;
        Registry::build(file)
    }

    fn build(file: RegistryFile) -> Result<Registry, RegistryError> {
        let mut by_name = HashMap::new();
        let mut by_alias: HashMap<String, usize> = HashMap::new();
        for (i, r) in file.rolesets.iter().enumerate() {
            if by_name.insert(r.name.clone(), i).is_some() {
                return Err(RegistryError::DuplicateName(r.name.clone()));
            }
            let tags: Vec<FunctionTag> = r.args.values().flatten().copied().collect();
            let external = tags.iter().any(|t| matches!(t, FunctionTag::SE1 | FunctionTag::SE2));
            let internal = tags.iter().any(|t| matches!(t, FunctionTag::PRT | FunctionTag::WHL));
            if external && internal {
                return Err(RegistryError::ConflictingTags(r.name.clone()));
            }
            if internal != (r.kind == RolesetKind::InternalRelation) {
                return Err(RegistryError::KindMismatch {
                    name: r.name.clone(),
                    kind: r.kind,
                });
            }
            if let Some(bad) = r.args.keys().find(|k| !crate::penman::is_valid_role(k)) {
                return Err(RegistryError::MalformedFile {
                    path: format!("rolesets[{i}].args"),
                    message: format!("invalid role `{bad}`"),
                });
            }
            for alias in &r.aliases {
                if let Some(&j) = by_alias.get(alias) {
                    return Err(RegistryError::DuplicateAlias {
                        alias: alias.clone(),
                        first: file.rolesets[j].name.clone(),
                        second: r.name.clone(),
                    });
                }
                by_alias.insert(alias.clone(), i);
            }
        }
        for f in &file.general_frames {
            if by_name.contains_key(&f.name) {
                return Err(RegistryError::DuplicateName(f.name.clone()));
            }
            let count = |s: FrameSlot| f.args.iter().filter(|a| a.slot == s).count();
            if count(FrameSlot::Axis) > 3 || count(FrameSlot::Origin) > 1 || count(FrameSlot::Housing) > 1
            {
                return Err(RegistryError::FrameArity(f.name.clone()));
            }
        }
        for (i, f) in file.general_frames.iter().enumerate() {
            if file.general_frames[..i].iter().any(|g| g.name == f.name) {
                return Err(RegistryError::DuplicateName(f.name.clone()));
            }
        }
        Ok(Registry {
            rolesets: file.rolesets,
            by_name,
            by_alias,
            general_frames: file.general_frames,
            general_roles: file.general_roles,
            property_roles: file
                .property_role_map
                .into_iter()
                .map(|p| (p.role, p.property))
                .collect(),
            modifier_lexicon: file
                .modifier_lexicon
                .into_iter()
                .map(|p| (p.concept, p.property))
                .collect(),
            indicator_roles: file
                .indicator_roles
                .into_iter()
                .map(|p| (p.role, p.property))
                .collect(),
            path_roles: file.path_roles.into_iter().map(|p| (p.role, p.part)).collect(),
            path_indicators: file
                .path_indicators
                .into_iter()
                .map(|p| (p.part, p.spans))
                .collect(),
            property_order: file.property_order,
        })
    }

    /// Exact name match, then alias match (with or without the part-of-speech suffix).
    pub fn lookup(&self, concept: &str) -> Option<&RolesetEntry> {
        if let Some(&i) = self.by_name.get(concept) {
            return Some(&self.rolesets[i]);
        }
        self.lookup_alias(concept).or_else(|| {
            self.rolesets
                .iter()
                .find(|r| r.alias_lemmas().any(|a| a == concept))
        })
    }

    pub fn lookup_alias(&self, alias: &str) -> Option<&RolesetEntry> {
        self.by_alias.get(alias).map(|&i| &self.rolesets[i])
    }

    pub fn general_frame(&self, concept: &str) -> Option<&GeneralFrameEntry> {
        self.general_frames.iter().find(|f| f.name == concept)
    }

    pub fn is_spatial_trigger(&self, concept: &str) -> bool {
        self.general_frame(concept).is_some()
            || self.lookup(concept).is_some_and(|r| {
                matches!(
                    r.kind,
                    RolesetKind::StaticRelation | RolesetKind::Motion | RolesetKind::InternalRelation
                )
            })
    }

    pub fn rolesets(&self) -> &[RolesetEntry] {
        &self.rolesets
    }

    pub fn general_frames(&self) -> &[GeneralFrameEntry] {
        &self.general_frames
    }

    pub fn general_roles(&self) -> &[String] {
        &self.general_roles
    }

    /// Entity property produced by an AMR role, consulting the roleset override first.
    pub fn property_for_role<'a>(&'a self, role: &str, context: Option<&'a RolesetEntry>) -> Option<&'a str> {
        context
            .and_then(|r| r.hints.property_role_map.get(role))
            .or_else(|| self.property_roles.get(role))
            .map(String::as_str)
    }

    /// Property named by a `:mod` concept such as `base` → `loc`.
    pub fn modifier_property(&self, concept: &str) -> Option<&str> {
        self.modifier_lexicon.get(concept).map(String::as_str)
    }

    pub fn indicator_property(&self, role: &str) -> Option<&str> {
        self.indicator_roles.get(role).map(String::as_str)
    }

    pub fn path_part_for_role(&self, role: &str) -> Option<PathPart> {
        self.path_roles.get(role).copied()
    }

    /// Candidate surface spans for a path segment indicator, most preferred first.
    pub fn path_indicator_spans(&self, part: PathPart) -> &[String] {
        self.path_indicators
            .get(&part)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Rank of a property name in display order; unknown names sort last.
    pub fn property_rank(&self, name: &str) -> usize {
        self.property_order
            .iter()
            .position(|p| p == name)
            .unwrap_or(self.property_order.len())
    }

    /// Copy of the registry with one roleset replaced, for what-if experiments.
    pub fn with_roleset(&self, entry: RolesetEntry) -> Result<Registry, RegistryError> {
        let mut rolesets = self.rolesets.clone();
        match rolesets.iter_mut().find(|r| r.name == entry.name) {
            Some(slot) => *slot = entry,
            None => rolesets.push(entry),
        }
        Registry::build(RegistryFile {
            rolesets,
            general_frames: self.general_frames.clone(),
            general_roles: self.general_roles.clone(),
            property_role_map: self
                .property_roles
                .iter()
                .map(|(role, property)| RoleProperty { role: role.clone(), property: property.clone() })
                .collect(),
            modifier_lexicon: self
                .modifier_lexicon
                .iter()
                .map(|(concept, property)| ConceptProperty { concept: concept.clone(), property: property.clone() })
                .collect(),
            indicator_roles: self
                .indicator_roles
                .iter()
                .map(|(role, property)| RoleProperty { role: role.clone(), property: property.clone() })
                .collect(),
            path_roles: self
                .path_roles
                .iter()
                .map(|(role, part)| RolePart { role: role.clone(), part: *part })
                .collect(),
            path_indicators: self
                .path_indicators
                .iter()
                .map(|(part, spans)| PartSpans { part: *part, spans: spans.clone() })
                .collect(),
            property_order: self.property_order.clone(),
        })
    }
}

fn unknown_tag(message: &str) -> Option<String> {
    // serde reports: unknown variant `XYZ`, expected one of `SE1`, ...
    if !message.contains("expected one of `SE1`") {
        return None;
    }
    let start = message.find('`')? + 1;
    let end = start + message[start..].find('`')?;
    Some(message[start..end].to_string())
}
