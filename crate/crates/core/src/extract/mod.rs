//! AMR graph to spatial configurations.
//!
//! Triggers are nodes whose concept names a registry roleset. A region-collapsible
//! trigger with no figure argument that is itself the argument of another trigger
//! ("the top of the column") does not become a configuration; it is folded into an
//! `area` or `part-of` property of its ground entity instead.

mod surface;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::model::{
    validate, ForAssignment, ForValue, GType, Indicator, Path, PathPart, PathSegment, Property,
    QtPair, Ref, RoleBinding, SentenceAnnotation, SpatialConfiguration, SpatialEntity, Viewer,
};
use crate::penman::{AmrDocumentEntry, AmrGraph, Constant, NormalizedEdge, Target};
use crate::registry::{FrameSlot, FunctionTag, Registry, RolesetEntry, RolesetKind};

use surface::{contains_phrase, find_span, pluralize, words};

/// One argument of a trigger carrying a spatial function tag.
#[derive(Debug, Clone, PartialEq)]
pub struct ArgBinding {
    pub role: String,
    pub tag: FunctionTag,
    pub target: Target,
}

#[derive(Debug, Clone)]
pub struct Trigger<'r> {
    pub node: String,
    pub entry: &'r RolesetEntry,
    pub arg_bindings: Vec<ArgBinding>,
    /// Trigger whose ground argument this trigger modifies through an inverse role.
    pub under_landmark_of: Option<String>,
    /// The ground node through which `under_landmark_of` was reached.
    pub landmark_node: Option<String>,
}

impl Trigger<'_> {
    pub fn bound(&self, tags: &[FunctionTag]) -> impl Iterator<Item = &ArgBinding> {
        let tags = tags.to_vec();
        self.arg_bindings.iter().filter(move |b| tags.contains(&b.tag))
    }

    fn has_figure(&self) -> bool {
        self.bound(&[FunctionTag::SE1, FunctionTag::PRT]).next().is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WarningCode {
    UnknownArg,
    DroppedConfiguration,
    UnsupportedFrame,
}

impl fmt::Display for WarningCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WarningCode::UnknownArg => "UNKNOWN_ARG",
            WarningCode::DroppedConfiguration => "DROPPED_CONFIGURATION",
            WarningCode::UnsupportedFrame => "UNSUPPORTED_FRAME",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractionWarning {
    pub code: WarningCode,
    /// AMR variable the warning is about.
    pub node: String,
    pub message: String,
}

impl fmt::Display for ExtractionWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.code, self.node, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub annotation: SentenceAnnotation,
    pub warnings: Vec<ExtractionWarning>,
}

fn is_arg_role(role: &str) -> bool {
    role.strip_prefix(":ARG")
        .is_some_and(|n| !n.is_empty() && n.chars().all(|c| c.is_ascii_digit()))
}

fn op_index(role: &str) -> Option<u32> {
    role.strip_prefix(":op").and_then(|n| n.parse().ok())
}

/// Anchor classes that decide frame of reference and viewer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Anchor {
    Landmark,
    Speaker,
    Addressee,
    World,
    ThirdParty,
}

const WORLD_ANCHORS: &[&str] = &[
    "north", "south", "east", "west", "compass", "gravity", "earth", "world", "sky", "ground",
];

/// Entity reached through a ground argument, with the collapsed wrapper it came through.
#[derive(Debug, Clone)]
struct Ground {
    entity: String,
    wrapper: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Counters {
    t: usize,
    l: usize,
    s: usize,
    m: usize,
}

impl Counters {
    fn next(n: &mut usize, prefix: char) -> String {
        *n += 1;
        format!("{prefix}{n}")
    }
}

struct Ctx<'g, 'r> {
    graph: &'g AmrGraph,
    registry: &'r Registry,
    words: Option<Vec<String>>,
    edges: Vec<NormalizedEdge>,
    out: HashMap<String, Vec<usize>>,
    triggers: Vec<Trigger<'r>>,
    trigger_at: HashMap<String, usize>,
    collapsed: HashSet<usize>,
    warnings: Vec<ExtractionWarning>,
}

impl<'g, 'r> Ctx<'g, 'r> {
    fn new(graph: &'g AmrGraph, registry: &'r Registry, sentence: Option<&str>) -> Self {
        let edges = graph.normalized_edges();
        let mut out: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            out.entry(e.source.clone()).or_default().push(i);
        }
        let mut ctx = Ctx {
            graph,
            registry,
            words: sentence.map(words),
            edges,
            out,
            triggers: Vec::new(),
            trigger_at: HashMap::new(),
            collapsed: HashSet::new(),
            warnings: Vec::new(),
        };
        ctx.detect();
        ctx.find_collapsed();
        ctx.link_focus_shifts();
        ctx
    }

    fn warn(&mut self, code: WarningCode, node: &str, message: String) {
        self.warnings.push(ExtractionWarning {
            code,
            node: node.to_string(),
            message,
        });
    }

    fn concept(&self, var: &str) -> &'g str {
        self.graph.concept(var).unwrap_or("")
    }

    /// Normalized edges leaving `var`, in textual order.
    fn outgoing(&self, var: &str) -> impl Iterator<Item = &NormalizedEdge> {
        self.out
            .get(var)
            .into_iter()
            .flatten()
            .map(move |&i| &self.edges[i])
    }

    /// Edges written under `var` with forward roles.
    fn forward(&self, var: &str) -> impl Iterator<Item = &NormalizedEdge> {
        self.outgoing(var).filter(|e| !e.inverted)
    }

    fn detect(&mut self) {
        let order: Vec<&str> = self.graph.preorder();
        for var in order {
            let concept = self.concept(var);
            let Some(entry) = self.registry.lookup(concept) else {
                continue;
            };
            if entry.kind == RolesetKind::GeneralFrame {
                continue;
            }
            let mut bindings = Vec::new();
            let mut unknown = Vec::new();
            for e in self.outgoing(var) {
                match entry.args.get(&e.role) {
                    Some(Some(tag)) => bindings.push(ArgBinding {
                        role: e.role.clone(),
                        tag: *tag,
                        target: e.target.clone(),
                    }),
                    Some(None) => {}
                    None if is_arg_role(&e.role) => unknown.push(e.role.clone()),
                    None => {}
                }
            }
            for role in unknown {
                self.warn(
                    WarningCode::UnknownArg,
                    var,
                    format!("{} does not list {role}", entry.name),
                );
            }
            if bindings.is_empty() {
                self.warn(
                    WarningCode::DroppedConfiguration,
                    var,
                    format!("{} has no spatial arguments", entry.name),
                );
                continue;
            }
            self.trigger_at.insert(var.to_string(), self.triggers.len());
            self.triggers.push(Trigger {
                node: var.to_string(),
                entry,
                arg_bindings: bindings,
                under_landmark_of: None,
                landmark_node: None,
            });
        }
    }

    /// Whether trigger `child` is an argument of some other trigger or a motion path role.
    fn is_argument(&self, child: &str) -> bool {
        self.triggers.iter().any(|p| {
            p.node != child
                && self.outgoing(&p.node).any(|e| {
                    e.target.as_var() == Some(child)
                        && (p.entry.tag_of(&e.role).is_some()
                            || (p.entry.kind == RolesetKind::Motion
                                && self.registry.path_part_for_role(&e.role).is_some()))
                })
        })
    }

    fn find_collapsed(&mut self) {
        let collapsed: HashSet<usize> = self
            .triggers
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                t.entry.hints.region_collapsible && !t.has_figure() && self.is_argument(&t.node)
            })
            .map(|(i, _)| i)
            .collect();
        self.collapsed = collapsed;
    }

    fn link_focus_shifts(&mut self) {
        let mut links = Vec::new();
        for (i, t) in self.triggers.iter().enumerate() {
            // inverse edges written under some node X and pointing at this trigger
            let parents = self
                .edges
                .iter()
                .filter(|e| e.inverted && e.source == t.node)
                .filter_map(|e| e.target.as_var());
            for x in parents {
                let direct = self.triggers.iter().find(|p| {
                    p.node != t.node
                        && p.bound(&[FunctionTag::SE2, FunctionTag::WHL])
                            .any(|b| b.target.as_var() == Some(x))
                });
                let via_ground = || {
                    self.triggers.iter().find(|p| {
                        p.node != t.node && self.ground_nodes(p).iter().any(|g| g.entity == x)
                    })
                };
                if let Some(p) = direct.or_else(via_ground) {
                    links.push((i, p.node.clone(), x.to_string()));
                    break;
                }
            }
        }
        for (i, parent, x) in links {
            self.triggers[i].under_landmark_of = Some(parent);
            self.triggers[i].landmark_node = Some(x);
        }
    }

    /// Entities denoted by a ground argument: conjunctions expand to their operands,
    /// collapsed wrappers resolve to their own ground.
    fn resolve(&self, var: &str) -> Vec<Ground> {
        self.resolve_inner(var, &mut HashSet::new())
    }

    fn resolve_inner(&self, var: &str, seen: &mut HashSet<String>) -> Vec<Ground> {
        if !seen.insert(var.to_string()) {
            return Vec::new();
        }
        if let Some(&i) = self.trigger_at.get(var) {
            if !self.collapsed.contains(&i) {
                return Vec::new();
            }
            let t = &self.triggers[i];
            return t
                .bound(&[FunctionTag::SE2, FunctionTag::WHL])
                .filter_map(|b| b.target.as_var())
                .flat_map(|v| self.resolve_inner(v, seen))
                .map(|g| Ground {
                    entity: g.entity,
                    wrapper: Some(i),
                })
                .collect();
        }
        let concept = self.concept(var);
        if concept == "and" {
            let mut ops: Vec<(u32, &str)> = self
                .forward(var)
                .filter_map(|e| Some((op_index(&e.role)?, e.target.as_var()?)))
                .collect();
            ops.sort_by_key(|(n, _)| *n);
            return ops
                .into_iter()
                .flat_map(|(_, v)| self.resolve_inner(v, seen))
                .collect();
        }
        if self.registry.lookup(concept).is_some() || self.registry.general_frame(concept).is_some()
        {
            return Vec::new();
        }
        vec![Ground {
            entity: var.to_string(),
            wrapper: None,
        }]
    }

    /// Ground-side entities of a trigger (landmarks or path landmarks).
    fn ground_nodes(&self, t: &Trigger) -> Vec<Ground> {
        let mut out: Vec<Ground> = t
            .bound(&[FunctionTag::SE2, FunctionTag::WHL])
            .filter_map(|b| b.target.as_var())
            .flat_map(|v| self.resolve(v))
            .collect();
        if t.entry.kind == RolesetKind::Motion {
            for e in self.outgoing(&t.node) {
                if self.registry.path_part_for_role(&e.role).is_some() {
                    if let Some(v) = e.target.as_var() {
                        out.extend(self.resolve(v));
                    }
                }
            }
        }
        out
    }

    fn entity_nodes(&self) -> HashSet<String> {
        let mut set = HashSet::new();
        let roles = [FunctionTag::SE1, FunctionTag::SE2, FunctionTag::PRT, FunctionTag::WHL];
        for t in &self.triggers {
            for b in t.bound(&roles) {
                if let Some(v) = b.target.as_var() {
                    set.extend(self.resolve(v).into_iter().map(|g| g.entity));
                }
            }
            set.extend(self.ground_nodes(t).into_iter().map(|g| g.entity));
        }
        set
    }

    fn value_text(&self, target: &Target) -> String {
        match target {
            Target::Const(c) => c.text().to_string(),
            Target::Var(v) => self.concept(v).to_string(),
        }
    }

    fn number(&self, target: &Target) -> Option<f64> {
        target.as_const().and_then(Constant::as_number)
    }

    fn plural_count(&self, var: &str) -> bool {
        self.forward(var).any(|e| match e.role.as_str() {
            ":pl" => e.target.as_const().is_some_and(|c| c.text() == "+"),
            ":quant" => self.number(&e.target).is_some_and(|n| n > 1.0),
            _ => false,
        })
    }

    fn name_text(&self, var: &str) -> String {
        let mut ops: Vec<(u32, String)> = self
            .forward(var)
            .filter_map(|e| Some((op_index(&e.role)?, self.value_text(&e.target))))
            .collect();
        ops.sort_by_key(|(n, _)| *n);
        if ops.is_empty() {
            return self.concept(var).to_string();
        }
        ops.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(" ")
    }

    /// Entity properties from the node's own roles, in edge order.
    fn harvest_props(&self, var: &str) -> Vec<Property> {
        let mut props = Vec::new();
        for e in self.forward(var) {
            if e.role == ":mod" {
                if let Some(v) = e.target.as_var() {
                    let c = self.concept(v);
                    if let Some(name) = self.registry.modifier_property(c) {
                        props.push(Property::new(name, c));
                    }
                }
                continue;
            }
            if let Some(v) = e.target.as_var() {
                if self.concept(v) == "cartesian-coordinate-entity" {
                    for axis in self.forward(v) {
                        if let Some(name) = axis.role.strip_prefix(':') {
                            if matches!(name, "x" | "y" | "z") {
                                props.push(Property::new(name, self.value_text(&axis.target)));
                            }
                        }
                    }
                    continue;
                }
            }
            let Some(name) = self.registry.property_for_role(&e.role, None) else {
                continue;
            };
            let span = match (&e.target, e.role.as_str()) {
                (Target::Var(v), ":name") => self.name_text(v),
                (t, _) => self.value_text(t),
            };
            props.push(Property::new(name, span));
        }
        props
    }

    fn metric_text(&self, target: &Target) -> String {
        let Target::Var(v) = target else {
            return self.value_text(target);
        };
        let quant = self.forward(v).find(|e| e.role == ":quant");
        let unit = self.forward(v).find(|e| e.role == ":unit");
        match (quant, unit) {
            (Some(q), Some(u)) => {
                let unit = self.value_text(&u.target);
                let unit = if self.number(&q.target) == Some(1.0) {
                    unit
                } else {
                    pluralize(&unit)
                };
                format!("{} {unit}", self.value_text(&q.target))
            }
            (Some(q), None) => self.value_text(&q.target),
            _ => self.concept(v).to_string(),
        }
    }

    /// Surface span of a trigger's lexical indicator.
    fn trigger_span(&self, entry: &RolesetEntry) -> String {
        let candidates = std::iter::once(entry.stem()).chain(entry.alias_lemmas());
        self.words
            .as_ref()
            .and_then(|w| find_span(w, candidates))
            .unwrap_or_else(|| entry.stem().replace('-', "_"))
    }

    fn path_span(&self, part: PathPart) -> Option<String> {
        let spans = self.registry.path_indicator_spans(part);
        let found = self
            .words
            .as_ref()
            .and_then(|w| spans.iter().find(|s| contains_phrase(w, s)));
        found.or_else(|| spans.first()).map(|s| s.replace(' ', "_"))
    }

    fn classify_anchor(&self, anchor: &Target, landmarks: &[String]) -> Anchor {
        let Target::Var(v) = anchor else {
            return match anchor.as_const().map(Constant::text) {
                Some(c) if WORLD_ANCHORS.contains(&c) => Anchor::World,
                _ => Anchor::ThirdParty,
            };
        };
        if landmarks.iter().any(|l| l == v) {
            return Anchor::Landmark;
        }
        match self.concept(v) {
            "i" | "we" => Anchor::Speaker,
            "you" => Anchor::Addressee,
            c if WORLD_ANCHORS.contains(&c) => Anchor::World,
            _ => Anchor::ThirdParty,
        }
    }

    fn has_coordinates(&self, var: &str) -> bool {
        self.forward(var).any(|e| {
            e.target
                .as_var()
                .is_some_and(|v| self.concept(v) == "cartesian-coordinate-entity")
        })
    }

    fn addressee_possessed(&self, var: &str) -> bool {
        self.forward(var)
            .any(|e| e.role == ":poss" && e.target.as_var().is_some_and(|v| self.concept(v) == "you"))
    }
}

/// Spatial entities participating in trigger arguments, numbered in pre-order.
pub fn collect_entities(graph: &AmrGraph, registry: &Registry) -> Vec<SpatialEntity> {
    let ctx = Ctx::new(graph, registry, None);
    build_entities(&ctx).0
}

/// Nodes whose concept names a relational roleset and that carry at least one tagged argument.
pub fn detect_triggers<'r>(graph: &AmrGraph, registry: &'r Registry) -> Vec<Trigger<'r>> {
    Ctx::new(graph, registry, None).triggers
}

fn build_entities(ctx: &Ctx) -> (Vec<SpatialEntity>, HashMap<String, String>) {
    let nodes = ctx.entity_nodes();
    let mut props: HashMap<String, Vec<Property>> = HashMap::new();
    for var in &nodes {
        props.insert(var.clone(), ctx.harvest_props(var));
    }
    // region wrappers fold into their ground entity
    let mut collapsed: Vec<usize> = ctx.collapsed.iter().copied().collect();
    collapsed.sort_unstable();
    for i in collapsed {
        let t = &ctx.triggers[i];
        let Some(name) = t.entry.hints.region_property.as_deref() else {
            continue;
        };
        let span = t.entry.region_span();
        for b in t.bound(&[FunctionTag::SE2, FunctionTag::WHL]) {
            for g in b.target.as_var().map(|v| ctx.resolve(v)).unwrap_or_default() {
                if let Some(p) = props.get_mut(&g.entity) {
                    if !p.iter().any(|q| q.name == name && q.span == span) {
                        p.push(Property::new(name, span));
                    }
                }
            }
        }
    }
    // arrangement frames contribute a shape
    for node in ctx.graph.nodes() {
        let Some(frame) = ctx.registry.general_frame(&node.concept) else {
            continue;
        };
        if frame.name != "have-configuration-91" {
            continue;
        }
        let shape = frame
            .role_for(FrameSlot::Configuration)
            .find_map(|r| ctx.outgoing(&node.variable).find(|e| e.role == r))
            .map(|e| ctx.value_text(&e.target));
        let Some(shape) = shape else { continue };
        for role in frame.role_for(FrameSlot::Member) {
            for e in ctx.outgoing(&node.variable).filter(|e| e.role == role) {
                for g in e.target.as_var().map(|v| ctx.resolve(v)).unwrap_or_default() {
                    if let Some(p) = props.get_mut(&g.entity) {
                        p.push(Property::new("shape", shape.clone()));
                    }
                }
            }
        }
    }

    let mut entities = Vec::new();
    let mut ids = HashMap::new();
    for var in ctx.graph.preorder() {
        if !nodes.contains(var) {
            continue;
        }
        let id = format!("e{}", entities.len() + 1);
        let concept = ctx.concept(var);
        let head = if ctx.plural_count(var) {
            pluralize(concept)
        } else {
            concept.to_string()
        };
        let mut p = props.remove(var).unwrap_or_default();
        p.sort_by_key(|q| ctx.registry.property_rank(&q.name));
        ids.insert(var.to_string(), id.clone());
        entities.push(SpatialEntity {
            id,
            head,
            props: p,
            implicit: false,
        });
    }
    (entities, ids)
}

struct Builder<'c, 'g, 'r> {
    ctx: &'c Ctx<'g, 'r>,
    ids: &'c HashMap<String, String>,
    counters: Counters,
}

/// Landmark bound in a candidate configuration, with its provenance for FoR.
struct Lm {
    role_id: String,
    node: String,
    wrapper: Option<usize>,
}

impl Builder<'_, '_, '_> {
    fn entity_ref(&self, var: &str) -> Ref {
        Ref::Id(self.ids.get(var).cloned().unwrap_or_else(|| var.to_string()))
    }

    fn landmark(&mut self, g: &Ground) -> (RoleBinding, Lm) {
        let id = Counters::next(&mut self.counters.l, 'l');
        (
            RoleBinding {
                id: id.clone(),
                entity: self.entity_ref(&g.entity),
            },
            Lm {
                role_id: id,
                node: g.entity.clone(),
                wrapper: g.wrapper,
            },
        )
    }

    fn fors_and_viewer(&self, t: &Trigger, lms: &[Lm]) -> (Vec<ForAssignment>, Viewer) {
        let ctx = self.ctx;
        let lm_nodes: Vec<String> = lms.iter().map(|l| l.node.clone()).collect();
        let anchor = t
            .bound(&[FunctionTag::ANC])
            .next()
            .map(|b| ctx.classify_anchor(&b.target, &lm_nodes));
        let fors = lms
            .iter()
            .map(|l| {
                let value = match anchor {
                    Some(Anchor::Landmark) => ForValue::Intrinsic,
                    Some(Anchor::World) => ForValue::Absolute,
                    Some(_) => ForValue::Relative,
                    None if ctx.has_coordinates(&l.node) => ForValue::Absolute,
                    None => match l.wrapper {
                        Some(w) => ctx.triggers[w].entry.hints.default_for,
                        None => t.entry.hints.default_for,
                    },
                };
                ForAssignment {
                    lm: l.role_id.clone(),
                    value,
                }
            })
            .collect();
        let viewer = match anchor {
            Some(Anchor::Addressee) => Viewer::SecondPerson,
            Some(Anchor::ThirdParty) => Viewer::ThirdPerson,
            _ if lm_nodes.iter().any(|n| ctx.addressee_possessed(n)) => Viewer::SecondPerson,
            _ => Viewer::FirstPerson,
        };
        (fors, viewer)
    }

    fn motion(&mut self, t: &Trigger, absorbed: &mut HashSet<String>) -> Option<SpatialConfiguration> {
        let ctx = self.ctx;
        let tr_node = t
            .bound(&[FunctionTag::SE1])
            .filter_map(|b| b.target.as_var())
            .flat_map(|v| ctx.resolve(v))
            .next()?;
        let trajector = RoleBinding {
            id: Counters::next(&mut self.counters.t, 't'),
            entity: self.entity_ref(&tr_node.entity),
        };

        // (part, ground entities, indicator span override)
        let mut parts: Vec<(PathPart, Vec<Ground>, Option<String>)> = Vec::new();
        let mut props = Vec::new();
        for e in ctx.outgoing(&t.node) {
            let part = if t.entry.tag_of(&e.role) == Some(FunctionTag::SE2) {
                Some(PathPart::End)
            } else {
                ctx.registry.path_part_for_role(&e.role)
            };
            match (part, &e.target) {
                (Some(part), Target::Var(v)) => {
                    if let Some(&i) = ctx.trigger_at.get(v.as_str()) {
                        let inner = &ctx.triggers[i];
                        if !ctx.collapsed.contains(&i) {
                            let static_ground = inner.entry.kind != RolesetKind::Motion
                                && !inner.has_figure();
                            if !static_ground {
                                continue;
                            }
                            let grounds = ctx.ground_nodes(inner);
                            absorbed.insert(inner.node.clone());
                            parts.push((part, grounds, Some(ctx.trigger_span(inner.entry))));
                            continue;
                        }
                    }
                    parts.push((part, ctx.resolve(v), None));
                }
                (None, Target::Const(c)) if matches!(e.role.as_str(), ":manner" | ":direction") => {
                    props.push(Property::new("orientation", c.text()));
                }
                _ => {}
            }
        }
        parts.sort_by_key(|(p, _, _)| *p);

        let mut landmarks = Vec::new();
        let mut lms = Vec::new();
        let mut indicators = Vec::new();
        let mut segments = Vec::new();
        if !parts.iter().any(|(p, _, _)| *p == PathPart::Begin) {
            segments.push(PathSegment {
                lm: Ref::Implicit,
                sp: None,
                part: PathPart::Begin,
            });
        }
        for (part, grounds, span) in parts {
            let Some(span) = span.or_else(|| ctx.path_span(part)) else {
                continue;
            };
            let sp_id = Counters::next(&mut self.counters.s, 's');
            indicators.push(Indicator::new(sp_id.clone(), span));
            for g in &grounds {
                let (binding, lm) = self.landmark(g);
                segments.push(PathSegment {
                    lm: Ref::Id(binding.id.clone()),
                    sp: Some(sp_id.clone()),
                    part,
                });
                landmarks.push(binding);
                lms.push(lm);
            }
        }
        let motion = vec![Indicator::new(
            Counters::next(&mut self.counters.m, 'm'),
            ctx.trigger_span(t.entry),
        )];
        let (fors, viewer) = self.fors_and_viewer(t, &lms);
        Some(SpatialConfiguration {
            id: String::new(),
            trajector,
            landmarks,
            indicators,
            motion,
            path: Some(Path { segments, props }),
            fors,
            viewer: Some(viewer),
            qts: t.entry.hints.default_qt.clone(),
        })
    }

    fn relation(&mut self, t: &Trigger) -> Option<SpatialConfiguration> {
        let ctx = self.ctx;
        let tr_node = t
            .bound(&[FunctionTag::SE1, FunctionTag::PRT])
            .filter_map(|b| b.target.as_var())
            .flat_map(|v| ctx.resolve(v))
            .map(|g| g.entity)
            .next()
            .or_else(|| t.landmark_node.clone())?;
        let trajector = RoleBinding {
            id: Counters::next(&mut self.counters.t, 't'),
            entity: self.entity_ref(&tr_node),
        };
        let grounds = ctx.ground_nodes(t);
        let mut landmarks = Vec::new();
        let mut lms = Vec::new();
        for g in &grounds {
            let (binding, lm) = self.landmark(g);
            landmarks.push(binding);
            lms.push(lm);
        }

        let mut props = Vec::new();
        let mut metric = None;
        for e in ctx.outgoing(&t.node) {
            if let Some(name) = ctx.registry.indicator_property(&e.role) {
                let span = if name == "metric" {
                    let m = ctx.metric_text(&e.target);
                    metric = Some(m.clone());
                    m
                } else {
                    ctx.value_text(&e.target)
                };
                props.push(Property::new(name, span));
                continue;
            }
            let name = match t.entry.tag_of(&e.role) {
                Some(FunctionTag::ANG | FunctionTag::ORT) => "direction",
                Some(FunctionTag::SCL) => "degree",
                _ => continue,
            };
            props.push(Property::new(name, ctx.value_text(&e.target)));
        }
        let indicator = Indicator {
            id: Counters::next(&mut self.counters.s, 's'),
            span: ctx.trigger_span(t.entry),
            props,
        };

        let mut qts = t.entry.hints.default_qt.clone();
        if let Some(m) = &metric {
            let quantitative = QtPair::new(GType::Distance, "quantitative");
            let qualitative = qts
                .iter()
                .position(|q| q.g_type == GType::Distance && q.f_meaning == "qualitative");
            match qualitative {
                Some(i) => qts[i] = quantitative,
                None if !qts.contains(&quantitative) => qts.push(quantitative),
                None => {}
            }
            let gap = m
                .split_whitespace()
                .next()
                .and_then(|n| n.parse::<f64>().ok())
                .is_some_and(|n| n != 0.0);
            let dc = QtPair::new(GType::Topology, "DC");
            if gap && !qts.contains(&dc) {
                qts.push(dc);
            }
        }
        let (fors, viewer) = self.fors_and_viewer(t, &lms);
        Some(SpatialConfiguration {
            id: String::new(),
            trajector,
            landmarks,
            indicators: vec![indicator],
            motion: Vec::new(),
            path: None,
            fors,
            viewer: Some(viewer),
            qts,
        })
    }
}

/// Extraction without sentence text: indicator spans fall back to lemmas.
pub fn extract(graph: &AmrGraph, registry: &Registry) -> Extraction {
    extract_sentence(graph, registry, "", None)
}

pub fn extract_entry(entry: &AmrDocumentEntry, registry: &Registry) -> Extraction {
    extract_sentence(
        &entry.graph,
        registry,
        entry.id().unwrap_or_default(),
        entry.sentence(),
    )
}

pub fn extract_sentence(
    graph: &AmrGraph,
    registry: &Registry,
    sentence_id: &str,
    text: Option<&str>,
) -> Extraction {
    let mut ctx = Ctx::new(graph, registry, text);
    let (entities, ids) = build_entities(&ctx);

    let mut unsupported = Vec::new();
    for node in graph.nodes() {
        if matches!(node.concept.as_str(), "spatial-sequence-91" | "cartesian-framework-91") {
            unsupported.push(node.clone());
        }
    }
    for node in unsupported {
        ctx.warn(
            WarningCode::UnsupportedFrame,
            &node.variable,
            format!("{} is kept in the graph but not mapped", node.concept),
        );
    }

    let mut builder = Builder {
        ctx: &ctx,
        ids: &ids,
        counters: Counters::default(),
    };
    let mut annotation = SentenceAnnotation {
        sentence_id: sentence_id.to_string(),
        text: text.unwrap_or_default().to_string(),
        entities,
        configurations: Vec::new(),
    };
    // motion triggers claim the static triggers they absorb as path segments
    let mut absorbed = HashSet::new();
    for t in ctx.triggers.iter().filter(|t| t.entry.kind == RolesetKind::Motion) {
        let mut probe = Builder {
            ctx: &ctx,
            ids: &ids,
            counters: Counters::default(),
        };
        probe.motion(t, &mut absorbed);
    }
    let mut dropped = Vec::new();
    let mut n_config = 0;
    for (i, t) in ctx.triggers.iter().enumerate() {
        let is_motion = t.entry.kind == RolesetKind::Motion;
        if !is_motion && (ctx.collapsed.contains(&i) || absorbed.contains(&t.node)) {
            continue;
        }
        let saved = builder.counters;
        let candidate = if is_motion {
            builder.motion(t, &mut HashSet::new())
        } else {
            builder.relation(t)
        };
        let Some(mut config) = candidate else {
            builder.counters = saved;
            dropped.push((t.node.clone(), format!("{} has no trajector", t.entry.name)));
            continue;
        };
        config.id = format!("c{}", n_config + 1);
        let probe = SentenceAnnotation {
            configurations: vec![config.clone()],
            ..SentenceAnnotation::empty("", "")
        };
        let probe = SentenceAnnotation {
            entities: annotation.entities.clone(),
            ..probe
        };
        let violations = validate(&probe);
        if violations.is_empty() {
            n_config += 1;
            annotation.configurations.push(config);
        } else {
            builder.counters = saved;
            let codes: BTreeSet<String> = violations.iter().map(|v| v.rule.to_string()).collect();
            dropped.push((
                t.node.clone(),
                format!(
                    "{} candidate violates {}",
                    t.entry.name,
                    codes.into_iter().collect::<Vec<_>>().join(", ")
                ),
            ));
        }
    }
    drop(builder);
    for (node, message) in dropped {
        ctx.warn(WarningCode::DroppedConfiguration, &node, message);
    }
    Extraction {
        annotation,
        warnings: ctx.warnings,
    }
}
