use std::fmt::Write as _;

use thiserror::Error;

use super::validate::{validate, Violation};
use super::{Indicator, Property, Ref, SentenceAnnotation, SpatialConfiguration};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("cannot render an invalid annotation ({} violation(s), first: {})", .0.len(), .0[0])]
    InvalidAnnotation(Vec<Violation>),
}

const NULL: &str = "NULL";

fn props(props: &[Property]) -> String {
    let inner: Vec<String> = props.iter().map(|p| format!("{}={}", p.name, p.span)).collect();
    format!("{{{}}}", inner.join(", "))
}

fn indicator(ind: &Indicator) -> String {
    if ind.props.is_empty() {
        format!("⟨{}, {}⟩", ind.id, ind.span)
    } else {
        format!("⟨{}, {}, {}⟩", ind.id, ind.span, props(&ind.props))
    }
}

fn reference(r: &Ref) -> String {
    match r {
        Ref::Implicit => "implicit".to_string(),
        Ref::Id(id) => id.clone(),
    }
}

fn list_or_null(items: Vec<String>) -> String {
    if items.is_empty() {
        NULL.to_string()
    } else {
        items.join(", ")
    }
}

fn config_cells(c: &SpatialConfiguration) -> [String; 8] {
    let tr = format!("⟨{}, {}⟩", c.trajector.id, reference(&c.trajector.entity));
    let lm = list_or_null(
        c.landmarks
            .iter()
            .map(|l| format!("⟨{}, {}⟩", l.id, reference(&l.entity)))
            .collect(),
    );
    let sp = list_or_null(c.indicators.iter().map(indicator).collect());
    let m = list_or_null(c.motion.iter().map(indicator).collect());
    let path = match &c.path {
        None => NULL.to_string(),
        Some(p) => {
            let mut s = p
                .segments
                .iter()
                .map(|seg| match &seg.sp {
                    Some(sp) => format!("⟨{}, {}, {}⟩", reference(&seg.lm), sp, seg.part),
                    None => format!("⟨{}, {}⟩", reference(&seg.lm), seg.part),
                })
                .collect::<Vec<_>>()
                .join(", ");
            if !p.props.is_empty() {
                s.push(' ');
                s.push_str(&props(&p.props));
            }
            s
        }
    };
    let fors = list_or_null(
        c.fors
            .iter()
            .map(|f| format!("⟨{}, {}⟩", f.lm, f.value))
            .collect(),
    );
    let v = c.viewer.map_or_else(|| NULL.to_string(), |v| v.to_string());
    let qt = list_or_null(
        c.qts
            .iter()
            .map(|q| format!("⟨{}, {}⟩", q.g_type.adjective(), q.f_meaning))
            .collect(),
    );
    [tr, lm, sp, m, path, fors, v, qt]
}

/// Writes rows as `a | b | c`, padding every column to its widest cell.
fn write_rows(out: &mut String, rows: &[Vec<String>]) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|i| {
            rows.iter()
                .filter_map(|r| r.get(i))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str(" | ");
            }
            line.push_str(cell);
            let pad = widths[i] - cell.chars().count();
            line.extend(std::iter::repeat(' ').take(pad));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

/// Plain-text rendering: an entity table, then one column per configuration.
pub fn render_table(annotation: &SentenceAnnotation) -> Result<String, RenderError> {
    let violations = validate(annotation);
    if !violations.is_empty() {
        return Err(RenderError::InvalidAnnotation(violations));
    }
    let mut out = String::new();
    let _ = writeln!(out, "Sentence {}: {}", annotation.sentence_id, annotation.text);
    out.push('\n');
    out.push_str("Spatial Entities\n");
    let mut rows = vec![vec!["id".to_string(), "head".to_string(), "properties".to_string()]];
    for e in &annotation.entities {
        let head = if e.implicit {
            format!("{} (implicit)", e.head).trim_start().to_string()
        } else {
            e.head.clone()
        };
        rows.push(vec![e.id.clone(), head, props(&e.props)]);
    }
    write_rows(&mut out, &rows);

    if annotation.configurations.is_empty() {
        return Ok(out);
    }
    out.push('\n');
    let labels = ["tr", "lm", "sp", "m", "path", "FoR", "v", "QT"];
    let cells: Vec<[String; 8]> = annotation.configurations.iter().map(config_cells).collect();
    let mut header = vec![String::new()];
    header.extend(
        annotation
            .configurations
            .iter()
            .enumerate()
            .map(|(i, c)| format!("Configuration {} ({})", i + 1, c.id)),
    );
    let mut rows = vec![header];
    for (r, label) in labels.iter().enumerate() {
        let mut row = vec![label.to_string()];
        row.extend(cells.iter().map(|c| c[r].clone()));
        rows.push(row);
    }
    write_rows(&mut out, &rows);
    Ok(out)
}
