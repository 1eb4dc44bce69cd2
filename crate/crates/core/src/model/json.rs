use thiserror::Error;

use super::SentenceAnnotation;

/// Interchange text that does not fit the schema.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("schema error at `{path}`: {message}")]
pub struct SchemaError {
    /// Dotted path to the offending field, `.` for the document root.
    pub path: String,
    pub message: String,
}

fn schema_error(err: serde_path_to_error::Error<serde_json::Error>) -> SchemaError {
    let path = err.path().to_string();
    let inner = err.into_inner();
    // serde_json appends its own position; the path is more useful
    let message = inner.to_string();
    let message = match message.rfind(" at line ") {
        Some(i) if inner.is_data() => message[..i].to_string(),
        _ => message,
    };
    SchemaError { path, message }
}

pub fn serialize_annotation(annotation: &SentenceAnnotation) -> String {
    serde_json::to_string_pretty(annotation).expect("annotation types always serialize")
}

pub fn serialize_annotations(annotations: &[SentenceAnnotation]) -> String {
    serde_json::to_string_pretty(annotations).expect("annotation types always serialize")
}

pub fn deserialize_annotation(text: &str) -> Result<SentenceAnnotation, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let a = serde_path_to_error::deserialize(de).map_err(schema_error)?;
    Ok(a)
}

/// Accepts either a JSON array of annotations or a single annotation object.
pub fn deserialize_annotations(text: &str) -> Result<Vec<SentenceAnnotation>, SchemaError> {
    if text.trim_start().starts_with('[') {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(schema_error)
    } else if text.trim().is_empty() {
        Ok(Vec::new())
    } else {
        deserialize_annotation(text).map(|a| vec![a])
    }
}
