//! Trigger density of a corpus: how many tokens are spatial frame concepts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::penman::{parse_document, DocumentError};
use crate::registry::{sense_stem, Registry};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    /// `amr` (tokens are graph nodes) or `text` (tokens are whitespace words).
    pub input: String,
    pub sentences: usize,
    pub per_concept: BTreeMap<String, usize>,
    pub triggers: usize,
    pub tokens: usize,
    pub ratio: f64,
}

impl CorpusStats {
    fn new(input: &str) -> Self {
        CorpusStats {
            input: input.to_string(),
            sentences: 0,
            per_concept: BTreeMap::new(),
            triggers: 0,
            tokens: 0,
            ratio: 0.0,
        }
    }

    fn hit(&mut self, concept: &str) {
        *self.per_concept.entry(concept.to_string()).or_default() += 1;
        self.triggers += 1;
    }

    fn finish(mut self) -> Self {
        self.ratio = if self.tokens == 0 {
            0.0
        } else {
            self.triggers as f64 / self.tokens as f64
        };
        self
    }
}

/// An AMR document starts with a graph or a `# ::` metadata line.
pub fn looks_like_amr(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !(l.starts_with('#') && !l.starts_with("# ::")))
        .is_some_and(|l| l.starts_with('(') || l.starts_with("# ::"))
}

/// Counts nodes whose concept is a spatial trigger.
pub fn amr_stats(text: &str, registry: &Registry) -> Result<CorpusStats, DocumentError> {
    let mut stats = CorpusStats::new("amr");
    for entry in parse_document(text)? {
        stats.sentences += 1;
        for node in entry.graph.nodes() {
            stats.tokens += 1;
            if registry.is_spatial_trigger(&node.concept) {
                let name = registry
                    .lookup(&node.concept)
                    .map_or(node.concept.as_str(), |r| r.name.as_str());
                stats.hit(name);
            }
        }
    }
    Ok(stats.finish())
}

/// One sentence per line. A word counts when it, or the word without a common
/// inflection, is the stem or an alias of a spatial roleset.
pub fn text_stats(text: &str, registry: &Registry) -> CorpusStats {
    let mut lexicon: BTreeMap<String, &str> = BTreeMap::new();
    for r in registry.rolesets() {
        if !registry.is_spatial_trigger(&r.name) {
            continue;
        }
        for form in std::iter::once(sense_stem(&r.name)).chain(r.alias_lemmas()) {
            if !form.contains('-') {
                lexicon.entry(form.to_string()).or_insert(&r.name);
            }
        }
    }
    let mut stats = CorpusStats::new("text");
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        stats.sentences += 1;
        for token in line.split_whitespace() {
            stats.tokens += 1;
            let word = token
                .trim_matches(|c: char| !c.is_alphanumeric())
                .to_lowercase();
            let hit = lemma_candidates(&word).find_map(|w| lexicon.get(&w).copied());
            if let Some(name) = hit {
                stats.hit(name);
            }
        }
    }
    stats.finish()
}

fn lemma_candidates(word: &str) -> impl Iterator<Item = String> + '_ {
    let stripped = ["ing", "ed", "es", "s", "d"]
        .into_iter()
        .filter_map(move |suffix| word.strip_suffix(suffix))
        .filter(|w| w.len() > 2)
        .flat_map(|w| [w.to_string(), format!("{w}e")]);
    std::iter::once(word.to_string()).chain(stripped)
}

pub fn corpus_stats(text: &str, registry: &Registry) -> Result<CorpusStats, DocumentError> {
    if looks_like_amr(text) {
        amr_stats(text, registry)
    } else {
        Ok(text_stats(text, registry))
    }
}
