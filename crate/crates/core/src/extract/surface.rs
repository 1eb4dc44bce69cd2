//! Surface-string helpers: sentence span lookup and noun pluralization.

/// Lowercased word tokens of a sentence.
pub(crate) fn words(sentence: &str) -> Vec<String> {
    sentence
        .split(|c: char| !(c.is_alphanumeric() || c == '\''))
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Whether `token` is `lemma` or a regular inflection of it.
fn inflects(lemma: &str, token: &str) -> bool {
    if token == lemma {
        return true;
    }
    if let Some(rest) = token.strip_prefix(lemma) {
        if matches!(rest, "s" | "es" | "ing" | "ed" | "d") {
            return true;
        }
    }
    if let Some(base) = lemma.strip_suffix('e') {
        if token.strip_prefix(base) == Some("ing") {
            return true;
        }
    }
    false
}

/// Finds the longest occurrence of any candidate lemma in the sentence.
///
/// Multiword lemmas are written with hyphens (`in-between`); only the last word may
/// be inflected. The matched surface words are returned lowercased and joined with
/// `_`. Ties go to the earliest position, then to the earlier candidate.
pub(crate) fn find_span<'a>(
    sentence: &[String],
    candidates: impl IntoIterator<Item = &'a str>,
) -> Option<String> {
    let mut best: Option<(usize, usize, String)> = None;
    for cand in candidates {
        let parts: Vec<String> = cand.split('-').map(str::to_lowercase).collect();
        let n = parts.len();
        if n == 0 || n > sentence.len() {
            continue;
        }
        for start in 0..=sentence.len() - n {
            let window = &sentence[start..start + n];
            let ok = parts[..n - 1] == window[..n - 1] && inflects(&parts[n - 1], &window[n - 1]);
            if !ok {
                continue;
            }
            let better = match &best {
                None => true,
                Some((len, pos, _)) => n > *len || (n == *len && start < *pos),
            };
            if better {
                best = Some((n, start, window.join("_")));
            }
        }
    }
    best.map(|(_, _, s)| s)
}

/// Whether a whole phrase (space separated) occurs in the sentence.
pub(crate) fn contains_phrase(sentence: &[String], phrase: &str) -> bool {
    let parts: Vec<&str> = phrase.split_whitespace().collect();
    !parts.is_empty()
        && sentence
            .windows(parts.len())
            .any(|w| w.iter().zip(&parts).all(|(a, b)| a == b))
}

pub(crate) fn pluralize(noun: &str) -> String {
    let ends = |s: &str| noun.ends_with(s);
    if ends("s") || ends("x") || ends("z") || ends("ch") || ends("sh") {
        format!("{noun}es")
    } else if noun.len() > 1
        && ends("y")
        && !noun[..noun.len() - 1].ends_with(['a', 'e', 'i', 'o', 'u'])
    {
        format!("{}ies", &noun[..noun.len() - 1])
    } else {
        format!("{noun}s")
    }
}
