use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::TextprepError;

/// Dense term index with per-term document frequency.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, u32>,
    doc_frequency: Vec<usize>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.doc_frequency == other.doc_frequency
    }
}

impl Vocabulary {
    /// Build from an ordered term list. Duplicate terms are rejected.
    pub fn from_terms(terms: Vec<String>, doc_frequency: Vec<usize>) -> Result<Self, TextprepError> {
        if terms.len() != doc_frequency.len() {
            return Err(TextprepError::Invalid("term and frequency lists differ in length"));
        }
        let mut index = HashMap::with_capacity(terms.len());
        for (i, t) in terms.iter().enumerate() {
            if index.insert(t.clone(), i as u32).is_some() {
                return Err(TextprepError::DuplicateTerm(t.clone()));
            }
        }
        Ok(Vocabulary {
            terms,
            index,
            doc_frequency,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn term(&self, id: u32) -> &str {
        &self.terms[id as usize]
    }

    pub fn id(&self, term: &str) -> Option<u32> {
        self.index.get(term).copied()
    }

    pub fn doc_frequency(&self, id: u32) -> usize {
        self.doc_frequency[id as usize]
    }

    pub fn doc_frequencies(&self) -> &[usize] {
        &self.doc_frequency
    }
}

/// Keep terms whose document frequency lies in
/// `[min_doc_freq, max_doc_fraction * docs.len()]`.
///
/// Terms are ordered by descending document frequency, ties broken
/// lexicographically.
pub fn prune_vocabulary<S: AsRef<str>>(
    docs: &[Vec<S>],
    min_doc_freq: usize,
    max_doc_fraction: f64,
) -> Result<Vocabulary, TextprepError> {
    if min_doc_freq < 1 {
        return Err(TextprepError::Invalid("min_doc_freq must be at least 1"));
    }
    if !(max_doc_fraction > 0.0 && max_doc_fraction <= 1.0) {
        return Err(TextprepError::Invalid("max_doc_fraction must lie in (0, 1]"));
    }
    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for doc in docs {
        let distinct: BTreeSet<&str> = doc.iter().map(AsRef::as_ref).collect();
        for term in distinct {
            *df.entry(term).or_insert(0) += 1;
        }
    }
    let ceiling = max_doc_fraction * docs.len() as f64;
    let mut kept: Vec<(&str, usize)> = df
        .into_iter()
        .filter(|&(_, n)| n >= min_doc_freq && n as f64 <= ceiling)
        .collect();
    if kept.is_empty() {
        return Err(TextprepError::EmptyVocabulary);
    }
    // BTreeMap iteration is already lexicographic; a stable sort keeps it for ties.
    kept.sort_by(|a, b| b.1.cmp(&a.1));
    let (terms, freqs) = kept.into_iter().map(|(t, n)| (t.to_string(), n)).unzip();
    Vocabulary::from_terms(terms, freqs)
}

/// Term counts over all documents, descending, ties lexicographic,
/// truncated to `top_n`.
pub fn word_frequency<S: AsRef<str>>(docs: &[Vec<S>], top_n: usize) -> Vec<(String, usize)> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for token in docs.iter().flatten() {
        *counts.entry(token.as_ref()).or_insert(0) += 1;
    }
    let mut ranked: Vec<(&str, usize)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1));
    ranked
        .into_iter()
        .take(top_n)
        .map(|(t, n)| (t.to_string(), n))
        .collect()
}
