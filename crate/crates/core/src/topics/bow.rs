use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::TopicsError;
use crate::textprep::Vocabulary;

/// Marks a token position whose term is outside the vocabulary.
pub(crate) const OUT_OF_VOCAB: u32 = u32::MAX;

/// Sparse document-term counts over a fixed vocabulary.
///
/// The in-order token stream of each document is kept as well, for
/// sliding-window statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct BagOfWords {
    pub docs: Vec<Vec<(u32, u32)>>,
    pub vocab: Vocabulary,
    /// Position of each kept document in the input list.
    pub source_index: Vec<usize>,
    streams: Vec<Vec<u32>>,
}

impl BagOfWords {
    pub fn n_docs(&self) -> usize {
        self.docs.len()
    }

    pub fn total_tokens(&self) -> u64 {
        self.docs
            .iter()
            .flatten()
            .map(|&(_, c)| u64::from(c))
            .sum()
    }

    pub fn doc_len(&self, d: usize) -> u32 {
        self.docs[d].iter().map(|&(_, c)| c).sum()
    }

    /// Token ids of document `d` in original order; out-of-vocabulary
    /// positions are skipped.
    pub fn tokens(&self, d: usize) -> impl Iterator<Item = u32> + '_ {
        self.streams[d].iter().copied().filter(|&t| t != OUT_OF_VOCAB)
    }

    pub(crate) fn streams(&self) -> &[Vec<u32>] {
        &self.streams
    }
}

/// Map token lists onto `vocab`. Unknown tokens are skipped and documents
/// left empty are dropped.
pub fn build_bow<S: AsRef<str>>(docs: &[Vec<S>], vocab: &Vocabulary) -> Result<BagOfWords, TopicsError> {
    let mut out = Vec::new();
    let mut streams = Vec::new();
    let mut source_index = Vec::new();
    for (i, doc) in docs.iter().enumerate() {
        let stream: Vec<u32> = doc
            .iter()
            .map(|t| vocab.id(t.as_ref()).unwrap_or(OUT_OF_VOCAB))
            .collect();
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &id in stream.iter().filter(|&&id| id != OUT_OF_VOCAB) {
            *counts.entry(id).or_insert(0) += 1;
        }
        if counts.is_empty() {
            continue;
        }
        out.push(counts.into_iter().collect());
        streams.push(stream);
        source_index.push(i);
    }
    let dropped = docs.len() - out.len();
    if out.is_empty() {
        return Err(TopicsError::EmptyCorpus);
    }
    if dropped > 0 {
        log::info!("dropped {dropped} documents with no in-vocabulary tokens");
    }
    Ok(BagOfWords {
        docs: out,
        vocab: vocab.clone(),
        source_index,
        streams,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn vocab(terms: &[&str]) -> Vocabulary {
        let terms: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        let n = terms.len();
        Vocabulary::from_terms(terms, vec![1; n]).unwrap()
    }

    #[test]
    fn counts_and_unknown_tokens() {
        let v = vocab(&["a", "b"]);
        let bow = build_bow(&[vec!["a", "a", "b"]], &v).unwrap();
        assert_eq!(bow.docs, [vec![(0, 2), (1, 1)]]);
        let bow = build_bow(&[vec!["a", "zzz", "b"]], &v).unwrap();
        assert_eq!(bow.docs, [vec![(0, 1), (1, 1)]]);
        assert_eq!(bow.tokens(0).collect::<Vec<_>>(), [0, 1]);
        assert_eq!(bow.total_tokens(), 2);
    }

    #[test]
    fn empty_docs_dropped_and_all_empty_is_error() {
        let v = vocab(&["a"]);
        let bow = build_bow(&[vec!["x"], vec!["a"]], &v).unwrap();
        assert_eq!(bow.n_docs(), 1);
        assert_eq!(bow.source_index, [1]);
        let none: Vec<Vec<&str>> = Vec::new();
        assert_eq!(build_bow(&none, &v), Err(TopicsError::EmptyCorpus));
        assert_eq!(build_bow(&[vec!["x"]], &v), Err(TopicsError::EmptyCorpus));
    }
}
