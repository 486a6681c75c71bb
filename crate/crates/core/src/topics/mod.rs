//! LDA by collapsed Gibbs sampling, u_mass and c_v coherence, topic-number
//! sweeps and chained time-sliced fits.

mod align;
mod bow;
mod coherence;
mod lda;
mod sliced;
mod sweep;

use alloc::string::String;

pub use align::{hungarian, js_distance, js_divergence, match_topics, topic_distance_matrix};
pub use bow::{build_bow, BagOfWords};
pub use coherence::{
    coherence_cv, coherence_umass, cv_for_topics, umass_for_topics, CoherenceScores, DEFAULT_TOP_N,
    DEFAULT_WINDOW, NPMI_EPSILON,
};
pub use lda::{doc_topics, fit_lda, top_words, FoldInConfig, GibbsSampler, LdaConfig, TopicModel};
pub use sliced::{fit_sliced, term_trajectory, DEFAULT_CHAIN_STRENGTH};
pub use sweep::{score_k, seed_for_k, sweep_topics, CoherenceReport, CoherenceRow, SweepConfig};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopicsError {
    #[error("no document has an in-vocabulary token")]
    EmptyCorpus,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("K = {k} exceeds the {tokens} tokens in the corpus")]
    TooManyTopics { k: usize, tokens: u64 },
    #[error("term id {0} is outside the model vocabulary")]
    TermOutOfRange(u32),
    #[error("top word {0:?} never occurs in the reference corpus")]
    UnseenWord(String),
    #[error("slice {slice} has a different vocabulary from slice 0")]
    VocabularyMismatch { slice: usize },
    #[error("need at least 2 slices, got {0}")]
    TooFewSlices(usize),
    #[error("count conservation violated: {0}")]
    Conservation(String),
}
