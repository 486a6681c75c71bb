//! Analytics core for vaccine-discourse tweet corpora.
//!
//! Everything here is allocation-only (`no_std` + `alloc`): record transforms,
//! text cleaning, lexicon valence scoring, engagement-weighted aggregation,
//! brand attribution and collapsed-Gibbs LDA with coherence scoring. File
//! formats, parallel drivers and the CLI live in the `vaxpulse` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod brands;
pub mod corpus;
pub mod influence;
mod math;
pub mod textprep;
pub mod topics;
pub mod valence;

pub use brands::{BrandLexicon, BrandTableRow};
pub use corpus::{CorpusSlice, TweetRecord};
pub use influence::{EngagementWeight, MonthlyAggregate};
pub use textprep::{CleanDocument, Vocabulary};
pub use topics::{BagOfWords, CoherenceReport, TopicModel};
pub use valence::{Lexicon, SentimentAnalyzer, SentimentLabel, SentimentScores};
