//! Lexicon-driven valence scoring (VADER-compatible) and the three-way
//! threshold classifier.

mod analyzer;
mod lexicon;

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

pub use analyzer::{normalize, Heuristics, SentimentAnalyzer};
pub use lexicon::{Lexicon, ParsedLexicon, BOOSTER_INCREMENT, DAMPENER_INCREMENT};

/// Compound scores at or above this are positive.
pub const POSITIVE_THRESHOLD: f64 = 0.05;
/// Compound scores at or below this are negative.
pub const NEGATIVE_THRESHOLD: f64 = -0.05;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ValenceError {
    #[error("lexicon line {line}: {reason}")]
    MalformedRow { line: usize, reason: &'static str },
    #[error("non-finite valence for {0:?}")]
    NonFinite(String),
    #[error("booster increment for {0:?} must lie in [-1, 1]")]
    BoosterOutOfRange(String),
    #[error("compound score {0} outside [-1, 1]")]
    CompoundOutOfRange(f64),
    #[error("unknown sentiment label {0:?}")]
    UnknownLabel(String),
}

/// Proportions of positive, neutral and negative content plus the
/// normalized compound score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SentimentScores {
    pub pos: f64,
    pub neu: f64,
    pub neg: f64,
    pub compound: f64,
}

impl SentimentScores {
    /// Scores of a text with no scorable tokens.
    pub fn neutral() -> Self {
        SentimentScores {
            pos: 0.0,
            neu: 1.0,
            neg: 0.0,
            compound: 0.0,
        }
    }

    pub fn label(&self) -> SentimentLabel {
        classify(self.compound).unwrap_or(SentimentLabel::Neutral)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SentimentLabel {
    Positive,
    Neutral,
    Negative,
}

impl SentimentLabel {
    pub const ALL: [SentimentLabel; 3] = [
        SentimentLabel::Positive,
        SentimentLabel::Neutral,
        SentimentLabel::Negative,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SentimentLabel::Positive => "positive",
            SentimentLabel::Neutral => "neutral",
            SentimentLabel::Negative => "negative",
        }
    }
}

impl fmt::Display for SentimentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SentimentLabel {
    type Err = ValenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "positive" => Ok(SentimentLabel::Positive),
            "neutral" => Ok(SentimentLabel::Neutral),
            "negative" => Ok(SentimentLabel::Negative),
            other => Err(ValenceError::UnknownLabel(other.into())),
        }
    }
}

/// Positive for `[0.05, 1]`, negative for `[-1, -0.05]`, neutral between.
pub fn classify(compound: f64) -> Result<SentimentLabel, ValenceError> {
    if !(-1.0..=1.0).contains(&compound) {
        return Err(ValenceError::CompoundOutOfRange(compound));
    }
    Ok(if compound >= POSITIVE_THRESHOLD {
        SentimentLabel::Positive
    } else if compound <= NEGATIVE_THRESHOLD {
        SentimentLabel::Negative
    } else {
        SentimentLabel::Neutral
    })
}

/// Which form of a tweet gets scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScoreInput {
    /// After `clean_text`: lowercased, so the capitalization boost never fires.
    #[default]
    Cleaned,
    Raw,
}

impl SentimentAnalyzer {
    pub fn score_tweet(&self, raw: &str, input: ScoreInput) -> SentimentScores {
        match input {
            ScoreInput::Cleaned => self.score(&crate::textprep::clean_text(raw)),
            ScoreInput::Raw => self.score(raw),
        }
    }
}

/// Score `text` against `lexicon` with default heuristics.
pub fn score(text: &str, lexicon: &Lexicon) -> SentimentScores {
    SentimentAnalyzer::new(lexicon.clone()).score(text)
}
