//! Tweet cleaning, tokenization, lemmatization, stopword removal,
//! vocabulary pruning and word-frequency ranking.

mod clean;
mod lemma;
mod stopwords;
mod vocab;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use unicode_properties::{GeneralCategory, UnicodeGeneralCategory};

pub use clean::{clean_text, is_stripped_punctuation};
pub use lemma::{lemmatize, lemmatize_word, MIN_STEM_LEN};
pub use stopwords::{remove_stopwords, Stoplist, TOPIC_NOISE};
pub use vocab::{prune_vocabulary, word_frequency, Vocabulary};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TextprepError {
    #[error("vocabulary is empty after pruning")]
    EmptyVocabulary,
    #[error("duplicate vocabulary term {0:?}")]
    DuplicateTerm(String),
    #[error("invalid parameter: {0}")]
    Invalid(&'static str),
}

/// A cleaned tweet with its tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanDocument {
    pub tweet_id: String,
    pub cleaned_text: String,
    pub tokens: Vec<String>,
}

impl CleanDocument {
    pub fn new(tweet_id: &str, raw: &str, mode: TokenMode) -> Self {
        let cleaned_text = clean_text(raw);
        let tokens = tokenize(&cleaned_text, mode);
        CleanDocument {
            tweet_id: tweet_id.to_string(),
            cleaned_text,
            tokens,
        }
    }
}

/// What the tokens are for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenMode {
    /// Whitespace split; `!` stays attached and emoji become their own tokens.
    Sentiment,
    /// `!` stripped; tokens without any letter (numbers, emoji) dropped.
    Topic,
}

/// Split cleaned text into tokens.
pub fn tokenize(cleaned: &str, mode: TokenMode) -> Vec<String> {
    match mode {
        TokenMode::Sentiment => cleaned.split_whitespace().flat_map(split_emoji).collect(),
        TokenMode::Topic => cleaned
            .split_whitespace()
            .map(|t| t.replace('!', ""))
            .filter(|t| t.chars().any(char::is_alphabetic))
            .collect(),
    }
}

/// Separate pictographs (with their modifiers and joiners) from adjacent
/// letters so each emoji is one token.
fn split_emoji(word: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut current = String::new();
    let mut in_emoji = false;
    for c in word.chars() {
        let pictograph = c.general_category() == GeneralCategory::OtherSymbol;
        let attaches = in_emoji && is_emoji_modifier(c);
        if pictograph && !(in_emoji && current.ends_with('\u{200d}')) {
            if !current.is_empty() {
                out.push(core::mem::take(&mut current));
            }
            in_emoji = true;
        } else if !pictograph && !attaches && in_emoji {
            out.push(core::mem::take(&mut current));
            in_emoji = false;
        }
        current.push(c);
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

fn is_emoji_modifier(c: char) -> bool {
    matches!(
        c.general_category(),
        GeneralCategory::NonspacingMark | GeneralCategory::EnclosingMark | GeneralCategory::ModifierSymbol
    ) || c == '\u{200d}'
}

/// Text-preparation settings for the topic-modeling corpus.
#[derive(Debug, Clone)]
pub struct TopicPipeline {
    pub stoplist: Stoplist,
    pub lemmatize: bool,
}

impl Default for TopicPipeline {
    fn default() -> Self {
        TopicPipeline {
            stoplist: Stoplist::english(),
            lemmatize: true,
        }
    }
}

impl TopicPipeline {
    /// Raw tweet to topic tokens: clean, tokenize, lemmatize, drop stopwords.
    pub fn tokens(&self, raw: &str) -> Vec<String> {
        let tokens = tokenize(&clean_text(raw), TokenMode::Topic);
        let tokens = if self.lemmatize { lemmatize(&tokens) } else { tokens };
        remove_stopwords(&tokens, &self.stoplist)
    }
}
