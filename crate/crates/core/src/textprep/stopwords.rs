use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Common English function words, plus their apostrophe-free spellings
/// (cleaning strips apostrophes, so "don't" arrives as "dont").
const ENGLISH: &[&str] = &[
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're", "you've",
    "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he", "him", "his", "himself",
    "she", "she's", "her", "hers", "herself", "it", "it's", "its", "itself", "they", "them",
    "their", "theirs", "themselves", "what", "which", "who", "whom", "this", "that", "that'll",
    "these", "those", "am", "is", "are", "was", "were", "be", "been", "being", "have", "has",
    "had", "having", "do", "does", "did", "doing", "a", "an", "the", "and", "but", "if", "or",
    "because", "as", "until", "while", "of", "at", "by", "for", "with", "about", "against",
    "between", "into", "through", "during", "before", "after", "above", "below", "to", "from",
    "up", "down", "in", "out", "on", "off", "over", "under", "again", "further", "then", "once",
    "here", "there", "when", "where", "why", "how", "all", "any", "both", "each", "few", "more",
    "most", "other", "some", "such", "no", "nor", "not", "only", "own", "same", "so", "than",
    "too", "very", "s", "t", "can", "will", "just", "don", "don't", "should", "should've", "now",
    "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't", "didn",
    "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn", "hasn't", "haven", "haven't", "isn",
    "isn't", "ma", "mightn", "mightn't", "mustn", "mustn't", "needn", "needn't", "shan",
    "shan't", "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won", "won't",
    "wouldn", "wouldn't",
    // apostrophe-free forms
    "youre", "youve", "youll", "youd", "shes", "thatll", "dont", "shouldve", "arent", "couldnt",
    "didnt", "doesnt", "hadnt", "hasnt", "havent", "isnt", "mightnt", "mustnt", "neednt",
    "shant", "shouldnt", "wasnt", "werent", "wont", "wouldnt",
];

/// Bare-stemming leftovers and modal noise removed for topic modeling.
pub const TOPIC_NOISE: &[&str] = &["wa", "ha", "would"];

/// Lowercase stopword set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Stoplist {
    words: BTreeSet<String>,
}

impl Stoplist {
    /// English function words plus [`TOPIC_NOISE`].
    pub fn english() -> Self {
        ENGLISH.iter().chain(TOPIC_NOISE).copied().collect()
    }

    /// Parse a stopword file: one term per line, `#` starts a comment,
    /// blank lines ignored. Terms are lowercased.
    pub fn parse(text: &str) -> Self {
        text.lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|line| !line.is_empty())
            .map(|line| line.to_lowercase())
            .collect()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn insert(&mut self, word: &str) {
        self.words.insert(word.to_lowercase());
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

impl<'a> FromIterator<&'a str> for Stoplist {
    fn from_iter<I: IntoIterator<Item = &'a str>>(iter: I) -> Self {
        Stoplist {
            words: iter.into_iter().map(|w| w.to_lowercase()).collect(),
        }
    }
}

impl FromIterator<String> for Stoplist {
    fn from_iter<I: IntoIterator<Item = String>>(iter: I) -> Self {
        Stoplist {
            words: iter.into_iter().map(|w| w.to_lowercase()).collect(),
        }
    }
}

/// Order-preserving removal of stoplisted tokens.
pub fn remove_stopwords<S: AsRef<str>>(tokens: &[S], stoplist: &Stoplist) -> Vec<String> {
    tokens
        .iter()
        .map(AsRef::as_ref)
        .filter(|t| !stoplist.contains(t))
        .map(ToString::to_string)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drops_function_words() {
        let stop = Stoplist::english();
        assert_eq!(remove_stopwords(&["the", "vaccine"], &stop), ["vaccine"]);
        assert_eq!(remove_stopwords(&["wa", "works"], &stop), ["works"]);
        assert!(remove_stopwords::<&str>(&[], &stop).is_empty());
    }

    #[test]
    fn contraction_forms_without_apostrophes_are_listed() {
        let stop = Stoplist::english();
        for w in ["dont", "don't", "would", "ha", "shouldnt"] {
            assert!(stop.contains(w), "{w}");
        }
    }

    #[test]
    fn parses_file_with_comments() {
        let stop = Stoplist::parse("# custom\nThe\n\n  vaccine  # domain word\n");
        assert_eq!(stop.iter().collect::<Vec<_>>(), ["the", "vaccine"]);
    }
}
