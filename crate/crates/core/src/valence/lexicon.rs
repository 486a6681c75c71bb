use alloc::string::{String, ToString};
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use super::ValenceError;

const REFERENCE_LEXICON: &str = include_str!("../../data/vader_lexicon.txt");
const REFERENCE_EMOJI: &str = include_str!("../../data/emoji_utf8_lexicon.txt");

/// Mean rating increase for an intensifying degree adverb.
pub const BOOSTER_INCREMENT: f64 = 0.293;
/// Mean rating decrease for a dampening degree adverb.
pub const DAMPENER_INCREMENT: f64 = -0.293;

const INTENSIFIERS: &[&str] = &[
    "absolutely", "amazingly", "awfully", "completely", "considerable", "considerably",
    "decidedly", "deeply", "effing", "enormous", "enormously", "entirely", "especially",
    "exceptional", "exceptionally", "extreme", "extremely", "fabulously", "flipping", "flippin",
    "frackin", "fracking", "fricking", "frickin", "frigging", "friggin", "fully", "fuckin",
    "fucking", "fuggin", "fugging", "greatly", "hella", "highly", "hugely", "incredible",
    "incredibly", "intensely", "major", "majorly", "more", "most", "particularly", "purely",
    "quite", "really", "remarkably", "so", "substantially", "thoroughly", "total", "totally",
    "tremendous", "tremendously", "uber", "unbelievably", "unusually", "utter", "utterly",
    "very",
];

const DAMPENERS: &[&str] = &[
    "almost", "barely", "hardly", "just enough", "kind of", "kinda", "kindof", "kind-of", "less",
    "little", "marginal", "marginally", "occasional", "occasionally", "partly", "scarce",
    "scarcely", "slight", "slightly", "somewhat", "sort of", "sorta", "sortof", "sort-of",
];

const NEGATORS: &[&str] = &[
    "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt", "ain't", "aren't",
    "can't", "couldn't", "daren't", "didn't", "doesn't", "dont", "hadnt", "hasnt", "havent",
    "isnt", "mightnt", "mustnt", "neither", "don't", "hadn't", "hasn't", "haven't", "isn't",
    "mightn't", "mustn't", "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing",
    "nowhere", "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent", "oughtn't", "shan't",
    "shouldn't", "uh-uh", "wasn't", "weren't", "without", "wont", "wouldnt", "won't", "wouldn't",
    "rarely", "seldom", "despite",
];

const SPECIAL_IDIOMS: &[(&str, f64)] = &[
    ("the shit", 3.0),
    ("the bomb", 3.0),
    ("bad ass", 1.5),
    ("badass", 1.5),
    ("bus stop", 0.0),
    ("yeah right", -2.0),
    ("kiss of death", -1.5),
    ("to die for", 3.0),
    ("beating heart", 3.5),
];

/// Token valences plus the modifier tables the scoring heuristics consult.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashMap<String, f64>,
    boosters: HashMap<String, f64>,
    negators: HashSet<String>,
    special_idioms: HashMap<String, f64>,
    emoji: HashMap<char, String>,
}

/// Outcome of parsing a lexicon file.
#[derive(Debug, Clone)]
pub struct ParsedLexicon {
    pub lexicon: Lexicon,
    /// Tokens that appeared on more than one row (the last row wins).
    pub duplicates: Vec<String>,
}

impl Lexicon {
    /// The bundled VADER lexicon and emoji descriptions with the default
    /// booster, negator and idiom tables.
    pub fn reference() -> Self {
        let mut lex = Lexicon::parse(REFERENCE_LEXICON)
            .expect("bundled lexicon parses")
            .lexicon;
        lex.use_reference_emoji();
        lex
    }

    /// Parse a tab-separated lexicon (`token, mean, stddev, ratings`).
    ///
    /// Only the first two columns are read. Blank lines are skipped;
    /// duplicate tokens keep the last value and are reported. Booster,
    /// negator and idiom tables start from the built-in defaults; the emoji
    /// table starts empty.
    pub fn parse(text: &str) -> Result<ParsedLexicon, ValenceError> {
        let mut entries = HashMap::new();
        let mut duplicates = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split('\t');
            let token = cols.next().unwrap_or_default();
            let raw = cols.next().ok_or(ValenceError::MalformedRow {
                line: lineno + 1,
                reason: "missing valence column",
            })?;
            let valence: f64 = raw.trim().parse().map_err(|_| ValenceError::MalformedRow {
                line: lineno + 1,
                reason: "valence is not a number",
            })?;
            if !valence.is_finite() {
                return Err(ValenceError::MalformedRow {
                    line: lineno + 1,
                    reason: "valence is not finite",
                });
            }
            if entries.insert(token.to_string(), valence).is_some() {
                duplicates.push(token.to_string());
            }
        }
        let lexicon = Lexicon {
            entries,
            ..Lexicon::with_default_tables()
        };
        Ok(ParsedLexicon { lexicon, duplicates })
    }

    /// Empty valence map with default modifier tables.
    pub fn with_default_tables() -> Self {
        let boosters = INTENSIFIERS
            .iter()
            .map(|w| (w.to_string(), BOOSTER_INCREMENT))
            .chain(DAMPENERS.iter().map(|w| (w.to_string(), DAMPENER_INCREMENT)))
            .collect();
        Lexicon {
            entries: HashMap::new(),
            boosters,
            negators: NEGATORS.iter().map(|w| w.to_string()).collect(),
            special_idioms: SPECIAL_IDIOMS.iter().map(|&(p, v)| (p.to_string(), v)).collect(),
            emoji: HashMap::new(),
        }
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.entries.get(token).copied()
    }

    pub fn contains(&self, token: &str) -> bool {
        self.entries.contains_key(token)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn booster(&self, token: &str) -> Option<f64> {
        self.boosters.get(token).copied()
    }

    pub fn is_negator(&self, token: &str) -> bool {
        self.negators.contains(token)
    }

    pub fn idiom(&self, phrase: &str) -> Option<f64> {
        self.special_idioms.get(phrase).copied()
    }

    pub fn emoji_description(&self, c: char) -> Option<&str> {
        self.emoji.get(&c).map(String::as_str)
    }

    pub fn insert(&mut self, token: &str, valence: f64) -> Result<(), ValenceError> {
        if !valence.is_finite() {
            return Err(ValenceError::NonFinite(token.to_string()));
        }
        self.entries.insert(token.to_string(), valence);
        Ok(())
    }

    /// Add or replace a degree modifier; increments must lie in `[-1, 1]`.
    pub fn set_booster(&mut self, token: &str, increment: f64) -> Result<(), ValenceError> {
        if !increment.is_finite() || libm::fabs(increment) > 1.0 {
            return Err(ValenceError::BoosterOutOfRange(token.to_string()));
        }
        self.boosters.insert(token.to_lowercase(), increment);
        Ok(())
    }

    pub fn remove_booster(&mut self, token: &str) {
        self.boosters.remove(token);
    }

    pub fn set_negators<I: IntoIterator<Item = S>, S: AsRef<str>>(&mut self, words: I) {
        self.negators = words.into_iter().map(|w| w.as_ref().to_lowercase()).collect();
    }

    pub fn add_negator(&mut self, word: &str) {
        self.negators.insert(word.to_lowercase());
    }

    pub fn set_idiom(&mut self, phrase: &str, valence: f64) -> Result<(), ValenceError> {
        if !valence.is_finite() {
            return Err(ValenceError::NonFinite(phrase.to_string()));
        }
        self.special_idioms.insert(phrase.to_lowercase(), valence);
        Ok(())
    }

    /// Replace the emoji description table from `emoji<TAB>description`
    /// lines. Only single-code-point keys are kept.
    pub fn set_emoji_table(&mut self, text: &str) {
        self.emoji = parse_emoji_table(text);
    }

    /// Install the bundled emoji description table.
    pub fn use_reference_emoji(&mut self) {
        self.emoji = parse_emoji_table(REFERENCE_EMOJI);
    }
}

fn parse_emoji_table(text: &str) -> HashMap<char, String> {
    text.lines()
        .filter_map(|line| {
            let (key, desc) = line.trim_end_matches(['\r', '\n']).split_once('\t')?;
            let mut chars = key.chars();
            let c = chars.next()?;
            chars.next().is_none().then(|| (c, desc.to_string()))
        })
        .collect()
}
