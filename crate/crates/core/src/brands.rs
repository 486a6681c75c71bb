//! Keyword attribution of tweets to vaccine manufacturers and per-brand
//! sentiment tables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::corpus::{dedup, DedupKey, TweetRecord};
use crate::influence::LabelCounts;
use crate::textprep::clean_text;
use crate::valence::{ScoreInput, SentimentAnalyzer, SentimentLabel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BrandError {
    #[error("brand lexicon is empty")]
    EmptyLexicon,
    #[error("brand {0:?} has no keywords")]
    NoKeywords(String),
    #[error("keyword {keyword:?} of {brand:?} is not lowercase")]
    NotLowercase { brand: String, keyword: String },
    #[error("keyword {keyword:?} of {brand:?} is empty after cleaning")]
    EmptyKeyword { brand: String, keyword: String },
    #[error("keyword {keyword:?} is assigned to both {first:?} and {second:?}")]
    SharedKeyword {
        keyword: String,
        first: String,
        second: String,
    },
}

const DEFAULT_BRANDS: &[(&str, &[&str])] = &[
    ("AstraZeneca", &["astrazeneca", "astra zeneca", "vaxzevria", "covishield"]),
    ("Cansinobio", &["cansinobio", "cansino"]),
    ("CureVac", &["curevac"]),
    (
        "Johnson & Johnson",
        &["johnson & johnson", "johnsonjohnson", "jnjnews", "janssen", "johnsonandjohnson"],
    ),
    ("Moderna", &["moderna", "spikevax"]),
    ("Novavax", &["novavax", "nuvaxovid"]),
    ("Pfizer", &["pfizer", "biontech", "comirnaty"]),
    ("Sanofi & GlaxoSmithKline", &["sanofi", "glaxosmithkline"]),
    ("Sinopharm", &["sinopharm"]),
    ("Sinovac", &["sinovac", "coronavac"]),
    ("Sputnik-V", &["sputnik"]),
    ("Valneva", &["valneva"]),
];

#[derive(Debug, Clone, PartialEq, Eq)]
struct Brand {
    keywords: BTreeSet<String>,
    /// Keywords after [`clean_text`], the form actually searched for.
    patterns: Vec<String>,
}

/// Brand name to keyword set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrandLexicon {
    brands: BTreeMap<String, Brand>,
    word_boundary: bool,
}

impl BrandLexicon {
    /// Validate and build a lexicon. Keywords must be lowercase, non-empty
    /// and owned by a single brand.
    pub fn new<I, K, S>(brands: I) -> Result<Self, BrandError>
    where
        I: IntoIterator<Item = (S, K)>,
        K: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out = BTreeMap::new();
        let mut owner: BTreeMap<String, String> = BTreeMap::new();
        for (name, keywords) in brands {
            let name = name.as_ref().to_string();
            let keywords: BTreeSet<String> =
                keywords.into_iter().map(|k| k.as_ref().trim().to_string()).collect();
            if keywords.is_empty() {
                return Err(BrandError::NoKeywords(name));
            }
            let mut patterns = Vec::new();
            for kw in &keywords {
                if *kw != kw.to_lowercase() {
                    return Err(BrandError::NotLowercase {
                        brand: name,
                        keyword: kw.clone(),
                    });
                }
                let pattern = clean_text(kw);
                if pattern.is_empty() {
                    return Err(BrandError::EmptyKeyword {
                        brand: name,
                        keyword: kw.clone(),
                    });
                }
                if let Some(first) = owner.insert(kw.clone(), name.clone()) {
                    if first != name {
                        return Err(BrandError::SharedKeyword {
                            keyword: kw.clone(),
                            first,
                            second: name,
                        });
                    }
                }
                if !patterns.contains(&pattern) {
                    patterns.push(pattern);
                }
            }
            let entry = out.entry(name).or_insert_with(|| Brand {
                keywords: BTreeSet::new(),
                patterns: Vec::new(),
            });
            entry.keywords.extend(keywords);
            for p in patterns {
                if !entry.patterns.contains(&p) {
                    entry.patterns.push(p);
                }
            }
        }
        if out.is_empty() {
            return Err(BrandError::EmptyLexicon);
        }
        Ok(BrandLexicon {
            brands: out,
            word_boundary: false,
        })
    }

    /// Require keyword hits to start and end at word boundaries.
    pub fn with_word_boundary(mut self, on: bool) -> Self {
        self.word_boundary = on;
        self
    }

    pub fn len(&self) -> usize {
        self.brands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.brands.is_empty()
    }

    pub fn brand_names(&self) -> impl Iterator<Item = &str> {
        self.brands.keys().map(String::as_str)
    }

    pub fn keywords(&self, brand: &str) -> Option<&BTreeSet<String>> {
        self.brands.get(brand).map(|b| &b.keywords)
    }

    /// Brands with at least one keyword in `cleaned_text`.
    pub fn match_brands(&self, cleaned_text: &str) -> BTreeSet<&str> {
        self.brands
            .iter()
            .filter(|(_, b)| b.patterns.iter().any(|p| self.hit(cleaned_text, p)))
            .map(|(name, _)| name.as_str())
            .collect()
    }

    fn hit(&self, text: &str, pattern: &str) -> bool {
        if !self.word_boundary {
            return text.contains(pattern);
        }
        text.match_indices(pattern).any(|(at, m)| {
            let before = text[..at].chars().next_back();
            let after = text[at + m.len()..].chars().next();
            !before.is_some_and(char::is_alphanumeric) && !after.is_some_and(char::is_alphanumeric)
        })
    }
}

/// The twelve manufacturers with their default keyword sets.
pub fn default_brand_lexicon() -> BrandLexicon {
    BrandLexicon::new(DEFAULT_BRANDS.iter().map(|(name, kws)| (*name, kws.iter().copied())))
        .expect("default brand table is valid")
}

/// One line of the brand sentiment table.
#[derive(Debug, Clone, PartialEq)]
pub struct BrandTableRow {
    pub brand: String,
    pub n_tweets: u64,
    pub n_pos: u64,
    pub n_neu: u64,
    pub n_neg: u64,
    /// Share of all tweet-brand matches.
    pub pct_of_total: f64,
}

/// Count labelled tweets per matched brand.
///
/// Input pairs are cleaned text and sentiment label. A tweet naming two
/// brands counts once for each. Rows come out by descending `n_tweets`,
/// then brand name; brands without matches are left out.
pub fn brand_sentiment_table<'a, I>(tweets: I, lexicon: &BrandLexicon) -> Vec<BrandTableRow>
where
    I: IntoIterator<Item = (&'a str, SentimentLabel)>,
{
    let mut counts: BTreeMap<&str, LabelCounts<u64>> = BTreeMap::new();
    for (text, label) in tweets {
        for brand in lexicon.match_brands(text) {
            *counts.entry(brand).or_default().get_mut(label) += 1;
        }
    }
    let total: u64 = counts.values().map(|c| c.total()).sum();
    let mut rows: Vec<BrandTableRow> = counts
        .into_iter()
        .map(|(brand, c)| BrandTableRow {
            brand: brand.to_string(),
            n_tweets: c.total(),
            n_pos: c.positive,
            n_neu: c.neutral,
            n_neg: c.negative,
            pct_of_total: c.total() as f64 / total as f64,
        })
        .collect();
    rows.sort_by(|a, b| b.n_tweets.cmp(&a.n_tweets).then_with(|| a.brand.cmp(&b.brand)));
    rows
}

/// Deduplicate by clean text, score each survivor and tabulate.
pub fn brand_table_for_records(
    records: &[TweetRecord],
    lexicon: &BrandLexicon,
    analyzer: &SentimentAnalyzer,
    input: ScoreInput,
) -> Vec<BrandTableRow> {
    let unique = dedup(records, DedupKey::ByCleanText);
    let labelled: Vec<(String, SentimentLabel)> = unique
        .iter()
        .map(|r| (clean_text(&r.text), analyzer.score_tweet(&r.text, input).label()))
        .collect();
    brand_sentiment_table(labelled.iter().map(|(t, l)| (t.as_str(), *l)), lexicon)
}
