//! Pipeline settings: TOML file, then `VAXPULSE_<SECTION>_<KEY>`
//! environment variables, then command-line flags.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize};
use toml::{Table, Value};

use crate::error::{PipelineError, Result};

pub const ENV_PREFIX: &str = "VAXPULSE_";

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub ingest: IngestConfig,
    pub sentiment: SentimentConfig,
    pub brands: BrandsConfig,
    pub topics: TopicsConfig,
    pub freq: FreqConfig,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DedupMode {
    #[default]
    Id,
    Text,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IngestConfig {
    pub inputs: Vec<PathBuf>,
    #[serde(deserialize_with = "string_or_list")]
    pub countries: BTreeSet<String>,
    pub keyword: Option<String>,
    pub dedup: DedupMode,
}

impl Default for IngestConfig {
    fn default() -> Self {
        IngestConfig {
            inputs: Vec::new(),
            countries: ["GB", "US"].into_iter().map(String::from).collect(),
            keyword: None,
            dedup: DedupMode::Id,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ScoreText {
    #[default]
    Cleaned,
    Raw,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SentimentConfig {
    pub lexicon: Option<PathBuf>,
    pub modifiers: Option<PathBuf>,
    pub score_text: ScoreText,
    pub smoothing: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BrandsConfig {
    pub config: Option<PathBuf>,
    pub word_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TopicsConfig {
    pub k: Option<usize>,
    pub sweep: Option<KRange>,
    pub alpha: Option<f64>,
    pub beta: f64,
    pub iterations: usize,
    pub burn_in: usize,
    pub seed: u64,
    pub slices: Option<usize>,
    pub chain_strength: f64,
    pub stopwords: Option<PathBuf>,
    pub lemmatize: bool,
    pub min_doc_freq: usize,
    pub max_doc_fraction: f64,
    pub top_words: usize,
    pub coherence_top_n: usize,
    pub window: usize,
}

impl Default for TopicsConfig {
    fn default() -> Self {
        TopicsConfig {
            k: None,
            sweep: None,
            alpha: None,
            beta: 0.01,
            iterations: 1000,
            burn_in: 200,
            seed: 0,
            slices: None,
            chain_strength: vaxpulse_core::topics::DEFAULT_CHAIN_STRENGTH,
            stopwords: None,
            lemmatize: true,
            min_doc_freq: 2,
            max_doc_fraction: 1.0,
            top_words: 8,
            coherence_top_n: vaxpulse_core::topics::DEFAULT_TOP_N,
            window: vaxpulse_core::topics::DEFAULT_WINDOW,
        }
    }
}

/// Topic count used when neither `k` nor a sweep is given.
pub const DEFAULT_K: usize = 18;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FreqConfig {
    pub top: usize,
}

impl Default for FreqConfig {
    fn default() -> Self {
        FreqConfig { top: 30 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: PathBuf::from(".") }
    }
}

/// Inclusive topic-number range written `a:b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KRange {
    pub start: usize,
    pub end: usize,
}

impl KRange {
    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.end).collect()
    }
}

impl std::str::FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
        let (start, end) = (parse(a)?, parse(b)?);
        if start == 0 || start > end {
            return Err(format!("range {s:?} must satisfy 1 <= a <= b"));
        }
        Ok(KRange { start, end })
    }
}

impl fmt::Display for KRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

impl Serialize for KRange {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KRange {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn string_or_list<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeSet<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Either {
        One(String),
        Many(Vec<String>),
    }
    Ok(match Either::deserialize(d)? {
        Either::One(s) => parse_list(&s),
        Either::Many(v) => v.iter().map(|c| c.trim().to_uppercase()).filter(|c| !c.is_empty()).collect(),
    })
}

/// `"GB, us"` to `{"GB", "US"}`.
pub fn parse_list(s: &str) -> BTreeSet<String> {
    s.split(',').map(|c| c.trim().to_uppercase()).filter(|c| !c.is_empty()).collect()
}

const SECTIONS: [&str; 6] = ["ingest", "sentiment", "brands", "topics", "freq", "output"];

impl PipelineConfig {
    /// File values (if any) with environment overrides from `env`.
    pub fn resolve<I>(path: Option<&Path>, env: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut table = match path {
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| PipelineError::read(p, e))?;
                text.parse::<Table>()
                    .map_err(|e| PipelineError::config(format!("{}: {e}", p.display())))?
            }
            None => Table::new(),
        };
        apply_env(&mut table, env)?;
        Value::Table(table)
            .try_into()
            .map_err(|e| PipelineError::config(format!("config: {e}")))
    }

    pub fn from_env_and_file(path: Option<&Path>) -> Result<Self> {
        Self::resolve(path, std::env::vars())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

/// `VAXPULSE_TOPICS_BURN_IN=50` sets `topics.burn_in`. Values that parse
/// as TOML literals keep their type; anything else is a string.
fn apply_env<I>(table: &mut Table, env: I) -> Result<()>
where
    I: IntoIterator<Item = (String, String)>,
{
    for (name, raw) in env {
        let Some(rest) = name.strip_prefix(ENV_PREFIX) else {
            continue;
        };
        let rest = rest.to_ascii_lowercase();
        let Some((section, key)) = rest.split_once('_') else {
            continue;
        };
        if !SECTIONS.contains(&section) {
            return Err(PipelineError::config(format!("{name}: unknown section {section:?}")));
        }
        let value = format!("v = {raw}")
            .parse::<Table>()
            .ok()
            .and_then(|mut t| t.remove("v"))
            .unwrap_or_else(|| Value::String(raw.clone()));
        let entry = table
            .entry(section.to_string())
            .or_insert_with(|| Value::Table(Table::new()));
        let Value::Table(sec) = entry else {
            return Err(PipelineError::config(format!("config: {section} is not a table")));
        };
        sec.insert(key.to_string(), value);
    }
    Ok(())
}
