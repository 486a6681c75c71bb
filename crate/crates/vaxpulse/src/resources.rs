//! Lexicon, stoplist, modifier and brand files.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use vaxpulse_core::brands::default_brand_lexicon;
use vaxpulse_core::textprep::Stoplist;
use vaxpulse_core::valence::Heuristics;
use vaxpulse_core::{BrandLexicon, Lexicon, SentimentAnalyzer};

use crate::error::{PipelineError, Result};

fn read(path: &Path) -> Result<String> {
    let text = fs::read_to_string(path).map_err(|e| PipelineError::read(path, e))?;
    Ok(text.strip_prefix('\u{feff}').map(str::to_string).unwrap_or(text))
}

/// Tab-separated valence lexicon; the bundled emoji descriptions are kept.
pub fn load_lexicon(path: &Path) -> Result<Lexicon> {
    let parsed = Lexicon::parse(&read(path)?).map_err(|e| PipelineError::config(format!("{}: {e}", path.display())))?;
    if !parsed.duplicates.is_empty() {
        log::warn!(
            "{}: duplicate token(s) {:?}, last row kept",
            path.display(),
            parsed.duplicates
        );
    }
    let mut lexicon = parsed.lexicon;
    lexicon.use_reference_emoji();
    Ok(lexicon)
}

pub fn load_stoplist(path: &Path) -> Result<Stoplist> {
    Ok(Stoplist::parse(&read(path)?))
}

/// Overrides for the scoring heuristics and modifier tables.
///
/// ```toml
/// negators = ["not", "never"]      # replaces the built-in list
///
/// [heuristics]
/// alpha = 15.0
///
/// [boosters]
/// "super" = 0.293
///
/// [idioms]
/// "the bomb" = 3.0
/// ```
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Modifiers {
    pub negators: Option<Vec<String>>,
    #[serde(default)]
    pub heuristics: HeuristicOverrides,
    #[serde(default)]
    pub boosters: BTreeMap<String, f64>,
    #[serde(default)]
    pub idioms: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeuristicOverrides {
    caps_increment: Option<f64>,
    negation_scalar: Option<f64>,
    distance_decay: Option<[f64; 3]>,
    never_so_scalar: Option<f64>,
    but_before: Option<f64>,
    but_after: Option<f64>,
    exclamation_increment: Option<f64>,
    exclamation_cap: Option<usize>,
    question_increment: Option<f64>,
    question_cap_amplifier: Option<f64>,
    alpha: Option<f64>,
}

impl HeuristicOverrides {
    fn apply(&self, mut h: Heuristics) -> Heuristics {
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { h.$f = v; })* };
        }
        set!(
            caps_increment,
            negation_scalar,
            distance_decay,
            never_so_scalar,
            but_before,
            but_after,
            exclamation_increment,
            exclamation_cap,
            question_increment,
            question_cap_amplifier,
            alpha
        );
        h
    }
}

impl Modifiers {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| PipelineError::config(format!("modifier file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read(path)?).map_err(|e| PipelineError::config(format!("{}: {e}", path.display())))
    }

    pub fn analyzer(&self, mut lexicon: Lexicon) -> Result<SentimentAnalyzer> {
        if let Some(words) = &self.negators {
            lexicon.set_negators(words);
        }
        for (word, inc) in &self.boosters {
            lexicon.set_booster(word, *inc).map_err(PipelineError::config)?;
        }
        for (phrase, v) in &self.idioms {
            lexicon.set_idiom(phrase, *v).map_err(PipelineError::config)?;
        }
        let heuristics = self.heuristics.apply(Heuristics::default());
        if !(heuristics.alpha > 0.0) {
            return Err(PipelineError::config("heuristics.alpha must be positive"));
        }
        Ok(SentimentAnalyzer::with_heuristics(lexicon, heuristics))
    }
}

/// Parse a brand file.
///
/// A line starting in column 0 names a brand; the indented lines after it
/// are its keywords, one per line. `#` starts a comment.
///
/// ```text
/// Pfizer
///     pfizer
///     biontech
/// ```
pub fn parse_brand_config(text: &str) -> Result<BrandLexicon> {
    let mut brands: Vec<(String, Vec<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with([' ', '\t']) {
            let Some((_, keywords)) = brands.last_mut() else {
                return Err(PipelineError::config(format!(
                    "brand file line {}: keyword before any brand header",
                    i + 1
                )));
            };
            keywords.push(line.trim().to_string());
        } else {
            brands.push((line.trim().to_string(), Vec::new()));
        }
    }
    BrandLexicon::new(brands).map_err(|e| PipelineError::config(format!("brand file: {e}")))
}

pub fn load_brand_config(path: Option<&Path>) -> Result<BrandLexicon> {
    match path {
        None => Ok(default_brand_lexicon()),
        Some(p) => parse_brand_config(&read(p)?).map_err(|e| PipelineError::config(format!("{}: {e}", p.display()))),
    }
}
