//! Stage functions shared by the subcommands.

use std::path::PathBuf;

use rayon::prelude::*;
use vaxpulse_core::corpus::{dedup, filter_records, split_time_slices, DedupKey};
use vaxpulse_core::influence::{aggregate_by_month, ScoredTweet};
use vaxpulse_core::textprep::{prune_vocabulary, Stoplist, TopicPipeline};
use vaxpulse_core::topics::{build_bow, BagOfWords, LdaConfig, SweepConfig};
use vaxpulse_core::valence::ScoreInput;
use vaxpulse_core::{EngagementWeight, Lexicon, MonthlyAggregate, SentimentAnalyzer, TweetRecord, Vocabulary};

use crate::config::{DedupMode, IngestConfig, ScoreText, SentimentConfig, TopicsConfig};
use crate::error::{PipelineError, Result};
use crate::records::{load_records, Rejection};
use crate::resources::{load_lexicon, load_stoplist, Modifiers};

/// Load every input, deduplicate, then apply the country and keyword filter.
pub fn ingest(inputs: &[PathBuf], cfg: &IngestConfig) -> Result<(Vec<TweetRecord>, Vec<Rejection>)> {
    if inputs.is_empty() {
        return Err(PipelineError::config("no input files given"));
    }
    let keyword = cfg
        .keyword
        .as_deref()
        .ok_or_else(|| PipelineError::config("no keyword given"))?;
    let mut records = Vec::new();
    let mut rejections = Vec::new();
    for path in inputs {
        let loaded = load_records(path)?;
        log::info!(
            "{}: {} records, {} rejected",
            path.display(),
            loaded.records.len(),
            loaded.rejections.len()
        );
        records.extend(loaded.records);
        rejections.extend(loaded.rejections);
    }
    let records = match cfg.dedup {
        DedupMode::Id => dedup(&records, DedupKey::ById),
        DedupMode::Text => dedup(&records, DedupKey::ByCleanText),
        DedupMode::None => records,
    };
    let kept = filter_records(&records, &cfg.countries, keyword).map_err(PipelineError::config)?;
    if kept.is_empty() {
        log::warn!("no records left after filtering");
    }
    Ok((kept, rejections))
}

pub fn analyzer(cfg: &SentimentConfig) -> Result<SentimentAnalyzer> {
    let lexicon = match &cfg.lexicon {
        Some(p) => load_lexicon(p)?,
        None => Lexicon::reference(),
    };
    let modifiers = match &cfg.modifiers {
        Some(p) => Modifiers::load(p)?,
        None => Modifiers::default(),
    };
    modifiers.analyzer(lexicon)
}

pub fn score_input(cfg: &SentimentConfig) -> ScoreInput {
    match cfg.score_text {
        ScoreText::Cleaned => ScoreInput::Cleaned,
        ScoreText::Raw => ScoreInput::Raw,
    }
}

/// Score and weight every record, preserving input order.
pub fn score_records(records: &[TweetRecord], analyzer: &SentimentAnalyzer, cfg: &SentimentConfig) -> Result<Vec<ScoredTweet>> {
    let input = score_input(cfg);
    records
        .par_iter()
        .map(|r| {
            let weight = EngagementWeight::of_record(r, cfg.smoothing)
                .map_err(|e| PipelineError::data(format!("tweet {}: {e}", r.tweet_id)))?;
            Ok(ScoredTweet::new(r, analyzer.score_tweet(&r.text, input), weight))
        })
        .collect()
}

pub fn timeline(scored: &[ScoredTweet]) -> Result<Vec<MonthlyAggregate>> {
    aggregate_by_month(scored).map_err(PipelineError::data)
}

pub fn topic_pipeline(cfg: &TopicsConfig) -> Result<TopicPipeline> {
    let stoplist = match &cfg.stopwords {
        Some(p) => load_stoplist(p)?,
        None => Stoplist::english(),
    };
    Ok(TopicPipeline {
        stoplist,
        lemmatize: cfg.lemmatize,
    })
}

pub fn topic_tokens(records: &[TweetRecord], pipeline: &TopicPipeline) -> Vec<Vec<String>> {
    records.par_iter().map(|r| pipeline.tokens(&r.text)).collect()
}

pub fn vocabulary(docs: &[Vec<String>], cfg: &TopicsConfig) -> Result<Vocabulary> {
    prune_vocabulary(docs, cfg.min_doc_freq, cfg.max_doc_fraction).map_err(|e| {
        if cfg.min_doc_freq < 1 || !(cfg.max_doc_fraction > 0.0 && cfg.max_doc_fraction <= 1.0) {
            PipelineError::config(e)
        } else {
            PipelineError::data(format!("topic corpus: {e}"))
        }
    })
}

pub fn bag_of_words(docs: &[Vec<String>], vocab: &Vocabulary) -> Result<BagOfWords> {
    build_bow(docs, vocab).map_err(|e| PipelineError::data(format!("topic corpus: {e}")))
}

pub fn lda_config(cfg: &TopicsConfig) -> LdaConfig {
    LdaConfig {
        alpha: cfg.alpha,
        beta: cfg.beta,
        iterations: cfg.iterations,
        burn_in: cfg.burn_in,
        seed: cfg.seed,
    }
}

pub fn sweep_config(cfg: &TopicsConfig) -> SweepConfig {
    SweepConfig {
        lda: lda_config(cfg),
        top_n: cfg.coherence_top_n,
        window: cfg.window,
    }
}

/// Split into `n` equal-count time slices and tokenize each.
pub fn sliced_docs(records: &[TweetRecord], n: usize, pipeline: &TopicPipeline) -> Result<Vec<(String, Vec<Vec<String>>)>> {
    let slices = split_time_slices(records, n).map_err(|e| PipelineError::data(format!("time slices: {e}")))?;
    Ok(slices
        .into_iter()
        .map(|s| (s.label, topic_tokens(&s.records, pipeline)))
        .collect())
}
