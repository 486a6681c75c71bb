//! Plot-ready CSV exports. UTF-8, RFC 4180 quoting, LF line endings.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use vaxpulse_core::influence::{LabelCounts, MonthlyAggregate, ScoredTweet};
use vaxpulse_core::topics::{CoherenceReport, CoherenceScores};
use vaxpulse_core::{BrandTableRow, TopicModel};

use crate::error::{PipelineError, Result};

pub const SCORES_HEADER: [&str; 8] = [
    "tweet_id",
    "compound",
    "pos",
    "neu",
    "neg",
    "label",
    "weight",
    "weighted_compound",
];
pub const TIMELINE_HEADER: [&str; 8] = [
    "month",
    "n_pos",
    "n_neu",
    "n_neg",
    "ratio_pos",
    "ratio_neu",
    "ratio_neg",
    "mean_compound",
];
pub const BRANDS_HEADER: [&str; 6] = ["brand", "n_tweets", "n_pos", "n_neu", "n_neg", "pct_of_total"];
pub const TOPICS_HEADER: [&str; 3] = ["topic", "token_share", "top_words"];
pub const FREQ_HEADER: [&str; 2] = ["term", "count"];
pub const COHERENCE_HEADER: [&str; 4] = ["k", "cv", "umass", "chosen"];
pub const TIMING_HEADER: [&str; 2] = ["k", "runtime_secs"];
pub const TOPIC_COHERENCE_HEADER: [&str; 3] = ["topic", "cv", "umass"];
pub const SLICES_HEADER: [&str; 6] = ["slice", "slice_label", "topic", "rank", "term", "probability"];

/// Which monthly file to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    Unweighted,
    Weighted,
}

impl Weighting {
    pub fn file_name(self) -> &'static str {
        match self {
            Weighting::Unweighted => "timeline_unweighted.csv",
            Weighting::Weighted => "timeline_weighted.csv",
        }
    }
}

/// Open `path` for writing, creating parent directories.
pub fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| PipelineError::write(parent, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| PipelineError::write(path, e))
}

fn table<W: Write, R, const N: usize>(
    writer: W,
    header: [&str; N],
    rows: impl IntoIterator<Item = R>,
    row: impl Fn(R) -> [String; N],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(header).map_err(PipelineError::data)?;
    for r in rows {
        w.write_record(row(r)).map_err(PipelineError::data)?;
    }
    w.flush().map_err(PipelineError::data)
}

pub fn write_scores<W: Write>(w: W, tweets: &[ScoredTweet]) -> Result<()> {
    table(w, SCORES_HEADER, tweets, |t| {
        [
            t.tweet_id.clone(),
            t.scores.compound.to_string(),
            t.scores.pos.to_string(),
            t.scores.neu.to_string(),
            t.scores.neg.to_string(),
            t.label.to_string(),
            t.weight.weight.to_string(),
            t.weighted_compound().to_string(),
        ]
    })
}

pub fn write_timeline<W: Write>(w: W, months: &[MonthlyAggregate], weighting: Weighting) -> Result<()> {
    table(w, TIMELINE_HEADER, months, |m| {
        let (n, r, mean): (LabelCounts<String>, LabelCounts<f64>, f64) = match weighting {
            Weighting::Unweighted => (m.count_by_label.map(|c| c.to_string()), m.ratio_by_label, m.mean_compound),
            Weighting::Weighted => (
                m.weighted_count_by_label.map(|c| c.to_string()),
                m.weighted_ratio_by_label(),
                m.weighted_mean_compound,
            ),
        };
        [
            m.month.clone(),
            n.positive,
            n.neutral,
            n.negative,
            r.positive.to_string(),
            r.neutral.to_string(),
            r.negative.to_string(),
            mean.to_string(),
        ]
    })
}

pub fn write_brands<W: Write>(w: W, rows: &[BrandTableRow]) -> Result<()> {
    table(w, BRANDS_HEADER, rows, |r| {
        [
            r.brand.clone(),
            r.n_tweets.to_string(),
            r.n_pos.to_string(),
            r.n_neu.to_string(),
            r.n_neg.to_string(),
            r.pct_of_total.to_string(),
        ]
    })
}

/// One row per topic: token share in percent and the top words joined by
/// spaces.
pub fn write_topics<W: Write>(w: W, model: &TopicModel, top_words: usize) -> Result<()> {
    table(w, TOPICS_HEADER, 0..model.k, |k| {
        [
            k.to_string(),
            (model.token_share[k] * 100.0).to_string(),
            model.top_words(k, top_words).join(" "),
        ]
    })
}

pub fn write_topic_coherence<W: Write>(w: W, cv: &CoherenceScores, umass: &CoherenceScores) -> Result<()> {
    table(w, TOPIC_COHERENCE_HEADER, 0..cv.per_topic.len(), |k| {
        [k.to_string(), cv.per_topic[k].to_string(), umass.per_topic[k].to_string()]
    })
}

pub fn write_freq<W: Write>(w: W, terms: &[(String, usize)]) -> Result<()> {
    table(w, FREQ_HEADER, terms, |(t, n)| [t.clone(), n.to_string()])
}

pub fn write_coherence<W: Write>(w: W, report: &CoherenceReport) -> Result<()> {
    table(w, COHERENCE_HEADER, &report.rows, |r| {
        [
            r.k.to_string(),
            r.cv.to_string(),
            r.umass.to_string(),
            u8::from(r.k == report.chosen_k).to_string(),
        ]
    })
}

/// Wall-clock times kept apart from the coherence curve so the curve
/// file stays byte-identical across runs.
pub fn write_timing<W: Write>(w: W, report: &CoherenceReport) -> Result<()> {
    table(w, TIMING_HEADER, &report.rows, |r| {
        [
            r.k.to_string(),
            r.runtime_secs.map(|s| format!("{s:.3}")).unwrap_or_default(),
        ]
    })
}

/// Top words of every topic in every slice.
pub fn write_slices<W: Write>(w: W, labels: &[String], models: &[TopicModel], top_words: usize) -> Result<()> {
    let rows = models.iter().enumerate().flat_map(|(s, m)| {
        (0..m.k).flat_map(move |k| {
            m.top_word_ids(k, top_words)
                .into_iter()
                .enumerate()
                .map(move |(rank, id)| (s, m, k, rank, id))
        })
    });
    table(w, SLICES_HEADER, rows, |(s, m, k, rank, id)| {
        [
            s.to_string(),
            labels[s].clone(),
            k.to_string(),
            rank.to_string(),
            m.vocab.term(id).to_string(),
            m.phi[k][id as usize].to_string(),
        ]
    })
}

/// Square matrix with a `topic` column followed by one column per topic.
pub fn write_matrix<W: Write>(w: W, matrix: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    let header: Vec<String> = std::iter::once("topic".to_string())
        .chain((0..matrix.len()).map(|k| k.to_string()))
        .collect();
    w.write_record(&header).map_err(PipelineError::data)?;
    for (k, row) in matrix.iter().enumerate() {
        let rec: Vec<String> = std::iter::once(k.to_string())
            .chain(row.iter().map(f64::to_string))
            .collect();
        w.write_record(&rec).map_err(PipelineError::data)?;
    }
    w.flush().map_err(PipelineError::data)
}
