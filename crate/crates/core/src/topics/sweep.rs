use alloc::vec::Vec;

use super::coherence::{coherence_cv, coherence_umass};
use super::lda::{fit_lda, LdaConfig};
use super::{BagOfWords, TopicsError};
use crate::math::mix_seed;

/// Settings for a topic-number sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    /// `seed` here is the base seed; each K gets its own via [`seed_for_k`].
    pub lda: LdaConfig,
    pub top_n: usize,
    pub window: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            lda: LdaConfig::default(),
            top_n: super::coherence::DEFAULT_TOP_N,
            window: super::coherence::DEFAULT_WINDOW,
        }
    }
}

/// Seed of the chain fit for `k` topics.
pub fn seed_for_k(base: u64, k: usize) -> u64 {
    mix_seed(base ^ mix_seed(k as u64))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceRow {
    pub k: usize,
    pub cv: f64,
    pub umass: f64,
    /// Wall-clock fit time in seconds, when measured.
    pub runtime_secs: Option<f64>,
}

/// Coherence curve over K plus the argmax of c_v.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceReport {
    pub rows: Vec<CoherenceRow>,
    pub chosen_k: usize,
}

impl CoherenceReport {
    /// Rows must be non-empty with strictly increasing K. Ties in c_v go
    /// to the smaller K.
    pub fn from_rows(rows: Vec<CoherenceRow>) -> Result<Self, TopicsError> {
        if rows.is_empty() {
            return Err(TopicsError::InvalidParameter("empty K range"));
        }
        if rows.windows(2).any(|w| w[0].k >= w[1].k) {
            return Err(TopicsError::InvalidParameter("K values must be strictly increasing"));
        }
        let mut best = &rows[0];
        for row in &rows[1..] {
            if row.cv > best.cv {
                best = row;
            }
        }
        let chosen_k = best.k;
        Ok(CoherenceReport { rows, chosen_k })
    }
}

/// Fit one model with the derived seed and score it.
pub fn score_k(bow: &BagOfWords, k: usize, config: &SweepConfig) -> Result<CoherenceRow, TopicsError> {
    let lda = LdaConfig {
        seed: seed_for_k(config.lda.seed, k),
        ..config.lda
    };
    let model = fit_lda(bow, k, &lda)?;
    let cv = coherence_cv(&model, bow, config.top_n, config.window)?;
    let umass = coherence_umass(&model, bow, config.top_n.max(2))?;
    Ok(CoherenceRow {
        k,
        cv: cv.mean,
        umass: umass.mean,
        runtime_secs: None,
    })
}

/// Sequential sweep over `ks`, which must be non-empty and ascending.
pub fn sweep_topics(bow: &BagOfWords, ks: &[usize], config: &SweepConfig) -> Result<CoherenceReport, TopicsError> {
    if ks.is_empty() || ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(TopicsError::InvalidParameter("K range must be non-empty and strictly increasing"));
    }
    let rows = ks
        .iter()
        .map(|&k| score_k(bow, k, config))
        .collect::<Result<Vec<_>, _>>()?;
    CoherenceReport::from_rows(rows)
}
