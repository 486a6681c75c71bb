use std::time::Instant;

use rayon::prelude::*;
use vaxpulse_core::topics::{score_k, BagOfWords, CoherenceReport, SweepConfig, TopicsError};

/// Topic-number sweep with one chain per K on the rayon pool.
///
/// Each K uses its own derived seed, so the curve does not depend on the
/// number of threads or on scheduling. Rows carry wall-clock fit times.
pub fn parallel_sweep(bow: &BagOfWords, ks: &[usize], config: &SweepConfig) -> Result<CoherenceReport, TopicsError> {
    if ks.is_empty() || ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(TopicsError::InvalidParameter("K range must be non-empty and strictly increasing"));
    }
    let rows = ks
        .par_iter()
        .map(|&k| {
            let start = Instant::now();
            let mut row = score_k(bow, k, config)?;
            row.runtime_secs = Some(start.elapsed().as_secs_f64());
            log::info!("k={k}: cv={:.4} umass={:.4}", row.cv, row.umass);
            Ok(row)
        })
        .collect::<Result<Vec<_>, TopicsError>>()?;
    CoherenceReport::from_rows(rows)
}
