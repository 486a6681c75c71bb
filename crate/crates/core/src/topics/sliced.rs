use alloc::vec::Vec;

use super::lda::{GibbsSampler, LdaConfig, TopicModel};
use super::{BagOfWords, TopicsError};
use crate::math::mix_seed;

/// Default weight of the previous slice's topics in the chained prior.
pub const DEFAULT_CHAIN_STRENGTH: f64 = 1.0;

/// Fit one model per time slice, each slice after the first using the
/// previous slice's topics as a prior:
/// `beta_kw = beta + strength * phi_prev[k][w] * V * beta`.
///
/// Later slices also start from assignments drawn from `phi_prev`, so
/// topic `k` refers to the same theme throughout.
pub fn fit_sliced(
    slices: &[BagOfWords],
    k: usize,
    config: &LdaConfig,
    strength: f64,
) -> Result<Vec<TopicModel>, TopicsError> {
    if slices.len() < 2 {
        return Err(TopicsError::TooFewSlices(slices.len()));
    }
    if let Some(t) = slices.iter().position(|s| s.vocab != slices[0].vocab) {
        return Err(TopicsError::VocabularyMismatch { slice: t });
    }
    let mut models: Vec<TopicModel> = Vec::with_capacity(slices.len());
    for (t, bow) in slices.iter().enumerate() {
        let mut sampler = match models.last() {
            None => GibbsSampler::new(bow, k, config)?,
            Some(prev) => {
                let cfg = LdaConfig {
                    seed: mix_seed(config.seed ^ t as u64),
                    ..*config
                };
                GibbsSampler::chained(bow, k, &cfg, &prev.phi, strength)?
            }
        };
        sampler.run(|_| {});
        models.push(sampler.into_model()?);
    }
    Ok(models)
}

/// Rank of `term` in every topic of every slice: `out[slice][topic]`.
pub fn term_trajectory(models: &[TopicModel], term: &str) -> Option<Vec<Vec<usize>>> {
    models
        .iter()
        .map(|m| (0..m.k).map(|k| m.term_rank(k, term)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{build_bow, fit_lda};
    use super::*;
    use crate::textprep::Vocabulary;
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn slice(vocab: &Vocabulary, docs: &[&[&str]]) -> BagOfWords {
        let docs: Vec<Vec<&str>> = docs.iter().map(|d| d.to_vec()).collect();
        build_bow(&docs, vocab).unwrap()
    }

    fn vocab(terms: &[&str]) -> Vocabulary {
        let terms: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        let n = terms.len();
        Vocabulary::from_terms(terms, vec![1; n]).unwrap()
    }

    fn cfg() -> LdaConfig {
        LdaConfig {
            iterations: 80,
            burn_in: 20,
            seed: 11,
            ..LdaConfig::default()
        }
    }

    #[test]
    fn first_slice_is_a_plain_fit() {
        let v = vocab(&["a", "b", "c"]);
        let s = [slice(&v, &[&["a", "b"], &["c"]]), slice(&v, &[&["a", "c"]])];
        let models = fit_sliced(&s, 2, &cfg(), 1.0).unwrap();
        assert_eq!(models[0], fit_lda(&s[0], 2, &cfg()).unwrap());
    }

    #[test]
    fn single_topic_chain_stays_close_to_independent_fits() {
        let v = vocab(&["a", "b", "c"]);
        let s = [
            slice(&v, &[&["a", "a", "b"], &["c", "a"]]),
            slice(&v, &[&["b", "b", "c"], &["a", "b"]]),
        ];
        let chained = fit_sliced(&s, 1, &cfg(), 1.0).unwrap();
        let alone = fit_lda(&s[1], 1, &cfg()).unwrap();
        let vb = 3.0 * 0.01;
        for (p, q) in chained[1].phi[0].iter().zip(&alone.phi[0]) {
            assert!((p - q).abs() <= vb / 5.0 + 1e-12, "{p} vs {q}");
        }
    }

    #[test]
    fn slices_must_share_vocabulary() {
        let s = [
            slice(&vocab(&["a", "b"]), &[&["a"]]),
            slice(&vocab(&["a", "c"]), &[&["a"]]),
        ];
        assert_eq!(fit_sliced(&s, 1, &cfg(), 1.0), Err(TopicsError::VocabularyMismatch { slice: 1 }));
        assert_eq!(fit_sliced(&s[..1], 1, &cfg(), 1.0), Err(TopicsError::TooFewSlices(1)));
    }
}
