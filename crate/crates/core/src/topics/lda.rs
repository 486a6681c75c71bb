use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use super::{BagOfWords, TopicsError};
use crate::math::{mix_seed, unit_f64};
use crate::textprep::Vocabulary;

/// Sampler settings. `alpha: None` means `50 / K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LdaConfig {
    pub alpha: Option<f64>,
    pub beta: f64,
    pub iterations: usize,
    pub burn_in: usize,
    pub seed: u64,
}

impl Default for LdaConfig {
    fn default() -> Self {
        LdaConfig {
            alpha: None,
            beta: 0.01,
            iterations: 1000,
            burn_in: 200,
            seed: 0,
        }
    }
}

impl LdaConfig {
    pub fn alpha_for(&self, k: usize) -> f64 {
        self.alpha.unwrap_or(50.0 / k as f64)
    }
}

/// A fitted LDA model.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicModel {
    pub k: usize,
    pub vocab: Vocabulary,
    /// `K x V` topic-word probabilities.
    pub phi: Vec<Vec<f64>>,
    /// `D x K` document-topic probabilities.
    pub theta: Vec<Vec<f64>>,
    pub alpha: f64,
    pub beta: f64,
    pub seed: u64,
    /// Final topic of every token, per document, in token order.
    pub assignments: Vec<Vec<u32>>,
    /// Posterior mean share of all tokens assigned to each topic.
    pub token_share: Vec<f64>,
}

impl TopicModel {
    /// Top `n` term ids of topic `k` by descending probability, ties
    /// broken by term text.
    pub fn top_word_ids(&self, k: usize, n: usize) -> Vec<u32> {
        let row = &self.phi[k];
        let mut ids: Vec<u32> = (0..row.len() as u32).collect();
        ids.sort_by(|&a, &b| {
            row[b as usize]
                .total_cmp(&row[a as usize])
                .then_with(|| self.vocab.term(a).cmp(self.vocab.term(b)))
        });
        ids.truncate(n);
        ids
    }

    pub fn top_words(&self, k: usize, n: usize) -> Vec<&str> {
        self.top_word_ids(k, n)
            .into_iter()
            .map(|id| self.vocab.term(id))
            .collect()
    }

    /// Rank (0-based) of `term` within topic `k`.
    pub fn term_rank(&self, k: usize, term: &str) -> Option<usize> {
        let id = self.vocab.id(term)?;
        let p = self.phi[k][id as usize];
        Some(
            self.phi[k]
                .iter()
                .enumerate()
                .filter(|&(j, &q)| q > p || (q == p && self.vocab.term(j as u32) < term))
                .count(),
        )
    }
}

/// `top_words` as a free function.
pub fn top_words(model: &TopicModel, k: usize, n: usize) -> Vec<&str> {
    model.top_words(k, n)
}

#[derive(Debug, Clone)]
enum Prior {
    Symmetric { beta: f64, beta_sum: f64 },
    /// Per word-topic pseudo-counts, `V x K`, with per-topic sums.
    Chained { beta_wk: Vec<f64>, beta_sum: Vec<f64> },
}

impl Prior {
    #[inline]
    fn word(&self, w: usize, k: usize, n_topics: usize) -> f64 {
        match self {
            Prior::Symmetric { beta, .. } => *beta,
            Prior::Chained { beta_wk, .. } => beta_wk[w * n_topics + k],
        }
    }

    #[inline]
    fn sum(&self, k: usize) -> f64 {
        match self {
            Prior::Symmetric { beta_sum, .. } => *beta_sum,
            Prior::Chained { beta_sum, .. } => beta_sum[k],
        }
    }
}

/// Collapsed Gibbs sampler state.
#[derive(Debug, Clone)]
pub struct GibbsSampler<'a> {
    bow: &'a BagOfWords,
    k: usize,
    alpha: f64,
    beta: f64,
    prior: Prior,
    config: LdaConfig,
    words: Vec<u32>,
    doc_start: Vec<usize>,
    z: Vec<u32>,
    n_dk: Vec<u32>,
    n_wk: Vec<u32>,
    n_k: Vec<u32>,
    inv_denom: Vec<f64>,
    acc_dk: Vec<u64>,
    acc_wk: Vec<u64>,
    acc_k: Vec<u64>,
    samples: u64,
    sweeps: usize,
    rng: ChaCha8Rng,
    cumulative: Vec<f64>,
}

impl<'a> GibbsSampler<'a> {
    /// Validate parameters and draw initial assignments uniformly.
    pub fn new(bow: &'a BagOfWords, k: usize, config: &LdaConfig) -> Result<Self, TopicsError> {
        Self::build(bow, k, config, None)
    }

    pub(crate) fn chained(
        bow: &'a BagOfWords,
        k: usize,
        config: &LdaConfig,
        previous_phi: &[Vec<f64>],
        strength: f64,
    ) -> Result<Self, TopicsError> {
        if !(strength >= 0.0 && strength.is_finite()) {
            return Err(TopicsError::InvalidParameter("prior strength must be finite and >= 0"));
        }
        if previous_phi.len() != k || previous_phi.iter().any(|r| r.len() != bow.vocab.len()) {
            return Err(TopicsError::InvalidParameter("previous phi does not match K x V"));
        }
        Self::build(bow, k, config, Some((previous_phi, strength)))
    }

    fn build(
        bow: &'a BagOfWords,
        k: usize,
        config: &LdaConfig,
        chain: Option<(&[Vec<f64>], f64)>,
    ) -> Result<Self, TopicsError> {
        let alpha = config.alpha_for(k);
        let beta = config.beta;
        if k == 0 {
            return Err(TopicsError::InvalidParameter("K must be at least 1"));
        }
        if !(alpha > 0.0 && alpha.is_finite()) || !(beta > 0.0 && beta.is_finite()) {
            return Err(TopicsError::InvalidParameter("alpha and beta must be positive and finite"));
        }
        if config.iterations <= config.burn_in {
            return Err(TopicsError::InvalidParameter("iterations must exceed burn_in"));
        }
        let total = bow.total_tokens();
        if k as u64 > total {
            return Err(TopicsError::TooManyTopics { k, tokens: total });
        }
        let v = bow.vocab.len();
        let d = bow.n_docs();

        let mut words = Vec::with_capacity(total as usize);
        let mut doc_start = Vec::with_capacity(d + 1);
        for doc in 0..d {
            doc_start.push(words.len());
            words.extend(bow.tokens(doc));
        }
        doc_start.push(words.len());

        let prior = match chain {
            None => Prior::Symmetric {
                beta,
                beta_sum: beta * v as f64,
            },
            Some((phi, strength)) => {
                let scale = strength * v as f64 * beta;
                let mut beta_wk = vec![0.0; v * k];
                let mut beta_sum = vec![0.0; k];
                for (t, row) in phi.iter().enumerate() {
                    for (w, &p) in row.iter().enumerate() {
                        let b = beta + scale * p;
                        beta_wk[w * k + t] = b;
                        beta_sum[t] += b;
                    }
                }
                Prior::Chained { beta_wk, beta_sum }
            }
        };

        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut cumulative = vec![0.0; k];
        let z: Vec<u32> = words
            .iter()
            .map(|&w| match chain {
                None => ((unit_f64(&mut rng) * k as f64) as usize).min(k - 1) as u32,
                Some((phi, _)) => {
                    let mut acc = 0.0;
                    for (t, c) in cumulative.iter_mut().enumerate() {
                        acc += phi[t][w as usize];
                        *c = acc;
                    }
                    draw(&cumulative, unit_f64(&mut rng) * acc) as u32
                }
            })
            .collect();

        let mut sampler = GibbsSampler {
            bow,
            k,
            alpha,
            beta,
            prior,
            config: *config,
            words,
            doc_start,
            z,
            n_dk: vec![0; d * k],
            n_wk: vec![0; v * k],
            n_k: vec![0; k],
            inv_denom: vec![0.0; k],
            acc_dk: vec![0; d * k],
            acc_wk: vec![0; v * k],
            acc_k: vec![0; k],
            samples: 0,
            sweeps: 0,
            rng,
            cumulative,
        };
        sampler.rebuild_counts();
        Ok(sampler)
    }

    fn rebuild_counts(&mut self) {
        let k = self.k;
        for doc in 0..self.bow.n_docs() {
            for i in self.doc_start[doc]..self.doc_start[doc + 1] {
                let (w, t) = (self.words[i] as usize, self.z[i] as usize);
                self.n_dk[doc * k + t] += 1;
                self.n_wk[w * k + t] += 1;
                self.n_k[t] += 1;
            }
        }
        for t in 0..k {
            self.refresh_denom(t);
        }
    }

    #[inline]
    fn refresh_denom(&mut self, t: usize) {
        self.inv_denom[t] = 1.0 / (f64::from(self.n_k[t]) + self.prior.sum(t));
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sweeps_done(&self) -> usize {
        self.sweeps
    }

    pub fn is_finished(&self) -> bool {
        self.sweeps >= self.config.iterations
    }

    /// Resample every token once, then fold counts into the posterior
    /// accumulators if past burn-in.
    pub fn sweep(&mut self) {
        let k = self.k;
        let alpha = self.alpha;
        for doc in 0..self.bow.n_docs() {
            for i in self.doc_start[doc]..self.doc_start[doc + 1] {
                let w = self.words[i] as usize;
                let old = self.z[i] as usize;
                self.n_dk[doc * k + old] -= 1;
                self.n_wk[w * k + old] -= 1;
                self.n_k[old] -= 1;
                self.refresh_denom(old);

                let nd = &self.n_dk[doc * k..doc * k + k];
                let nw = &self.n_wk[w * k..w * k + k];
                let mut acc = 0.0;
                for t in 0..k {
                    let word = f64::from(nw[t]) + self.prior.word(w, t, k);
                    acc += (f64::from(nd[t]) + alpha) * word * self.inv_denom[t];
                    self.cumulative[t] = acc;
                }
                let new = draw(&self.cumulative, unit_f64(&mut self.rng) * acc);

                self.z[i] = new as u32;
                self.n_dk[doc * k + new] += 1;
                self.n_wk[w * k + new] += 1;
                self.n_k[new] += 1;
                self.refresh_denom(new);
            }
        }
        self.sweeps += 1;
        if self.sweeps > self.config.burn_in {
            for (a, &n) in self.acc_dk.iter_mut().zip(&self.n_dk) {
                *a += u64::from(n);
            }
            for (a, &n) in self.acc_wk.iter_mut().zip(&self.n_wk) {
                *a += u64::from(n);
            }
            for (a, &n) in self.acc_k.iter_mut().zip(&self.n_k) {
                *a += u64::from(n);
            }
            self.samples += 1;
        }
    }

    /// Recount from the assignments and compare with the live count tables.
    pub fn check_conservation(&self) -> Result<(), TopicsError> {
        let k = self.k;
        let mut n_dk = vec![0u32; self.n_dk.len()];
        let mut n_wk = vec![0u32; self.n_wk.len()];
        let mut n_k = vec![0u32; k];
        for doc in 0..self.bow.n_docs() {
            for i in self.doc_start[doc]..self.doc_start[doc + 1] {
                let (w, t) = (self.words[i] as usize, self.z[i] as usize);
                n_dk[doc * k + t] += 1;
                n_wk[w * k + t] += 1;
                n_k[t] += 1;
            }
            let len = (self.doc_start[doc + 1] - self.doc_start[doc]) as u64;
            let row: u64 = self.n_dk[doc * k..doc * k + k].iter().map(|&n| u64::from(n)).sum();
            if row != len {
                return Err(TopicsError::Conservation(format!(
                    "document {doc}: topic counts sum to {row}, length {len}"
                )));
            }
        }
        if n_dk != self.n_dk || n_wk != self.n_wk || n_k != self.n_k {
            return Err(TopicsError::Conservation(format!(
                "count tables diverge from assignments after sweep {}",
                self.sweeps
            )));
        }
        for t in 0..k {
            let col: u64 = (0..self.bow.vocab.len()).map(|w| u64::from(self.n_wk[w * k + t])).sum();
            if col != u64::from(self.n_k[t]) {
                return Err(TopicsError::Conservation(format!("topic {t}: word counts sum to {col}")));
            }
        }
        let total: u64 = self.n_k.iter().map(|&n| u64::from(n)).sum();
        if total != self.words.len() as u64 {
            return Err(TopicsError::Conservation(format!("{total} assigned of {}", self.words.len())));
        }
        Ok(())
    }

    /// Run the remaining sweeps, calling `observe` after each one.
    pub fn run<F: FnMut(&GibbsSampler<'a>)>(&mut self, mut observe: F) {
        while !self.is_finished() {
            self.sweep();
            observe(self);
        }
    }

    /// Posterior-mean estimates from the accumulated post-burn-in counts.
    pub fn into_model(self) -> Result<TopicModel, TopicsError> {
        if self.samples == 0 {
            return Err(TopicsError::InvalidParameter("no post-burn-in sweeps were run"));
        }
        let k = self.k;
        let v = self.bow.vocab.len();
        let s = self.samples as f64;
        let phi = (0..k)
            .map(|t| {
                let denom = self.acc_k[t] as f64 / s + self.prior.sum(t);
                (0..v)
                    .map(|w| (self.acc_wk[w * k + t] as f64 / s + self.prior.word(w, t, k)) / denom)
                    .collect()
            })
            .collect();
        let k_alpha = k as f64 * self.alpha;
        let theta = (0..self.bow.n_docs())
            .map(|doc| {
                let len = (self.doc_start[doc + 1] - self.doc_start[doc]) as f64;
                (0..k)
                    .map(|t| (self.acc_dk[doc * k + t] as f64 / s + self.alpha) / (len + k_alpha))
                    .collect()
            })
            .collect();
        let total = self.words.len() as f64;
        let token_share = self.acc_k.iter().map(|&n| n as f64 / s / total).collect();
        let assignments = (0..self.bow.n_docs())
            .map(|doc| self.z[self.doc_start[doc]..self.doc_start[doc + 1]].to_vec())
            .collect();
        Ok(TopicModel {
            k,
            vocab: self.bow.vocab.clone(),
            phi,
            theta,
            alpha: self.alpha,
            beta: self.beta,
            seed: self.config.seed,
            assignments,
            token_share,
        })
    }
}

/// Index of the first cumulative weight above `u`.
#[inline]
fn draw(cumulative: &[f64], u: f64) -> usize {
    cumulative
        .iter()
        .position(|&c| u < c)
        .unwrap_or(cumulative.len() - 1)
}

/// Fit LDA by collapsed Gibbs sampling.
pub fn fit_lda(bow: &BagOfWords, k: usize, config: &LdaConfig) -> Result<TopicModel, TopicsError> {
    let mut sampler = GibbsSampler::new(bow, k, config)?;
    sampler.run(|_| {});
    sampler.into_model()
}

/// Fold-in settings for [`doc_topics`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldInConfig {
    pub iterations: usize,
    pub burn_in: usize,
    pub seed: u64,
}

impl Default for FoldInConfig {
    fn default() -> Self {
        FoldInConfig {
            iterations: 200,
            burn_in: 50,
            seed: 0,
        }
    }
}

/// Topic mixture of an unseen document by Gibbs fold-in with `phi` held
/// fixed. An empty document gets the uniform mixture.
pub fn doc_topics(model: &TopicModel, doc: &[(u32, u32)], config: &FoldInConfig) -> Result<Vec<f64>, TopicsError> {
    let k = model.k;
    if config.iterations <= config.burn_in {
        return Err(TopicsError::InvalidParameter("iterations must exceed burn_in"));
    }
    if let Some(&(w, _)) = doc.iter().find(|&&(w, _)| w as usize >= model.vocab.len()) {
        return Err(TopicsError::TermOutOfRange(w));
    }
    let words: Vec<usize> = doc
        .iter()
        .flat_map(|&(w, c)| core::iter::repeat(w as usize).take(c as usize))
        .collect();
    if words.is_empty() {
        log::warn!("fold-in of an empty document; returning the uniform mixture");
        return Ok(vec![1.0 / k as f64; k]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(config.seed ^ model.seed));
    let mut z: Vec<usize> = words
        .iter()
        .map(|_| ((unit_f64(&mut rng) * k as f64) as usize).min(k - 1))
        .collect();
    let mut n_k = vec![0u32; k];
    for &t in &z {
        n_k[t] += 1;
    }
    let mut acc = vec![0u64; k];
    let mut cumulative = vec![0.0; k];
    for sweep in 1..=config.iterations {
        for (i, &w) in words.iter().enumerate() {
            n_k[z[i]] -= 1;
            let mut total = 0.0;
            for t in 0..k {
                total += (f64::from(n_k[t]) + model.alpha) * model.phi[t][w];
                cumulative[t] = total;
            }
            z[i] = draw(&cumulative, unit_f64(&mut rng) * total);
            n_k[z[i]] += 1;
        }
        if sweep > config.burn_in {
            for (a, &n) in acc.iter_mut().zip(&n_k) {
                *a += u64::from(n);
            }
        }
    }
    let s = (config.iterations - config.burn_in) as f64;
    let denom = words.len() as f64 + k as f64 * model.alpha;
    Ok(acc.iter().map(|&n| (n as f64 / s + model.alpha) / denom).collect())
}
