//! Engagement weighting of compound scores and per-month aggregation.
//!
//! The weight of a tweet is `(retweets + likes) * (followers + listed)`.
//! Labels always come from the unweighted compound; weighting only changes
//! counts and means.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use chrono::{DateTime, Utc};

use crate::corpus::{MonthKey, TweetRecord};
use crate::math::{mul_exact_u128, CompensatedSum};
use crate::valence::{SentimentLabel, SentimentScores};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InfluenceError {
    #[error("engagement weight overflows 128 bits")]
    WeightOverflow,
    #[error("sum of weights for {0} overflows 128 bits")]
    SumOverflow(String),
}

/// Influence multiplier of one tweet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EngagementWeight {
    /// Retweets plus likes.
    pub content_factor: u128,
    /// Followers plus listed count.
    pub reach_factor: u128,
    pub weight: u128,
}

impl EngagementWeight {
    pub fn from_counts(
        retweets: u64,
        likes: u64,
        followers: u64,
        listed: u64,
    ) -> Result<Self, InfluenceError> {
        Self::from_factors(
            u128::from(retweets) + u128::from(likes),
            u128::from(followers) + u128::from(listed),
        )
    }

    /// Additively smoothed variant: `(rt + likes + 1) * (followers + listed + 1)`.
    pub fn smoothed(
        retweets: u64,
        likes: u64,
        followers: u64,
        listed: u64,
    ) -> Result<Self, InfluenceError> {
        Self::from_factors(
            u128::from(retweets) + u128::from(likes) + 1,
            u128::from(followers) + u128::from(listed) + 1,
        )
    }

    pub fn of_record(record: &TweetRecord, smoothing: bool) -> Result<Self, InfluenceError> {
        let build = if smoothing { Self::smoothed } else { Self::from_counts };
        build(
            record.retweet_count,
            record.like_count,
            record.follower_count,
            record.listed_count,
        )
    }

    fn from_factors(content_factor: u128, reach_factor: u128) -> Result<Self, InfluenceError> {
        let weight = content_factor
            .checked_mul(reach_factor)
            .ok_or(InfluenceError::WeightOverflow)?;
        Ok(EngagementWeight {
            content_factor,
            reach_factor,
            weight,
        })
    }
}

/// `compound * weight`, rounded once from the exact product.
pub fn weighted_compound(compound: f64, w: &EngagementWeight) -> f64 {
    mul_exact_u128(compound, w.weight)
}

/// A tweet ready for aggregation.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredTweet {
    pub tweet_id: String,
    pub created_at: DateTime<Utc>,
    pub scores: SentimentScores,
    pub label: SentimentLabel,
    pub weight: EngagementWeight,
}

impl ScoredTweet {
    /// Label is taken from the unweighted compound.
    pub fn new(record: &TweetRecord, scores: SentimentScores, weight: EngagementWeight) -> Self {
        ScoredTweet {
            tweet_id: record.tweet_id.clone(),
            created_at: record.created_at,
            scores,
            label: scores.label(),
            weight,
        }
    }

    pub fn weighted_compound(&self) -> f64 {
        weighted_compound(self.scores.compound, &self.weight)
    }
}

/// One value per sentiment label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LabelCounts<T> {
    pub positive: T,
    pub neutral: T,
    pub negative: T,
}

impl<T: Copy> LabelCounts<T> {
    pub fn get(&self, label: SentimentLabel) -> T {
        match label {
            SentimentLabel::Positive => self.positive,
            SentimentLabel::Neutral => self.neutral,
            SentimentLabel::Negative => self.negative,
        }
    }

    pub fn get_mut(&mut self, label: SentimentLabel) -> &mut T {
        match label {
            SentimentLabel::Positive => &mut self.positive,
            SentimentLabel::Neutral => &mut self.neutral,
            SentimentLabel::Negative => &mut self.negative,
        }
    }

    pub fn map<U>(&self, f: impl Fn(T) -> U) -> LabelCounts<U> {
        LabelCounts {
            positive: f(self.positive),
            neutral: f(self.neutral),
            negative: f(self.negative),
        }
    }
}

impl LabelCounts<u64> {
    pub fn total(&self) -> u64 {
        self.positive + self.neutral + self.negative
    }
}

impl LabelCounts<u128> {
    pub fn total(&self) -> u128 {
        self.positive + self.neutral + self.negative
    }
}

/// Unweighted and weighted statistics of one month.
#[derive(Debug, Clone, PartialEq)]
pub struct MonthlyAggregate {
    pub month: String,
    pub count_by_label: LabelCounts<u64>,
    pub ratio_by_label: LabelCounts<f64>,
    pub mean_compound: f64,
    /// Sum of engagement weights per label.
    pub weighted_count_by_label: LabelCounts<u128>,
    pub weighted_mean_compound: f64,
}

impl MonthlyAggregate {
    pub fn n_tweets(&self) -> u64 {
        self.count_by_label.total()
    }

    pub fn total_weight(&self) -> u128 {
        self.weighted_count_by_label.total()
    }

    /// Share of total weight per label; all zero when the month has no weight.
    pub fn weighted_ratio_by_label(&self) -> LabelCounts<f64> {
        let total = self.total_weight();
        if total == 0 {
            return LabelCounts::default();
        }
        self.weighted_count_by_label.map(|w| ratio_u128(w, total))
    }
}

fn ratio_u128(part: u128, total: u128) -> f64 {
    part as f64 / total as f64
}

/// Commutative running totals for one month; partial accumulators over
/// disjoint tweet sets can be merged.
#[derive(Debug, Clone, Default)]
pub struct MonthAccumulator {
    counts: LabelCounts<u64>,
    weights: LabelCounts<u128>,
    compound_sum: CompensatedSum,
    weighted_sum: CompensatedSum,
    weighted_range: Option<(f64, f64)>,
    overflow: bool,
}

impl MonthAccumulator {
    pub fn add(&mut self, compound: f64, label: SentimentLabel, weight: &EngagementWeight) {
        *self.counts.get_mut(label) += 1;
        let slot = self.weights.get_mut(label);
        match slot.checked_add(weight.weight) {
            Some(v) => *slot = v,
            None => self.overflow = true,
        }
        self.compound_sum.add(compound);
        if weight.weight > 0 {
            self.weighted_sum.add(weighted_compound(compound, weight));
            self.widen(compound, compound);
        }
    }

    pub fn merge(&mut self, other: &MonthAccumulator) {
        for label in SentimentLabel::ALL {
            *self.counts.get_mut(label) += other.counts.get(label);
            let slot = self.weights.get_mut(label);
            match slot.checked_add(other.weights.get(label)) {
                Some(v) => *slot = v,
                None => self.overflow = true,
            }
        }
        self.compound_sum.merge(&other.compound_sum);
        self.weighted_sum.merge(&other.weighted_sum);
        if let Some((lo, hi)) = other.weighted_range {
            self.widen(lo, hi);
        }
        self.overflow |= other.overflow;
    }

    fn widen(&mut self, lo: f64, hi: f64) {
        self.weighted_range = Some(match self.weighted_range {
            None => (lo, hi),
            Some((a, b)) => (a.min(lo), b.max(hi)),
        });
    }

    pub fn finish(&self, month: &str) -> Result<MonthlyAggregate, InfluenceError> {
        let n = self.counts.total();
        let total_weight = self
            .weights
            .positive
            .checked_add(self.weights.neutral)
            .and_then(|s| s.checked_add(self.weights.negative));
        let total_weight = match total_weight {
            Some(w) if !self.overflow => w,
            _ => return Err(InfluenceError::SumOverflow(month.to_string())),
        };
        let ratio_by_label = if n == 0 {
            LabelCounts::default()
        } else {
            self.counts.map(|c| c as f64 / n as f64)
        };
        let mean_compound = if n == 0 {
            0.0
        } else {
            self.compound_sum.value() / n as f64
        };
        let weighted_mean_compound = match self.weighted_range {
            Some((lo, hi)) if total_weight > 0 => {
                (self.weighted_sum.value() / total_weight as f64).clamp(lo, hi)
            }
            _ => 0.0,
        };
        Ok(MonthlyAggregate {
            month: month.to_string(),
            count_by_label: self.counts,
            ratio_by_label,
            mean_compound,
            weighted_count_by_label: self.weights,
            weighted_mean_compound,
        })
    }
}

/// Aggregate one month's tweets.
pub fn aggregate_month(month: &str, tweets: &[ScoredTweet]) -> Result<MonthlyAggregate, InfluenceError> {
    let mut acc = MonthAccumulator::default();
    for t in tweets {
        acc.add(t.scores.compound, t.label, &t.weight);
    }
    acc.finish(month)
}

/// Group by UTC calendar month and aggregate each, in chronological order.
pub fn aggregate_by_month(tweets: &[ScoredTweet]) -> Result<Vec<MonthlyAggregate>, InfluenceError> {
    let mut months: BTreeMap<MonthKey, MonthAccumulator> = BTreeMap::new();
    for t in tweets {
        months
            .entry(MonthKey::of(&t.created_at))
            .or_default()
            .add(t.scores.compound, t.label, &t.weight);
    }
    months
        .iter()
        .map(|(key, acc)| acc.finish(&key.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_timestamp;
    use alloc::vec;

    fn tweet(compound: f64, weight: u128) -> ScoredTweet {
        let scores = SentimentScores {
            compound,
            ..SentimentScores::neutral()
        };
        ScoredTweet {
            tweet_id: "t".into(),
            created_at: parse_timestamp("2021-03-01").unwrap(),
            scores,
            label: scores.label(),
            weight: EngagementWeight {
                content_factor: weight,
                reach_factor: 1,
                weight,
            },
        }
    }

    #[test]
    fn weighted_compound_examples() {
        let w = EngagementWeight::from_counts(2, 3, 100, 0).unwrap();
        assert_eq!((w.content_factor, w.reach_factor, w.weight), (5, 100, 500));
        assert_eq!(weighted_compound(0.5, &w), 250.0);
        let zero = EngagementWeight::from_counts(0, 0, 0, 0).unwrap();
        assert_eq!(weighted_compound(-0.4, &zero), 0.0);
        assert_eq!(weighted_compound(0.0, &w), 0.0);
        let s = EngagementWeight::smoothed(0, 0, 0, 0).unwrap();
        assert_eq!(s.weight, 1);
    }

    #[test]
    fn extreme_counts_do_not_overflow() {
        let w = EngagementWeight::from_counts(u64::MAX, u64::MAX, 1, 0).unwrap();
        assert_eq!(w.content_factor, 2 * u128::from(u64::MAX));
        assert!(EngagementWeight::from_counts(u64::MAX, u64::MAX, u64::MAX, u64::MAX).is_err());
    }

    #[test]
    fn month_with_equal_weights() {
        let agg = aggregate_month("2021-03", &[tweet(0.5, 1), tweet(0.5, 1), tweet(-0.5, 1)]).unwrap();
        assert_eq!(agg.count_by_label, LabelCounts { positive: 2, neutral: 0, negative: 1 });
        assert!((agg.ratio_by_label.positive - 2.0 / 3.0).abs() < 1e-15);
        assert!((agg.ratio_by_label.negative - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(agg.ratio_by_label.neutral, 0.0);
        assert!((agg.mean_compound - 1.0 / 6.0).abs() < 1e-15);
        assert!((agg.weighted_mean_compound - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn zero_weight_month() {
        let agg = aggregate_month("2021-03", &[tweet(0.7, 0)]).unwrap();
        assert_eq!(agg.weighted_mean_compound, 0.0);
        assert_eq!(agg.mean_compound, 0.7);
        assert_eq!(agg.weighted_ratio_by_label(), LabelCounts::default());
    }

    #[test]
    fn weighting_flips_the_sign() {
        let agg = aggregate_month("2021-03", &[tweet(1.0, 1), tweet(-1.0, 9)]).unwrap();
        assert_eq!(agg.mean_compound, 0.0);
        assert_eq!(agg.weighted_mean_compound, -0.8);
        assert_eq!(agg.weighted_count_by_label.negative, 9);
    }

    #[test]
    fn months_are_independent() {
        let mut a = tweet(0.9, 3);
        a.created_at = parse_timestamp("2021-01-31T23:59:59Z").unwrap();
        let b = tweet(-0.9, 5);
        let joint = aggregate_by_month(&[b.clone(), a.clone()]).unwrap();
        assert_eq!(joint.len(), 2);
        assert_eq!(joint[0], aggregate_month("2021-01", &[a]).unwrap());
        assert_eq!(joint[1], aggregate_month("2021-03", &[b]).unwrap());
    }

    #[test]
    fn merged_partials_match_single_pass() {
        let tweets = vec![tweet(0.3, 2), tweet(-0.6, 7), tweet(0.0, 1), tweet(0.8, 0)];
        let mut left = MonthAccumulator::default();
        let mut right = MonthAccumulator::default();
        for (i, t) in tweets.iter().enumerate() {
            let acc = if i % 2 == 0 { &mut left } else { &mut right };
            acc.add(t.scores.compound, t.label, &t.weight);
        }
        left.merge(&right);
        let merged = left.finish("2021-03").unwrap();
        let single = aggregate_month("2021-03", &tweets).unwrap();
        assert_eq!(merged.count_by_label, single.count_by_label);
        assert_eq!(merged.weighted_count_by_label, single.weighted_count_by_label);
        assert!((merged.weighted_mean_compound - single.weighted_mean_compound).abs() < 1e-15);
    }
}
