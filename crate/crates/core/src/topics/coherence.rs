use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::bow::OUT_OF_VOCAB;
use super::{BagOfWords, TopicModel, TopicsError};
use crate::math::{ln, sqrt};

/// Added inside the logarithms of the NPMI measure.
pub const NPMI_EPSILON: f64 = 1e-12;
pub const DEFAULT_WINDOW: usize = 110;
pub const DEFAULT_TOP_N: usize = 20;

/// Per-topic coherence and its mean.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceScores {
    pub per_topic: Vec<f64>,
    pub mean: f64,
}

impl CoherenceScores {
    fn from_topics(per_topic: Vec<f64>) -> Self {
        let mean = if per_topic.is_empty() {
            0.0
        } else {
            per_topic.iter().sum::<f64>() / per_topic.len() as f64
        };
        CoherenceScores { per_topic, mean }
    }
}

fn model_top_ids(model: &TopicModel, top_n: usize) -> Vec<Vec<u32>> {
    (0..model.k).map(|k| model.top_word_ids(k, top_n)).collect()
}

/// u_mass coherence of `model` against the documents of `bow`.
pub fn coherence_umass(model: &TopicModel, bow: &BagOfWords, top_n: usize) -> Result<CoherenceScores, TopicsError> {
    if top_n < 2 {
        return Err(TopicsError::InvalidParameter("u_mass needs top_n >= 2"));
    }
    umass_for_topics(&model_top_ids(model, top_n), bow)
}

/// u_mass over explicit top-word lists: for each ordered pair `j < i`,
/// `ln((D(w_i, w_j) + 1) / D(w_j))` with document co-occurrence counts,
/// averaged over pairs and then over topics.
pub fn umass_for_topics(topics: &[Vec<u32>], bow: &BagOfWords) -> Result<CoherenceScores, TopicsError> {
    let mut wanted: HashMap<u32, Vec<u32>> = HashMap::new();
    for &w in topics.iter().flatten() {
        wanted.entry(w).or_default();
    }
    for (d, doc) in bow.docs.iter().enumerate() {
        for &(w, _) in doc {
            if let Some(postings) = wanted.get_mut(&w) {
                postings.push(d as u32);
            }
        }
    }
    let mut per_topic = Vec::with_capacity(topics.len());
    for words in topics {
        let mut total = 0.0;
        let mut pairs = 0usize;
        for i in 1..words.len() {
            for j in 0..i {
                let (a, b) = (&wanted[&words[i]], &wanted[&words[j]]);
                if b.is_empty() {
                    return Err(TopicsError::UnseenWord(bow.vocab.term(words[j]).into()));
                }
                let joint = intersection_len(a, b);
                total += ln((joint as f64 + 1.0) / b.len() as f64);
                pairs += 1;
            }
        }
        per_topic.push(if pairs == 0 { 0.0 } else { total / pairs as f64 });
    }
    Ok(CoherenceScores::from_topics(per_topic))
}

fn intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// c_v coherence of `model` with boolean sliding windows over the token
/// streams of `reference`.
pub fn coherence_cv(
    model: &TopicModel,
    reference: &BagOfWords,
    top_n: usize,
    window: usize,
) -> Result<CoherenceScores, TopicsError> {
    cv_for_topics(&model_top_ids(model, top_n), reference.streams(), window, |w| {
        reference.vocab.term(w).into()
    })
}

/// Window statistics over token streams: how many windows contain each
/// word and each unordered word pair.
struct WindowCounts {
    windows: u64,
    single: BTreeMap<u32, u64>,
    joint: BTreeMap<(u32, u32), u64>,
}

impl WindowCounts {
    fn collect(streams: &[Vec<u32>], relevant: &[u32], window: usize) -> Self {
        let mut slot: HashMap<u32, usize> = HashMap::new();
        for &w in relevant {
            let next = slot.len();
            slot.entry(w).or_insert(next);
        }
        let ids: Vec<u32> = {
            let mut ids = vec![0; slot.len()];
            for (&w, &s) in &slot {
                ids[s] = w;
            }
            ids
        };
        let m = ids.len();
        let mut single = vec![0u64; m];
        let mut joint = vec![0u64; m * m];
        let mut windows = 0u64;
        let mut inside = vec![0u32; m];
        let mut present: Vec<usize> = Vec::with_capacity(m);

        let mut tally = |inside: &[u32], present: &mut Vec<usize>| {
            present.clear();
            present.extend((0..m).filter(|&s| inside[s] > 0));
            for (x, &a) in present.iter().enumerate() {
                single[a] += 1;
                for &b in &present[x + 1..] {
                    joint[a * m + b] += 1;
                }
            }
        };

        for stream in streams {
            let mapped: Vec<Option<usize>> = stream
                .iter()
                .map(|w| if *w == OUT_OF_VOCAB { None } else { slot.get(w).copied() })
                .collect();
            inside.iter_mut().for_each(|c| *c = 0);
            let width = window.min(mapped.len());
            for s in mapped[..width].iter().flatten() {
                inside[*s] += 1;
            }
            tally(&inside, &mut present);
            windows += 1;
            for start in 1..=mapped.len() - width {
                if let Some(s) = mapped[start - 1] {
                    inside[s] -= 1;
                }
                if let Some(s) = mapped[start + width - 1] {
                    inside[s] += 1;
                }
                tally(&inside, &mut present);
                windows += 1;
            }
        }

        let mut single_map = BTreeMap::new();
        let mut joint_map = BTreeMap::new();
        for a in 0..m {
            single_map.insert(ids[a], single[a]);
            for b in a + 1..m {
                let key = if ids[a] < ids[b] { (ids[a], ids[b]) } else { (ids[b], ids[a]) };
                joint_map.insert(key, joint[a * m + b]);
            }
        }
        WindowCounts {
            windows,
            single: single_map,
            joint: joint_map,
        }
    }

    fn joint(&self, a: u32, b: u32) -> u64 {
        if a == b {
            return self.single[&a];
        }
        let key = if a < b { (a, b) } else { (b, a) };
        self.joint[&key]
    }

    fn npmi(&self, a: u32, b: u32) -> f64 {
        let n = self.windows as f64;
        let joint = self.joint(a, b) as f64 / n + NPMI_EPSILON;
        let marginal = (self.single[&a] as f64 / n) * (self.single[&b] as f64 / n);
        ln(joint / marginal) / -ln(joint)
    }
}

/// c_v over explicit top-word lists and token streams.
///
/// One-set segmentation: every top word's NPMI vector against the topic's
/// top words is compared by cosine with the sum of all such vectors.
pub fn cv_for_topics<F>(
    topics: &[Vec<u32>],
    streams: &[Vec<u32>],
    window: usize,
    term: F,
) -> Result<CoherenceScores, TopicsError>
where
    F: Fn(u32) -> alloc::string::String,
{
    if window == 0 {
        return Err(TopicsError::InvalidParameter("window must be at least 1"));
    }
    let mut relevant: Vec<u32> = topics.iter().flatten().copied().collect();
    relevant.sort_unstable();
    relevant.dedup();
    let counts = WindowCounts::collect(streams, &relevant, window);
    if let Some(&w) = relevant.iter().find(|w| counts.single[w] == 0) {
        return Err(TopicsError::UnseenWord(term(w)));
    }

    let mut per_topic = Vec::with_capacity(topics.len());
    for (t, words) in topics.iter().enumerate() {
        if words.len() < 2 {
            log::warn!("topic {t} has fewer than two top words; c_v defined as 0");
            per_topic.push(0.0);
            continue;
        }
        let vectors: Vec<Vec<f64>> = words
            .iter()
            .map(|&a| words.iter().map(|&b| counts.npmi(a, b)).collect())
            .collect();
        let mut total = vec![0.0; words.len()];
        for v in &vectors {
            for (s, x) in total.iter_mut().zip(v) {
                *s += x;
            }
        }
        let score = vectors.iter().map(|v| cosine(v, &total)).sum::<f64>() / words.len() as f64;
        per_topic.push(score);
    }
    Ok(CoherenceScores::from_topics(per_topic))
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let aa: f64 = a.iter().map(|x| x * x).sum();
    let bb: f64 = b.iter().map(|x| x * x).sum();
    if aa == 0.0 || bb == 0.0 {
        return 0.0;
    }
    dot / sqrt(aa * bb)
}

#[cfg(test)]
mod tests {
    use super::super::build_bow;
    use super::*;
    use crate::textprep::Vocabulary;
    use alloc::string::{String, ToString};

    fn bow(vocab: &[&str], docs: &[&[&str]]) -> BagOfWords {
        let terms: Vec<String> = vocab.iter().map(|t| t.to_string()).collect();
        let n = terms.len();
        let v = Vocabulary::from_terms(terms, vec![1; n]).unwrap();
        let docs: Vec<Vec<&str>> = docs.iter().map(|d| d.to_vec()).collect();
        build_bow(&docs, &v).unwrap()
    }

    #[test]
    fn umass_hand_values() {
        let b = bow(&["a", "b", "c"], &[&["a", "b"], &["a"], &["a"], &["c"]]);
        let s = umass_for_topics(&[vec![0, 2]], &b).unwrap();
        assert!((s.mean - (1.0f64 / 3.0).ln()).abs() < 1e-9);

        let b = bow(&["a", "b"], &[&["a", "b"], &["a"]]);
        let s = umass_for_topics(&[vec![0, 1]], &b).unwrap();
        assert_eq!(s.mean, 0.0);
    }

    #[test]
    fn umass_ignores_document_order() {
        let b1 = bow(&["a", "b", "c"], &[&["a", "b"], &["c", "a"], &["b"]]);
        let b2 = bow(&["a", "b", "c"], &[&["b"], &["c", "a"], &["a", "b"]]);
        let t = [vec![0, 1, 2]];
        assert_eq!(umass_for_topics(&t, &b1).unwrap(), umass_for_topics(&t, &b2).unwrap());
    }

    fn cv(topics: &[Vec<u32>], b: &BagOfWords, window: usize) -> f64 {
        cv_for_topics(topics, b.streams(), window, |w| b.vocab.term(w).into())
            .unwrap()
            .mean
    }

    #[test]
    fn cv_always_together_is_one() {
        let b = bow(&["a", "b"], &[&["a", "b", "a", "b"]]);
        assert_eq!(cv(&[vec![0, 1]], &b, 2), 1.0);
        let b = bow(&["a", "b", "c"], &[&["a", "b", "c"], &["c", "b", "a"]]);
        assert_eq!(cv(&[vec![0, 1, 2]], &b, 110), 1.0);
    }

    #[test]
    fn cv_single_word_topic_is_zero() {
        let b = bow(&["a", "b"], &[&["a", "b"]]);
        assert_eq!(cv(&[vec![0]], &b, 2), 0.0);
    }

    #[test]
    fn cv_short_stream_hand_value() {
        // windows {a,b} {b,c} {c}: P(a)=1/3, P(b)=2/3, P(a,b)=1/3
        let b = bow(&["a", "b", "c"], &[&["a", "b", "c", "c"]]);
        let npmi_ab = (1.5f64).ln() / 3f64.ln();
        let norm = (1.0 + npmi_ab * npmi_ab).sqrt();
        let want = (1.0 + npmi_ab) / (norm * 2f64.sqrt());
        assert!((cv(&[vec![0, 1]], &b, 2) - want).abs() < 1e-9);
    }

    #[test]
    fn cv_rejects_words_absent_from_reference() {
        let b = bow(&["a", "b", "z"], &[&["a", "b"]]);
        let err = cv_for_topics(&[vec![0, 2]], b.streams(), 2, |w| b.vocab.term(w).into()).unwrap_err();
        assert_eq!(err, TopicsError::UnseenWord("z".into()));
    }
}
