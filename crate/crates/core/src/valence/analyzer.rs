use alloc::string::String;
use alloc::vec::Vec;

use super::{Lexicon, SentimentScores};
use crate::math;

/// Tunable constants of the scoring heuristics. Defaults are the
/// empirically derived values published with the VADER lexicon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Heuristics {
    /// Added to a word's valence when it is ALL CAPS in mixed-case text.
    pub caps_increment: f64,
    /// Multiplier applied when a negator precedes a word.
    pub negation_scalar: f64,
    /// Booster decay for modifiers two and three tokens back.
    pub distance_decay: [f64; 3],
    /// "never so/this good" amplification.
    pub never_so_scalar: f64,
    /// Weight for valences before a contrastive "but".
    pub but_before: f64,
    /// Weight for valences after a contrastive "but".
    pub but_after: f64,
    pub exclamation_increment: f64,
    pub exclamation_cap: usize,
    pub question_increment: f64,
    /// Flat amplifier used once more than three question marks appear.
    pub question_cap_amplifier: f64,
    /// Normalization constant in `s / sqrt(s^2 + alpha)`.
    pub alpha: f64,
}

impl Default for Heuristics {
    fn default() -> Self {
        Heuristics {
            caps_increment: 0.733,
            negation_scalar: -0.74,
            distance_decay: [1.0, 0.95, 0.9],
            never_so_scalar: 1.25,
            but_before: 0.5,
            but_after: 1.5,
            exclamation_increment: 0.292,
            exclamation_cap: 4,
            question_increment: 0.18,
            question_cap_amplifier: 0.96,
            alpha: 15.0,
        }
    }
}

/// Map a summed valence into `(-1, 1)`.
pub fn normalize(score: f64, alpha: f64) -> f64 {
    let norm = score / math::sqrt(score * score + alpha);
    norm.clamp(-1.0, 1.0)
}

/// Lexicon plus heuristics; immutable and shareable across threads.
#[derive(Debug, Clone)]
pub struct SentimentAnalyzer {
    lexicon: Lexicon,
    heuristics: Heuristics,
}

impl SentimentAnalyzer {
    pub fn new(lexicon: Lexicon) -> Self {
        Self::with_heuristics(lexicon, Heuristics::default())
    }

    pub fn with_heuristics(lexicon: Lexicon, heuristics: Heuristics) -> Self {
        SentimentAnalyzer { lexicon, heuristics }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn heuristics(&self) -> &Heuristics {
        &self.heuristics
    }

    /// Score one text.
    pub fn score(&self, text: &str) -> SentimentScores {
        let described = self.describe_emoji(text);
        let text = described.trim();
        let words: Vec<&str> = text.split_whitespace().map(strip_punc_if_word).collect();
        let lowered: Vec<String> = words.iter().map(|w| w.to_lowercase()).collect();
        let ctx = Context {
            lex: &self.lexicon,
            h: &self.heuristics,
            words: &words,
            lowered: &lowered,
            cap_differential: allcap_differential(&words),
        };

        let mut sentiments = Vec::with_capacity(words.len());
        for i in 0..words.len() {
            let lower = lowered[i].as_str();
            if self.lexicon.booster(lower).is_some()
                || (lower == "kind" && lowered.get(i + 1).is_some_and(|n| n == "of"))
            {
                sentiments.push(0.0);
                continue;
            }
            sentiments.push(ctx.token_valence(i));
        }
        self.but_check(&lowered, &mut sentiments);
        self.finish(&sentiments, text)
    }

    fn describe_emoji(&self, text: &str) -> String {
        let mut out = String::with_capacity(text.len());
        let mut prev_space = true;
        for c in text.chars() {
            match self.lexicon.emoji_description(c) {
                Some(description) => {
                    if !prev_space {
                        out.push(' ');
                    }
                    out.push_str(description);
                    prev_space = false;
                }
                None => {
                    out.push(c);
                    prev_space = c == ' ';
                }
            }
        }
        out
    }

    /// Reweight around the first "but". The position lookup deliberately
    /// finds the first *equal value* rather than the current index, which is
    /// how the reference implementation behaves when valences repeat.
    fn but_check(&self, lowered: &[String], sentiments: &mut [f64]) {
        let Some(bi) = lowered.iter().position(|w| w == "but") else {
            return;
        };
        for p in 0..sentiments.len() {
            let s = sentiments[p];
            let si = sentiments.iter().position(|&x| x == s).unwrap_or(p);
            if si < bi {
                sentiments[si] = s * self.heuristics.but_before;
            } else if si > bi {
                sentiments[si] = s * self.heuristics.but_after;
            }
        }
    }

    fn punctuation_emphasis(&self, text: &str) -> f64 {
        let h = &self.heuristics;
        let ep = text.matches('!').count().min(h.exclamation_cap) as f64 * h.exclamation_increment;
        let qm_count = text.matches('?').count();
        let qm = match qm_count {
            0 | 1 => 0.0,
            2 | 3 => qm_count as f64 * h.question_increment,
            _ => h.question_cap_amplifier,
        };
        ep + qm
    }

    fn finish(&self, sentiments: &[f64], text: &str) -> SentimentScores {
        if sentiments.is_empty() {
            return SentimentScores::neutral();
        }
        let mut sum: f64 = sentiments.iter().sum();
        let punct = self.punctuation_emphasis(text);
        if sum > 0.0 {
            sum += punct;
        } else if sum < 0.0 {
            sum -= punct;
        }
        let compound = normalize(sum, self.heuristics.alpha);

        let mut pos_sum = 0.0;
        let mut neg_sum = 0.0;
        let mut neu_count = 0usize;
        for &s in sentiments {
            if s > 0.0 {
                pos_sum += s + 1.0;
            }
            if s < 0.0 {
                neg_sum += s - 1.0;
            }
            if s == 0.0 {
                neu_count += 1;
            }
        }
        if pos_sum > libm::fabs(neg_sum) {
            pos_sum += punct;
        } else if pos_sum < libm::fabs(neg_sum) {
            neg_sum -= punct;
        }
        let total = pos_sum + libm::fabs(neg_sum) + neu_count as f64;
        SentimentScores {
            pos: libm::fabs(pos_sum / total),
            neu: libm::fabs(neu_count as f64 / total),
            neg: libm::fabs(neg_sum / total),
            compound,
        }
    }
}

struct Context<'a> {
    lex: &'a Lexicon,
    h: &'a Heuristics,
    words: &'a [&'a str],
    lowered: &'a [String],
    cap_differential: bool,
}

impl Context<'_> {
    fn low(&self, i: usize) -> &str {
        &self.lowered[i]
    }

    fn token_valence(&self, i: usize) -> f64 {
        let item = self.low(i);
        let Some(base) = self.lex.valence(item) else {
            return 0.0;
        };
        let n = self.words.len();
        let mut valence = base;

        // "no" directly before a lexicon word negates it instead of scoring itself
        if item == "no" && i != n - 1 && self.lex.contains(self.low(i + 1)) {
            valence = 0.0;
        }
        if (i > 0 && self.low(i - 1) == "no")
            || (i > 1 && self.low(i - 2) == "no")
            || (i > 2 && self.low(i - 3) == "no" && matches!(self.low(i - 1), "or" | "nor"))
        {
            valence = base * self.h.negation_scalar;
        }

        if is_upper(self.words[i]) && self.cap_differential {
            if valence > 0.0 {
                valence += self.h.caps_increment;
            } else {
                valence -= self.h.caps_increment;
            }
        }

        for start in 0..3 {
            if i > start && !self.lex.contains(self.low(i - (start + 1))) {
                let mut s = self.scalar_inc_dec(i - (start + 1), valence);
                if start > 0 && s != 0.0 {
                    s *= self.h.distance_decay[start];
                }
                valence += s;
                valence = self.negation_check(valence, start, i);
                if start == 2 {
                    valence = self.special_idioms_check(valence, i);
                }
            }
        }
        self.least_check(valence, i)
    }

    fn scalar_inc_dec(&self, j: usize, valence: f64) -> f64 {
        let Some(mut scalar) = self.lex.booster(self.low(j)) else {
            return 0.0;
        };
        if valence < 0.0 {
            scalar *= -1.0;
        }
        if is_upper(self.words[j]) && self.cap_differential {
            if valence > 0.0 {
                scalar += self.h.caps_increment;
            } else {
                scalar -= self.h.caps_increment;
            }
        }
        scalar
    }

    fn negated(&self, word: &str) -> bool {
        self.lex.is_negator(word) || word.contains("n't")
    }

    fn negation_check(&self, valence: f64, start: usize, i: usize) -> f64 {
        let scalar = self.h.negation_scalar;
        match start {
            0 => {
                if self.negated(self.low(i - 1)) {
                    return valence * scalar;
                }
            }
            1 => {
                if self.low(i - 2) == "never" && matches!(self.low(i - 1), "so" | "this") {
                    return valence * self.h.never_so_scalar;
                } else if self.low(i - 2) == "without" && self.low(i - 1) == "doubt" {
                    return valence;
                } else if self.negated(self.low(i - 2)) {
                    return valence * scalar;
                }
            }
            _ => {
                if (self.low(i - 3) == "never" && matches!(self.low(i - 2), "so" | "this"))
                    || matches!(self.low(i - 1), "so" | "this")
                {
                    return valence * self.h.never_so_scalar;
                } else if self.low(i - 3) == "without"
                    && (self.low(i - 2) == "doubt" || self.low(i - 1) == "doubt")
                {
                    return valence;
                } else if self.negated(self.low(i - 3)) {
                    return valence * scalar;
                }
            }
        }
        valence
    }

    fn special_idioms_check(&self, mut valence: f64, i: usize) -> f64 {
        let w = |k: usize| self.low(k);
        let one_zero = join(&[w(i - 1), w(i)]);
        let two_one_zero = join(&[w(i - 2), w(i - 1), w(i)]);
        let two_one = join(&[w(i - 2), w(i - 1)]);
        let three_two_one = join(&[w(i - 3), w(i - 2), w(i - 1)]);
        let three_two = join(&[w(i - 3), w(i - 2)]);

        for seq in [&one_zero, &two_one_zero, &two_one, &three_two_one, &three_two] {
            if let Some(v) = self.lex.idiom(seq) {
                valence = v;
                break;
            }
        }
        let n = self.lowered.len();
        if n - 1 > i {
            if let Some(v) = self.lex.idiom(&join(&[w(i), w(i + 1)])) {
                valence = v;
            }
        }
        if n - 1 > i + 1 {
            if let Some(v) = self.lex.idiom(&join(&[w(i), w(i + 1), w(i + 2)])) {
                valence = v;
            }
        }
        // multi-word degree modifiers such as "kind of"
        for ngram in [&three_two_one, &three_two, &two_one] {
            if let Some(b) = self.lex.booster(ngram) {
                valence += b;
            }
        }
        valence
    }

    fn least_check(&self, valence: f64, i: usize) -> f64 {
        if i > 1 && !self.lex.contains(self.low(i - 1)) && self.low(i - 1) == "least" {
            if self.low(i - 2) != "at" && self.low(i - 2) != "very" {
                return valence * self.h.negation_scalar;
            }
        } else if i > 0 && !self.lex.contains(self.low(i - 1)) && self.low(i - 1) == "least" {
            return valence * self.h.negation_scalar;
        }
        valence
    }
}

fn join(parts: &[&str]) -> String {
    parts.join(" ")
}

/// Strip leading/trailing ASCII punctuation unless that leaves two or
/// fewer characters (which keeps emoticons like ":)" intact).
fn strip_punc_if_word(token: &str) -> &str {
    let stripped = token.trim_matches(|c: char| c.is_ascii_punctuation());
    if stripped.chars().count() <= 2 {
        token
    } else {
        stripped
    }
}

/// True when the word has at least one cased letter and none lowercase.
fn is_upper(word: &str) -> bool {
    let mut cased = false;
    for c in word.chars() {
        if c.is_lowercase() {
            return false;
        }
        if c.is_uppercase() {
            cased = true;
        }
    }
    cased
}

/// Some, but not all, words are ALL CAPS.
fn allcap_differential(words: &[&str]) -> bool {
    let caps = words.iter().filter(|w| is_upper(w)).count();
    let differential = words.len() - caps;
    differential > 0 && differential < words.len()
}
