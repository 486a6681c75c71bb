//! Tweet records and the pure corpus transforms: validation, filtering,
//! deduplication and time partitioning.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use chrono::{DateTime, Datelike, NaiveDate, NaiveDateTime, Utc};

use crate::textprep::clean_text;

/// Field names every input file must provide.
pub const REQUIRED_FIELDS: [&str; 9] = [
    "tweet_id",
    "created_at",
    "country_code",
    "lang",
    "text",
    "retweet_count",
    "like_count",
    "follower_count",
    "listed_count",
];

/// Upper bound on uninterpreted columns carried along with a record.
pub const MAX_PASSTHROUGH_FIELDS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("country filter set is empty")]
    EmptyCountrySet,
    #[error("keyword must be non-empty")]
    EmptyKeyword,
    #[error("slice count must be at least 1")]
    ZeroSlices,
    #[error("cannot split {available} records into {requested} slices")]
    TooManySlices { requested: usize, available: usize },
    #[error("{field}: {reason}")]
    InvalidField { field: &'static str, reason: String },
    #[error("{0} pass-through fields exceed the limit of {MAX_PASSTHROUGH_FIELDS}")]
    TooManyPassthrough(usize),
}

/// One ingested post.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TweetRecord {
    pub tweet_id: String,
    pub created_at: DateTime<Utc>,
    pub country_code: String,
    pub lang: String,
    /// Raw text, never modified.
    pub text: String,
    pub retweet_count: u64,
    pub like_count: u64,
    pub follower_count: u64,
    pub listed_count: u64,
    /// Extra columns preserved verbatim, keyed by column name.
    pub passthrough: BTreeMap<String, String>,
}

impl TweetRecord {
    /// Build a record from string fields, as read from a delimited or
    /// JSON file. `get` returns the raw value of a named field.
    pub fn from_fields<'a, F>(
        get: F,
        passthrough: BTreeMap<String, String>,
    ) -> Result<TweetRecord, CorpusError>
    where
        F: Fn(&str) -> Option<&'a str>,
    {
        let field = |name: &'static str| {
            get(name).ok_or_else(|| CorpusError::InvalidField {
                field: name,
                reason: "missing".into(),
            })
        };
        let tweet_id = field("tweet_id")?.trim();
        if tweet_id.is_empty() {
            return Err(CorpusError::InvalidField {
                field: "tweet_id",
                reason: "must be non-empty".into(),
            });
        }
        if passthrough.len() > MAX_PASSTHROUGH_FIELDS {
            return Err(CorpusError::TooManyPassthrough(passthrough.len()));
        }
        Ok(TweetRecord {
            tweet_id: tweet_id.to_string(),
            created_at: parse_timestamp(field("created_at")?).map_err(|reason| {
                CorpusError::InvalidField {
                    field: "created_at",
                    reason,
                }
            })?,
            country_code: field("country_code")?.trim().to_string(),
            lang: field("lang")?.trim().to_string(),
            text: field("text")?.to_string(),
            retweet_count: parse_counter("retweet_count", field("retweet_count")?)?,
            like_count: parse_counter("like_count", field("like_count")?)?,
            follower_count: parse_counter("follower_count", field("follower_count")?)?,
            listed_count: parse_counter("listed_count", field("listed_count")?)?,
            passthrough,
        })
    }

    /// Canonical timestamp rendering: RFC 3339 in UTC with a `Z` suffix.
    pub fn created_at_string(&self) -> String {
        format_timestamp(&self.created_at)
    }
}

/// Parse an engagement counter, rejecting negatives and non-integers.
pub fn parse_counter(field: &'static str, raw: &str) -> Result<u64, CorpusError> {
    let raw = raw.trim();
    let value: i128 = raw.parse().map_err(|_| CorpusError::InvalidField {
        field,
        reason: format!("{raw:?} is not an integer"),
    })?;
    if value < 0 {
        return Err(CorpusError::InvalidField {
            field,
            reason: format!("counter must be non-negative, got {value}"),
        });
    }
    u64::try_from(value).map_err(|_| CorpusError::InvalidField {
        field,
        reason: format!("{value} exceeds the counter range"),
    })
}

/// Parse an ISO-8601 instant into UTC.
///
/// Accepts RFC 3339 (any offset), a space instead of `T`, naive date-times
/// (taken as UTC) and bare dates (midnight UTC).
pub fn parse_timestamp(raw: &str) -> Result<DateTime<Utc>, String> {
    let raw = raw.trim();
    if let Ok(dt) = DateTime::parse_from_rfc3339(raw) {
        return Ok(dt.with_timezone(&Utc));
    }
    if let Ok(dt) = DateTime::parse_from_rfc3339(&raw.replacen(' ', "T", 1)) {
        return Ok(dt.with_timezone(&Utc));
    }
    for fmt in ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f", "%Y-%m-%dT%H:%M"] {
        if let Ok(naive) = NaiveDateTime::parse_from_str(raw, fmt) {
            return Ok(naive.and_utc());
        }
    }
    if let Ok(date) = NaiveDate::parse_from_str(raw, "%Y-%m-%d") {
        return Ok(date.and_hms_opt(0, 0, 0).expect("midnight exists").and_utc());
    }
    Err(format!("{raw:?} is not an ISO-8601 timestamp"))
}

pub fn format_timestamp(ts: &DateTime<Utc>) -> String {
    ts.to_rfc3339_opts(chrono::SecondsFormat::AutoSi, true)
}

/// Keep records whose country is in `countries` and whose text contains
/// `keyword`, case-insensitively. Input order is preserved.
pub fn filter_records(
    records: &[TweetRecord],
    countries: &BTreeSet<String>,
    keyword: &str,
) -> Result<Vec<TweetRecord>, CorpusError> {
    if countries.is_empty() {
        return Err(CorpusError::EmptyCountrySet);
    }
    if keyword.is_empty() {
        return Err(CorpusError::EmptyKeyword);
    }
    let needle = keyword.to_lowercase();
    Ok(records
        .iter()
        .filter(|r| countries.contains(&r.country_code) && r.text.to_lowercase().contains(&needle))
        .cloned()
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DedupKey {
    ById,
    ByCleanText,
}

/// Drop later records that share a key with an earlier one.
pub fn dedup(records: &[TweetRecord], key: DedupKey) -> Vec<TweetRecord> {
    let mut seen = BTreeSet::new();
    records
        .iter()
        .filter(|r| {
            let k = match key {
                DedupKey::ById => r.tweet_id.clone(),
                DedupKey::ByCleanText => clean_text(&r.text),
            };
            seen.insert(k)
        })
        .cloned()
        .collect()
}

/// A UTC calendar month.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonthKey {
    pub year: i32,
    pub month: u32,
}

impl MonthKey {
    pub fn of(ts: &DateTime<Utc>) -> Self {
        MonthKey {
            year: ts.year(),
            month: ts.month(),
        }
    }
}

impl fmt::Display for MonthKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

/// A labelled, time-ordered run of records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSlice {
    pub label: String,
    pub records: Vec<TweetRecord>,
}

fn time_sorted(records: &[TweetRecord]) -> Vec<TweetRecord> {
    let mut sorted = records.to_vec();
    sorted.sort_by_key(|r| r.created_at);
    sorted
}

/// One slice per calendar month present, labelled `YYYY-MM`, in
/// chronological order.
pub fn bucket_by_month(records: &[TweetRecord]) -> Vec<CorpusSlice> {
    let mut buckets: BTreeMap<MonthKey, Vec<TweetRecord>> = BTreeMap::new();
    for r in time_sorted(records) {
        buckets.entry(MonthKey::of(&r.created_at)).or_default().push(r);
    }
    buckets
        .into_iter()
        .map(|(month, records)| CorpusSlice {
            label: month.to_string(),
            records,
        })
        .collect()
}

/// `n` contiguous equal-count slices (sizes differ by at most one, larger
/// slices first) of the time-sorted records, labelled `slice-1..n`.
pub fn split_time_slices(records: &[TweetRecord], n: usize) -> Result<Vec<CorpusSlice>, CorpusError> {
    if n == 0 {
        return Err(CorpusError::ZeroSlices);
    }
    if n > records.len() {
        return Err(CorpusError::TooManySlices {
            requested: n,
            available: records.len(),
        });
    }
    let sorted = time_sorted(records);
    let base = sorted.len() / n;
    let extra = sorted.len() % n;
    let mut slices = Vec::with_capacity(n);
    let mut rest = sorted.as_slice();
    for i in 0..n {
        let size = base + usize::from(i < extra);
        let (head, tail) = rest.split_at(size);
        slices.push(CorpusSlice {
            label: format!("slice-{}", i + 1),
            records: head.to_vec(),
        });
        rest = tail;
    }
    Ok(slices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rec(id: &str, ts: &str, country: &str, text: &str) -> TweetRecord {
        TweetRecord {
            tweet_id: id.into(),
            created_at: parse_timestamp(ts).unwrap(),
            country_code: country.into(),
            lang: "en".into(),
            text: text.into(),
            retweet_count: 0,
            like_count: 0,
            follower_count: 0,
            listed_count: 0,
            passthrough: BTreeMap::new(),
        }
    }

    fn countries(cs: &[&str]) -> BTreeSet<String> {
        cs.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn filter_by_country_and_keyword() {
        let gb_us = countries(&["GB", "US"]);
        let rs = vec![
            rec("1", "2021-01-01", "GB", "Vaccine works"),
            rec("2", "2021-01-01", "FR", "vaccine"),
            rec("3", "2021-01-01", "US", "no mention"),
        ];
        let kept = filter_records(&rs, &gb_us, "vaccine").unwrap();
        assert_eq!(kept.iter().map(|r| r.tweet_id.as_str()).collect::<Vec<_>>(), ["1"]);
        assert_eq!(filter_records(&rs, &BTreeSet::new(), "vaccine"), Err(CorpusError::EmptyCountrySet));
        assert_eq!(filter_records(&rs, &gb_us, ""), Err(CorpusError::EmptyKeyword));
    }

    #[test]
    fn dedup_keeps_first_occurrence() {
        let rs = vec![
            rec("1", "2021-01-01", "GB", "a"),
            rec("1", "2021-01-02", "GB", "b"),
        ];
        let out = dedup(&rs, DedupKey::ById);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].text, "a");

        let rs = vec![
            rec("1", "2021-01-01", "GB", "Hi! http://t.co/x"),
            rec("2", "2021-01-01", "GB", "hi!"),
        ];
        assert_eq!(dedup(&rs, DedupKey::ByCleanText).len(), 1);
        assert_eq!(dedup(&rs, DedupKey::ById), rs);
    }

    #[test]
    fn months_split_on_utc_boundary() {
        let one = bucket_by_month(&[
            rec("1", "2020-12-31T00:00:00Z", "GB", ""),
            rec("2", "2020-12-01T00:00:00Z", "GB", ""),
        ]);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].label, "2020-12");
        assert_eq!(one[0].records[0].tweet_id, "2");

        let two = bucket_by_month(&[
            rec("1", "2020-12-31T23:59:00Z", "GB", ""),
            rec("2", "2021-01-01T00:00:00Z", "GB", ""),
        ]);
        assert_eq!(two.iter().map(|s| s.label.as_str()).collect::<Vec<_>>(), ["2020-12", "2021-01"]);
        assert!(bucket_by_month(&[]).is_empty());
    }

    #[test]
    fn offsets_are_normalized_to_utc_months() {
        let r = rec("1", "2021-01-01T00:30:00+01:00", "GB", "");
        assert_eq!(MonthKey::of(&r.created_at).to_string(), "2020-12");
    }

    #[test]
    fn equal_count_slices() {
        let rs: Vec<_> = (0..10)
            .map(|i| rec(&i.to_string(), &format!("2021-01-{:02}", 10 - i), "GB", ""))
            .collect();
        let sizes = |n| {
            split_time_slices(&rs, n)
                .unwrap()
                .iter()
                .map(|s| s.records.len())
                .collect::<Vec<_>>()
        };
        assert_eq!(sizes(3), [4, 3, 3]);
        assert_eq!(sizes(1), [10]);
        assert_eq!(split_time_slices(&rs[..9], 3).unwrap().iter().map(|s| s.records.len()).collect::<Vec<_>>(), [3, 3, 3]);
        let first = &split_time_slices(&rs, 3).unwrap()[0];
        assert_eq!(first.records[0].tweet_id, "9");
        assert_eq!(first.label, "slice-1");
        assert!(matches!(split_time_slices(&rs, 11), Err(CorpusError::TooManySlices { .. })));
        assert_eq!(split_time_slices(&rs, 0), Err(CorpusError::ZeroSlices));
    }

    #[test]
    fn counters_reject_negatives_and_garbage() {
        assert_eq!(parse_counter("like_count", " 12 "), Ok(12));
        assert!(parse_counter("like_count", "-1").is_err());
        assert!(parse_counter("like_count", "1.5").is_err());
    }

    #[test]
    fn timestamp_forms() {
        let want = parse_timestamp("2021-03-22T10:00:00Z").unwrap();
        for raw in ["2021-03-22 10:00:00", "2021-03-22T11:00:00+01:00", "2021-03-22T10:00:00.000Z"] {
            assert_eq!(parse_timestamp(raw).unwrap(), want, "{raw}");
        }
        assert!(parse_timestamp("22/03/2021").is_err());
        assert_eq!(format_timestamp(&want), "2021-03-22T10:00:00Z");
    }
}
