use std::collections::BTreeMap;

use proptest::prelude::*;
use vaxpulse::records::{read_records, write_records, InputFormat};
use vaxpulse_core::TweetRecord;

fn record() -> impl Strategy<Value = TweetRecord> {
    let text = "[ -~\u{e9}\u{1f489}\n\",]{0,60}";
    let extra = prop::collection::btree_map("x_[a-z]{1,6}", "[ -~]{0,12}", 0..3);
    (
        "[1-9][0-9]{0,18}",
        (1u32..=12, 1u32..=28, 0u32..24, 0u32..60),
        "[A-Z]{2}",
        text,
        prop::array::uniform4(any::<u64>()),
        extra,
    )
        .prop_map(|(id, (mo, d, h, mi), cc, text, counts, extra)| {
            let ts = format!("2021-{mo:02}-{d:02}T{h:02}:{mi:02}:07Z");
            let counts = counts.map(|c| c.to_string());
            let fields: BTreeMap<&str, &str> = [
                ("tweet_id", id.as_str()),
                ("created_at", ts.as_str()),
                ("country_code", cc.as_str()),
                ("lang", "en"),
                ("text", text.as_str()),
                ("retweet_count", counts[0].as_str()),
                ("like_count", counts[1].as_str()),
                ("follower_count", counts[2].as_str()),
                ("listed_count", counts[3].as_str()),
            ]
            .into();
            TweetRecord::from_fields(|f| fields.get(f).copied(), extra).unwrap()
        })
}

/// Every record in a file shares the same pass-through columns.
fn same_columns(mut records: Vec<TweetRecord>) -> Vec<TweetRecord> {
    let keys: Vec<String> = records.iter().flat_map(|r| r.passthrough.keys().cloned()).collect();
    for r in &mut records {
        for k in &keys {
            r.passthrough.entry(k.clone()).or_default();
        }
    }
    records
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn write_then_read_is_identity(records in prop::collection::vec(record(), 1..12)) {
        let records = same_columns(records);
        prop_assume!(records[0].passthrough.len() <= 6);
        for format in [InputFormat::Csv, InputFormat::JsonLines] {
            let mut buf = Vec::new();
            write_records(&mut buf, &records, format).unwrap();
            let back = read_records(buf.as_slice(), format, "mem").unwrap();
            prop_assert!(back.rejections.is_empty(), "{:?}", back.rejections);
            prop_assert_eq!(&back.records, &records);
        }
    }
}
