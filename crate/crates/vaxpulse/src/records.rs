//! Tweet files: comma-separated tables with a header row, or JSON lines.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde_json::{Map, Value};
use vaxpulse_core::corpus::{MAX_PASSTHROUGH_FIELDS, REQUIRED_FIELDS};
use vaxpulse_core::TweetRecord;

use crate::error::{PipelineError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    JsonLines,
}

impl InputFormat {
    /// `.jsonl`, `.ndjson` and `.json` are JSON lines; anything else is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase) {
            Some(ext) if ext == "jsonl" || ext == "ndjson" || ext == "json" => InputFormat::JsonLines,
            _ => InputFormat::Csv,
        }
    }
}

/// A row that could not be turned into a record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub source: String,
    pub line: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Loaded {
    pub records: Vec<TweetRecord>,
    pub rejections: Vec<Rejection>,
}

pub fn load_records(path: &Path) -> Result<Loaded> {
    let file = File::open(path).map_err(|e| PipelineError::read(path, e))?;
    read_records(file, InputFormat::from_path(path), &path.display().to_string())
}

pub fn read_records<R: Read>(reader: R, format: InputFormat, source: &str) -> Result<Loaded> {
    match format {
        InputFormat::Csv => read_csv(reader, source),
        InputFormat::JsonLines => read_jsonl(reader, source),
    }
}

fn read_csv<R: Read>(reader: R, source: &str) -> Result<Loaded> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| PipelineError::config(format!("{source}: unreadable header: {e}")))?
        .iter()
        .enumerate()
        .map(|(i, h)| if i == 0 { h.trim_start_matches('\u{feff}') } else { h }.trim().to_string())
        .collect();
    let mut seen = BTreeSet::new();
    if let Some(dup) = header.iter().find(|h| !seen.insert(h.as_str())) {
        return Err(PipelineError::config(format!("{source}: duplicate column {dup:?}")));
    }
    check_columns(source, header.iter().map(String::as_str))?;

    let mut out = Loaded::default();
    for row in rdr.records() {
        let row = match row {
            Ok(row) => row,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                out.rejections.push(Rejection {
                    source: source.into(),
                    line,
                    reason: e.to_string(),
                });
                continue;
            }
        };
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != header.len() {
            out.rejections.push(Rejection {
                source: source.into(),
                line,
                reason: format!("expected {} fields, found {}", header.len(), row.len()),
            });
            continue;
        }
        let get = |name: &str| header.iter().position(|h| h == name).map(|i| &row[i]);
        let passthrough = header
            .iter()
            .zip(row.iter())
            .filter(|(h, _)| !REQUIRED_FIELDS.contains(&h.as_str()))
            .map(|(h, v)| (h.clone(), v.to_string()))
            .collect();
        match TweetRecord::from_fields(get, passthrough) {
            Ok(r) => out.records.push(r),
            Err(e) => out.rejections.push(Rejection {
                source: source.into(),
                line,
                reason: e.to_string(),
            }),
        }
    }
    Ok(out)
}

fn check_columns<'a>(source: &str, names: impl Iterator<Item = &'a str> + Clone) -> Result<()> {
    let missing: Vec<&str> = REQUIRED_FIELDS
        .iter()
        .copied()
        .filter(|f| !names.clone().any(|n| n == *f))
        .collect();
    if !missing.is_empty() {
        return Err(PipelineError::config(format!(
            "{source}: missing required column(s) {}",
            missing.join(", ")
        )));
    }
    let extra = names.filter(|n| !REQUIRED_FIELDS.contains(n)).count();
    if extra > MAX_PASSTHROUGH_FIELDS {
        return Err(PipelineError::config(format!(
            "{source}: {extra} extra columns, at most {MAX_PASSTHROUGH_FIELDS} are carried through"
        )));
    }
    Ok(())
}

fn json_field(v: &Value) -> Option<String> {
    match v {
        Value::Null => None,
        Value::String(s) => Some(s.clone()),
        other => Some(other.to_string()),
    }
}

fn read_jsonl<R: Read>(reader: R, source: &str) -> Result<Loaded> {
    let mut out = Loaded::default();
    let mut checked = false;
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = i as u64 + 1;
        let line = line.map_err(|e| PipelineError::data(format!("{source}:{line_no}: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        let reject = |reason: String| Rejection {
            source: source.into(),
            line: line_no,
            reason,
        };
        let obj: Map<String, Value> = match serde_json::from_str(&line) {
            Ok(Value::Object(obj)) => obj,
            Ok(_) => {
                out.rejections.push(reject("not a JSON object".into()));
                continue;
            }
            Err(e) => {
                out.rejections.push(reject(e.to_string()));
                continue;
            }
        };
        if !checked {
            check_columns(source, obj.keys().map(String::as_str))?;
            checked = true;
        }
        let fields: BTreeMap<&str, String> = obj
            .iter()
            .filter_map(|(k, v)| json_field(v).map(|s| (k.as_str(), s)))
            .collect();
        let passthrough = fields
            .iter()
            .filter(|(k, _)| !REQUIRED_FIELDS.contains(k))
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        match TweetRecord::from_fields(|name| fields.get(name).map(String::as_str), passthrough) {
            Ok(r) => out.records.push(r),
            Err(e) => out.rejections.push(reject(e.to_string())),
        }
    }
    Ok(out)
}

fn passthrough_columns(records: &[TweetRecord]) -> Vec<String> {
    let names: BTreeSet<&String> = records.iter().flat_map(|r| r.passthrough.keys()).collect();
    names.into_iter().cloned().collect()
}

/// Write records with the required columns first, then the union of
/// pass-through columns in name order.
pub fn write_records<W: Write>(writer: W, records: &[TweetRecord], format: InputFormat) -> Result<()> {
    match format {
        InputFormat::Csv => write_csv(writer, records),
        InputFormat::JsonLines => write_jsonl(writer, records),
    }
}

fn write_csv<W: Write>(writer: W, records: &[TweetRecord]) -> Result<()> {
    let extra = passthrough_columns(records);
    let mut w = csv::Writer::from_writer(writer);
    let header: Vec<&str> = REQUIRED_FIELDS.iter().copied().chain(extra.iter().map(String::as_str)).collect();
    w.write_record(&header).map_err(PipelineError::data)?;
    for r in records {
        let mut row = vec![
            r.tweet_id.clone(),
            r.created_at_string(),
            r.country_code.clone(),
            r.lang.clone(),
            r.text.clone(),
            r.retweet_count.to_string(),
            r.like_count.to_string(),
            r.follower_count.to_string(),
            r.listed_count.to_string(),
        ];
        row.extend(extra.iter().map(|k| r.passthrough.get(k).cloned().unwrap_or_default()));
        w.write_record(&row).map_err(PipelineError::data)?;
    }
    w.flush().map_err(PipelineError::data)
}

fn write_jsonl<W: Write>(mut writer: W, records: &[TweetRecord]) -> Result<()> {
    for r in records {
        let mut obj = Map::new();
        obj.insert("tweet_id".into(), r.tweet_id.clone().into());
        obj.insert("created_at".into(), r.created_at_string().into());
        obj.insert("country_code".into(), r.country_code.clone().into());
        obj.insert("lang".into(), r.lang.clone().into());
        obj.insert("text".into(), r.text.clone().into());
        obj.insert("retweet_count".into(), r.retweet_count.into());
        obj.insert("like_count".into(), r.like_count.into());
        obj.insert("follower_count".into(), r.follower_count.into());
        obj.insert("listed_count".into(), r.listed_count.into());
        for (k, v) in &r.passthrough {
            obj.insert(k.clone(), v.clone().into());
        }
        serde_json::to_writer(&mut writer, &Value::Object(obj)).map_err(PipelineError::data)?;
        writer.write_all(b"\n").map_err(PipelineError::data)?;
    }
    writer.flush().map_err(PipelineError::data)
}

/// Rejections as `source,line,reason`.
pub fn write_rejections<W: Write>(writer: W, rejections: &[Rejection]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["source", "line", "reason"]).map_err(PipelineError::data)?;
    for r in rejections {
        w.write_record([r.source.as_str(), &r.line.to_string(), r.reason.as_str()])
            .map_err(PipelineError::data)?;
    }
    w.flush().map_err(PipelineError::data)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "tweet_id,created_at,country_code,lang,text,retweet_count,like_count,follower_count,listed_count,place\n";

    #[test]
    fn negative_counter_is_rejected_with_line() {
        let data = format!(
            "{HEADER}1,2021-01-05T10:00:00Z,GB,en,vaccine day,0,1,10,0,x\n\
             2,2021-01-05T11:00:00Z,US,en,\"multi\nline\",0,-3,10,0,y\n\
             3,2021-01-06T11:00:00Z,US,en,ok,0,0,0,0,z\n"
        );
        let out = read_records(data.as_bytes(), InputFormat::Csv, "t").unwrap();
        assert_eq!(out.records.len(), 2);
        assert_eq!(out.rejections.len(), 1);
        assert_eq!(out.rejections[0].line, 3);
        assert!(out.rejections[0].reason.contains("like_count"));
        assert_eq!(out.records[0].passthrough["place"], "x");
    }

    #[test]
    fn missing_column_is_a_config_error() {
        let err = read_records("tweet_id,text\n1,a\n".as_bytes(), InputFormat::Csv, "t").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("created_at"));
    }

    #[test]
    fn csv_and_jsonl_round_trip() {
        let data = format!("{HEADER}1,2021-01-05T10:00:00.250Z,GB,en,\"say \"\"hi\"\", ok\",4,1,10,2,\n");
        let first = read_records(data.as_bytes(), InputFormat::Csv, "t").unwrap().records;
        for format in [InputFormat::Csv, InputFormat::JsonLines] {
            let mut buf = Vec::new();
            write_records(&mut buf, &first, format).unwrap();
            let again = read_records(buf.as_slice(), format, "t").unwrap();
            assert!(again.rejections.is_empty());
            assert_eq!(again.records, first);
        }
    }

    #[test]
    fn jsonl_numbers_and_bad_lines() {
        let data = "{\"tweet_id\":\"9\",\"created_at\":\"2021-02-01\",\"country_code\":\"US\",\"lang\":\"en\",\"text\":\"x\",\"retweet_count\":1,\"like_count\":2,\"follower_count\":3,\"listed_count\":4}\n\nnot json\n";
        let out = read_records(data.as_bytes(), InputFormat::JsonLines, "t").unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].listed_count, 4);
        assert_eq!(out.rejections.len(), 1);
        assert_eq!(out.rejections[0].line, 3);
    }
}
