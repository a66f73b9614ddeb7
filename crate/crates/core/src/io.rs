//! Statistics files.
//!
//! A file is one JSON object with a `"format"` key:
//!
//! ```text
//! {"format": "full", "p": [16 numbers in (x, y, a, b) lexicographic order]}
//! {"format": "ch_slice", "j00": .., "j01": .., "j10": .., "j11": ..,
//!                        "mA0": .., "mA1": .., "mB0": .., "mB1": ..}
//! ```
//!
//! An optional `"comment"` string is allowed in either form; every other
//! unknown key is rejected.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::stats::{ChSlice, ProbabilityTable};

const SLICE_KEYS: [&str; 8] = ["j00", "j01", "j10", "j11", "mA0", "mA1", "mB0", "mB1"];

#[derive(Clone, Debug, PartialEq)]
pub enum StatisticsInput {
    Full(ProbabilityTable),
    Slice(ChSlice),
}

pub fn load(path: impl AsRef<Path>) -> Result<StatisticsInput> {
    parse(&fs::read_to_string(path)?)
}

pub fn parse(text: &str) -> Result<StatisticsInput> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let Value::Object(obj) = value else {
        return Err(Error::Schema("top level must be an object".into()));
    };
    let format = match obj.get("format") {
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return Err(Error::Schema("\"format\" must be a string".into())),
        None => return Err(Error::Schema("missing key \"format\"".into())),
    };
    if let Some(c) = obj.get("comment") {
        if !c.is_string() {
            return Err(Error::Schema("\"comment\" must be a string".into()));
        }
    }
    match format {
        "full" => {
            reject_unknown(&obj, &["p"])?;
            let p = match obj.get("p") {
                Some(Value::Array(items)) => items,
                Some(_) => return Err(Error::Schema("\"p\" must be an array".into())),
                None => return Err(Error::Schema("missing key \"p\"".into())),
            };
            if p.len() != 16 {
                return Err(Error::Schema(format!("\"p\" has {} entries, expected 16", p.len())));
            }
            let mut entries = [0.0; 16];
            for (i, v) in p.iter().enumerate() {
                entries[i] = number(v, &format!("p[{i}]"))?;
            }
            Ok(StatisticsInput::Full(ProbabilityTable::new(entries)?))
        }
        "ch_slice" => {
            reject_unknown(&obj, &SLICE_KEYS)?;
            let mut v = [0.0; 8];
            for (slot, key) in v.iter_mut().zip(SLICE_KEYS) {
                *slot = number(
                    obj.get(key).ok_or_else(|| Error::Schema(format!("missing key \"{key}\"")))?,
                    key,
                )?;
            }
            Ok(StatisticsInput::Slice(ChSlice::new(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7])?))
        }
        other => Err(Error::Schema(format!("unknown format \"{other}\""))),
    }
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    for key in obj.keys() {
        if key != "format" && key != "comment" && !allowed.contains(&key.as_str()) {
            return Err(Error::Schema(format!("unknown key \"{key}\"")));
        }
    }
    Ok(())
}

fn number(v: &Value, name: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| Error::Schema(format!("{name} must be a number")))
}

pub fn table_to_json(table: &ProbabilityTable) -> String {
    let doc = serde_json::json!({ "format": "full", "p": table.entries().to_vec() });
    serde_json::to_string_pretty(&doc).expect("table serializes") + "\n"
}

pub fn slice_to_json(slice: &ChSlice) -> String {
    let mut obj = Map::new();
    obj.insert("format".into(), Value::from("ch_slice"));
    for (key, v) in slice.named() {
        obj.insert(key.into(), Value::from(v));
    }
    serde_json::to_string_pretty(&Value::Object(obj)).expect("slice serializes") + "\n"
}

pub fn save_table(table: &ProbabilityTable, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, table_to_json(table))?;
    Ok(())
}

pub fn save_slice(slice: &ChSlice, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, slice_to_json(slice))?;
    Ok(())
}

/// Pretty JSON of any serializable report.
pub fn save_json<T: Serialize>(value: &T, path: impl AsRef<Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Computation(e.to_string()))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUNDLED: &str = include_str!("../data/ch_slice_example.json");

    #[test]
    fn parses_bundled_slice() {
        let StatisticsInput::Slice(s) = parse(BUNDLED).unwrap() else { panic!("expected slice") };
        assert_eq!(s.j00, 0.3811);
        assert_eq!(s.j01, 0.3593);
        assert_eq!(s.j10, 0.3789);
        assert_eq!(s.j11, 0.0671);
        assert_eq!(s.marginals(), [0.4025, 0.4806, 0.4671, 0.5058]);
    }

    #[test]
    fn parses_full_table() {
        let text = format!(r#"{{"format": "full", "p": [{}]}}"#, vec!["0.25"; 16].join(","));
        assert_eq!(parse(&text).unwrap(), StatisticsInput::Full(ProbabilityTable::uniform()));
    }

    #[test]
    fn error_classes() {
        assert!(matches!(parse("{not json"), Err(Error::Parse(_))));
        assert!(matches!(parse("[1, 2]"), Err(Error::Schema(_))));
        assert!(matches!(parse(r#"{"p": []}"#), Err(Error::Schema(_))));
        assert!(matches!(parse(r#"{"format": "full", "p": [0.5]}"#), Err(Error::Schema(_))));
        assert!(matches!(parse(r#"{"format": "cube"}"#), Err(Error::Schema(_))));
        let extra = BUNDLED.replacen("\"j00\"", "\"j99\": 0.1, \"j00\"", 1);
        assert!(matches!(parse(&extra), Err(Error::Schema(_))));
        let missing = r#"{"format": "ch_slice", "j00": 0.1}"#;
        assert!(matches!(parse(missing), Err(Error::Schema(_))));
        let text = format!(r#"{{"format": "full", "p": [1.2, {}]}}"#, vec!["0.25"; 15].join(","));
        assert!(matches!(parse(&text), Err(Error::Range(_))));
        let text = format!(r#"{{"format": "full", "p": ["x", {}]}}"#, vec!["0.25"; 15].join(","));
        assert!(matches!(parse(&text), Err(Error::Schema(_))));
    }

    #[test]
    fn slice_round_trip() {
        let StatisticsInput::Slice(s) = parse(BUNDLED).unwrap() else { unreachable!() };
        assert_eq!(parse(&slice_to_json(&s)).unwrap(), StatisticsInput::Slice(s));
    }
}
