//! The report every subcommand prints, and its JSON / TSV renderings.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use ternexp::Verdict;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub items: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            verdict: Verdict::Pass,
            items: Vec::new(),
            notes: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Report {
        self.parameters.insert(key.to_string(), to_value(value));
        self
    }

    pub fn item(&mut self, value: impl Serialize) {
        self.items.push(to_value(value));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Folds `v` into the report verdict, keeping the more severe one.
    pub fn absorb(&mut self, v: Verdict) {
        self.verdict = self.verdict.worst(v);
    }

    /// 0 for pass or inapplicable, 1 when a violation was found.
    pub fn exit_code(&self) -> i32 {
        if self.verdict.is_violation() {
            1
        } else {
            0
        }
    }

    /// Canonical JSON: every object is key-sorted and there are no floats, so
    /// parsing and re-serializing reproduces the same bytes.
    pub fn to_json(&self) -> String {
        to_value(self).to_string()
    }

    /// A header row with the sorted keys of the first item, then one row per
    /// item. Nested values are written as compact JSON.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let Some(Value::Object(first)) = self.items.first() else {
            return out;
        };
        let keys: Vec<&String> = first.keys().collect();
        out.push_str(
            &keys
                .iter()
                .map(|k| k.as_str())
                .collect::<Vec<_>>()
                .join("\t"),
        );
        out.push('\n');
        for item in &self.items {
            let row: Vec<String> = keys
                .iter()
                .map(|k| match item.get(k.as_str()) {
                    Some(Value::String(s)) => s.clone(),
                    Some(Value::Null) | None => String::new(),
                    Some(v) => v.to_string(),
                })
                .collect();
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_round_trips_byte_identically() {
        let mut r = Report::new("demo").param("zeta", 3).param("alpha", "7/2");
        r.item(json!({"b": 1, "a": [1, 2], "c": {"y": null, "x": "12345678901234567890123"}}));
        r.absorb(Verdict::Fail);
        let text = r.to_json();
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(reparsed.to_string(), text);
        assert!(text.find("\"alpha\"").unwrap() < text.find("\"zeta\"").unwrap());
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn tsv_has_header_and_rows() {
        let mut r = Report::new("demo");
        r.item(json!({"x": 1, "y": "2"}));
        r.item(json!({"x": 3, "y": "4"}));
        assert_eq!(r.to_tsv(), "x\ty\n1\t2\n3\t4\n");
    }
}
