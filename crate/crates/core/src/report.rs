//! Self-describing outcome of one identity verification. Reports are
//! re-runnable from the parameter set alone and serialize as JSON lines
//! with a fixed field order, so suite output is byte-deterministic.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Serialize, Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            params: BTreeMap::new(),
            lhs: String::new(),
            rhs: String::new(),
            pass: false,
            note: None,
            skipped: false,
        }
    }

    pub fn param<V: ToString>(mut self, key: &str, value: V) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn sides<L: ToString, R: ToString>(mut self, lhs: L, rhs: R) -> Self {
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self.pass = self.lhs == self.rhs;
        self
    }

    /// Equality decided by the caller (e.g. whole-element comparisons where
    /// lhs/rhs strings are digests).
    pub fn verdict(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn noted(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    /// A check intentionally not run (budget or trivial case); counts as
    /// non-failing but is visibly flagged.
    pub fn skip(mut self, reason: &str) -> Self {
        self.skipped = true;
        self.pass = true;
        self.note = Some(reason.to_string());
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }

    /// Flat CSV row: name,pass,skipped,params,lhs,rhs,note.
    pub fn to_csv_row(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        let esc = |s: &str| s.replace('"', "\"\"");
        format!(
            "\"{}\",{},{},\"{}\",\"{}\",\"{}\",\"{}\"",
            esc(&self.name),
            self.pass,
            self.skipped,
            esc(&params),
            esc(&self.lhs),
            esc(&self.rhs),
            esc(self.note.as_deref().unwrap_or(""))
        )
    }
}

pub const CSV_HEADER: &str = "name,pass,skipped,params,lhs,rhs,note";
