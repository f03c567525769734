//! Positive / negative / other classification of events.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use super::events::{EventKind, NewsEvent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sentiment {
    Positive,
    Negative,
    Other,
}

impl fmt::Display for Sentiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sentiment::Positive => "Positive",
            Sentiment::Negative => "Negative",
            Sentiment::Other => "Other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Condition {
    Always,
    Present(Vec<String>),
    Equals(Vec<String>, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    kind: EventKind,
    condition: Condition,
    sentiment: Sentiment,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sentiment table line {line}: {message}")]
pub struct SentimentTableError {
    pub line: usize,
    pub message: String,
}

/// Ordered classification rows; the first matching row decides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SentimentTable {
    rows: Vec<Row>,
}

const DEFAULT_TABLE: &str = include_str!("../../../../data/kb/sentiment.tsv");

impl SentimentTable {
    pub fn parse(src: &str) -> Result<Self, SentimentTableError> {
        let mut rows = Vec::new();
        for (i, line) in src.lines().enumerate() {
            let line_no = i + 1;
            let err = |message: String| SentimentTableError { line: line_no, message };
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let [variant, cond, sentiment] = cols[..] else {
                return Err(err(format!("expected 3 columns, found {}", cols.len())));
            };
            let kind = EventKind::from_tag(variant.trim())
                .ok_or_else(|| err(format!("unknown event type `{variant}`")))?;
            let split = |p: &str| p.split('/').map(str::to_string).collect::<Vec<_>>();
            let condition = match cond.trim() {
                "*" => Condition::Always,
                c => match c.split_once('=') {
                    Some((path, value)) => Condition::Equals(split(path.trim()), value.trim().into()),
                    None => Condition::Present(split(c)),
                },
            };
            let sentiment = match sentiment.trim() {
                "Positive" => Sentiment::Positive,
                "Negative" => Sentiment::Negative,
                "Other" => Sentiment::Other,
                s => return Err(err(format!("unknown sentiment `{s}`"))),
            };
            rows.push(Row { kind, condition, sentiment });
        }
        Ok(SentimentTable { rows })
    }

    /// The table shipped in `data/kb/sentiment.tsv`.
    pub fn builtin() -> &'static SentimentTable {
        static TABLE: OnceLock<SentimentTable> = OnceLock::new();
        TABLE.get_or_init(|| SentimentTable::parse(DEFAULT_TABLE).expect("builtin sentiment table"))
    }

    pub fn classify(&self, ev: &NewsEvent) -> Sentiment {
        let kind = ev.kind();
        let mut node = None;
        for row in self.rows.iter().filter(|r| r.kind == kind) {
            let hit = match &row.condition {
                Condition::Always => true,
                Condition::Present(path) | Condition::Equals(path, _) => {
                    let node = node.get_or_insert_with(|| ev.to_node());
                    let segs: Vec<&str> = path.iter().map(String::as_str).collect();
                    let found = node.select(&segs);
                    match &row.condition {
                        Condition::Equals(_, v) => found.iter().any(|n| n.text() == Some(v)),
                        _ => !found.is_empty(),
                    }
                }
            };
            if hit {
                return row.sentiment;
            }
        }
        Sentiment::Other
    }
}

/// Classifies with the built-in table.
pub fn classify_sentiment(ev: &NewsEvent) -> Sentiment {
    SentimentTable::builtin().classify(ev)
}
