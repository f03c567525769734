//! Time-bucketed counts and geographic sentiment tallies.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, Days, NaiveDate};

use super::{CorpusIndex, Query};
use crate::model::schema::FieldKind;
use crate::model::{classify_sentiment, EventKind, NewsEvent, Node, Sentiment};

/// Label of the tally for events without a country.
pub const UNLOCATED: &str = "UNLOCATED";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bucket {
    Day,
    /// ISO weeks, starting Monday.
    Week,
}

impl FromStr for Bucket {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "day" => Ok(Bucket::Day),
            "week" => Ok(Bucket::Week),
            _ => Err(format!("unknown bucket `{s}` (use day or week)")),
        }
    }
}

impl Bucket {
    fn start(&self, d: NaiveDate) -> NaiveDate {
        match self {
            Bucket::Day => d,
            Bucket::Week => d - Days::new(u64::from(d.weekday().num_days_from_monday())),
        }
    }

    fn step(&self) -> Days {
        match self {
            Bucket::Day => Days::new(1),
            Bucket::Week => Days::new(7),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Bucket start and event count, gap-free from first to last bucket.
    pub buckets: Vec<(NaiveDate, usize)>,
    /// Matching events in documents without a dateline.
    pub undated: usize,
}

/// Counts `variant` events per UTC day or week of their document's dateline.
pub fn stats(ix: &CorpusIndex, variant: EventKind, bucket: Bucket) -> Stats {
    let mut counts: BTreeMap<NaiveDate, usize> = BTreeMap::new();
    let mut undated = 0;
    for doc in ix.docs() {
        let n = doc.form.events.iter().filter(|e| e.kind() == variant).count();
        if n == 0 {
            continue;
        }
        match doc.dateline() {
            Some(t) => *counts.entry(bucket.start(t.0.date_naive())).or_default() += n,
            None => undated += n,
        }
    }
    let mut buckets = Vec::new();
    if let (Some(&first), Some(&last)) = (counts.keys().next(), counts.keys().next_back()) {
        let mut d = first;
        while d <= last {
            buckets.push((d, counts.get(&d).copied().unwrap_or(0)));
            d = d + bucket.step();
        }
    }
    Stats { buckets, undated }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub positive: usize,
    pub negative: usize,
    pub other: usize,
}

impl Tally {
    pub fn total(&self) -> usize {
        self.positive + self.negative + self.other
    }

    fn add(&mut self, s: Sentiment) {
        match s {
            Sentiment::Positive => self.positive += 1,
            Sentiment::Negative => self.negative += 1,
            Sentiment::Other => self.other += 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeoDistribution {
    pub countries: BTreeMap<String, Tally>,
    pub unlocated: Tally,
}

impl GeoDistribution {
    pub fn is_empty(&self) -> bool {
        self.countries.is_empty() && self.unlocated.total() == 0
    }

    /// `country<TAB>positive<TAB>negative<TAB>other` rows, then `UNLOCATED`.
    pub fn lines(&self) -> Vec<String> {
        let row = |k: &str, t: &Tally| format!("{k}\t{}\t{}\t{}", t.positive, t.negative, t.other);
        let mut out: Vec<String> = self.countries.iter().map(|(k, t)| row(k, t)).collect();
        out.push(row(UNLOCATED, &self.unlocated));
        out
    }
}

impl fmt::Display for GeoDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.lines() {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Country of an event: AtLocation, then ToLocation, then the first
/// party (in field order) that carries one.
pub fn event_country(event: &NewsEvent, node: &Node) -> Option<String> {
    for loc in ["AtLocation", "ToLocation"] {
        if let Some(c) = node.child(loc).and_then(|l| l.child("Country")).and_then(Node::text) {
            return Some(c.to_string());
        }
    }
    let fields = event.kind().fields();
    for f in fields {
        let party = match f.kind {
            FieldKind::Party => true,
            FieldKind::Record(sub) => sub == crate::model::Person::FIELDS || sub == crate::model::Organization::FIELDS,
            _ => false,
        };
        if !party {
            continue;
        }
        for c in node.children().iter().filter(|c| c.name == f.tag) {
            if let Some(code) = c.child("Country").and_then(Node::text) {
                return Some(code.to_string());
            }
        }
    }
    None
}

/// Sentiment tallies per country over the events matching `q`.
pub fn geo_distribution(ix: &CorpusIndex, q: &Query) -> GeoDistribution {
    let mut geo = GeoDistribution::default();
    for (d, e) in ix.matching_events(q) {
        let doc = &ix.docs()[d];
        let event = &doc.form.events[e];
        let s = classify_sentiment(event);
        match event_country(event, &doc.event_nodes()[e]) {
            Some(c) => geo.countries.entry(c).or_default().add(s),
            None => geo.unlocated.add(s),
        }
    }
    geo
}
