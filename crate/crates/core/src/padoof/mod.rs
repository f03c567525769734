//! Corpus index and query engine over NewsForm documents.

mod query;
mod stats;

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use crate::model::schema::{FieldKind, LeafKind};
use crate::model::{EventKind, NewsForm, Node, Timestamp};
use crate::xmlcodec::parse_newsform;

pub use query::{leaf_value, node_value, parse_query, resolve_path, Op, Predicate, Query, QueryError, SortKey, Value};
pub use stats::{geo_distribution, stats, Bucket, GeoDistribution, Stats, Tally, UNLOCATED};

/// File suffix of corpus documents.
pub const SUFFIX: &str = ".newsform.xml";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedDoc {
    pub id: String,
    pub path: PathBuf,
    pub form: NewsForm,
    events: Vec<Node>,
}

impl IndexedDoc {
    pub fn new(id: impl Into<String>, path: impl Into<PathBuf>, form: NewsForm) -> Self {
        let events = form.events.iter().map(|e| e.to_node()).collect();
        IndexedDoc { id: id.into(), path: path.into(), form, events }
    }

    /// Event records as element trees, in document order.
    pub fn event_nodes(&self) -> &[Node] {
        &self.events
    }

    pub fn dateline(&self) -> Option<Timestamp> {
        self.form.head.dateline_time
    }
}

/// `(event variant, field path, normalized value)`.
pub type PostingKey = (String, String, String);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusIndex {
    docs: Vec<IndexedDoc>,
    postings: BTreeMap<PostingKey, BTreeSet<usize>>,
    time_index: BTreeMap<Timestamp, Vec<usize>>,
}

/// Canonical text of a leaf for posting lookup: numbers lose trailing zeros.
pub fn normalize_leaf(kind: FieldKind, text: &str) -> String {
    match kind {
        FieldKind::Leaf(LeafKind::Integer | LeafKind::Decimal) => match text.trim().parse::<crate::model::Decimal>() {
            Ok(d) => d.normalized().to_string(),
            Err(_) => text.to_string(),
        },
        _ => text.to_string(),
    }
}

impl CorpusIndex {
    /// Indexes documents; they are kept in doc-id order.
    pub fn from_docs(mut docs: Vec<IndexedDoc>) -> CorpusIndex {
        docs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut postings: BTreeMap<PostingKey, BTreeSet<usize>> = BTreeMap::new();
        let mut time_index: BTreeMap<Timestamp, Vec<usize>> = BTreeMap::new();
        for (i, d) in docs.iter().enumerate() {
            if let Some(t) = d.dateline() {
                time_index.entry(t).or_default().push(i);
            }
            for (ev, node) in d.form.events.iter().zip(&d.events) {
                let kind = ev.kind();
                for (path, text) in node.leaves() {
                    let segs: Vec<String> = path.split('/').map(str::to_string).collect();
                    let fk = resolve_path(kind, &segs).unwrap_or(FieldKind::Leaf(LeafKind::Text));
                    let key = (kind.tag().to_string(), path, normalize_leaf(fk, text));
                    postings.entry(key).or_default().insert(i);
                }
            }
        }
        CorpusIndex { docs, postings, time_index }
    }

    pub fn docs(&self) -> &[IndexedDoc] {
        &self.docs
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn postings(&self) -> &BTreeMap<PostingKey, BTreeSet<usize>> {
        &self.postings
    }

    pub fn time_index(&self) -> &BTreeMap<Timestamp, Vec<usize>> {
        &self.time_index
    }

    /// Docs holding `value` at `path` (slash-separated) in some `variant` event.
    pub fn posting(&self, variant: EventKind, path: &str, value: &str) -> Option<&BTreeSet<usize>> {
        self.postings.get(&(variant.tag().to_string(), path.to_string(), value.to_string()))
    }

    fn in_window(&self, doc: &IndexedDoc, q: &Query) -> bool {
        if q.since.is_none() && q.until.is_none() {
            return true;
        }
        let Some(t) = doc.dateline() else { return false };
        q.since.is_none_or(|s| t >= s) && q.until.is_none_or(|u| t <= u)
    }

    /// Candidate docs: narrowed through postings when an `=` predicate allows.
    fn candidates(&self, q: &Query) -> Vec<usize> {
        let eq = q.predicates.iter().find(|p| p.op == Op::Eq && matches!(p.kind, FieldKind::Leaf(_)));
        match (q.variant, eq) {
            (Some(k), Some(p)) => {
                let value = normalize_leaf(p.kind, &p.value.to_string());
                self.posting(k, &p.path.join("/"), &value).map(|s| s.iter().copied().collect()).unwrap_or_default()
            }
            _ => (0..self.docs.len()).collect(),
        }
    }

    /// `(doc, event)` index pairs of every event satisfying `q`.
    pub fn matching_events(&self, q: &Query) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for d in self.candidates(q) {
            let doc = &self.docs[d];
            if !self.in_window(doc, q) {
                continue;
            }
            for (e, node) in doc.events.iter().enumerate() {
                if q.matches_event(node) {
                    out.push((d, e));
                }
            }
        }
        out
    }
}

/// One query result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hit {
    pub doc: usize,
    pub id: String,
    pub path: PathBuf,
    pub sort_value: Option<Value>,
}

impl Hit {
    /// `doc_id<TAB>source_path<TAB>sort_key_value`.
    pub fn line(&self) -> String {
        let v = self.sort_value.as_ref().map(Value::to_string).unwrap_or_default();
        format!("{}\t{}\t{v}", self.id, self.path.display())
    }
}

/// Docs with at least one event satisfying every predicate, sorted by the
/// sort key (missing values last) and then by doc id.
pub fn query(ix: &CorpusIndex, q: &Query) -> Vec<Hit> {
    let mut hits: Vec<Hit> = Vec::new();
    for (d, e) in ix.matching_events(q) {
        let doc = &ix.docs[d];
        let v = q.sort_value(&doc.events[e]);
        match hits.last_mut() {
            Some(h) if h.doc == d => {
                if better(q, &v, &h.sort_value) {
                    h.sort_value = v;
                }
            }
            _ => hits.push(Hit { doc: d, id: doc.id.clone(), path: doc.path.clone(), sort_value: v }),
        }
    }
    if let Some(key) = &q.sort {
        hits.sort_by(|a, b| match (&a.sort_value, &b.sort_value) {
            (Some(x), Some(y)) => {
                let o = x.compare(y).unwrap_or(std::cmp::Ordering::Equal);
                if key.descending {
                    o.reverse()
                } else {
                    o
                }
            }
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        });
    }
    hits
}

fn better(q: &Query, new: &Option<Value>, old: &Option<Value>) -> bool {
    let desc = q.sort.as_ref().is_some_and(|k| k.descending);
    match (new, old) {
        (Some(n), Some(o)) => n.compare(o).is_some_and(|c| if desc { c.is_gt() } else { c.is_lt() }),
        (Some(_), None) => true,
        _ => false,
    }
}

/// `*.newsform.xml` files directly in `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.file_name().is_some_and(|n| n.to_string_lossy().ends_with(SUFFIX)))
        .collect();
    files.sort();
    Ok(files)
}

/// Doc id of a corpus file: its name without the suffix.
pub fn doc_id(path: &Path) -> String {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    name.strip_suffix(SUFFIX).map(str::to_string).unwrap_or(name)
}

/// Reads, parses and indexes each file. Unreadable or invalid files are
/// skipped; each yields one diagnostic line.
pub fn build_index(paths: &[PathBuf]) -> (CorpusIndex, Vec<String>) {
    let mut docs: Vec<IndexedDoc> = Vec::new();
    let mut diags = Vec::new();
    let mut seen = BTreeSet::new();
    for p in paths {
        let text = match std::fs::read_to_string(p) {
            Ok(t) => t,
            Err(e) => {
                diags.push(format!("{}: {e}", p.display()));
                continue;
            }
        };
        match parse_newsform(&text) {
            Ok(form) => {
                let id = doc_id(p);
                if !seen.insert(id.clone()) {
                    diags.push(format!("{}: duplicate doc id `{id}`, skipped", p.display()));
                    continue;
                }
                docs.push(IndexedDoc::new(id, p.clone(), form));
            }
            Err(e) => diags.push(format!("{}: {}", p.display(), e.to_string().replace('\n', "; "))),
        }
    }
    (CorpusIndex::from_docs(docs), diags)
}
