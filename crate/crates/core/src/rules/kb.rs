//! Commonsense checks over merged events.
//!
//! `rules.tsv` lists one check per line:
//!
//! ```text
//! id  scope  check  action          (tab-separated)
//! innocent-not-sentenced  LegalEvent  forbids Judgment judgment_vs_sentence  DropField
//! ```
//!
//! Checks name a table, loaded from `<table>.tsv` beside the rule file:
//!
//! - `compatible A B table`: the values at paths A and B are equal or listed
//!   as a pair in the table (`*` matches anything).
//! - `forbids A table`: rows `value<TAB>field`; when A has that value the
//!   field must be absent. The field is the offending one.
//! - `trend D X Y table`: rows `value<TAB>relation` with relation `<`, `=`
//!   or `>`; when D has that value, X must relate to Y that way. D is the
//!   offending field.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use super::matcher::reading_node;
use super::{Diagnostic, ExtractedEvent};
use crate::model::schema::find_field;
use crate::model::{Decimal, EventKind, NewsEvent, Node};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    RejectFragment,
    DropField,
    PreferReading,
}

impl FromStr for Action {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "RejectFragment" => Ok(Action::RejectFragment),
            "DropField" => Ok(Action::DropField),
            "PreferReading" => Ok(Action::PreferReading),
            _ => Err(format!("unknown action `{s}`")),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Compatible { field: String, other: String, table: String },
    Forbids { field: String, table: String },
    Trend { direction: String, value: String, previous: String, table: String },
}

impl Check {
    fn table(&self) -> &str {
        match self {
            Check::Compatible { table, .. } | Check::Forbids { table, .. } | Check::Trend { table, .. } => table,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonsenseRule {
    pub id: String,
    pub scope: EventKind,
    pub check: Check,
    pub action: Action,
}

#[derive(Debug, Error)]
pub enum KbError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{file}:{line}: {message}")]
    Line { file: String, line: usize, message: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub rules: Vec<CommonsenseRule>,
    tables: HashMap<String, Vec<(String, String)>>,
}

fn rows(src: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    src.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('\t').map(str::trim).collect()))
}

fn valid_path(scope: EventKind, path: &str) -> bool {
    let mut fields = scope.fields();
    let mut parts = path.split('/').peekable();
    while let Some(p) = parts.next() {
        let Some(spec) = find_field(fields, p) else { return false };
        match spec.kind.children() {
            Some(sub) => fields = sub,
            None => return parts.peek().is_none(),
        }
    }
    false
}

impl KnowledgeBase {
    /// Parses `rules.tsv` text; `table` supplies the source of each named table.
    pub fn parse(
        rules_src: &str,
        mut table: impl FnMut(&str) -> Result<String, KbError>,
    ) -> Result<KnowledgeBase, KbError> {
        let mut kb = KnowledgeBase::default();
        for (line, cols) in rows(rules_src) {
            let bad = |message: String| KbError::Line { file: "rules.tsv".into(), line, message };
            let [id, scope, check, action] = cols[..] else {
                return Err(bad(format!("expected 4 columns, found {}", cols.len())));
            };
            let scope: EventKind = scope.parse().map_err(|_| bad(format!("unknown event variant `{scope}`")))?;
            let action: Action = action.parse().map_err(bad)?;
            let words: Vec<&str> = check.split_whitespace().collect();
            let check = match words[..] {
                ["compatible", a, b, t] => Check::Compatible { field: a.into(), other: b.into(), table: t.into() },
                ["forbids", a, t] => Check::Forbids { field: a.into(), table: t.into() },
                ["trend", d, x, y, t] => {
                    Check::Trend { direction: d.into(), value: x.into(), previous: y.into(), table: t.into() }
                }
                _ => return Err(bad(format!("cannot read check `{check}`"))),
            };
            let paths: Vec<&String> = match &check {
                Check::Compatible { field, other, .. } => vec![field, other],
                Check::Forbids { field, .. } => vec![field],
                Check::Trend { direction, value, previous, .. } => vec![direction, value, previous],
            };
            if let Some(p) = paths.into_iter().find(|p| !valid_path(scope, p)) {
                return Err(bad(format!("{scope} has no leaf field {p}")));
            }
            let name = check.table().to_string();
            if let std::collections::hash_map::Entry::Vacant(slot) = kb.tables.entry(name.clone()) {
                let src = table(&name)?;
                let mut pairs = Vec::new();
                for (tl, cols) in rows(&src) {
                    match cols[..] {
                        [a, b] => pairs.push((a.to_string(), b.to_string())),
                        _ => {
                            return Err(KbError::Line {
                                file: format!("{name}.tsv"),
                                line: tl,
                                message: "expected 2 columns".into(),
                            })
                        }
                    }
                }
                slot.insert(pairs);
            }
            kb.rules.push(CommonsenseRule { id: id.to_string(), scope, check, action });
        }
        Ok(kb)
    }

    /// Loads `rules.tsv` and the tables it names from `dir`.
    pub fn load_dir(dir: &Path) -> Result<KnowledgeBase, KbError> {
        let read = |p: &Path| {
            std::fs::read_to_string(p).map_err(|source| KbError::Io { path: p.display().to_string(), source })
        };
        let src = read(&dir.join("rules.tsv"))?;
        KnowledgeBase::parse(&src, |name| read(&dir.join(format!("{name}.tsv"))))
    }

    fn table(&self, name: &str) -> &[(String, String)] {
        self.tables.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    fn pair_ok(&self, table: &str, a: &str, b: &str) -> bool {
        a == b
            || self
                .table(table)
                .iter()
                .any(|(x, y)| (x == a || x == "*") && (y == b || y == "*"))
    }
}

fn get<'n>(node: &'n Node, path: &str) -> Option<&'n str> {
    let parts: Vec<&str> = path.split('/').collect();
    node.select(&parts).first().and_then(|n| n.text())
}

fn remove(node: &mut Node, path: &str) {
    let parts: Vec<&str> = path.split('/').collect();
    let (last, parents) = parts.split_last().unwrap();
    let mut cur = node;
    for p in parents {
        let Some(next) = cur.children_mut().and_then(|k| k.iter_mut().find(|c| c.name == *p)) else { return };
        cur = next;
    }
    if let Some(kids) = cur.children_mut() {
        kids.retain(|c| c.name != *last);
    }
}

enum Outcome {
    Keep,
    Reject,
}

/// The offending field when `rule` is violated by `node`.
fn violation(kb: &KnowledgeBase, rule: &CommonsenseRule, node: &Node) -> Option<(String, String)> {
    match &rule.check {
        Check::Compatible { field, other, table } => {
            let (a, b) = (get(node, field)?, get(node, other)?);
            (!kb.pair_ok(table, a, b)).then(|| (other.clone(), format!("{field}={a} does not fit {other}={b}")))
        }
        Check::Forbids { field, table } => {
            let value = get(node, field)?;
            kb.table(table)
                .iter()
                .find(|(v, f)| v == value && !node.select(&f.split('/').collect::<Vec<_>>()).is_empty())
                .map(|(_, f)| (f.clone(), format!("{field}={value} excludes {f}")))
        }
        Check::Trend { direction, value, previous, table } => {
            let d = get(node, direction)?;
            let x: Decimal = get(node, value)?.parse().ok()?;
            let y: Decimal = get(node, previous)?.parse().ok()?;
            let actual = match x.cmp_value(&y) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            let (_, want) = kb.table(table).iter().find(|(v, _)| v == d)?;
            (want != actual).then(|| {
                (direction.clone(), format!("{direction}={d} but {value} {actual} {previous}"))
            })
        }
    }
}

/// Re-binds the field named by `path` to an alternative reading that
/// passes `rule`; returns the new field path on success.
fn prefer(kb: &KnowledgeBase, rule: &CommonsenseRule, node: &mut Node, ev: &mut ExtractedEvent) -> Option<String> {
    let Check::Compatible { other, .. } = &rule.check else { return None };
    let top = other.split('/').next()?;
    let spec = find_field(rule.scope.fields(), top)?;
    let slot = ev.alternatives.iter().position(|(p, _)| p == top)?;
    let readings = &ev.alternatives[slot].1;
    for (i, r) in readings.iter().enumerate() {
        let Some(candidate) = reading_node(r, top, spec.kind) else { continue };
        let mut trial = node.clone();
        let kids = trial.children_mut()?;
        let at = kids.iter().position(|c| c.name == top)?;
        kids[at] = candidate;
        if violation(kb, rule, &trial).is_none() {
            *node = trial;
            ev.alternatives[slot].1.remove(i);
            return Some(top.to_string());
        }
    }
    None
}

fn decode(node: &Node) -> Option<NewsEvent> {
    let mut errors = Vec::new();
    let ev = NewsEvent::from_node(node, &mut errors)?;
    errors.is_empty().then_some(ev)
}

fn check_event(kb: &KnowledgeBase, index: usize, ev: &mut ExtractedEvent, diags: &mut Vec<Diagnostic>) -> Outcome {
    let kind = ev.event.kind();
    let mut node = ev.event.to_node();
    let location = format!("event {index} {}", kind.tag());
    for rule in kb.rules.iter().filter(|r| r.scope == kind) {
        // A rule may fire more than once, e.g. to drop every forbidden field.
        for _ in 0..=kind.fields().len() {
            let Some((field, why)) = violation(kb, rule, &node) else { break };
            let message = match rule.action {
                Action::RejectFragment => {
                    diags.push(Diagnostic::new("commonsense", &rule.id, location, format!("{why}; event rejected")));
                    return Outcome::Reject;
                }
                Action::DropField => {
                    let before = node.clone();
                    remove(&mut node, &field);
                    if decode(&node).is_none() {
                        node = before;
                        break;
                    }
                    format!("{why}; dropped {field}")
                }
                Action::PreferReading => match prefer(kb, rule, &mut node, ev) {
                    Some(path) => format!("{why}; re-bound {path} to another reading"),
                    None => break,
                },
            };
            diags.push(Diagnostic::new("commonsense", &rule.id, location.clone(), message));
        }
    }
    if let Some(e) = decode(&node) {
        ev.event = e;
    }
    Outcome::Keep
}

/// Runs every in-scope check against every event, keeping alternative
/// readings available for re-binding.
pub fn apply_commonsense_extracted(
    events: Vec<ExtractedEvent>,
    kb: &KnowledgeBase,
) -> (Vec<ExtractedEvent>, Vec<Diagnostic>) {
    let mut diags = Vec::new();
    let mut out = Vec::new();
    for (i, mut ev) in events.into_iter().enumerate() {
        if let Outcome::Keep = check_event(kb, i, &mut ev, &mut diags) {
            out.push(ev);
        }
    }
    (out, diags)
}

/// Runs every in-scope check against every event.
pub fn apply_commonsense(events: Vec<NewsEvent>, kb: &KnowledgeBase) -> (Vec<NewsEvent>, Vec<Diagnostic>) {
    let wrapped = events.into_iter().map(|event| ExtractedEvent { event, alternatives: Vec::new() }).collect();
    let (out, diags) = apply_commonsense_extracted(wrapped, kb);
    (out.into_iter().map(|e| e.event).collect(), diags)
}
