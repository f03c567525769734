//! Combining per-sentence fragments into document events.

use super::{Alternatives, Diagnostic, ExtractedEvent, Fragment};
use crate::model::schema::{find_field, FieldKind, FieldSpec};
use crate::model::{EventKind, NewsEvent, Node};

/// Folds `from` into `into`; conflicting single-valued leaves keep `into`'s value.
fn merge_node(into: &mut Node, from: &Node, fields: &'static [FieldSpec], path: &str, conflicts: &mut Vec<String>) {
    for c in from.children() {
        let Some(spec) = find_field(fields, &c.name) else { continue };
        let cpath = format!("{path}/{}", c.name);
        let kids = into.children_mut().expect("event nodes are composite");
        if spec.repeated {
            if !kids.contains(c) {
                kids.push(c.clone());
            }
            continue;
        }
        match kids.iter_mut().find(|k| k.name == c.name) {
            None => kids.push(c.clone()),
            Some(existing) if existing == c => {}
            Some(existing) => match spec.kind {
                FieldKind::Record(sub) if !existing.is_leaf() && !c.is_leaf() => {
                    merge_node(existing, c, sub, &cpath, conflicts);
                }
                _ => conflicts.push(cpath),
            },
        }
    }
}

/// Puts children back in declared field order.
fn reorder(node: &mut Node, fields: &'static [FieldSpec]) {
    if let Some(kids) = node.children_mut() {
        kids.sort_by_key(|k| fields.iter().position(|f| f.tag == k.name).unwrap_or(usize::MAX));
        for k in kids.iter_mut() {
            if let Some(FieldKind::Record(sub)) = find_field(fields, &k.name).map(|f| f.kind) {
                reorder(k, sub);
            }
        }
    }
}

/// Merges fragments of the same event variant into one event each, in
/// order of first appearance. Fragments are taken in sentence order, then
/// rule priority, then rule order, so the earliest sentence wins conflicts.
pub fn merge_fragments(frags: &[Fragment]) -> (Vec<ExtractedEvent>, Vec<Diagnostic>) {
    let mut order: Vec<&Fragment> = frags.iter().collect();
    order.sort_by(|a, b| {
        a.sentence_index
            .cmp(&b.sentence_index)
            .then(b.priority.cmp(&a.priority))
            .then(a.order.cmp(&b.order))
            .then(a.tokens.start.cmp(&b.tokens.start))
    });

    let mut groups: Vec<(EventKind, Node, Alternatives)> = Vec::new();
    let mut diags = Vec::new();
    for f in order {
        let kind = f.event.kind();
        let node = f.event.to_node();
        match groups.iter_mut().find(|(k, _, _)| *k == kind) {
            None => groups.push((kind, node, f.alternatives.clone())),
            Some((_, into, alts)) => {
                let before = into.clone();
                let mut conflicts = Vec::new();
                merge_node(into, &node, kind.fields(), kind.tag(), &mut conflicts);
                reorder(into, kind.fields());
                if decode(into).is_none() {
                    *into = before;
                    conflicts.push(kind.tag().to_string());
                }
                for path in conflicts {
                    diags.push(Diagnostic::new(
                        "merge",
                        &f.rule_id,
                        format!("sentence {}", f.sentence_index),
                        format!("conflicting value for {path}; kept the earlier one"),
                    ));
                }
                for (path, readings) in &f.alternatives {
                    if !alts.iter().any(|(p, _)| p == path) {
                        alts.push((path.clone(), readings.clone()));
                    }
                }
            }
        }
    }
    let events = groups
        .into_iter()
        .filter_map(|(_, node, alternatives)| Some(ExtractedEvent { event: decode(&node)?, alternatives }))
        .collect();
    (events, diags)
}

fn decode(node: &Node) -> Option<NewsEvent> {
    let mut errors = Vec::new();
    let ev = NewsEvent::from_node(node, &mut errors)?;
    errors.is_empty().then_some(ev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Count, InjuryFatality, Weather};

    fn frag(event: NewsEvent, sentence_index: usize) -> Fragment {
        Fragment {
            event,
            bindings: vec![],
            alternatives: vec![],
            sentence_index,
            rule_id: "t".into(),
            priority: 1,
            order: 0,
            tokens: 0..1,
        }
    }

    fn quake(cause: Option<&str>, killed: Option<i64>) -> NewsEvent {
        InjuryFatality {
            cause: cause.map(crate::model::Cause::new),
            killed_count: killed.map(Count),
            ..Default::default()
        }
        .into()
    }

    #[test]
    fn disjoint_fields_union() {
        let (ev, d) = merge_fragments(&[frag(quake(Some("Earthquake"), None), 0), frag(quake(None, Some(143)), 1)]);
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].event, quake(Some("Earthquake"), Some(143)));
        assert!(d.is_empty());
    }

    #[test]
    fn earliest_wins() {
        let (ev, d) = merge_fragments(&[frag(quake(None, Some(150)), 2), frag(quake(None, Some(143)), 0)]);
        assert_eq!(ev[0].event, quake(None, Some(143)));
        assert_eq!(d.len(), 1);
        assert!(d[0].message.contains("InjuryFatality/KilledCount"), "{}", d[0]);
    }

    #[test]
    fn variants_never_merge() {
        let (ev, _) = merge_fragments(&[frag(quake(Some("Earthquake"), None), 0), frag(Weather::default().into(), 0)]);
        assert_eq!(ev.len(), 2);
        assert!(merge_fragments(&[]).0.is_empty());
    }
}
