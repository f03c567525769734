//! Closed-vocabulary fields of the schema and single-field test events.

use newsform::model::schema::{FieldKind, FieldSpec, LeafKind};
use newsform::model::{EventKind, Head, NewsEvent, NewsForm, Node};

/// Every closed-vocabulary leaf reachable from an event: variant, path, values.
pub fn term_fields() -> Vec<(EventKind, Vec<&'static str>, &'static [&'static str])> {
    fn walk(
        kind: EventKind,
        fields: &'static [FieldSpec],
        prefix: &[&'static str],
        out: &mut Vec<(EventKind, Vec<&'static str>, &'static [&'static str])>,
    ) {
        for f in fields {
            let mut path = prefix.to_vec();
            path.push(f.tag);
            match f.kind {
                FieldKind::Leaf(LeafKind::Term(values)) => out.push((kind, path, values)),
                FieldKind::Leaf(_) => {}
                composite => walk(kind, composite.children().unwrap(), &path, out),
            }
        }
    }
    let mut out = Vec::new();
    for &kind in EventKind::ALL {
        walk(kind, kind.fields(), &[], &mut out);
    }
    out
}

pub fn event_with(kind: EventKind, path: &[&str], value: &str) -> Node {
    let mut node = Node::leaf(*path.last().unwrap(), value);
    for tag in path[..path.len() - 1].iter().rev() {
        node = Node::branch(*tag, vec![node]);
    }
    Node::branch(kind.tag(), vec![node])
}

pub fn accepted(node: &Node) -> bool {
    let mut errors = Vec::new();
    let Some(ev) = NewsEvent::from_node(node, &mut errors) else { return false };
    let report = NewsForm { head: Head::default(), events: vec![ev] }.validate();
    errors.is_empty() && report.errors.iter().all(|e| e.code == "required")
}

pub fn mutate(v: &str, how: u8) -> String {
    match how % 4 {
        0 => v.to_lowercase(),
        1 => format!("{v}x"),
        2 => v.chars().skip(1).collect(),
        _ => {
            let mid = v.len() / 2;
            format!("{}-{}", &v[..mid], &v[mid..])
        }
    }
}
