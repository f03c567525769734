//! Brute-force query evaluation over raw corpus XML, independent of the
//! index, plus a seeded generator of queries with their expected results.

use std::collections::BTreeMap;
use std::path::PathBuf;

use newsform::model::schema::{FieldKind, FieldSpec, LeafKind};
use newsform::model::EventKind;
use newsform::padoof::{build_index, corpus_files, doc_id, parse_query, query, CorpusIndex};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{fixture_corpus, random_leaf};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Class {
    Num,
    Time,
    Money,
    Text,
}

pub fn class_of(kind: FieldKind) -> Class {
    match kind {
        FieldKind::Leaf(LeafKind::Integer | LeafKind::Decimal) => Class::Num,
        FieldKind::Leaf(LeafKind::Timestamp) => Class::Time,
        FieldKind::Money => Class::Money,
        _ => Class::Text,
    }
}

#[derive(Clone, Debug)]
pub struct Pred {
    pub path: Vec<String>,
    pub class: Class,
    pub op: &'static str,
    pub lit: String,
}

#[derive(Clone, Debug, Default)]
pub struct OracleQuery {
    pub text: String,
    pub variant: Option<String>,
    pub preds: Vec<Pred>,
    pub sort: Option<(Vec<String>, bool)>,
    pub since: Option<String>,
    pub until: Option<String>,
}

/// A parsed corpus document: id, dateline and its event elements.
pub struct RawDoc {
    pub id: String,
    pub dateline: Option<String>,
    pub events: Vec<RawNode>,
}

#[derive(Clone, Debug)]
pub struct RawNode {
    pub name: String,
    pub text: String,
    pub children: Vec<RawNode>,
}

pub fn raw(n: roxmltree::Node) -> RawNode {
    RawNode {
        name: n.tag_name().name().to_string(),
        text: n.text().unwrap_or_default().trim().to_string(),
        children: n.children().filter(|c| c.is_element()).map(raw).collect(),
    }
}

pub fn load_raw(files: &[PathBuf]) -> Vec<RawDoc> {
    let mut docs: Vec<RawDoc> = files
        .iter()
        .map(|p| {
            let src = std::fs::read_to_string(p).unwrap();
            let xml = roxmltree::Document::parse(&src).unwrap();
            let root = raw(xml.root_element());
            let head = root.children.iter().find(|c| c.name == "Head");
            let dateline = head.and_then(|h| h.children.iter().find(|c| c.name == "DatelineTime")).map(|d| d.text.clone());
            let events = root.children.into_iter().filter(|c| c.name != "Head").collect();
            RawDoc { id: doc_id(p), dateline, events }
        })
        .collect();
    docs.sort_by(|a, b| a.id.cmp(&b.id));
    docs
}

pub fn at<'a>(node: &'a RawNode, path: &[String]) -> Vec<&'a RawNode> {
    match path.split_first() {
        None => vec![node],
        Some((head, rest)) => node.children.iter().filter(|c| &c.name == head).flat_map(|c| at(c, rest)).collect(),
    }
}

pub fn num(s: &str) -> f64 {
    s.trim().parse().unwrap()
}

pub fn money(node: &RawNode) -> (f64, String) {
    let get = |t: &str| node.children.iter().find(|c| c.name == t).unwrap().text.clone();
    (num(&get("Amount")), get("Currency"))
}

pub fn ord_holds(op: &str, o: std::cmp::Ordering) -> bool {
    use std::cmp::Ordering::*;
    match op {
        "=" => o == Equal,
        "!=" => o != Equal,
        "<" => o == Less,
        "<=" => o != Greater,
        ">" => o == Greater,
        ">=" => o != Less,
        _ => unreachable!(),
    }
}

pub fn pred_holds(p: &Pred, event: &RawNode) -> bool {
    at(event, &p.path).into_iter().any(|n| match p.class {
        Class::Num => ord_holds(p.op, num(&n.text).partial_cmp(&num(&p.lit)).unwrap()),
        Class::Time => ord_holds(p.op, n.text.as_str().cmp(p.lit.as_str())),
        Class::Money => {
            let (amount, cur) = money(n);
            let (lit_amount, lit_cur) = p.lit.split_once(' ').unwrap();
            cur == lit_cur && ord_holds(p.op, amount.partial_cmp(&num(lit_amount)).unwrap())
        }
        Class::Text => match p.op {
            "=" => n.text == p.lit,
            "!=" => n.text != p.lit,
            "contains" => n.text.to_lowercase().contains(&p.lit.to_lowercase()),
            _ => unreachable!(),
        },
    })
}

/// Ids and numeric sort values of matching docs, in result order.
pub fn oracle(docs: &[RawDoc], q: &OracleQuery) -> Vec<(String, Option<f64>)> {
    let mut out = Vec::new();
    for d in docs {
        if q.since.is_some() || q.until.is_some() {
            let Some(t) = &d.dateline else { continue };
            if q.since.as_ref().is_some_and(|s| t < s) || q.until.as_ref().is_some_and(|u| t > u) {
                continue;
            }
        }
        let matching: Vec<&RawNode> = d
            .events
            .iter()
            .filter(|e| q.variant.as_ref().is_none_or(|v| &e.name == v) && q.preds.iter().all(|p| pred_holds(p, e)))
            .collect();
        if matching.is_empty() {
            continue;
        }
        let value = q.sort.as_ref().and_then(|(path, desc)| {
            let vals = matching.iter().flat_map(|e| at(e, path)).map(|n| num(&n.text));
            if *desc {
                vals.reduce(f64::max)
            } else {
                vals.reduce(f64::min)
            }
        });
        out.push((d.id.clone(), value));
    }
    if let Some((_, desc)) = &q.sort {
        out.sort_by(|a, b| match (a.1, b.1) {
            (Some(x), Some(y)) => {
                let o = x.partial_cmp(&y).unwrap();
                if *desc {
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
    out
}

pub fn leaf_paths(fields: &'static [FieldSpec], prefix: &[String], depth: usize, out: &mut Vec<(Vec<String>, FieldKind)>) {
    for f in fields {
        let mut path = prefix.to_vec();
        path.push(f.tag.to_string());
        match f.kind {
            FieldKind::Leaf(_) | FieldKind::Money => out.push((path, f.kind)),
            FieldKind::Record(_) | FieldKind::Party if depth < 2 => {
                leaf_paths(f.kind.children().unwrap(), &path, depth + 1, out)
            }
            _ => {}
        }
    }
}

/// Values present in the corpus, per variant and path.
pub fn value_pool(docs: &[RawDoc]) -> BTreeMap<(String, Vec<String>), Vec<String>> {
    fn walk(n: &RawNode, variant: &str, path: &mut Vec<String>, pool: &mut BTreeMap<(String, Vec<String>), Vec<String>>) {
        let is_money = n.children.iter().any(|c| c.name == "Currency");
        if n.children.is_empty() || is_money {
            let v = if is_money {
                let (a, c) = money(n);
                format!("{a} {c}")
            } else {
                n.text.clone()
            };
            pool.entry((variant.to_string(), path.clone())).or_default().push(v);
            if !is_money {
                return;
            }
        }
        for c in &n.children {
            path.push(c.name.clone());
            walk(c, variant, path, pool);
            path.pop();
        }
    }
    let mut pool = BTreeMap::new();
    for d in docs {
        for e in &d.events {
            walk(e, &e.name, &mut Vec::new(), &mut pool);
        }
    }
    pool
}

pub fn literal(rng: &mut ChaCha8Rng, kind: FieldKind, class: Class, op: &str, pool: Option<&Vec<String>>) -> String {
    if let Some(v) = pool.filter(|_| rng.gen_bool(0.75)).and_then(|p| p.choose(rng)) {
        return match (class, op) {
            (Class::Text, "contains") => {
                let chars: Vec<char> = v.chars().collect();
                let a = rng.gen_range(0..chars.len());
                let b = rng.gen_range(a + 1..=chars.len());
                let s: String = chars[a..b].iter().collect();
                if rng.gen_bool(0.5) {
                    s.to_uppercase()
                } else {
                    s
                }
            }
            (Class::Num, _) if rng.gen_bool(0.3) => format!("{}", num(v) + f64::from(rng.gen_range(-2..=2))),
            _ => v.clone(),
        };
    }
    match kind {
        FieldKind::Money => format!("{} {}", rng.gen_range(0..200), ["USD", "EUR"].choose(rng).unwrap()),
        FieldKind::Leaf(k) => random_leaf(rng, k),
        _ => unreachable!(),
    }
}

pub fn render(class: Class, lit: &str) -> String {
    match class {
        Class::Text => format!("\"{lit}\""),
        _ => lit.to_string(),
    }
}

pub const TIMES: [&str; 4] = ["19990125T000000Z", "19990125T230000Z", "19990127T100000Z", "19990201T000000Z"];

pub fn generate(rng: &mut ChaCha8Rng, pool: &BTreeMap<(String, Vec<String>), Vec<String>>) -> OracleQuery {
    let present: Vec<EventKind> = EventKind::ALL.iter().copied().filter(|k| pool.keys().any(|(v, _)| v == k.tag())).collect();
    let kind = if rng.gen_bool(0.7) { *present.choose(rng).unwrap() } else { *EventKind::ALL.choose(rng).unwrap() };
    let tag = kind.tag().to_string();
    let mut all_paths = Vec::new();
    leaf_paths(kind.fields(), &[], 0, &mut all_paths);
    let populated: Vec<(Vec<String>, FieldKind)> =
        all_paths.iter().filter(|(p, _)| pool.contains_key(&(tag.clone(), p.clone()))).cloned().collect();
    let paths = if !populated.is_empty() && rng.gen_bool(0.7) { populated } else { all_paths };
    let mut q = OracleQuery { variant: Some(tag.clone()), ..Default::default() };
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let (path, fk) = paths.choose(rng).unwrap().clone();
        let class = class_of(fk);
        let ops: &[&'static str] = match class {
            Class::Text => &["=", "!=", "contains"],
            _ => &["=", "!=", "<", "<=", ">", ">="],
        };
        let op = *ops.choose(rng).unwrap();
        let lit = literal(rng, fk, class, op, pool.get(&(tag.clone(), path.clone())));
        parts.push(format!("{tag}.{} {op} {}", path.join("."), render(class, &lit)));
        q.preds.push(Pred { path, class, op, lit });
    }
    let mut text = if parts.is_empty() {
        if rng.gen_bool(0.2) {
            q.variant = None;
            "*".to_string()
        } else {
            tag.clone()
        }
    } else {
        parts.join(" and ")
    };
    if q.variant.is_some() && rng.gen_bool(0.4) {
        let numeric: Vec<&(Vec<String>, FieldKind)> = paths.iter().filter(|(_, k)| class_of(*k) == Class::Num).collect();
        if let Some((path, _)) = numeric.choose(rng) {
            let desc = rng.gen_bool(0.5);
            text.push_str(&format!(" sort {tag}.{}{}", path.join("."), if desc { " desc" } else { " asc" }));
            q.sort = Some((path.clone(), desc));
        }
    }
    if rng.gen_bool(0.25) {
        let t = TIMES.choose(rng).unwrap().to_string();
        text.push_str(&format!(" since {t}"));
        q.since = Some(t);
    }
    if rng.gen_bool(0.25) {
        let t = TIMES.choose(rng).unwrap().to_string();
        text.push_str(&format!(" until {t}"));
        q.until = Some(t);
    }
    q.text = text;
    q
}

pub fn fixture() -> (CorpusIndex, Vec<RawDoc>) {
    let files = corpus_files(&fixture_corpus()).unwrap();
    assert_eq!(files.len(), 6);
    let (ix, diags) = build_index(&files);
    assert!(diags.is_empty(), "{diags:?}");
    (ix, load_raw(&files))
}

pub fn run(ix: &CorpusIndex, q: &OracleQuery) -> Vec<(String, Option<f64>)> {
    let parsed = parse_query(&q.text).unwrap_or_else(|e| panic!("{e}"));
    query(ix, &parsed)
        .into_iter()
        .map(|h| (h.id, h.sort_value.map(|v| num(v.to_string().split(' ').next().unwrap()))))
        .collect()
}
