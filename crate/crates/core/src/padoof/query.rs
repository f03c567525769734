//! Field-path queries.
//!
//! ```text
//! Deal.Target.Ticker = BEL
//! InjuryFatality.KilledCount >= 10 and InjuryFatality.Cause = Earthquake sort KilledCount desc
//! NewProduct since 19990101T000000Z until 19990201T000000Z
//! Deal.DealValue > 1000000 USD
//! *
//! ```
//!
//! All predicates of a query must hold for one event record. A value with
//! spaces is written in double quotes. `!=` needs the field present with a
//! different value; `contains` is a case-insensitive substring test.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::model::schema::{find_field, FieldKind, LeafKind, LeafValue};
use crate::model::{CountryCode, CurrencyCode, Decimal, EventKind, Measure, Node, StateCode, Ticker, Timestamp, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Contains,
}

impl Op {
    pub const ALL: [Op; 7] = [Op::Eq, Op::Ne, Op::Lt, Op::Le, Op::Gt, Op::Ge, Op::Contains];

    pub fn as_str(&self) -> &'static str {
        match self {
            Op::Eq => "=",
            Op::Ne => "!=",
            Op::Lt => "<",
            Op::Le => "<=",
            Op::Gt => ">",
            Op::Ge => ">=",
            Op::Contains => "contains",
        }
    }

    pub fn is_ordering(&self) -> bool {
        matches!(self, Op::Lt | Op::Le | Op::Gt | Op::Ge)
    }

    fn accepts(&self, ord: Ordering) -> bool {
        match self {
            Op::Eq => ord.is_eq(),
            Op::Ne => ord.is_ne(),
            Op::Lt => ord.is_lt(),
            Op::Le => ord.is_le(),
            Op::Gt => ord.is_gt(),
            Op::Ge => ord.is_ge(),
            Op::Contains => false,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A typed literal or field value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Number(Decimal),
    Time(Timestamp),
    Money { amount: Decimal, currency: Option<String> },
    Text(String),
}

impl Value {
    /// Comparison where meaningful; `None` for mismatched kinds or currencies.
    pub fn compare(&self, other: &Value) -> Option<Ordering> {
        match (self, other) {
            (Value::Number(a), Value::Number(b)) => Some(a.cmp_value(b)),
            (Value::Time(a), Value::Time(b)) => Some(a.cmp(b)),
            (Value::Text(a), Value::Text(b)) => Some(a.cmp(b)),
            (Value::Money { amount: a, currency: ca }, Value::Money { amount: b, currency: cb }) => {
                match (ca, cb) {
                    (Some(x), Some(y)) if x != y => None,
                    _ => Some(a.cmp_value(b)),
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(d) => write!(f, "{d}"),
            Value::Time(t) => write!(f, "{t}"),
            Value::Money { amount, currency: Some(c) } => write!(f, "{amount} {c}"),
            Value::Money { amount, currency: None } => write!(f, "{amount}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

/// Reads `text` as a value of leaf kind `kind`.
pub fn leaf_value(kind: LeafKind, text: &str) -> Result<Value, String> {
    fn checked<T: LeafValue>(text: &str) -> Result<Value, String> {
        let v = T::parse_text(text)?;
        match v.violation() {
            Some(viol) => Err(viol.message),
            None => Ok(Value::Text(v.to_text())),
        }
    }
    match kind {
        LeafKind::Integer | LeafKind::Decimal => {
            text.trim().parse::<Decimal>().map(Value::Number).map_err(|_| format!("`{text}` is not a number"))
        }
        LeafKind::Timestamp => Timestamp::parse(text.trim()).map(Value::Time),
        LeafKind::Term(values) => {
            if values.contains(&text) {
                Ok(Value::Text(text.to_string()))
            } else {
                Err(format!("`{text}` is not one of: {}", values.join(", ")))
            }
        }
        LeafKind::Text => checked::<String>(text),
        LeafKind::Token => checked::<Token>(text),
        LeafKind::Measure => checked::<Measure>(text),
        LeafKind::Country => checked::<CountryCode>(text),
        LeafKind::State => checked::<StateCode>(text),
        LeafKind::Currency => checked::<CurrencyCode>(text),
        LeafKind::Ticker => checked::<Ticker>(text),
    }
}

/// The value of a field node as stored in a document.
pub fn node_value(kind: FieldKind, node: &Node) -> Option<Value> {
    match kind {
        FieldKind::Leaf(LeafKind::Integer | LeafKind::Decimal) => node.text()?.trim().parse().ok().map(Value::Number),
        FieldKind::Leaf(LeafKind::Timestamp) => Timestamp::parse(node.text()?.trim()).ok().map(Value::Time),
        FieldKind::Leaf(_) => Some(Value::Text(node.text()?.to_string())),
        FieldKind::Money => {
            let amount = node.child("Amount")?.text()?.trim().parse().ok()?;
            let currency = node.child("Currency")?.text()?.to_string();
            Some(Value::Money { amount, currency: Some(currency) })
        }
        FieldKind::Record(_) | FieldKind::Party => None,
    }
}

/// Field kind at `path` under an event of `kind`.
pub fn resolve_path(kind: EventKind, path: &[String]) -> Result<FieldKind, String> {
    let mut fields = kind.fields();
    let mut found = None;
    for (i, seg) in path.iter().enumerate() {
        let spec = find_field(fields, seg).ok_or_else(|| {
            let parent = std::iter::once(kind.tag()).chain(path[..i].iter().map(String::as_str)).collect::<Vec<_>>();
            format!("unknown field `{seg}` in {}", parent.join("."))
        })?;
        found = Some(spec.kind);
        if i + 1 < path.len() {
            fields = spec.kind.children().ok_or_else(|| format!("`{seg}` has no child fields"))?;
        }
    }
    match found {
        Some(FieldKind::Record(_) | FieldKind::Party) => {
            Err(format!("`{}` is a record; name one of its fields", path.join(".")))
        }
        Some(k) => Ok(k),
        None => Err("empty field path".into()),
    }
}

/// Index of the first segment of `path` that names no field.
fn bad_segment(kind: EventKind, path: &[String]) -> Option<usize> {
    let mut fields = kind.fields();
    for (i, seg) in path.iter().enumerate() {
        match find_field(fields, seg) {
            Some(spec) => fields = spec.kind.children().unwrap_or(&[]),
            None => return Some(i),
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    pub path: Vec<String>,
    pub kind: FieldKind,
    pub op: Op,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortKey {
    pub path: Vec<String>,
    pub kind: FieldKind,
    pub descending: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Query {
    /// `None` matches events of every variant.
    pub variant: Option<EventKind>,
    pub predicates: Vec<Predicate>,
    pub sort: Option<SortKey>,
    pub since: Option<Timestamp>,
    pub until: Option<Timestamp>,
}

fn field_values<'n>(event: &'n Node, path: &[String]) -> Vec<&'n Node> {
    let segs: Vec<&str> = path.iter().map(String::as_str).collect();
    event.select(&segs)
}

impl Predicate {
    /// Whether any node at the path satisfies the predicate.
    pub fn holds(&self, event: &Node) -> bool {
        field_values(event, &self.path).into_iter().any(|n| {
            let Some(v) = node_value(self.kind, n) else { return false };
            match self.op {
                Op::Contains => match (&v, &self.value) {
                    (Value::Text(a), Value::Text(b)) => a.to_lowercase().contains(&b.to_lowercase()),
                    _ => false,
                },
                op => v.compare(&self.value).is_some_and(|o| op.accepts(o)),
            }
        })
    }
}

impl Query {
    /// Whether one event record satisfies every predicate.
    pub fn matches_event(&self, event: &Node) -> bool {
        self.variant.is_none_or(|k| k.tag() == event.name) && self.predicates.iter().all(|p| p.holds(event))
    }

    /// Sort value of an event: smallest for ascending, largest for descending.
    pub fn sort_value(&self, event: &Node) -> Option<Value> {
        let key = self.sort.as_ref()?;
        let vals = field_values(event, &key.path).into_iter().filter_map(|n| node_value(key.kind, n));
        let pick = |a: Value, b: Value| {
            let b_wins = match b.compare(&a) {
                Some(o) => o.is_lt() != key.descending && o.is_ne(),
                None => false,
            };
            if b_wins {
                b
            } else {
                a
            }
        };
        vals.reduce(pick)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}\n  {query}\n  {caret}")]
pub struct QueryError {
    pub message: String,
    pub query: String,
    /// Byte offset of the offending token.
    pub offset: usize,
    caret: String,
}

impl QueryError {
    fn new(query: &str, offset: usize, message: impl Into<String>) -> Self {
        let col = query[..offset.min(query.len())].chars().count();
        QueryError { message: message.into(), query: query.to_string(), offset, caret: format!("{}^", " ".repeat(col)) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Quoted(String),
    Op(Op),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, QueryError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = src[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let start = i;
        match c {
            '"' => {
                let end = src[i + 1..].find('"').ok_or_else(|| QueryError::new(src, start, "unterminated quoted value"))?;
                out.push((Tok::Quoted(src[i + 1..i + 1 + end].to_string()), start));
                i += end + 2;
            }
            '=' => {
                out.push((Tok::Op(Op::Eq), start));
                i += 1;
            }
            '!' | '<' | '>' => {
                let two = src[i..].starts_with("!=") || src[i..].starts_with("<=") || src[i..].starts_with(">=");
                let op = match (c, two) {
                    ('!', true) => Op::Ne,
                    ('<', true) => Op::Le,
                    ('>', true) => Op::Ge,
                    ('<', false) => Op::Lt,
                    ('>', false) => Op::Gt,
                    _ => return Err(QueryError::new(src, start, "expected `!=`")),
                };
                out.push((Tok::Op(op), start));
                i += if two { 2 } else { 1 };
            }
            _ => {
                let end = src[i..]
                    .find(|ch: char| ch.is_whitespace() || "=!<>\"".contains(ch))
                    .map_or(src.len(), |e| i + e);
                let word = &src[i..end];
                let tok = if word.eq_ignore_ascii_case("contains") { Tok::Op(Op::Contains) } else { Tok::Word(word.to_string()) };
                out.push((tok, start));
                i = end;
            }
        }
    }
    Ok(out)
}

fn is_keyword(w: &str) -> bool {
    ["and", "sort", "since", "until"].iter().any(|k| w.eq_ignore_ascii_case(k))
}

struct Parser<'s> {
    src: &'s str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'s> Parser<'s> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |(_, o)| *o)
    }

    fn err(&self, message: impl Into<String>) -> QueryError {
        QueryError::new(self.src, self.offset(), message)
    }

    fn err_at(&self, offset: usize, message: impl Into<String>) -> QueryError {
        QueryError::new(self.src, offset, message)
    }

    fn keyword(&mut self, k: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Word(w)) if w.eq_ignore_ascii_case(k)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, usize), QueryError> {
        match self.toks.get(self.pos) {
            Some((Tok::Word(w), o)) | Some((Tok::Quoted(w), o)) => {
                self.pos += 1;
                Ok((w.clone(), *o))
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    /// `Variant.Path` or, when `variant` is known, a bare `Path`.
    fn path(&mut self, variant: &mut Option<EventKind>) -> Result<(Vec<String>, FieldKind, usize), QueryError> {
        let (text, at) = self.word("a field path")?;
        let mut segs: Vec<String> = text.split('.').map(str::to_string).collect();
        let starts: Vec<usize> = segs
            .iter()
            .scan(at, |pos, s| {
                let here = *pos;
                *pos += s.len() + 1;
                Some(here)
            })
            .collect();
        if segs.iter().any(String::is_empty) {
            return Err(self.err_at(at, format!("malformed field path `{text}`")));
        }
        let mut skipped = 0;
        let kind = match EventKind::from_tag(&segs[0]) {
            Some(k) => {
                segs.remove(0);
                skipped = 1;
                k
            }
            None => match variant {
                Some(k) if find_field(k.fields(), &segs[0]).is_some() => *k,
                _ => return Err(self.err_at(at, format!("unknown event variant `{}`", segs[0]))),
            },
        };
        if let Some(v) = variant {
            if *v != kind {
                return Err(self.err_at(at, format!("all fields must belong to {}; found {}", v.tag(), kind.tag())));
            }
        }
        *variant = Some(kind);
        if segs.is_empty() {
            return Ok((segs, FieldKind::Record(kind.fields()), at));
        }
        let fk = resolve_path(kind, &segs).map_err(|m| {
            let bad = bad_segment(kind, &segs).map_or(at, |i| starts[i + skipped]);
            self.err_at(bad, m)
        })?;
        Ok((segs, fk, at))
    }

    fn predicate(&mut self, variant: &mut Option<EventKind>) -> Result<Option<Predicate>, QueryError> {
        let (path, kind, _) = self.path(variant)?;
        let op = match self.peek() {
            Some(Tok::Op(op)) => *op,
            None if path.is_empty() => return Ok(None),
            Some(Tok::Word(w)) if path.is_empty() && is_keyword(w) => return Ok(None),
            _ if path.is_empty() => return Err(self.err("expected `and`, `sort`, `since` or `until`")),
            _ => return Err(self.err("expected an operator: = != < <= > >= contains")),
        };
        if path.is_empty() {
            return Err(self.err("an operator needs a field path, not just an event variant"));
        }
        let op_at = self.offset();
        self.pos += 1;
        let ordered = match kind {
            FieldKind::Leaf(l) => l.is_ordered(),
            FieldKind::Money => true,
            _ => false,
        };
        if op.is_ordering() && !ordered {
            return Err(self.err_at(op_at, format!("`{op}` needs a numeric, time or money field; `{}` is not", path.join("."))));
        }
        if op == Op::Contains && !matches!(kind, FieldKind::Leaf(l) if !l.is_ordered()) {
            return Err(self.err_at(op_at, format!("`contains` needs a text field; `{}` is not", path.join("."))));
        }
        let (text, vat) = self.word("a value")?;
        let value = match kind {
            FieldKind::Money => self.money(&text, vat)?,
            FieldKind::Leaf(_) if op == Op::Contains => Value::Text(text),
            FieldKind::Leaf(l) => leaf_value(l, &text).map_err(|m| self.err_at(vat, m))?,
            _ => unreachable!("resolve_path rejects records"),
        };
        Ok(Some(Predicate { path, kind, op, value }))
    }

    fn money(&mut self, text: &str, at: usize) -> Result<Value, QueryError> {
        let mut parts: Vec<String> = text.split_whitespace().map(str::to_string).collect();
        if parts.len() == 1 {
            if let Some(Tok::Word(w)) = self.peek() {
                if w.len() == 3 && w.bytes().all(|b| b.is_ascii_uppercase()) {
                    parts.push(w.clone());
                    self.pos += 1;
                }
            }
        }
        let (amount, currency) = match &parts[..] {
            [a] => (a.as_str(), None),
            [a, c] if a.parse::<Decimal>().is_ok() => (a.as_str(), Some(c.clone())),
            [c, a] => (a.as_str(), Some(c.clone())),
            _ => return Err(self.err_at(at, format!("`{text}` is not an amount with a currency"))),
        };
        let amount: Decimal = amount.parse().map_err(|_| self.err_at(at, format!("`{amount}` is not a number")))?;
        if let Some(c) = &currency {
            if let Some(v) = CurrencyCode::new(c.clone()).violation() {
                return Err(self.err_at(at, v.message));
            }
        }
        if currency.is_none() {
            return Err(self.err_at(at, "money values need a currency, e.g. `1000000 USD`"));
        }
        Ok(Value::Money { amount, currency })
    }
}

/// Parses and type-checks query text.
pub fn parse_query(src: &str) -> Result<Query, QueryError> {
    let mut p = Parser { src, toks: lex(src)?, pos: 0 };
    let mut q = Query::default();
    let mut variant = None;

    if matches!(p.peek(), Some(Tok::Word(w)) if w == "*") {
        p.pos += 1;
    } else if matches!(p.peek(), Some(Tok::Word(w)) if !is_keyword(w)) {
        loop {
            if let Some(pred) = p.predicate(&mut variant)? {
                q.predicates.push(pred);
            }
            if !p.keyword("and") {
                break;
            }
        }
    }

    loop {
        if p.keyword("sort") {
            if q.sort.is_some() {
                return Err(p.err("only one sort key is allowed"));
            }
            let (path, kind, at) = p.path(&mut variant)?;
            if path.is_empty() {
                return Err(p.err_at(at, "sort needs a field path"));
            }
            let descending = if p.keyword("desc") {
                true
            } else {
                p.keyword("asc");
                false
            };
            q.sort = Some(SortKey { path, kind, descending });
        } else if p.keyword("since") || p.keyword("until") {
            let since = matches!(&p.toks[p.pos - 1].0, Tok::Word(w) if w.eq_ignore_ascii_case("since"));
            let (t, at) = p.word("a timestamp YYYYMMDDTHHMMSSZ")?;
            let ts = Timestamp::parse(&t).map_err(|m| p.err_at(at, m))?;
            if since {
                q.since = Some(ts);
            } else {
                q.until = Some(ts);
            }
        } else if p.peek().is_some() {
            return Err(p.err("unexpected input"));
        } else {
            break;
        }
    }
    q.variant = variant;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let q = parse_query("Deal.Target.Ticker = BEL").unwrap();
        assert_eq!(q.variant, Some(EventKind::Deal));
        assert_eq!(q.predicates[0].path, ["Target", "Ticker"]);
        assert_eq!(q.predicates[0].value, Value::Text("BEL".into()));

        let q = parse_query("InjuryFatality.KilledCount>=10 and Cause = Earthquake sort KilledCount desc").unwrap();
        assert_eq!(q.predicates.len(), 2);
        assert_eq!(q.predicates[0].op, Op::Ge);
        assert!(q.sort.unwrap().descending);

        let q = parse_query("Deal.DealValue > 1000000 USD and Deal.Target.FullName contains \"bell atl\"").unwrap();
        assert_eq!(q.predicates[0].value, Value::Money { amount: "1000000".parse().unwrap(), currency: Some("USD".into()) });
        assert_eq!(q.predicates[1].op, Op::Contains);

        assert_eq!(parse_query("").unwrap(), Query::default());
        assert_eq!(parse_query("*").unwrap(), Query::default());
        let q = parse_query("NewProduct since 19990101T000000Z").unwrap();
        assert_eq!(q.variant, Some(EventKind::NewProduct));
        assert!(q.predicates.is_empty() && q.since.is_some());
        let q = parse_query("* sort InjuryFatality.KilledCount").unwrap();
        assert_eq!(q.variant, Some(EventKind::InjuryFatality));
    }

    #[test]
    fn errors_point_at_the_problem() {
        let e = parse_query("Deal.Bogus = x").unwrap_err();
        assert!(e.message.contains("Bogus"), "{e}");
        assert_eq!(e.offset, 5);
        assert_eq!(parse_query("Deal.Target.Nope = x").unwrap_err().offset, 12);
        assert!(e.to_string().ends_with("\n       ^"));

        let e = parse_query("Deal.Target.Ticker < BEL").unwrap_err();
        assert_eq!(e.offset, 19);
        assert!(e.to_string().contains(&format!("\n  {}^", " ".repeat(19))));

        for bad in [
            "Deal.Target = x",
            "Earnings.GoodBad = Meh",
            "InjuryFatality.KilledCount = many",
            "Deal.DealValue > 5",
            "Deal.DealValue = 5 EUX",
            "Deal.Stake = 5 and Earnings.GoodBad = Bad",
            "Deal.Target.Ticker BEL",
            "Deal.Target.Ticker = \"BEL",
            "Deal.Target.Ticker = BEL sort",
            "InjuryFatality.KilledCount contains 1",
            "Weather since yesterday",
            "Nothing",
        ] {
            assert!(parse_query(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn resolves_paths() {
        let p = |s: &str| s.split('.').map(str::to_string).collect::<Vec<_>>();
        assert_eq!(resolve_path(EventKind::Deal, &p("Target.Ticker")), Ok(FieldKind::Leaf(LeafKind::Ticker)));
        assert_eq!(resolve_path(EventKind::Deal, &p("DealValue")), Ok(FieldKind::Money));
        assert_eq!(resolve_path(EventKind::Deal, &p("DealValue.Amount")), Ok(FieldKind::Leaf(LeafKind::Decimal)));
        assert!(resolve_path(EventKind::InjuryFatality, &p("Source.FullName")).is_ok());
        assert!(resolve_path(EventKind::Deal, &p("Stake.Amount")).is_err());
    }

    #[test]
    fn predicate_semantics() {
        let ev = Node::branch(
            "InjuryFatality",
            vec![
                Node::leaf("KilledCount", "143"),
                Node::branch("Injured", vec![Node::leaf("Family", "Khartum")]),
                Node::branch("Injured", vec![Node::leaf("Family", "Smith")]),
            ],
        );
        let yes = ["InjuryFatality.KilledCount > 100", "InjuryFatality.KilledCount = 143.0", "InjuryFatality.Injured.Family = Smith",
            "InjuryFatality.Injured.Family != Smith", "InjuryFatality.Injured.Family contains KHAR"];
        let no = ["InjuryFatality.KilledCount < 100", "InjuryFatality.InjuredCount >= 0", "InjuryFatality.Cause != Fire",
            "Weather.Meteor = Hurricane"];
        for q in yes {
            assert!(parse_query(q).unwrap().matches_event(&ev), "{q}");
        }
        for q in no {
            assert!(!parse_query(q).unwrap().matches_event(&ev), "{q}");
        }
    }

    #[test]
    fn money_across_currencies_never_matches() {
        let ev = Node::branch(
            "Deal",
            vec![Node::branch("DealValue", vec![Node::leaf("Amount", "5"), Node::leaf("Currency", "EUR")])],
        );
        for q in ["Deal.DealValue < 10 USD", "Deal.DealValue >= 1 USD", "Deal.DealValue != 5 USD"] {
            assert!(!parse_query(q).unwrap().matches_event(&ev), "{q}");
        }
        assert!(parse_query("Deal.DealValue = 5.00 EUR").unwrap().matches_event(&ev));
    }
}
