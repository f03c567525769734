//! Pattern matching over resolved sentence parses.

use super::dsl::{Atom, ExtractionRule, Placeholder, SlotKind};
use super::{Binding, Fragment};
use crate::model::schema::{FieldKind, FieldValue, LeafKind};
use crate::model::{NewsEvent, Node, ValidationReport};
use crate::pipeline::{EntityMention, EntityReading, SentenceParse};

/// A partial match: tokens consumed so far and the slots bound on the way.
#[derive(Clone)]
struct State<'p> {
    pos: usize,
    bindings: Vec<(&'p str, &'p EntityMention, usize)>,
}

fn reading_fits(kind: SlotKind, r: &EntityReading) -> bool {
    match kind {
        SlotKind::Entity(k) => r.kind() == k,
        SlotKind::Integer => matches!(r, EntityReading::Number(d) if d.is_integer()),
    }
}

/// Value of `r` as element `tag` of kind `kind`, if it converts.
pub(crate) fn reading_node(r: &EntityReading, tag: &str, kind: FieldKind) -> Option<Node> {
    use EntityReading as R;
    let text = |s: String| Some(Node::leaf(tag, s));
    match (r, kind) {
        (R::Person(p), FieldKind::Record(_) | FieldKind::Party) => Some(p.encode(tag)),
        (R::Organization(o), FieldKind::Record(_) | FieldKind::Party) => Some(o.encode(tag)),
        (R::Location(l), FieldKind::Record(_)) => Some(l.encode(tag)),
        (R::Location(l), FieldKind::Leaf(LeafKind::Country)) => text(l.country.as_ref()?.as_str().to_string()),
        (R::Money(m), FieldKind::Money) => Some(m.encode(tag)),
        (R::Number(d), FieldKind::Leaf(LeafKind::Integer)) => d.is_integer().then(|| Node::leaf(tag, d.normalized().to_string())),
        (R::Number(d) | R::Percent(d), FieldKind::Leaf(LeafKind::Decimal | LeafKind::Measure)) => text(d.to_string()),
        (R::Duration(m) | R::Temperature(m) | R::Speed(m) | R::Distance(m), FieldKind::Leaf(LeafKind::Measure | LeafKind::Text)) => {
            text(m.to_string())
        }
        (R::Person(p), FieldKind::Leaf(LeafKind::Text)) => text(p.full_name().or_else(|| p.function.clone())?),
        (R::Organization(o), FieldKind::Leaf(LeafKind::Text)) => text(o.full_name.clone().or_else(|| o.nickname.clone())?),
        (R::Location(l), FieldKind::Leaf(LeafKind::Text)) => text(l.city.clone().or_else(|| l.region.clone())?),
        (R::Product(p), FieldKind::Leaf(LeafKind::Text)) => text(p.name.clone()),
        (R::Date(d), FieldKind::Leaf(LeafKind::Text)) => text(d.clone()),
        _ => None,
    }
}

fn converts(r: &EntityReading, var: &str, placeholders: &[Placeholder]) -> bool {
    placeholders
        .iter()
        .filter(|p| p.var == var)
        .all(|p| reading_node(r, p.path.last().unwrap(), p.kind).is_some())
}

fn step<'p>(
    atoms: &'p [Atom],
    s: &'p SentenceParse,
    placeholders: &[Placeholder],
    state: State<'p>,
    out: &mut Vec<State<'p>>,
) {
    let Some((atom, rest)) = atoms.split_first() else {
        out.push(state);
        return;
    };
    match atom {
        Atom::Literal(lit) => {
            if s.tokens.get(state.pos).is_some_and(|t| t.text.eq_ignore_ascii_case(lit)) {
                step(rest, s, placeholders, State { pos: state.pos + 1, ..state }, out);
            }
        }
        Atom::Slot { kind, var } => {
            let Some(m) = s.mention_at(state.pos) else { return };
            let chosen = m.readings.iter().position(|r| reading_fits(*kind, r) && converts(r, var, placeholders));
            if let Some(i) = chosen {
                let mut next = state;
                next.pos = m.last + 1;
                next.bindings.push((var.as_str(), m, i));
                step(rest, s, placeholders, next, out);
            }
        }
        Atom::Optional(inner) => {
            let mut mids = Vec::new();
            step(inner, s, placeholders, state.clone(), &mut mids);
            for mid in mids {
                step(rest, s, placeholders, mid, out);
            }
            step(rest, s, placeholders, state, out);
        }
        Atom::Skip(n) => {
            for k in 0..=*n {
                if state.pos + k > s.tokens.len() {
                    break;
                }
                step(rest, s, placeholders, State { pos: state.pos + k, ..state.clone() }, out);
            }
        }
    }
}

/// Longest match of `rule` starting exactly at token `start`.
fn match_at<'p>(rule: &'p ExtractionRule, s: &'p SentenceParse, start: usize) -> Option<State<'p>> {
    let mut ends = Vec::new();
    step(&rule.pattern, s, &rule.placeholders, State { pos: start, bindings: Vec::new() }, &mut ends);
    // First of the longest, so earlier alternatives win ties.
    let mut best: Option<State<'p>> = None;
    for e in ends {
        if e.pos > start && best.as_ref().is_none_or(|b| e.pos > b.pos) {
            best = Some(e);
        }
    }
    best
}

fn substitute(node: &Node, fields: &[Placeholder], values: &[(&str, &EntityReading)], path: &mut Vec<String>) -> Node {
    if let Some(var) = super::dsl::placeholder_var(node) {
        let ph = fields.iter().find(|p| p.var == var && p.path == *path);
        let reading = values.iter().find(|(v, _)| *v == var).map(|(_, r)| *r);
        if let (Some(ph), Some(r)) = (ph, reading) {
            if let Some(n) = reading_node(r, &node.name, ph.kind) {
                return n;
            }
        }
        return node.clone();
    }
    if node.is_leaf() {
        return node.clone();
    }
    let children = node
        .children()
        .iter()
        .map(|c| {
            path.push(c.name.clone());
            let n = substitute(c, fields, values, path);
            path.pop();
            n
        })
        .collect();
    Node::branch(node.name.clone(), children)
}

/// Fills `rule`'s template; `None` when the result would not validate.
pub(crate) fn instantiate(rule: &ExtractionRule, values: &[(&str, &EntityReading)]) -> Option<NewsEvent> {
    let node = substitute(&rule.template, &rule.placeholders, values, &mut Vec::new());
    let mut errors = Vec::new();
    let event = NewsEvent::from_node(&node, &mut errors)?;
    if !errors.is_empty() {
        return None;
    }
    let mut report = ValidationReport::new();
    event.validate_into(&mut report);
    report.errors.iter().all(|e| e.code == "required").then_some(event)
}

fn fragment(rule: &ExtractionRule, state: &State<'_>, sentence_index: usize, start: usize) -> Option<Fragment> {
    let values: Vec<(&str, &EntityReading)> = state.bindings.iter().map(|(v, m, i)| (*v, &m.readings[*i])).collect();
    let event = instantiate(rule, &values)?;
    let mut bindings = Vec::new();
    let mut alternatives = Vec::new();
    for (var, m, i) in &state.bindings {
        let kind = rule.slot_kind(var).expect("compiled rule binds every slot");
        bindings.push(Binding {
            var: var.to_string(),
            id: m.resolved_id.clone(),
            reading: m.readings[*i].clone(),
        });
        let others: Vec<EntityReading> = m
            .readings
            .iter()
            .enumerate()
            .filter(|(j, r)| j != i && reading_fits(kind, r) && converts(r, var, &rule.placeholders))
            .map(|(_, r)| r.clone())
            .collect();
        if !others.is_empty() {
            for p in rule.placeholders.iter().filter(|p| p.var == *var) {
                alternatives.push((p.path.join("/"), others.clone()));
            }
        }
    }
    Some(Fragment {
        event,
        bindings,
        alternatives,
        sentence_index,
        rule_id: rule.id.clone(),
        priority: rule.priority,
        order: rule.order,
        tokens: start..state.pos,
    })
}

/// Runs every rule over every sentence. Rules are tried in the order
/// given (compiled order is priority order); each scans its sentence
/// left to right, taking the longest match at each position.
pub fn apply_patterns(parses: &[SentenceParse], rules: &[ExtractionRule]) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (si, s) in parses.iter().enumerate() {
        for rule in rules {
            let mut start = 0;
            while start < s.tokens.len() {
                match match_at(rule, s, start) {
                    Some(state) => {
                        if let Some(f) = fragment(rule, &state, si, start) {
                            out.push(f);
                        }
                        start = state.pos;
                    }
                    None => start += 1,
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicons::{Lexicon, LexiconSet};
    use crate::pipeline::analyze;
    use crate::rules::compile_rules;

    const INJURED_RULE: &str = "?Person was injured => <InjuryFatality><Injured>?Person</Injured></InjuryFatality>";

    fn lex() -> LexiconSet {
        LexiconSet::new(vec![Lexicon::parse(
            "places",
            "Al Khartum\tCity\tKhartoum\tcountry=SDN;lat=15.50;lon=32.56\n\
             Al Khartum\tPersonName\tAl Khartum\tgiven=Al;family=Khartum\n\
             Colombia\tCountry\tCOL\n",
            true,
        )
        .unwrap()])
    }

    fn run(text: &str, rules: &str) -> Vec<Fragment> {
        apply_patterns(&analyze(text, &lex()), &compile_rules(rules).unwrap())
    }

    #[test]
    fn person_reading_selected() {
        let f = run("Al Khartum was injured.", INJURED_RULE);
        assert_eq!(f.len(), 1);
        let NewsEvent::InjuryFatality(e) = &f[0].event else { panic!() };
        assert_eq!(e.injured.len(), 1);
        assert_eq!(e.injured[0].full_name().as_deref(), Some("Al Khartum"));
        assert!(matches!(f[0].bindings[0].reading, EntityReading::Person(_)));
        assert!(f[0].alternatives.is_empty());
    }

    #[test]
    fn no_match() {
        assert!(run("The sky is blue.", INJURED_RULE).is_empty());
        assert!(run("", INJURED_RULE).is_empty());
    }

    #[test]
    fn optional_and_skip() {
        let rules = "killing [at least] ?Integer:n people => <InjuryFatality><KilledCount>?n</KilledCount></InjuryFatality>\n\
                     struck *2 ?Location:loc => <InjuryFatality><AtLocation>?loc</AtLocation></InjuryFatality>";
        let f = run("A quake struck western Colombia, killing at least 143 people.", rules);
        let nodes: Vec<String> = f.iter().map(|f| format!("{:?}", f.event.to_node().leaves())).collect();
        assert_eq!(f.len(), 2, "{nodes:?}");
        assert!(nodes.iter().any(|n| n.contains("\"143\"")));
        assert!(nodes.iter().any(|n| n.contains("\"COL\"")));
        assert!(run("killing 143 people", rules).len() == 1);
        assert!(run("killing many 143 people", rules).is_empty());
    }

    #[test]
    fn literals_case_insensitive_and_leftmost() {
        let rules = "quake => <InjuryFatality><Cause>Earthquake</Cause></InjuryFatality>";
        let f = run("Quake after quake.", rules);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].tokens, 0..1);
        assert_eq!(f[1].tokens, 2..3);
    }
}
