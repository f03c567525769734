//! The extraction rule language.
//!
//! ```text
//! # comment
//! @killed killing [at least] ?Number:n people
//!     => <InjuryFatality><KilledCount>?n</KilledCount></InjuryFatality>
//! ```
//!
//! A rule starts at an unindented line and continues over indented lines.
//! Pattern atoms are bare literal words (matched case-insensitively), typed
//! slots `?Kind` or `?Kind:var`, optional groups `[ ... ]` and bounded skips
//! `*n`. The template is a NewsForm event fragment in which `?var` stands for
//! the entity bound to that slot.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::schema::{find_field, FieldKind, FieldSpec, LeafKind};
use crate::model::{EventKind, Location, NewsEvent, Node, Organization, Person};
use crate::pipeline::EntityKind;
use crate::xmlcodec;

/// Largest `*n` skip accepted.
pub const MAX_SKIP: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlotKind {
    Entity(EntityKind),
    /// A Number reading with an integral value.
    Integer,
}

impl FromStr for SlotKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Integer" {
            return Ok(SlotKind::Integer);
        }
        s.parse().map(SlotKind::Entity)
    }
}

impl fmt::Display for SlotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlotKind::Entity(k) => write!(f, "{k}"),
            SlotKind::Integer => f.write_str("Integer"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Literal(String),
    Slot { kind: SlotKind, var: String },
    Optional(Vec<Atom>),
    /// Skips up to this many tokens.
    Skip(usize),
}

/// Where a template variable is substituted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placeholder {
    pub var: String,
    /// Element path below the event element, e.g. `["AtLocation"]`.
    pub path: Vec<String>,
    pub kind: FieldKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractionRule {
    pub id: String,
    pub line: usize,
    pub pattern: Vec<Atom>,
    pub template: Node,
    pub event: EventKind,
    pub placeholders: Vec<Placeholder>,
    pub priority: usize,
    /// Position in the compiled rule list, used to break priority ties.
    pub order: usize,
}

impl ExtractionRule {
    pub fn literal_count(&self) -> usize {
        fn count(atoms: &[Atom]) -> usize {
            atoms
                .iter()
                .map(|a| match a {
                    Atom::Literal(_) => 1,
                    Atom::Optional(inner) => count(inner),
                    _ => 0,
                })
                .sum()
        }
        count(&self.pattern)
    }

    pub fn slot_kind(&self, var: &str) -> Option<SlotKind> {
        fn find(atoms: &[Atom], var: &str) -> Option<SlotKind> {
            atoms.iter().find_map(|a| match a {
                Atom::Slot { kind, var: v } if v == var => Some(*kind),
                Atom::Optional(inner) => find(inner, var),
                _ => None,
            })
        }
        find(&self.pattern, var)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rule {rule} (line {line}): {message}")]
pub struct RuleError {
    pub rule: String,
    pub line: usize,
    pub message: String,
}

/// Compiles rule source. Rules are ordered by priority (literal count,
/// higher first), then by position in the source.
pub fn compile_rules(source: &str) -> Result<Vec<ExtractionRule>, RuleError> {
    compile_named(source, "")
}

/// As [`compile_rules`]; rules without an `@id` are named `<prefix>L<line>`.
pub fn compile_named(source: &str, prefix: &str) -> Result<Vec<ExtractionRule>, RuleError> {
    let mut rules = Vec::new();
    for (line, text) in rule_groups(source) {
        let mut rule = compile_one(&text, line, prefix)?;
        rule.order = rules.len();
        rules.push(rule);
    }
    sort_rules(&mut rules);
    Ok(rules)
}

/// Orders by priority (descending), then original order.
pub fn sort_rules(rules: &mut [ExtractionRule]) {
    rules.sort_by(|a, b| b.priority.cmp(&a.priority).then(a.order.cmp(&b.order)));
}

fn rule_groups(source: &str) -> Vec<(usize, String)> {
    let mut groups: Vec<(usize, String)> = Vec::new();
    let mut open = false;
    for (i, raw) in source.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            open = false;
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }
        let indented = raw.starts_with(char::is_whitespace);
        match groups.last_mut() {
            Some((_, text)) if indented && open => {
                text.push(' ');
                text.push_str(trimmed);
            }
            _ => {
                groups.push((i + 1, trimmed.to_string()));
                open = true;
            }
        }
    }
    groups
}

fn compile_one(text: &str, line: usize, prefix: &str) -> Result<ExtractionRule, RuleError> {
    let (id, body) = match text.strip_prefix('@') {
        Some(rest) => {
            let (id, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            (id.to_string(), body.trim())
        }
        None => (format!("{prefix}L{line}"), text),
    };
    let err = |message: String| RuleError { rule: id.clone(), line, message };
    let (pattern_src, template_src) = body
        .split_once("=>")
        .ok_or_else(|| err("expected `pattern => template`".into()))?;

    let pattern = parse_pattern(pattern_src).map_err(err)?;
    if pattern.is_empty() {
        return Err(err("empty pattern".into()));
    }
    let mut vars = BTreeSet::new();
    collect_vars(&pattern, &mut vars).map_err(err)?;

    let template = xmlcodec::parse_node(template_src.trim()).map_err(|e| err(format!("template: {e}")))?;
    let event = EventKind::from_tag(&template.name)
        .ok_or_else(|| err(format!("unknown element <{}>: templates must be event elements", template.name)))?;
    let mut placeholders = Vec::new();
    check_template(&template, event.fields(), &mut Vec::new(), &mut placeholders).map_err(err)?;

    let mut rule = ExtractionRule {
        id: id.clone(),
        line,
        pattern,
        template,
        event,
        placeholders,
        priority: 0,
        order: 0,
    };
    for p in &rule.placeholders {
        let kind = rule
            .slot_kind(&p.var)
            .ok_or_else(|| err(format!("template variable ?{} is not bound by the pattern", p.var)))?;
        if !compatible(kind, p.kind) {
            return Err(err(format!(
                "slot ?{} of kind {kind} cannot fill <{}>",
                p.var,
                p.path.join("/")
            )));
        }
    }
    check_literals(&rule).map_err(err)?;
    rule.priority = rule.literal_count();
    Ok(rule)
}

fn parse_pattern(src: &str) -> Result<Vec<Atom>, String> {
    let spaced = src.replace('[', " [ ").replace(']', " ] ");
    let mut stack: Vec<Vec<Atom>> = vec![Vec::new()];
    for word in spaced.split_whitespace() {
        match word {
            "[" => stack.push(Vec::new()),
            "]" => {
                let inner = stack.pop().filter(|_| !stack.is_empty()).ok_or("unbalanced `]`")?;
                if inner.is_empty() {
                    return Err("empty optional group".into());
                }
                stack.last_mut().unwrap().push(Atom::Optional(inner));
            }
            w if w.starts_with('?') => {
                let (kind, var) = match w[1..].split_once(':') {
                    Some((k, v)) => (k, v),
                    None => (&w[1..], &w[1..]),
                };
                if var.is_empty() || !var.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(format!("bad slot variable in `{w}`"));
                }
                let kind: SlotKind = kind.parse().map_err(|_| format!("unknown slot kind `{kind}`"))?;
                stack.last_mut().unwrap().push(Atom::Slot { kind, var: var.to_string() });
            }
            w if w.starts_with('*') && w.len() > 1 => {
                let n: usize = w[1..].parse().map_err(|_| format!("bad skip `{w}`"))?;
                if n == 0 || n > MAX_SKIP {
                    return Err(format!("skip `{w}` must be between *1 and *{MAX_SKIP}"));
                }
                stack.last_mut().unwrap().push(Atom::Skip(n));
            }
            w => stack.last_mut().unwrap().push(Atom::Literal(w.to_string())),
        }
    }
    if stack.len() != 1 {
        return Err("unbalanced `[`".into());
    }
    Ok(stack.pop().unwrap())
}

fn collect_vars(atoms: &[Atom], vars: &mut BTreeSet<String>) -> Result<(), String> {
    for a in atoms {
        match a {
            Atom::Slot { var, .. } => {
                if !vars.insert(var.clone()) {
                    return Err(format!("variable ?{var} bound twice"));
                }
            }
            Atom::Optional(inner) => collect_vars(inner, vars)?,
            _ => {}
        }
    }
    Ok(())
}

pub(crate) fn placeholder_var(node: &Node) -> Option<&str> {
    node.text().map(str::trim).and_then(|t| t.strip_prefix('?'))
}

fn check_template(
    node: &Node,
    fields: &'static [FieldSpec],
    path: &mut Vec<String>,
    out: &mut Vec<Placeholder>,
) -> Result<(), String> {
    for child in node.children() {
        let spec = find_field(fields, &child.name).ok_or_else(|| {
            let at = if path.is_empty() { node.name.clone() } else { path.join("/") };
            format!("unknown element <{}> in <{at}>", child.name)
        })?;
        path.push(child.name.clone());
        if let Some(var) = placeholder_var(child) {
            out.push(Placeholder { var: var.to_string(), path: path.clone(), kind: spec.kind });
        } else if let Some(sub) = spec.kind.children() {
            if child.is_leaf() {
                return Err(format!("<{}> needs child elements or a ?variable", path.join("/")));
            }
            check_template(child, sub, path, out)?;
        }
        path.pop();
    }
    Ok(())
}

/// Decodes and validates the literal part of the template.
fn check_literals(rule: &ExtractionRule) -> Result<(), String> {
    let stripped = strip_placeholders(&rule.template);
    let mut errors = Vec::new();
    let event = NewsEvent::from_node(&stripped, &mut errors);
    if let Some(e) = errors.first() {
        return Err(format!("template: {e}"));
    }
    let mut report = crate::model::ValidationReport::new();
    if let Some(ev) = event {
        ev.validate_into(&mut report);
    }
    // Required-field constraints only make sense once slots are filled.
    match report.errors.iter().find(|e| e.code != "required") {
        Some(e) => Err(format!("template: {}: {}", e.path, e.message)),
        None => Ok(()),
    }
}

fn strip_placeholders(node: &Node) -> Node {
    let children = node
        .children()
        .iter()
        .filter(|c| placeholder_var(c).is_none())
        .map(strip_placeholders)
        .filter(|c| c.is_leaf() || !c.children().is_empty())
        .collect();
    if node.is_leaf() {
        node.clone()
    } else {
        Node::branch(node.name.clone(), children)
    }
}

/// Whether readings of a slot kind can fill a field kind.
pub fn compatible(slot: SlotKind, field: FieldKind) -> bool {
    use EntityKind as E;
    let entity = match slot {
        SlotKind::Integer => return matches!(field, FieldKind::Leaf(LeafKind::Integer | LeafKind::Decimal)),
        SlotKind::Entity(k) => k,
    };
    match (entity, field) {
        (E::Person, FieldKind::Record(f)) => f == Person::FIELDS,
        (E::Organization, FieldKind::Record(f)) => f == Organization::FIELDS,
        (E::Location, FieldKind::Record(f)) => f == Location::FIELDS,
        (E::Person | E::Organization, FieldKind::Party) => true,
        (E::Location, FieldKind::Leaf(LeafKind::Country)) => true,
        (E::Money, FieldKind::Money) => true,
        (E::Number, FieldKind::Leaf(LeafKind::Integer | LeafKind::Decimal | LeafKind::Measure)) => true,
        (E::Percent, FieldKind::Leaf(LeafKind::Decimal)) => true,
        (E::Duration, FieldKind::Leaf(LeafKind::Text | LeafKind::Measure)) => true,
        (E::Temperature | E::Speed | E::Distance, FieldKind::Leaf(LeafKind::Measure)) => true,
        (E::Product | E::Person | E::Organization | E::Location | E::Date, FieldKind::Leaf(LeafKind::Text)) => true,
        _ => false,
    }
}
