//! Sentence analysis: splitting, tagging, noun groups, entities and
//! reference resolution.

mod chunk;
mod coref;
mod entities;
mod tagger;
mod tokenize;

use std::fmt::{self, Write as _};
use std::ops::Range;
use std::str::FromStr;

use crate::lexicons::LexiconSet;
use crate::model::schema::FieldValue;
use crate::model::{Decimal, Location, Measure, Money, Organization, Person};

pub use chunk::chunk_noun_groups;
pub use coref::resolve_references;
pub use entities::parse_entities;
pub use tagger::tag_word;
pub use tokenize::{is_abbreviation, split_sentences, tokenize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Det,
    Noun,
    Propn,
    Pron,
    Verb,
    Adj,
    Adv,
    Num,
    Prep,
    Conj,
    Punct,
    Sym,
    Other,
}

impl Pos {
    pub fn as_str(&self) -> &'static str {
        match self {
            Pos::Det => "DET",
            Pos::Noun => "NOUN",
            Pos::Propn => "PROPN",
            Pos::Pron => "PRON",
            Pos::Verb => "VERB",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
            Pos::Num => "NUM",
            Pos::Prep => "PREP",
            Pos::Conj => "CONJ",
            Pos::Punct => "PUNCT",
            Pos::Sym => "SYM",
            Pos::Other => "OTHER",
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A word or punctuation mark; `start..end` are byte offsets into the source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub start: usize,
    pub end: usize,
    pub pos: Pos,
}

/// Inclusive token index range with its head noun.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NounGroup {
    pub first: usize,
    pub last: usize,
    pub head: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityKind {
    Person,
    Location,
    Organization,
    Product,
    Number,
    Percent,
    Money,
    Duration,
    Temperature,
    Speed,
    Distance,
    Date,
}

impl EntityKind {
    pub const ALL: [EntityKind; 12] = [
        EntityKind::Person,
        EntityKind::Location,
        EntityKind::Organization,
        EntityKind::Product,
        EntityKind::Number,
        EntityKind::Percent,
        EntityKind::Money,
        EntityKind::Duration,
        EntityKind::Temperature,
        EntityKind::Speed,
        EntityKind::Distance,
        EntityKind::Date,
    ];

    pub fn id_prefix(&self) -> &'static str {
        match self {
            EntityKind::Person => "PERSON",
            EntityKind::Location => "LOC",
            EntityKind::Organization => "ORG",
            EntityKind::Product => "PRODUCT",
            EntityKind::Number => "NUM",
            EntityKind::Percent => "PCT",
            EntityKind::Money => "MONEY",
            EntityKind::Duration => "DUR",
            EntityKind::Temperature => "TEMP",
            EntityKind::Speed => "SPEED",
            EntityKind::Distance => "DIST",
            EntityKind::Date => "DATE",
        }
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for EntityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EntityKind::ALL
            .iter()
            .copied()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| format!("unknown entity kind `{s}`"))
    }
}

/// A named product, optionally with model year and the carrier operating it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Product {
    pub name: String,
    pub maker: Option<String>,
    pub year: Option<String>,
    pub carrier: Option<String>,
}

/// One interpretation of a span of text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntityReading {
    Person(Person),
    Location(Location),
    Organization(Organization),
    Product(Product),
    Number(Decimal),
    Percent(Decimal),
    Money(Money),
    Duration(Measure),
    Temperature(Measure),
    Speed(Measure),
    Distance(Measure),
    Date(String),
}

impl EntityReading {
    pub fn kind(&self) -> EntityKind {
        match self {
            EntityReading::Person(_) => EntityKind::Person,
            EntityReading::Location(_) => EntityKind::Location,
            EntityReading::Organization(_) => EntityKind::Organization,
            EntityReading::Product(_) => EntityKind::Product,
            EntityReading::Number(_) => EntityKind::Number,
            EntityReading::Percent(_) => EntityKind::Percent,
            EntityReading::Money(_) => EntityKind::Money,
            EntityReading::Duration(_) => EntityKind::Duration,
            EntityReading::Temperature(_) => EntityKind::Temperature,
            EntityReading::Speed(_) => EntityKind::Speed,
            EntityReading::Distance(_) => EntityKind::Distance,
            EntityReading::Date(_) => EntityKind::Date,
        }
    }

    pub fn as_person(&self) -> Option<&Person> {
        match self {
            EntityReading::Person(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for EntityReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let record = match self {
            EntityReading::Person(p) => Some(p.encode("Person")),
            EntityReading::Location(l) => Some(l.encode("Location")),
            EntityReading::Organization(o) => Some(o.encode("Organization")),
            _ => None,
        };
        if let Some(node) = record {
            let fields: Vec<String> = node.leaves().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
            return write!(f, "{}{{{}}}", self.kind(), fields.join(";"));
        }
        match self {
            EntityReading::Product(p) => {
                write!(f, "Product{{{}", p.name)?;
                for (k, v) in [("maker", &p.maker), ("year", &p.year), ("carrier", &p.carrier)] {
                    if let Some(v) = v {
                        write!(f, ";{k}={v}")?;
                    }
                }
                f.write_str("}")
            }
            EntityReading::Number(d) | EntityReading::Percent(d) => write!(f, "{}{{{d}}}", self.kind()),
            EntityReading::Money(m) => write!(f, "Money{{{} {}}}", m.amount, m.currency.as_str()),
            EntityReading::Duration(m)
            | EntityReading::Temperature(m)
            | EntityReading::Speed(m)
            | EntityReading::Distance(m) => write!(f, "{}{{{m}}}", self.kind()),
            EntityReading::Date(d) => write!(f, "Date{{{d}}}"),
            _ => unreachable!(),
        }
    }
}

/// What produced a mention.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// A lexicon entry covering the span.
    Lexicon,
    /// A title or given name followed by a capitalized run.
    Composed,
    /// An unknown capitalized run.
    Guess,
    Pronoun,
    Numeric,
    Calendar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntityMention {
    /// Inclusive token range within the sentence.
    pub first: usize,
    pub last: usize,
    pub readings: Vec<EntityReading>,
    pub evidence: Evidence,
    pub resolved_id: Option<String>,
    /// Set by the resolver when a pronoun has no antecedent or several.
    pub ambiguous: bool,
}

impl EntityMention {
    /// Kind of the first (preferred) reading.
    pub fn kind(&self) -> EntityKind {
        self.readings[0].kind()
    }

    pub fn len(&self) -> usize {
        self.last + 1 - self.first
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SentenceParse {
    pub span: Range<usize>,
    pub tokens: Vec<Token>,
    pub noun_groups: Vec<NounGroup>,
    pub mentions: Vec<EntityMention>,
}

impl SentenceParse {
    /// Mention starting at token `i`, if any.
    pub fn mention_at(&self, i: usize) -> Option<&EntityMention> {
        self.mentions.iter().find(|m| m.first == i)
    }
}

/// Tokenizes and tags `text[span]`; offsets stay relative to `text`.
pub fn tag_pos(text: &str, span: Range<usize>) -> Vec<Token> {
    let mut seen_word = false;
    tokenize::tokenize_range(text, span)
        .into_iter()
        .map(|r| {
            let word = &text[r.clone()];
            let initial = !seen_word;
            if word.chars().any(char::is_alphanumeric) {
                seen_word = true;
            }
            Token { text: word.to_string(), start: r.start, end: r.end, pos: tagger::tag_word(word, initial) }
        })
        .collect()
}

/// Runs every analysis stage over a story.
pub fn analyze(text: &str, lex: &LexiconSet) -> Vec<SentenceParse> {
    let parses = split_sentences(text)
        .into_iter()
        .map(|span| {
            let tokens = tag_pos(text, span.clone());
            let noun_groups = chunk_noun_groups(&tokens);
            let mut parse = SentenceParse { span, tokens, noun_groups, mentions: Vec::new() };
            parse.mentions = parse_entities(&parse, lex);
            parse
        })
        .collect();
    resolve_references(parses)
}

/// Token table with noun-group and mention overlays, one sentence after another.
pub fn debug_dump(parses: &[SentenceParse]) -> String {
    let mut out = String::new();
    for (n, s) in parses.iter().enumerate() {
        let _ = writeln!(out, "# sentence {n} {}..{}", s.span.start, s.span.end);
        for t in &s.tokens {
            let _ = writeln!(out, "{}\t{}\t{}", t.start, t.text, t.pos);
        }
        let words = |a: usize, b: usize| {
            s.tokens[a..=b].iter().map(|t| t.text.as_str()).collect::<Vec<_>>().join(" ")
        };
        for g in &s.noun_groups {
            let _ = writeln!(out, "[NG {}-{} head={} \"{}\"]", g.first, g.last, g.head, words(g.first, g.last));
        }
        for m in &s.mentions {
            let id = m.resolved_id.as_deref().unwrap_or("-");
            let flag = if m.ambiguous { " ambiguous" } else { "" };
            let readings: Vec<String> = m.readings.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(
                out,
                "[ENT {}-{} {id}{flag} \"{}\" {}]",
                m.first,
                m.last,
                words(m.first, m.last),
                readings.join(" | ")
            );
        }
    }
    out
}
