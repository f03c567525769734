//! Entity recognition over a tagged sentence.
//!
//! Names are found first (lexicon spans, title and given-name compositions,
//! pronouns, calendar words, unknown capitalized runs); numeric expressions
//! are then read from the tokens that remain.

use std::str::FromStr;

use super::{EntityMention, EntityReading, Evidence, Pos, Product, SentenceParse, Token};
use crate::lexicons::{LexKind, LexiconEntry, LexiconSet};
use crate::model::{
    Continent, CountryCode, Decimal, Latitude, Location, Longitude, Measure, Money, Organization,
    Person, Sex, Sport, StateCode, Ticker, Token as OpenToken,
};

const NAMED_KINDS: &[LexKind] = &[
    LexKind::PersonName,
    LexKind::GivenName,
    LexKind::FamilyName,
    LexKind::City,
    LexKind::State,
    LexKind::Country,
    LexKind::Region,
    LexKind::Continent,
    LexKind::OrgName,
    LexKind::SportsTeam,
    LexKind::Product,
];

const WEEKDAYS: &[&str] = &["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"];
const MONTHS: &[&str] = &[
    "January", "February", "March", "April", "May", "June", "July", "August", "September",
    "October", "November", "December",
];

/// Longest run of capitalized words a composed name may take.
const MAX_NAME_RUN: usize = 4;

struct Ctx<'a> {
    toks: &'a [Token],
    words: Vec<&'a str>,
    lex: &'a LexiconSet,
}

impl<'a> Ctx<'a> {
    fn longest(&self, at: usize, kinds: &[LexKind]) -> Option<(usize, Vec<&'a LexiconEntry>)> {
        self.lex.longest_match(&self.words, at, |e| kinds.contains(&e.kind))
    }

    fn is_propn(&self, i: usize) -> bool {
        self.toks.get(i).is_some_and(|t| t.pos == Pos::Propn)
    }

    fn surface(&self, first: usize, last: usize) -> String {
        self.words[first..=last].join(" ")
    }
}

pub fn parse_entities(sentence: &SentenceParse, lex: &LexiconSet) -> Vec<EntityMention> {
    let cx = Ctx { toks: &sentence.tokens, words: sentence.tokens.iter().map(|t| t.text.as_str()).collect(), lex };
    let n = cx.toks.len();
    let mut claimed = vec![false; n];
    let mut mentions = Vec::new();

    let mut i = 0;
    while i < n {
        match named_at(&cx, i) {
            Some(m) => {
                claimed[m.first..=m.last].iter_mut().for_each(|c| *c = true);
                i = m.last + 1;
                mentions.push(m);
            }
            None => i += 1,
        }
    }

    let mut i = 0;
    while i < n {
        if claimed[i] {
            i += 1;
            continue;
        }
        match numeric_at(&cx, i, &claimed) {
            Some(m) => {
                i = m.last + 1;
                mentions.push(m);
            }
            None => i += 1,
        }
    }

    mentions.sort_by_key(|m| m.first);
    mentions
}

fn mention(first: usize, last: usize, readings: Vec<EntityReading>, evidence: Evidence) -> EntityMention {
    let mut unique: Vec<EntityReading> = Vec::with_capacity(readings.len());
    for r in readings {
        if !unique.contains(&r) {
            unique.push(r);
        }
    }
    EntityMention { first, last, readings: unique, evidence, resolved_id: None, ambiguous: false }
}

fn named_at(cx: &Ctx<'_>, i: usize) -> Option<EntityMention> {
    let tok = &cx.toks[i];

    if tok.pos == Pos::Pron {
        let e = cx.lex.lookup_kind(&tok.text, LexKind::Pronoun).into_iter().next()?;
        let person = Person { sex: e.attr("sex").map(Sex::new), ..Default::default() };
        return Some(mention(i, i, vec![EntityReading::Person(person)], Evidence::Pronoun));
    }

    if tok.pos == Pos::Num {
        return model_year_product(cx, i);
    }
    if !matches!(tok.pos, Pos::Propn | Pos::Noun | Pos::Adj) {
        return None;
    }

    let lexical = cx.longest(i, NAMED_KINDS);
    let titled = title_composition(cx, i);
    let given = given_composition(cx, i);
    let lex_len = lexical.as_ref().map_or(0, |(l, _)| *l);
    let title_len = titled.as_ref().map_or(0, |m| m.len());
    let given_len = given.as_ref().map_or(0, |m| m.len());

    if lex_len > 0 && lex_len >= title_len && lex_len >= given_len {
        let (len, entries) = lexical.unwrap();
        return Some(lexical_mention(cx, i, len, &entries));
    }
    if title_len > 0 && title_len >= given_len {
        return titled;
    }
    if given_len > 0 {
        return given;
    }

    if tok.pos != Pos::Propn {
        return None;
    }
    if WEEKDAYS.contains(&tok.text.as_str()) || MONTHS.contains(&tok.text.as_str()) {
        return Some(mention(i, i, vec![EntityReading::Date(tok.text.clone())], Evidence::Calendar));
    }
    unknown_run(cx, i)
}

fn title_composition(cx: &Ctx<'_>, i: usize) -> Option<EntityMention> {
    let (tlen, entries) = cx.longest(i, &[LexKind::Title])?;
    let title = entries[0];
    let mut person = Person::default();
    if title.attr("role") == Some("prefix") {
        person.prefix = Some(cx.surface(i, i + tlen - 1));
    } else {
        person.function = Some(title.normalized.clone());
    }
    person.sex = title.attr("sex").map(Sex::new);

    let start = i + tlen;
    let mut end = start;
    while end < cx.toks.len() && end - start < MAX_NAME_RUN && cx.is_propn(end) && !starts_name(cx, end) {
        end += 1;
    }
    if end > start {
        fill_name(cx, &mut person, start, end - 1);
    } else if person.prefix.is_some() {
        return None;
    }
    Some(mention(i, end.max(start) - 1, vec![EntityReading::Person(person)], Evidence::Composed))
}

/// Whether a new title begins at `i`, which ends a name run.
fn starts_name(cx: &Ctx<'_>, i: usize) -> bool {
    cx.lex.has_kind(cx.words[i], LexKind::Title)
}

fn given_composition(cx: &Ctx<'_>, i: usize) -> Option<EntityMention> {
    if !cx.is_propn(i) || !cx.lex.has_kind(cx.words[i], LexKind::GivenName) || !cx.is_propn(i + 1) {
        return None;
    }
    let mut end = i + 1;
    while end < cx.toks.len() && end - i < MAX_NAME_RUN && cx.is_propn(end) && !starts_name(cx, end) {
        end += 1;
    }
    if end == i + 1 {
        return None;
    }
    let mut person = Person::default();
    fill_name(cx, &mut person, i, end - 1);
    Some(mention(i, end - 1, vec![EntityReading::Person(person)], Evidence::Composed))
}

/// Given (with sex from the given-name lexicon), middle and family names from a capitalized run.
fn fill_name(cx: &Ctx<'_>, person: &mut Person, first: usize, last: usize) {
    let given = cx.lex.lookup_kind(cx.words[first], LexKind::GivenName).into_iter().next();
    if let (Some(g), true) = (given, first < last || person.function.is_none() && person.prefix.is_none()) {
        person.given = Some(g.normalized.clone());
        if person.sex.is_none() {
            person.sex = g.attr("sex").map(Sex::new);
        }
        if last > first {
            person.family = Some(cx.words[last].to_string());
            if last > first + 1 {
                person.additional = Some(cx.surface(first + 1, last - 1));
            }
        }
    } else if first == last {
        person.family = Some(cx.words[first].to_string());
    } else {
        person.given = Some(cx.words[first].to_string());
        person.family = Some(cx.words[last].to_string());
        if last > first + 1 {
            person.additional = Some(cx.surface(first + 1, last - 1));
        }
    }
}

fn lexical_mention(cx: &Ctx<'_>, i: usize, len: usize, entries: &[&LexiconEntry]) -> EntityMention {
    let mut last = i + len - 1;
    let orgs: Vec<&&LexiconEntry> = entries.iter().filter(|e| e.kind == LexKind::OrgName).collect();

    // An organization name directly before a product names its carrier.
    if !orgs.is_empty() {
        if let Some((plen, products)) = cx.longest(last + 1, &[LexKind::Product]) {
            let mut product = product_of(products[0]);
            product.carrier = Some(orgs[0].normalized.clone());
            return mention(i, last + plen, vec![EntityReading::Product(product)], Evidence::Lexicon);
        }
    }

    // A company suffix turns the span into an organization.
    if let Some((slen, suffix)) = cx.longest(last + 1, &[LexKind::OrgSuffix]) {
        if cx.toks[last].pos == Pos::Propn {
            let org = match orgs.first() {
                Some(e) => organization_of(e),
                None => Organization::named(format!("{} {}", cx.surface(i, last), suffix[0].normalized)),
            };
            last += slen;
            return mention(i, last, vec![EntityReading::Organization(org)], Evidence::Lexicon);
        }
    }

    let readings = entries.iter().filter_map(|e| reading_of(e)).collect();
    mention(i, last, readings, Evidence::Lexicon)
}

fn model_year_product(cx: &Ctx<'_>, i: usize) -> Option<EntityMention> {
    let word = cx.words[i];
    let year: u32 = word.parse().ok().filter(|_| word.len() == 4)?;
    if !(1900..=2099).contains(&year) {
        return None;
    }
    let (plen, products) = cx.longest(i + 1, &[LexKind::Product])?;
    let mut product = product_of(products[0]);
    product.year = Some(word.to_string());
    Some(mention(i, i + plen, vec![EntityReading::Product(product)], Evidence::Lexicon))
}

fn unknown_run(cx: &Ctx<'_>, i: usize) -> Option<EntityMention> {
    let mut end = i + 1;
    while end < cx.toks.len() && end - i < MAX_NAME_RUN && cx.is_propn(end) && cx.longest(end, NAMED_KINDS).is_none() {
        if cx.lex.has_kind(cx.words[end], LexKind::OrgSuffix) {
            end += 1;
            break;
        }
        end += 1;
    }
    let last = end - 1;
    let surface = cx.surface(i, last);
    if last > i && cx.lex.has_kind(cx.words[last], LexKind::OrgSuffix) {
        let org = Organization::named(surface);
        return Some(mention(i, last, vec![EntityReading::Organization(org)], Evidence::Guess));
    }
    if let Some((slen, suffix)) = cx.longest(end, &[LexKind::OrgSuffix]) {
        let org = Organization::named(format!("{surface} {}", suffix[0].normalized));
        return Some(mention(i, last + slen, vec![EntityReading::Organization(org)], Evidence::Guess));
    }
    let mut person = Person::default();
    fill_name(cx, &mut person, i, last);
    let readings = vec![EntityReading::Person(person), EntityReading::Organization(Organization::named(surface))];
    Some(mention(i, last, readings, Evidence::Guess))
}

fn product_of(e: &LexiconEntry) -> Product {
    Product { name: e.normalized.clone(), maker: e.attr("maker").map(str::to_string), ..Default::default() }
}

fn organization_of(e: &LexiconEntry) -> Organization {
    Organization {
        full_name: Some(e.normalized.clone()),
        organization_type: e.attr("type").map(OpenToken::new),
        ticker: e.attr("ticker").map(Ticker::new),
        ..Default::default()
    }
}

fn decimal_attr(e: &LexiconEntry, key: &str) -> Option<Decimal> {
    e.attr(key).and_then(|v| Decimal::from_str(v).ok())
}

/// Maps a lexicon entry to the reading it denotes, if it names an entity.
pub(crate) fn reading_of(e: &LexiconEntry) -> Option<EntityReading> {
    let country = || e.attr("country").map(CountryCode::new);
    Some(match e.kind {
        LexKind::PersonName => EntityReading::Person(Person {
            given: e.attr("given").map(str::to_string),
            family: Some(e.attr("family").unwrap_or(&e.normalized).to_string()),
            sex: e.attr("sex").filter(|s| !s.is_empty()).map(Sex::new),
            ..Default::default()
        }),
        LexKind::GivenName => EntityReading::Person(Person {
            given: Some(e.normalized.clone()),
            sex: e.attr("sex").map(Sex::new),
            ..Default::default()
        }),
        LexKind::FamilyName => {
            EntityReading::Person(Person { family: Some(e.normalized.clone()), ..Default::default() })
        }
        LexKind::Title => {
            EntityReading::Person(Person { function: Some(e.normalized.clone()), ..Default::default() })
        }
        LexKind::City => EntityReading::Location(Location {
            city: Some(e.normalized.clone()),
            country: country(),
            state: e.attr("state").map(StateCode::new),
            latitude: decimal_attr(e, "lat").map(Latitude),
            longitude: decimal_attr(e, "lon").map(Longitude),
            ..Default::default()
        }),
        LexKind::State => EntityReading::Location(Location {
            state: Some(StateCode::new(e.normalized.clone())),
            country: country(),
            ..Default::default()
        }),
        LexKind::Country => EntityReading::Location(Location {
            country: Some(CountryCode::new(e.normalized.clone())),
            ..Default::default()
        }),
        LexKind::Region => EntityReading::Location(Location {
            region: Some(e.normalized.clone()),
            country: country(),
            ..Default::default()
        }),
        LexKind::Continent => EntityReading::Location(Location {
            continent: Some(Continent::new(e.normalized.clone())),
            ..Default::default()
        }),
        LexKind::OrgName => EntityReading::Organization(organization_of(e)),
        LexKind::SportsTeam => EntityReading::Organization(Organization {
            full_name: Some(e.normalized.clone()),
            organization_type: Some(OpenToken::new("SportsTeam")),
            sport: e.attr("sport").map(Sport::new),
            ..Default::default()
        }),
        LexKind::Product => EntityReading::Product(product_of(e)),
        LexKind::OrgSuffix
        | LexKind::CurrencyUnit
        | LexKind::Unit
        | LexKind::NumberWord
        | LexKind::Pronoun => return None,
    })
}

fn digits_value(word: &str) -> Option<Decimal> {
    let (int, frac) = match word.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (word, None),
    };
    let groups: Vec<&str> = int.split(',').collect();
    let well_grouped = groups.len() == 1
        || (!groups[0].is_empty() && groups[0].len() <= 3 && groups[1..].iter().all(|g| g.len() == 3));
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !well_grouped || !groups.iter().all(|g| all_digits(g)) || frac.is_some_and(|f| !all_digits(f)) {
        return None;
    }
    let plain: String = int.chars().filter(|c| *c != ',').collect();
    let text = match frac {
        Some(f) => format!("{plain}.{f}"),
        None => plain,
    };
    Decimal::from_str(&text).ok()
}

fn number_word(cx: &Ctx<'_>, word: &str) -> Option<(Decimal, Option<String>)> {
    let e = cx.lex.lookup_kind(word, LexKind::NumberWord).into_iter().next()?;
    let v = Decimal::from_str(&e.normalized).ok()?;
    Some((v, e.attr("role").map(str::to_string)))
}

/// Reads a number starting at token `i`; returns its value and the next token index.
fn read_number(cx: &Ctx<'_>, i: usize, claimed: &[bool]) -> Option<(Decimal, usize)> {
    let free = |j: usize| j < cx.toks.len() && !claimed[j];
    if !free(i) {
        return None;
    }
    let mut j = i;
    let mut total = Decimal::ZERO;
    let mut current: Option<Decimal> = None;
    let from_digits = match digits_value(cx.words[i]) {
        Some(v) => {
            current = Some(v);
            j += 1;
            true
        }
        None => false,
    };

    // Number words, multipliers and magnitudes: "two hundred", "5,000 million",
    // "three thousand four hundred", "twenty-five".
    while free(j) {
        let values: Option<Vec<_>> = cx.words[j].split('-').map(|p| number_word(cx, p)).collect();
        let Some(values) = values else { break };
        if from_digits && values.iter().any(|(_, role)| role.is_none()) {
            break;
        }
        for (v, role) in values {
            let base = current.unwrap_or(Decimal::from_int(1));
            match role.as_deref() {
                Some("multiplier") => current = Some(base.checked_mul(&v)?),
                Some("magnitude") => {
                    total = total.checked_add(&base.checked_mul(&v)?)?;
                    current = None;
                }
                _ => current = Some(current.unwrap_or(Decimal::ZERO).checked_add(&v)?),
            }
        }
        j += 1;
    }

    if j == i {
        return None;
    }
    let value = total.checked_add(&current.unwrap_or(Decimal::ZERO))?;
    Some((value.normalized(), j))
}

fn numeric_at(cx: &Ctx<'_>, i: usize, claimed: &[bool]) -> Option<EntityMention> {
    let mut j = i;
    let mut currency = None;
    let prefix = cx.lex.longest_match(&cx.words, j, |e| {
        e.kind == LexKind::CurrencyUnit && e.attr("position") == Some("prefix")
    });
    if let Some((len, es)) = prefix {
        currency = Some(es[0].normalized.clone());
        j += len;
    }
    let (value, mut next) = read_number(cx, j, claimed)?;

    // Ranges keep their first bound: "two to three hours". Without a
    // following unit, "230 to 195" stays two numbers.
    if next + 1 < cx.toks.len() && cx.words[next].eq_ignore_ascii_case("to") {
        if let Some((_, after)) = read_number(cx, next + 1, claimed) {
            let unit_follows = cx.lex.longest_match(&cx.words, after, |e| {
                e.kind == LexKind::Unit
                    || (e.kind == LexKind::CurrencyUnit && e.attr("position") == Some("suffix"))
            });
            if unit_follows.is_some() {
                next = after;
            }
        }
    }

    let available = |from: usize, len: usize| (from..from + len).all(|k| !claimed[k]);
    if currency.is_none() {
        let suffix = cx.lex.longest_match(&cx.words, next, |e| {
            e.kind == LexKind::CurrencyUnit && e.attr("position") == Some("suffix")
        });
        if let Some((len, es)) = suffix.filter(|(len, _)| available(next, *len)) {
            currency = Some(es[0].normalized.clone());
            next += len;
        }
    }
    if let Some(code) = currency {
        let money = Money::new(value, &code);
        return Some(mention(i, next - 1, vec![EntityReading::Money(money)], Evidence::Numeric));
    }

    let unit = cx.lex.longest_match(&cx.words, next, |e| e.kind == LexKind::Unit);
    if let Some((len, es)) = unit.filter(|(len, _)| available(next, *len)) {
        let e = es[0];
        let measure = Measure::new(value, Some(&e.normalized));
        let reading = match e.attr("measure") {
            Some("Percent") => EntityReading::Percent(value),
            Some("Duration") => EntityReading::Duration(measure),
            Some("Distance") => EntityReading::Distance(measure),
            Some("Temperature") => EntityReading::Temperature(measure),
            Some("Speed") => EntityReading::Speed(measure),
            _ => EntityReading::Number(value),
        };
        return Some(mention(i, next + len - 1, vec![reading], Evidence::Numeric));
    }
    Some(mention(i, next - 1, vec![EntityReading::Number(value)], Evidence::Numeric))
}
