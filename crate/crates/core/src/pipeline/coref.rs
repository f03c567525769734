//! Document-wide reference resolution.

use std::collections::HashMap;

use super::{EntityKind, EntityMention, EntityReading, Evidence, SentenceParse};
use crate::model::Person;

struct PersonEntity {
    id: String,
    person: Person,
    /// Backed by a lexicon or a composed name rather than a bare guess.
    strong: bool,
    last_seen: usize,
}

#[derive(Default)]
struct Resolver {
    counters: HashMap<&'static str, usize>,
    people: Vec<PersonEntity>,
    others: HashMap<(EntityKind, String), String>,
    clock: usize,
}

fn same(a: &Option<String>, b: &Option<String>) -> bool {
    matches!((a, b), (Some(x), Some(y)) if x.eq_ignore_ascii_case(y))
}

/// Copies fields known from `from` into gaps of `into`.
fn merge_person(into: &mut Person, from: &Person) {
    macro_rules! fill {
        ($($f:ident),*) => {$(
            if into.$f.is_none() {
                into.$f = from.$f.clone();
            }
        )*};
    }
    fill!(given, family, additional, function, prefix, sex, age, country, suffix);
}

impl Resolver {
    fn fresh(&mut self, kind: EntityKind) -> String {
        let n = self.counters.entry(kind.id_prefix()).or_insert(0);
        *n += 1;
        format!("{}{}", kind.id_prefix(), n)
    }

    fn most_recent(&self, pred: impl Fn(&PersonEntity) -> bool) -> Option<usize> {
        self.people
            .iter()
            .enumerate()
            .filter(|(_, e)| pred(e))
            .max_by_key(|(_, e)| e.last_seen)
            .map(|(i, _)| i)
    }

    fn find_person(&self, p: &Person) -> Option<usize> {
        let named = p.given.is_some() || p.family.is_some();
        if p.given.is_some() && p.family.is_some() {
            if let Some(i) = self.most_recent(|e| same(&e.person.given, &p.given) && same(&e.person.family, &p.family)) {
                return Some(i);
            }
        }
        if p.family.is_some() {
            let compatible = |e: &PersonEntity| p.given.is_none() || e.person.given.is_none() || same(&e.person.given, &p.given);
            if let Some(i) = self.most_recent(|e| same(&e.person.family, &p.family) && compatible(e)) {
                return Some(i);
            }
        }
        if !named && p.function.is_some() {
            return self.most_recent(|e| same(&e.person.function, &p.function));
        }
        None
    }

    fn person(&mut self, m: &mut EntityMention) {
        let EntityReading::Person(p) = &m.readings[0] else { return };
        let p = p.clone();
        let strong = matches!(m.evidence, Evidence::Lexicon | Evidence::Composed);
        let found = self.find_person(&p);
        let idx = match found {
            Some(i) => {
                let e = &mut self.people[i];
                merge_person(&mut e.person, &p);
                e.strong |= strong;
                i
            }
            None => {
                let id = self.fresh(EntityKind::Person);
                self.people.push(PersonEntity { id, person: p, strong, last_seen: 0 });
                self.people.len() - 1
            }
        };
        self.people[idx].last_seen = self.clock;
        m.resolved_id = Some(self.people[idx].id.clone());
    }

    fn pronoun(&mut self, m: &mut EntityMention) {
        let sex = m.readings[0].as_person().and_then(|p| p.sex.clone());
        let agrees = |e: &PersonEntity| e.strong && (sex.is_none() || e.person.sex.is_none() || e.person.sex == sex);
        let candidates = self.people.iter().filter(|e| agrees(e)).count();
        match self.most_recent(agrees) {
            Some(i) => {
                let e = &mut self.people[i];
                if e.person.sex.is_none() {
                    e.person.sex = sex;
                }
                e.last_seen = self.clock;
                m.resolved_id = Some(e.id.clone());
                m.readings = vec![EntityReading::Person(e.person.clone())];
                m.ambiguous = candidates > 1;
            }
            None => {
                m.resolved_id = Some(self.fresh(EntityKind::Person));
                m.ambiguous = true;
            }
        }
    }

    fn other(&mut self, m: &mut EntityMention) {
        let kind = m.kind();
        let key = match &m.readings[0] {
            EntityReading::Organization(o) => o.full_name.clone().or_else(|| o.nickname.clone()),
            EntityReading::Product(p) => Some(p.name.clone()),
            EntityReading::Location(_) => Some(m.readings[0].to_string()),
            _ => None,
        };
        let id = match key {
            Some(key) => match self.others.get(&(kind, key.clone())) {
                Some(id) => id.clone(),
                None => {
                    let id = self.fresh(kind);
                    self.others.insert((kind, key), id.clone());
                    id
                }
            },
            None => self.fresh(kind),
        };
        m.resolved_id = Some(id);
    }
}

/// Assigns an identifier to every mention; coreferent mentions share one.
///
/// People match on full name, then family name, then title. A pronoun takes
/// the most recent earlier person agreeing in sex; it is flagged ambiguous
/// when there is no such person or more than one.
pub fn resolve_references(mut parses: Vec<SentenceParse>) -> Vec<SentenceParse> {
    let mut r = Resolver::default();
    for s in &mut parses {
        for m in &mut s.mentions {
            r.clock += 1;
            m.ambiguous = false;
            match (m.evidence, m.kind()) {
                (Evidence::Pronoun, _) => r.pronoun(m),
                (_, EntityKind::Person) => r.person(m),
                _ => r.other(m),
            }
        }
    }
    parses
}

#[cfg(test)]
mod tests {
    use crate::lexicons::{Lexicon, LexiconSet};
    use crate::pipeline::analyze;

    fn lex() -> LexiconSet {
        LexiconSet::new(vec![
            Lexicon::parse("g", "Lionel\tGivenName\tLionel\tsex=Male\nJacques\tGivenName\tJacques\tsex=Male\n", true).unwrap(),
            Lexicon::parse("t", "Prime Minister\tTitle\tPrime Minister\nhe\tPronoun\the\tsex=Male\n", false).unwrap(),
        ])
    }

    fn ids(text: &str) -> Vec<(String, String, bool)> {
        analyze(text, &lex())
            .iter()
            .flat_map(|s| {
                s.mentions.iter().map(|m| {
                    let words: Vec<_> = s.tokens[m.first..=m.last].iter().map(|t| t.text.as_str()).collect();
                    (words.join(" "), m.resolved_id.clone().unwrap(), m.ambiguous)
                })
            })
            .collect()
    }

    #[test]
    fn distinct_names_distinct_ids() {
        let r = ids("Lionel Jospin met Jacques Chirac.");
        assert_eq!(r[0].1, "PERSON1");
        assert_eq!(r[1].1, "PERSON2");
    }

    #[test]
    fn title_and_family_link() {
        let r = ids("Prime Minister Lionel Jospin spoke. Jospin left. The Prime Minister returned.");
        assert!(r.iter().all(|(_, id, _)| id == "PERSON1"), "{r:?}");
    }

    #[test]
    fn orphan_pronoun() {
        let r = ids("He left.");
        assert_eq!(r, [("He".to_string(), "PERSON1".to_string(), true)]);
    }

    #[test]
    fn two_candidates_flag_ambiguity() {
        let r = ids("Lionel Jospin met Jacques Chirac. He left.");
        assert_eq!(r[2].1, "PERSON2");
        assert!(r[2].2);
    }
}
