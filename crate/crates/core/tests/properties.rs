mod common;

use common::vocab::{accepted, event_with, mutate, term_fields};
use common::{data_dir, random_event, random_form, resources, FEDWATCH, INTRO, KHARTUM};
use newsform::model::{
    Competition, Count, EventKind, Head, InjuryFatality, LegalEvent, NewsEvent, NewsForm, Organization,
    SentenceType, Sport, Verdict,
};
use newsform::padoof::{build_index, IndexedDoc};
use newsform::pipeline::EntityReading;
use newsform::rules::{compile_named, extract, SlotKind};
use newsform::{apply_commonsense, geo_distribution, parse_query, query, serialize_newsform, CorpusIndex};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn every_listed_value_is_accepted() {
    let fields = term_fields();
    assert!(fields.len() > 40, "{}", fields.len());
    for (kind, path, values) in &fields {
        for v in *values {
            assert!(accepted(&event_with(*kind, path, v)), "{}/{} = {v}", kind.tag(), path.join("/"));
        }
    }
}

proptest! {
    #[test]
    fn mutated_values_are_rejected(field in any::<prop::sample::Index>(), value in any::<prop::sample::Index>(), how in any::<u8>()) {
        let fields = term_fields();
        let (kind, path, values) = &fields[field.index(fields.len())];
        let bad = mutate(values[value.index(values.len())], how);
        prop_assume!(!values.contains(&bad.as_str()));
        prop_assert!(!accepted(&event_with(*kind, path, &bad)), "{}/{} = {bad:?}", kind.tag(), path.join("/"));
    }
}

#[test]
fn every_field_rejects_one_mutation() {
    for (kind, path, values) in term_fields() {
        let bad = format!("{}Zz", values[0]);
        assert!(!accepted(&event_with(kind, &path, &bad)), "{}/{} = {bad}", kind.tag(), path.join("/"));
    }
}

fn violating(rng: &mut ChaCha8Rng) -> NewsEvent {
    if rng.gen_bool(0.5) {
        LegalEvent {
            judgment: Some(Verdict::new("Innocent")),
            sentence_type: rng.gen_bool(0.7).then(|| SentenceType::new("Jail")),
            sentence_duration: rng.gen_bool(0.5).then(|| "2 years".to_string()),
            ..Default::default()
        }
        .into()
    } else {
        let team = Organization { sport: Some(Sport::new(["Football", "Baseball"][rng.gen_range(0..2)])), ..Default::default() };
        Competition { sport: Some(Sport::new("Baseball")), team: Some(team), ..Default::default() }.into()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commonsense_is_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut events = Vec::new();
        for _ in 0..rng.gen_range(1..8) {
            if rng.gen_bool(0.3) {
                events.push(violating(&mut rng));
            } else {
                let kind = *EventKind::ALL.choose(&mut rng).unwrap();
                events.push(random_event(&mut rng, kind));
            }
        }
        let kb = &resources().kb;
        let (once, _) = apply_commonsense(events, kb);
        let (twice, diags) = apply_commonsense(once.clone(), kb);
        prop_assert_eq!(twice, once);
        prop_assert!(diags.is_empty());
    }

    #[test]
    fn geo_tallies_conserve_events(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ix = random_index(&mut rng, 8);
        for q in ["*", "InjuryFatality", "Trip", "Deal"] {
            let parsed = parse_query(q).unwrap();
            let geo = geo_distribution(&ix, &parsed);
            let tallied: usize = geo.countries.values().map(|t| t.total()).sum::<usize>() + geo.unlocated.total();
            let expected = ix.docs().iter().flat_map(|d| &d.form.events)
                .filter(|e| parsed.variant.is_none_or(|v| e.kind() == v)).count();
            prop_assert_eq!(tallied, expected, "{}", q);
        }
    }

    #[test]
    fn index_rebuild_is_deterministic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let docs: Vec<IndexedDoc> = (0..6).map(|i| IndexedDoc::new(format!("doc{i}"), format!("doc{i}.newsform.xml"), random_form(&mut rng))).collect();
        let mut shuffled = docs.clone();
        shuffled.shuffle(&mut rng);
        let a = CorpusIndex::from_docs(docs);
        let b = CorpusIndex::from_docs(shuffled);
        prop_assert_eq!(&a, &b);
        let q = parse_query("*").unwrap();
        prop_assert_eq!(query(&a, &q), query(&b, &q));
    }

    #[test]
    fn equal_sort_keys_keep_doc_order(seed in any::<u64>(), desc in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let docs: Vec<IndexedDoc> = (0..12)
            .map(|i| {
                let killed = rng.gen_bool(0.8).then(|| Count(rng.gen_range(0..3)));
                let ev = InjuryFatality { killed_count: killed, ..Default::default() };
                IndexedDoc::new(format!("d{i:02}"), "x", NewsForm { head: Head::default(), events: vec![ev.into()] })
            })
            .collect();
        let ix = CorpusIndex::from_docs(docs);
        let q = parse_query(&format!("InjuryFatality sort KilledCount {}", if desc { "desc" } else { "asc" })).unwrap();
        let hits = query(&ix, &q);
        prop_assert_eq!(hits.len(), 12);
        for w in hits.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            match (&a.sort_value, &b.sort_value) {
                (Some(x), Some(y)) => {
                    let o = x.compare(y).unwrap();
                    let ordered = if desc { o.is_ge() } else { o.is_le() };
                    prop_assert!(ordered);
                    if o.is_eq() { prop_assert!(a.id < b.id); }
                }
                (None, None) => prop_assert!(a.id < b.id),
                (None, Some(_)) => prop_assert!(false, "missing value sorted first"),
                (Some(_), None) => {}
            }
        }
    }
}

fn random_index(rng: &mut ChaCha8Rng, n: usize) -> CorpusIndex {
    let docs = (0..n).map(|i| IndexedDoc::new(format!("r{i}"), format!("r{i}.newsform.xml"), random_form(rng))).collect();
    CorpusIndex::from_docs(docs)
}

#[test]
fn index_from_files_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut paths = Vec::new();
    for i in 0..10 {
        let p = dir.path().join(format!("g{i}.newsform.xml"));
        std::fs::write(&p, serialize_newsform(&random_form(&mut rng)).unwrap()).unwrap();
        paths.push(p);
    }
    let (a, da) = build_index(&paths);
    paths.reverse();
    let (b, db) = build_index(&paths);
    assert!(da.is_empty() && db.is_empty());
    assert_eq!(a, b);
    assert_eq!(a.len(), 10);
}

const PIECES: &[&str] = &[
    "The Federal Reserve", "raised its federal funds target to", "5.25 percent", "John Smith", "was injured",
    "killing at least", "12", "people", "injuring more than", "New York", "won the World Series", "IBM", "acquired",
    "Lotus", "for $3.5 billion", "Al Khartum", "in Sudan", "earthquake struck", "western Colombia", "was found not guilty",
    "was sentenced to", "three years", "in prison", ",", "said", "the House", "passed the bill by", "230 to 195",
    "he", "Prime Minister Lionel Jospin", "on Monday", "the",
];

fn sentences() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::collection::vec(0..PIECES.len(), 2..12), 1..4).prop_map(|ss| {
        ss.iter()
            .map(|s| format!("{}.", s.iter().map(|&i| PIECES[i]).collect::<Vec<_>>().join(" ")))
            .collect::<Vec<_>>()
            .join(" ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bound_readings_have_the_slot_kind(text in sentences()) {
        let res = resources();
        let run = res.extract(&text);
        for f in &run.fragments {
            let rule = res.rules.iter().find(|r| r.id == f.rule_id).unwrap();
            for b in &f.bindings {
                let ok = match rule.slot_kind(&b.var).unwrap() {
                    SlotKind::Entity(k) => b.reading.kind() == k,
                    SlotKind::Integer => matches!(&b.reading, EntityReading::Number(d) if d.is_integer()),
                };
                prop_assert!(ok, "{} binds {} to {:?} in {:?}", rule.id, b.var, b.reading, text);
            }
        }
        prop_assert!(run.form.validate().errors.is_empty(), "{:?}", text);
    }
}

/// Splits rule source into rule groups: a rule line plus indented continuations.
fn rule_groups(src: &str) -> Vec<String> {
    let mut groups: Vec<String> = Vec::new();
    for line in src.lines() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if line.starts_with(char::is_whitespace) {
            let last = groups.last_mut().expect("continuation follows a rule");
            last.push('\n');
            last.push_str(line);
        } else {
            groups.push(line.to_string());
        }
    }
    groups
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rule_file_order_only_breaks_priority_ties(seed in any::<u64>()) {
        let src = std::fs::read_to_string(data_dir().join("rules/starter.rules")).unwrap();
        let base = compile_named(&src, "starter:").unwrap();
        let mut groups = rule_groups(&src);
        groups.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let shuffled = compile_named(&groups.join("\n"), "starter:").unwrap();
        prop_assert_eq!(shuffled.len(), base.len());
        prop_assert!(shuffled.windows(2).all(|w| w[0].priority >= w[1].priority));
        let prio = |rs: &[newsform::ExtractionRule]| rs.iter().map(|r| r.priority).collect::<Vec<_>>();
        prop_assert_eq!(prio(&shuffled), prio(&base));

        let res = resources();
        for text in [INTRO, FEDWATCH, KHARTUM, "The House passed the bill by 230 to 195."] {
            let a = extract(text, &res.lexicons, &base, &res.kb);
            if a.diagnostics.iter().any(|d| d.stage == "merge") {
                continue;
            }
            let b = extract(text, &res.lexicons, &shuffled, &res.kb);
            prop_assert_eq!(&a.form, &b.form, "{}", text);
        }
    }
}
