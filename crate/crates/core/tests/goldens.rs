mod common;

use common::{resources, FEDWATCH, INTRO, INTRO_FORM, JOSPIN, KHARTUM};
use newsform::model::{
    Competition, Count, EventKind, FedAction, InterestRate, LegalEvent, Organization, SentenceType,
    Sport, Verdict,
};
use newsform::pipeline::EntityReading;
use newsform::{apply_commonsense, parse_newsform, NewsEvent};

/// Earthquake event of the example form without the coordinates, which the
/// bundled gazetteer does not carry.
fn expected_quake() -> NewsEvent {
    let mut doc = parse_newsform(INTRO_FORM).unwrap();
    let NewsEvent::InjuryFatality(mut quake) = doc.events.remove(0) else { panic!() };
    let loc = quake.at_location.as_mut().unwrap();
    loc.latitude = None;
    loc.longitude = None;
    quake.into()
}

#[test]
fn earthquake_paragraph() {
    let run = resources().extract(INTRO);
    assert_eq!(run.form.events, vec![expected_quake()]);
    let NewsEvent::InjuryFatality(q) = &run.form.events[0] else { panic!() };
    assert_eq!(q.killed_count, Some(Count(143)));
    assert_eq!(q.injured_count, Some(Count(900)));
    assert!(run.form.validate().errors.is_empty());
}

#[test]
fn fedwatch_sentence() {
    let run = resources().extract(FEDWATCH);
    let [NewsEvent::FedWatch(f)] = &run.form.events[..] else { panic!("{:?}", run.form.events) };
    assert_eq!(f.fed_action, Some(FedAction::new("Raise")));
    assert_eq!(f.interest_rate, Some(InterestRate::new("FederalFundsTarget")));
    assert_eq!(f.rate, Some("5.25".parse().unwrap()));
    assert!(f.actor.is_none());
}

#[test]
fn jospin_mentions_share_one_person_id() {
    let parses = newsform::analyze(JOSPIN, &resources().lexicons);
    let mut ids = Vec::new();
    for s in &parses {
        for m in &s.mentions {
            let surface: Vec<&str> = s.tokens[m.first..=m.last].iter().map(|t| t.text.as_str()).collect();
            let surface = surface.join(" ");
            if ["Prime Minister Lionel Jospin", "Jospin", "he"].contains(&surface.as_str()) {
                ids.push((surface, m.resolved_id.clone()));
            }
        }
    }
    assert_eq!(ids.len(), 3, "{ids:?}");
    let first = ids[0].1.clone().expect("resolved");
    assert!(first.starts_with("PERSON"), "{first}");
    assert!(ids.iter().all(|(_, id)| id.as_deref() == Some(first.as_str())), "{ids:?}");
}

#[test]
fn al_khartum_binds_the_person() {
    let lex = &resources().lexicons;
    let parses = newsform::analyze(KHARTUM, lex);
    let m = parses[0].mention_at(0).expect("mention at sentence start");
    assert!(m.readings.iter().any(|r| matches!(r, EntityReading::Location(_))), "city reading exists");

    let run = resources().extract(KHARTUM);
    let [frag] = &run.fragments[..] else { panic!("{:?}", run.fragments) };
    assert_eq!(frag.rule_id, "person-injured");
    assert!(frag.bindings.iter().all(|b| matches!(b.reading, EntityReading::Person(_))));

    let [NewsEvent::InjuryFatality(q)] = &run.form.events[..] else { panic!() };
    let [victim] = &q.injured[..] else { panic!() };
    assert_eq!(victim.full_name().as_deref(), Some("Al Khartum"));
    assert!(q.at_location.is_none());
}

fn team(sport: &str) -> Organization {
    Organization { full_name: Some("New York Giants".into()), sport: Some(Sport::new(sport)), ..Default::default() }
}

#[test]
fn commonsense_examples() {
    let kb = &resources().kb;
    let innocent = LegalEvent {
        judgment: Some(Verdict::new("Innocent")),
        sentence_type: Some(SentenceType::new("Jail")),
        sentence_duration: Some("3 years".into()),
        ..Default::default()
    };
    let wrong_sport =
        Competition { sport: Some(Sport::new("Baseball")), team: Some(team("Football")), ..Default::default() };
    let fine = Competition { sport: Some(Sport::new("Football")), team: Some(team("Football")), ..Default::default() };

    let (out, diags) = apply_commonsense(vec![innocent.into(), wrong_sport.into(), fine.clone().into()], kb);
    let cleared = LegalEvent { judgment: Some(Verdict::new("Innocent")), ..Default::default() };
    assert_eq!(out, vec![NewsEvent::from(cleared), NewsEvent::from(fine)]);
    let ids: Vec<&str> = diags.iter().map(|d| d.id.as_str()).collect();
    assert_eq!(ids, ["innocent-not-sentenced", "innocent-not-sentenced", "team-plays-sport"]);

    let (again, more) = apply_commonsense(out.clone(), kb);
    assert_eq!(again, out);
    assert!(more.is_empty());
}

#[test]
fn stories_end_to_end() {
    let cases = [
        ("The House passed the bill by 230 to 195.", EventKind::Vote),
        ("The New York Yankees won the World Series.", EventKind::Competition),
        ("John Smith was found not guilty.", EventKind::LegalEvent),
    ];
    for (text, kind) in cases {
        let run = resources().extract(text);
        assert_eq!(run.form.events.iter().map(NewsEvent::kind).collect::<Vec<_>>(), [kind], "{text}");
        assert!(run.form.validate().errors.is_empty());
    }
    let empty = resources().extract("");
    assert!(empty.form.events.is_empty());
    assert!(empty.form.head.dateline_time.is_none());
}

#[test]
fn at_least_maps_to_the_count() {
    let run = resources().extract("A bomb exploded, killing at least 12 people.");
    let quake = run.form.events.iter().find_map(|e| match e {
        NewsEvent::InjuryFatality(q) => Some(q.clone()),
        _ => None,
    });
    assert_eq!(quake.and_then(|q| q.killed_count), Some(Count(12)));
}
