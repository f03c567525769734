//! Shared fixtures and a seeded generator of valid NewsForms.

#![allow(dead_code)]

pub mod oracle;
pub mod vocab;

use std::path::PathBuf;
use std::sync::OnceLock;

use newsform::model::schema::{FieldKind, FieldSpec, LeafKind};
use newsform::model::{EventKind, Head, NewsEvent, NewsForm, Node, Timestamp};
use newsform::rules::Resources;
use rand::seq::SliceRandom;
use rand::Rng;

pub const INTRO: &str = "An earthquake struck western Colombia on Monday, killing at least 143 people and \
injuring more than 900 as it toppled buildings across the country's coffee-growing heartland, \
civil defense officials said.";

pub const INTRO_FORM: &str = "<NewsForm>
  <Head>
    <DatelineTime>19990125T181917Z</DatelineTime>
  </Head>
  <InjuryFatality>
    <Cause>Earthquake</Cause>
    <InjuredCount>900</InjuredCount>
    <KilledCount>143</KilledCount>
    <Source><Function>Civil Defense Official</Function></Source>
    <AtLocation>
      <Country>COL</Country>
      <Latitude>4.29</Latitude>
      <Longitude>-75.68</Longitude>
    </AtLocation>
  </InjuryFatality>
</NewsForm>
";

pub const FEDWATCH: &str = "The Federal Reserve raised its federal funds target to 5.25 percent.";

pub const JOSPIN: &str = "Prime Minister Lionel Jospin kept silent on the fate of a key government ally ... \
Jospin, confronted with a political time-bomb ... \
Beyond saying this was an affair for justice system, he maintained an awkward silence.";

pub const KHARTUM: &str = "Al Khartum was injured.";

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn fixture_corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/corpus")
}

pub fn resources() -> &'static Resources {
    static RES: OnceLock<Resources> = OnceLock::new();
    RES.get_or_init(|| Resources::load_root(&data_dir()).expect("bundled resources load"))
}

const WORDS: &[&str] = &["alpha", "Bravo", "charlie", "Delta Works", "echo & sons", "Foxtrot <Ltd>", "golf"];
const COUNTRIES: &[&str] = &["USA", "COL", "FRA", "SDN", "JPN", "BRA"];
const STATES: &[&str] = &["NY", "CA", "TX"];
const CURRENCIES: &[&str] = &["USD", "EUR", "JPY"];
const UNITS: &[&str] = &["", " miles", " mph", " years"];

pub fn random_leaf(rng: &mut impl Rng, kind: LeafKind) -> String {
    match kind {
        LeafKind::Text => WORDS.choose(rng).unwrap().to_string(),
        LeafKind::Token => ["Nasdaq", "GrossDomesticProduct", "Flu", "Bank"].choose(rng).unwrap().to_string(),
        LeafKind::Integer => rng.gen_range(0..5000).to_string(),
        LeafKind::Decimal => format!("{}.{:02}", rng.gen_range(0..90), rng.gen_range(0..100)),
        LeafKind::Measure => format!("{}{}", rng.gen_range(1..400), UNITS.choose(rng).unwrap()),
        LeafKind::Timestamp => format!("1999{:02}{:02}T{:02}0000Z", rng.gen_range(1..13), rng.gen_range(1..29), rng.gen_range(0..24)),
        LeafKind::Country => COUNTRIES.choose(rng).unwrap().to_string(),
        LeafKind::State => STATES.choose(rng).unwrap().to_string(),
        LeafKind::Currency => CURRENCIES.choose(rng).unwrap().to_string(),
        LeafKind::Ticker => ["BEL", "ACM", "IBM", "T"].choose(rng).unwrap().to_string(),
        LeafKind::Term(values) => values.choose(rng).unwrap().to_string(),
    }
}

fn random_field(rng: &mut impl Rng, spec: &FieldSpec, depth: usize) -> Node {
    match spec.kind {
        FieldKind::Leaf(k) => Node::leaf(spec.tag, random_leaf(rng, k)),
        composite => {
            let fields = composite.children().unwrap();
            let mut kids = Vec::new();
            for f in fields {
                let want = matches!(composite, FieldKind::Money) || (depth < 3 && rng.gen_bool(0.35));
                if want {
                    kids.push(random_field(rng, f, depth + 1));
                }
            }
            if kids.is_empty() {
                kids.push(random_field(rng, &fields[0], depth + 1));
            }
            Node::branch(spec.tag, kids)
        }
    }
}

/// Decoded event and whether it is fully valid. `None` when it has errors
/// other than missing required fields.
fn check(node: &Node) -> Option<(NewsEvent, bool)> {
    let mut errors = Vec::new();
    let ev = NewsEvent::from_node(node, &mut errors)?;
    if !errors.is_empty() {
        return None;
    }
    let doc = NewsForm { head: Head::default(), events: vec![ev.clone()] };
    let report = doc.validate();
    report.errors.iter().all(|e| e.code == "required").then_some((ev, report.errors.is_empty()))
}

/// A valid event of `kind`. Fields are added one at a time and kept only
/// while the event still validates.
pub fn random_event(rng: &mut impl Rng, kind: EventKind) -> NewsEvent {
    loop {
        let mut node = Node::branch(kind.tag(), vec![]);
        let mut best = check(&node).expect("empty events decode");
        for spec in kind.fields() {
            let n = if spec.repeated { rng.gen_range(0..3) } else { usize::from(rng.gen_bool(0.5)) };
            for _ in 0..n {
                let mut next = node.clone();
                next.children_mut().unwrap().push(random_field(rng, spec, 1));
                if let Some(found) = check(&next) {
                    node = next;
                    best = found;
                }
            }
        }
        if let (event, true) = best {
            return event;
        }
    }
}

pub fn random_form(rng: &mut impl Rng) -> NewsForm {
    let dateline_time = if rng.gen_bool(0.8) {
        Some(Timestamp::parse(&random_leaf(rng, LeafKind::Timestamp)).expect("generated timestamps parse"))
    } else {
        None
    };
    let mut events = Vec::new();
    for _ in 0..rng.gen_range(0..5) {
        let kind = *EventKind::ALL.choose(rng).unwrap();
        events.push(random_event(rng, kind));
    }
    NewsForm { head: Head { dateline_time }, events }
}
