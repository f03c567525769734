//! Generated queries checked against a linear scan of the raw XML.

mod common;

use std::collections::BTreeSet;

use common::oracle::{fixture, generate, oracle, run, value_pool, Class, OracleQuery, Pred};
use newsform::model::EventKind;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn generated_queries_match_linear_scan() {
    let (ix, docs) = fixture();
    let pool = value_pool(&docs);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut variants = BTreeSet::new();
    let mut ops = BTreeSet::new();
    let mut nonempty = 0;
    for _ in 0..400 {
        let q = generate(&mut rng, &pool);
        let expected = oracle(&docs, &q);
        assert_eq!(run(&ix, &q), expected, "query: {}", q.text);
        variants.extend(q.variant.clone());
        ops.extend(q.preds.iter().map(|p| p.op));
        nonempty += usize::from(!expected.is_empty());
    }
    assert_eq!(variants.len(), EventKind::ALL.len());
    assert_eq!(ops.len(), 7, "{ops:?}");
    assert!(nonempty > 120, "only {nonempty} queries had hits");
}

#[test]
fn target_ticker_excludes_acquirers() {
    let (ix, docs) = fixture();
    let q = OracleQuery {
        text: "Deal.Target.Ticker = BEL".into(),
        variant: Some("Deal".into()),
        preds: vec![Pred { path: vec!["Target".into(), "Ticker".into()], class: Class::Text, op: "=", lit: "BEL".into() }],
        ..Default::default()
    };
    let hits = run(&ix, &q);
    assert_eq!(hits, oracle(&docs, &q));
    assert_eq!(hits, [("d1".to_string(), None)]);
}

#[test]
fn killed_count_ordering() {
    let (ix, docs) = fixture();
    for desc in [true, false] {
        let q = OracleQuery {
            text: format!("InjuryFatality sort KilledCount {}", if desc { "desc" } else { "asc" }),
            variant: Some("InjuryFatality".into()),
            sort: Some((vec!["KilledCount".into()], desc)),
            ..Default::default()
        };
        let hits = run(&ix, &q);
        assert_eq!(hits, oracle(&docs, &q));
        let ids: Vec<&str> = hits.iter().map(|(id, _)| id.as_str()).collect();
        let mut expected = ["d3", "d6", "d2", "d5"];
        if !desc {
            expected.reverse();
        }
        assert_eq!(ids, expected);
    }
}
