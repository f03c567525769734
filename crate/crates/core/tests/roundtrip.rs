mod common;

use common::{random_form, INTRO_FORM};
use newsform::{parse_newsform, serialize_newsform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn example_form_is_canonical() {
    let doc = parse_newsform(INTRO_FORM).unwrap();
    assert_eq!(serialize_newsform(&doc).unwrap(), INTRO_FORM);
}

#[test]
fn generated_documents_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut events = 0;
    for i in 0..100 {
        let doc = random_form(&mut rng);
        events += doc.events.len();
        let xml = serialize_newsform(&doc).unwrap_or_else(|e| panic!("doc {i}: {e}"));
        let back = parse_newsform(&xml).unwrap_or_else(|e| panic!("doc {i}: {e}\n{xml}"));
        assert_eq!(back, doc, "doc {i}\n{xml}");
        assert_eq!(serialize_newsform(&back).unwrap(), xml);
    }
    assert!(events > 100, "generator too sparse: {events} events");
}

#[test]
fn generator_fills_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let leaves: usize = (0..50)
        .flat_map(|_| random_form(&mut rng).events)
        .map(|e| e.to_node().leaves().len())
        .sum();
    assert!(leaves > 200, "{leaves}");
}
