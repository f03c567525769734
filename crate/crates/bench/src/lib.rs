//! Inputs shared by the throughput benches.

use std::path::{Path, PathBuf};

use newsform::padoof::{build_index, corpus_files};
use newsform::rules::Resources;
use newsform::CorpusIndex;

pub const STORY: &str = "An earthquake struck western Colombia on Monday, killing at least 143 people and injuring \
more than 900 as it toppled buildings across the coffee-growing heartland, civil defense officials said. \
The Federal Reserve raised its federal funds target to 5.25 percent. Al Khartum was injured.";

fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn resources() -> Resources {
    Resources::load_root(&workspace().join("data")).expect("bundled resources load")
}

/// The fixture corpus replicated `copies` times under distinct ids.
pub fn corpus(copies: usize) -> CorpusIndex {
    let files = corpus_files(&workspace().join("crates/core/tests/fixtures/corpus")).expect("fixture corpus");
    let base = build_index(&files).0;
    let docs = (0..copies)
        .flat_map(|i| base.docs().iter().map(move |d| (i, d)))
        .map(|(i, d)| newsform::padoof::IndexedDoc::new(format!("{}-{i:04}", d.id), &d.path, d.form.clone()))
        .collect();
    CorpusIndex::from_docs(docs)
}
