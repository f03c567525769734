//! Structured news events: a typed document model with XML codec, a
//! rule-based extractor from English news text, and a corpus query engine.

pub mod lexicons;
pub mod model;
pub mod padoof;
pub mod pipeline;
pub mod rules;
pub mod xmlcodec;

pub use model::{
    classify_sentiment, validate, Decimal, EventKind, Head, Location, Money, NewsEvent, NewsForm,
    Organization, Party, Person, Sentiment, ValidationReport,
};
pub use xmlcodec::{parse_newsform, serialize_newsform, CodecError};
pub use padoof::{build_index, geo_distribution, parse_query, query, stats, Bucket, CorpusIndex, GeoDistribution, Query, QueryError};
pub use pipeline::{analyze, EntityKind, EntityMention, EntityReading, SentenceParse};
pub use rules::{
    apply_commonsense, apply_patterns, compile_rules, extract, merge_fragments, Diagnostic, ExtractionRule, Fragment,
    KnowledgeBase, ResourceError, Resources,
};
