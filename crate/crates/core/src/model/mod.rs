//! Typed NewsForm documents and their validation.

pub mod codes;
pub mod decimal;
pub mod entities;
pub mod events;
pub mod leaf;
pub mod newsform;
pub mod node;
pub mod schema;
pub mod sentiment;
pub mod validate;
pub mod vocab;

pub use decimal::{Decimal, DecimalError};
pub use entities::{Location, Money, Organization, Party, Person};
pub use events::*;
pub use leaf::*;
pub use newsform::{validate, Head, NewsForm};
pub use node::{Content, Node};
pub use schema::{DecodeError, FieldKind, FieldSpec, FieldValue, LeafKind, LeafValue};
pub use sentiment::{classify_sentiment, Sentiment, SentimentTable};
pub use validate::{Issue, ValidationReport};
pub use vocab::*;
