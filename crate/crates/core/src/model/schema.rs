//! Field descriptors and the traits every NewsForm element implements.
//!
//! Typed records are declared with the [`record!`] macro, which derives the
//! struct, its field table, and the conversions to and from [`Node`] trees.
//! Child order in the declaration is the canonical output order.

use std::fmt;

use thiserror::Error;

use super::node::{Content, Node};
use super::validate::ValidationReport;

/// Value class of a leaf element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafKind {
    Text,
    /// Open vocabulary: a CamelCase token such as `ATPTour`.
    Token,
    Integer,
    Decimal,
    /// Decimal with an optional unit, written `12.5 miles`.
    Measure,
    Timestamp,
    Country,
    State,
    Currency,
    Ticker,
    /// Closed vocabulary.
    Term(&'static [&'static str]),
}

impl LeafKind {
    /// Whether `<`, `<=`, `>`, `>=` are meaningful for this leaf.
    pub fn is_ordered(&self) -> bool {
        matches!(self, LeafKind::Integer | LeafKind::Decimal | LeafKind::Timestamp)
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, LeafKind::Integer | LeafKind::Decimal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Leaf(LeafKind),
    Record(&'static [FieldSpec]),
    Money,
    /// Organization or Person, written as the bare children of either.
    Party,
}

impl FieldKind {
    /// Child fields of a composite kind.
    pub fn children(&self) -> Option<&'static [FieldSpec]> {
        match self {
            FieldKind::Leaf(_) => None,
            FieldKind::Record(fields) => Some(fields),
            FieldKind::Money => Some(super::entities::Money::FIELDS),
            FieldKind::Party => Some(super::entities::PARTY_FIELDS),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    pub tag: &'static str,
    pub kind: FieldKind,
    pub repeated: bool,
}

/// Looks up a child field by element name.
pub fn find_field(fields: &'static [FieldSpec], tag: &str) -> Option<&'static FieldSpec> {
    fields.iter().find(|f| f.tag == tag)
}

/// Structural problem found while turning a [`Node`] tree into typed values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("{path}: unknown element <{element}>")]
    UnknownElement { path: String, element: String },
    #[error("{path}: element <{element}> may appear at most once")]
    Duplicate { path: String, element: String },
    #[error("{path}: missing required element <{element}>")]
    Missing { path: String, element: String },
    #[error("{path}: {message}")]
    Type { path: String, message: String },
    #[error("{path}: {message}")]
    Structure { path: String, message: String },
}

impl DecodeError {
    pub fn path(&self) -> &str {
        match self {
            DecodeError::UnknownElement { path, .. }
            | DecodeError::Duplicate { path, .. }
            | DecodeError::Missing { path, .. }
            | DecodeError::Type { path, .. }
            | DecodeError::Structure { path, .. } => path,
        }
    }

    pub fn is_schema_error(&self) -> bool {
        !matches!(self, DecodeError::Type { .. })
    }
}

pub(crate) fn child_path(parent: &str, tag: &str) -> String {
    if parent.is_empty() {
        tag.to_string()
    } else {
        format!("{parent}/{tag}")
    }
}

/// A constraint violation on a single value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: &'static str,
    pub message: String,
}

impl Violation {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        Violation { code, message: message.into() }
    }
}

/// Scalar values carried as element text.
pub trait LeafValue: Sized + Clone + fmt::Debug + PartialEq {
    const KIND: LeafKind;

    /// Parses element text. Errors are type errors, not validation findings.
    fn parse_text(text: &str) -> Result<Self, String>;

    fn to_text(&self) -> String;

    /// Constraint check beyond the type itself (ranges, code tables, vocabularies).
    fn violation(&self) -> Option<Violation> {
        None
    }
}

/// Anything that can occupy a child element slot.
pub trait FieldValue: Sized + Clone + fmt::Debug + PartialEq {
    const KIND: FieldKind;

    fn encode(&self, tag: &str) -> Node;

    fn decode(node: &Node, path: &str, errors: &mut Vec<DecodeError>) -> Option<Self>;

    fn check(&self, path: &str, report: &mut ValidationReport);
}

/// Extra cross-field constraints for a record. Most records have none.
pub trait Constraints {
    fn check_record(&self, _path: &str, _report: &mut ValidationReport) {}
}

/// Cardinality wrapper of a field: `Option<T>` (at most once) or `Vec<T>` (repeatable).
pub trait Slot: Default {
    type Item: FieldValue;
    const REPEATED: bool;

    fn items(&self) -> &[Self::Item];

    /// Returns false when the slot is single-valued and already occupied.
    fn insert(&mut self, item: Self::Item) -> bool;
}

impl<T: FieldValue> Slot for Option<T> {
    type Item = T;
    const REPEATED: bool = false;

    fn items(&self) -> &[T] {
        self.as_slice()
    }

    fn insert(&mut self, item: T) -> bool {
        if self.is_some() {
            return false;
        }
        *self = Some(item);
        true
    }
}

impl<T: FieldValue> Slot for Vec<T> {
    type Item = T;
    const REPEATED: bool = true;

    fn items(&self) -> &[T] {
        self
    }

    fn insert(&mut self, item: T) -> bool {
        self.push(item);
        true
    }
}

/// Decodes the text of a leaf node; empty elements read as empty text.
pub(crate) fn decode_leaf<T: LeafValue>(
    node: &Node,
    path: &str,
    errors: &mut Vec<DecodeError>,
) -> Option<T> {
    let text = match &node.content {
        Content::Text(t) => t.as_str(),
        Content::Children(c) if c.is_empty() => "",
        Content::Children(_) => {
            errors.push(DecodeError::Structure {
                path: path.to_string(),
                message: "expected text content, found child elements".into(),
            });
            return None;
        }
    };
    match T::parse_text(text) {
        Ok(v) => Some(v),
        Err(message) => {
            errors.push(DecodeError::Type { path: path.to_string(), message });
            None
        }
    }
}

/// Children of a composite node; text content is a structure error unless blank.
pub(crate) fn composite_children<'a>(
    node: &'a Node,
    path: &str,
    errors: &mut Vec<DecodeError>,
) -> Option<&'a [Node]> {
    match &node.content {
        Content::Children(c) => Some(c),
        Content::Text(t) if t.trim().is_empty() => Some(&[]),
        Content::Text(_) => {
            errors.push(DecodeError::Structure {
                path: path.to_string(),
                message: "expected child elements, found text".into(),
            });
            None
        }
    }
}

macro_rules! leaf_field {
    ($($ty:ty),* $(,)?) => {$(
        impl $crate::model::schema::FieldValue for $ty {
            const KIND: $crate::model::schema::FieldKind =
                $crate::model::schema::FieldKind::Leaf(<$ty as $crate::model::schema::LeafValue>::KIND);

            fn encode(&self, tag: &str) -> $crate::model::node::Node {
                $crate::model::node::Node::leaf(tag, $crate::model::schema::LeafValue::to_text(self))
            }

            fn decode(
                node: &$crate::model::node::Node,
                path: &str,
                errors: &mut Vec<$crate::model::schema::DecodeError>,
            ) -> Option<Self> {
                $crate::model::schema::decode_leaf(node, path, errors)
            }

            fn check(&self, path: &str, report: &mut $crate::model::validate::ValidationReport) {
                if let Some(v) = $crate::model::schema::LeafValue::violation(self) {
                    report.error(path, v.code, v.message);
                }
            }
        }
    )*};
}
pub(crate) use leaf_field;

/// Declares a typed record with optional (`Option<T>`) and repeatable
/// (`Vec<T>`) children, each mapped to its element name.
macro_rules! record {
    (
        $(#[$meta:meta])*
        pub struct $name:ident {
            $( $(#[$fmeta:meta])* $field:ident : $slot:ty => $tag:literal ),* $(,)?
        }
    ) => {
        $(#[$meta])*
        #[derive(Clone, Debug, Default, PartialEq, Eq)]
        pub struct $name {
            $( $(#[$fmeta])* pub $field: $slot, )*
        }

        impl $name {
            pub const FIELDS: &'static [$crate::model::schema::FieldSpec] = &[
                $( $crate::model::schema::FieldSpec {
                    tag: $tag,
                    kind: <<$slot as $crate::model::schema::Slot>::Item as $crate::model::schema::FieldValue>::KIND,
                    repeated: <$slot as $crate::model::schema::Slot>::REPEATED,
                }, )*
            ];

            /// Encodes populated children in canonical order.
            pub fn to_children(&self) -> Vec<$crate::model::node::Node> {
                #[allow(unused_mut)]
                let mut out = Vec::new();
                $(
                    for v in $crate::model::schema::Slot::items(&self.$field) {
                        out.push($crate::model::schema::FieldValue::encode(v, $tag));
                    }
                )*
                out
            }

            /// Decodes children given in any order, collecting every problem.
            pub fn from_children(
                children: &[$crate::model::node::Node],
                path: &str,
                errors: &mut Vec<$crate::model::schema::DecodeError>,
            ) -> Self {
                #[allow(unused_mut)]
                let mut rec = Self::default();
                for child in children {
                    let cpath = $crate::model::schema::child_path(path, &child.name);
                    match child.name.as_str() {
                        $(
                            $tag => {
                                if let Some(v) = $crate::model::schema::FieldValue::decode(child, &cpath, errors) {
                                    if !$crate::model::schema::Slot::insert(&mut rec.$field, v) {
                                        errors.push($crate::model::schema::DecodeError::Duplicate {
                                            path: path.to_string(),
                                            element: child.name.clone(),
                                        });
                                    }
                                }
                            }
                        )*
                        _ => errors.push($crate::model::schema::DecodeError::UnknownElement {
                            path: path.to_string(),
                            element: child.name.clone(),
                        }),
                    }
                }
                rec
            }

            pub fn is_empty(&self) -> bool {
                true $( && $crate::model::schema::Slot::items(&self.$field).is_empty() )*
            }

            pub(crate) fn check_fields(&self, path: &str, report: &mut $crate::model::validate::ValidationReport) {
                $(
                    let items = $crate::model::schema::Slot::items(&self.$field);
                    for (i, v) in items.iter().enumerate() {
                        let p = if items.len() > 1 {
                            format!("{}[{}]", $crate::model::schema::child_path(path, $tag), i)
                        } else {
                            $crate::model::schema::child_path(path, $tag)
                        };
                        $crate::model::schema::FieldValue::check(v, &p, report);
                    }
                )*
                $crate::model::schema::Constraints::check_record(self, path, report);
            }
        }

        impl $crate::model::schema::FieldValue for $name {
            const KIND: $crate::model::schema::FieldKind =
                $crate::model::schema::FieldKind::Record($name::FIELDS);

            fn encode(&self, tag: &str) -> $crate::model::node::Node {
                $crate::model::node::Node::branch(tag, self.to_children())
            }

            fn decode(
                node: &$crate::model::node::Node,
                path: &str,
                errors: &mut Vec<$crate::model::schema::DecodeError>,
            ) -> Option<Self> {
                let children = $crate::model::schema::composite_children(node, path, errors)?;
                Some(Self::from_children(children, path, errors))
            }

            fn check(&self, path: &str, report: &mut $crate::model::validate::ValidationReport) {
                self.check_fields(path, report);
            }
        }
    };
}
pub(crate) use record;
