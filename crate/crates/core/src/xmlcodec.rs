//! NewsForm XML reading and canonical writing.
//!
//! Canonical form: UTF-8, no XML declaration, two-space indentation, one
//! element per line, children in the declared field order. A nested
//! composite holding a single leaf is written on one line, as in
//! `<Source><Function>Civil Defense Official</Function></Source>`.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::model::schema::{DecodeError, FieldValue};
use crate::model::{validate, Content, Head, NewsEvent, NewsForm, Node, ValidationReport};

pub const ROOT: &str = "NewsForm";
pub const HEAD: &str = "Head";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("XML syntax error at {line}:{column}: {message}")]
    Syntax { line: u32, column: u32, message: String },
    #[error("{}", join_errors(.0))]
    Decode(Vec<DecodeError>),
    #[error("document does not validate: {}", .0.errors.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(ValidationReport),
}

fn join_errors(errors: &[DecodeError]) -> String {
    errors.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

impl CodecError {
    /// Decode problems, if this is a decode failure.
    pub fn decode_errors(&self) -> &[DecodeError] {
        match self {
            CodecError::Decode(e) => e,
            _ => &[],
        }
    }
}

/// Parses XML text into an untyped element tree. Attributes, namespaces and
/// mixed content are rejected; comments and processing instructions are ignored.
pub fn parse_node(xml: &str) -> Result<Node, CodecError> {
    let doc = roxmltree::Document::parse(xml).map_err(|e| {
        let pos = e.pos();
        CodecError::Syntax { line: pos.row, column: pos.col, message: e.to_string() }
    })?;
    let mut errors = Vec::new();
    let node = convert(doc.root_element(), "", &mut errors);
    if errors.is_empty() {
        Ok(node)
    } else {
        Err(CodecError::Decode(errors))
    }
}

fn convert(el: roxmltree::Node<'_, '_>, parent: &str, errors: &mut Vec<DecodeError>) -> Node {
    let name = el.tag_name().name().to_string();
    let path = crate::model::schema::child_path(parent, &name);
    if el.tag_name().namespace().is_some() {
        errors.push(DecodeError::Structure { path: path.clone(), message: "namespaces are not allowed".into() });
    }
    if let Some(attr) = el.attributes().next() {
        errors.push(DecodeError::Structure {
            path: path.clone(),
            message: format!("attribute `{}` is not allowed", attr.name()),
        });
    }
    let has_elements = el.children().any(|c| c.is_element());
    if !has_elements {
        let text: String = el.children().filter(|c| c.is_text()).filter_map(|c| c.text()).collect();
        if text.is_empty() {
            return Node::branch(name, Vec::new());
        }
        return Node::leaf(name, text);
    }
    let mut children = Vec::new();
    for c in el.children() {
        if c.is_element() {
            children.push(convert(c, &path, errors));
        } else if c.is_text() && !c.text().unwrap_or("").trim().is_empty() {
            errors.push(DecodeError::Structure {
                path: path.clone(),
                message: "text mixed with child elements".into(),
            });
        }
    }
    Node::branch(name, children)
}

/// Decodes an element tree rooted at `<NewsForm>`.
pub fn decode_newsform(root: &Node) -> Result<NewsForm, Vec<DecodeError>> {
    let mut errors = Vec::new();
    if root.name != ROOT {
        errors.push(DecodeError::Structure {
            path: root.name.clone(),
            message: format!("root element must be <{ROOT}>"),
        });
        return Err(errors);
    }
    let children = match &root.content {
        Content::Children(c) => c.as_slice(),
        Content::Text(t) if t.trim().is_empty() => &[],
        Content::Text(_) => {
            errors.push(DecodeError::Structure { path: ROOT.into(), message: "expected child elements".into() });
            return Err(errors);
        }
    };
    let mut head: Option<Head> = None;
    let mut events = Vec::new();
    for c in children {
        if c.name == HEAD {
            if let Some(h) = Head::decode(c, HEAD, &mut errors) {
                if head.replace(h).is_some() {
                    errors.push(DecodeError::Duplicate { path: ROOT.into(), element: HEAD.into() });
                }
            }
        } else if let Some(ev) = NewsEvent::from_node(c, &mut errors) {
            events.push(ev);
        }
    }
    if errors.is_empty() {
        Ok(NewsForm { head: head.unwrap_or_default(), events })
    } else {
        Err(errors)
    }
}

/// Parses a NewsForm document. Value constraints are not checked here; see [`validate`].
pub fn parse_newsform(xml: &str) -> Result<NewsForm, CodecError> {
    let root = parse_node(xml)?;
    decode_newsform(&root).map_err(CodecError::Decode)
}

/// Element tree of a document, with `<Head>` always present.
pub fn encode_newsform(doc: &NewsForm) -> Node {
    let mut children = vec![Node::branch(HEAD, doc.head.to_children())];
    children.extend(doc.events.iter().map(NewsEvent::to_node));
    Node::branch(ROOT, children)
}

/// Writes canonical XML. Documents with validation errors are refused.
pub fn serialize_newsform(doc: &NewsForm) -> Result<String, CodecError> {
    let report = validate(doc);
    if !report.is_ok() {
        return Err(CodecError::Invalid(report));
    }
    Ok(write_node(&encode_newsform(doc)))
}

/// Canonical text of any element tree.
pub fn write_node(node: &Node) -> String {
    let mut out = String::new();
    write_at(&mut out, node, 0).expect("writing to a String cannot fail");
    out
}

fn write_at(out: &mut String, node: &Node, depth: usize) -> fmt::Result {
    let indent = "  ".repeat(depth);
    out.push_str(&indent);
    write_inline(out, node, depth >= 2)?;
    if let Content::Children(c) = &node.content {
        if !c.is_empty() && !(depth >= 2 && single_leaf(c)) {
            out.push('\n');
            for child in c {
                write_at(out, child, depth + 1)?;
            }
            writeln!(out, "{indent}</{}>", node.name)?;
            return Ok(());
        }
    }
    out.push('\n');
    Ok(())
}

fn single_leaf(children: &[Node]) -> bool {
    matches!(children, [only] if only.is_leaf())
}

/// Writes `node` on the current line when it is a leaf, empty, or (if
/// `allow_nested`) a single-leaf composite; otherwise only its start tag.
fn write_inline(out: &mut String, node: &Node, allow_nested: bool) -> fmt::Result {
    match &node.content {
        Content::Text(t) => {
            write!(out, "<{}>", node.name)?;
            escape_into(out, t);
            write!(out, "</{}>", node.name)
        }
        Content::Children(c) if c.is_empty() => write!(out, "<{}/>", node.name),
        Content::Children(c) if allow_nested && single_leaf(c) => {
            write!(out, "<{}>", node.name)?;
            write_inline(out, &c[0], false)?;
            write!(out, "</{}>", node.name)
        }
        Content::Children(_) => write!(out, "<{}>", node.name),
    }
}

fn escape_into(out: &mut String, text: &str) {
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            c => out.push(c),
        }
    }
}
