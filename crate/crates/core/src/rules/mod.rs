//! Pattern rules that turn sentence parses into events, and the
//! commonsense checks run over the result.

mod dsl;
mod kb;
mod matcher;
mod merge;

use std::fmt;
use std::ops::Range;
use std::path::Path;

use thiserror::Error;

use crate::lexicons::{LexiconError, LexiconSet};
use crate::model::{validate, NewsEvent, NewsForm};
use crate::pipeline::{analyze, EntityReading, SentenceParse};

pub use dsl::{compatible, compile_named, compile_rules, sort_rules, Atom, ExtractionRule, Placeholder, RuleError, SlotKind, MAX_SKIP};
pub use kb::{apply_commonsense, apply_commonsense_extracted, Action, Check, CommonsenseRule, KbError, KnowledgeBase};
pub use matcher::apply_patterns;
pub use merge::merge_fragments;

/// Other readings a field could take, keyed by its template path.
pub type Alternatives = Vec<(String, Vec<EntityReading>)>;

/// A slot variable and the entity it was bound to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub var: String,
    /// Resolved entity id of the mention.
    pub id: Option<String>,
    pub reading: EntityReading,
}

/// One rule match: a partially filled event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    pub event: NewsEvent,
    pub bindings: Vec<Binding>,
    /// Other readings of a bound mention that also fit the slot, keyed by
    /// the template path they would fill.
    pub alternatives: Alternatives,
    pub sentence_index: usize,
    pub rule_id: String,
    pub priority: usize,
    pub order: usize,
    /// Token range matched within the sentence.
    pub tokens: Range<usize>,
}

/// A merged event together with readings it could be re-bound to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractedEvent {
    pub event: NewsEvent,
    pub alternatives: Alternatives,
}

/// One line of run diagnostics: `stage<TAB>id<TAB>location<TAB>message`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub stage: &'static str,
    pub id: String,
    pub location: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(stage: &'static str, id: &str, location: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic { stage, id: id.to_string(), location: location.into(), message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let clean = |s: &str| s.replace(['\t', '\n'], " ");
        write!(f, "{}\t{}\t{}\t{}", self.stage, clean(&self.id), clean(&self.location), clean(&self.message))
    }
}

/// Everything a run produced besides the document itself.
#[derive(Clone, Debug, Default)]
pub struct Extraction {
    pub form: NewsForm,
    pub parses: Vec<SentenceParse>,
    pub fragments: Vec<Fragment>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Full pipeline for one story. The returned form always validates:
/// events that fail are dropped and reported.
pub fn extract(text: &str, lex: &LexiconSet, rules: &[ExtractionRule], kb: &KnowledgeBase) -> Extraction {
    let parses = analyze(text, lex);
    let fragments = apply_patterns(&parses, rules);
    let (merged, mut diagnostics) = merge_fragments(&fragments);
    let (checked, more) = apply_commonsense_extracted(merged, kb);
    diagnostics.extend(more);

    let mut form = NewsForm::default();
    for ev in checked {
        let mut single = NewsForm::default();
        single.events.push(ev.event.clone());
        let report = validate(&single);
        if report.is_ok() {
            form.events.push(ev.event);
        } else {
            for issue in &report.errors {
                diagnostics.push(Diagnostic::new(
                    "validate",
                    ev.event.kind().tag(),
                    issue.path.clone(),
                    format!("{}; event dropped", issue.message),
                ));
            }
        }
    }
    Extraction { form, parses, fragments, diagnostics }
}

#[derive(Debug, Error)]
pub enum ResourceError {
    #[error("lexicons: {0}")]
    Lexicon(#[from] LexiconError),
    #[error("rules: {0}")]
    Rule(#[from] RuleError),
    #[error("knowledge base: {0}")]
    Kb(#[from] KbError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Lexicons, rules and knowledge base, loaded once and shared read-only.
#[derive(Clone, Debug)]
pub struct Resources {
    pub lexicons: LexiconSet,
    pub rules: Vec<ExtractionRule>,
    pub kb: KnowledgeBase,
}

impl Resources {
    /// Loads `lexicons/`, `rules/*.rules` (in file-name order) and `kb/`.
    pub fn load(lexicon_dir: &Path, rules_dir: &Path, kb_dir: &Path) -> Result<Resources, ResourceError> {
        let lexicons = LexiconSet::load_dir(lexicon_dir)?;
        let rules = load_rules_dir(rules_dir)?;
        let kb = KnowledgeBase::load_dir(kb_dir)?;
        Ok(Resources { lexicons, rules, kb })
    }

    /// Loads from the conventional layout under one data root.
    pub fn load_root(root: &Path) -> Result<Resources, ResourceError> {
        Resources::load(&root.join("lexicons"), &root.join("rules"), &root.join("kb"))
    }

    pub fn extract(&self, text: &str) -> Extraction {
        extract(text, &self.lexicons, &self.rules, &self.kb)
    }
}

/// Compiles every `*.rules` file in `dir`, in file-name order.
pub fn load_rules_dir(dir: &Path) -> Result<Vec<ExtractionRule>, ResourceError> {
    let io = |source| ResourceError::Io { path: dir.display().to_string(), source };
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "rules"))
        .collect();
    files.sort();
    let mut rules: Vec<ExtractionRule> = Vec::new();
    for f in files {
        let src = std::fs::read_to_string(&f).map_err(|source| ResourceError::Io { path: f.display().to_string(), source })?;
        let stem = f.file_stem().unwrap_or_default().to_string_lossy();
        let offset = rules.len();
        for mut r in compile_named(&src, &format!("{stem}:"))? {
            r.order += offset;
            rules.push(r);
        }
    }
    sort_rules(&mut rules);
    Ok(rules)
}
