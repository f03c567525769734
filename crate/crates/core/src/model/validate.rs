use std::fmt;

/// One finding, located by its `/`-separated element path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    /// Index of the event within the document, `None` for the head.
    pub event: Option<usize>,
    pub path: String,
    pub code: &'static str,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.event {
            Some(i) => write!(f, "event {i}: {}: [{}] {}", self.path, self.code, self.message),
            None => write!(f, "{}: [{}] {}", self.path, self.code, self.message),
        }
    }
}

/// Outcome of validating a document. Zero errors means the document is accepted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
    current_event: Option<usize>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub(crate) fn set_event(&mut self, event: Option<usize>) {
        self.current_event = event;
    }

    pub fn error(&mut self, path: &str, code: &'static str, message: impl Into<String>) {
        self.errors.push(Issue {
            event: self.current_event,
            path: path.to_string(),
            code,
            message: message.into(),
        });
    }

    pub fn warning(&mut self, path: &str, code: &'static str, message: impl Into<String>) {
        self.warnings.push(Issue {
            event: self.current_event,
            path: path.to_string(),
            code,
            message: message.into(),
        });
    }
}
