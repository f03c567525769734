use super::events::NewsEvent;
use super::leaf::Timestamp;
use super::schema::{record, Constraints};
use super::validate::ValidationReport;

record! {
    /// Document metadata.
    pub struct Head {
        dateline_time: Option<Timestamp> => "DatelineTime",
    }
}
impl Constraints for Head {}

/// One story: a head followed by any number of events.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NewsForm {
    pub head: Head,
    pub events: Vec<NewsEvent>,
}

impl NewsForm {
    pub fn new(head: Head, events: Vec<NewsEvent>) -> Self {
        NewsForm { head, events }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

/// Checks every value constraint in the document. Structural problems are
/// caught earlier, while decoding.
pub fn validate(doc: &NewsForm) -> ValidationReport {
    let mut report = ValidationReport::new();
    doc.head.check_fields("Head", &mut report);
    for (i, event) in doc.events.iter().enumerate() {
        report.set_event(Some(i));
        event.validate_into(&mut report);
    }
    report.set_event(None);
    report
}
