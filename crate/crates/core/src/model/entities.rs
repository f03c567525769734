//! People, places, organizations and money.

use super::decimal::Decimal;
use super::leaf::{Age, CountryCode, CurrencyCode, Latitude, Longitude, StateCode, Ticker, Token};
use super::node::Node;
use super::schema::{
    composite_children, record, Constraints, DecodeError, FieldKind, FieldSpec, FieldValue,
    LeafKind, LeafValue,
};
use super::validate::ValidationReport;
use super::vocab::{Continent, Sex, Sport};

record! {
    pub struct Person {
        /// Middle initial, middle name, or additional name.
        additional: Option<String> => "Additional",
        age: Option<Age> => "Age",
        /// Origin or nationality.
        country: Option<CountryCode> => "Country",
        email: Option<String> => "Email",
        family: Option<String> => "Family",
        /// Job title.
        function: Option<String> => "Function",
        given: Option<String> => "Given",
        prefix: Option<String> => "Prefix",
        sex: Option<Sex> => "Sex",
        suffix: Option<String> => "Suffix",
        url: Option<String> => "URL",
    }
}

impl Constraints for Person {}

impl Person {
    /// Given and family name joined, or whichever is present.
    pub fn full_name(&self) -> Option<String> {
        match (&self.given, &self.additional, &self.family) {
            (Some(g), Some(a), Some(f)) => Some(format!("{g} {a} {f}")),
            (Some(g), None, Some(f)) => Some(format!("{g} {f}")),
            (Some(g), _, None) => Some(g.clone()),
            (None, _, Some(f)) => Some(f.clone()),
            (None, _, None) => None,
        }
    }
}

record! {
    pub struct Location {
        city: Option<String> => "City",
        continent: Option<Continent> => "Continent",
        country: Option<CountryCode> => "Country",
        latitude: Option<Latitude> => "Latitude",
        longitude: Option<Longitude> => "Longitude",
        region: Option<String> => "Region",
        state: Option<StateCode> => "State",
        url: Option<String> => "URL",
    }
}

impl Constraints for Location {}

record! {
    /// A company, government agency, team or other organization.
    pub struct Organization {
        email: Option<String> => "Email",
        full_name: Option<String> => "FullName",
        nickname: Option<String> => "Nickname",
        /// Industry or kind of organization (open vocabulary).
        organization_type: Option<Token> => "OrganizationType",
        sport: Option<Sport> => "Sport",
        ticker: Option<Ticker> => "Ticker",
        url: Option<String> => "URL",
    }
}

impl Constraints for Organization {}

impl Organization {
    pub fn named(name: impl Into<String>) -> Self {
        Organization { full_name: Some(name.into()), ..Default::default() }
    }

    /// Whether any element exclusive to organizations is populated.
    pub fn has_distinguishing_field(&self) -> bool {
        self.full_name.is_some()
            || self.nickname.is_some()
            || self.organization_type.is_some()
            || self.sport.is_some()
            || self.ticker.is_some()
    }
}

/// Exact amount in a single currency.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Money {
    pub amount: Decimal,
    pub currency: CurrencyCode,
}

impl Money {
    pub const FIELDS: &'static [FieldSpec] = &[
        FieldSpec { tag: "Amount", kind: FieldKind::Leaf(LeafKind::Decimal), repeated: false },
        FieldSpec { tag: "Currency", kind: FieldKind::Leaf(LeafKind::Currency), repeated: false },
    ];

    pub fn new(amount: Decimal, currency: &str) -> Self {
        Money { amount, currency: CurrencyCode::new(currency) }
    }
}

impl FieldValue for Money {
    const KIND: FieldKind = FieldKind::Money;

    fn encode(&self, tag: &str) -> Node {
        Node::branch(
            tag,
            vec![
                Node::leaf("Amount", self.amount.to_string()),
                Node::leaf("Currency", self.currency.as_str()),
            ],
        )
    }

    fn decode(node: &Node, path: &str, errors: &mut Vec<DecodeError>) -> Option<Self> {
        let children = composite_children(node, path, errors)?;
        let mut amount = None;
        let mut currency = None;
        let before = errors.len();
        for c in children {
            let cpath = super::schema::child_path(path, &c.name);
            let dup = match c.name.as_str() {
                "Amount" => amount.replace(Decimal::decode(c, &cpath, errors)).is_some(),
                "Currency" => currency.replace(CurrencyCode::decode(c, &cpath, errors)).is_some(),
                other => {
                    errors.push(DecodeError::UnknownElement {
                        path: path.to_string(),
                        element: other.to_string(),
                    });
                    false
                }
            };
            if dup {
                errors.push(DecodeError::Duplicate { path: path.to_string(), element: c.name.clone() });
            }
        }
        for (tag, present) in [("Amount", amount.is_some()), ("Currency", currency.is_some())] {
            if !present {
                errors.push(DecodeError::Missing { path: path.to_string(), element: tag.into() });
            }
        }
        if errors.len() > before {
            return None;
        }
        Some(Money { amount: amount.flatten()?, currency: currency.flatten()? })
    }

    fn check(&self, path: &str, report: &mut ValidationReport) {
        if let Some(v) = self.currency.violation() {
            report.error(&super::schema::child_path(path, "Currency"), v.code, v.message);
        }
    }
}

/// An Organization-or-Person slot. The children of either record are
/// written directly under the slot element; which one is meant follows from
/// the element names used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Party {
    Person(Person),
    Organization(Organization),
}

const ORG_ONLY: &[&str] = &["FullName", "Nickname", "OrganizationType", "Sport", "Ticker"];

/// Union of Person and Organization children, Person first.
pub const PARTY_FIELDS: &[FieldSpec] = &[
    FieldSpec { tag: "Additional", kind: FieldKind::Leaf(LeafKind::Text), repeated: false },
    FieldSpec { tag: "Age", kind: FieldKind::Leaf(LeafKind::Integer), repeated: false },
    FieldSpec { tag: "Country", kind: FieldKind::Leaf(LeafKind::Country), repeated: false },
    FieldSpec { tag: "Email", kind: FieldKind::Leaf(LeafKind::Text), repeated: false },
    FieldSpec { tag: "Family", kind: FieldKind::Leaf(LeafKind::Text), repeated: false },
    FieldSpec { tag: "Function", kind: FieldKind::Leaf(LeafKind::Text), repeated: false },
    FieldSpec { tag: "Given", kind: FieldKind::Leaf(LeafKind::Text), repeated: false },
    FieldSpec { tag: "Prefix", kind: FieldKind::Leaf(LeafKind::Text), repeated: false },
    FieldSpec { tag: "Sex", kind: FieldKind::Leaf(LeafKind::Term(Sex::VALUES)), repeated: false },
    FieldSpec { tag: "Suffix", kind: FieldKind::Leaf(LeafKind::Text), repeated: false },
    FieldSpec { tag: "URL", kind: FieldKind::Leaf(LeafKind::Text), repeated: false },
    FieldSpec { tag: "FullName", kind: FieldKind::Leaf(LeafKind::Text), repeated: false },
    FieldSpec { tag: "Nickname", kind: FieldKind::Leaf(LeafKind::Text), repeated: false },
    FieldSpec { tag: "OrganizationType", kind: FieldKind::Leaf(LeafKind::Token), repeated: false },
    FieldSpec {
        tag: "Sport",
        kind: FieldKind::Leaf(LeafKind::Term(Sport::VALUES)),
        repeated: false,
    },
    FieldSpec { tag: "Ticker", kind: FieldKind::Leaf(LeafKind::Ticker), repeated: false },
];

impl From<Person> for Party {
    fn from(p: Person) -> Self {
        Party::Person(p)
    }
}

impl From<Organization> for Party {
    fn from(o: Organization) -> Self {
        Party::Organization(o)
    }
}

impl FieldValue for Party {
    const KIND: FieldKind = FieldKind::Party;

    fn encode(&self, tag: &str) -> Node {
        match self {
            Party::Person(p) => p.encode(tag),
            Party::Organization(o) => o.encode(tag),
        }
    }

    fn decode(node: &Node, path: &str, errors: &mut Vec<DecodeError>) -> Option<Self> {
        let children = composite_children(node, path, errors)?;
        let org_like = children.iter().any(|c| ORG_ONLY.contains(&c.name.as_str()));
        let person_only = children.iter().find(|c| {
            Person::FIELDS.iter().any(|f| f.tag == c.name)
                && !Organization::FIELDS.iter().any(|f| f.tag == c.name)
        });
        if let (true, Some(p)) = (org_like, person_only) {
            errors.push(DecodeError::Structure {
                path: path.to_string(),
                message: format!(
                    "mixes Organization and Person elements (<{}> is Person-only)",
                    p.name
                ),
            });
            return None;
        }
        if org_like {
            Some(Party::Organization(Organization::from_children(children, path, errors)))
        } else {
            Some(Party::Person(Person::from_children(children, path, errors)))
        }
    }

    fn check(&self, path: &str, report: &mut ValidationReport) {
        match self {
            Party::Person(p) => p.check(path, report),
            Party::Organization(o) => {
                o.check(path, report);
                if !o.has_distinguishing_field() {
                    report.error(
                        path,
                        "ambiguous-party",
                        "an Organization here needs FullName, Nickname, OrganizationType, Sport or Ticker",
                    );
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn party_kind_follows_elements() {
        let mut errs = Vec::new();
        let person = Node::branch("Source", vec![Node::leaf("Function", "Civil Defense Official")]);
        assert!(matches!(Party::decode(&person, "Source", &mut errs), Some(Party::Person(_))));
        let org = Node::branch("Source", vec![Node::leaf("FullName", "Reuters")]);
        assert!(matches!(Party::decode(&org, "Source", &mut errs), Some(Party::Organization(_))));
        assert!(errs.is_empty());
        let mixed = Node::branch(
            "Source",
            vec![Node::leaf("FullName", "Reuters"), Node::leaf("Given", "Ann")],
        );
        assert!(Party::decode(&mixed, "Source", &mut errs).is_none());
        assert_eq!(errs.len(), 1);
    }

    #[test]
    fn money_requires_both_children() {
        let mut errs = Vec::new();
        let n = Node::branch("Price", vec![Node::leaf("Amount", "10")]);
        assert!(Money::decode(&n, "Price", &mut errs).is_none());
        assert!(matches!(&errs[0], DecodeError::Missing { element, .. } if element == "Currency"));
    }

    #[test]
    fn full_name() {
        let p = Person {
            given: Some("Lionel".into()),
            family: Some("Jospin".into()),
            ..Default::default()
        };
        assert_eq!(p.full_name().as_deref(), Some("Lionel Jospin"));
    }
}
