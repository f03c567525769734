//! The seventeen event records and the [`NewsEvent`] union.

use std::fmt;
use std::str::FromStr;

use super::decimal::Decimal;
use super::entities::{Location, Money, Organization, Party, Person};
use super::leaf::{Count, Measure, Percent, Quantity, Ratio, Token};
use super::node::Node;
use super::schema::{record, Constraints, DecodeError, FieldSpec};
use super::validate::ValidationReport;
use super::vocab::*;

record! {
    pub struct Competition {
        competition_code: Option<Token> => "CompetitionCode",
        competition_outcome: Option<CompetitionOutcome> => "CompetitionOutcome",
        player: Option<Person> => "Player",
        sport: Option<Sport> => "Sport",
        team: Option<Organization> => "Team",
    }
}
impl Constraints for Competition {}

record! {
    /// Mergers and acquisitions.
    pub struct Deal {
        acquirer: Option<Organization> => "Acquirer",
        advisor: Option<Organization> => "Advisor",
        deal_status: Option<DealStatus> => "DealStatus",
        deal_value: Option<Money> => "DealValue",
        /// Per-share price of a tender offer.
        share_price: Option<Money> => "SharePrice",
        stake: Option<Percent> => "Stake",
        /// One share of acquirer stock for every `stock_ratio` shares of target stock.
        stock_ratio: Option<Ratio> => "StockRatio",
        successor: Option<Organization> => "Successor",
        survivor: Option<Organization> => "Survivor",
        target: Option<Organization> => "Target",
    }
}
impl Constraints for Deal {}

record! {
    pub struct Earnings {
        company: Option<Organization> => "Company",
        eps: Option<Money> => "EPS",
        earnings_amount: Option<Money> => "EarningsAmount",
        good_bad: Option<GoodBad> => "GoodBad",
        loss: Option<Money> => "Loss",
        previous_eps: Option<Money> => "PreviousEPS",
        previous_earnings: Option<Money> => "PreviousEarnings",
        sales: Option<Money> => "Sales",
        sales_ps: Option<Money> => "SalesPS",
    }
}

impl Constraints for Earnings {
    fn check_record(&self, path: &str, report: &mut ValidationReport) {
        if self.earnings_amount.is_some() && self.loss.is_some() {
            report.error(path, "exclusive", "EarningsAmount and Loss cannot both be present");
        }
    }
}

record! {
    pub struct EconomicRelease {
        annual_rate: Option<Decimal> => "AnnualRate",
        direction: Option<Direction> => "Direction",
        economic_release_type: Option<Token> => "EconomicReleaseType",
        growth: Option<Money> => "Growth",
        growth_rate: Option<Decimal> => "GrowthRate",
        previous_rate: Option<Decimal> => "PreviousRate",
        rate: Option<Decimal> => "Rate",
        source: Option<Party> => "Source",
    }
}
impl Constraints for EconomicRelease {}

record! {
    /// Central-bank rate actions.
    pub struct FedWatch {
        actor: Option<Organization> => "Actor",
        fed_action: Option<FedAction> => "FedAction",
        interest_rate: Option<InterestRate> => "InterestRate",
        rate: Option<Decimal> => "Rate",
    }
}
impl Constraints for FedWatch {}

record! {
    pub struct Ipo {
        company: Option<Organization> => "Company",
        market_cap: Option<Money> => "MarketCap",
        raised: Option<Money> => "Raised",
        shares: Option<Quantity> => "Shares",
        stake: Option<Percent> => "Stake",
    }
}
impl Constraints for Ipo {}

record! {
    pub struct InjuryFatality {
        accident_car: Option<String> => "AccidentCar",
        accident_plane: Option<String> => "AccidentPlane",
        boat: Option<Boat> => "Boat",
        cause: Option<Cause> => "Cause",
        /// Event (such as illness or weather) causing the injury or fatality.
        cause_event: Option<String> => "CauseEvent",
        hospitalized: Vec<Person> => "Hospitalized",
        injured: Vec<Person> => "Injured",
        injured_count: Option<Count> => "InjuredCount",
        killed: Vec<Person> => "Killed",
        killed_count: Option<Count> => "KilledCount",
        landed_plane: Option<String> => "LandedPlane",
        source: Option<Party> => "Source",
        survived_by: Option<String> => "SurvivedBy",
        at_location: Option<Location> => "AtLocation",
    }
}
impl Constraints for InjuryFatality {}

record! {
    pub struct JointVenture {
        company: Vec<Organization> => "Company",
        item: Option<String> => "Item",
        joint_venture_type: Option<JointVentureType> => "JointVentureType",
        source: Option<Party> => "Source",
    }
}
impl Constraints for JointVenture {}

record! {
    /// Arrests, lawsuits, pleas, testimony, judgments, sentencing and releases.
    pub struct LegalEvent {
        accusation_action: Option<AccusationAction> => "AccusationAction",
        accused: Option<Party> => "Accused",
        accuser: Option<Party> => "Accuser",
        arbiter: Option<Party> => "Arbiter",
        arrested: Option<Person> => "Arrested",
        attorney: Option<Person> => "Attorney",
        award: Option<Money> => "Award",
        disposition_method: Option<DispositionMethod> => "DispositionMethod",
        forum: Option<Organization> => "Forum",
        judgment: Option<Verdict> => "Judgment",
        legal_action: Option<LegalAction> => "LegalAction",
        legal_filing: Option<LegalFiling> => "LegalFiling",
        plea: Option<Verdict> => "Plea",
        released: Option<Person> => "Released",
        releaser: Option<Party> => "Releaser",
        sentence_duration: Option<String> => "SentenceDuration",
        sentence_type: Option<SentenceType> => "SentenceType",
        witness: Option<Person> => "Witness",
    }
}
impl Constraints for LegalEvent {}

record! {
    pub struct MedicalFinding {
        illness: Option<Token> => "Illness",
        illness_factor: Option<IllnessFactor> => "IllnessFactor",
    }
}
impl Constraints for MedicalFinding {}

record! {
    pub struct Negotiation {
        agreement: Option<Agreement> => "Agreement",
        negotiation_status: Option<NegotiationStatus> => "NegotiationStatus",
        negotiator: Option<Person> => "Negotiator",
        party: Vec<Party> => "Party",
    }
}
impl Constraints for Negotiation {}

record! {
    /// Product releases and recalls.
    pub struct NewProduct {
        company: Option<Organization> => "Company",
        item: Option<String> => "Item",
        price: Option<Money> => "Price",
        product_status: Option<ProductStatus> => "ProductStatus",
        source: Option<Party> => "Source",
        support_for: Option<String> => "SupportFor",
    }
}
impl Constraints for NewProduct {}

record! {
    /// Management successions.
    pub struct Succession {
        employer: Option<Party> => "Employer",
        function: Option<String> => "Function",
        person_in: Option<Person> => "In",
        person_out: Option<Person> => "Out",
        source: Option<Party> => "Source",
    }
}

impl Constraints for Succession {
    fn check_record(&self, path: &str, report: &mut ValidationReport) {
        if self.person_in.is_none() && self.person_out.is_none() {
            report.error(path, "required", "a Succession needs In or Out");
        }
    }
}

record! {
    /// Trips and visits.
    pub struct Trip {
        host: Option<Party> => "Host",
        to_location: Option<Location> => "ToLocation",
        visitor: Option<Person> => "Visitor",
        visitor_count: Option<Count> => "VisitorCount",
    }
}
impl Constraints for Trip {}

record! {
    pub struct Vote {
        against: Option<Count> => "Against",
        in_favor: Option<Count> => "InFavor",
        law: Option<String> => "Law",
        legislation: Option<Legislation> => "Legislation",
        signer: Option<Person> => "Signer",
        vote_status: Option<VoteStatus> => "VoteStatus",
        voting_body: Option<Organization> => "VotingBody",
    }
}
impl Constraints for Vote {}

record! {
    /// Wars and conflicts.
    pub struct War {
        armed_conflict: Option<ArmedConflict> => "ArmedConflict",
        armed_force: Option<String> => "ArmedForce",
        armed_force_action: Option<ArmedForceAction> => "ArmedForceAction",
        at_location: Option<Location> => "AtLocation",
        leader: Option<Party> => "Leader",
        source: Option<Party> => "Source",
        victim: Option<String> => "Victim",
        victim_action: Option<VictimAction> => "VictimAction",
    }
}
impl Constraints for War {}

record! {
    pub struct Weather {
        at_location: Option<Location> => "AtLocation",
        compass_direction: Option<CompassDirection> => "CompassDirection",
        declared_state: Option<DeclaredState> => "DeclaredState",
        declarer: Option<Party> => "Declarer",
        distance_from_location: Option<Measure> => "DistanceFromLocation",
        /// Given name of the weather system, such as a hurricane name.
        given: Option<String> => "Given",
        high: Option<Measure> => "High",
        issuer: Option<Party> => "Issuer",
        low: Option<Measure> => "Low",
        meteor: Option<Meteor> => "Meteor",
        warning: Option<String> => "Warning",
        wind_speed: Option<Measure> => "WindSpeed",
    }
}
impl Constraints for Weather {}

macro_rules! news_events {
    ($($variant:ident($ty:ty) => $tag:literal,)*) => {
        /// The variant of a [`NewsEvent`], named by its element.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum EventKind { $($variant,)* }

        impl EventKind {
            pub const ALL: &'static [EventKind] = &[$(EventKind::$variant,)*];

            pub fn tag(&self) -> &'static str {
                match self { $(EventKind::$variant => $tag,)* }
            }

            pub fn fields(&self) -> &'static [FieldSpec] {
                match self { $(EventKind::$variant => <$ty>::FIELDS,)* }
            }

            pub fn from_tag(tag: &str) -> Option<EventKind> {
                match tag { $($tag => Some(EventKind::$variant),)* _ => None }
            }

            /// Decodes a record of this kind from its children.
            pub fn decode(&self, children: &[Node], path: &str, errors: &mut Vec<DecodeError>) -> NewsEvent {
                match self {
                    $(EventKind::$variant => NewsEvent::$variant(<$ty>::from_children(children, path, errors)),)*
                }
            }
        }

        /// One typed event record.
        #[derive(Clone, Debug, PartialEq, Eq)]
        #[allow(clippy::large_enum_variant)]
        pub enum NewsEvent { $($variant($ty),)* }

        impl NewsEvent {
            pub fn kind(&self) -> EventKind {
                match self { $(NewsEvent::$variant(_) => EventKind::$variant,)* }
            }

            pub fn to_node(&self) -> Node {
                match self {
                    $(NewsEvent::$variant(e) => Node::branch($tag, e.to_children()),)*
                }
            }

            pub fn is_empty(&self) -> bool {
                match self { $(NewsEvent::$variant(e) => e.is_empty(),)* }
            }

            pub fn validate_into(&self, report: &mut ValidationReport) {
                match self {
                    $(NewsEvent::$variant(e) => e.check_fields($tag, report),)*
                }
            }

            /// An empty record of the given kind.
            pub fn empty(kind: EventKind) -> NewsEvent {
                match kind { $(EventKind::$variant => NewsEvent::$variant(<$ty>::default()),)* }
            }
        }

        $(
            impl From<$ty> for NewsEvent {
                fn from(e: $ty) -> Self { NewsEvent::$variant(e) }
            }
        )*
    };
}

news_events! {
    Competition(Competition) => "Competition",
    Deal(Deal) => "Deal",
    Earnings(Earnings) => "Earnings",
    EconomicRelease(EconomicRelease) => "EconomicRelease",
    FedWatch(FedWatch) => "FedWatch",
    Ipo(Ipo) => "IPO",
    InjuryFatality(InjuryFatality) => "InjuryFatality",
    JointVenture(JointVenture) => "JointVenture",
    LegalEvent(LegalEvent) => "LegalEvent",
    MedicalFinding(MedicalFinding) => "MedicalFinding",
    Negotiation(Negotiation) => "Negotiation",
    NewProduct(NewProduct) => "NewProduct",
    Succession(Succession) => "Succession",
    Trip(Trip) => "Trip",
    Vote(Vote) => "Vote",
    War(War) => "War",
    Weather(Weather) => "Weather",
}

impl NewsEvent {
    /// Decodes an event element; `None` with an error when the element name is not an event.
    pub fn from_node(node: &Node, errors: &mut Vec<DecodeError>) -> Option<NewsEvent> {
        let Some(kind) = EventKind::from_tag(&node.name) else {
            errors.push(DecodeError::UnknownElement {
                path: "NewsForm".into(),
                element: node.name.clone(),
            });
            return None;
        };
        let children = super::schema::composite_children(node, kind.tag(), errors)?;
        Some(kind.decode(children, kind.tag(), errors))
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for EventKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EventKind::from_tag(s).ok_or_else(|| format!("unknown event type `{s}`"))
    }
}
