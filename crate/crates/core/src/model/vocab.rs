//! Closed vocabularies for enumerated elements.
//!
//! Each vocabulary is a newtype over the stored token so that documents
//! carrying out-of-vocabulary values can still be represented and reported
//! by validation instead of failing to parse.

use super::schema::{leaf_field, LeafKind, LeafValue, Violation};

macro_rules! vocabulary {
    ($(
        $(#[$meta:meta])*
        $name:ident [$($alias:literal => $canon:literal),*] = [$($value:literal),+ $(,)?];
    )*) => {$(
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(String);

        impl $name {
            pub const VALUES: &'static [&'static str] = &[$($value),+];

            /// Wraps a term, mapping accepted alternate spellings to the canonical token.
            pub fn new(s: impl Into<String>) -> Self {
                let s: String = s.into();
                #[allow(clippy::match_single_binding)]
                let canon = match s.as_str() {
                    $($alias => $canon.to_string(),)*
                    _ => s,
                };
                $name(canon)
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }

            pub fn is_known(&self) -> bool {
                Self::VALUES.contains(&self.0.as_str())
            }
        }

        impl LeafValue for $name {
            const KIND: LeafKind = LeafKind::Term(Self::VALUES);

            fn parse_text(text: &str) -> Result<Self, String> {
                Ok(Self::new(text.trim()))
            }

            fn to_text(&self) -> String {
                self.0.clone()
            }

            fn violation(&self) -> Option<Violation> {
                (!self.is_known()).then(|| Violation::new(
                    "vocabulary",
                    format!("`{}` is not one of: {}", self.0, Self::VALUES.join(", ")),
                ))
            }
        }

        leaf_field!($name);
    )*};
}

vocabulary! {
    /// Sport of a team or competition.
    Sport ["Martial Arts" => "MartialArts"] = [
        "Archery", "AutoRacing", "Badminton", "Baseball", "Basketball", "Biathlon",
        "Boating", "Bobsledding", "Boxing", "Cricket", "Curling", "Cycling", "ExtremeSports",
        "Fencing", "Fishing", "Football", "Golf", "Gymnastics", "HighJump", "Hockey",
        "HorseRacing", "Javelin", "LongJump", "MartialArts", "Olympics",
        "PoleVault", "Rodeo", "Rowing", "Rugby", "Running", "ShotPut", "Snowboarding",
        "Soccer", "Softball", "Sport", "Tennis", "Track", "Triathlon", "Volleyball",
        "WaterSports", "Weightlifting", "WinterSports", "Wrestling",
    ];

    Sex [] = ["Female", "Male"];

    Continent [] = ["Africa", "Antarctica", "Asia", "Europe", "NorthAmerica", "SouthAmerica"];

    CompetitionOutcome [] = ["Loss", "Tie", "Win"];

    DealStatus [] = ["Rumored", "InTalks", "Agreed", "Approved", "Completed", "Failed"];

    GoodBad [] = ["Good", "Bad"];

    Direction [] = ["Down", "Unchanged", "Up"];

    FedAction [] = ["Hold", "Lower", "Raise"];

    InterestRate [] = [
        "1MCommercialPaperRate", "3MCommercialPaperRate", "6MCommercialPaperRate",
        "BaseRate", "CommercialPaperRate", "DiscountRate", "FederalFundsRate",
        "FederalFundsTarget", "InterestRate", "PrimeRate", "TBill", "TBill1Y", "TBill3M",
        "TBill6M", "TBond30Y", "TNote2Y", "TNote5Y", "TNote10Y",
    ];

    Boat [] = [
        "Battleship", "Boat", "CabinCruiser", "Cruiser", "Dinghy", "InflatableDinghy",
        "LifeRaft", "Lifeboat", "PassengerShip", "Powerboat", "Raft", "Ship", "SmallBoat",
        "Steamship", "Vessel", "Warship", "Windsurfer",
    ];

    /// Cause of an injury or fatality.
    Cause [] = [
        "AerialBomb", "Alert", "BoatCollision", "Bomb", "CarCrash", "Curfew",
        "Disaster", "Dynamite", "Earthquake", "Evacuation", "Explosive", "Fire",
        "Firebomb", "Grenade", "Mine", "MolotovCocktail", "PlaneCrash", "VehicleBomb",
    ];

    JointVentureType [] = [
        "Agreement", "Alliance", "Deal", "DistributionAgreement", "LaunchContract",
        "LicensingAgreement", "MarketingAlliance", "Partnership", "PromotionAgreement",
        "Relationship", "StrategicAlliance", "Venture",
    ];

    AccusationAction [] = [
        "AggravatedAssault", "Assassination", "Assault", "CapitalMurder", "Conspiracy",
        "ConspiringToKill", "Crime", "DisorderlyConduct", "FirstDegreeMurder",
        "Genocide", "Harassment", "InvoluntaryManslaughter", "Manslaughter", "Massacre",
        "Murder", "ObstructionOfJustice", "PremeditatedMurder", "RacialHarassment",
        "Rape", "SecondDegreeMurder", "SexualAssault", "SexualHarassment", "Slaughter",
        "Torture", "Wrongdoing",
    ];

    DispositionMethod [] = [
        "CourtTrial", "JuryTrial", "SummaryJudgment", "ConsentJudgment", "DefaultJudgment",
        "DirectedVerdict", "ArbitrationAward", "Settlement", "Dismissal", "Transfer",
    ];

    /// Judgment or plea.
    Verdict [] = ["Guilty", "Innocent"];

    LegalAction [] = [
        "Argue", "Arrest", "Charge", "File", "Judge", "Plead", "Release", "Sentence", "Settle",
        "Testify",
    ];

    LegalFiling [] = ["Complaint", "Motion", "ObscenityComplaint", "Pleading", "Suit"];

    SentenceType [] = [
        "Execution", "Jail", "JailLife", "JailLifeWithoutPossibleParole",
        "JailLifeWithPossibleParole", "Probation", "StateCustody",
    ];

    IllnessFactor [] = [
        "AirPollution", "Alcohol", "AnabolicSteroids", "BreastImplant", "CigarSmoking",
        "CigaretteSmoking", "Circumcision", "Cocaine", "Contraception", "ContraceptivePill",
        "Dieting", "Ecstasy", "Heroin", "Hysterectomy", "Immunization", "LSD", "Mescaline",
        "Opium", "Pollution", "Smoking", "Stress", "Tobacco", "Vaccination",
    ];

    Agreement [] = [
        "Accord", "Agreement", "FinalSettlement", "Legislation", "Measure", "PeaceAgreement",
        "PeaceDeal", "PeaceTreaty", "Settlement", "Treaty",
    ];

    NegotiationStatus [] = ["AgreementReached", "InitialTalks", "Talks"];

    ProductStatus [] = ["Released", "Recalled"];

    Legislation [] = [
        "Amendment", "Bill", "ConcurrentResolution", "CongressionalJointResolution",
        "HouseAmendment", "HouseBill", "HouseConcurrentResolution", "HouseJointResolution",
        "HouseResolution", "JointResolution", "Resolution", "SenateAmendment", "SenateBill",
        "SenateConcurrentResolution", "SenateJointResolution", "SenateResolution",
    ];

    VoteStatus [] = ["Passed", "Rejected", "Signed", "VetoThreat"];

    ArmedConflict [] = [
        "AirBattle", "AirStrike", "ArmedConflict", "ArtilleryFire", "Attack", "Battle",
        "Bombing", "CivilUnrest", "CivilWar", "Clash", "Conflict", "Coup", "Fighting", "Fire",
        "GuerrillaActivities", "Hostilities", "LandBattle", "LandWar", "Massacre",
        "Skirmish", "SniperFire", "Unrest", "Violence", "War", "Warfare",
    ];

    ArmedForceAction [] = ["Arrive", "Begin", "Depart", "Deploy", "Movement"];

    VictimAction [] = ["Flee", "Return"];

    CompassDirection [] = [
        "East", "North", "Northeast", "Northwest", "South", "Southeast", "Southwest", "West",
    ];

    DeclaredState [] = ["Alert", "Disaster", "Evacuation", "Fire"];

    /// Meteor or heat condition.
    Meteor [] = [
        "Category1Storm", "Category2Storm", "Category3Storm", "Category4Storm",
        "ContinuousDrizzle", "ContinuousRain", "ContinuousSnow", "Cyclone", "Dew", "Drizzle",
        "DustStorm", "ExcessiveHeat", "Fog", "FreezingRain", "Frost", "Hail", "Heat",
        "HeavyDriftingSnowLow", "HeavyThunderstorm", "Hurricane", "IntermittentDrizzle",
        "IntermittentRain", "IntermittentSnow", "Lightning", "Mist", "PlateCrystal",
        "Rain", "RainShower", "Raindrop", "Rainstorm", "Sandstorm", "Sleet", "SlightDriftingSnowLow",
        "Smoke", "Snow", "SnowFlurry", "SnowShower", "Snowflake", "Snowstorm", "Squall",
        "StellarCrystal", "Storm", "Thunder", "Thunderstorm", "Tornado", "TropicalStorm",
    ];
}
