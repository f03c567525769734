//! Scalar element types.

use std::fmt;

use chrono::{DateTime, NaiveDateTime, TimeZone, Utc};

use super::codes;
use super::decimal::Decimal;
use super::schema::{leaf_field, LeafKind, LeafValue, Violation};

fn text_violation(s: &str) -> Option<Violation> {
    if s.is_empty() {
        Some(Violation::new("empty-text", "text must not be empty"))
    } else if s.trim() != s {
        Some(Violation::new("text-shape", "text must not start or end with whitespace"))
    } else if s.chars().any(char::is_control) {
        Some(Violation::new("text-shape", "text must not contain control characters"))
    } else {
        None
    }
}

impl LeafValue for String {
    const KIND: LeafKind = LeafKind::Text;

    fn parse_text(text: &str) -> Result<Self, String> {
        Ok(text.trim().to_string())
    }

    fn to_text(&self) -> String {
        self.clone()
    }

    fn violation(&self) -> Option<Violation> {
        text_violation(self)
    }
}

/// Open-vocabulary value such as `ATPTour` or `AdvanceRetailSales`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token(pub String);

impl Token {
    pub fn new(s: impl Into<String>) -> Self {
        Token(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_well_formed(s: &str) -> bool {
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric())
    }
}

impl LeafValue for Token {
    const KIND: LeafKind = LeafKind::Token;

    fn parse_text(text: &str) -> Result<Self, String> {
        Ok(Token(text.trim().to_string()))
    }

    fn to_text(&self) -> String {
        self.0.clone()
    }

    fn violation(&self) -> Option<Violation> {
        (!Token::is_well_formed(&self.0)).then(|| {
            Violation::new("token-shape", format!("`{}` is not an alphanumeric token", self.0))
        })
    }
}

fn parse_integer(text: &str) -> Result<i64, String> {
    let t = text.trim();
    let digits = t.strip_prefix('-').unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{t}` is not an integer"));
    }
    t.parse().map_err(|_| format!("`{t}` is out of integer range"))
}

macro_rules! integer_leaf {
    ($(#[$meta:meta])* $name:ident, $check:expr, $msg:literal) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub i64);

        impl LeafValue for $name {
            const KIND: LeafKind = LeafKind::Integer;

            fn parse_text(text: &str) -> Result<Self, String> {
                parse_integer(text).map($name)
            }

            fn to_text(&self) -> String {
                self.0.to_string()
            }

            fn violation(&self) -> Option<Violation> {
                let ok: fn(i64) -> bool = $check;
                (!ok(self.0)).then(|| Violation::new("range", format!(concat!("{} ", $msg), self.0)))
            }
        }
    };
}

integer_leaf!(
    /// Non-negative head count (killed, injured, visitors, votes).
    Count, |n| n >= 0, "must be non-negative"
);
integer_leaf!(
    /// Age in years.
    Age, |n| (0..=150).contains(&n), "is outside [0, 150]"
);
integer_leaf!(
    /// Strictly positive quantity, e.g. shares offered.
    Quantity, |n| n > 0, "must be positive"
);

fn parse_decimal(text: &str) -> Result<Decimal, String> {
    text.trim().parse::<Decimal>().map_err(|e| e.to_string())
}

impl LeafValue for Decimal {
    const KIND: LeafKind = LeafKind::Decimal;

    fn parse_text(text: &str) -> Result<Self, String> {
        parse_decimal(text)
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

macro_rules! decimal_leaf {
    ($(#[$meta:meta])* $name:ident, $check:expr, $msg:literal) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub struct $name(pub Decimal);

        impl $name {
            /// Parses a decimal literal; panics on malformed input.
            pub fn lit(s: &str) -> Self {
                $name(s.parse().expect("decimal literal"))
            }
        }

        impl LeafValue for $name {
            const KIND: LeafKind = LeafKind::Decimal;

            fn parse_text(text: &str) -> Result<Self, String> {
                parse_decimal(text).map($name)
            }

            fn to_text(&self) -> String {
                self.0.to_string()
            }

            fn violation(&self) -> Option<Violation> {
                let ok: fn(&Decimal) -> bool = $check;
                (!ok(&self.0)).then(|| Violation::new("range", format!(concat!("{} ", $msg), self.0)))
            }
        }
    };
}

fn within(d: &Decimal, lo: i64, hi: i64) -> bool {
    use std::cmp::Ordering::*;
    d.cmp_value(&Decimal::from_int(lo)) != Less && d.cmp_value(&Decimal::from_int(hi)) != Greater
}

decimal_leaf!(
    /// Degrees north (positive) or south (negative).
    Latitude, |d| within(d, -90, 90), "is outside [-90, 90]"
);
decimal_leaf!(
    /// Degrees east (positive) or west (negative).
    Longitude, |d| within(d, -180, 180), "is outside [-180, 180]"
);
decimal_leaf!(
    /// Percentage stake in (0, 100].
    Percent, |d| d.cmp_value(&Decimal::ZERO).is_gt() && within(d, 0, 100), "is outside (0, 100]"
);
decimal_leaf!(
    /// Strictly positive ratio.
    Ratio, |d| d.cmp_value(&Decimal::ZERO).is_gt(), "must be positive"
);

macro_rules! code_leaf {
    ($(#[$meta:meta])* $name:ident, $kind:expr, $table:path) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Self {
                $name(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl LeafValue for $name {
            const KIND: LeafKind = $kind;

            fn parse_text(text: &str) -> Result<Self, String> {
                Ok($name(text.trim().to_string()))
            }

            fn to_text(&self) -> String {
                self.0.clone()
            }

            fn violation(&self) -> Option<Violation> {
                let table = $table();
                if !table.has_shape(&self.0) {
                    Some(Violation::new("code-shape", format!("`{}` is not a {} code", self.0, table.name())))
                } else if !table.contains(&self.0) {
                    Some(Violation::new("code-table", format!("`{}` is not in the {} table", self.0, table.name())))
                } else {
                    None
                }
            }
        }
    };
}

code_leaf!(
    /// ISO 3166 alpha-3 country code.
    CountryCode, LeafKind::Country, codes::countries
);
code_leaf!(
    /// ISO 4217 alpha-3 currency code.
    CurrencyCode, LeafKind::Currency, codes::currencies
);
code_leaf!(
    /// USPS two-letter state, possession or province code.
    StateCode, LeafKind::State, codes::states
);

/// Exchange ticker: 1-6 uppercase alphanumerics with an optional `.`-suffix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ticker(pub String);

impl Ticker {
    pub fn new(s: impl Into<String>) -> Self {
        Ticker(s.into())
    }

    pub fn is_well_formed(s: &str) -> bool {
        let upper_alnum = |p: &str| p.bytes().all(|b| b.is_ascii_uppercase() || b.is_ascii_digit());
        let (base, suffix) = match s.split_once('.') {
            Some((b, x)) => (b, Some(x)),
            None => (s, None),
        };
        (1..=6).contains(&base.len())
            && upper_alnum(base)
            && suffix.is_none_or(|x| !x.is_empty() && upper_alnum(x))
    }
}

impl LeafValue for Ticker {
    const KIND: LeafKind = LeafKind::Ticker;

    fn parse_text(text: &str) -> Result<Self, String> {
        Ok(Ticker(text.trim().to_string()))
    }

    fn to_text(&self) -> String {
        self.0.clone()
    }

    fn violation(&self) -> Option<Violation> {
        (!Ticker::is_well_formed(&self.0))
            .then(|| Violation::new("ticker-shape", format!("`{}` is not a ticker symbol", self.0)))
    }
}

/// A decimal quantity with an optional unit, e.g. `4 miles` or `85 F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Measure {
    pub value: Decimal,
    pub unit: Option<String>,
}

impl Measure {
    pub fn new(value: Decimal, unit: Option<&str>) -> Self {
        Measure { value, unit: unit.map(str::to_string) }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.unit {
            Some(u) => write!(f, "{} {u}", self.value),
            None => write!(f, "{}", self.value),
        }
    }
}

impl LeafValue for Measure {
    const KIND: LeafKind = LeafKind::Measure;

    fn parse_text(text: &str) -> Result<Self, String> {
        let t = text.trim();
        let (num, unit) = match t.split_once(char::is_whitespace) {
            Some((n, u)) => (n, Some(u.trim())),
            None => (t, None),
        };
        Ok(Measure { value: parse_decimal(num)?, unit: unit.map(str::to_string) })
    }

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn violation(&self) -> Option<Violation> {
        match &self.unit {
            Some(u) if u.is_empty() || u.chars().any(|c| c.is_whitespace() || c.is_control()) => {
                Some(Violation::new("unit-shape", format!("`{u}` is not a unit word")))
            }
            _ => None,
        }
    }
}

/// UTC instant written in basic format, `YYYYMMDDTHHMMSSZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Timestamp(pub DateTime<Utc>);

impl Timestamp {
    pub const FORMAT: &'static str = "%Y%m%dT%H%M%SZ";

    pub fn parse(s: &str) -> Result<Self, String> {
        if s.len() != 16 {
            return Err(format!("`{s}` is not a YYYYMMDDTHHMMSSZ timestamp"));
        }
        NaiveDateTime::parse_from_str(s, Self::FORMAT)
            .map(|t| Timestamp(Utc.from_utc_datetime(&t)))
            .map_err(|_| format!("`{s}` is not a valid YYYYMMDDTHHMMSSZ timestamp"))
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.format(Self::FORMAT))
    }
}

impl LeafValue for Timestamp {
    const KIND: LeafKind = LeafKind::Timestamp;

    fn parse_text(text: &str) -> Result<Self, String> {
        Timestamp::parse(text.trim())
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

leaf_field!(
    String,
    Token,
    Count,
    Age,
    Quantity,
    Decimal,
    Latitude,
    Longitude,
    Percent,
    Ratio,
    CountryCode,
    CurrencyCode,
    StateCode,
    Ticker,
    Measure,
    Timestamp,
);
