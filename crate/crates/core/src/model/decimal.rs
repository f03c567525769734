use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Exact decimal number: `mantissa * 10^-scale`.
///
/// Equality is structural, so `4.290` and `4.29` are different values that
/// compare equal under [`Decimal::cmp_value`]. This keeps the written form
/// of a parsed document intact across a round trip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Decimal {
    mantissa: i128,
    scale: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid decimal number `{0}`")]
pub struct DecimalError(pub String);

const MAX_SCALE: u32 = 18;

impl Decimal {
    pub const ZERO: Decimal = Decimal { mantissa: 0, scale: 0 };

    pub fn new(mantissa: i128, scale: u32) -> Self {
        Decimal { mantissa, scale }
    }

    pub fn from_int(value: i64) -> Self {
        Decimal { mantissa: value as i128, scale: 0 }
    }

    pub fn mantissa(&self) -> i128 {
        self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa < 0
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0
    }

    pub fn is_integer(&self) -> bool {
        self.normalized().scale == 0
    }

    /// The integer value, when the number has no fractional part.
    pub fn to_i64(&self) -> Option<i64> {
        let n = self.normalized();
        if n.scale == 0 {
            i64::try_from(n.mantissa).ok()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mantissa as f64 / 10f64.powi(self.scale as i32)
    }

    /// Strips trailing fractional zeros: `5.250` becomes `5.25`, `3.0` becomes `3`.
    pub fn normalized(&self) -> Decimal {
        let mut d = *self;
        while d.scale > 0 && d.mantissa % 10 == 0 {
            d.mantissa /= 10;
            d.scale -= 1;
        }
        d
    }

    fn rescaled(&self, scale: u32) -> Option<i128> {
        debug_assert!(scale >= self.scale);
        10i128
            .checked_pow(scale - self.scale)
            .and_then(|f| self.mantissa.checked_mul(f))
    }

    /// Numeric comparison independent of the written scale.
    pub fn cmp_value(&self, other: &Decimal) -> Ordering {
        let scale = self.scale.max(other.scale);
        match (self.rescaled(scale), other.rescaled(scale)) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => self
                .to_f64()
                .partial_cmp(&other.to_f64())
                .unwrap_or(Ordering::Equal),
        }
    }

    pub fn eq_value(&self, other: &Decimal) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }

    pub fn checked_add(&self, other: &Decimal) -> Option<Decimal> {
        let scale = self.scale.max(other.scale);
        let a = self.rescaled(scale)?;
        let b = other.rescaled(scale)?;
        Some(Decimal { mantissa: a.checked_add(b)?, scale }.normalized())
    }

    pub fn checked_mul(&self, other: &Decimal) -> Option<Decimal> {
        let mantissa = self.mantissa.checked_mul(other.mantissa)?;
        let scale = self.scale + other.scale;
        if scale > MAX_SCALE * 2 {
            return None;
        }
        Some(Decimal { mantissa, scale }.normalized())
    }
}

impl FromStr for Decimal {
    type Err = DecimalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || DecimalError(s.to_string());
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty()
            || !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
            || (body.contains('.') && frac_part.is_empty())
            || frac_part.len() > MAX_SCALE as usize
        {
            return Err(err());
        }
        let mut mantissa: i128 = 0;
        for b in int_part.bytes().chain(frac_part.bytes()) {
            mantissa = mantissa
                .checked_mul(10)
                .and_then(|m| m.checked_add((b - b'0') as i128))
                .ok_or_else(err)?;
        }
        if negative {
            mantissa = -mantissa;
        }
        Ok(Decimal { mantissa, scale: frac_part.len() as u32 })
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.unsigned_abs().to_string();
        if self.mantissa < 0 {
            f.write_str("-")?;
        }
        if self.scale == 0 {
            return f.write_str(&digits);
        }
        let scale = self.scale as usize;
        if digits.len() > scale {
            let (i, frac) = digits.split_at(digits.len() - scale);
            write!(f, "{i}.{frac}")
        } else {
            write!(f, "0.{}{}", "0".repeat(scale - digits.len()), digits)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Decimal {
        s.parse().unwrap()
    }

    #[test]
    fn keeps_written_form() {
        for s in ["4.29", "-75.68", "0.05", "2000000", "-0.5", "5.250", "0"] {
            assert_eq!(d(s).to_string(), s);
        }
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "-", ".5", "5.", "1e3", "+3", "1,000", "4.2.1", " 4"] {
            assert!(s.parse::<Decimal>().is_err(), "{s}");
        }
    }

    #[test]
    fn value_comparison_ignores_scale() {
        assert!(d("5.25").eq_value(&d("5.250")));
        assert_ne!(d("5.25"), d("5.250"));
        assert_eq!(d("-75.68").cmp_value(&d("4.29")), Ordering::Less);
        assert_eq!(d("90").cmp_value(&d("89.999")), Ordering::Greater);
    }

    #[test]
    fn arithmetic() {
        let million = d("1000000");
        assert_eq!(d("2").checked_mul(&million).unwrap(), d("2000000"));
        assert_eq!(d("2.5").checked_mul(&million).unwrap(), d("2500000"));
        assert_eq!(d("4.2").checked_add(&d("0.8")).unwrap(), d("5"));
        assert_eq!(d("143").to_i64(), Some(143));
        assert_eq!(d("143.5").to_i64(), None);
    }
}
