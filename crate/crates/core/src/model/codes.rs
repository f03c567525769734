//! Code tables for countries, currencies and postal state abbreviations.
//!
//! The tables ship as plain text under `data/codes/` (one code per line,
//! `#` comments) and are compiled into the library so validation never
//! touches the filesystem.

use std::collections::BTreeSet;
use std::sync::OnceLock;

const ISO_3166: &str = include_str!("../../../../data/codes/iso3166.txt");
const ISO_4217: &str = include_str!("../../../../data/codes/iso4217.txt");
const USPS: &str = include_str!("../../../../data/codes/usps.txt");

/// A closed set of uppercase codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeTable {
    name: &'static str,
    width: usize,
    codes: BTreeSet<String>,
}

impl CodeTable {
    /// Parses a one-code-per-line table. Blank lines and `#` comments are skipped.
    pub fn parse(name: &'static str, width: usize, text: &str) -> CodeTable {
        let codes = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect();
        CodeTable { name, width, codes }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn contains(&self, code: &str) -> bool {
        self.codes.contains(code)
    }

    pub fn has_shape(&self, code: &str) -> bool {
        code.len() == self.width && code.bytes().all(|b| b.is_ascii_uppercase())
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.codes.iter().map(String::as_str)
    }
}

pub fn countries() -> &'static CodeTable {
    static T: OnceLock<CodeTable> = OnceLock::new();
    T.get_or_init(|| CodeTable::parse("ISO 3166", 3, ISO_3166))
}

pub fn currencies() -> &'static CodeTable {
    static T: OnceLock<CodeTable> = OnceLock::new();
    T.get_or_init(|| CodeTable::parse("ISO 4217", 3, ISO_4217))
}

pub fn states() -> &'static CodeTable {
    static T: OnceLock<CodeTable> = OnceLock::new();
    T.get_or_init(|| CodeTable::parse("USPS", 2, USPS))
}
