//! Gazetteers and word lists mapping surface strings to typed entries.
//!
//! A lexicon file is TSV: `surface<TAB>kind<TAB>normalized[<TAB>attrs]`,
//! where attrs are `;`-separated `key=value` pairs and `#` starts a comment
//! line. A directory of lexicons carries a `manifest.txt` naming the files
//! in load order, each optionally followed by the flag `nocase`.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::model::{Decimal, Latitude, LeafValue, Longitude};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LexKind {
    PersonName,
    GivenName,
    FamilyName,
    Title,
    City,
    State,
    Country,
    Region,
    Continent,
    OrgName,
    OrgSuffix,
    SportsTeam,
    CurrencyUnit,
    Unit,
    NumberWord,
    Pronoun,
    Product,
}

impl LexKind {
    pub const ALL: [LexKind; 17] = [
        LexKind::PersonName,
        LexKind::GivenName,
        LexKind::FamilyName,
        LexKind::Title,
        LexKind::City,
        LexKind::State,
        LexKind::Country,
        LexKind::Region,
        LexKind::Continent,
        LexKind::OrgName,
        LexKind::OrgSuffix,
        LexKind::SportsTeam,
        LexKind::CurrencyUnit,
        LexKind::Unit,
        LexKind::NumberWord,
        LexKind::Pronoun,
        LexKind::Product,
    ];
}

impl fmt::Display for LexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for LexKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LexKind::ALL
            .iter()
            .copied()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| format!("unknown entry kind `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexiconEntry {
    pub surface: String,
    pub kind: LexKind,
    pub normalized: String,
    pub attributes: Vec<(String, String)>,
}

impl LexiconEntry {
    pub fn attr(&self, key: &str) -> Option<&str> {
        self.attributes.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn check(&self) -> Result<(), String> {
        if self.normalized.is_empty() {
            return Err("normalized value is empty".into());
        }
        for (i, (k, _)) in self.attributes.iter().enumerate() {
            if self.attributes[..i].iter().any(|(prev, _)| prev == k) {
                return Err(format!("attribute `{k}` repeated"));
            }
        }
        if let Some(lat) = self.attr("lat") {
            let v = Decimal::from_str(lat).map_err(|e| e.to_string())?;
            if let Some(bad) = Latitude(v).violation() {
                return Err(bad.message);
            }
        }
        if let Some(lon) = self.attr("lon") {
            let v = Decimal::from_str(lon).map_err(|e| e.to_string())?;
            if let Some(bad) = Longitude(v).violation() {
                return Err(bad.message);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{name}:{line}: {message}")]
    Line { name: String, line: usize, message: String },
}

/// One loaded lexicon. Entries sharing a surface are all kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexicon {
    pub name: String,
    pub case_sensitive: bool,
    entries: Vec<LexiconEntry>,
    index: HashMap<String, Vec<usize>>,
}

impl Lexicon {
    pub fn parse(name: &str, src: &str, case_sensitive: bool) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon {
            name: name.to_string(),
            case_sensitive,
            entries: Vec::new(),
            index: HashMap::new(),
        };
        for (i, raw) in src.lines().enumerate() {
            let err = |message: String| LexiconError::Line { name: name.to_string(), line: i + 1, message };
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if !(3..=4).contains(&cols.len()) {
                return Err(err(format!("expected 3 or 4 tab-separated columns, found {}", cols.len())));
            }
            let surface = cols[0].trim();
            if surface.is_empty() {
                return Err(err("surface is empty".into()));
            }
            let kind: LexKind = cols[1].trim().parse().map_err(err)?;
            let mut attributes = Vec::new();
            if let Some(attrs) = cols.get(3) {
                for pair in attrs.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                    let (k, v) = pair
                        .split_once('=')
                        .filter(|(k, _)| !k.trim().is_empty())
                        .ok_or_else(|| err(format!("malformed attribute `{pair}`")))?;
                    attributes.push((k.trim().to_string(), v.trim().to_string()));
                }
            }
            let entry = LexiconEntry {
                surface: surface.to_string(),
                kind,
                normalized: cols[2].trim().to_string(),
                attributes,
            };
            entry.check().map_err(err)?;
            lex.insert(entry);
        }
        Ok(lex)
    }

    fn key(&self, surface: &str) -> String {
        if self.case_sensitive {
            surface.to_string()
        } else {
            surface.to_lowercase()
        }
    }

    fn insert(&mut self, entry: LexiconEntry) {
        let key = self.key(&entry.surface);
        let slot = self.index.entry(key).or_default();
        let duplicate = slot.iter().any(|&i| {
            let e = &self.entries[i];
            e.kind == entry.kind && e.normalized == entry.normalized
        });
        if !duplicate {
            slot.push(self.entries.len());
            self.entries.push(entry);
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    /// Entries for `surface`, in file order.
    pub fn lookup(&self, surface: &str) -> impl Iterator<Item = &LexiconEntry> {
        self.index
            .get(&self.key(surface))
            .into_iter()
            .flatten()
            .map(|&i| &self.entries[i])
    }
}

/// Loads one lexicon file; its name is the file stem.
pub fn load_lexicon(path: &Path, case_sensitive: bool) -> Result<Lexicon, LexiconError> {
    let src = fs::read_to_string(path)
        .map_err(|source| LexiconError::Io { path: path.to_path_buf(), source })?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Lexicon::parse(&name, &src, case_sensitive)
}

/// Lexicons in load order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LexiconSet {
    lexicons: Vec<Lexicon>,
    max_words: usize,
}

impl LexiconSet {
    pub fn new(lexicons: Vec<Lexicon>) -> Self {
        let max_words = lexicons
            .iter()
            .flat_map(|l| l.entries.iter())
            .map(|e| e.surface.split_whitespace().count())
            .max()
            .unwrap_or(0);
        LexiconSet { lexicons, max_words }
    }

    /// Loads every lexicon named by `dir/manifest.txt`.
    pub fn load_dir(dir: &Path) -> Result<LexiconSet, LexiconError> {
        let manifest = dir.join("manifest.txt");
        let src = fs::read_to_string(&manifest)
            .map_err(|source| LexiconError::Io { path: manifest.clone(), source })?;
        let mut lexicons = Vec::new();
        for (i, line) in src.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let file = parts.next().unwrap_or_default();
            let case_sensitive = match parts.next() {
                None => true,
                Some("nocase") => false,
                Some(flag) => {
                    return Err(LexiconError::Line {
                        name: "manifest".into(),
                        line: i + 1,
                        message: format!("unknown flag `{flag}`"),
                    })
                }
            };
            lexicons.push(load_lexicon(&dir.join(file), case_sensitive)?);
        }
        Ok(LexiconSet::new(lexicons))
    }

    pub fn lexicons(&self) -> &[Lexicon] {
        &self.lexicons
    }

    /// Longest surface length, in whitespace-separated words.
    pub fn max_words(&self) -> usize {
        self.max_words
    }

    /// All entries for `surface` across lexicons, in load order then file order.
    pub fn lookup(&self, surface: &str) -> Vec<&LexiconEntry> {
        self.lexicons.iter().flat_map(|l| l.lookup(surface)).collect()
    }

    pub fn lookup_kind(&self, surface: &str, kind: LexKind) -> Vec<&LexiconEntry> {
        self.lexicons
            .iter()
            .flat_map(|l| l.lookup(surface))
            .filter(|e| e.kind == kind)
            .collect()
    }

    pub fn has_kind(&self, surface: &str, kind: LexKind) -> bool {
        self.lexicons.iter().flat_map(|l| l.lookup(surface)).any(|e| e.kind == kind)
    }

    /// Longest run of `words[start..]` (joined by single spaces) with at least
    /// one entry accepted by `keep`. Returns the run length and those entries.
    pub fn longest_match<F>(&self, words: &[&str], start: usize, keep: F) -> Option<(usize, Vec<&LexiconEntry>)>
    where
        F: Fn(&LexiconEntry) -> bool,
    {
        let limit = self.max_words.min(words.len().saturating_sub(start));
        for len in (1..=limit).rev() {
            let surface = words[start..start + len].join(" ");
            let found: Vec<_> = self.lookup(&surface).into_iter().filter(|e| keep(e)).collect();
            if !found.is_empty() {
                return Some((len, found));
            }
        }
        None
    }
}
