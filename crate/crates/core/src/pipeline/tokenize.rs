//! Word tokenization and sentence boundaries.

use std::ops::Range;

/// Abbreviations that keep their trailing period.
const ABBREVIATIONS: &[&str] = &[
    "Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "Gen.", "Col.", "Lt.", "Sgt.", "Capt.", "Adm.", "Gov.",
    "Sen.", "Rep.", "Rev.", "St.", "Jr.", "Sr.", "Inc.", "Corp.", "Co.", "Ltd.", "Bros.", "No.",
    "vs.", "etc.", "Jan.", "Feb.", "Mar.", "Apr.", "Aug.", "Sept.", "Sep.", "Oct.", "Nov.", "Dec.",
    "Ave.", "Blvd.", "Mt.", "Ft.", "approx.", "est.",
];

/// Abbreviations that introduce a name and so never end a sentence.
const NAME_PREFIXES: &[&str] = &[
    "Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "Gen.", "Col.", "Lt.", "Sgt.", "Capt.", "Adm.", "Gov.",
    "Sen.", "Rep.", "Rev.", "St.", "Mt.", "Ft.", "No.",
];

/// Capitalized words that, after an abbreviation, start a new sentence.
const SENTENCE_STARTERS: &[&str] = &[
    "the", "a", "an", "he", "she", "it", "they", "we", "i", "this", "that", "these", "those", "but",
    "in", "on", "its", "his", "her", "their",
];

const LEADING: &[char] = &['(', '[', '{', '"', '\'', '\u{201c}', '\u{2018}', '$', '\u{a3}', '\u{20ac}', '\u{a5}'];
const TRAILING: &[char] = &[',', ';', ':', ')', ']', '}', '"', '\'', '\u{201d}', '\u{2019}', '!', '?'];
const CLOSERS: &[&str] = &["\"", "'", ")", "]", "}", "\u{201d}", "\u{2019}"];

pub fn is_abbreviation(word: &str) -> bool {
    if ABBREVIATIONS.contains(&word) {
        return true;
    }
    // Initials and dotted acronyms: U.S., J.P., e.g.
    let bytes = word.as_bytes();
    bytes.len() >= 2
        && bytes.len().is_multiple_of(2)
        && bytes.chunks(2).all(|p| p[0].is_ascii_alphabetic() && p[1] == b'.')
}

fn is_terminator(tok: &str) -> bool {
    matches!(tok, "." | "?" | "!" | "...")
}

/// Byte ranges of the tokens in `text[range]`, in order.
pub fn tokenize_range(text: &str, range: Range<usize>) -> Vec<Range<usize>> {
    let slice = &text[range.clone()];
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in slice.char_indices().chain(std::iter::once((slice.len(), ' '))) {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                split_chunk(slice, s, i, &mut out);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out.into_iter().map(|r| r.start + range.start..r.end + range.start).collect()
}

pub fn tokenize(text: &str) -> Vec<Range<usize>> {
    tokenize_range(text, 0..text.len())
}

fn split_chunk(text: &str, mut start: usize, mut end: usize, out: &mut Vec<Range<usize>>) {
    // Dashes used as punctuation split the chunk.
    for dash in ["--", "\u{2014}"] {
        if let Some(pos) = text[start..end].find(dash) {
            let at = start + pos;
            if at > start {
                split_chunk(text, start, at, out);
            }
            out.push(at..at + dash.len());
            if at + dash.len() < end {
                split_chunk(text, at + dash.len(), end, out);
            }
            return;
        }
    }

    if text[start..end].starts_with("US$") && end - start > 3 {
        out.push(start..start + 3);
        start += 3;
    }
    while let Some(c) = text[start..end].chars().next() {
        if end - start <= c.len_utf8() || !LEADING.contains(&c) {
            break;
        }
        out.push(start..start + c.len_utf8());
        start += c.len_utf8();
    }

    let mut tail = Vec::new();
    loop {
        let word = &text[start..end];
        if word.len() <= 1 || word == "..." {
            break;
        }
        if word.ends_with("...") && word.len() > 3 {
            tail.push(end - 3..end);
            end -= 3;
            continue;
        }
        let c = word.chars().next_back().unwrap();
        if TRAILING.contains(&c) {
            tail.push(end - c.len_utf8()..end);
            end -= c.len_utf8();
            continue;
        }
        if c == '.' {
            if is_abbreviation(word) {
                break;
            }
            tail.push(end - 1..end);
            end -= 1;
            continue;
        }
        if c == '%' {
            tail.push(end - 1..end);
            end -= 1;
            continue;
        }
        break;
    }

    let word = &text[start..end];
    let possessive = ["'s", "\u{2019}s"].iter().find(|p| word.len() > p.len() && word.ends_with(*p));
    match possessive {
        Some(p) => {
            out.push(start..end - p.len());
            out.push(end - p.len()..end);
        }
        None if start < end => out.push(start..end),
        None => {}
    }
    out.extend(tail.into_iter().rev());
}

/// Sentence spans covering every token of `text`, in order.
pub fn split_sentences(text: &str) -> Vec<Range<usize>> {
    let toks = tokenize(text);
    let mut spans = Vec::new();
    let mut first = 0;
    let mut i = 0;
    while i < toks.len() {
        let t = &text[toks[i].clone()];
        let mut end_here = is_terminator(t);
        if !end_here && t.ends_with('.') && is_abbreviation(t) && !NAME_PREFIXES.contains(&t) {
            if let Some(next) = toks.get(i + 1) {
                let n = &text[next.clone()];
                end_here = n.chars().next().is_some_and(char::is_uppercase)
                    && SENTENCE_STARTERS.contains(&n.to_lowercase().as_str());
            }
        }
        if end_here {
            while i + 1 < toks.len() && CLOSERS.contains(&&text[toks[i + 1].clone()]) {
                i += 1;
            }
            spans.push(toks[first].start..toks[i].end);
            first = i + 1;
        }
        i += 1;
    }
    if first < toks.len() {
        spans.push(toks[first].start..toks[toks.len() - 1].end);
    }
    spans
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &str) -> Vec<&str> {
        tokenize(s).into_iter().map(|r| &s[r]).collect()
    }

    #[test]
    fn peels_punctuation() {
        assert_eq!(
            words("Colombia on Monday, killing the country's (\"best\") 5,000."),
            ["Colombia", "on", "Monday", ",", "killing", "the", "country", "'s", "(", "\"", "best", "\"", ")", "5,000", "."]
        );
    }

    #[test]
    fn money_and_percent() {
        assert_eq!(words("$2 million and 5.25% or US$3"), ["$", "2", "million", "and", "5.25", "%", "or", "US$", "3"]);
    }

    #[test]
    fn abbreviations_keep_period() {
        assert_eq!(words("Dr. Smith of Acme Corp. in the U.S."), ["Dr.", "Smith", "of", "Acme", "Corp.", "in", "the", "U.S."]);
        assert_eq!(words("wait... no"), ["wait", "...", "no"]);
        assert_eq!(words("ally ... Jospin"), ["ally", "...", "Jospin"]);
    }

    #[test]
    fn sentences() {
        assert!(split_sentences("").is_empty());
        assert!(split_sentences("   \n ").is_empty());
        let s = "Jospin kept silent. He left.";
        let spans: Vec<_> = split_sentences(s).into_iter().map(|r| &s[r]).collect();
        assert_eq!(spans, ["Jospin kept silent.", "He left."]);
        let s = "Dr. Smith arrived. The U.S. economy grew 4.2 percent.";
        assert_eq!(split_sentences(s).len(), 2);
        let s = "He said \"no.\" Then he left";
        let spans: Vec<_> = split_sentences(s).into_iter().map(|r| &s[r]).collect();
        assert_eq!(spans, ["He said \"no.\"", "Then he left"]);
        let s = "Shares of Acme Inc. The deal closed.";
        assert_eq!(split_sentences(s).len(), 2);
    }

    #[test]
    fn offsets_map_back() {
        let s = "  \u{201c}Caf\u{e9}\u{201d} costs \u{20ac}5 -- cheap!";
        for r in tokenize(s) {
            assert!(!s[r.clone()].trim().is_empty());
            assert_eq!(s[r.clone()].trim(), &s[r]);
        }
    }
}
