//! Part-of-speech tagging: closed-class words, then suffixes, then shape.

use super::Pos;

const DET: &[&str] = &[
    "the", "a", "an", "this", "that", "these", "those", "each", "every", "some", "any", "no",
    "another", "all", "both", "either", "neither", "such",
];

const PRON: &[&str] = &[
    "he", "she", "it", "they", "we", "i", "you", "him", "her", "them", "us", "me", "his", "its",
    "their", "our", "my", "your", "hers", "theirs", "ours", "mine", "who", "whom", "whose", "which",
    "himself", "herself", "itself", "themselves", "ourselves", "what", "someone", "anyone",
    "everyone", "nobody",
];

const PREP: &[&str] = &[
    "in", "on", "at", "by", "for", "with", "from", "to", "of", "into", "onto", "over", "under",
    "about", "across", "after", "before", "between", "during", "through", "toward", "towards",
    "against", "among", "around", "behind", "below", "beneath", "beside", "besides", "beyond",
    "despite", "inside", "near", "off", "outside", "past", "since", "than", "until", "upon",
    "via", "within", "without", "amid", "along", "above", "per", "like", "down", "up", "out",
];

const CONJ: &[&str] = &[
    "and", "or", "but", "nor", "yet", "so", "because", "although", "though", "while", "whereas",
    "if", "unless", "as", "whether", "when", "where",
];

const ADV: &[&str] = &[
    "not", "never", "also", "very", "more", "most", "less", "least", "only", "just", "still",
    "even", "already", "again", "soon", "now", "then", "there", "here", "too", "quite", "almost",
    "nearly", "ago", "later", "yesterday", "today", "tomorrow", "often", "however", "n't",
];

const VERB: &[&str] = &[
    "is", "are", "was", "were", "be", "been", "being", "am", "has", "have", "had", "do", "does",
    "did", "said", "says", "say", "will", "would", "can", "could", "may", "might", "must", "shall",
    "should", "struck", "strike", "strikes", "hit", "hits", "made", "make", "makes", "took", "take",
    "takes", "gave", "give", "got", "get", "went", "go", "goes", "came", "come", "left", "kept",
    "keep", "saw", "see", "told", "tell", "rose", "rise", "rises", "fell", "fall", "falls", "grew",
    "grow", "grows", "won", "win", "wins", "lost", "lose", "beat", "met", "meet", "paid", "pay",
    "sold", "sell", "sells", "bought", "buy", "buys", "held", "hold", "holds", "led", "lead",
    "ran", "run", "set", "put", "began", "begin", "became", "become", "found", "find", "thought",
    "brought", "felt", "stood", "shook", "cut", "cuts", "agreed", "agree", "agrees", "raise",
    "raises", "lower", "lowers", "plans", "named", "resigned", "quit", "quits", "hurt",
];

const ADJ_SUFFIXES: &[&str] = &["ous", "ful", "ive", "able", "ible", "al", "ic", "ern", "less", "ish"];
const NOUN_SUFFIXES: &[&str] = &["tion", "sion", "ment", "ness", "ity", "ship", "ism"];

const NUMBER_WORDS: &[&str] = &[
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen",
    "nineteen", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
    "hundred", "thousand", "million", "billion", "trillion", "dozen",
];

fn closed_class(lower: &str) -> Option<Pos> {
    let tables: [(&[&str], Pos); 7] = [
        (DET, Pos::Det),
        (PRON, Pos::Pron),
        (PREP, Pos::Prep),
        (CONJ, Pos::Conj),
        (ADV, Pos::Adv),
        (VERB, Pos::Verb),
        (NUMBER_WORDS, Pos::Num),
    ];
    tables.iter().find(|(t, _)| t.contains(&lower)).map(|(_, p)| *p)
}

fn is_number_word(lower: &str) -> bool {
    lower.split('-').all(|part| NUMBER_WORDS.contains(&part))
}

fn suffix_class(lower: &str) -> Option<Pos> {
    let long_enough = |suffix: &str| lower.len() >= suffix.len() + 3;
    if lower.ends_with("ly") && long_enough("ly") {
        return Some(Pos::Adv);
    }
    if (lower.ends_with("ing") && long_enough("ing")) || (lower.ends_with("ed") && long_enough("ed")) {
        return Some(Pos::Verb);
    }
    if NOUN_SUFFIXES.iter().any(|s| lower.ends_with(s) && long_enough(s)) {
        return Some(Pos::Noun);
    }
    if ADJ_SUFFIXES.iter().any(|s| lower.ends_with(s) && long_enough(s)) {
        return Some(Pos::Adj);
    }
    None
}

/// Tags one word. `initial` marks the first word of a sentence, whose
/// capital letter says nothing about it being a name.
pub fn tag_word(word: &str, initial: bool) -> Pos {
    let Some(first) = word.chars().next() else {
        return Pos::Other;
    };
    if word.chars().all(|c| !c.is_alphanumeric()) {
        return match word {
            "$" | "%" | "&" | "#" | "@" | "+" | "=" | "US$" | "\u{a3}" | "\u{20ac}" | "\u{a5}" => Pos::Sym,
            _ => Pos::Punct,
        };
    }
    if word == "US$" {
        return Pos::Sym;
    }
    if word == "'s" || word == "\u{2019}s" {
        return Pos::Other;
    }
    if word.chars().any(|c| c.is_ascii_digit()) {
        return Pos::Num;
    }
    let lower = word.to_lowercase();
    let capitalized = first.is_uppercase();
    if word == "I" {
        return Pos::Pron;
    }
    if !capitalized || initial {
        if let Some(p) = closed_class(&lower) {
            return p;
        }
        if is_number_word(&lower) {
            return Pos::Num;
        }
        if let Some(p) = suffix_class(&lower) {
            return p;
        }
    }
    if capitalized {
        Pos::Propn
    } else {
        Pos::Noun
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_of_evidence() {
        assert_eq!(tag_word("the", false), Pos::Det);
        assert_eq!(tag_word("The", true), Pos::Det);
        assert_eq!(tag_word("5,000", false), Pos::Num);
        assert_eq!(tag_word("twenty-five", false), Pos::Num);
        assert_eq!(tag_word("quickly", false), Pos::Adv);
        assert_eq!(tag_word("killing", false), Pos::Verb);
        assert_eq!(tag_word("western", false), Pos::Adj);
        assert_eq!(tag_word("Colombia", false), Pos::Propn);
        assert_eq!(tag_word("May", false), Pos::Propn);
        assert_eq!(tag_word("may", false), Pos::Verb);
        assert_eq!(tag_word("Beyond", true), Pos::Prep);
        assert_eq!(tag_word("economy", false), Pos::Noun);
        assert_eq!(tag_word("$", false), Pos::Sym);
        assert_eq!(tag_word("%", false), Pos::Sym);
        assert_eq!(tag_word(",", false), Pos::Punct);
    }

    #[test]
    fn government_salary_increases() {
        for w in ["government", "salary", "increases"] {
            assert_eq!(tag_word(w, false), Pos::Noun, "{w}");
        }
    }
}
