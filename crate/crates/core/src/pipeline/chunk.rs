use super::{NounGroup, Pos, Token};

fn is_noun(p: Pos) -> bool {
    matches!(p, Pos::Noun | Pos::Propn)
}

/// Maximal `DET? (ADJ|NUM)* (NOUN|PROPN)+` runs, plus single pronouns.
pub fn chunk_noun_groups(tokens: &[Token]) -> Vec<NounGroup> {
    let mut groups = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if tokens[i].pos == Pos::Pron {
            groups.push(NounGroup { first: i, last: i, head: i });
            i += 1;
            continue;
        }
        let mut j = i;
        if tokens[j].pos == Pos::Det {
            j += 1;
        }
        while j < tokens.len() && matches!(tokens[j].pos, Pos::Adj | Pos::Num) {
            j += 1;
        }
        let nouns_from = j;
        while j < tokens.len() && is_noun(tokens[j].pos) {
            j += 1;
        }
        if j > nouns_from {
            groups.push(NounGroup { first: i, last: j - 1, head: j - 1 });
            i = j;
        } else {
            i += 1;
        }
    }
    groups
}
