use crate::corpus::{Token, TokenFlags};
use crate::lexicon::{fold, Lexicon};

use super::affix::swapped_prefix;
use super::elision::apostrophe_rewrites;
use super::{rank_candidates, validates, Confidence, MorphError, RewriteCandidate, RuleId};

/// Fixed pairs that were written apart and are fused regardless of whether
/// both halves are words on their own.
const JUXTAPOSED: [(&str, &str); 11] = [
    ("some", "body"),
    ("every", "day"),
    ("for", "ever"),
    ("every", "one"),
    ("any", "one"),
    ("any", "thing"),
    ("often", "times"),
    ("like", "wise"),
    ("to", "day"),
    ("no", "body"),
    ("back", "wardness"),
];

const SELF_PRONOUNS: [&str; 10] = ["my", "thy", "your", "her", "him", "it", "one", "our", "them", "their"];

pub fn is_whitelisted_pair(left: &str, right: &str) -> bool {
    let (l, r) = (fold(left), fold(right));
    if SELF_PRONOUNS.contains(&l.as_str()) && (r == "self" || r == "selves") {
        return true;
    }
    JUXTAPOSED.iter().any(|&(a, b)| a == l && b == r)
}

/// Joins the parts of a hyphenated word and validates the result, falling
/// back to the in/en prefix swap and apostrophe expansion. An unvalidated
/// join is returned as noise.
pub fn fuse_hyphenated(token: &Token, lex: &Lexicon) -> Result<RewriteCandidate, MorphError> {
    if !token.flags.contains(TokenFlags::INTERNAL_HYPHEN) {
        return Err(MorphError::NotHyphenated(token.surface.clone()));
    }
    let source = token.surface.as_str();
    let parts: Vec<String> = fold(source).split('-').map(str::to_string).collect();
    let joined = parts.concat();

    let mut variants = vec![joined.clone()];
    for k in 1..parts.len() {
        if let Some(swapped) = swapped_prefix(&parts[k]) {
            let mut p = parts.clone();
            p[k] = swapped;
            variants.push(p.concat());
        }
    }
    if let Some(swapped) = swapped_prefix(&joined) {
        variants.push(swapped);
    }
    // a letter shared across the seam is written once: where-ever -> wherever
    for k in 1..parts.len() {
        let (left, right) = (&parts[k - 1], &parts[k]);
        if !left.is_empty() && left.chars().last() == right.chars().next() {
            let mut p = parts.clone();
            p[k] = right.chars().skip(1).collect();
            variants.push(p.concat());
        }
    }

    for form in &variants {
        if validates(lex, form) {
            return Ok(RewriteCandidate::new(source, form.clone(), RuleId::FuseHyphen, Confidence::RuleValidated));
        }
    }
    // fusion composed with apostrophe expansion: over-stock'd -> overstocked
    let composed: Vec<RewriteCandidate> = variants
        .iter()
        .filter(|f| f.contains('\''))
        .flat_map(|f| apostrophe_rewrites(f, lex))
        .filter(|c| !c.result.contains(' '))
        .collect();
    if let Some(best) = rank_candidates(composed).into_iter().next() {
        return Ok(RewriteCandidate::new(source, best.result, RuleId::FuseHyphen, Confidence::RuleValidated));
    }
    // left-to-right partial fusion against hyphenated entries
    for k in 2..parts.len() {
        let form = format!("{}-{}", parts[..k].concat(), parts[k..].join("-"));
        if validates(lex, &form) {
            return Ok(RewriteCandidate::new(source, form, RuleId::FuseHyphen, Confidence::RuleValidated));
        }
    }
    Ok(RewriteCandidate::noise(source, joined, RuleId::FuseHyphen, false))
}

/// Fuses two adjacent words written apart. Pairs whose halves are both
/// ordinary words are kept only as noise unless whitelisted.
pub fn fuse_juxtaposed(left: &Token, right: &Token, lex: &Lexicon) -> Option<RewriteCandidate> {
    if !left.is_word() || !right.is_word() {
        return None;
    }
    let source = format!("{} {}", left.surface, right.surface);
    let joined = format!("{}{}", fold(&left.surface), fold(&right.surface));
    if !validates(lex, &joined) {
        return None;
    }
    let candidate = if is_whitelisted_pair(&left.surface, &right.surface) {
        RewriteCandidate::new(&source, joined, RuleId::FuseJuxtaposed, Confidence::Lexical)
    } else if lex.contains(&left.surface) && lex.contains(&right.surface) {
        RewriteCandidate::noise(&source, joined, RuleId::FuseJuxtaposed, true)
    } else {
        RewriteCandidate::new(&source, joined, RuleId::FuseJuxtaposed, Confidence::RuleValidated)
    };
    Some(candidate)
}
