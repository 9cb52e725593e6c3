use crate::corpus::Token;
use crate::lexicon::{fold, Lexicon};

use super::{rank_candidates, validates, Confidence, MorphError, RewriteCandidate, RuleId};

/// Hosts whose `'s` reads as "is" rather than a possessive.
const IS_HOSTS: [&str; 11] = [
    "it", "he", "she", "that", "there", "what", "who", "here", "where", "how", "this",
];

/// Expands an apostrophe-marked token: contraction dictionary first, then
/// the `'d` / `'t` / `'s` suffix rules, then general elision restoration.
/// An unambiguous dictionary hit suppresses everything else.
pub fn expand_contraction(
    token: &Token,
    contractions: &Lexicon,
    lex: &Lexicon,
) -> Result<Vec<RewriteCandidate>, MorphError> {
    if !token.has_apostrophe() {
        return Err(MorphError::NoApostrophe(token.surface.clone()));
    }
    let source = token.surface.as_str();
    let hits = contractions.lookup(source);
    let dict: Vec<RewriteCandidate> = hits
        .iter()
        .map(|e| RewriteCandidate::new(source, e.modern_form(), RuleId::ContractionDict, Confidence::Lexical))
        .collect();
    if hits.iter().any(|e| e.is_unamb()) {
        return Ok(rank_candidates(dict));
    }
    let mut all = dict;
    all.extend(apostrophe_rewrites(source, lex).into_iter().map(|mut c| {
        c.source = source.to_string();
        c
    }));
    Ok(rank_candidates(all))
}

/// Suffix rules and elision restoration for a form containing apostrophes.
pub(crate) fn apostrophe_rewrites(form: &str, lex: &Lexicon) -> Vec<RewriteCandidate> {
    let folded = fold(form);
    let mut out = Vec::new();
    if let Some(cut) = folded.rfind('\'') {
        let stem = &folded[..cut];
        let clitic = &folded[cut + 1..];
        let elided = |result: String| RewriteCandidate::new(form, result, RuleId::ElisionRestore, Confidence::RuleValidated);
        let split = |result: String| RewriteCandidate::new(form, result, RuleId::CliticSplit, Confidence::RuleValidated);
        match clitic {
            "d" if !stem.is_empty() => {
                let mut tries = vec![format!("{stem}ed")];
                if stem.ends_with('e') {
                    tries.push(format!("{stem}d"));
                }
                if let Some(s) = stem.strip_suffix('y') {
                    tries.push(format!("{s}ied"));
                }
                out.extend(tries.into_iter().filter(|t| validates(lex, t)).map(elided));
            }
            "t" if !stem.is_empty() => {
                if validates(lex, stem) {
                    out.push(split(format!("{stem} it")));
                }
            }
            "s" if !stem.is_empty() => {
                if IS_HOSTS.contains(&stem) {
                    out.push(split(format!("{stem} is")));
                } else if validates(lex, stem) {
                    // possessive: host word plus the genitive clitic
                    out.push(split(format!("{stem} 's")));
                }
            }
            "" if stem.ends_with('s') => {
                if validates(lex, stem) {
                    out.push(split(stem.to_string()));
                }
            }
            _ => {}
        }
    }
    out.extend(restore_elision(form, lex));
    out
}

/// Re-inserts one elided letter. At apostrophe sites `e` is tried first,
/// then every other letter; in apostrophe-free forms only `e` is tried, in
/// front of an `r`, `n` or `l` closing a consonant cluster before a final
/// `-ing`, `-ed`, `-s` or `-y` (blustring, loosning).
pub fn restore_elision(form: &str, lex: &Lexicon) -> Vec<RewriteCandidate> {
    let chars: Vec<char> = fold(form).chars().collect();
    let sites: Vec<usize> = chars
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == '\'')
        .map(|(i, _)| i)
        .collect();
    let mut e_first: Vec<String> = Vec::new();
    let mut others: Vec<String> = Vec::new();

    let insert_at = |site: usize, letter: char, replace: bool| -> String {
        let mut s = String::with_capacity(chars.len() + 1);
        for (i, &c) in chars.iter().enumerate() {
            if i == site {
                s.push(letter);
                if replace {
                    continue;
                }
            }
            if c != '\'' {
                s.push(c);
            }
        }
        s
    };

    for &site in &sites {
        e_first.push(insert_at(site, 'e', true));
        for letter in ('a'..='z').filter(|&l| l != 'e') {
            others.push(insert_at(site, letter, true));
        }
    }
    if sites.is_empty() {
        for i in 1..chars.len() {
            let cluster = is_consonant(chars[i - 1]) && matches!(chars[i], 'r' | 'n' | 'l');
            let tail: String = chars[i + 1..].iter().collect();
            if cluster && matches!(tail.as_str(), "ing" | "ed" | "s" | "y") {
                e_first.push(insert_at(i, 'e', false));
            }
        }
    }

    let mut out: Vec<RewriteCandidate> = Vec::new();
    let push = |candidate: &str, out: &mut Vec<RewriteCandidate>| {
        if validates(lex, candidate) && !out.iter().any(|c| c.result == candidate) {
            out.push(RewriteCandidate::new(form, candidate, RuleId::ElisionRestore, Confidence::RuleValidated));
        }
    };
    for c in &e_first {
        push(c, &mut out);
    }
    let mut rest: Vec<RewriteCandidate> = Vec::new();
    for c in &others {
        push(c, &mut rest);
    }
    rest.retain(|c| !out.iter().any(|o| o.result == c.result));
    rest.sort_by(|a, b| a.result.cmp(&b.result));
    out.extend(rest);
    out
}

fn is_consonant(c: char) -> bool {
    c.is_ascii_alphabetic() && !matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}
