//! Rules that map 17th-century surface forms to contemporary candidates.
//!
//! Every rule proposes a [`RewriteCandidate`] and checks it against a
//! lexicon before it is accepted; unvalidated proposals survive only as
//! [`Confidence::Noise`].

mod affix;
mod cascade;
mod elision;
mod fusion;

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::lexicon::{fold, Lexicon};

pub use affix::{
    analyze_archaic_inflection, analyze_degree, analyze_degree_with, swap_in_en, Degree, DegreeAnalysis,
    DegreeExceptions, InflectionAnalysis, IrregularDegree, Tense,
};
pub use cascade::{Normalizer, RuleConfig, TokenNormalization};
pub use elision::{expand_contraction, restore_elision};
pub use fusion::{fuse_hyphenated, fuse_juxtaposed, is_whitelisted_pair};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorphError {
    #[error("`{0}` has no internal hyphen")]
    NotHyphenated(String),
    #[error("`{0}` has no apostrophe")]
    NoApostrophe(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleId {
    /// Direct hit on an archaic spelling in the 17th-century overlay.
    Overlay,
    ContractionDict,
    FuseHyphen,
    FuseJuxtaposed,
    InEnSwap,
    ElisionRestore,
    /// `'t` read as "it", `'s` as "is" or a possessive.
    CliticSplit,
    InflectionEthEst,
    DegreeErEst,
}

impl RuleId {
    pub const ALL: [RuleId; 9] = [
        RuleId::Overlay,
        RuleId::ContractionDict,
        RuleId::FuseHyphen,
        RuleId::FuseJuxtaposed,
        RuleId::InEnSwap,
        RuleId::ElisionRestore,
        RuleId::CliticSplit,
        RuleId::InflectionEthEst,
        RuleId::DegreeErEst,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Overlay => "Overlay",
            RuleId::ContractionDict => "ContractionDict",
            RuleId::FuseHyphen => "FuseHyphen",
            RuleId::FuseJuxtaposed => "FuseJuxtaposed",
            RuleId::InEnSwap => "InEnSwap",
            RuleId::ElisionRestore => "ElisionRestore",
            RuleId::CliticSplit => "CliticSplit",
            RuleId::InflectionEthEst => "InflectionEthEst",
            RuleId::DegreeErEst => "DegreeErEst",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Confidence {
    Lexical,
    RuleValidated,
    Noise,
}

impl Confidence {
    pub fn as_str(self) -> &'static str {
        match self {
            Confidence::Lexical => "Lexical",
            Confidence::RuleValidated => "RuleValidated",
            Confidence::Noise => "Noise",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteCandidate {
    pub source: String,
    /// Modern form; contractions give a space-separated unit sequence.
    pub result: String,
    pub rule: RuleId,
    pub validated: bool,
    pub confidence: Confidence,
}

impl RewriteCandidate {
    pub(crate) fn new(source: &str, result: impl Into<String>, rule: RuleId, confidence: Confidence) -> Self {
        RewriteCandidate {
            source: source.to_string(),
            result: result.into(),
            rule,
            validated: confidence != Confidence::Noise,
            confidence,
        }
    }

    pub(crate) fn noise(source: &str, result: impl Into<String>, rule: RuleId, validated: bool) -> Self {
        RewriteCandidate {
            source: source.to_string(),
            result: result.into(),
            rule,
            validated,
            confidence: Confidence::Noise,
        }
    }

    /// Character edits between the folded source and the result.
    pub fn edits(&self) -> usize {
        edit_distance(&fold(&self.source), &self.result.to_lowercase())
    }

    /// Lexical before RuleValidated before Noise, then fewer edits, then
    /// alphabetical.
    pub fn rank_cmp(&self, other: &Self) -> Ordering {
        self.confidence
            .cmp(&other.confidence)
            .then_with(|| self.edits().cmp(&other.edits()))
            .then_with(|| self.result.cmp(&other.result))
    }
}

/// Sorts by rank and drops repeated results, keeping the best-ranked one.
pub fn rank_candidates(mut candidates: Vec<RewriteCandidate>) -> Vec<RewriteCandidate> {
    candidates.sort_by(RewriteCandidate::rank_cmp);
    let mut seen = std::collections::HashSet::new();
    candidates.retain(|c| seen.insert(c.result.clone()));
    candidates
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LengthClass {
    pub letters: usize,
}

/// Counts alphabetic characters; apostrophes and hyphens do not count.
pub fn letter_length(form: &str) -> LengthClass {
    LengthClass {
        letters: form.chars().filter(|c| c.is_alphabetic()).count(),
    }
}

/// True when the lexicon knows `form`; multi-word forms need every word.
pub(crate) fn validates(lex: &Lexicon, form: &str) -> bool {
    !form.is_empty() && form.split(' ').all(|w| !lex.lookup(w).is_empty())
}

/// Replaces archaic spellings by their `EN=` form, word by word.
pub fn modernize(lex: &Lexicon, form: &str) -> String {
    form.split(' ')
        .map(|w| {
            lex.lookup(w)
                .iter()
                .find(|e| e.is_archaic_spelling())
                .map_or_else(|| w.to_string(), |e| e.modern_form())
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub(crate) fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for i in 1..=a.len() {
        cur[0] = i;
        for j in 1..=b.len() {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_lengths() {
        assert_eq!(letter_length("uncharitableness").letters, 16);
        assert_eq!(letter_length("pragmaticalness").letters, 15);
        assert_eq!(letter_length("fore-heads").letters, 9);
        assert_eq!(letter_length("nurs'd").letters, 5);
    }

    #[test]
    fn edit_distances() {
        assert_eq!(edit_distance("fore-heads", "foreheads"), 1);
        assert_eq!(edit_distance("kitten", "sitting"), 3);
        assert_eq!(edit_distance("", "abc"), 3);
    }

    #[test]
    fn ranking() {
        let c = |r: &str, conf| RewriteCandidate::new("src", r, RuleId::ElisionRestore, conf);
        let ranked = rank_candidates(vec![
            c("zz", Confidence::RuleValidated),
            c("srcx", Confidence::RuleValidated),
            c("abc", Confidence::Lexical),
            c("srcx", Confidence::RuleValidated),
        ]);
        let results: Vec<&str> = ranked.iter().map(|c| c.result.as_str()).collect();
        assert_eq!(results, ["abc", "srcx", "zz"]);
    }
}
