//! Corpus annotation and the census reports built on it.

mod census;
mod report;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::corpus::Token;
use crate::lexicon::{fold, Feature, LexEntry, Lexicon, LexiconError};
use crate::morphology::{
    fuse_juxtaposed, Confidence, Normalizer, RewriteCandidate, RuleConfig, RuleId, TokenNormalization,
};

pub use census::{
    length_distribution, number_name, pronoun_census, punctuation_census, suffix_table, unknown_words,
    PRONOUN_GROUPS, TABLE6_SUFFIXES,
};
pub use report::{Cell, Report, ReportError};

/// Where an analysis came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Base,
    Xvii,
    Contraction,
    Rule(RuleId),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Base => f.write_str("Base"),
            Provenance::Xvii => f.write_str("XVII"),
            Provenance::Contraction => f.write_str("Contraction"),
            Provenance::Rule(id) => write!(f, "Rule:{id}"),
        }
    }
}

impl Serialize for Provenance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub lemma: String,
    pub pos: String,
    pub features: Vec<Feature>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TokenAnnotation {
    pub index: usize,
    pub surface: String,
    pub analyses: Vec<Analysis>,
    /// Contemporary form; empty when fused into the previous word.
    pub normalized: String,
    /// Noise candidates, kept for the unknown-word report.
    pub suggestions: Vec<RewriteCandidate>,
}

/// Per-token analyses plus the recognized/unknown split of word surfaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnotationIndex {
    tokens: Vec<TokenAnnotation>,
    recognized: BTreeMap<String, usize>,
    unknown: BTreeMap<String, usize>,
}

impl AnnotationIndex {
    pub fn tokens(&self) -> &[TokenAnnotation] {
        &self.tokens
    }

    pub fn analyses(&self, index: usize) -> &[Analysis] {
        self.tokens.get(index).map_or(&[], |t| t.analyses.as_slice())
    }

    pub fn normalized(&self, index: usize) -> Option<&str> {
        self.tokens.get(index).map(|t| t.normalized.as_str())
    }

    /// Folded surfaces with at least one analysis somewhere, with counts.
    pub fn recognized(&self) -> &BTreeMap<String, usize> {
        &self.recognized
    }

    /// Folded surfaces no occurrence of which received an analysis.
    pub fn unknown(&self) -> &BTreeMap<String, usize> {
        &self.unknown
    }

    pub fn is_unknown(&self, surface: &str) -> bool {
        self.unknown.contains_key(&fold(surface))
    }
}

/// Looks every word up in the merged dictionaries, runs the rule cascade on
/// the misses, and records where each analysis came from.
pub fn annotate_corpus(
    tokens: &[Token],
    base: &Lexicon,
    overlay: &Lexicon,
    contractions: &Lexicon,
    rules: &RuleConfig,
) -> Result<AnnotationIndex, LexiconError> {
    let normalizer = Normalizer::new(base, overlay, contractions, rules.clone())?;
    Ok(annotate_with(tokens, &normalizer, overlay.name(), contractions.name()))
}

/// Annotation with a prepared normalizer; entries whose origin matches
/// `overlay_origin` or `contraction_origin` get those provenances.
pub fn annotate_with(
    tokens: &[Token],
    normalizer: &Normalizer,
    overlay_origin: &str,
    contraction_origin: &str,
) -> AnnotationIndex {
    let lex = normalizer.lexicon();
    let provenance_of = |e: &LexEntry| {
        if !contraction_origin.is_empty() && e.origin == contraction_origin {
            Provenance::Contraction
        } else if !overlay_origin.is_empty() && e.origin == overlay_origin {
            Provenance::Xvii
        } else {
            Provenance::Base
        }
    };
    let normalized: Vec<TokenNormalization> = normalizer.normalize(tokens);

    let mut out: Vec<TokenAnnotation> = Vec::with_capacity(tokens.len());
    for (i, (token, norm)) in tokens.iter().zip(&normalized).enumerate() {
        let mut analyses = Vec::new();
        let mut suggestions = Vec::new();
        if token.is_word() {
            if norm.known {
                analyses.extend(lex.lookup(&token.surface).into_iter().map(|e| entry_analysis(e, provenance_of(e))));
            } else {
                let fused_in = if norm.absorbed { normalized[i - 1].fusion.as_ref() } else { None };
                let mut accepted: Vec<&RewriteCandidate> = fused_in
                    .into_iter()
                    .chain(norm.fusion.iter())
                    .chain(norm.candidates.iter())
                    .filter(|c| c.confidence != Confidence::Noise)
                    .collect();
                // a juxtaposition with either neighbour counts even when the
                // greedy pass paired the neighbour elsewhere
                let neighbours = [
                    i.checked_sub(1).map(|p| (p, i)),
                    (i + 1 < tokens.len()).then_some((i, i + 1)),
                ];
                let extra: Vec<RewriteCandidate> = if accepted.is_empty() && normalizer.config().fuse_juxtaposed {
                    neighbours
                        .into_iter()
                        .flatten()
                        .filter_map(|(l, r)| fuse_juxtaposed(&tokens[l], &tokens[r], lex))
                        .filter(|c| c.confidence != Confidence::Noise)
                        .collect()
                } else {
                    Vec::new()
                };
                accepted.extend(extra.iter());
                for c in accepted {
                    analyses.extend(candidate_analyses(c, lex));
                }
                if analyses.is_empty() {
                    suggestions = norm
                        .fusion
                        .iter()
                        .chain(norm.candidates.iter())
                        .filter(|c| c.confidence == Confidence::Noise)
                        .cloned()
                        .collect();
                }
            }
            dedup(&mut analyses);
        }
        out.push(TokenAnnotation {
            index: i,
            surface: token.surface.clone(),
            analyses,
            normalized: norm.normalized.clone(),
            suggestions,
        });
    }

    let mut recognized: BTreeMap<String, usize> = BTreeMap::new();
    let mut unknown: BTreeMap<String, usize> = BTreeMap::new();
    let mut seen: BTreeMap<String, (usize, bool)> = BTreeMap::new();
    for (token, ann) in tokens.iter().zip(&out) {
        if token.is_word() {
            let slot = seen.entry(fold(&token.surface)).or_default();
            slot.0 += 1;
            slot.1 |= !ann.analyses.is_empty();
        }
    }
    for (form, (count, ok)) in seen {
        if ok {
            recognized.insert(form, count);
        } else {
            unknown.insert(form, count);
        }
    }
    AnnotationIndex {
        tokens: out,
        recognized,
        unknown,
    }
}

fn entry_analysis(e: &LexEntry, provenance: Provenance) -> Analysis {
    let lemma = match &e.expansion {
        Some(units) => units.iter().map(|u| u.lemma()).collect::<Vec<_>>().join(" "),
        None => e.lemma.clone(),
    };
    Analysis {
        lemma,
        pos: e.head_pos().to_string(),
        features: e.features.clone(),
        provenance,
    }
}

/// Analyses of a validated candidate: those of its result word, or a single
/// phrase-level analysis for multi-word results.
fn candidate_analyses(c: &RewriteCandidate, lex: &Lexicon) -> Vec<Analysis> {
    let provenance = Provenance::Rule(c.rule);
    if c.result.contains(' ') {
        let pos = c
            .result
            .split(' ')
            .next()
            .and_then(|w| lex.lookup(w).first().map(|e| e.head_pos().to_string()))
            .unwrap_or_default();
        return vec![Analysis {
            lemma: c.result.clone(),
            pos,
            features: Vec::new(),
            provenance,
        }];
    }
    lex.lookup(&c.result)
        .into_iter()
        .map(|e| entry_analysis(e, provenance))
        .collect()
}

fn dedup(analyses: &mut Vec<Analysis>) {
    let mut kept: Vec<Analysis> = Vec::with_capacity(analyses.len());
    for a in analyses.drain(..) {
        if !kept.contains(&a) {
            kept.push(a);
        }
    }
    *analyses = kept;
}
