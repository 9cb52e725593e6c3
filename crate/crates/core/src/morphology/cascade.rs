use serde::Serialize;

use crate::corpus::{tokenize, SourceDocument, Token, TokenFlags};
use crate::lexicon::{Lexicon, LexiconError};

use super::affix::{analyze_archaic_inflection, analyze_degree_with, swap_in_en, DegreeExceptions};
use super::elision::{expand_contraction, restore_elision};
use super::fusion::{fuse_hyphenated, fuse_juxtaposed, is_whitelisted_pair};
use super::{modernize, rank_candidates, validates, Confidence, RewriteCandidate, RuleId};

/// Rule toggles. Everything is on by default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConfig {
    pub contraction: bool,
    pub fuse_hyphen: bool,
    pub in_en: bool,
    pub elision: bool,
    pub inflection: bool,
    pub degree: bool,
    pub fuse_juxtaposed: bool,
    pub exceptions: DegreeExceptions,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            contraction: true,
            fuse_hyphen: true,
            in_en: true,
            elision: true,
            inflection: true,
            degree: true,
            fuse_juxtaposed: true,
            exceptions: DegreeExceptions::default(),
        }
    }
}

impl RuleConfig {
    /// Dictionary lookup only.
    pub fn lookup_only() -> Self {
        RuleConfig {
            contraction: false,
            fuse_hyphen: false,
            in_en: false,
            elision: false,
            inflection: false,
            degree: false,
            fuse_juxtaposed: false,
            exceptions: DegreeExceptions::default(),
        }
    }

    fn allows(&self, rule: RuleId) -> bool {
        match rule {
            RuleId::Overlay => true,
            RuleId::ContractionDict | RuleId::CliticSplit => self.contraction,
            RuleId::FuseHyphen => self.fuse_hyphen,
            RuleId::FuseJuxtaposed => self.fuse_juxtaposed,
            RuleId::InEnSwap => self.in_en,
            RuleId::ElisionRestore => self.elision,
            RuleId::InflectionEthEst => self.inflection,
            RuleId::DegreeErEst => self.degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TokenNormalization {
    pub index: usize,
    pub surface: String,
    /// Found by plain dictionary lookup.
    pub known: bool,
    /// Ranked single-token candidates.
    pub candidates: Vec<RewriteCandidate>,
    /// Fusion of this word with the next one.
    pub fusion: Option<RewriteCandidate>,
    /// Consumed by the previous token's fusion.
    pub absorbed: bool,
    /// Contemporary form; empty for absorbed tokens.
    pub normalized: String,
}

impl TokenNormalization {
    pub fn best(&self) -> Option<&RewriteCandidate> {
        self.fusion
            .iter()
            .chain(self.candidates.iter())
            .find(|c| c.confidence != Confidence::Noise)
    }

    pub fn recognized(&self) -> bool {
        self.known || self.absorbed || self.best().is_some()
    }
}

/// Runs the rule cascade in a fixed order: contraction dictionary, hyphen
/// fusion, in/en swap, elision, inflection and degree, then the bigram
/// juxtaposition pass.
#[derive(Debug, Clone)]
pub struct Normalizer {
    lexicon: Lexicon,
    contractions: Lexicon,
    config: RuleConfig,
}

impl Normalizer {
    pub fn new(
        base: &Lexicon,
        overlay: &Lexicon,
        contractions: &Lexicon,
        config: RuleConfig,
    ) -> Result<Self, LexiconError> {
        let lexicon = Lexicon::merge_all([base, overlay, contractions])?;
        Ok(Normalizer {
            lexicon,
            contractions: contractions.clone(),
            config,
        })
    }

    /// `lexicon` must already contain the contraction entries.
    pub fn from_merged(lexicon: Lexicon, contractions: Lexicon, config: RuleConfig) -> Self {
        Normalizer {
            lexicon,
            contractions,
            config,
        }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn config(&self) -> &RuleConfig {
        &self.config
    }

    /// Candidates for a single word, and whether plain lookup found it.
    pub fn candidates_for(&self, token: &Token) -> (bool, Vec<RewriteCandidate>) {
        let lex = &self.lexicon;
        let source = token.surface.as_str();
        let hits = lex.lookup(source);
        if !hits.is_empty() {
            let lexical = hits
                .iter()
                .filter_map(|e| {
                    if e.expansion.is_some() {
                        Some(RewriteCandidate::new(source, e.modern_form(), RuleId::ContractionDict, Confidence::Lexical))
                    } else if e.is_archaic_spelling() {
                        Some(RewriteCandidate::new(source, e.modern_form(), RuleId::Overlay, Confidence::Lexical))
                    } else {
                        None
                    }
                })
                .collect();
            return (true, rank_candidates(lexical));
        }

        let cfg = &self.config;
        let mut out: Vec<RewriteCandidate> = Vec::new();
        if token.has_apostrophe() && (cfg.contraction || cfg.elision) {
            if let Ok(found) = expand_contraction(token, &self.contractions, lex) {
                let unamb = found.first().is_some_and(|c| c.rule == RuleId::ContractionDict)
                    && self.contractions.lookup(source).iter().any(|e| e.is_unamb());
                out.extend(found.into_iter().filter(|c| cfg.allows(c.rule)));
                if unamb && cfg.contraction {
                    return (false, rank_candidates(out));
                }
            }
        }
        if cfg.fuse_hyphen && token.flags.contains(TokenFlags::INTERNAL_HYPHEN) {
            if let Ok(c) = fuse_hyphenated(token, lex) {
                out.push(c);
            }
        }
        if cfg.in_en {
            out.extend(swap_in_en(source, lex));
        }
        if cfg.elision && !token.has_apostrophe() {
            out.extend(restore_elision(source, lex));
        }
        if cfg.inflection {
            if let Some(a) = analyze_archaic_inflection(source, lex) {
                out.push(self.analysis_candidate(source, a.modern_form(lex), RuleId::InflectionEthEst));
            }
        }
        if cfg.degree {
            if let Some(a) = analyze_degree_with(source, lex, &cfg.exceptions) {
                out.push(self.analysis_candidate(source, a.modern, RuleId::DegreeErEst));
            }
        }
        (false, rank_candidates(out))
    }

    fn analysis_candidate(&self, source: &str, modern: String, rule: RuleId) -> RewriteCandidate {
        if validates(&self.lexicon, &modern) {
            RewriteCandidate::new(source, modern, rule, Confidence::RuleValidated)
        } else {
            RewriteCandidate::noise(source, modern, rule, false)
        }
    }

    pub fn normalize(&self, tokens: &[Token]) -> Vec<TokenNormalization> {
        let mut out: Vec<TokenNormalization> = tokens
            .iter()
            .enumerate()
            .map(|(index, token)| {
                let (known, candidates) = if token.is_word() {
                    self.candidates_for(token)
                } else {
                    (false, Vec::new())
                };
                TokenNormalization {
                    index,
                    surface: token.surface.clone(),
                    known,
                    candidates,
                    fusion: None,
                    absorbed: false,
                    normalized: String::new(),
                }
            })
            .collect();

        if self.config.fuse_juxtaposed {
            let mut i = 0;
            while i + 1 < tokens.len() {
                let (left, right) = (&tokens[i], &tokens[i + 1]);
                let fused = fuse_juxtaposed(left, right, &self.lexicon).filter(|c| {
                    c.confidence == Confidence::Noise
                        || is_whitelisted_pair(&left.surface, &right.surface)
                        || !out[i].recognized()
                        || !out[i + 1].recognized()
                });
                match fused {
                    Some(c) if c.confidence != Confidence::Noise => {
                        out[i].fusion = Some(c);
                        out[i + 1].absorbed = true;
                        i += 2;
                    }
                    Some(c) => {
                        out[i].fusion = Some(c);
                        i += 1;
                    }
                    None => i += 1,
                }
            }
        }

        for (n, token) in out.iter_mut().zip(tokens) {
            n.normalized = if n.absorbed {
                String::new()
            } else if let Some(best) = n.best() {
                modernize(&self.lexicon, &best.result)
            } else {
                token.surface.clone()
            };
        }
        out
    }

    /// Contemporary form of a single written form.
    pub fn normalize_form(&self, form: &str) -> String {
        let doc = SourceDocument::new("form", form);
        let tokens = tokenize(&doc);
        self.normalize(&tokens)
            .into_iter()
            .filter(|n| !n.normalized.is_empty())
            .map(|n| n.normalized)
            .collect::<Vec<_>>()
            .join(" ")
    }
}
