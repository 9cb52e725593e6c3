//! Token-sequence queries, KWIC concordances and affix inquiries.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::analytics::AnnotationIndex;
use crate::corpus::{SourceDocument, Token};
use crate::lexicon::fold;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern syntax error at {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("pattern uses a POS constraint but the corpus is not annotated")]
    MissingAnnotations,
    #[error("affix `{0}` must be non-empty and letters only")]
    InvalidAffix(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum TokenConstraint {
    /// Case-insensitive surface; stored folded.
    Literal(String),
    Pos(String),
    /// Number of letters.
    Length(usize),
    PrefixIs(String),
    SuffixIs(String),
}

impl fmt::Display for TokenConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenConstraint::Literal(w) => f.write_str(w),
            TokenConstraint::Pos(t) => write!(f, "<{t}>"),
            TokenConstraint::Length(n) => write!(f, "<LETTERS+{n}>"),
            TokenConstraint::PrefixIs(p) => write!(f, "<^{p}>"),
            TokenConstraint::SuffixIs(s) => write!(f, "<{s}$>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Pattern {
    items: Vec<TokenConstraint>,
}

impl Pattern {
    pub fn items(&self) -> &[TokenConstraint] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn uses_pos(&self) -> bool {
        self.items.iter().any(|c| matches!(c, TokenConstraint::Pos(_)))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}

/// Compiles a space-separated list of items: a bare word, `<POS>`,
/// `<LETTERS+N>`, `<^prefix>` or `<suffix$>`. The NooJ spelling
/// `<WF+MP="^prefix">` / `<WF+MP="suffix$">` is accepted too.
pub fn compile_pattern(expr: &str) -> Result<Pattern, PatternError> {
    let mut items = Vec::new();
    let mut offset = 0;
    for piece in expr.split(' ') {
        if !piece.is_empty() {
            items.push(compile_item(piece, offset)?);
        }
        offset += piece.chars().count() + 1;
    }
    if items.is_empty() {
        return Err(syntax(expr.chars().count(), "at least one item"));
    }
    Ok(Pattern { items })
}

fn syntax(position: usize, expected: &str) -> PatternError {
    PatternError::Syntax {
        position,
        expected: expected.to_string(),
    }
}

fn compile_item(piece: &str, offset: usize) -> Result<TokenConstraint, PatternError> {
    let Some(rest) = piece.strip_prefix('<') else {
        if let Some(i) = piece.find(['<', '>']) {
            return Err(syntax(offset + piece[..i].chars().count(), "a word character"));
        }
        return Ok(TokenConstraint::Literal(fold(piece)));
    };
    let inner_len = rest.chars().count();
    let Some(inner) = rest.strip_suffix('>') else {
        return Err(syntax(offset + 1 + inner_len, "`>`"));
    };
    let at = |i: usize| offset + 1 + i;
    if inner.is_empty() {
        return Err(syntax(at(0), "a POS tag, LETTERS+N, ^prefix or suffix$"));
    }
    if let Some(n) = inner.strip_prefix("LETTERS+") {
        return match n.parse::<usize>() {
            Ok(v) if v >= 1 && v.to_string() == n => Ok(TokenConstraint::Length(v)),
            _ => Err(syntax(at(8), "a positive letter count")),
        };
    }
    let (body, body_at) = match inner.strip_prefix("WF+MP=") {
        Some(quoted) => {
            let q = quoted
                .strip_prefix('"')
                .and_then(|q| q.strip_suffix('"'))
                .ok_or_else(|| syntax(at(6), "a quoted affix"))?;
            (q, 7)
        }
        None => (inner, 0),
    };
    if let Some(p) = body.strip_prefix('^') {
        return affix_item(p, at(body_at + 1)).map(TokenConstraint::PrefixIs);
    }
    if let Some(s) = body.strip_suffix('$') {
        return affix_item(s, at(body_at)).map(TokenConstraint::SuffixIs);
    }
    if body_at > 0 {
        return Err(syntax(at(body_at), "`^prefix` or `suffix$`"));
    }
    match inner.char_indices().find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_')) {
        Some((i, _)) => Err(syntax(at(inner[..i].chars().count()), "a POS tag")),
        None => Ok(TokenConstraint::Pos(inner.to_string())),
    }
}

fn affix_item(affix: &str, position: usize) -> Result<String, PatternError> {
    if affix.is_empty() {
        return Err(syntax(position, "at least one letter"));
    }
    match affix.char_indices().find(|(_, c)| !c.is_alphabetic()) {
        Some((i, _)) => Err(syntax(position + affix[..i].chars().count(), "a letter")),
        None => Ok(fold(affix)),
    }
}

/// Letters of a surface, case-folded; apostrophes and hyphens dropped.
pub fn letters_of(surface: &str) -> String {
    fold(surface).chars().filter(|c| c.is_alphabetic()).collect()
}

/// What literal and affix constraints compare against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchOn {
    #[default]
    Surface,
    /// Forms produced by the normalization cascade; needs annotations.
    Normalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Match {
    /// First token index.
    pub start: usize,
    /// One past the last token index.
    pub end: usize,
}

pub fn locate(
    pattern: &Pattern,
    tokens: &[Token],
    annotations: Option<&AnnotationIndex>,
) -> Result<Vec<Match>, PatternError> {
    locate_with(pattern, tokens, annotations, MatchOn::Surface)
}

/// All non-overlapping leftmost matches, in token order.
pub fn locate_with(
    pattern: &Pattern,
    tokens: &[Token],
    annotations: Option<&AnnotationIndex>,
    on: MatchOn,
) -> Result<Vec<Match>, PatternError> {
    if annotations.is_none() && (pattern.uses_pos() || on == MatchOn::Normalized) {
        return Err(PatternError::MissingAnnotations);
    }
    let width = pattern.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i + width <= tokens.len() {
        let hit = pattern
            .items
            .iter()
            .enumerate()
            .all(|(k, c)| token_matches(c, &tokens[i + k], i + k, annotations, on));
        if hit {
            out.push(Match { start: i, end: i + width });
            i += width;
        } else {
            i += 1;
        }
    }
    Ok(out)
}

fn token_matches(
    constraint: &TokenConstraint,
    token: &Token,
    index: usize,
    annotations: Option<&AnnotationIndex>,
    on: MatchOn,
) -> bool {
    let form = match (on, annotations) {
        (MatchOn::Normalized, Some(a)) => a.normalized(index).unwrap_or(&token.surface),
        _ => &token.surface,
    };
    match constraint {
        TokenConstraint::Literal(w) => fold(form) == *w,
        TokenConstraint::Pos(tag) => annotations.is_some_and(|a| {
            a.analyses(index)
                .iter()
                .any(|an| an.pos.eq_ignore_ascii_case(tag))
        }),
        TokenConstraint::Length(n) => token.is_word() && letters_of(&token.surface).chars().count() == *n,
        TokenConstraint::PrefixIs(p) => token.is_word() && affix_hit(AffixKind::Prefix, p, &letters_of(form)),
        TokenConstraint::SuffixIs(s) => token.is_word() && affix_hit(AffixKind::Suffix, s, &letters_of(form)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConcordanceLine {
    /// Raw source text before the key, including the separating spacing.
    pub left: String,
    pub key: String,
    pub right: String,
    pub doc_id: String,
    pub token_index: usize,
}

impl ConcordanceLine {
    pub fn left_trimmed(&self) -> String {
        flatten(&self.left)
    }

    pub fn right_trimmed(&self) -> String {
        flatten(&self.right)
    }

    /// Tab-separated: document, token index, left, key, right.
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.doc_id,
            self.token_index,
            self.left_trimmed(),
            flatten(&self.key),
            self.right_trimmed()
        )
    }
}

/// Collapses whitespace runs (line breaks included) to single spaces.
fn flatten(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Up to `width` tokens of context on each side of a match, cut from the
/// source so that the original spacing survives.
pub fn kwic(doc: &SourceDocument, tokens: &[Token], m: Match, width: usize) -> ConcordanceLine {
    let key_start = tokens[m.start].start;
    let key_end = tokens[m.end - 1].end;
    let left_start = if width == 0 {
        key_start
    } else {
        tokens[m.start.saturating_sub(width)].start
    };
    let right_end = if width == 0 {
        key_end
    } else {
        tokens[(m.end - 1 + width).min(tokens.len() - 1)].end
    };
    ConcordanceLine {
        left: doc.text[left_start..key_start].to_string(),
        key: doc.text[key_start..key_end].to_string(),
        right: doc.text[key_end..right_end].to_string(),
        doc_id: doc.id.clone(),
        token_index: m.start,
    }
}

/// Plain-text concordance with the key column aligned.
pub fn format_kwic(lines: &[ConcordanceLine]) -> String {
    let lefts: Vec<String> = lines.iter().map(ConcordanceLine::left_trimmed).collect();
    let pad = lefts.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (line, left) in lines.iter().zip(&lefts) {
        let right = line.right_trimmed();
        let row = format!("{left:>pad$}  {}  {right}", flatten(&line.key));
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AffixKind {
    Prefix,
    Suffix,
}

impl AffixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AffixKind::Prefix => "prefix",
            AffixKind::Suffix => "suffix",
        }
    }
}

/// The affix must leave at least one letter of the form unmatched.
fn affix_hit(kind: AffixKind, affix: &str, letters: &str) -> bool {
    letters.len() > affix.len()
        && match kind {
            AffixKind::Prefix => letters.starts_with(affix),
            AffixKind::Suffix => letters.ends_with(affix),
        }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffixReport {
    pub kind: AffixKind,
    pub affix: String,
    /// Distinct letter forms with their occurrences, most frequent first.
    pub forms: Vec<(String, usize)>,
    pub total: usize,
}

impl AffixReport {
    pub fn distinct(&self) -> usize {
        self.forms.len()
    }
}

/// Groups the case-folded word forms carrying the affix.
pub fn affix_query(kind: AffixKind, affix: &str, tokens: &[Token]) -> Result<AffixReport, PatternError> {
    affix_query_forms(kind, affix, tokens.iter().filter(|t| t.is_word()).map(|t| t.surface.as_str()))
}

/// Same query over normalized forms.
pub fn affix_query_normalized(
    kind: AffixKind,
    affix: &str,
    tokens: &[Token],
    annotations: &AnnotationIndex,
) -> Result<AffixReport, PatternError> {
    let forms = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_word())
        .filter_map(|(i, t)| match annotations.normalized(i) {
            Some("") => None,
            Some(n) => Some(n),
            None => Some(t.surface.as_str()),
        });
    affix_query_forms(kind, affix, forms)
}

pub fn affix_query_forms<'a>(
    kind: AffixKind,
    affix: &str,
    forms: impl IntoIterator<Item = &'a str>,
) -> Result<AffixReport, PatternError> {
    if affix.is_empty() || !affix.chars().all(char::is_alphabetic) {
        return Err(PatternError::InvalidAffix(affix.to_string()));
    }
    let affix = fold(affix);
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for form in forms {
        let letters = letters_of(form);
        if affix_hit(kind, &affix, &letters) {
            *counts.entry(letters).or_default() += 1;
        }
    }
    let total = counts.values().sum();
    let mut forms: Vec<(String, usize)> = counts.into_iter().collect();
    forms.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(AffixReport { kind, affix, forms, total })
}
