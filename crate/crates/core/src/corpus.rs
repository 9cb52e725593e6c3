//! Documents and the typography-preserving tokenizer.

use std::collections::BTreeMap;
use std::io::ErrorKind;
use std::path::Path;

use bitflags::bitflags;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lexicon::{fold, Lexicon};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("{0}: file not found")]
    FileNotFound(String),
    #[error("{path}: invalid UTF-8 at byte {offset}")]
    Decode { path: String, offset: usize },
    #[error("{0}: empty document")]
    EmptyDocument(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceDocument {
    pub id: String,
    pub text: String,
    pub meta: BTreeMap<String, String>,
}

impl SourceDocument {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        SourceDocument {
            id: id.into(),
            text: text.into(),
            meta: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Decode invalid UTF-8 as Latin-1 instead of failing.
    pub latin1_fallback: bool,
}

pub fn load_document(path: impl AsRef<Path>, id: &str) -> Result<SourceDocument, CorpusError> {
    load_document_with(path, id, LoadOptions::default())
}

pub fn load_document_with(
    path: impl AsRef<Path>,
    id: &str,
    options: LoadOptions,
) -> Result<SourceDocument, CorpusError> {
    let path = path.as_ref();
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| match e.kind() {
        ErrorKind::NotFound => CorpusError::FileNotFound(shown.clone()),
        _ => CorpusError::Io {
            path: shown.clone(),
            message: e.to_string(),
        },
    })?;
    if bytes.is_empty() {
        return Err(CorpusError::EmptyDocument(shown));
    }
    let mut meta = BTreeMap::new();
    let text = match String::from_utf8(bytes) {
        Ok(text) => text,
        Err(e) if options.latin1_fallback => {
            meta.insert("encoding".to_string(), "latin-1 (fallback)".to_string());
            e.into_bytes().iter().map(|&b| b as char).collect()
        }
        Err(e) => {
            return Err(CorpusError::Decode {
                path: shown,
                offset: e.utf8_error().valid_up_to(),
            })
        }
    };
    meta.insert("source".to_string(), shown);
    let text = text.replace("\r\n", "\n").replace('\r', "\n");
    Ok(SourceDocument {
        id: id.to_string(),
        text,
        meta,
    })
}

/// Removes catchwords repeated across page breaks. A catchword is the first
/// word after `marker` when it equals the last word before it, or a final
/// fragment of that word ("religious" / "ous").
pub fn strip_catchwords(doc: &SourceDocument, marker: &str) -> SourceDocument {
    if marker.is_empty() || !doc.text.contains(marker) {
        return doc.clone();
    }
    let tokens = tokenize(doc);
    let words: Vec<&Token> = tokens.iter().filter(|t| t.kind == TokenKind::Word).collect();
    let mut cuts: Vec<(usize, usize, String)> = Vec::new();
    for (at, _) in doc.text.match_indices(marker) {
        let after = at + marker.len();
        let before = words.iter().rev().find(|t| t.end <= at);
        let next = words.iter().find(|t| t.start >= after);
        let (Some(before), Some(next)) = (before, next) else {
            continue;
        };
        if doc.text[after..next.start].contains(marker) {
            continue;
        }
        let last = fold(&before.surface);
        let first = fold(&next.surface);
        let repeated = last == first
            || (first.chars().count() >= 2 && first.len() < last.len() && last.ends_with(&first));
        if !repeated {
            continue;
        }
        let tail = doc.text[next.end..]
            .find(|c: char| c != ' ' && c != '\t')
            .map_or(doc.text.len(), |off| next.end + off);
        cuts.push((next.start, tail, next.surface.clone()));
    }
    if cuts.is_empty() {
        return doc.clone();
    }
    let mut out = doc.clone();
    let mut text = String::with_capacity(doc.text.len());
    let mut cursor = 0;
    for (n, (start, end, word)) in cuts.iter().enumerate() {
        text.push_str(&doc.text[cursor..*start]);
        cursor = *end;
        out.meta
            .insert(format!("catchword.{}", n + 1), format!("{word} at byte {start}"));
    }
    text.push_str(&doc.text[cursor..]);
    out.text = text;
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TokenKind {
    Word,
    Punct,
    Number,
}

impl TokenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TokenKind::Word => "Word",
            TokenKind::Punct => "Punct",
            TokenKind::Number => "Number",
        }
    }
}

bitflags! {
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
    pub struct TokenFlags: u8 {
        const LEADING_APOSTROPHE = 1;
        const INTERNAL_APOSTROPHE = 1 << 1;
        const TRAILING_APOSTROPHE = 1 << 2;
        const INTERNAL_HYPHEN = 1 << 3;
        const CAPITALIZED = 1 << 4;
        const ALL_CAPS = 1 << 5;
    }
}

impl TokenFlags {
    const NAMES: [(TokenFlags, &'static str); 6] = [
        (TokenFlags::LEADING_APOSTROPHE, "LeadingApostrophe"),
        (TokenFlags::INTERNAL_APOSTROPHE, "InternalApostrophe"),
        (TokenFlags::TRAILING_APOSTROPHE, "TrailingApostrophe"),
        (TokenFlags::INTERNAL_HYPHEN, "InternalHyphen"),
        (TokenFlags::CAPITALIZED, "Capitalized"),
        (TokenFlags::ALL_CAPS, "AllCaps"),
    ];

    /// `|`-joined flag names, or `-` when empty.
    pub fn names(self) -> String {
        let names: Vec<&str> = Self::NAMES
            .iter()
            .filter(|(f, _)| self.contains(*f))
            .map(|(_, n)| *n)
            .collect();
        if names.is_empty() {
            "-".to_string()
        } else {
            names.join("|")
        }
    }
}

impl Serialize for TokenFlags {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.names())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub surface: String,
    pub start: usize,
    pub end: usize,
    pub kind: TokenKind,
    pub flags: TokenFlags,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }

    pub fn has_apostrophe(&self) -> bool {
        self.surface.chars().any(is_apostrophe)
    }

    /// Apostrophe codepoints in order of appearance.
    pub fn apostrophes(&self) -> impl Iterator<Item = char> + '_ {
        self.surface.chars().filter(|&c| is_apostrophe(c))
    }
}

/// The three apostrophe codepoints found in the printed sources.
pub const APOSTROPHES: [char; 3] = ['\'', '\u{2019}', '\u{2018}'];

pub fn is_apostrophe(c: char) -> bool {
    APOSTROPHES.contains(&c)
}

pub fn tokenize(doc: &SourceDocument) -> Vec<Token> {
    tokenize_text(&doc.text, None)
}

/// Like [`tokenize`], but a leading opening quote (U+2018) stays attached
/// only when the contraction dictionary knows the resulting form.
pub fn tokenize_with_contractions(doc: &SourceDocument, contractions: &Lexicon) -> Vec<Token> {
    tokenize_text(&doc.text, Some(contractions))
}

fn tokenize_text(text: &str, contractions: Option<&Lexicon>) -> Vec<Token> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let byte_at = |i: usize| chars.get(i).map_or(text.len(), |&(b, _)| b);
    let is_letter = |i: usize| chars.get(i).is_some_and(|&(_, c)| c.is_alphabetic());
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i].1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_alphabetic() || (is_apostrophe(c) && is_letter(i + 1)) {
            let mut j = i + 1;
            while j < chars.len() {
                let d = chars[j].1;
                if d.is_alphabetic() {
                    j += 1;
                } else if is_apostrophe(d) && is_letter(j + 1) {
                    j += 1;
                } else if is_apostrophe(d) && is_letter(j - 1) {
                    j += 1;
                    break;
                } else if d == '-' && is_letter(j - 1) && is_letter(j + 1) {
                    j += 1;
                } else {
                    break;
                }
            }
            let mut word_start = start;
            if c == '\u{2018}' {
                if let Some(lex) = contractions {
                    if !lex.contains(&text[byte_at(start)..byte_at(j)]) {
                        tokens.push(make_token(text, byte_at(start), byte_at(start + 1), TokenKind::Punct));
                        word_start = start + 1;
                    }
                }
            }
            tokens.push(make_token(text, byte_at(word_start), byte_at(j), TokenKind::Word));
            i = j;
        } else if c.is_numeric() {
            let mut j = i + 1;
            while j < chars.len() && chars[j].1.is_alphanumeric() {
                j += 1;
            }
            tokens.push(make_token(text, byte_at(start), byte_at(j), TokenKind::Number));
            i = j;
        } else {
            tokens.push(make_token(text, byte_at(start), byte_at(i + 1), TokenKind::Punct));
            i += 1;
        }
    }
    tokens
}

fn make_token(text: &str, start: usize, end: usize, kind: TokenKind) -> Token {
    let surface = &text[start..end];
    let flags = if kind == TokenKind::Word {
        word_flags(surface)
    } else {
        TokenFlags::empty()
    };
    Token {
        surface: surface.to_string(),
        start,
        end,
        kind,
        flags,
    }
}

fn word_flags(surface: &str) -> TokenFlags {
    let chars: Vec<char> = surface.chars().collect();
    let mut flags = TokenFlags::empty();
    let last = chars.len() - 1;
    for (i, &c) in chars.iter().enumerate() {
        if is_apostrophe(c) {
            flags |= match i {
                0 => TokenFlags::LEADING_APOSTROPHE,
                i if i == last => TokenFlags::TRAILING_APOSTROPHE,
                _ => TokenFlags::INTERNAL_APOSTROPHE,
            };
        } else if c == '-' {
            flags |= TokenFlags::INTERNAL_HYPHEN;
        }
    }
    let letters: Vec<char> = chars.iter().copied().filter(|c| c.is_alphabetic()).collect();
    if letters.first().is_some_and(|c| c.is_uppercase()) {
        flags |= TokenFlags::CAPITALIZED;
        if letters.len() >= 2 && letters.iter().all(|c| !c.is_lowercase()) {
            flags |= TokenFlags::ALL_CAPS;
        }
    }
    flags
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(text: &str) -> Vec<Token> {
        tokenize(&SourceDocument::new("t", text))
    }

    fn surfaces(text: &str) -> Vec<String> {
        toks(text).into_iter().map(|t| t.surface).collect()
    }

    #[test]
    fn leading_apostrophe_word() {
        let t = toks("'Tis strange.");
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].surface, "'Tis");
        assert_eq!(t[0].kind, TokenKind::Word);
        assert_eq!(t[0].flags, TokenFlags::LEADING_APOSTROPHE | TokenFlags::CAPITALIZED);
        assert_eq!((t[1].surface.as_str(), t[1].kind, t[1].flags), ("strange", TokenKind::Word, TokenFlags::empty()));
        assert_eq!((t[2].surface.as_str(), t[2].kind), (".", TokenKind::Punct));
        assert_eq!((t[2].start, t[2].end), (12, 13));
    }

    #[test]
    fn internal_and_trailing_apostrophes() {
        let t = toks("nurs'd up in Ignorance");
        assert_eq!(t[0].surface, "nurs'd");
        assert_eq!(t[0].flags, TokenFlags::INTERNAL_APOSTROPHE);
        assert_eq!(surfaces("'twou'd tho' i'th' end"), ["'twou'd", "tho'", "i'th'", "end"]);
        assert!(toks("tho'")[0].flags.contains(TokenFlags::TRAILING_APOSTROPHE));
    }

    #[test]
    fn detached_apostrophe_is_punct() {
        let t = toks("a ' b");
        assert_eq!(t[1].kind, TokenKind::Punct);
    }

    #[test]
    fn hyphens() {
        let t = toks("fore-heads over-stock'd -if");
        assert_eq!(t[0].surface, "fore-heads");
        assert_eq!(t[0].flags, TokenFlags::INTERNAL_HYPHEN);
        assert_eq!(t[1].surface, "over-stock'd");
        assert!(t[1].flags.contains(TokenFlags::INTERNAL_HYPHEN | TokenFlags::INTERNAL_APOSTROPHE));
        assert_eq!(t[2].surface, "-");
        assert_eq!(t[3].surface, "if");
    }

    #[test]
    fn capitals_and_numbers() {
        let t = toks("GOD made 1694 Ladies");
        assert_eq!(t[0].flags, TokenFlags::CAPITALIZED | TokenFlags::ALL_CAPS);
        assert_eq!(t[2].kind, TokenKind::Number);
        assert_eq!(t[3].flags, TokenFlags::CAPITALIZED);
    }

    #[test]
    fn curly_apostrophes() {
        assert_eq!(surfaces("e\u{2019}er \u{2018}tis"), ["e\u{2019}er", "\u{2018}tis"]);
        let lex = crate::lexicon::parse_lexicon("'tis,<it,PRO> <is,V>+UNAMB\n", "c").unwrap();
        let doc = SourceDocument::new("t", "\u{2018}tis \u{2018}Reason");
        let t = tokenize_with_contractions(&doc, &lex);
        let s: Vec<&str> = t.iter().map(|t| t.surface.as_str()).collect();
        assert_eq!(s, ["\u{2018}tis", "\u{2018}", "Reason"]);
    }

    #[test]
    fn catchwords() {
        let doc = SourceDocument::new("t", "a religious\u{c} ous house");
        let out = strip_catchwords(&doc, "\u{c}");
        assert_eq!(out.text, "a religious\u{c} house");
        assert!(out.meta.contains_key("catchword.1"));

        let doc = SourceDocument::new("t", "going home\u{c} home again");
        assert_eq!(strip_catchwords(&doc, "\u{c}").text, "going home\u{c} again");

        let doc = SourceDocument::new("t", "no marker here");
        assert_eq!(strip_catchwords(&doc, "\u{c}"), doc);

        let doc = SourceDocument::new("t", "going home\u{c} abroad again");
        assert_eq!(strip_catchwords(&doc, "\u{c}").text, doc.text);
    }
}
