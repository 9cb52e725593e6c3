//! Dictionaries in the `surface,lemma,POS+feature` line format.
//!
//! Three kinds of dictionary share the format: the contemporary base list,
//! the 17th-century overlay (entries tagged `Dic_EN_XVII`) and the
//! contraction dictionary whose entries expand into several `<unit>`s.

mod parse;

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::{format_entry, parse_lexicon};

pub const UNAMB: &str = "UNAMB";
pub const DIC_EN_XVII: &str = "Dic_EN_XVII";
pub const SPELLING: &str = "spelling";
pub const MEANING: &str = "meaning";
pub const MODERN_FORM: &str = "EN";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("{origin}:{line}:{column}: {reason}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        reason: String,
    },
    #[error("{origin}:{line}: {reason}")]
    Validation {
        origin: String,
        line: usize,
        reason: String,
    },
    #[error("conflicting unambiguous entries for `{surface}`: {first} vs {second}")]
    Conflict {
        surface: String,
        first: String,
        second: String,
    },
    #[error("cannot read dictionary {path}: {message}")]
    Io { path: String, message: String },
}

/// A `+name` or `+name=value` tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Feature {
    pub name: String,
    pub value: Option<String>,
}

impl Feature {
    pub fn flag(name: impl Into<String>) -> Self {
        Feature {
            name: name.into(),
            value: None,
        }
    }

    pub fn with_value(name: impl Into<String>, value: impl Into<String>) -> Self {
        Feature {
            name: name.into(),
            value: Some(value.into()),
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Some(v) => write!(f, "+{}={}", self.name, v),
            None => write!(f, "+{}", self.name),
        }
    }
}

/// One underlying word of a contracted form, e.g. `<would,V+PT+3+s>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Unit {
    pub form: String,
    /// `None` when the lemma is the form itself.
    pub lemma: Option<String>,
    pub pos: String,
    pub features: Vec<Feature>,
}

impl Unit {
    pub fn lemma(&self) -> &str {
        self.lemma.as_deref().unwrap_or(&self.form)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexEntry {
    pub surface: String,
    pub lemma: String,
    /// Empty for multi-unit entries, whose units carry their own POS.
    pub pos: String,
    pub features: Vec<Feature>,
    pub expansion: Option<Vec<Unit>>,
    pub origin: String,
}

impl LexEntry {
    pub fn new(surface: &str, lemma: &str, pos: &str, origin: &str) -> Self {
        LexEntry {
            surface: surface.to_string(),
            lemma: lemma.to_string(),
            pos: pos.to_string(),
            features: Vec::new(),
            expansion: None,
            origin: origin.to_string(),
        }
    }

    pub fn has_feature(&self, name: &str) -> bool {
        self.features.iter().any(|f| f.name == name)
    }

    pub fn feature_value(&self, name: &str) -> Option<&str> {
        self.features
            .iter()
            .find(|f| f.name == name)
            .and_then(|f| f.value.as_deref())
    }

    pub fn is_unamb(&self) -> bool {
        self.has_feature(UNAMB)
    }

    pub fn is_xvii(&self) -> bool {
        self.has_feature(DIC_EN_XVII)
    }

    pub fn is_archaic_spelling(&self) -> bool {
        self.is_xvii() && self.has_feature(SPELLING)
    }

    /// Contemporary rendering of this entry: the unit forms of a
    /// contraction, the `EN=` form of an archaic spelling, otherwise the
    /// surface itself (archaic senses keep their form).
    pub fn modern_form(&self) -> String {
        if let Some(units) = &self.expansion {
            return units
                .iter()
                .map(|u| u.form.as_str())
                .collect::<Vec<_>>()
                .join(" ");
        }
        if self.is_archaic_spelling() {
            if let Some(en) = self.feature_value(MODERN_FORM) {
                return en.to_string();
            }
        }
        self.surface.clone()
    }

    /// POS of the entry, or of the first unit for contractions.
    pub fn head_pos(&self) -> &str {
        match &self.expansion {
            Some(units) if self.pos.is_empty() => units.first().map_or("", |u| u.pos.as_str()),
            _ => &self.pos,
        }
    }

    /// Identity of the analysis, ignoring which dictionary it came from.
    fn same_analysis(&self, other: &LexEntry) -> bool {
        fold(&self.surface) == fold(&other.surface)
            && self.lemma == other.lemma
            && self.pos == other.pos
            && self.features == other.features
            && self.expansion == other.expansion
    }
}

/// Case-folded lookup key. Curly apostrophes fold to `'`.
pub fn fold(surface: &str) -> String {
    surface
        .chars()
        .map(|c| match c {
            '\u{2018}' | '\u{2019}' => '\'',
            c => c,
        })
        .flat_map(char::to_lowercase)
        .collect()
}

/// An immutable, case-insensitive dictionary.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    name: String,
    entries: Vec<LexEntry>,
    lines: Vec<usize>,
    index: HashMap<String, Vec<usize>>,
    lemmas: HashMap<String, Vec<usize>>,
}

impl Lexicon {
    pub fn new(name: &str) -> Self {
        Lexicon {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn load(path: impl AsRef<Path>, origin: &str) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| LexiconError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        parse_lexicon(&text, origin)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LexEntry] {
        &self.entries
    }

    /// Source line of the `i`-th entry, 0 when the entry was built in memory.
    pub fn line_of(&self, i: usize) -> usize {
        self.lines.get(i).copied().unwrap_or(0)
    }

    /// Adds an entry. Exact duplicates are dropped; a second unambiguous
    /// entry for a surface with a different analysis is a conflict.
    pub fn insert(&mut self, entry: LexEntry, line: usize) -> Result<bool, LexiconError> {
        let key = fold(&entry.surface);
        if let Some(ids) = self.index.get(&key) {
            for &i in ids {
                let existing = &self.entries[i];
                if existing.same_analysis(&entry) {
                    return Ok(false);
                }
                if existing.is_unamb() && entry.is_unamb() {
                    return Err(LexiconError::Conflict {
                        surface: entry.surface.clone(),
                        first: format_entry(existing),
                        second: format_entry(&entry),
                    });
                }
            }
        }
        self.index.entry(key).or_default().push(self.entries.len());
        self.lemmas.entry(fold(&entry.lemma)).or_default().push(self.entries.len());
        self.entries.push(entry);
        self.lines.push(line);
        Ok(true)
    }

    /// Case-insensitive exact-surface lookup. When an unambiguous entry
    /// matches, it is the only one returned.
    pub fn lookup(&self, surface: &str) -> Vec<&LexEntry> {
        let Some(ids) = self.index.get(&fold(surface)) else {
            return Vec::new();
        };
        let hits: Vec<&LexEntry> = ids.iter().map(|&i| &self.entries[i]).collect();
        let unamb: Vec<&LexEntry> = hits.iter().copied().filter(|e| e.is_unamb()).collect();
        if unamb.is_empty() {
            hits
        } else {
            unamb
        }
    }

    /// Every entry whose lemma is `lemma`, in insertion order.
    pub fn forms_of(&self, lemma: &str) -> Vec<&LexEntry> {
        self.lemmas
            .get(&fold(lemma))
            .map(|ids| ids.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default()
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.index.contains_key(&fold(surface))
    }

    /// True when some entry for `surface` has the given POS.
    pub fn has_pos(&self, surface: &str, pos: &str) -> bool {
        self.lookup(surface).iter().any(|e| e.head_pos() == pos)
    }

    /// Union of two dictionaries. Overlay entries are added beside the
    /// base ones, never replacing them.
    pub fn merge(base: &Lexicon, overlay: &Lexicon) -> Result<Lexicon, LexiconError> {
        let name = match (base.name.is_empty(), overlay.name.is_empty()) {
            (_, true) => base.name.clone(),
            (true, false) => overlay.name.clone(),
            (false, false) => format!("{}+{}", base.name, overlay.name),
        };
        let mut merged = Lexicon {
            name,
            ..base.clone()
        };
        for (i, entry) in overlay.entries.iter().enumerate() {
            merged.insert(entry.clone(), overlay.line_of(i))?;
        }
        Ok(merged)
    }

    /// Merges any number of dictionaries left to right.
    pub fn merge_all<'a>(parts: impl IntoIterator<Item = &'a Lexicon>) -> Result<Lexicon, LexiconError> {
        let mut parts = parts.into_iter();
        let mut acc = parts.next().cloned().unwrap_or_default();
        for part in parts {
            acc = Lexicon::merge(&acc, part)?;
        }
        Ok(acc)
    }
}
