//! `key = value` configuration for rule toggles, irregular degrees and
//! corpus handling.

use std::path::Path;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::morphology::{Degree, DegreeExceptions, IrregularDegree, RuleConfig};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub const DEFAULT_KWIC_WIDTH: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub rules: RuleConfig,
    /// Use the 17th-century overlay.
    pub overlay: bool,
    /// Page-break marker for catchword stripping; off when `None`.
    pub catchword_marker: Option<String>,
    pub kwic_width: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            rules: RuleConfig::default(),
            overlay: true,
            catchword_marker: None,
            kwic_width: DEFAULT_KWIC_WIDTH,
        }
    }
}

const RULE_KEYS: [&str; 7] = [
    "contraction",
    "fuse_hyphen",
    "in_en",
    "elision",
    "inflection",
    "degree",
    "fuse_juxtaposed",
];

fn rule_slot<'a>(rules: &'a mut RuleConfig, key: &str) -> Option<&'a mut bool> {
    Some(match key {
        "contraction" => &mut rules.contraction,
        "fuse_hyphen" => &mut rules.fuse_hyphen,
        "in_en" => &mut rules.in_en,
        "elision" => &mut rules.elision,
        "inflection" => &mut rules.inflection,
        "degree" => &mut rules.degree,
        "fuse_juxtaposed" => &mut rules.fuse_juxtaposed,
        _ => return None,
    })
}

fn rule_value(rules: &RuleConfig, key: &str) -> bool {
    let mut copy = rules.clone();
    *rule_slot(&mut copy, key).expect("known rule key")
}

impl AnalysisConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Parses `key = value` lines on top of the defaults. Keys:
    /// `rule.<name>`, `overlay`, `catchword.marker`, `kwic.width` and
    /// `degree.irregular.<form> = <lemma> <comparative|superlative> <modern>`.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = AnalysisConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| ConfigError::Syntax { line: i + 1, reason };
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err("expected `key = value`".to_string()))?;
            let flag = || parse_bool(value).ok_or_else(|| err(format!("`{value}` is not true/false")));
            if let Some(rule) = key.strip_prefix("rule.") {
                let on = flag()?;
                *rule_slot(&mut cfg.rules, rule).ok_or_else(|| err(format!("unknown rule `{rule}`")))? = on;
            } else if let Some(form) = key.strip_prefix("degree.irregular.") {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [lemma, degree, modern @ ..] = parts.as_slice() else {
                    return Err(err("expected `<lemma> <degree> <modern>`".to_string()));
                };
                let degree = match *degree {
                    "comparative" => Degree::Comparative,
                    "superlative" => Degree::Superlative,
                    other => return Err(err(format!("unknown degree `{other}`"))),
                };
                if form.is_empty() || modern.is_empty() {
                    return Err(err("expected `<lemma> <degree> <modern>`".to_string()));
                }
                cfg.rules.exceptions.0.insert(
                    form.to_lowercase(),
                    IrregularDegree {
                        lemma: lemma.to_string(),
                        degree,
                        modern: modern.join(" "),
                    },
                );
            } else {
                match key {
                    "overlay" => cfg.overlay = flag()?,
                    "catchword.marker" => {
                        cfg.catchword_marker = (!value.is_empty()).then(|| unescape_marker(value));
                    }
                    "kwic.width" => {
                        cfg.kwic_width = value
                            .parse()
                            .map_err(|_| err(format!("`{value}` is not a width")))?;
                    }
                    other => return Err(err(format!("unknown key `{other}`"))),
                }
            }
        }
        Ok(cfg)
    }

    /// Canonical text form; parsing it gives back the same configuration.
    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        for key in RULE_KEYS {
            out.push_str(&format!("rule.{key} = {}\n", rule_value(&self.rules, key)));
        }
        let DegreeExceptions(table) = &self.rules.exceptions;
        for (form, irr) in table {
            let degree = match irr.degree {
                Degree::Comparative => "comparative",
                Degree::Superlative => "superlative",
            };
            out.push_str(&format!("degree.irregular.{form} = {} {degree} {}\n", irr.lemma, irr.modern));
        }
        out.push_str(&format!("overlay = {}\n", self.overlay));
        if let Some(m) = &self.catchword_marker {
            out.push_str(&format!("catchword.marker = {}\n", escape_marker(m)));
        }
        out.push_str(&format!("kwic.width = {}\n", self.kwic_width));
        out
    }

    /// Short SHA-256 digest of the canonical form plus `extra` (e.g. the
    /// dictionary names), for report provenance.
    pub fn hash(&self, extra: &str) -> String {
        let mut h = Sha256::new();
        h.update(self.to_canonical().as_bytes());
        h.update(extra.as_bytes());
        h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn parse_bool(v: &str) -> Option<bool> {
    match v {
        "true" | "on" | "yes" | "1" => Some(true),
        "false" | "off" | "no" | "0" => Some(false),
        _ => None,
    }
}

/// Turns the `\f` and `\n` escapes of a marker into the characters.
pub fn unescape_marker(v: &str) -> String {
    v.replace("\\f", "\u{c}").replace("\\n", "\n")
}

fn escape_marker(v: &str) -> String {
    v.replace('\u{c}', "\\f").replace('\n', "\\n")
}
