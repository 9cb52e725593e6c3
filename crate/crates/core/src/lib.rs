//! Lexicon-driven analysis of Early Modern English print: tokenization,
//! dictionary overlays, a normalization rule cascade, pattern search and
//! corpus statistics.

pub mod analytics;
pub mod config;
pub mod corpus;
pub mod lexicon;
pub mod morphology;
pub mod pattern;

use std::path::{Path, PathBuf};

use lexicon::{Lexicon, LexiconError};
use sha2::{Digest, Sha256};

pub const BASE_FILE: &str = "base.dic";
pub const OVERLAY_FILE: &str = "xvii.dic";
pub const CONTRACTIONS_FILE: &str = "contractions.dic";

/// Directory holding the dictionaries shipped with the crate.
pub fn bundled_data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// The three dictionaries the cascade works from.
#[derive(Debug, Clone)]
pub struct Dictionaries {
    pub base: Lexicon,
    pub overlay: Lexicon,
    pub contractions: Lexicon,
}

impl Dictionaries {
    /// Loads `base.dic`, `xvii.dic` and `contractions.dic` from `dir`.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let dir = dir.as_ref();
        Self::load(
            dir.join(BASE_FILE),
            dir.join(OVERLAY_FILE),
            dir.join(CONTRACTIONS_FILE),
        )
    }

    pub fn load(
        base: impl AsRef<Path>,
        overlay: impl AsRef<Path>,
        contractions: impl AsRef<Path>,
    ) -> Result<Self, LexiconError> {
        Ok(Dictionaries {
            base: Lexicon::load(base, "base")?,
            overlay: Lexicon::load(overlay, "xvii")?,
            contractions: Lexicon::load(contractions, "contractions")?,
        })
    }

    pub fn bundled() -> Result<Self, LexiconError> {
        Self::load_dir(bundled_data_dir())
    }
}

/// First 12 hex digits of the SHA-256 of a file, used as a data version.
pub fn file_digest(path: impl AsRef<Path>) -> std::io::Result<String> {
    let bytes = std::fs::read(path)?;
    Ok(Sha256::digest(&bytes)[..6].iter().map(|b| format!("{b:02x}")).collect())
}
