use std::collections::BTreeMap;

use serde::Serialize;

use crate::lexicon::{fold, LexEntry, Lexicon};

use super::{validates, Confidence, RewriteCandidate, RuleId};

/// `in...` <-> `en...` for forms of at least four letters.
pub(crate) fn swapped_prefix(form: &str) -> Option<String> {
    let folded = fold(form);
    if folded.chars().count() < 4 {
        return None;
    }
    if let Some(rest) = folded.strip_prefix("in") {
        Some(format!("en{rest}"))
    } else {
        folded.strip_prefix("en").map(|rest| format!("in{rest}"))
    }
}

/// Swaps an `in`/`en` prefix and keeps the result only if the lexicon knows it.
pub fn swap_in_en(form: &str, lex: &Lexicon) -> Option<RewriteCandidate> {
    let swapped = swapped_prefix(form)?;
    validates(lex, &swapped).then(|| RewriteCandidate::new(form, swapped, RuleId::InEnSwap, Confidence::RuleValidated))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Tense {
    Present,
    Preterit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InflectionAnalysis {
    pub lemma: String,
    /// 2 for `-est`/`-st`, 3 for `-eth`/`-th`; always singular.
    pub person: u8,
    /// The ending alone does not fix the tense, so both readings are kept.
    pub tenses: Vec<Tense>,
}

impl InflectionAnalysis {
    /// Contemporary equivalent: the `-s` form for the third person, the
    /// bare lemma otherwise.
    pub fn modern_form(&self, lex: &Lexicon) -> String {
        if self.person != 3 {
            return self.lemma.clone();
        }
        lex.forms_of(&self.lemma)
            .into_iter()
            .find(|e| e.pos == "V" && e.has_feature("PR") && e.has_feature("3") && e.has_feature("s"))
            .map_or_else(|| format!("{}s", self.lemma), |e| fold(&e.surface))
    }
}

const PERSON_ENDINGS: [(&str, u8); 4] = [("eth", 3), ("est", 2), ("th", 3), ("st", 2)];

/// Recognizes `-eth`/`-th` (3rd person) and `-est`/`-st` (2nd person) verb
/// endings whose root is a verb in the lexicon.
pub fn analyze_archaic_inflection(form: &str, lex: &Lexicon) -> Option<InflectionAnalysis> {
    let folded = fold(form);
    for (ending, person) in PERSON_ENDINGS {
        let Some(root) = folded.strip_suffix(ending) else {
            continue;
        };
        if folded.chars().count() <= ending.len() + 2 {
            continue;
        }
        if let Some(entry) = root_variants(root).iter().find_map(|r| entry_with_pos(lex, r, &["V"])) {
            return Some(InflectionAnalysis {
                lemma: entry.lemma.clone(),
                person,
                tenses: vec![Tense::Present, Tense::Preterit],
            });
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Degree {
    Comparative,
    Superlative,
}

impl Degree {
    fn periphrasis(self) -> &'static str {
        match self {
            Degree::Comparative => "more",
            Degree::Superlative => "most",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeAnalysis {
    pub lemma: String,
    pub degree: Degree,
    pub irregular: bool,
    /// Contemporary rendering: the attested form when it is still current,
    /// the table's modern form for irregulars, else "more X" / "most X".
    pub modern: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrregularDegree {
    pub lemma: String,
    pub degree: Degree,
    pub modern: String,
}

/// Irregular comparatives and superlatives, keyed by folded form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeExceptions(pub BTreeMap<String, IrregularDegree>);

impl Default for DegreeExceptions {
    fn default() -> Self {
        let mut table = BTreeMap::new();
        table.insert(
            "worser".to_string(),
            IrregularDegree {
                lemma: "bad".to_string(),
                degree: Degree::Comparative,
                modern: "worse".to_string(),
            },
        );
        DegreeExceptions(table)
    }
}

pub fn analyze_degree(form: &str, lex: &Lexicon) -> Option<DegreeAnalysis> {
    analyze_degree_with(form, lex, &DegreeExceptions::default())
}

/// Strips `-er`/`-est` from an adjective or adverb of any length.
pub fn analyze_degree_with(form: &str, lex: &Lexicon, exceptions: &DegreeExceptions) -> Option<DegreeAnalysis> {
    let folded = fold(form);
    if let Some(irr) = exceptions.0.get(&folded) {
        return Some(DegreeAnalysis {
            lemma: irr.lemma.clone(),
            degree: irr.degree,
            irregular: true,
            modern: irr.modern.clone(),
        });
    }
    let (stem, degree) = if let Some(s) = folded.strip_suffix("est") {
        (s, Degree::Superlative)
    } else if let Some(s) = folded.strip_suffix("er") {
        (s, Degree::Comparative)
    } else {
        return None;
    };
    if stem.chars().count() < 2 {
        return None;
    }
    let entry = root_variants(stem)
        .iter()
        .find_map(|r| entry_with_pos(lex, r, &["A", "ADV"]))?;
    let modern = if validates(lex, &folded) {
        folded.clone()
    } else {
        format!("{} {}", degree.periphrasis(), fold(&entry.surface))
    };
    Some(DegreeAnalysis {
        lemma: entry.lemma.clone(),
        degree,
        irregular: false,
        modern,
    })
}

/// Root as written, with a restored final `e`, with a doubled final
/// consonant undone, and with `i` back to `y`.
fn root_variants(root: &str) -> Vec<String> {
    let mut out = vec![root.to_string(), format!("{root}e")];
    let chars: Vec<char> = root.chars().collect();
    if let [.., a, b] = chars.as_slice() {
        if a == b && !matches!(a, 'a' | 'e' | 'i' | 'o' | 'u') {
            out.push(chars[..chars.len() - 1].iter().collect());
        }
    }
    if let Some(r) = root.strip_suffix('i') {
        out.push(format!("{r}y"));
    }
    out
}

fn entry_with_pos<'a>(lex: &'a Lexicon, form: &str, pos: &[&str]) -> Option<&'a LexEntry> {
    if form.is_empty() {
        return None;
    }
    lex.lookup(form).into_iter().find(|e| pos.contains(&e.head_pos()))
}
