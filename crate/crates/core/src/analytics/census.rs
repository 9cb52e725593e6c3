use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::{SourceDocument, Token};
use crate::lexicon::{fold, Lexicon};
use crate::morphology::letter_length;
use crate::pattern::{affix_query, AffixKind};

use super::{AnnotationIndex, Cell, Report};

/// Census key of a surface: case-folded, with quote marks at either edge
/// dropped so that `you’` closing a quotation still counts as `you`.
fn census_form(surface: &str) -> String {
    fold(surface).trim_matches('\'').to_string()
}

/// Pronoun groups in census order. "my self" is a two-word form.
pub const PRONOUN_GROUPS: [(&str, &[&str]); 7] = [
    ("me/my self/my/I", &["me", "my self", "my", "i"]),
    ("thou/thy/thine", &["thou", "thy", "thine"]),
    ("she/her", &["she", "her"]),
    ("he/him/his", &["he", "him", "his"]),
    ("we/us/our", &["we", "us", "our"]),
    ("you/your", &["you", "your"]),
    ("they/them/their", &["they", "them", "their"]),
];

/// Counts the pronoun forms over surface tokens. A `my` directly followed
/// by `self` is counted once, as "my self"; fused spellings such as
/// `myself` are not counted.
pub fn pronoun_census(tokens: &[Token]) -> Report {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut i = 0;
    while i < tokens.len() {
        let t = &tokens[i];
        if t.is_word() {
            let form = census_form(&t.surface);
            let next_self = tokens
                .get(i + 1)
                .is_some_and(|n| n.is_word() && census_form(&n.surface) == "self");
            if form == "my" && next_self {
                *counts.entry("my self").or_default() += 1;
                i += 2;
                continue;
            }
            if let Some(known) = PRONOUN_GROUPS.iter().flat_map(|(_, f)| f.iter()).find(|f| **f == form) {
                *counts.entry(known).or_default() += 1;
            }
        }
        i += 1;
    }

    let mut report = Report::new("Personal pronouns", &["group", "form", "count"]);
    let mut grand = 0;
    for (group, forms) in PRONOUN_GROUPS {
        let mut sum = 0;
        for form in forms {
            let n = counts.get(form).copied().unwrap_or(0);
            sum += n;
            report.row(vec![group.into(), (*form).into(), n.into()]);
        }
        grand += sum;
        report.row(vec![group.into(), "Total".into(), sum.into()]);
    }
    report.row(vec!["All".into(), "Total".into(), grand.into()]);
    report
}

const UNITS: [&str; 20] = [
    "ZERO", "ONE", "TWO", "THREE", "FOUR", "FIVE", "SIX", "SEVEN", "EIGHT", "NINE", "TEN", "ELEVEN", "TWELVE",
    "THIRTEEN", "FOURTEEN", "FIFTEEN", "SIXTEEN", "SEVENTEEN", "EIGHTEEN", "NINETEEN",
];
const TENS: [&str; 10] = [
    "", "", "TWENTY", "THIRTY", "FORTY", "FIFTY", "SIXTY", "SEVENTY", "EIGHTY", "NINETY",
];

/// Upper-case English name of a number (below 100; larger ones are
/// written `N<digits>`).
pub fn number_name(n: usize) -> String {
    match n {
        0..=19 => UNITS[n].to_string(),
        20..=99 if n % 10 == 0 => TENS[n / 10].to_string(),
        20..=99 => format!("{}-{}", TENS[n / 10], UNITS[n % 10]),
        _ => format!("N{n}"),
    }
}

fn ratio(num: usize, den: usize) -> String {
    if den == 0 {
        "0.00".to_string()
    } else {
        format!("{:.2}", num as f64 / den as f64)
    }
}

/// Distinct forms, occurrences and occurrences per form for every letter
/// length from `min_letters` up, then totals and the share of all words.
pub fn length_distribution(tokens: &[Token], min_letters: usize) -> Report {
    let min_letters = min_letters.max(1);
    let mut by_len: BTreeMap<usize, BTreeMap<String, usize>> = BTreeMap::new();
    let mut words = 0usize;
    for t in tokens.iter().filter(|t| t.is_word()) {
        words += 1;
        let n = letter_length(&t.surface).letters;
        if n >= min_letters {
            *by_len.entry(n).or_default().entry(census_form(&t.surface)).or_default() += 1;
        }
    }
    let mut report = Report::new(
        &format!("Long words (at least {min_letters} letters)"),
        &["LENGTH", "WORDS", "OCCURRENCES", "OCC per WORD"],
    );
    let (mut forms, mut occ) = (0, 0);
    for (len, counts) in &by_len {
        let f = counts.len();
        let o: usize = counts.values().sum();
        forms += f;
        occ += o;
        report.row(vec![number_name(*len).into(), f.into(), o.into(), ratio(o, f).into()]);
    }
    report.row(vec!["Total".into(), forms.into(), occ.into(), ratio(occ, forms).into()]);
    let share = if words == 0 {
        "0.00%".to_string()
    } else {
        format!("{:.2}%", 100.0 * occ as f64 / words as f64)
    };
    report.row(vec!["Corpus words".into(), Cell::Text(String::new()), words.into(), share.into()]);
    report
}

/// Counts the three apostrophe codepoints, their sum, full stops and commas
/// over the raw text.
pub fn punctuation_census(doc: &SourceDocument) -> Report {
    let (mut straight, mut right, mut left, mut stops, mut commas) = (0usize, 0usize, 0usize, 0usize, 0usize);
    for c in doc.text.chars() {
        match c {
            '\'' => straight += 1,
            '\u{2019}' => right += 1,
            '\u{2018}' => left += 1,
            '.' => stops += 1,
            ',' => commas += 1,
            _ => {}
        }
    }
    let mut report = Report::new("Apostrophes and punctuation", &["character", "name", "count"]);
    report.row(vec!["'".into(), "U+0027".into(), straight.into()]);
    report.row(vec!["\u{2019}".into(), "U+2019".into(), right.into()]);
    report.row(vec!["\u{2018}".into(), "U+2018".into(), left.into()]);
    report.row(vec!["'\u{2019}\u{2018}".into(), "apostrophes".into(), (straight + right + left).into()]);
    report.row(vec![".".into(), "full stop".into(), stops.into()]);
    report.row(vec![",".into(), "comma".into(), commas.into()]);
    report
}

/// Unknown surfaces in alphabetical order, with noise candidates as
/// suggestions.
pub fn unknown_words(index: &AnnotationIndex) -> Report {
    let mut suggestions: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for t in index.tokens() {
        let form = fold(&t.surface);
        if index.unknown().contains_key(&form) {
            let entry = suggestions.entry(form).or_default();
            entry.extend(t.suggestions.iter().map(|c| c.result.clone()));
        }
    }
    let mut report = Report::new("Unknown words", &["form", "occurrences", "suggestions"]);
    for (form, count) in index.unknown() {
        let s = suggestions
            .get(form)
            .map(|s| s.iter().cloned().collect::<Vec<_>>().join("|"))
            .unwrap_or_default();
        report.row(vec![form.clone().into(), (*count).into(), s.into()]);
    }
    report
}

/// Noun suffixes in singular/plural pairs, then adjective suffixes.
pub const TABLE6_SUFFIXES: [&str; 48] = [
    "tion", "tions", "ity", "ities", "ness", "nesses", "ment", "ments", "ence", "ences", "ance", "ances", "ure",
    "ures", "ency", "encies", "sion", "sions", "er", "ers", "or", "ors", "acy", "acies", "ancy", "ancies", "ive",
    "ives", "ary", "aries", "ist", "ists", "al", "als", "ast", "asts", "yon", "yons", "ous", "able", "ly", "ish",
    "ate", "less", "ick", "ical", "ic", "ose",
];

/// One row per suffix: distinct forms, occurrences, and the forms that
/// carry a 17th-century entry in `overlay`.
pub fn suffix_table(tokens: &[Token], suffixes: &[&str], overlay: &Lexicon) -> Report {
    let mut report = Report::new("Suffixes", &["suffix", "forms", "occurrences", "archaic"]);
    let mut seen = BTreeSet::new();
    for suffix in suffixes {
        if !seen.insert(fold(suffix)) {
            continue;
        }
        let Ok(found) = affix_query(AffixKind::Suffix, suffix, tokens) else {
            continue;
        };
        let mut archaic: Vec<&str> = found
            .forms
            .iter()
            .map(|(f, _)| f.as_str())
            .filter(|f| overlay.lookup(f).iter().any(|e| e.is_xvii()))
            .collect();
        archaic.sort_unstable();
        report.row(vec![
            found.affix.clone().into(),
            found.distinct().into(),
            found.total.into(),
            archaic.join(",").into(),
        ]);
    }
    report
}
