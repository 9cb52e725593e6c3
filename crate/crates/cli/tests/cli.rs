use std::path::{Path, PathBuf};
use std::process::Command;

use emlex::analytics::Report;
use emlex_cli::{run, EXIT_INPUT, EXIT_OK, EXIT_USAGE};
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

struct Outcome {
    code: u8,
    out: String,
    err: String,
}

fn emlex(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("emlex").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn punctuation_stats_match_a_character_count() {
    let path = fixture("excerpt.txt");
    let text = std::fs::read_to_string(&path).unwrap();
    let r = emlex(&["stats", "punct", &path]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let report = Report::from_tsv(&r.out).unwrap();
    let count = |c: char| text.chars().filter(|&x| x == c).count() as i64;
    assert_eq!(report.int(&["."], "count"), Some(count('.')));
    assert_eq!(report.int(&[","], "count"), Some(count(',')));
    assert_eq!(report.int(&["'"], "count"), Some(count('\'')));
    assert_eq!(
        report.int(&["'\u{2019}\u{2018}"], "count"),
        Some(count('\'') + count('\u{2019}') + count('\u{2018}'))
    );
    assert!(r.out.starts_with("# provenance: corpus="));
}

#[test]
fn malformed_dictionary_is_an_input_error_naming_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(dir.path(), "bad.dic", "you,PRO\n# note\nbroken line without pos\n");
    let r = emlex(&["dict", "check", bad.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.out.is_empty());
    assert!(r.err.contains(":3:"), "diagnostic should name line 3: {}", r.err);
}

#[test]
fn concordance_shows_the_quoted_sentence() {
    let r = emlex(&["locate", "--pattern", "you", "--kwic", "3", &fixture("excerpt.txt")]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let flat = r.out.split_whitespace().collect::<Vec<_>>().join(" ");
    assert!(flat.contains("How can you be content"), "{}", r.out);
}

#[test]
fn concordance_tsv_and_json_agree() {
    let path = fixture("excerpt.txt");
    let tsv = emlex(&["locate", "--pattern", "<ness$>", "--tsv", &path]);
    let json = emlex(&["locate", "--pattern", "<ness$>", "--json", &path]);
    assert_eq!((tsv.code, json.code), (EXIT_OK, EXIT_OK));
    assert_eq!(Report::from_tsv(&tsv.out).unwrap(), Report::from_json(&json.out).unwrap());
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &[][..],
        &["stats"][..],
        &["stats", "bogus", "x.txt"][..],
        &["affix", "x.txt"][..],
        &["affix", "--prefix", "en", "--suffix", "ness", "x.txt"][..],
        &["tokenize", "--frobnicate", "x.txt"][..],
        &["locate", "--tsv", "--json", "--pattern", "you", "x.txt"][..],
    ] {
        let r = emlex(args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}");
        assert!(r.out.is_empty(), "{args:?}");
        assert!(r.err.contains("Usage"), "{args:?}: {}", r.err);
    }
    let help = emlex(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.out.contains("stats"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_file(dir.path(), "empty.txt", "");
    let missing = dir.path().join("missing.txt");
    let excerpt = fixture("excerpt.txt");
    for args in [
        vec!["stats", "punct", missing.to_str().unwrap()],
        vec!["stats", "punct", empty.to_str().unwrap()],
        vec!["locate", "--pattern", "<N", excerpt.as_str()],
        vec!["affix", "--suffix", "n3ss", excerpt.as_str()],
        vec!["stats", "punct", "--dict", missing.to_str().unwrap(), excerpt.as_str()],
    ] {
        let r = emlex(&args);
        assert_eq!(r.code, EXIT_INPUT, "{args:?}");
        assert!(r.out.is_empty(), "{args:?}");
        assert!(r.err.starts_with("emlex: "), "{args:?}: {}", r.err);
    }
}

#[test]
fn every_corpus_is_checked_before_output() {
    let r = emlex(&["tokenize", &fixture("excerpt.txt"), "/nonexistent/corpus.txt"]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.out.is_empty());
}

#[test]
fn tokenize_emits_spans_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_file(dir.path(), "t.txt", "’Tis a Block-head.");
    let r = emlex(&["tokenize", doc.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let lines: Vec<&str> = r.out.lines().skip(2).collect();
    assert_eq!(lines[0], "index\tstart\tend\tkind\tflags\tsurface");
    assert_eq!(lines[1], "0\t0\t6\tWord\tLeadingApostrophe|Capitalized\t’Tis");
    assert_eq!(lines[3], "2\t9\t19\tWord\tInternalHyphen|Capitalized\tBlock-head");
    assert_eq!(lines[4], "3\t19\t20\tPunct\t-\t.");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let path = fixture("excerpt.txt");
    for args in [
        vec!["normalize", path.as_str()],
        vec!["stats", "lengths", "--json", path.as_str()],
        vec!["annotate", path.as_str()],
    ] {
        let (a, b) = (emlex(&args), emlex(&args));
        assert_eq!(a.code, EXIT_OK, "{}", a.err);
        assert_eq!(a.out, b.out, "{args:?}");
    }
}

#[test]
fn normalize_reports_rule_and_confidence() {
    let r = emlex(&["normalize", "--emit", "json", &fixture("excerpt.txt")]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let report = Report::from_json(&r.out).unwrap();
    let row = |surface: &str| {
        report
            .rows
            .iter()
            .find(|row| row[1].to_string() == surface)
            .unwrap_or_else(|| panic!("no row for {surface}"))
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(row("'tis")[2..], ["it is", "it is", "ContractionDict", "Lexical"]);
    assert_eq!(row("Block-head")[2..], ["blockhead", "blockhead", "FuseHyphen", "RuleValidated"]);
    assert_eq!(row("dispise")[2..], ["despise", "despise", "Overlay", "Lexical"]);
}

#[test]
fn base_only_unknowns_differ_from_the_full_cascade() {
    let path = fixture("excerpt.txt");
    let full = Report::from_tsv(&emlex(&["stats", "unknown", &path]).out).unwrap();
    assert!(full.rows.is_empty(), "{:?}", full.rows);
    let bare = emlex(&["stats", "unknown", "--base-only", &path]);
    assert_eq!(bare.code, EXIT_OK, "{}", bare.err);
    let bare = Report::from_tsv(&bare.out).unwrap();
    for form in ["dispise", "publick", "nurs'd"] {
        assert!(bare.find(&[form]).is_some(), "{form} should be unknown: {:?}", bare.rows);
    }
}

#[test]
fn suffix_and_pronoun_stats() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_file(
        dir.path(),
        "s.txt",
        "Their Innocency and your innocency, my self and you; \u{2018}you\u{2019} and goodness.",
    );
    let doc = doc.to_str().unwrap();
    let suffixes = Report::from_tsv(&emlex(&["stats", "suffixes", "--suffix", "ency", "--suffix", "ness", doc]).out).unwrap();
    assert_eq!(suffixes.int(&["ency"], "occurrences"), Some(2));
    assert_eq!(suffixes.text(&["ency"], "archaic"), Some("innocency"));
    assert_eq!(suffixes.int(&["ness"], "forms"), Some(1));
    let pronouns = Report::from_tsv(&emlex(&["stats", "pronouns", doc]).out).unwrap();
    assert_eq!(pronouns.int(&["you/your", "you"], "count"), Some(2));
    assert_eq!(pronouns.int(&["me/my self/my/I", "my self"], "count"), Some(1));
    assert_eq!(pronouns.int(&["they/them/their", "their"], "count"), Some(1));
}

#[test]
fn affix_report_lists_forms_and_total() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_file(dir.path(), "a.txt", "encrease, enforce, Encrease and en.");
    let r = emlex(&["affix", "--prefix", "en", doc.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let report = Report::from_tsv(&r.out).unwrap();
    assert_eq!(report.title, "prefix en: 2 forms, 3 occurrences");
    assert_eq!(report.int(&["encrease"], "occurrences"), Some(2));
    assert_eq!(report.int(&["Total"], "occurrences"), Some(3));
}

#[test]
fn dict_merge_and_fmt() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(dir.path(), "a.dic", "# base\nyou,PRO\nnation,N+s\n");
    let b = write_file(dir.path(), "b.dic", "shew,show,V+EN=show+Dic_EN_XVII+spelling\nyou,PRO\n");
    let merged = dir.path().join("m.dic");
    let r = emlex(&["dict", "merge", merged.to_str().unwrap(), a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let text = std::fs::read_to_string(&merged).unwrap();
    assert_eq!(text, "you,PRO\nnation,N+s\nshew,show,V+EN=show+Dic_EN_XVII+spelling\n");
    let fmt = emlex(&["dict", "fmt", merged.to_str().unwrap()]);
    assert_eq!(fmt.out, text);
    let check = emlex(&["dict", "check", merged.to_str().unwrap()]);
    assert!(check.out.ends_with("\t3 entries\tok\n"), "{}", check.out);
}

#[test]
fn config_file_and_catchwords() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_file(dir.path(), "c.cfg", "rule.fuse_hyphen = false\ncatchword.marker = \\f\n");
    let doc = write_file(dir.path(), "d.txt", "a Block-head and religious\n\u{c}religious men");
    let r = emlex(&["--config", cfg.to_str().unwrap(), "normalize", doc.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let report = Report::from_tsv(&r.out).unwrap();
    let block = report.rows.iter().find(|row| row[1].to_string() == "Block-head").unwrap();
    assert_eq!(block[2].to_string(), "Block-head", "hyphen fusion is switched off");
    let religious = report.rows.iter().filter(|row| row[1].to_string() == "religious").count();
    assert_eq!(religious, 1, "the catchword is removed");

    let plain = emlex(&["normalize", doc.to_str().unwrap()]);
    assert_ne!(Report::from_tsv(&plain.out).unwrap().provenance, report.provenance);

    let bad = write_file(dir.path(), "bad.cfg", "rule.nonsense = on\n");
    let r = emlex(&["--config", bad.to_str().unwrap(), "stats", "punct", doc.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("line 1"), "{}", r.err);
}

#[test]
fn binary_exit_codes_and_dictionary_search_path() {
    let bin = env!("CARGO_BIN_EXE_emlex");
    let status = Command::new(bin).arg("stats").output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE as i32));
    assert!(status.stdout.is_empty());

    let dir = tempfile::tempdir().unwrap();
    write_file(dir.path(), "base.dic", "you,PRO\n");
    write_file(dir.path(), "xvii.dic", "");
    write_file(dir.path(), "contractions.dic", "");
    let doc = write_file(dir.path(), "d.txt", "you dispise");
    let run = |envs: &[(&str, &Path)], args: &[&str]| {
        Command::new(bin).envs(envs.iter().copied()).args(args).output().unwrap()
    };
    let own = run(&[("EMLEX_DICT_PATH", dir.path())], &["stats", "unknown", doc.to_str().unwrap()]);
    assert_eq!(own.status.code(), Some(0), "{}", String::from_utf8_lossy(&own.stderr));
    let report = Report::from_tsv(&String::from_utf8(own.stdout).unwrap()).unwrap();
    assert!(report.find(&["dispise"]).is_some());

    let bundled = run(&[], &["stats", "unknown", doc.to_str().unwrap()]);
    let report = Report::from_tsv(&String::from_utf8(bundled.stdout).unwrap()).unwrap();
    assert!(report.rows.is_empty());

    let version = run(&[("EMLEX_DICT_PATH", dir.path())], &["--version"]);
    let text = String::from_utf8(version.stdout).unwrap();
    assert!(text.starts_with(&format!("emlex {}\n", env!("CARGO_PKG_VERSION"))));
    assert_eq!(text.lines().filter(|l| l.starts_with("data ")).count(), 3);
    let default = String::from_utf8(run(&[], &["--version"]).stdout).unwrap();
    assert_ne!(text, default, "the data digests follow the dictionaries in use");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn census_tsv_and_json_carry_the_same_cells(
        text in "[a-zA-Z ,.;'\u{2019}\u{2018}\n-]{1,200}",
        kind in prop::sample::select(vec!["punct", "pronouns", "lengths"]),
    ) {
        let dir = tempfile::tempdir().unwrap();
        let doc = write_file(dir.path(), "p.txt", &text);
        let doc = doc.to_str().unwrap();
        let tsv = emlex(&["stats", kind, "--tsv", doc]);
        let json = emlex(&["stats", kind, "--json", doc]);
        prop_assert_eq!(tsv.code, EXIT_OK);
        prop_assert_eq!(Report::from_tsv(&tsv.out).unwrap(), Report::from_json(&json.out).unwrap());
    }
}
