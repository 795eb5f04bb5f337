//! The walkthrough report against its checked-in golden copy.
//!
//! Set `PROFILELINT_BLESS=1` to rewrite the golden file after an intended change.

mod common;

use std::path::PathBuf;

use profilelint_core::evaluator::{evaluate, EvalConfig, SuggestionKind};
use profilelint_core::synth::walkthrough_profile;

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/walkthrough_report.json")
}

#[test]
fn walkthrough_report_matches_golden() {
    let report = evaluate(common::snapshot(), &walkthrough_profile(), &EvalConfig::default());
    assert_eq!(report.suggestions.len(), 7);
    assert_eq!(report.summary[&SuggestionKind::SectionCompleteness], 1);
    let json = report.to_json();
    let path = golden_path();
    if std::env::var_os("PROFILELINT_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &json).unwrap();
    }
    let golden = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with PROFILELINT_BLESS=1 to create it)", path.display()));
    assert_eq!(json, golden, "report drifted from {}", path.display());
}
