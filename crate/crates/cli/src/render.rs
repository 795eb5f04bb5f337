//! Structured output shared by the command line and the HTTP API, so both
//! produce the same bytes for the same request.

use serde::Serialize;

use profilelint_core::corpus::{CorpusSnapshot, ProfileMatch};
use profilelint_core::evaluator::EvaluationReport;
use profilelint_core::matcher::FieldAnalysis;
use profilelint_core::profile::{serialize_profile, Profile};

use crate::config::AppConfig;

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn report(report: &EvaluationReport) -> String {
    report.to_json()
}

pub fn suggestions(analysis: &FieldAnalysis) -> String {
    pretty(analysis)
}

#[derive(Serialize)]
struct Matches<'a> {
    count: usize,
    matches: &'a [ProfileMatch],
}

pub fn matches(matches: &[ProfileMatch]) -> String {
    pretty(&Matches { count: matches.len(), matches })
}

/// A stored profile in document form.
pub fn profile(profile: &Profile) -> String {
    let mut s = serialize_profile(profile);
    s.push('\n');
    s
}

pub fn config(config: &AppConfig) -> String {
    pretty(config)
}

#[derive(Serialize)]
struct Health<'a> {
    status: &'static str,
    profiles: u64,
    snapshot_digest: &'a str,
}

pub fn health(snapshot: &CorpusSnapshot) -> String {
    pretty(&Health { status: "ok", profiles: snapshot.profile_count(), snapshot_digest: snapshot.content_digest() })
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: ErrorDetail<'a>,
}

#[derive(Serialize)]
struct ErrorDetail<'a> {
    code: &'a str,
    message: &'a str,
}

/// `{"error":{"code":...,"message":...}}`
pub fn error(code: &str, message: &str) -> String {
    pretty(&ErrorBody { error: ErrorDetail { code, message } })
}
