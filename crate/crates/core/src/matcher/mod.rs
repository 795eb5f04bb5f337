//! Name matching and recommendation.
//!
//! A query value is compared with the indexed keys of the same field in three
//! ways, strongest first:
//!
//! - **exact key**: other surface forms of the query's own normalized key
//!   (`siemens` → `Siemens`);
//! - **expansion**: keys that spell the query out in more detail, token by
//!   token (`master` → `Master's degree`, `bsc` → `Bachelor of Science (B.Sc.)`);
//! - **fuzzy**: keys within a length-dependent Damerau-Levenshtein budget
//!   (`teaching asistant` → `Teaching Assistant`).
//!
//! Candidates below the support floor are dropped, the query itself is never
//! recommended, and the rest are ranked by (class, support, surface).

mod distance;
mod normalize;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::CorpusSnapshot;
use crate::error::MatchError;
use crate::profile::FieldKind;

pub use distance::{dl_distance, dl_distance_chars};
pub use normalize::{normalize, NormalizedKey};

/// Match classes in priority order; `Ord` follows priority.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchClass {
    ExactKey,
    Expansion,
    Fuzzy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recommendation {
    pub surface: String,
    pub support: u64,
    pub match_class: MatchClass,
    /// Edit distance between normalized keys; 0 unless fuzzy.
    pub distance: u32,
}

/// Edit budget by normalized key length (in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DistanceBudget {
    /// Keys up to this length get budget 1.
    pub short_max_len: usize,
    /// Keys up to this length get budget 2; longer keys get 3.
    pub medium_max_len: usize,
}

impl Default for DistanceBudget {
    fn default() -> Self {
        DistanceBudget { short_max_len: 4, medium_max_len: 8 }
    }
}

impl DistanceBudget {
    pub fn for_len(&self, len: usize) -> u32 {
        if len <= self.short_max_len {
            1
        } else if len <= self.medium_max_len {
            2
        } else {
            3
        }
    }
}

pub const DEFAULT_STOPWORDS: [&str; 8] = ["of", "and", "the", "for", "in", "at", "on", "de"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MatchParams {
    /// Maximum number of recommendations returned.
    pub k: usize,
    /// Minimum support a recommended surface form needs.
    pub s_min: u64,
    pub distance_budget: DistanceBudget,
    /// Two entity expansions whose supports are closer than this ratio make a
    /// value ambiguous.
    pub ambiguity_ratio: f64,
    /// A near key at least this many times more frequent than the query's own
    /// key marks the query as a misspelling.
    pub misspelling_ratio: f64,
    /// Words ignored by the lowercase-token casing check.
    pub casing_stopwords: Vec<String>,
}

impl Default for MatchParams {
    fn default() -> Self {
        MatchParams {
            k: 3,
            s_min: 5,
            distance_budget: DistanceBudget::default(),
            ambiguity_ratio: 3.0,
            misspelling_ratio: 10.0,
            casing_stopwords: DEFAULT_STOPWORDS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl MatchParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.k < 1 {
            return Err("match.k must be at least 1".into());
        }
        if self.s_min < 1 {
            return Err("match.s_min must be at least 1".into());
        }
        if self.ambiguity_ratio.is_nan() || self.ambiguity_ratio <= 1.0 {
            return Err("match.ambiguity_ratio must be greater than 1".into());
        }
        if self.misspelling_ratio.is_nan() || self.misspelling_ratio < 1.0 {
            return Err("match.misspelling_ratio must be at least 1".into());
        }
        if self.distance_budget.short_max_len > self.distance_budget.medium_max_len {
            return Err("match.distance_budget.short_max_len exceeds medium_max_len".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Issue {
    Specificity,
    Spelling,
    Casing,
    Ambiguity,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The set of issues found for one field value. Empty means no issue.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IssueFlags(BTreeSet<Issue>);

impl IssueFlags {
    pub fn contains(&self, issue: Issue) -> bool {
        self.0.contains(&issue)
    }

    pub fn insert(&mut self, issue: Issue) {
        self.0.insert(issue);
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = Issue> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<Issue> for IssueFlags {
    fn from_iter<T: IntoIterator<Item = Issue>>(iter: T) -> Self {
        IssueFlags(iter.into_iter().collect())
    }
}

/// True iff `query` equals `candidate`, is a prefix of it, or is a subsequence
/// of it starting with the same character. The last two need `query` to have
/// at least three characters.
pub fn token_matches(query: &str, candidate: &str) -> bool {
    if query == candidate {
        return true;
    }
    if query.chars().count() < 3 {
        return false;
    }
    if candidate.starts_with(query) {
        return true;
    }
    let mut q = query.chars();
    let mut c = candidate.chars();
    if q.next() != c.next() {
        return false;
    }
    let mut want = q.next();
    for ch in c {
        match want {
            Some(w) if w == ch => want = q.next(),
            Some(_) => {}
            None => break,
        }
    }
    want.is_none()
}

/// True iff `candidate` spells out `query`: every query token matches a
/// candidate token, in order, and the candidate is a different key with at
/// least as many tokens.
///
/// A query token may also equal a run of adjacent candidate tokens written
/// together, so `bsc` is found in `bachelor of science b sc`.
pub fn expansion_match(query: &NormalizedKey, candidate: &NormalizedKey) -> bool {
    if query == candidate {
        return false;
    }
    let q: Vec<&str> = query.tokens().collect();
    let c: Vec<&str> = candidate.tokens().collect();
    if q.is_empty() || c.len() < q.len() {
        return false;
    }
    let mut pos = 0;
    for qt in q {
        // Earliest-ending match keeps the most room for later tokens.
        match (pos..c.len()).find(|&end| token_matches(qt, c[end]) || joined_run_ends_at(qt, &c[pos..=end])) {
            Some(end) => pos = end + 1,
            None => return false,
        }
    }
    true
}

/// Whether some suffix of `window` with two or more tokens concatenates to `token`.
fn joined_run_ends_at(token: &str, window: &[&str]) -> bool {
    let mut joined_len = 0;
    for start in (0..window.len()).rev() {
        joined_len += window[start].len();
        if joined_len > token.len() {
            return false;
        }
        if start + 1 < window.len() && joined_len == token.len() {
            return window[start..].concat() == token;
        }
    }
    false
}

#[derive(Debug, Clone)]
struct Candidate {
    key: String,
    rec: Recommendation,
}

/// Everything the matcher concludes about one field value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldAnalysis {
    pub field: FieldKind,
    pub query: String,
    pub key: NormalizedKey,
    /// Support of the query's normalized key, all surface forms together.
    pub key_support: u64,
    pub recommendations: Vec<Recommendation>,
    pub flags: IssueFlags,
}

fn rank_candidates(
    snapshot: &CorpusSnapshot,
    field: FieldKind,
    query: &str,
    params: &MatchParams,
) -> Result<(NormalizedKey, Vec<Candidate>), MatchError> {
    let qkey = normalize(query);
    if qkey.is_empty() {
        return Err(MatchError::EmptyQuery);
    }
    let index = snapshot.field_index(field);
    let budget = params.distance_budget.for_len(qkey.char_len());
    let mut out = Vec::new();

    for (surface, support) in index.variants(qkey.as_str()) {
        out.push(Candidate {
            key: qkey.as_str().to_owned(),
            rec: Recommendation {
                surface: surface.to_owned(),
                support,
                match_class: MatchClass::ExactKey,
                distance: 0,
            },
        });
    }

    let near: BTreeMap<&str, u32> =
        index.fuzzy_candidates(qkey.as_str(), budget).into_iter().filter(|(k, _)| *k != qkey.as_str()).collect();

    for entry in index.keys() {
        if entry.key == qkey.as_str() {
            continue;
        }
        let Some((surface, support)) = entry.dominant() else { continue };
        if support < params.s_min {
            continue;
        }
        // Keys within the edit budget are near-misses even when they also
        // spell the query out, so a dropped letter reads as a typo.
        let (match_class, distance) = if let Some(&d) = near.get(entry.key.as_str()) {
            (MatchClass::Fuzzy, d)
        } else if expansion_match(&qkey, &NormalizedKey::from_str_unchecked(&entry.key)) {
            (MatchClass::Expansion, 0)
        } else {
            continue;
        };
        out.push(Candidate {
            key: entry.key.clone(),
            rec: Recommendation { surface: surface.to_owned(), support, match_class, distance },
        });
    }

    out.retain(|c| c.rec.support >= params.s_min && c.rec.surface != query);
    out.sort_by(|a, b| {
        (a.rec.match_class, Reverse(a.rec.support), &a.rec.surface).cmp(&(
            b.rec.match_class,
            Reverse(b.rec.support),
            &b.rec.surface,
        ))
    });
    Ok((qkey, out))
}

fn lowercase_token_outside_stopwords(query: &str, stopwords: &[String]) -> bool {
    query.split_whitespace().any(|token| {
        let lower = token.to_lowercase();
        let bare = lower.trim_matches(|c: char| !c.is_alphanumeric());
        if stopwords.iter().any(|s| s == bare) {
            return false;
        }
        token.chars().find(|c| c.is_alphabetic()).is_some_and(char::is_lowercase)
    })
}

fn flags_for(
    snapshot: &CorpusSnapshot,
    field: FieldKind,
    query: &str,
    qkey: &NormalizedKey,
    candidates: &[Candidate],
    params: &MatchParams,
) -> IssueFlags {
    let index = snapshot.field_index(field);
    let key_support = index.key_support(qkey.as_str());
    let mut flags = IssueFlags::default();

    let casing = match index.variants(qkey.as_str()).first() {
        Some((top, _)) => *top != query && top.to_lowercase() == query.to_lowercase(),
        // An unseen value is only flagged when there is something to offer instead.
        None => {
            !candidates.is_empty()
                && matches!(
                    field,
                    FieldKind::SchoolName | FieldKind::OrganizationName | FieldKind::JobTitle | FieldKind::DegreeName
                )
                && lowercase_token_outside_stopwords(query, &params.casing_stopwords)
        }
    };
    if casing {
        flags.insert(Issue::Casing);
    }

    let spelling = candidates.iter().any(|c| {
        c.rec.match_class == MatchClass::Fuzzy && c.rec.support as f64 >= params.misspelling_ratio * key_support as f64
    });
    if spelling {
        flags.insert(Issue::Spelling);
    }

    // Candidates are support-sorted within a class and carry one surface per key.
    let expansions: Vec<&Candidate> =
        candidates.iter().filter(|c| c.rec.match_class == MatchClass::Expansion).collect();
    if field.names_entity() && expansions.len() >= 2 && expansions[0].key != expansions[1].key {
        let ratio = expansions[0].rec.support as f64 / expansions[1].rec.support as f64;
        if ratio < params.ambiguity_ratio {
            flags.insert(Issue::Ambiguity);
        }
    }

    if !expansions.is_empty() && !spelling {
        flags.insert(Issue::Specificity);
    }
    flags
}

/// Top-k recommendations for `query` in `field`.
pub fn recommend(
    snapshot: &CorpusSnapshot,
    field: FieldKind,
    query: &str,
    params: &MatchParams,
) -> Result<Vec<Recommendation>, MatchError> {
    let (_, candidates) = rank_candidates(snapshot, field, query, params)?;
    Ok(candidates.into_iter().take(params.k).map(|c| c.rec).collect())
}

/// Issue flags for `query`. Flags are judged on the full ranked candidate list,
/// of which [`recommend`] returns the first `k`.
pub fn classify_issues(
    snapshot: &CorpusSnapshot,
    field: FieldKind,
    query: &str,
    params: &MatchParams,
) -> Result<IssueFlags, MatchError> {
    let (qkey, candidates) = rank_candidates(snapshot, field, query, params)?;
    Ok(flags_for(snapshot, field, query, &qkey, &candidates, params))
}

/// Recommendations and flags in one pass.
pub fn analyze(
    snapshot: &CorpusSnapshot,
    field: FieldKind,
    query: &str,
    params: &MatchParams,
) -> Result<FieldAnalysis, MatchError> {
    let (qkey, candidates) = rank_candidates(snapshot, field, query, params)?;
    let flags = flags_for(snapshot, field, query, &qkey, &candidates, params);
    Ok(FieldAnalysis {
        field,
        query: query.to_owned(),
        key_support: snapshot.field_index(field).key_support(qkey.as_str()),
        key: qkey,
        recommendations: candidates.into_iter().take(params.k).map(|c| c.rec).collect(),
        flags,
    })
}

/// The full ranked list before truncation to `k`.
pub fn ranked_candidates(
    snapshot: &CorpusSnapshot,
    field: FieldKind,
    query: &str,
    params: &MatchParams,
) -> Result<Vec<Recommendation>, MatchError> {
    Ok(rank_candidates(snapshot, field, query, params)?.1.into_iter().map(|c| c.rec).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(s: &str) -> NormalizedKey {
        normalize(s)
    }

    #[test]
    fn token_rules() {
        assert!(token_matches("master", "masters"));
        assert!(token_matches("engr", "engineer"));
        assert!(!token_matches("engr", "manager"));
        assert!(token_matches("bsc", "bsc"));
        assert!(!token_matches("ba", "bachelor"), "short tokens need equality");
        assert!(!token_matches("sci", "asci"), "first character must agree");
        assert!(token_matches("asistant", "assistant"));
    }

    #[test]
    fn expansion_rules() {
        assert!(expansion_match(&key("bsc"), &key("Bachelor of Science (BSc)")));
        assert!(expansion_match(&key("bsc"), &key("Bachelor of Science (B.Sc.)")));
        assert!(expansion_match(&key("raffles"), &key("Raffles Junior College")));
        assert!(expansion_match(&key("master"), &key("Master's degree")));
        assert!(expansion_match(&key("software engr"), &key("Senior Software Engineer")));
        assert!(!expansion_match(&key("software engineer"), &key("software engineer")));
        assert!(!expansion_match(&key("engineer software"), &key("software engineer")), "order matters");
        assert!(!expansion_match(&key("raffles junior college"), &key("raffles")));
        assert!(!expansion_match(&key("mba"), &key("m b")));
    }

    #[test]
    fn joined_runs() {
        assert!(joined_run_ends_at("bsc", &["b", "sc"]));
        assert!(joined_run_ends_at("bsc", &["science", "b", "sc"]));
        assert!(!joined_run_ends_at("bsc", &["bsc"]), "single token is not a run");
        assert!(!joined_run_ends_at("bsc", &["b", "s"]));
    }

    #[test]
    fn budget_by_length() {
        let b = DistanceBudget::default();
        assert_eq!(b.for_len(4), 1);
        assert_eq!(b.for_len(5), 2);
        assert_eq!(b.for_len(8), 2);
        assert_eq!(b.for_len(9), 3);
    }

    #[test]
    fn params_validation() {
        assert!(MatchParams::default().validate().is_ok());
        assert!(MatchParams { k: 0, ..Default::default() }.validate().is_err());
        assert!(MatchParams { s_min: 0, ..Default::default() }.validate().is_err());
        assert!(MatchParams { ambiguity_ratio: 1.0, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn casing_fallback_tokens() {
        let stop = MatchParams::default().casing_stopwords;
        assert!(lowercase_token_outside_stopwords("software engr", &stop));
        assert!(!lowercase_token_outside_stopwords("Bachelor of Science", &stop));
        assert!(!lowercase_token_outside_stopwords("University (NUS)", &stop));
        assert!(lowercase_token_outside_stopwords("Teaching asistant", &stop));
    }
}
