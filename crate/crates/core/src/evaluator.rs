//! Profile evaluation: completeness suggestions from cohort statistics plus
//! per-field name suggestions from the matcher, assembled into a report.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::corpus::{cohort_of, CohortCriterion, CohortKey, CorpusSnapshot};
use crate::matcher::{analyze, Issue, IssueFlags, MatchParams, Recommendation};
use crate::profile::{section_present, FieldKind, Profile, SectionKind, SourceTag};

fn default_checked_sections() -> BTreeSet<SectionKind> {
    [
        SectionKind::Education,
        SectionKind::Experience,
        SectionKind::Award,
        SectionKind::Skill,
        SectionKind::Certification,
        SectionKind::Summary,
    ]
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalConfig {
    /// Minimum cohort presence rate at which a missing section is suggested.
    pub completeness_threshold: f64,
    /// Similarity criterion; `None` uses the snapshot's build setting.
    pub cohort_criterion: Option<CohortCriterion>,
    pub checked_sections: BTreeSet<SectionKind>,
    #[serde(rename = "match")]
    pub match_params: MatchParams,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            completeness_threshold: 0.20,
            cohort_criterion: None,
            checked_sections: default_checked_sections(),
            match_params: MatchParams::default(),
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(0.0..=1.0).contains(&self.completeness_threshold) {
            return Err("eval.completeness_threshold must lie in [0, 1]".into());
        }
        self.match_params.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuggestionKind {
    SectionCompleteness,
    Specificity,
    Spelling,
    Casing,
    Ambiguity,
}

impl SuggestionKind {
    pub const ALL: [SuggestionKind; 5] = [
        SuggestionKind::SectionCompleteness,
        SuggestionKind::Specificity,
        SuggestionKind::Spelling,
        SuggestionKind::Casing,
        SuggestionKind::Ambiguity,
    ];

    /// One suggestion per field: the most pressing flag names it.
    fn from_flags(flags: &IssueFlags) -> Option<SuggestionKind> {
        [
            (Issue::Spelling, SuggestionKind::Spelling),
            (Issue::Casing, SuggestionKind::Casing),
            (Issue::Ambiguity, SuggestionKind::Ambiguity),
            (Issue::Specificity, SuggestionKind::Specificity),
        ]
        .into_iter()
        .find(|(issue, _)| flags.contains(*issue))
        .map(|(_, kind)| kind)
    }

    pub fn label(self) -> &'static str {
        match self {
            SuggestionKind::SectionCompleteness => "completeness",
            SuggestionKind::Specificity => "specificity",
            SuggestionKind::Spelling => "spelling",
            SuggestionKind::Casing => "casing",
            SuggestionKind::Ambiguity => "ambiguity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Location {
    pub section: SectionKind,
    /// `None` for section-level findings.
    pub instance: Option<usize>,
    pub field: Option<FieldKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Rationale {
    Completeness {
        cohort: CohortKey,
        rate: f64,
        cohort_size: u64,
        /// Set when the profile's own cohort was too small or undefined.
        fell_back_to_global: bool,
        threshold: f64,
    },
    Field {
        flags: IssueFlags,
        /// Support of the exact value as entered.
        value_support: u64,
        /// Support of the value's normalized key.
        key_support: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Suggestion {
    pub kind: SuggestionKind,
    pub location: Location,
    pub original: String,
    pub recommendations: Vec<Recommendation>,
    pub rationale: Rationale,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileRef {
    Stored { source: SourceTag, id: String },
    AdHoc,
}

impl Serialize for ProfileRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ProfileRef::AdHoc => serializer.serialize_str("ad-hoc"),
            ProfileRef::Stored { source, id } => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("source", source)?;
                map.serialize_entry("id", id)?;
                map.end()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub profile: ProfileRef,
    pub summary: BTreeMap<SuggestionKind, usize>,
    pub suggestions: Vec<Suggestion>,
    pub snapshot_digest: String,
    pub config: EvalConfig,
}

impl EvaluationReport {
    pub fn total(&self) -> usize {
        self.suggestions.len()
    }

    /// Structured form: pretty JSON with a trailing newline. This is both the
    /// HTTP response body and the golden-file format.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.profile {
            ProfileRef::Stored { source, id } => writeln!(out, "profile {source}/{id}").unwrap(),
            ProfileRef::AdHoc => writeln!(out, "profile ad-hoc").unwrap(),
        }
        let counts: Vec<String> =
            self.summary.iter().filter(|(_, n)| **n > 0).map(|(k, n)| format!("{} {n}", k.label())).collect();
        if counts.is_empty() {
            writeln!(out, "0 suggestions").unwrap();
        } else {
            writeln!(out, "{} suggestions ({})", self.total(), counts.join(", ")).unwrap();
        }
        for s in &self.suggestions {
            match &s.rationale {
                Rationale::Completeness { cohort, rate, cohort_size, .. } => writeln!(
                    out,
                    "- [{}] add a {} section: {:.1}% of {cohort_size} profiles in {cohort} have one",
                    s.kind.label(),
                    s.location.section,
                    rate * 100.0
                )
                .unwrap(),
                Rationale::Field { .. } => {
                    let field = s.location.field.map(FieldKind::as_str).unwrap_or("");
                    writeln!(
                        out,
                        "- [{}] {} #{} {field} \"{}\"",
                        s.kind.label(),
                        s.location.section,
                        s.location.instance.unwrap_or(0),
                        s.original
                    )
                    .unwrap();
                    for r in &s.recommendations {
                        writeln!(out, "    {} ({} profiles)", r.surface, r.support).unwrap();
                    }
                }
            }
        }
        out
    }
}

/// Missing sections that enough of the profile's cohort fill in.
pub fn completeness_suggestions(snapshot: &CorpusSnapshot, profile: &Profile, cfg: &EvalConfig) -> Vec<Suggestion> {
    let criterion = cfg.cohort_criterion.unwrap_or(snapshot.build_config().cohort_criterion);
    let min_size = snapshot.build_config().min_cohort_size;
    let own = cohort_of(profile, criterion);
    let mut out = Vec::new();
    for &kind in &cfg.checked_sections {
        if section_present(profile, kind) {
            continue;
        }
        let (cohort, (rate, size), fell_back) = match &own {
            Some(key) if snapshot.cohort_rate(key, kind).1 >= min_size => {
                (key.clone(), snapshot.cohort_rate(key, kind), false)
            }
            _ => {
                let global = CohortKey::global();
                let r = snapshot.cohort_rate(&global, kind);
                (global, r, criterion != CohortCriterion::Global)
            }
        };
        if size > 0 && rate >= cfg.completeness_threshold {
            out.push(Suggestion {
                kind: SuggestionKind::SectionCompleteness,
                location: Location { section: kind, instance: None, field: None },
                original: String::new(),
                recommendations: Vec::new(),
                rationale: Rationale::Completeness {
                    cohort,
                    rate,
                    cohort_size: size,
                    fell_back_to_global: fell_back,
                    threshold: cfg.completeness_threshold,
                },
            });
        }
    }
    out
}

/// At most one suggestion per non-blank recommendable field.
pub fn field_suggestions(snapshot: &CorpusSnapshot, profile: &Profile, cfg: &EvalConfig) -> Vec<Suggestion> {
    let mut out = Vec::new();
    for (&section, instances) in &profile.sections {
        for (index, instance) in instances.iter().enumerate() {
            for &field in FieldKind::for_section(section) {
                let Some(value) = instance.field(field) else { continue };
                // Non-blank values always normalize to something unless they are
                // pure punctuation; those have nothing to recommend.
                let Ok(analysis) = analyze(snapshot, field, value, &cfg.match_params) else { continue };
                if analysis.recommendations.is_empty() {
                    continue;
                }
                let Some(kind) = SuggestionKind::from_flags(&analysis.flags) else { continue };
                out.push(Suggestion {
                    kind,
                    location: Location { section, instance: Some(index), field: Some(field) },
                    original: value.to_owned(),
                    rationale: Rationale::Field {
                        flags: analysis.flags,
                        value_support: snapshot.support(field, value),
                        key_support: analysis.key_support,
                    },
                    recommendations: analysis.recommendations,
                });
            }
        }
    }
    out
}

/// Full evaluation of one profile. The report names the stored profile when
/// the snapshot holds an identical one, otherwise it is ad-hoc.
pub fn evaluate(snapshot: &CorpusSnapshot, profile: &Profile, cfg: &EvalConfig) -> EvaluationReport {
    let mut suggestions = completeness_suggestions(snapshot, profile, cfg);
    suggestions.extend(field_suggestions(snapshot, profile, cfg));
    suggestions.sort_by_key(|s| (s.location.section, s.location.instance, s.kind, s.location.field));

    let mut summary: BTreeMap<SuggestionKind, usize> = SuggestionKind::ALL.into_iter().map(|k| (k, 0)).collect();
    for s in &suggestions {
        *summary.entry(s.kind).or_insert(0) += 1;
    }
    let profile_ref = match snapshot.profile(profile.source, &profile.id) {
        Some(stored) if stored == profile => ProfileRef::Stored { source: profile.source, id: profile.id.clone() },
        _ => ProfileRef::AdHoc,
    };
    EvaluationReport {
        profile: profile_ref,
        summary,
        suggestions,
        snapshot_digest: snapshot.content_digest().to_owned(),
        config: cfg.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_precedence() {
        let all: IssueFlags =
            [Issue::Specificity, Issue::Spelling, Issue::Casing, Issue::Ambiguity].into_iter().collect();
        assert_eq!(SuggestionKind::from_flags(&all), Some(SuggestionKind::Spelling));
        let no_spelling: IssueFlags = [Issue::Specificity, Issue::Casing, Issue::Ambiguity].into_iter().collect();
        assert_eq!(SuggestionKind::from_flags(&no_spelling), Some(SuggestionKind::Casing));
        let amb: IssueFlags = [Issue::Specificity, Issue::Ambiguity].into_iter().collect();
        assert_eq!(SuggestionKind::from_flags(&amb), Some(SuggestionKind::Ambiguity));
        assert_eq!(SuggestionKind::from_flags(&IssueFlags::default()), None);
    }

    #[test]
    fn config_validation() {
        assert!(EvalConfig::default().validate().is_ok());
        assert!(EvalConfig { completeness_threshold: 1.5, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn ad_hoc_ref_serializes_as_string() {
        assert_eq!(serde_json::to_string(&ProfileRef::AdHoc).unwrap(), "\"ad-hoc\"");
        let stored = ProfileRef::Stored { source: SourceTag::PartnerPlatform, id: "x".into() };
        assert_eq!(serde_json::to_string(&stored).unwrap(), r#"{"source":"partner_platform","id":"x"}"#);
    }
}
