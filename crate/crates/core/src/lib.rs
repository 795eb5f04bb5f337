//! Profile linting against a corpus of professional profiles.
//!
//! A corpus of profile documents is ingested into a [`corpus::CorpusSnapshot`]
//! holding per-field name frequencies, cohort section statistics and a
//! person-name index. The [`matcher`] recommends better-supported names for a
//! field value and flags issues with it; the [`evaluator`] combines those with
//! cohort completeness checks into a report for one profile. [`synth`] builds
//! seeded synthetic corpora with a ground-truth manifest.

pub mod corpus;
pub mod error;
pub mod evaluator;
pub mod matcher;
pub mod profile;
pub mod synth;

pub use corpus::{ingest, ingest_files, load_snapshot, save_snapshot, BuildConfig, CorpusSnapshot};
pub use error::{CorpusError, GenerateError, MatchError, ProfileError};
pub use evaluator::{evaluate, EvalConfig, EvaluationReport, Suggestion, SuggestionKind};
pub use matcher::{analyze, classify_issues, recommend, MatchParams, Recommendation};
pub use profile::{parse_profile, serialize_profile, FieldKind, Profile, SectionKind, SourceTag};
