//! The corpus snapshot: an immutable index built once from profile documents.
//!
//! Ingestion runs in three stages: documents are parsed (failures are counted,
//! never fatal unless nothing parses), field values are extracted into
//! per-field frequency indexes, and cohort and name statistics are gathered.
//! The resulting [`CorpusSnapshot`] is read-only and can be shared freely
//! between threads.
//!
//! Support counts instances, not people: a profile listing "Software Engineer"
//! for two jobs contributes 2. A profile evaluated against a snapshot that
//! already contains it is counted too, which shifts its own supports by one.

mod cohort;
mod frequency;
mod names;
mod persist;

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CorpusError;
use crate::profile::{parse_profile, FieldKind, Profile, SectionKind, SourceTag};

pub use cohort::{cohort_of, degree_level, CohortCriterion, CohortEntry, CohortKey, CohortStats};
pub use frequency::{trigrams, FrequencyIndex, FrequencyIndexBuilder, Gram, KeyEntry, TrigramPadding};
pub use names::{NameEntry, NameIndex};
pub use persist::{load_snapshot, save_snapshot, SNAPSHOT_MAGIC, SNAPSHOT_VERSION};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BuildConfig {
    /// Default similarity criterion for completeness checks.
    pub cohort_criterion: CohortCriterion,
    /// Cohorts smaller than this fall back to the global cohort.
    pub min_cohort_size: u64,
    pub trigram_padding: TrigramPadding,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            cohort_criterion: CohortCriterion::LastSchool,
            min_cohort_size: 50,
            trigram_padding: TrigramPadding::ShortKeys,
        }
    }
}

impl BuildConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.min_cohort_size < 1 {
            return Err("build.min_cohort_size must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestStats {
    pub parsed: u64,
    /// Records that failed to parse or repeated an already seen (source, id).
    pub failed: u64,
    /// Fully blank instances dropped while parsing.
    pub dropped_instances: u64,
}

/// One search hit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileMatch {
    pub source: SourceTag,
    pub id: String,
    pub display_name: String,
    pub headline: Option<String>,
    pub last_institution: Option<String>,
}

const HEADLINE_SNIPPET_CHARS: usize = 120;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSnapshot {
    pub(crate) profile_count: u64,
    pub(crate) ingest: IngestStats,
    pub(crate) fields: BTreeMap<FieldKind, FrequencyIndex>,
    pub(crate) cohorts: CohortStats,
    pub(crate) names: NameIndex,
    pub(crate) profiles: BTreeMap<(SourceTag, String), Profile>,
    pub(crate) build_config: BuildConfig,
    pub(crate) content_digest: String,
}

/// Builds a snapshot from a stream of profile documents. Blank lines are skipped.
pub fn ingest<I, S>(docs: I, cfg: &BuildConfig) -> Result<CorpusSnapshot, CorpusError>
where
    I: IntoIterator<Item = io::Result<S>>,
    S: AsRef<str>,
{
    let mut hasher = Sha256::new();
    hasher.update(b"profilelint-corpus\0");
    hasher.update(serde_json::to_vec(cfg).expect("config serializes"));

    // Stage 1: parse.
    let mut stats = IngestStats::default();
    let mut seen = HashSet::new();
    let mut profiles = Vec::new();
    for doc in docs {
        let doc = doc?;
        let doc = doc.as_ref();
        if doc.trim().is_empty() {
            continue;
        }
        hasher.update((doc.len() as u64).to_le_bytes());
        hasher.update(doc.as_bytes());
        match parse_profile(doc) {
            Ok(parsed) if seen.insert((parsed.profile.source, parsed.profile.id.clone())) => {
                stats.dropped_instances += parsed.dropped_instances as u64;
                profiles.push(parsed.profile);
            }
            _ => stats.failed += 1,
        }
    }
    stats.parsed = profiles.len() as u64;
    if profiles.is_empty() {
        return Err(CorpusError::EmptyCorpus { failed: stats.failed as usize });
    }

    // Stage 2: field extraction.
    let mut builders: BTreeMap<FieldKind, FrequencyIndexBuilder> =
        FieldKind::ALL.into_iter().map(|k| (k, FrequencyIndexBuilder::default())).collect();
    for profile in &profiles {
        for (kind, builder) in builders.iter_mut() {
            for (_, value) in profile.field_values(*kind) {
                builder.add(value);
            }
        }
    }
    let fields = builders.into_iter().map(|(k, b)| (k, b.build(cfg.trigram_padding))).collect();

    // Stage 3: statistics.
    let mut cohorts = CohortStats::default();
    let mut names = NameIndex::default();
    for profile in &profiles {
        cohorts.add(profile);
        names.add(profile);
    }

    Ok(CorpusSnapshot {
        profile_count: profiles.len() as u64,
        ingest: stats,
        fields,
        cohorts,
        names,
        profiles: profiles.into_iter().map(|p| ((p.source, p.id.clone()), p)).collect(),
        build_config: cfg.clone(),
        content_digest: hex::encode(hasher.finalize()),
    })
}

/// Builds a snapshot from newline-delimited corpus files, read in order.
pub fn ingest_files<P: AsRef<Path>>(paths: &[P], cfg: &BuildConfig) -> Result<CorpusSnapshot, CorpusError> {
    let mut readers = Vec::with_capacity(paths.len());
    for path in paths {
        readers.push(BufReader::new(File::open(path)?));
    }
    ingest(readers.into_iter().flat_map(BufRead::lines), cfg)
}

impl CorpusSnapshot {
    pub fn profile_count(&self) -> u64 {
        self.profile_count
    }

    pub fn ingest_stats(&self) -> &IngestStats {
        &self.ingest
    }

    pub fn build_config(&self) -> &BuildConfig {
        &self.build_config
    }

    /// Hex SHA-256 over the build configuration and every ingested document.
    pub fn content_digest(&self) -> &str {
        &self.content_digest
    }

    pub fn field_index(&self, field: FieldKind) -> &FrequencyIndex {
        // Ingestion creates an index for every field kind.
        &self.fields[&field]
    }

    pub fn cohorts(&self) -> &CohortStats {
        &self.cohorts
    }

    pub fn names(&self) -> &NameIndex {
        &self.names
    }

    pub fn support(&self, field: FieldKind, surface: &str) -> u64 {
        self.field_index(field).support(surface)
    }

    pub fn variants(&self, field: FieldKind, key: &str) -> Vec<(&str, u64)> {
        self.field_index(field).variants(key)
    }

    pub fn fuzzy_candidates(&self, field: FieldKind, key: &str, max_dist: u32) -> Vec<(&str, u32)> {
        self.field_index(field).fuzzy_candidates(key, max_dist)
    }

    pub fn cohort_rate(&self, cohort: &CohortKey, kind: SectionKind) -> (f64, u64) {
        self.cohorts.rate(cohort, kind)
    }

    pub fn profile(&self, source: SourceTag, id: &str) -> Option<&Profile> {
        self.profiles.get(&(source, id.to_owned()))
    }

    pub fn profiles(&self) -> impl Iterator<Item = &Profile> {
        self.profiles.values()
    }

    /// Name search: case-insensitive exact match on first and last name,
    /// optionally narrowed by last graduated institution.
    pub fn search_profiles(&self, first: &str, last: &str, institution: Option<&str>) -> Vec<ProfileMatch> {
        self.names
            .lookup(first, last, institution)
            .into_iter()
            .filter_map(|entry| self.profile(entry.source, &entry.id))
            .map(|p| ProfileMatch {
                source: p.source,
                id: p.id.clone(),
                display_name: p.basic.display_name(),
                headline: p.basic.headline.as_ref().map(|h| h.chars().take(HEADLINE_SNIPPET_CHARS).collect()),
                last_institution: p.last_education().map(|e| e.school_name.clone()).filter(|s| !s.trim().is_empty()),
            })
            .collect()
    }
}
