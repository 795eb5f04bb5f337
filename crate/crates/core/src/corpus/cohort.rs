//! Cohort section-presence statistics.
//!
//! Profiles are grouped by a similarity criterion (last school attended, or
//! level of the last degree). For every cohort the index keeps its size and,
//! per section kind, how many members have at least one instance.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matcher::normalize;
use crate::profile::{section_present, Profile, SectionKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CohortCriterion {
    #[default]
    LastSchool,
    DegreeLevel,
    Global,
}

impl fmt::Display for CohortCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CohortCriterion::LastSchool => "last_school",
            CohortCriterion::DegreeLevel => "degree_level",
            CohortCriterion::Global => "global",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CohortKey {
    pub criterion: CohortCriterion,
    pub value: String,
}

impl CohortKey {
    pub fn global() -> CohortKey {
        CohortKey { criterion: CohortCriterion::Global, value: String::new() }
    }

    pub fn new(criterion: CohortCriterion, value: impl Into<String>) -> CohortKey {
        CohortKey { criterion, value: value.into() }
    }
}

impl fmt::Display for CohortKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.criterion {
            CohortCriterion::Global => f.write_str("global"),
            c => write!(f, "{c}:{}", self.value),
        }
    }
}

const DOCTORATE: &[&str] = &["phd", "dphil", "doctor", "doctorate", "doctoral", "edd", "dba"];
const MASTER: &[&str] = &["master", "masters", "msc", "mba", "ma", "ms", "meng", "mphil", "llm", "mres", "mpa"];
const BACHELOR: &[&str] = &["bachelor", "bachelors", "bsc", "ba", "bs", "beng", "bba", "bcom", "llb", "bacc", "bcs"];

/// Degree level by keyword: `doctorate`, `master`, `bachelor` or `other`. The
/// highest level mentioned wins.
pub fn degree_level(degree_name: &str) -> &'static str {
    let key = normalize(degree_name);
    let has = |words: &[&str]| key.tokens().any(|t| words.contains(&t));
    if has(DOCTORATE) {
        "doctorate"
    } else if has(MASTER) {
        "master"
    } else if has(BACHELOR) {
        "bachelor"
    } else {
        "other"
    }
}

/// The cohort a profile belongs to under `criterion`, if it has one.
pub fn cohort_of(profile: &Profile, criterion: CohortCriterion) -> Option<CohortKey> {
    match criterion {
        CohortCriterion::Global => Some(CohortKey::global()),
        CohortCriterion::LastSchool => {
            let school = normalize(&profile.last_education()?.school_name);
            (!school.is_empty()).then(|| CohortKey::new(criterion, school.into_string()))
        }
        CohortCriterion::DegreeLevel => {
            let edu = profile.last_education()?;
            Some(CohortKey::new(criterion, degree_level(&edu.degree_name)))
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohortEntry {
    pub size: u64,
    pub presence: BTreeMap<SectionKind, u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohortStats {
    cohorts: BTreeMap<CohortKey, CohortEntry>,
}

impl CohortStats {
    pub fn add(&mut self, profile: &Profile) {
        for criterion in [CohortCriterion::LastSchool, CohortCriterion::DegreeLevel, CohortCriterion::Global] {
            let Some(key) = cohort_of(profile, criterion) else { continue };
            let entry = self.cohorts.entry(key).or_default();
            entry.size += 1;
            for kind in SectionKind::ALL {
                if section_present(profile, kind) {
                    *entry.presence.entry(kind).or_insert(0) += 1;
                }
            }
        }
    }

    pub fn get(&self, key: &CohortKey) -> Option<&CohortEntry> {
        self.cohorts.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CohortKey, &CohortEntry)> {
        self.cohorts.iter()
    }

    /// Presence rate of `kind` in the cohort and the cohort size; `(0, 0)` for
    /// an unknown cohort.
    pub fn rate(&self, key: &CohortKey, kind: SectionKind) -> (f64, u64) {
        match self.cohorts.get(key) {
            Some(e) if e.size > 0 => {
                let present = e.presence.get(&kind).copied().unwrap_or(0);
                (present as f64 / e.size as f64, e.size)
            }
            _ => (0.0, 0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{Award, BasicInfo, Education, SectionInstance, SourceTag};

    fn member(i: usize, school: &str, with_award: bool) -> Profile {
        let mut p = Profile::new(format!("p{i}"), SourceTag::PrimaryNetwork, BasicInfo::new("A", "B"));
        p.push(SectionInstance::Education(Education {
            school_name: school.into(),
            degree_name: "Master of Science (MSc)".into(),
            field_of_study: None,
            start_year: None,
            end_year: Some(2015),
        }));
        if with_award {
            p.push(SectionInstance::Award(Award { title: "Dean's List".into(), issuer: None, year: None }));
        }
        p
    }

    #[test]
    fn direct_ratio() {
        let mut stats = CohortStats::default();
        for i in 0..100 {
            stats.add(&member(i, "Uni A", i < 25));
        }
        let key = CohortKey::new(CohortCriterion::LastSchool, "uni a");
        assert_eq!(stats.rate(&key, SectionKind::Award), (0.25, 100));
        assert_eq!(stats.rate(&CohortKey::global(), SectionKind::Award), (0.25, 100));
        assert_eq!(
            stats.rate(&CohortKey::new(CohortCriterion::DegreeLevel, "master"), SectionKind::Education),
            (1.0, 100)
        );
        assert_eq!(stats.rate(&CohortKey::new(CohortCriterion::LastSchool, "nowhere"), SectionKind::Award), (0.0, 0));
    }

    #[test]
    fn degree_levels() {
        assert_eq!(degree_level("Master of Business Administration (MBA)"), "master");
        assert_eq!(degree_level("Bachelor of Science (B.Sc.)"), "bachelor");
        assert_eq!(degree_level("Bsc"), "bachelor");
        assert_eq!(degree_level("Doctor of Philosophy (PhD)"), "doctorate");
        assert_eq!(degree_level("GCE A Levels"), "other");
        assert_eq!(degree_level(""), "other");
    }
}
