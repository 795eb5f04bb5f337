//! Profile data model.
//!
//! A [`Profile`] is one person's structured resume: basic information plus a
//! set of typed sections, each holding zero or more instances. Values are
//! stored exactly as entered; normalization only happens inside the index.

mod document;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use document::{parse_profile, serialize_profile, ParsedProfile, SCHEMA_VERSION};

/// Which data source a profile was harvested from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceTag {
    PrimaryNetwork,
    PartnerPlatform,
}

impl SourceTag {
    pub const ALL: [SourceTag; 2] = [SourceTag::PrimaryNetwork, SourceTag::PartnerPlatform];

    pub fn as_str(self) -> &'static str {
        match self {
            SourceTag::PrimaryNetwork => "primary_network",
            SourceTag::PartnerPlatform => "partner_platform",
        }
    }
}

impl fmt::Display for SourceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SourceTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "primary_network" => Ok(SourceTag::PrimaryNetwork),
            "partner_platform" => Ok(SourceTag::PartnerPlatform),
            other => Err(format!("unknown source tag `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicInfo {
    pub first_name: String,
    pub last_name: String,
    pub headline: Option<String>,
    pub location: Option<String>,
}

impl BasicInfo {
    pub fn new(first_name: impl Into<String>, last_name: impl Into<String>) -> Self {
        BasicInfo { first_name: first_name.into(), last_name: last_name.into(), headline: None, location: None }
    }

    pub fn display_name(&self) -> String {
        format!("{} {}", self.first_name, self.last_name)
    }
}

/// Section kinds, in the order sections are reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    Education,
    Experience,
    Award,
    Skill,
    Certification,
    Summary,
    Other,
}

impl SectionKind {
    pub const ALL: [SectionKind; 7] = [
        SectionKind::Education,
        SectionKind::Experience,
        SectionKind::Award,
        SectionKind::Skill,
        SectionKind::Certification,
        SectionKind::Summary,
        SectionKind::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SectionKind::Education => "education",
            SectionKind::Experience => "experience",
            SectionKind::Award => "award",
            SectionKind::Skill => "skill",
            SectionKind::Certification => "certification",
            SectionKind::Summary => "summary",
            SectionKind::Other => "other",
        }
    }

    /// Maps a document section name onto a known kind. Unknown names yield `None`
    /// and are kept as [`SectionInstance::Other`] by the parser.
    pub fn from_document_name(name: &str) -> Option<SectionKind> {
        match name {
            "education" => Some(SectionKind::Education),
            "experience" => Some(SectionKind::Experience),
            "award" => Some(SectionKind::Award),
            "skill" => Some(SectionKind::Skill),
            "certification" => Some(SectionKind::Certification),
            "summary" => Some(SectionKind::Summary),
            _ => None,
        }
    }
}

impl fmt::Display for SectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SectionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        if lower == "other" {
            return Ok(SectionKind::Other);
        }
        SectionKind::from_document_name(&lower).ok_or_else(|| format!("unknown section kind `{s}`"))
    }
}

/// A year with optional month, the finest date granularity the model keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct YearMonth {
    pub year: i32,
    pub month: Option<u8>,
}

impl YearMonth {
    pub fn new(year: i32, month: Option<u8>) -> Self {
        YearMonth { year, month }
    }
}

impl fmt::Display for YearMonth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.month {
            Some(m) => write!(f, "{:04}-{:02}", self.year, m),
            None => write!(f, "{:04}", self.year),
        }
    }
}

impl FromStr for YearMonth {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (year, month) = match s.split_once('-') {
            Some((y, m)) => (y, Some(m)),
            None => (s, None),
        };
        let year: i32 = year.parse().map_err(|_| format!("invalid year in `{s}`"))?;
        let month = match month {
            Some(m) => {
                let m: u8 = m.parse().map_err(|_| format!("invalid month in `{s}`"))?;
                if !(1..=12).contains(&m) {
                    return Err(format!("month out of range in `{s}`"));
                }
                Some(m)
            }
            None => None,
        };
        Ok(YearMonth { year, month })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Education {
    pub school_name: String,
    pub degree_name: String,
    pub field_of_study: Option<String>,
    pub start_year: Option<i32>,
    pub end_year: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Experience {
    pub title: String,
    pub organization_name: String,
    pub start: Option<YearMonth>,
    pub end: Option<YearMonth>,
    pub description: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Award {
    pub title: String,
    pub issuer: Option<String>,
    pub year: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub title: String,
    pub issuer: Option<String>,
    pub year: Option<i32>,
}

/// One entry of a section.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectionInstance {
    Education(Education),
    Experience(Experience),
    Award(Award),
    Skill {
        name: String,
    },
    Certification(Certification),
    Summary {
        text: String,
    },
    /// A section the model does not know. `raw` is the instance's document
    /// text, kept byte-for-byte.
    Other {
        kind: String,
        raw: String,
    },
}

fn blank(s: &str) -> bool {
    s.trim().is_empty()
}

impl SectionInstance {
    pub fn kind(&self) -> SectionKind {
        match self {
            SectionInstance::Education(_) => SectionKind::Education,
            SectionInstance::Experience(_) => SectionKind::Experience,
            SectionInstance::Award(_) => SectionKind::Award,
            SectionInstance::Skill { .. } => SectionKind::Skill,
            SectionInstance::Certification(_) => SectionKind::Certification,
            SectionInstance::Summary { .. } => SectionKind::Summary,
            SectionInstance::Other { .. } => SectionKind::Other,
        }
    }

    /// True when every primary field is blank. Such instances never survive parsing.
    pub fn is_empty(&self) -> bool {
        match self {
            SectionInstance::Education(e) => blank(&e.school_name) && blank(&e.degree_name),
            SectionInstance::Experience(e) => blank(&e.title) && blank(&e.organization_name),
            SectionInstance::Award(a) => blank(&a.title),
            SectionInstance::Skill { name } => blank(name),
            SectionInstance::Certification(c) => blank(&c.title),
            SectionInstance::Summary { text } => blank(text),
            SectionInstance::Other { .. } => false,
        }
    }

    /// The value this instance holds for `field`, if the field belongs to this
    /// instance's kind and is non-blank.
    pub fn field(&self, field: FieldKind) -> Option<&str> {
        let value = match (self, field) {
            (SectionInstance::Education(e), FieldKind::DegreeName) => e.degree_name.as_str(),
            (SectionInstance::Education(e), FieldKind::FieldOfStudy) => e.field_of_study.as_deref()?,
            (SectionInstance::Education(e), FieldKind::SchoolName) => e.school_name.as_str(),
            (SectionInstance::Experience(e), FieldKind::JobTitle) => e.title.as_str(),
            (SectionInstance::Experience(e), FieldKind::OrganizationName) => e.organization_name.as_str(),
            (SectionInstance::Award(a), FieldKind::AwardTitle) => a.title.as_str(),
            _ => return None,
        };
        (!blank(value)).then_some(value)
    }

    /// Replaces the value of `field`. Returns false when the field does not
    /// belong to this instance's kind.
    pub fn set_field(&mut self, field: FieldKind, value: String) -> bool {
        match (self, field) {
            (SectionInstance::Education(e), FieldKind::DegreeName) => e.degree_name = value,
            (SectionInstance::Education(e), FieldKind::FieldOfStudy) => e.field_of_study = Some(value),
            (SectionInstance::Education(e), FieldKind::SchoolName) => e.school_name = value,
            (SectionInstance::Experience(e), FieldKind::JobTitle) => e.title = value,
            (SectionInstance::Experience(e), FieldKind::OrganizationName) => e.organization_name = value,
            (SectionInstance::Award(a), FieldKind::AwardTitle) => a.title = value,
            _ => return false,
        }
        true
    }
}

/// The recommendable fields. Each maps to exactly one (section, field) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    DegreeName,
    FieldOfStudy,
    JobTitle,
    SchoolName,
    OrganizationName,
    AwardTitle,
}

impl FieldKind {
    pub const ALL: [FieldKind; 6] = [
        FieldKind::DegreeName,
        FieldKind::FieldOfStudy,
        FieldKind::JobTitle,
        FieldKind::SchoolName,
        FieldKind::OrganizationName,
        FieldKind::AwardTitle,
    ];

    pub fn section(self) -> SectionKind {
        match self {
            FieldKind::DegreeName | FieldKind::FieldOfStudy | FieldKind::SchoolName => SectionKind::Education,
            FieldKind::JobTitle | FieldKind::OrganizationName => SectionKind::Experience,
            FieldKind::AwardTitle => SectionKind::Award,
        }
    }

    /// Name of the field inside the profile document.
    pub fn document_field(self) -> &'static str {
        match self {
            FieldKind::DegreeName => "degree_name",
            FieldKind::FieldOfStudy => "field_of_study",
            FieldKind::JobTitle => "title",
            FieldKind::SchoolName => "school_name",
            FieldKind::OrganizationName => "organization_name",
            FieldKind::AwardTitle => "title",
        }
    }

    /// Fields for a section kind, in reporting order.
    pub fn for_section(kind: SectionKind) -> &'static [FieldKind] {
        match kind {
            SectionKind::Education => &[FieldKind::SchoolName, FieldKind::DegreeName, FieldKind::FieldOfStudy],
            SectionKind::Experience => &[FieldKind::JobTitle, FieldKind::OrganizationName],
            SectionKind::Award => &[FieldKind::AwardTitle],
            _ => &[],
        }
    }

    /// Fields whose values name an institution or company rather than describe
    /// something. Only these can be ambiguous between distinct entities.
    pub fn names_entity(self) -> bool {
        matches!(self, FieldKind::SchoolName | FieldKind::OrganizationName)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FieldKind::DegreeName => "DegreeName",
            FieldKind::FieldOfStudy => "FieldOfStudy",
            FieldKind::JobTitle => "JobTitle",
            FieldKind::SchoolName => "SchoolName",
            FieldKind::OrganizationName => "OrganizationName",
            FieldKind::AwardTitle => "AwardTitle",
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FieldKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FieldKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s) || k.document_field_alias() == s)
            .ok_or_else(|| format!("unknown field kind `{s}`"))
    }
}

impl FieldKind {
    fn document_field_alias(self) -> &'static str {
        match self {
            FieldKind::DegreeName => "degree_name",
            FieldKind::FieldOfStudy => "field_of_study",
            FieldKind::JobTitle => "job_title",
            FieldKind::SchoolName => "school_name",
            FieldKind::OrganizationName => "organization_name",
            FieldKind::AwardTitle => "award_title",
        }
    }
}

/// One person's structured resume.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub id: String,
    pub source: SourceTag,
    pub basic: BasicInfo,
    pub sections: BTreeMap<SectionKind, Vec<SectionInstance>>,
}

impl Profile {
    pub fn new(id: impl Into<String>, source: SourceTag, basic: BasicInfo) -> Self {
        Profile { id: id.into(), source, basic, sections: BTreeMap::new() }
    }

    /// Appends an instance to its section. Empty instances are ignored.
    pub fn push(&mut self, instance: SectionInstance) {
        if instance.is_empty() {
            return;
        }
        self.sections.entry(instance.kind()).or_default().push(instance);
    }

    pub fn with(mut self, instance: SectionInstance) -> Self {
        self.push(instance);
        self.canonicalize();
        self
    }

    pub fn instances(&self, kind: SectionKind) -> &[SectionInstance] {
        self.sections.get(&kind).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Restores the ordering invariants: education sorted by end year,
    /// most recent first (stable, undated instances last), no empty lists.
    pub fn canonicalize(&mut self) {
        if let Some(edu) = self.sections.get_mut(&SectionKind::Education) {
            edu.sort_by_key(|inst| match inst {
                SectionInstance::Education(e) => std::cmp::Reverse(e.end_year.map(i64::from).unwrap_or(i64::MIN)),
                _ => std::cmp::Reverse(i64::MIN),
            });
        }
        self.sections.retain(|_, v| !v.is_empty());
    }

    /// The education instance of the most recent graduation: greatest end year,
    /// first listed on ties, first listed when no year is present.
    pub fn last_education(&self) -> Option<&Education> {
        let mut best: Option<&Education> = None;
        for inst in self.instances(SectionKind::Education) {
            if let SectionInstance::Education(e) = inst {
                best = match best {
                    None => Some(e),
                    Some(b) if e.end_year.is_some() && (b.end_year.is_none() || e.end_year > b.end_year) => Some(e),
                    keep => keep,
                };
            }
        }
        best
    }

    /// Non-blank values of `field` across the profile, with their instance index.
    pub fn field_values(&self, field: FieldKind) -> impl Iterator<Item = (usize, &str)> {
        self.instances(field.section())
            .iter()
            .enumerate()
            .filter_map(move |(i, inst)| inst.field(field).map(|v| (i, v)))
    }
}

/// True iff the profile has at least one (non-empty) instance of `kind`.
pub fn section_present(profile: &Profile, kind: SectionKind) -> bool {
    !profile.instances(kind).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn award(title: &str) -> SectionInstance {
        SectionInstance::Award(Award { title: title.into(), issuer: None, year: None })
    }

    #[test]
    fn section_presence() {
        let base = Profile::new("p1", SourceTag::PrimaryNetwork, BasicInfo::new("Ada", "Ng"));
        assert!(!section_present(&base, SectionKind::Award));
        let with_award = base.clone().with(award("Dean's List"));
        assert!(section_present(&with_award, SectionKind::Award));
        let blank_award = base.with(award("   "));
        assert!(!section_present(&blank_award, SectionKind::Award));
    }

    #[test]
    fn last_education_prefers_latest_then_first() {
        let edu = |school: &str, end: Option<i32>| {
            SectionInstance::Education(Education {
                school_name: school.into(),
                degree_name: "Diploma".into(),
                field_of_study: None,
                start_year: None,
                end_year: end,
            })
        };
        let mut p = Profile::new("p", SourceTag::PrimaryNetwork, BasicInfo::new("A", "B"));
        p.push(edu("Old", Some(2001)));
        p.push(edu("TieA", Some(2010)));
        p.push(edu("TieB", Some(2010)));
        p.push(edu("Undated", None));
        assert_eq!(p.last_education().unwrap().school_name, "TieA");
        p.canonicalize();
        let order: Vec<_> = p
            .instances(SectionKind::Education)
            .iter()
            .map(|i| match i {
                SectionInstance::Education(e) => e.school_name.as_str(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(order, ["TieA", "TieB", "Old", "Undated"]);
    }

    #[test]
    fn year_month_parsing() {
        assert_eq!("2019-03".parse::<YearMonth>().unwrap(), YearMonth::new(2019, Some(3)));
        assert_eq!("2019".parse::<YearMonth>().unwrap(), YearMonth::new(2019, None));
        assert!("2019-13".parse::<YearMonth>().is_err());
        assert_eq!(YearMonth::new(2019, Some(3)).to_string(), "2019-03");
    }

    #[test]
    fn field_kind_names() {
        for k in FieldKind::ALL {
            assert_eq!(k.as_str().parse::<FieldKind>().unwrap(), k);
            assert!(FieldKind::for_section(k.section()).contains(&k));
        }
        assert_eq!("job_title".parse::<FieldKind>().unwrap(), FieldKind::JobTitle);
    }
}
