//! The profile document format: one JSON object per profile, one profile per
//! line in corpus files.
//!
//! ```json
//! {"schema_version":1,"id":"pn-000001","source":"primary_network",
//!  "basic":{"first_name":"Ada","last_name":"Ng","headline":"Engineer"},
//!  "sections":[{"kind":"education","instances":[{"school_name":"...","degree_name":"..."}]}]}
//! ```
//!
//! Section kinds the model does not know are kept as [`SectionInstance::Other`]
//! with the instance text preserved byte-for-byte.

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use super::{
    Award, BasicInfo, Certification, Education, Experience, Profile, SectionInstance, SectionKind, SourceTag, YearMonth,
};
use crate::error::ProfileError;

pub const SCHEMA_VERSION: u32 = 1;

/// A parsed profile plus the number of fully-blank instances that were dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedProfile {
    pub profile: Profile,
    pub dropped_instances: usize,
}

#[derive(Deserialize)]
struct RawDoc<'a> {
    schema_version: Option<u32>,
    id: Option<String>,
    source: Option<String>,
    basic: Option<RawBasic>,
    #[serde(borrow, default)]
    sections: Vec<RawSection<'a>>,
}

#[derive(Deserialize)]
struct RawBasic {
    first_name: Option<String>,
    last_name: Option<String>,
    headline: Option<String>,
    location: Option<String>,
}

#[derive(Deserialize)]
struct RawSection<'a> {
    kind: String,
    #[serde(borrow, default)]
    instances: Vec<&'a RawValue>,
}

#[derive(Serialize, Deserialize)]
struct EducationDoc {
    #[serde(default)]
    school_name: String,
    #[serde(default)]
    degree_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field_of_study: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start_year: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    end_year: Option<i32>,
}

#[derive(Serialize, Deserialize)]
struct ExperienceDoc {
    #[serde(default)]
    title: String,
    #[serde(default)]
    organization_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    end: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct TitledDoc {
    #[serde(default)]
    title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    issuer: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    year: Option<i32>,
}

#[derive(Serialize, Deserialize)]
struct SkillDoc {
    #[serde(default)]
    name: String,
}

#[derive(Serialize, Deserialize)]
struct SummaryDoc {
    #[serde(default)]
    text: String,
}

#[derive(Serialize)]
struct OutDoc<'a> {
    schema_version: u32,
    id: &'a str,
    source: SourceTag,
    basic: OutBasic<'a>,
    sections: Vec<OutSection>,
}

#[derive(Serialize)]
struct OutBasic<'a> {
    first_name: &'a str,
    last_name: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    headline: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    location: Option<&'a str>,
}

#[derive(Serialize)]
struct OutSection {
    kind: String,
    instances: Vec<Box<RawValue>>,
}

fn json_error(err: serde_json::Error) -> ProfileError {
    use serde_json::error::Category;
    match err.classify() {
        Category::Data => ProfileError::SchemaViolation(err.to_string()),
        Category::Syntax | Category::Eof | Category::Io => ProfileError::MalformedDocument(err.to_string()),
    }
}

fn required(value: Option<String>, what: &str) -> Result<String, ProfileError> {
    match value {
        Some(v) if !v.trim().is_empty() => Ok(v),
        _ => Err(ProfileError::SchemaViolation(format!("missing or blank `{what}`"))),
    }
}

fn parse_instance<T: for<'de> Deserialize<'de>>(raw: &RawValue, kind: &str) -> Result<T, ProfileError> {
    serde_json::from_str(raw.get()).map_err(|e| ProfileError::SchemaViolation(format!("{kind} instance: {e}")))
}

fn parse_year_month(value: Option<String>, kind: &str) -> Result<Option<YearMonth>, ProfileError> {
    value
        .filter(|v| !v.trim().is_empty())
        .map(|v| v.parse::<YearMonth>().map_err(|e| ProfileError::SchemaViolation(format!("{kind} instance: {e}"))))
        .transpose()
}

fn parse_known(kind: SectionKind, raw: &RawValue) -> Result<SectionInstance, ProfileError> {
    let name = kind.as_str();
    Ok(match kind {
        SectionKind::Education => {
            let d: EducationDoc = parse_instance(raw, name)?;
            SectionInstance::Education(Education {
                school_name: d.school_name,
                degree_name: d.degree_name,
                field_of_study: d.field_of_study,
                start_year: d.start_year,
                end_year: d.end_year,
            })
        }
        SectionKind::Experience => {
            let d: ExperienceDoc = parse_instance(raw, name)?;
            SectionInstance::Experience(Experience {
                title: d.title,
                organization_name: d.organization_name,
                start: parse_year_month(d.start, name)?,
                end: parse_year_month(d.end, name)?,
                description: d.description,
            })
        }
        SectionKind::Award => {
            let d: TitledDoc = parse_instance(raw, name)?;
            SectionInstance::Award(Award { title: d.title, issuer: d.issuer, year: d.year })
        }
        SectionKind::Certification => {
            let d: TitledDoc = parse_instance(raw, name)?;
            SectionInstance::Certification(Certification { title: d.title, issuer: d.issuer, year: d.year })
        }
        SectionKind::Skill => {
            let d: SkillDoc = parse_instance(raw, name)?;
            SectionInstance::Skill { name: d.name }
        }
        SectionKind::Summary => {
            let d: SummaryDoc = parse_instance(raw, name)?;
            SectionInstance::Summary { text: d.text }
        }
        SectionKind::Other => unreachable!("`other` is never a known document kind"),
    })
}

/// Parses one profile document.
pub fn parse_profile(doc: &str) -> Result<ParsedProfile, ProfileError> {
    let raw: RawDoc<'_> = serde_json::from_str(doc).map_err(json_error)?;
    let version = raw.schema_version.unwrap_or(SCHEMA_VERSION);
    if version != SCHEMA_VERSION {
        return Err(ProfileError::SchemaViolation(format!(
            "unsupported schema_version {version} (expected {SCHEMA_VERSION})"
        )));
    }
    let id = required(raw.id, "id")?;
    let source: SourceTag = required(raw.source, "source")?.parse().map_err(ProfileError::SchemaViolation)?;
    let basic = raw.basic.ok_or_else(|| ProfileError::SchemaViolation("missing `basic`".into()))?;
    let basic = BasicInfo {
        first_name: required(basic.first_name, "basic.first_name")?,
        last_name: required(basic.last_name, "basic.last_name")?,
        headline: basic.headline,
        location: basic.location,
    };

    let mut profile = Profile::new(id, source, basic);
    let mut dropped = 0;
    for section in raw.sections {
        for raw_inst in section.instances {
            let inst = match SectionKind::from_document_name(&section.kind) {
                Some(kind) => parse_known(kind, raw_inst)?,
                None => SectionInstance::Other { kind: section.kind.clone(), raw: raw_inst.get().to_owned() },
            };
            if inst.is_empty() {
                dropped += 1;
            } else {
                profile.push(inst);
            }
        }
    }
    profile.canonicalize();
    Ok(ParsedProfile { profile, dropped_instances: dropped })
}

fn to_raw<T: Serialize>(value: &T) -> Box<RawValue> {
    // Plain structs of strings and integers always serialize.
    serde_json::value::to_raw_value(value).expect("instance serialization")
}

fn instance_to_raw(inst: &SectionInstance) -> Box<RawValue> {
    match inst {
        SectionInstance::Education(e) => to_raw(&EducationDoc {
            school_name: e.school_name.clone(),
            degree_name: e.degree_name.clone(),
            field_of_study: e.field_of_study.clone(),
            start_year: e.start_year,
            end_year: e.end_year,
        }),
        SectionInstance::Experience(e) => to_raw(&ExperienceDoc {
            title: e.title.clone(),
            organization_name: e.organization_name.clone(),
            start: e.start.map(|d| d.to_string()),
            end: e.end.map(|d| d.to_string()),
            description: e.description.clone(),
        }),
        SectionInstance::Award(a) => {
            to_raw(&TitledDoc { title: a.title.clone(), issuer: a.issuer.clone(), year: a.year })
        }
        SectionInstance::Certification(c) => {
            to_raw(&TitledDoc { title: c.title.clone(), issuer: c.issuer.clone(), year: c.year })
        }
        SectionInstance::Skill { name } => to_raw(&SkillDoc { name: name.clone() }),
        SectionInstance::Summary { text } => to_raw(&SummaryDoc { text: text.clone() }),
        // A raw payload that is not valid JSON can only come from hand-built
        // profiles; it is kept as a string so the document stays well-formed.
        SectionInstance::Other { raw, .. } => RawValue::from_string(raw.clone()).unwrap_or_else(|_| to_raw(raw)),
    }
}

/// Serializes a profile to its single-line document form.
pub fn serialize_profile(profile: &Profile) -> String {
    let mut sections = Vec::new();
    for (kind, instances) in &profile.sections {
        if *kind == SectionKind::Other {
            for inst in instances {
                let SectionInstance::Other { kind: name, .. } = inst else { continue };
                match sections.last_mut() {
                    Some(OutSection { kind: last, instances }) if last == name => instances.push(instance_to_raw(inst)),
                    _ => sections.push(OutSection { kind: name.clone(), instances: vec![instance_to_raw(inst)] }),
                }
            }
        } else {
            sections.push(OutSection {
                kind: kind.as_str().to_owned(),
                instances: instances.iter().map(instance_to_raw).collect(),
            });
        }
    }
    let doc = OutDoc {
        schema_version: SCHEMA_VERSION,
        id: &profile.id,
        source: profile.source,
        basic: OutBasic {
            first_name: &profile.basic.first_name,
            last_name: &profile.basic.last_name,
            headline: profile.basic.headline.as_deref(),
            location: profile.basic.location.as_deref(),
        },
        sections,
    };
    serde_json::to_string(&doc).expect("profile serialization")
}
