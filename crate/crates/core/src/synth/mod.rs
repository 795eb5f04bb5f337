//! Seeded synthetic corpora.
//!
//! A [`GeneratorSpec`] fixes everything the tests later rely on: exact
//! supports for planted surface forms, cohort sizes with exact per-section
//! presence counts, name collisions and verbatim fixture profiles. Everything
//! else is background drawn from small pools, optionally perturbed by noise.
//! [`generate`] returns the corpus files together with a [`GroundTruth`]
//! manifest tallied while the values were emitted.

mod pools;
mod scenario;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io;
use std::path::Path;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::GenerateError;
use crate::matcher::normalize;
use crate::profile::{
    parse_profile, section_present, serialize_profile, Award, BasicInfo, Certification, Education, Experience,
    FieldKind, Profile, SectionInstance, SectionKind, SourceTag, YearMonth,
};

pub use scenario::{paper_scenario_spec, walkthrough_profile, WALKTHROUGH_ID};

/// Sections whose presence the generator controls. Education is always present.
const OPTIONAL_SECTIONS: [SectionKind; 5] =
    [SectionKind::Experience, SectionKind::Award, SectionKind::Skill, SectionKind::Certification, SectionKind::Summary];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub profile_count: usize,
    pub seed: u64,
    /// Share of generated profiles tagged as coming from the partner platform.
    #[serde(default)]
    pub partner_share: f64,
    #[serde(default)]
    pub pools: BTreeMap<FieldKind, FieldPool>,
    #[serde(default)]
    pub noise: NoiseRates,
    pub cohorts: CohortLayout,
    #[serde(default)]
    pub layout: SlotLayout,
    #[serde(default)]
    pub collisions: Vec<NameCollision>,
    #[serde(default)]
    pub fixtures: Vec<Fixture>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldPool {
    #[serde(default)]
    pub planted: Vec<Planted>,
    #[serde(default)]
    pub background: Vec<String>,
    /// Chance that a slot not taken by a planted value gets a background value
    /// rather than staying blank.
    #[serde(default = "one")]
    pub fill_rate: f64,
}

fn one() -> f64 {
    1.0
}

/// A surface form with an exact corpus-wide support, fixtures included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Planted {
    pub surface: String,
    pub support: u64,
    /// Set for deliberate noise: the form this one is a corruption of.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_of: Option<String>,
}

impl Planted {
    pub fn new(surface: &str, support: u64) -> Planted {
        Planted { surface: surface.to_owned(), support, noise_of: None }
    }

    pub fn noise(surface: &str, support: u64, canonical: &str) -> Planted {
        Planted { surface: surface.to_owned(), support, noise_of: Some(canonical.to_owned()) }
    }
}

/// Per-draw probabilities of corrupting a background value. At most one
/// kind of noise applies to a draw.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseRates {
    pub misspelling: f64,
    pub lowercase: f64,
    pub abbreviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKind {
    Misspelling,
    Lowercase,
    Abbreviation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohortLayout {
    /// Schools with a fixed number of profiles graduating last from them.
    pub schools: Vec<CohortSchool>,
    /// Last schools for every remaining profile, drawn uniformly.
    pub background_schools: Vec<String>,
    /// Section presence probabilities outside the planted cohorts.
    #[serde(default)]
    pub default_presence: BTreeMap<SectionKind, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohortSchool {
    pub name: String,
    pub size: u64,
    /// Exact presence rates: round(rate * size) members carry the section.
    /// Kinds not listed fall back to the layout default.
    #[serde(default)]
    pub presence: BTreeMap<SectionKind, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SlotLayout {
    pub max_earlier_education: usize,
    pub max_experience: usize,
    pub max_awards: usize,
    pub max_skills: usize,
    pub max_certifications: usize,
}

impl Default for SlotLayout {
    fn default() -> Self {
        SlotLayout { max_earlier_education: 2, max_experience: 3, max_awards: 2, max_skills: 5, max_certifications: 2 }
    }
}

/// Several people sharing one name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NameCollision {
    pub first: String,
    pub last: String,
    pub members: Vec<CollisionMember>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollisionMember {
    pub source: SourceTag,
    /// Last graduated school.
    pub school: String,
}

/// A profile emitted verbatim. Serialized as a profile document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture(pub Profile);

impl Serialize for Fixture {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(serialize_profile(&self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Fixture {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Box::<RawValue>::deserialize(deserializer)?;
        parse_profile(raw.get()).map(|p| Fixture(p.profile)).map_err(serde::de::Error::custom)
    }
}

impl GeneratorSpec {
    pub fn from_json(text: &str) -> Result<GeneratorSpec, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec serializes");
        s.push('\n');
        s
    }

    fn validate(&self) -> Result<(), GenerateError> {
        let bad = |msg: String| Err(GenerateError::InfeasibleSpec(msg));
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        if !unit(self.partner_share) {
            return bad("partner_share must lie in [0, 1]".into());
        }
        let n = self.noise;
        if ![n.misspelling, n.lowercase, n.abbreviation].into_iter().all(unit) {
            return bad("noise rates must lie in [0, 1]".into());
        }
        if n.misspelling + n.lowercase + n.abbreviation > 1.0 {
            return bad("noise rates must sum to at most 1".into());
        }
        for (field, pool) in &self.pools {
            if !unit(pool.fill_rate) {
                return bad(format!("{field}: fill_rate must lie in [0, 1]"));
            }
            if *field == FieldKind::AwardTitle && pool.fill_rate < 1.0 {
                return bad("award titles cannot be left blank".into());
            }
            if pool.planted.iter().any(|p| p.surface.trim().is_empty()) {
                return bad(format!("{field}: planted surface forms must be non-blank"));
            }
            if pool.background.iter().any(|b| b.trim().is_empty()) {
                return bad(format!("{field}: background values must be non-blank"));
            }
        }
        let presence = self.cohorts.schools.iter().flat_map(|s| s.presence.values());
        if !presence.chain(self.cohorts.default_presence.values()).copied().all(unit) {
            return bad("presence rates must lie in [0, 1]".into());
        }
        if self.cohorts.schools.iter().any(|s| s.name.trim().is_empty())
            || self.cohorts.background_schools.iter().any(|s| s.trim().is_empty())
        {
            return bad("school names must be non-blank".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohortTruth {
    pub size: u64,
    pub presence: BTreeMap<SectionKind, u64>,
}

impl CohortTruth {
    fn add(&mut self, present: impl Fn(SectionKind) -> bool) {
        self.size += 1;
        for kind in SectionKind::ALL {
            if present(kind) {
                *self.presence.entry(kind).or_insert(0) += 1;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoiseRecord {
    pub field: FieldKind,
    pub surface: String,
    pub canonical: String,
    pub kind: NoiseKind,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionTruth {
    pub first: String,
    pub last: String,
    /// (source, id, last school) of every bearer of the name.
    pub members: Vec<(SourceTag, String, String)>,
}

/// What the generator emitted, tallied as it went.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub seed: u64,
    pub profile_count: u64,
    pub files: Vec<String>,
    /// Exact support of every surface form, per field.
    pub supports: BTreeMap<FieldKind, BTreeMap<String, u64>>,
    /// Cohorts by last school, keyed by the school as written.
    pub cohorts: BTreeMap<String, CohortTruth>,
    pub global: CohortTruth,
    pub planted: BTreeMap<FieldKind, Vec<Planted>>,
    pub noise: Vec<NoiseRecord>,
    pub collisions: Vec<CollisionTruth>,
    pub fixtures: Vec<(SourceTag, String)>,
}

impl GroundTruth {
    pub fn support(&self, field: FieldKind, surface: &str) -> u64 {
        self.supports.get(&field).and_then(|m| m.get(surface)).copied().unwrap_or(0)
    }

    pub fn from_json(text: &str) -> Result<GroundTruth, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// A corpus file: name and newline-delimited profile documents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFile {
    pub name: String,
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedCorpus {
    pub files: Vec<CorpusFile>,
    pub ground_truth: GroundTruth,
}

pub const GROUND_TRUTH_FILE: &str = "ground_truth.json";

impl GeneratedCorpus {
    /// Writes every corpus file plus `ground_truth.json` into `dir`.
    pub fn write_to(&self, dir: impl AsRef<Path>) -> io::Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        for f in &self.files {
            fs::write(dir.join(&f.name), &f.contents)?;
        }
        fs::write(dir.join(GROUND_TRUTH_FILE), self.ground_truth.to_json())
    }

    pub fn documents(&self) -> impl Iterator<Item = &str> {
        self.files.iter().flat_map(|f| f.contents.lines())
    }
}

pub fn corpus_file_name(source: SourceTag) -> String {
    format!("{}.jsonl", source.as_str())
}

struct Skeleton {
    source: SourceTag,
    name: Option<(String, String)>,
    school: String,
    present: BTreeSet<SectionKind>,
    earlier: usize,
    experience: usize,
    awards: usize,
    skills: usize,
    certifications: usize,
}

impl Skeleton {
    fn slots(&self, field: FieldKind) -> usize {
        match field {
            FieldKind::DegreeName | FieldKind::FieldOfStudy => 1 + self.earlier,
            FieldKind::SchoolName => self.earlier,
            FieldKind::JobTitle | FieldKind::OrganizationName => self.experience,
            FieldKind::AwardTitle => self.awards,
        }
    }
}

#[derive(Default)]
struct Tally {
    supports: BTreeMap<FieldKind, BTreeMap<String, u64>>,
    noise: BTreeMap<(FieldKind, String, String, NoiseKind), u64>,
}

impl Tally {
    fn count(&mut self, field: FieldKind, surface: &str) {
        if !surface.trim().is_empty() {
            *self.supports.entry(field).or_default().entry(surface.to_owned()).or_insert(0) += 1;
        }
    }
}

fn fixture_count(fixtures: &[Profile], field: FieldKind, surface: &str) -> u64 {
    fixtures.iter().flat_map(|p| p.field_values(field)).filter(|(_, v)| *v == surface).count() as u64
}

fn misspell(rng: &mut ChaCha8Rng, value: &str) -> Option<String> {
    let words: Vec<&str> = value.split(' ').collect();
    let long: Vec<usize> = (0..words.len()).filter(|&i| words[i].chars().count() >= 4).collect();
    let &w = long.choose(rng)?;
    let chars: Vec<char> = words[w].chars().collect();
    let drop = rng.random_range(1..chars.len() - 1);
    let word: String = chars.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, c)| c).collect();
    let mut out: Vec<String> = words.iter().map(|s| s.to_string()).collect();
    out[w] = word;
    Some(out.join(" "))
}

fn abbreviate(value: &str) -> Option<String> {
    let words: Vec<&str> = value.split(' ').collect();
    let (i, longest) = words.iter().enumerate().max_by_key(|(i, w)| (w.chars().count(), std::cmp::Reverse(*i)))?;
    if longest.chars().count() <= 4 {
        return None;
    }
    let mut out: Vec<String> = words.iter().map(|s| s.to_string()).collect();
    out[i] = longest.chars().take(4).collect();
    Some(out.join(" "))
}

fn apply_noise(rng: &mut ChaCha8Rng, rates: NoiseRates, value: &str) -> Option<(String, NoiseKind)> {
    let roll: f64 = rng.random();
    let (noisy, kind) = if roll < rates.misspelling {
        (misspell(rng, value), NoiseKind::Misspelling)
    } else if roll < rates.misspelling + rates.lowercase {
        (Some(value.to_lowercase()), NoiseKind::Lowercase)
    } else if roll < rates.misspelling + rates.lowercase + rates.abbreviation {
        (abbreviate(value), NoiseKind::Abbreviation)
    } else {
        (None, NoiseKind::Misspelling)
    };
    noisy.filter(|n| n != value && !n.trim().is_empty()).map(|n| (n, kind))
}

fn infeasible<T>(msg: String) -> Result<T, GenerateError> {
    Err(GenerateError::InfeasibleSpec(msg))
}

/// Generates the corpus described by `spec`. The same spec always yields the
/// same bytes.
pub fn generate(spec: &GeneratorSpec) -> Result<GeneratedCorpus, GenerateError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let fixtures: Vec<Profile> = spec.fixtures.iter().map(|f| f.0.clone()).collect();

    let mut seen = BTreeSet::new();
    for f in &fixtures {
        if !seen.insert((f.source, f.id.clone())) {
            return infeasible(format!("fixture {}/{} appears twice", f.source, f.id));
        }
    }
    let collision_count: usize = spec.collisions.iter().map(|c| c.members.len()).sum();
    let Some(generated) = spec.profile_count.checked_sub(fixtures.len()) else {
        return infeasible(format!("{} fixtures exceed profile_count {}", fixtures.len(), spec.profile_count));
    };
    if generated < collision_count {
        return infeasible(format!("{collision_count} collision members exceed {generated} generated profiles"));
    }

    // Last schools: collision members first, then planted cohorts, then background.
    let fixture_school = |p: &Profile| p.last_education().map(|e| e.school_name.clone());
    let mut skeletons: Vec<Skeleton> = Vec::with_capacity(generated);
    for c in &spec.collisions {
        for m in &c.members {
            skeletons.push(Skeleton {
                source: m.source,
                name: Some((c.first.clone(), c.last.clone())),
                school: m.school.clone(),
                present: BTreeSet::new(),
                earlier: 0,
                experience: 0,
                awards: 0,
                skills: 0,
                certifications: 0,
            });
        }
    }
    let mut schools = Vec::with_capacity(generated - collision_count);
    for school in &spec.cohorts.schools {
        let taken = fixtures.iter().filter(|p| fixture_school(p).as_deref() == Some(&school.name)).count()
            + skeletons.iter().filter(|s| s.school == school.name).count();
        let Some(need) = (school.size as usize).checked_sub(taken) else {
            return infeasible(format!("cohort {} is smaller than its fixtures and collisions", school.name));
        };
        schools.extend(std::iter::repeat_n(school.name.clone(), need));
    }
    let free = generated - collision_count;
    if schools.len() > free {
        return infeasible(format!("cohorts need {} profiles, only {free} are free", schools.len()));
    }
    if schools.len() < free && spec.cohorts.background_schools.is_empty() {
        return infeasible("profiles left over but no background schools".into());
    }
    while schools.len() < free {
        schools.push(spec.cohorts.background_schools.choose(&mut rng).expect("non-empty").clone());
    }
    schools.shuffle(&mut rng);
    for school in schools {
        let source =
            if rng.random_bool(spec.partner_share) { SourceTag::PartnerPlatform } else { SourceTag::PrimaryNetwork };
        skeletons.push(Skeleton {
            source,
            name: None,
            school,
            present: BTreeSet::new(),
            earlier: 0,
            experience: 0,
            awards: 0,
            skills: 0,
            certifications: 0,
        });
    }

    // Section presence: exact counts inside planted cohorts, Bernoulli elsewhere.
    let cohort_of: BTreeMap<&str, &CohortSchool> = spec.cohorts.schools.iter().map(|s| (s.name.as_str(), s)).collect();
    for school in &spec.cohorts.schools {
        let members: Vec<usize> = (0..skeletons.len()).filter(|&i| skeletons[i].school == school.name).collect();
        let cohort_fixtures: Vec<&Profile> =
            fixtures.iter().filter(|p| fixture_school(p).as_deref() == Some(&school.name)).collect();
        for kind in OPTIONAL_SECTIONS {
            let rate = school.presence.get(&kind).or(spec.cohorts.default_presence.get(&kind)).copied().unwrap_or(0.0);
            let target = (rate * school.size as f64).round() as usize;
            let have = cohort_fixtures.iter().filter(|p| section_present(p, kind)).count();
            let lacking = cohort_fixtures.len() - have;
            if target < have || school.size as usize - target < lacking {
                return infeasible(format!("cohort {}: {kind} rate {rate} conflicts with its fixtures", school.name));
            }
            let mut pick = members.clone();
            pick.shuffle(&mut rng);
            for &i in &pick[..target - have] {
                skeletons[i].present.insert(kind);
            }
        }
    }
    for s in skeletons.iter_mut().filter(|s| !cohort_of.contains_key(s.school.as_str())) {
        for kind in OPTIONAL_SECTIONS {
            let rate = spec.cohorts.default_presence.get(&kind).copied().unwrap_or(0.0);
            if rng.random_bool(rate) {
                s.present.insert(kind);
            }
        }
    }
    let l = spec.layout;
    let count =
        |rng: &mut ChaCha8Rng, present: bool, max: usize| if present { rng.random_range(1..=max.max(1)) } else { 0 };
    for s in &mut skeletons {
        s.earlier = rng.random_range(0..=l.max_earlier_education);
        s.experience = count(&mut rng, s.present.contains(&SectionKind::Experience), l.max_experience);
        s.awards = count(&mut rng, s.present.contains(&SectionKind::Award), l.max_awards);
        s.skills = count(&mut rng, s.present.contains(&SectionKind::Skill), l.max_skills);
        s.certifications = count(&mut rng, s.present.contains(&SectionKind::Certification), l.max_certifications);
    }

    // Field values, slot by slot in profile order.
    let mut tally = Tally::default();
    let mut values: BTreeMap<FieldKind, std::vec::IntoIter<String>> = BTreeMap::new();
    let empty_pool = FieldPool { planted: Vec::new(), background: Vec::new(), fill_rate: 0.0 };
    for field in FieldKind::ALL {
        let pool = spec.pools.get(&field).unwrap_or(&empty_pool);
        let slots: usize = skeletons.iter().map(|s| s.slots(field)).sum();
        let mut assignment: Vec<Option<usize>> = Vec::with_capacity(slots);
        for (i, planted) in pool.planted.iter().enumerate() {
            let Some(rest) = planted.support.checked_sub(fixture_count(&fixtures, field, &planted.surface)) else {
                return infeasible(format!("{field} \"{}\": fixtures alone exceed support", planted.surface));
            };
            assignment.extend(std::iter::repeat_n(Some(i), rest as usize));
        }
        if assignment.len() > slots {
            return infeasible(format!(
                "{field}: planted supports need {} slots, only {slots} exist",
                assignment.len()
            ));
        }
        let must_fill = pool.fill_rate > 0.0 || field == FieldKind::AwardTitle;
        if assignment.len() < slots && pool.background.is_empty() && must_fill {
            return infeasible(format!("{field}: unplanted slots but no background values"));
        }
        assignment.resize(slots, None);
        assignment.shuffle(&mut rng);
        let mut out = Vec::with_capacity(slots);
        for slot in assignment {
            let value = match slot {
                Some(i) => pool.planted[i].surface.clone(),
                None if pool.fill_rate > 0.0 && rng.random_bool(pool.fill_rate) => {
                    let base = pool.background.choose(&mut rng).expect("non-empty").clone();
                    match apply_noise(&mut rng, spec.noise, &base) {
                        Some((noisy, kind)) => {
                            *tally.noise.entry((field, noisy.clone(), base, kind)).or_insert(0) += 1;
                            noisy
                        }
                        None => base,
                    }
                }
                None => String::new(),
            };
            tally.count(field, &value);
            out.push(value);
        }
        values.insert(field, out.into_iter());
    }
    let mut next = |field: FieldKind| values.get_mut(&field).and_then(Iterator::next).unwrap_or_default();

    // Assemble profiles.
    let reserved: BTreeSet<(String, String)> = fixtures
        .iter()
        .map(|p| (p.basic.first_name.as_str(), p.basic.last_name.as_str()))
        .chain(spec.collisions.iter().map(|c| (c.first.as_str(), c.last.as_str())))
        .map(|(f, l)| (normalize(f).into_string(), normalize(l).into_string()))
        .collect();
    let mut counters: BTreeMap<SourceTag, usize> = BTreeMap::new();
    let mut by_source: BTreeMap<SourceTag, Vec<Profile>> = BTreeMap::new();
    let mut cohorts: BTreeMap<String, CohortTruth> = BTreeMap::new();
    let mut global = CohortTruth::default();
    let mut collision_ids: Vec<(SourceTag, String, String)> = Vec::new();

    for s in &skeletons {
        let (first, last) = match &s.name {
            Some(n) => n.clone(),
            None => loop {
                let first = pools::FIRST_NAMES.choose(&mut rng).expect("non-empty");
                let last = pools::LAST_NAMES.choose(&mut rng).expect("non-empty");
                if !reserved.contains(&(normalize(first).into_string(), normalize(last).into_string())) {
                    break (first.to_string(), last.to_string());
                }
            },
        };
        let n = counters.entry(s.source).or_insert(0);
        *n += 1;
        let prefix = match s.source {
            SourceTag::PrimaryNetwork => "pn",
            SourceTag::PartnerPlatform => "pp",
        };
        let id = format!("{prefix}-{n:06}");
        if s.name.is_some() {
            collision_ids.push((s.source, id.clone(), s.school.clone()));
        }

        let mut basic = BasicInfo::new(first, last);
        basic.location = Some("Singapore".into());
        let mut p = Profile::new(id, s.source, basic);

        let mut end = rng.random_range(2004..=2024);
        tally.count(FieldKind::SchoolName, &s.school);
        let mut schools = vec![s.school.clone()];
        schools.extend((0..s.earlier).map(|_| next(FieldKind::SchoolName)));
        for school_name in schools {
            let years = rng.random_range(1..=4);
            p.push(SectionInstance::Education(Education {
                school_name,
                degree_name: next(FieldKind::DegreeName),
                field_of_study: Some(next(FieldKind::FieldOfStudy)).filter(|f| !f.is_empty()),
                start_year: Some(end - years),
                end_year: Some(end),
            }));
            end -= years + rng.random_range(0..=2);
        }

        let mut year = 2025;
        for i in 0..s.experience {
            let start = YearMonth::new(year - rng.random_range(1..=5), Some(rng.random_range(1..=12)));
            let finish = (i > 0).then(|| YearMonth::new(year, Some(rng.random_range(1..=12))));
            year = start.year;
            p.push(SectionInstance::Experience(Experience {
                title: next(FieldKind::JobTitle),
                organization_name: next(FieldKind::OrganizationName),
                start: Some(start),
                end: finish,
                description: None,
            }));
        }
        for _ in 0..s.awards {
            p.push(SectionInstance::Award(Award {
                title: next(FieldKind::AwardTitle),
                issuer: None,
                year: Some(rng.random_range(2005..=2024)),
            }));
        }
        let mut skills: Vec<&str> = pools::SKILLS.choose_multiple(&mut rng, s.skills).copied().collect();
        skills.sort_unstable();
        for name in skills {
            p.push(SectionInstance::Skill { name: name.into() });
        }
        for _ in 0..s.certifications {
            let (title, issuer) = *pools::CERTIFICATIONS.choose(&mut rng).expect("non-empty");
            p.push(SectionInstance::Certification(Certification {
                title: title.into(),
                issuer: Some(issuer.into()),
                year: Some(rng.random_range(2010..=2024)),
            }));
        }
        if s.present.contains(&SectionKind::Summary) {
            let text = pools::SUMMARIES.choose(&mut rng).expect("non-empty");
            p.push(SectionInstance::Summary { text: text.to_string() });
        }
        p.basic.headline = p.instances(SectionKind::Experience).first().and_then(|e| match e {
            SectionInstance::Experience(e) if !e.title.is_empty() && !e.organization_name.is_empty() => {
                Some(format!("{} at {}", e.title, e.organization_name))
            }
            _ => None,
        });
        p.canonicalize();

        let present = |k: SectionKind| section_present(&p, k);
        cohorts.entry(s.school.clone()).or_default().add(present);
        global.add(present);
        by_source.entry(s.source).or_default().push(p);
    }

    for f in &fixtures {
        for field in FieldKind::ALL {
            for (_, v) in f.field_values(field) {
                tally.count(field, v);
            }
        }
        let present = |k: SectionKind| section_present(f, k);
        if let Some(school) = fixture_school(f).filter(|s| !s.trim().is_empty()) {
            cohorts.entry(school).or_default().add(present);
        }
        global.add(present);
        by_source.entry(f.source).or_default().push(f.clone());
    }

    let mut files = Vec::new();
    for (source, profiles) in &by_source {
        let mut contents = String::new();
        for p in profiles {
            contents.push_str(&serialize_profile(p));
            contents.push('\n');
        }
        files.push(CorpusFile { name: corpus_file_name(*source), contents });
    }

    let collisions = spec
        .collisions
        .iter()
        .map(|c| CollisionTruth {
            first: c.first.clone(),
            last: c.last.clone(),
            members: {
                let mut m: Vec<_> = collision_ids.drain(..c.members.len()).collect();
                m.extend(
                    fixtures
                        .iter()
                        .filter(|f| f.basic.first_name == c.first && f.basic.last_name == c.last)
                        .map(|f| (f.source, f.id.clone(), fixture_school(f).unwrap_or_default())),
                );
                m.sort();
                m
            },
        })
        .collect();

    let ground_truth = GroundTruth {
        seed: spec.seed,
        profile_count: spec.profile_count as u64,
        files: files.iter().map(|f| f.name.clone()).collect(),
        supports: tally.supports,
        cohorts,
        global,
        planted: spec
            .pools
            .iter()
            .filter(|(_, p)| !p.planted.is_empty())
            .map(|(f, p)| (*f, p.planted.clone()))
            .collect(),
        noise: tally
            .noise
            .into_iter()
            .map(|((field, surface, canonical, kind), count)| NoiseRecord { field, surface, canonical, kind, count })
            .collect(),
        collisions,
        fixtures: fixtures.iter().map(|f| (f.source, f.id.clone())).collect(),
    };
    Ok(GeneratedCorpus { files, ground_truth })
}
