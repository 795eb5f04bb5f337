//! The reference scenario: 10,000 profiles whose planted values reproduce the
//! walkthrough findings. Supports are a tenth of the counts reported for the
//! full-size network, so every ordering between them is preserved.

use std::collections::BTreeMap;

use super::{
    CohortLayout, CohortSchool, CollisionMember, FieldPool, Fixture, GeneratorSpec, NameCollision, NoiseRates, Planted,
    SlotLayout,
};
use crate::profile::{
    Award, BasicInfo, Certification, Education, Experience, FieldKind, Profile, SectionInstance, SectionKind,
    SourceTag, YearMonth,
};

pub const WALKTHROUGH_ID: &str = "fx-walkthrough";

const NUS: &str = "National University of Singapore";
const NTU: &str = "Nanyang Technological University";
const SMU: &str = "Singapore Management University";

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn pool(planted: Vec<Planted>, background: &[&str]) -> FieldPool {
    FieldPool { planted, background: strings(background), fill_rate: 1.0 }
}

fn education(school: &str, degree: &str, end_year: i32) -> SectionInstance {
    SectionInstance::Education(Education {
        school_name: school.into(),
        degree_name: degree.into(),
        field_of_study: None,
        start_year: Some(end_year - 4),
        end_year: Some(end_year),
    })
}

fn experience(title: &str, org: &str, start: i32, end: Option<i32>) -> SectionInstance {
    SectionInstance::Experience(Experience {
        title: title.into(),
        organization_name: org.into(),
        start: Some(YearMonth::new(start, Some(1))),
        end: end.map(|y| YearMonth::new(y, Some(12))),
        description: None,
    })
}

fn person(id: &str, source: SourceTag, first: &str, last: &str, headline: &str) -> Profile {
    let mut basic = BasicInfo::new(first, last);
    basic.headline = Some(headline.into());
    basic.location = Some("Singapore".into());
    Profile::new(id, source, basic)
}

/// The composite profile exercising every finding: a vague degree, an
/// abbreviated degree, an ambiguous school, an abbreviated and a misspelled
/// job title, a lowercase company, and no awards.
pub fn walkthrough_profile() -> Profile {
    let mut p = person(WALKTHROUGH_ID, SourceTag::PrimaryNetwork, "Darren", "Kwok", "Engineer in Singapore");
    for inst in [
        education(NUS, "Master", 2016),
        education(NUS, "Bsc", 2012),
        education("raffles", "", 2008),
        experience("software engr", "siemens", 2019, None),
        experience("Teaching asistant", NUS, 2014, Some(2016)),
        SectionInstance::Skill { name: "Python".into() },
        SectionInstance::Skill { name: "Machine Learning".into() },
        SectionInstance::Certification(Certification {
            title: "AWS Certified Solutions Architect".into(),
            issuer: Some("Amazon Web Services".into()),
            year: Some(2020),
        }),
        SectionInstance::Summary { text: "Engineer who enjoys building data products.".into() },
    ] {
        p.push(inst);
    }
    p.canonicalize();
    p
}

/// The walkthrough person's account on the partner platform.
fn walkthrough_twin() -> Profile {
    let mut p = person("fx-walkthrough-pp", SourceTag::PartnerPlatform, "Darren", "Kwok", "Software Engineer");
    p.push(education(NUS, "Master's degree", 2016));
    p.push(experience("Software Engineer", "Siemens", 2019, None));
    p.push(SectionInstance::Skill { name: "Python".into() });
    p.canonicalize();
    p
}

fn unique_person() -> Profile {
    let mut p = person("fx-unique", SourceTag::PrimaryNetwork, "Aurelia", "Santoso", "Data Analyst at DBS Bank");
    p.push(education(NTU, "Bachelor of Science (BSc)", 2018));
    p.push(experience("Data Analyst", "DBS Bank", 2018, None));
    p.push(SectionInstance::Award(Award { title: "Dean's List".into(), issuer: Some("NTU".into()), year: Some(2017) }));
    p.canonicalize();
    p
}

fn presence(award: f64) -> BTreeMap<SectionKind, f64> {
    [
        (SectionKind::Experience, 0.95),
        (SectionKind::Award, award),
        (SectionKind::Skill, 0.8),
        (SectionKind::Certification, 0.3),
        (SectionKind::Summary, 0.6),
    ]
    .into_iter()
    .collect()
}

/// The reference 10,000-profile scenario with seed 42.
pub fn paper_scenario_spec() -> GeneratorSpec {
    let mut pools = BTreeMap::new();
    pools.insert(
        FieldKind::DegreeName,
        pool(
            vec![
                Planted::new("Master's degree", 1200),
                Planted::new("Master of Business Administration (MBA)", 1100),
                Planted::new("Master of Science (MSc)", 500),
                Planted::new("Master", 40),
                Planted::new("Bachelor's degree", 1500),
                Planted::new("Bachelor of Science (BSc)", 900),
                Planted::new("Bachelor of Science (B.Sc.)", 800),
                Planted::new("Bsc", 30),
                Planted::new("Doctor of Philosophy (PhD)", 300),
            ],
            &[
                "Bachelor of Engineering (BEng)",
                "Bachelor of Arts (BA)",
                "Bachelor of Business Administration (BBA)",
                "Bachelor of Accountancy",
                "Bachelor of Laws (LLB)",
                "Diploma in Information Technology",
                "GCE A Levels",
                "Higher Nitec",
            ],
        ),
    );
    pools.insert(
        FieldKind::FieldOfStudy,
        FieldPool {
            fill_rate: 0.7,
            ..pool(
                Vec::new(),
                &[
                    "Computer Science",
                    "Business Administration",
                    "Electrical Engineering",
                    "Mechanical Engineering",
                    "Economics",
                    "Accountancy",
                    "Information Systems",
                    "Psychology",
                ],
            )
        },
    );
    pools.insert(
        FieldKind::SchoolName,
        pool(
            vec![Planted::new("Raffles Junior College", 400), Planted::new("Raffles Institution", 350)],
            &[
                "Hwa Chong Institution",
                "Victoria Junior College",
                "Anglo-Chinese Junior College",
                "Nanyang Polytechnic",
                "Ngee Ann Polytechnic",
                "Temasek Polytechnic",
                "Singapore Polytechnic",
                "River Valley High School",
            ],
        ),
    );
    pools.insert(
        FieldKind::JobTitle,
        pool(
            vec![
                Planted::new("Software Engineer", 800),
                Planted::new("Senior Software Engineer", 300),
                Planted::new("Software Engg", 120),
                Planted::new("Teaching Assistant", 300),
                Planted::noise("Teaching asistant", 3, "Teaching Assistant"),
            ],
            &[
                "Project Manager",
                "Accountant",
                "Data Analyst",
                "Business Analyst",
                "Marketing Executive",
                "Sales Manager",
                "Operations Executive",
                "Financial Analyst",
                "Product Manager",
                "Human Resources Manager",
                "Research Officer",
                "Consultant",
            ],
        ),
    );
    pools.insert(
        FieldKind::OrganizationName,
        pool(
            vec![Planted::new("Siemens", 500), Planted::noise("siemens", 3, "Siemens"), Planted::new(NUS, 200)],
            &[
                "DBS Bank",
                "OCBC Bank",
                "Singtel",
                "Grab",
                "Shopee",
                "Keppel Corporation",
                "Accenture",
                "Deloitte",
                "Ministry of Education",
                "Changi Airport Group",
                "Sea Group",
                "ST Engineering",
            ],
        ),
    );
    pools.insert(
        FieldKind::AwardTitle,
        pool(
            Vec::new(),
            &[
                "Dean's List",
                "Best Employee of the Year",
                "Scholarship Award",
                "Innovation Award",
                "Long Service Award",
                "President's Award",
            ],
        ),
    );

    let collision = |source, school: &str| CollisionMember { source, school: school.into() };
    GeneratorSpec {
        profile_count: 10_000,
        seed: 42,
        partner_share: 0.2,
        pools,
        noise: NoiseRates { misspelling: 0.02, lowercase: 0.03, abbreviation: 0.01 },
        cohorts: CohortLayout {
            schools: vec![
                CohortSchool { name: NUS.into(), size: 2000, presence: presence(0.25) },
                CohortSchool { name: NTU.into(), size: 1500, presence: presence(0.15) },
            ],
            background_schools: strings(&[
                SMU,
                "Singapore Institute of Management",
                "Singapore University of Technology and Design",
                "Singapore Institute of Technology",
            ]),
            default_presence: [
                (SectionKind::Experience, 0.9),
                (SectionKind::Award, 0.1),
                (SectionKind::Skill, 0.75),
                (SectionKind::Certification, 0.25),
                (SectionKind::Summary, 0.55),
            ]
            .into_iter()
            .collect(),
        },
        layout: SlotLayout::default(),
        collisions: vec![NameCollision {
            first: "Wei Ming".into(),
            last: "Tan".into(),
            members: vec![
                collision(SourceTag::PrimaryNetwork, NUS),
                collision(SourceTag::PartnerPlatform, NUS),
                collision(SourceTag::PrimaryNetwork, NTU),
                collision(SourceTag::PrimaryNetwork, SMU),
                collision(SourceTag::PartnerPlatform, NTU),
            ],
        }],
        fixtures: vec![Fixture(walkthrough_profile()), Fixture(walkthrough_twin()), Fixture(unique_person())],
    }
}
