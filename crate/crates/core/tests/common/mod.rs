#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use profilelint_core::corpus::{ingest, BuildConfig, CorpusSnapshot};
use profilelint_core::synth::{generate, paper_scenario_spec, GeneratedCorpus};

pub fn scenario() -> &'static GeneratedCorpus {
    static CORPUS: OnceLock<GeneratedCorpus> = OnceLock::new();
    CORPUS.get_or_init(|| generate(&paper_scenario_spec()).expect("scenario generates"))
}

pub fn snapshot() -> &'static CorpusSnapshot {
    static SNAPSHOT: OnceLock<CorpusSnapshot> = OnceLock::new();
    SNAPSHOT.get_or_init(|| {
        let docs = scenario().documents().map(Ok::<_, std::io::Error>);
        ingest(docs, &BuildConfig::default()).expect("scenario ingests")
    })
}

/// Field values straight from the documents, read with an untyped JSON parser.
/// Returns support per (field, surface), keyed by the field kind's name.
pub fn brute_force_supports<'a>(docs: impl Iterator<Item = &'a str>) -> BTreeMap<(String, String), u64> {
    const FIELDS: &[(&str, &str, &str)] = &[
        ("education", "degree_name", "DegreeName"),
        ("education", "field_of_study", "FieldOfStudy"),
        ("education", "school_name", "SchoolName"),
        ("experience", "title", "JobTitle"),
        ("experience", "organization_name", "OrganizationName"),
        ("award", "title", "AwardTitle"),
    ];
    let mut out = BTreeMap::new();
    for doc in docs {
        let v: serde_json::Value = serde_json::from_str(doc).expect("generated docs are JSON");
        for section in v["sections"].as_array().expect("sections array") {
            let kind = section["kind"].as_str().unwrap_or_default();
            for inst in section["instances"].as_array().into_iter().flatten() {
                for (sec, key, name) in FIELDS {
                    if *sec != kind {
                        continue;
                    }
                    if let Some(value) = inst[*key].as_str().filter(|s| !s.trim().is_empty()) {
                        *out.entry((name.to_string(), value.to_string())).or_insert(0) += 1;
                    }
                }
            }
        }
    }
    out
}
