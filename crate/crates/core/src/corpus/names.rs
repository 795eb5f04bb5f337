use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::matcher::normalize;
use crate::profile::{Profile, SourceTag};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NameEntry {
    pub source: SourceTag,
    pub id: String,
    /// Normalized key of the last graduated institution.
    pub institution_key: Option<String>,
}

/// Person-name lookup: normalized (first, last) to every profile bearing it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NameIndex {
    names: BTreeMap<(String, String), Vec<NameEntry>>,
}

impl NameIndex {
    pub fn add(&mut self, profile: &Profile) {
        let key =
            (normalize(&profile.basic.first_name).into_string(), normalize(&profile.basic.last_name).into_string());
        let institution_key =
            profile.last_education().map(|e| normalize(&e.school_name).into_string()).filter(|k| !k.is_empty());
        let entries = self.names.entry(key).or_default();
        let entry = NameEntry { source: profile.source, id: profile.id.clone(), institution_key };
        let at = entries.binary_search(&entry).unwrap_or_else(|i| i);
        entries.insert(at, entry);
    }

    /// Entries whose normalized names equal the query's, optionally narrowed
    /// to those whose institution key contains every institution token.
    /// Ordered by source (primary network first), then id.
    pub fn lookup(&self, first: &str, last: &str, institution: Option<&str>) -> Vec<&NameEntry> {
        let key = (normalize(first).into_string(), normalize(last).into_string());
        let wanted: Vec<String> =
            institution.map(|i| normalize(i).tokens().map(str::to_owned).collect()).unwrap_or_default();
        self.names
            .get(&key)
            .map(|entries| {
                entries
                    .iter()
                    .filter(|e| {
                        wanted.is_empty()
                            || e.institution_key.as_deref().is_some_and(|k| {
                                let have: Vec<&str> = k.split(' ').collect();
                                wanted.iter().all(|w| have.contains(&w.as_str()))
                            })
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.names.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}
