//! Per-field frequency index: surface-form supports, normalized-key variant
//! lists, and a character-trigram index over keys for near-miss lookup.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::matcher::{dl_distance_chars, normalize};

pub type Gram = [char; 3];

const PAD: char = '\u{0}';

/// How keys are cut into trigrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrigramPadding {
    /// Keys of three or more characters use plain windows; shorter keys get
    /// one gram padded with a sentinel.
    #[default]
    ShortKeys,
    /// Every key is padded with two sentinels on both ends.
    Full,
}

pub fn trigrams(key: &str, padding: TrigramPadding) -> Vec<Gram> {
    let mut chars: Vec<char> = key.chars().collect();
    match padding {
        TrigramPadding::ShortKeys => {
            if chars.len() < 3 {
                chars.resize(3, PAD);
            }
        }
        TrigramPadding::Full => {
            let mut padded = vec![PAD, PAD];
            padded.extend_from_slice(&chars);
            padded.extend_from_slice(&[PAD, PAD]);
            chars = padded;
        }
    }
    chars.windows(3).map(|w| [w[0], w[1], w[2]]).collect()
}

fn gram_counts(key: &str, padding: TrigramPadding) -> BTreeMap<Gram, u32> {
    let mut counts = BTreeMap::new();
    for g in trigrams(key, padding) {
        *counts.entry(g).or_insert(0) += 1;
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyEntry {
    pub key: String,
    /// Occurrences of all surface forms sharing this key.
    pub total: u64,
    /// Surface forms, support descending then lexicographic.
    pub variants: Vec<(String, u64)>,
    char_len: u32,
}

impl KeyEntry {
    /// The most used surface form of this key.
    pub fn dominant(&self) -> Option<(&str, u64)> {
        self.variants.first().map(|(s, n)| (s.as_str(), *n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
struct Posting {
    key: u32,
    count: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyIndex {
    surfaces: BTreeMap<String, u64>,
    keys: Vec<KeyEntry>,
    postings: BTreeMap<Gram, Vec<Posting>>,
    padding: TrigramPadding,
}

/// Accumulates surface forms during ingestion.
#[derive(Debug, Default)]
pub struct FrequencyIndexBuilder {
    surfaces: HashMap<String, u64>,
}

impl FrequencyIndexBuilder {
    pub fn add(&mut self, surface: &str) {
        if let Some(n) = self.surfaces.get_mut(surface) {
            *n += 1;
        } else {
            self.surfaces.insert(surface.to_owned(), 1);
        }
    }

    pub fn build(self, padding: TrigramPadding) -> FrequencyIndex {
        let surfaces: BTreeMap<String, u64> = self.surfaces.into_iter().collect();
        let mut by_key: BTreeMap<String, Vec<(String, u64)>> = BTreeMap::new();
        for (surface, &support) in &surfaces {
            by_key.entry(normalize(surface).into_string()).or_default().push((surface.clone(), support));
        }
        let mut keys = Vec::with_capacity(by_key.len());
        let mut postings: BTreeMap<Gram, Vec<Posting>> = BTreeMap::new();
        for (id, (key, mut variants)) in by_key.into_iter().enumerate() {
            variants.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            for (gram, count) in gram_counts(&key, padding) {
                postings.entry(gram).or_default().push(Posting { key: id as u32, count });
            }
            keys.push(KeyEntry {
                total: variants.iter().map(|(_, n)| n).sum(),
                char_len: key.chars().count() as u32,
                key,
                variants,
            });
        }
        FrequencyIndex { surfaces, keys, postings, padding }
    }
}

impl FrequencyIndex {
    /// Exact, case-sensitive support of a surface form.
    pub fn support(&self, surface: &str) -> u64 {
        self.surfaces.get(surface).copied().unwrap_or(0)
    }

    pub fn surfaces(&self) -> impl Iterator<Item = (&str, u64)> {
        self.surfaces.iter().map(|(s, n)| (s.as_str(), *n))
    }

    pub fn keys(&self) -> &[KeyEntry] {
        &self.keys
    }

    pub fn entry(&self, key: &str) -> Option<&KeyEntry> {
        self.keys.binary_search_by(|e| e.key.as_str().cmp(key)).ok().map(|i| &self.keys[i])
    }

    /// Surface forms of a normalized key, support descending, ties lexicographic.
    pub fn variants(&self, key: &str) -> Vec<(&str, u64)> {
        self.entry(key).map(|e| e.variants.iter().map(|(s, n)| (s.as_str(), *n)).collect()).unwrap_or_default()
    }

    /// Total occurrences of a normalized key.
    pub fn key_support(&self, key: &str) -> u64 {
        self.entry(key).map_or(0, |e| e.total)
    }

    /// Sum of all supports: the number of non-blank occurrences indexed.
    pub fn total_occurrences(&self) -> u64 {
        self.surfaces.values().sum()
    }

    /// Indexed keys within Damerau-Levenshtein distance `max_dist` of `key`,
    /// with their distances, sorted by key.
    ///
    /// Each unit of edit cost can break at most four of the query's trigrams,
    /// so a key sharing fewer than `grams - 4 * max_dist` of them cannot be
    /// within budget. When that bound is not positive every key is checked.
    pub fn fuzzy_candidates(&self, key: &str, max_dist: u32) -> Vec<(&str, u32)> {
        let query: Vec<char> = key.chars().collect();
        let qgrams = gram_counts(key, self.padding);
        let gram_total: i64 = qgrams.values().map(|&c| i64::from(c)).sum();
        let threshold = gram_total - 4 * i64::from(max_dist);

        let shortlist: Vec<u32> = if threshold <= 0 {
            (0..self.keys.len() as u32).collect()
        } else {
            let mut shared: HashMap<u32, i64> = HashMap::new();
            for (gram, &qcount) in &qgrams {
                for p in self.postings.get(gram).map(Vec::as_slice).unwrap_or(&[]) {
                    *shared.entry(p.key).or_insert(0) += i64::from(qcount.min(p.count));
                }
            }
            let mut ids: Vec<u32> = shared.into_iter().filter(|&(_, n)| n >= threshold).map(|(id, _)| id).collect();
            ids.sort_unstable();
            ids
        };

        let qlen = query.len() as i64;
        let mut out = Vec::new();
        let mut buf: Vec<char> = Vec::new();
        for id in shortlist {
            let entry = &self.keys[id as usize];
            if (i64::from(entry.char_len) - qlen).unsigned_abs() > u64::from(max_dist) {
                continue;
            }
            buf.clear();
            buf.extend(entry.key.chars());
            let d = dl_distance_chars(&query, &buf) as u32;
            if d <= max_dist {
                out.push((entry.key.as_str(), d));
            }
        }
        out
    }

    /// Same result as [`fuzzy_candidates`](Self::fuzzy_candidates), without the prefilter.
    pub fn fuzzy_candidates_scan(&self, key: &str, max_dist: u32) -> Vec<(&str, u32)> {
        let query: Vec<char> = key.chars().collect();
        self.keys
            .iter()
            .filter_map(|e| {
                let d = dl_distance_chars(&query, &e.key.chars().collect::<Vec<_>>()) as u32;
                (d <= max_dist).then_some((e.key.as_str(), d))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn index(values: &[(&str, u64)], padding: TrigramPadding) -> FrequencyIndex {
        let mut b = FrequencyIndexBuilder::default();
        for (v, n) in values {
            for _ in 0..*n {
                b.add(v);
            }
        }
        b.build(padding)
    }

    #[test]
    fn supports_and_variants() {
        let idx = index(
            &[("Master's degree", 2), ("Master", 1), ("Siemens", 500), ("siemens", 3)],
            TrigramPadding::ShortKeys,
        );
        assert_eq!(idx.support("Master's degree"), 2);
        assert_eq!(idx.support("Master"), 1);
        assert_eq!(idx.support("master"), 0);
        assert_eq!(idx.variants("siemens"), vec![("Siemens", 500), ("siemens", 3)]);
        assert!(idx.variants("nokia").is_empty());
        assert_eq!(idx.key_support("siemens"), 503);
        assert_eq!(idx.total_occurrences(), 506);
    }

    #[test]
    fn variant_ties_are_lexicographic() {
        let idx = index(&[("b c", 2), ("B.C.", 2), ("B C", 2)], TrigramPadding::ShortKeys);
        assert_eq!(idx.variants("b c"), vec![("B C", 2), ("B.C.", 2), ("b c", 2)]);
    }

    #[test]
    fn short_keys_are_findable() {
        for padding in [TrigramPadding::ShortKeys, TrigramPadding::Full] {
            let idx = index(&[("BA", 10), ("MA", 4), ("x", 1), ("Teaching Assistant", 3)], padding);
            let hits: Vec<_> = idx.fuzzy_candidates("ba", 1).into_iter().map(|(k, _)| k).collect();
            assert_eq!(hits, ["ba", "ma"]);
            let hits = idx.fuzzy_candidates("teaching asistant", 1);
            assert_eq!(hits, [("teaching assistant", 1)]);
        }
    }

    #[test]
    fn gram_shapes() {
        assert_eq!(trigrams("ab", TrigramPadding::ShortKeys), vec![['a', 'b', PAD]]);
        assert_eq!(trigrams("abcd", TrigramPadding::ShortKeys).len(), 2);
        assert_eq!(trigrams("abcd", TrigramPadding::Full).len(), 6);
    }
}
