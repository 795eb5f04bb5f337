use std::fmt;

use serde::{Deserialize, Serialize};

/// A lowercased, punctuation-free, single-spaced grouping key.
///
/// Surface forms that differ only in case, punctuation or spacing share a key:
/// `"Bachelor of Science (B.Sc.)"` and `"bachelor of science b sc"` both map to
/// `bachelor of science b sc`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalizedKey(String);

impl NormalizedKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn char_len(&self) -> usize {
        self.0.chars().count()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.0.split(' ').filter(|t| !t.is_empty())
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Wraps a string already known to be normalized, such as an index key.
    pub(crate) fn from_str_unchecked(s: &str) -> NormalizedKey {
        debug_assert_eq!(normalize(s).0, s);
        NormalizedKey(s.to_owned())
    }
}

impl fmt::Display for NormalizedKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for NormalizedKey {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

fn is_apostrophe(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '\u{2018}' | '\u{02BC}')
}

/// Lowercases, deletes apostrophes, turns every other non-alphanumeric
/// character into a space, collapses runs of spaces and trims.
pub fn normalize(s: &str) -> NormalizedKey {
    let mut out = String::with_capacity(s.len());
    let mut gap = false;
    for c in s.chars() {
        if is_apostrophe(c) {
            continue;
        }
        if !c.is_alphanumeric() {
            gap = true;
            continue;
        }
        for lc in c.to_lowercase() {
            // Lowercasing can emit combining marks (e.g. for U+0130), and a few
            // letters have no lowercase form at all (e.g. U+1D54A). Both count
            // as separators.
            if lc.is_alphanumeric() && !lc.is_uppercase() {
                if gap && !out.is_empty() {
                    out.push(' ');
                }
                gap = false;
                out.push(lc);
            } else {
                gap = true;
            }
        }
    }
    NormalizedKey(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_application() {
        assert_eq!(normalize("Master's degree").as_str(), "masters degree");
        assert_eq!(normalize("Bachelor of Science (B.Sc.)").as_str(), "bachelor of science b sc");
        assert_eq!(normalize("  Software   Engg ").as_str(), "software engg");
        assert_eq!(normalize("Master\u{2019}s").as_str(), "masters");
        assert_eq!(normalize("---").as_str(), "");
        assert_eq!(normalize("Anglo-Chinese School").as_str(), "anglo chinese school");
        assert_eq!(normalize("A\u{1D54A}B").as_str(), "a b");
    }
}
