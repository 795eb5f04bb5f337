//! Property tests: normalization, edit distance, document and snapshot round trips.

mod common;

use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;

use profilelint_core::corpus::{ingest, load_snapshot, save_snapshot, BuildConfig};
use profilelint_core::evaluator::{evaluate, EvalConfig};
use profilelint_core::matcher::{dl_distance, normalize, ranked_candidates, recommend, MatchClass, MatchParams};
use profilelint_core::profile::{
    parse_profile, serialize_profile, Award, BasicInfo, Certification, Education, Experience, FieldKind, Profile,
    SectionInstance, SourceTag, YearMonth,
};
use profilelint_core::synth::walkthrough_profile;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normalize_is_idempotent(s in "\\PC{0,40}") {
        let once = normalize(&s);
        prop_assert_eq!(normalize(once.as_str()), once.clone());
        let k = once.as_str();
        prop_assert!(!k.contains("  "));
        prop_assert_eq!(k.trim(), k);
        prop_assert!(k.chars().all(|c| c == ' ' || c.is_alphanumeric()));
        prop_assert!(!k.chars().any(char::is_uppercase));
    }

    #[test]
    fn normalize_ascii_shapes(s in "[A-Za-z0-9'.,()& -]{0,30}") {
        let k = normalize(&s);
        prop_assert_eq!(normalize(k.as_str()), k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dl_distance_is_a_metric(a in "[a-e]{0,9}", b in "[a-e]{0,9}", c in "[a-e]{0,9}") {
        let ab = dl_distance(&a, &b);
        prop_assert_eq!(dl_distance(&a, &a), 0);
        prop_assert_eq!(ab == 0, a == b);
        prop_assert_eq!(ab, dl_distance(&b, &a));
        prop_assert!(dl_distance(&a, &c) <= ab + dl_distance(&b, &c));
        prop_assert_eq!(ab, strsim::damerau_levenshtein(&a, &b));
    }

    #[test]
    fn dl_distance_unicode(a in "\\PC{0,8}", b in "\\PC{0,8}") {
        prop_assert_eq!(dl_distance(&a, &b), strsim::damerau_levenshtein(&a, &b));
    }
}

/// Fewest single edits (insert, delete, substitute, swap neighbours) from `a`
/// to `b`, by breadth-first search. Only usable on tiny strings.
fn edit_bfs(a: &str, b: &str) -> usize {
    let alphabet: BTreeSet<char> = a.chars().chain(b.chars()).collect();
    let target: Vec<char> = b.chars().collect();
    let limit = a.chars().count().max(target.len()) + 1;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([(a.chars().collect::<Vec<char>>(), 0)]);
    while let Some((s, d)) = queue.pop_front() {
        if s == target {
            return d;
        }
        if !seen.insert(s.clone()) {
            continue;
        }
        let mut next = Vec::new();
        for i in 0..=s.len() {
            for &c in &alphabet {
                if s.len() < limit {
                    let mut t = s.clone();
                    t.insert(i, c);
                    next.push(t);
                }
                if i < s.len() && s[i] != c {
                    let mut t = s.clone();
                    t[i] = c;
                    next.push(t);
                }
            }
            if i < s.len() {
                let mut t = s.clone();
                t.remove(i);
                next.push(t);
            }
            if i + 1 < s.len() {
                let mut t = s.clone();
                t.swap(i, i + 1);
                next.push(t);
            }
        }
        queue.extend(next.into_iter().filter(|t| !seen.contains(t)).map(|t| (t, d + 1)));
    }
    unreachable!("target always reachable")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dl_distance_matches_exhaustive_search(a in "[abc]{0,4}", b in "[abc]{0,4}") {
        prop_assert_eq!(dl_distance(&a, &b), edit_bfs(&a, &b));
    }
}

#[test]
fn distance_examples() {
    assert_eq!(edit_bfs("ca", "abc"), 2);
    assert_eq!(dl_distance("ca", "abc"), 2);
    assert_eq!(
        dl_distance("raffles", "raffles junior college"),
        strsim::damerau_levenshtein("raffles", "raffles junior college")
    );
    assert_eq!(dl_distance("raffles", "raffles junior college"), 15);
}

fn text() -> impl Strategy<Value = String> {
    "[A-Za-z][A-Za-z0-9 .,'()&-]{0,14}|\\PC{1,8}"
}

fn opt_text() -> impl Strategy<Value = Option<String>> {
    prop::option::of(text())
}

fn year_month() -> impl Strategy<Value = Option<YearMonth>> {
    prop::option::of((1950i32..2030, prop::option::of(1u8..=12)).prop_map(|(y, m)| YearMonth::new(y, m)))
}

fn instance() -> impl Strategy<Value = SectionInstance> {
    prop_oneof![
        (text(), text(), opt_text(), prop::option::of(1950i32..2030), prop::option::of(1950i32..2030)).prop_map(
            |(school_name, degree_name, field_of_study, start_year, end_year)| SectionInstance::Education(Education {
                school_name,
                degree_name,
                field_of_study,
                start_year,
                end_year
            })
        ),
        (text(), text(), year_month(), year_month(), opt_text()).prop_map(
            |(title, organization_name, start, end, description)| SectionInstance::Experience(Experience {
                title,
                organization_name,
                start,
                end,
                description
            })
        ),
        (text(), opt_text(), prop::option::of(1950i32..2030))
            .prop_map(|(title, issuer, year)| SectionInstance::Award(Award { title, issuer, year })),
        (text(), opt_text(), prop::option::of(1950i32..2030))
            .prop_map(|(title, issuer, year)| SectionInstance::Certification(Certification { title, issuer, year })),
        text().prop_map(|name| SectionInstance::Skill { name }),
        text().prop_map(|text| SectionInstance::Summary { text }),
        ("[a-z_]{3,10}", "[a-z]{1,5}", 0i64..1000).prop_map(|(kind, key, n)| SectionInstance::Other {
            kind: format!("x_{kind}"),
            raw: format!("{{\"{key}\":{n}}}")
        }),
    ]
}

fn profile() -> impl Strategy<Value = Profile> {
    (
        "[a-z0-9-]{1,12}",
        any::<bool>(),
        "[A-Za-z][A-Za-z '-]{0,10}",
        "\\PL{0,3}[A-Za-z]\\PL{0,3}",
        opt_text(),
        opt_text(),
        prop::collection::vec(instance(), 0..12),
    )
        .prop_map(|(id, partner, first, last, headline, location, instances)| {
            let source = if partner { SourceTag::PartnerPlatform } else { SourceTag::PrimaryNetwork };
            let mut basic = BasicInfo::new(first, last);
            basic.headline = headline;
            basic.location = location;
            let mut p = Profile::new(id, source, basic);
            for inst in instances {
                p.push(inst);
            }
            p.canonicalize();
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn documents_round_trip(p in profile()) {
        let doc = serialize_profile(&p);
        let back = parse_profile(&doc).unwrap();
        prop_assert_eq!(back.dropped_instances, 0);
        prop_assert_eq!(&back.profile, &p);
        prop_assert_eq!(serialize_profile(&back.profile), doc);
    }
}

#[test]
fn generated_profiles_round_trip() {
    for doc in common::scenario().documents() {
        let p = parse_profile(doc).unwrap().profile;
        assert_eq!(serialize_profile(&p), doc);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn snapshots_round_trip(profiles in prop::collection::vec(profile(), 1..20)) {
        let docs: Vec<String> = profiles.iter().map(serialize_profile).collect();
        let s = ingest(docs.iter().map(|d| Ok::<_, std::io::Error>(d.as_str())), &BuildConfig::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.snap");
        save_snapshot(&s, &path).unwrap();
        let loaded = load_snapshot(&path).unwrap();
        prop_assert_eq!(loaded.content_digest(), s.content_digest());
        prop_assert_eq!(loaded, s);
    }
}

#[test]
fn scenario_snapshot_round_trips() {
    let s = common::snapshot();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scenario.snap");
    save_snapshot(s, &path).unwrap();
    let first = std::fs::read(&path).unwrap();
    let loaded = load_snapshot(&path).unwrap();
    assert_eq!(&loaded, s);
    save_snapshot(&loaded, &path).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn evaluation_is_deterministic() {
    let p = walkthrough_profile();
    let a = evaluate(common::snapshot(), &p, &EvalConfig::default()).to_json();
    let b = evaluate(common::snapshot(), &p, &EvalConfig::default()).to_json();
    assert_eq!(a, b);
    let docs = common::scenario().documents().map(Ok::<_, std::io::Error>);
    let rebuilt = ingest(docs, &BuildConfig::default()).unwrap();
    assert_eq!(rebuilt.content_digest(), common::snapshot().content_digest());
    assert_eq!(evaluate(&rebuilt, &p, &EvalConfig::default()).to_json(), a);
}

fn query() -> impl Strategy<Value = (FieldKind, String)> {
    let q = prop_oneof![
        Just("Master".to_string()),
        Just("raffles".to_string()),
        Just("siemens".to_string()),
        Just("Software".to_string()),
        Just("bachelor".to_string()),
        "[A-Za-z ]{1,12}",
    ];
    (prop::sample::select(FieldKind::ALL.to_vec()), q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn recommendations_obey_their_order(
        (field, q) in query(),
        k in 1usize..6,
        s_min in 1u64..50,
    ) {
        let params = MatchParams { k, s_min, ..MatchParams::default() };
        let Ok(recs) = recommend(common::snapshot(), field, &q, &params) else { return Ok(()) };
        prop_assert!(recs.len() <= k);
        for r in &recs {
            prop_assert!(r.support >= s_min);
            prop_assert_ne!(&r.surface, &q);
            prop_assert_eq!(r.distance == 0, r.match_class != MatchClass::Fuzzy);
        }
        for w in recs.windows(2) {
            let a = (w[0].match_class, std::cmp::Reverse(w[0].support), &w[0].surface);
            let b = (w[1].match_class, std::cmp::Reverse(w[1].support), &w[1].surface);
            prop_assert!(a < b);
        }
        let full = ranked_candidates(common::snapshot(), field, &q, &params).unwrap();
        prop_assert_eq!(&full[..recs.len()], &recs[..]);
        let first_fuzzy = full.iter().position(|r| r.match_class == MatchClass::Fuzzy).unwrap_or(full.len());
        prop_assert!(full[first_fuzzy..].iter().all(|r| r.match_class == MatchClass::Fuzzy));
    }
}
