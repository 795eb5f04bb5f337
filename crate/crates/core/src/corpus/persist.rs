//! Snapshot files.
//!
//! Layout (integers little-endian):
//!
//! ```text
//! magic    8 bytes  "PLNTSNAP"
//! version  u32
//! digest   32 bytes SHA-256 of everything after this field
//! length   u64      byte length of the record area
//! records  { tag u8, length u64, CBOR body }*
//! ```
//!
//! Records are written in a fixed order, so saving the same snapshot twice
//! yields identical bytes.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{BuildConfig, CohortStats, CorpusSnapshot, FrequencyIndex, IngestStats, NameIndex};
use crate::error::CorpusError;
use crate::profile::{FieldKind, Profile, SourceTag};

pub const SNAPSHOT_MAGIC: [u8; 8] = *b"PLNTSNAP";
pub const SNAPSHOT_VERSION: u32 = 1;

const TAG_HEADER: u8 = 1;
const TAG_FIELD: u8 = 2;
const TAG_COHORTS: u8 = 3;
const TAG_NAMES: u8 = 4;
const TAG_PROFILES: u8 = 5;

const PREAMBLE: usize = 8 + 4 + 32 + 8;

#[derive(Serialize, Deserialize)]
struct Header {
    profile_count: u64,
    ingest: IngestStats,
    build_config: BuildConfig,
    content_digest: String,
}

fn push_record<T: Serialize>(out: &mut Vec<u8>, tag: u8, body: &T) -> Result<(), CorpusError> {
    let mut buf = Vec::new();
    ciborium::into_writer(body, &mut buf).map_err(|e| CorpusError::Decode(e.to_string()))?;
    out.push(tag);
    out.extend_from_slice(&(buf.len() as u64).to_le_bytes());
    out.extend_from_slice(&buf);
    Ok(())
}

fn encode(snapshot: &CorpusSnapshot) -> Result<Vec<u8>, CorpusError> {
    let mut records = Vec::new();
    push_record(
        &mut records,
        TAG_HEADER,
        &Header {
            profile_count: snapshot.profile_count,
            ingest: snapshot.ingest.clone(),
            build_config: snapshot.build_config.clone(),
            content_digest: snapshot.content_digest.clone(),
        },
    )?;
    for (kind, index) in &snapshot.fields {
        push_record(&mut records, TAG_FIELD, &(kind, index))?;
    }
    push_record(&mut records, TAG_COHORTS, &snapshot.cohorts)?;
    push_record(&mut records, TAG_NAMES, &snapshot.names)?;
    let profiles: Vec<&Profile> = snapshot.profiles.values().collect();
    push_record(&mut records, TAG_PROFILES, &profiles)?;

    let mut out = Vec::with_capacity(PREAMBLE + records.len());
    out.extend_from_slice(&SNAPSHOT_MAGIC);
    out.extend_from_slice(&SNAPSHOT_VERSION.to_le_bytes());
    let mut hasher = Sha256::new();
    hasher.update((records.len() as u64).to_le_bytes());
    hasher.update(&records);
    out.extend_from_slice(&hasher.finalize());
    out.extend_from_slice(&(records.len() as u64).to_le_bytes());
    out.extend_from_slice(&records);
    Ok(out)
}

/// Writes the snapshot to `path` (via a temporary sibling, then renamed).
pub fn save_snapshot(snapshot: &CorpusSnapshot, path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let path = path.as_ref();
    let bytes = encode(snapshot)?;
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn body<T: DeserializeOwned>(bytes: &[u8]) -> Result<T, CorpusError> {
    ciborium::from_reader(bytes).map_err(|e| CorpusError::Decode(e.to_string()))
}

pub(crate) fn decode(bytes: &[u8]) -> Result<CorpusSnapshot, CorpusError> {
    let head = &bytes[..bytes.len().min(8)];
    if head != &SNAPSHOT_MAGIC[..head.len()] {
        return Err(CorpusError::NotASnapshot);
    }
    if bytes.len() < 12 {
        return Err(CorpusError::DigestMismatch);
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().expect("4 bytes"));
    if version != SNAPSHOT_VERSION {
        return Err(CorpusError::VersionMismatch { found: version, expected: SNAPSHOT_VERSION });
    }
    if bytes.len() < PREAMBLE {
        return Err(CorpusError::DigestMismatch);
    }
    let digest = &bytes[12..44];
    let declared = u64::from_le_bytes(bytes[44..52].try_into().expect("8 bytes"));
    let records = &bytes[PREAMBLE..];
    let mut hasher = Sha256::new();
    hasher.update(declared.to_le_bytes());
    hasher.update(records);
    if declared != records.len() as u64 || hasher.finalize().as_slice() != digest {
        return Err(CorpusError::DigestMismatch);
    }

    let mut header: Option<Header> = None;
    let mut fields = BTreeMap::new();
    let mut cohorts: Option<CohortStats> = None;
    let mut names: Option<NameIndex> = None;
    let mut profiles: Option<Vec<Profile>> = None;
    let mut rest = records;
    while !rest.is_empty() {
        if rest.len() < 9 {
            return Err(CorpusError::Decode("truncated record header".into()));
        }
        let tag = rest[0];
        let len = u64::from_le_bytes(rest[1..9].try_into().expect("8 bytes")) as usize;
        let data = rest.get(9..9 + len).ok_or_else(|| CorpusError::Decode("truncated record".into()))?;
        rest = &rest[9 + len..];
        match tag {
            TAG_HEADER => header = Some(body(data)?),
            TAG_FIELD => {
                let (kind, index): (FieldKind, FrequencyIndex) = body(data)?;
                fields.insert(kind, index);
            }
            TAG_COHORTS => cohorts = Some(body(data)?),
            TAG_NAMES => names = Some(body(data)?),
            TAG_PROFILES => profiles = Some(body(data)?),
            other => return Err(CorpusError::Decode(format!("unknown record tag {other}"))),
        }
    }

    let missing = |what: &str| CorpusError::Decode(format!("missing {what} record"));
    let header = header.ok_or_else(|| missing("header"))?;
    if fields.len() != FieldKind::ALL.len() {
        return Err(missing("field index"));
    }
    let profiles: BTreeMap<(SourceTag, String), Profile> =
        profiles.ok_or_else(|| missing("profiles"))?.into_iter().map(|p| ((p.source, p.id.clone()), p)).collect();
    Ok(CorpusSnapshot {
        profile_count: header.profile_count,
        ingest: header.ingest,
        fields,
        cohorts: cohorts.ok_or_else(|| missing("cohorts"))?,
        names: names.ok_or_else(|| missing("names"))?,
        profiles,
        build_config: header.build_config,
        content_digest: header.content_digest,
    })
}

pub fn load_snapshot(path: impl AsRef<Path>) -> Result<CorpusSnapshot, CorpusError> {
    decode(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ingest;
    use crate::profile::{serialize_profile, BasicInfo, Education, SectionInstance};

    fn small() -> CorpusSnapshot {
        let docs: Vec<String> = (0..20)
            .map(|i| {
                let p = Profile::new(format!("p{i}"), SourceTag::PrimaryNetwork, BasicInfo::new("A", format!("B{i}")))
                    .with(SectionInstance::Education(Education {
                        school_name: "Uni".into(),
                        degree_name: if i % 2 == 0 { "BA".into() } else { "Master".into() },
                        field_of_study: None,
                        start_year: None,
                        end_year: Some(2000 + i),
                    }));
                serialize_profile(&p)
            })
            .collect();
        ingest(docs.iter().map(|d| Ok::<_, std::io::Error>(d.as_str())), &BuildConfig::default()).unwrap()
    }

    #[test]
    fn round_trip_and_stable_bytes() {
        let s = small();
        let bytes = encode(&s).unwrap();
        assert_eq!(&bytes[..8], b"PLNTSNAP");
        assert_eq!(decode(&bytes).unwrap(), s);
        assert_eq!(encode(&decode(&bytes).unwrap()).unwrap(), bytes);
    }

    #[test]
    fn truncation_and_corruption_are_detected() {
        let bytes = encode(&small()).unwrap();
        for cut in [0, 5, 11, 30, PREAMBLE, bytes.len() / 2, bytes.len() - 1] {
            let err = decode(&bytes[..cut]).unwrap_err();
            assert!(matches!(err, CorpusError::DigestMismatch), "cut {cut}: {err:?}");
        }
        let mut flipped = bytes.clone();
        let last = flipped.len() - 3;
        flipped[last] ^= 0x40;
        assert!(matches!(decode(&flipped), Err(CorpusError::DigestMismatch)));
        let mut other_version = bytes.clone();
        other_version[8] = 9;
        assert!(matches!(decode(&other_version), Err(CorpusError::VersionMismatch { found: 9, .. })));
        assert!(matches!(decode(b"GIF89a-not-a-snapshot"), Err(CorpusError::NotASnapshot)));
    }
}
