//! The JSON run report and the on-disk result cache.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Result;

/// How a run ended, which also fixes the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Everything checked holds, or the command only lists data.
    Ok,
    /// A checked property fails.
    Fails,
    /// No failure found, but some verdict only holds up to fuel.
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fails => 1,
            Status::Inconclusive => 3,
        }
    }

    /// The worse of two statuses.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Ok,
        }
    }
}

/// Exit code for usage errors.
pub const USAGE_EXIT: i32 = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// The carrier name or file argument.
    pub input: String,
    /// SHA-256 of the input bytes (file contents, or the catalog name).
    pub input_digest: String,
    pub bounds: Value,
    pub status: Status,
    pub result: Value,
    /// Wall-clock time; only filled in when asked for, so that reports are
    /// reproducible byte for byte by default.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report without its timing, for comparisons.
    pub fn untimed(&self) -> RunReport {
        RunReport { timing_ms: None, ..self.clone() }
    }

    /// Cache key over command, input digest and bounds.
    pub fn key(&self) -> String {
        digest(format!("{}\n{}\n{}", self.command, self.input_digest, self.bounds).as_bytes())
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reports stored as `<key>.json` files in one directory.
#[derive(Clone, Debug)]
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(ResultCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<RunReport> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Writes to a temporary file first and renames it into place, so a
    /// reader never sees a partial report.
    pub fn put(&self, report: &RunReport) -> Result<()> {
        let key = report.key();
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(report.untimed().to_json().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path(&key))?;
        Ok(())
    }

    /// A cached report agrees with a fresh one on everything but timing.
    pub fn verify(&self, fresh: &RunReport) -> Option<bool> {
        self.get(&fresh.key()).map(|cached| cached.untimed() == fresh.untimed())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        RunReport {
            command: "dim".into(),
            input: "chain:2".into(),
            input_digest: digest(b"chain:2"),
            bounds: serde_json::json!({"max": 1}),
            status: Status::Ok,
            result: serde_json::json!({"dim": 0}),
            timing_ms: Some(3),
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::open(dir.path()).unwrap();
        let r = sample();
        assert!(cache.get(&r.key()).is_none());
        cache.put(&r).unwrap();
        assert_eq!(cache.get(&r.key()), Some(r.untimed()));
        assert_eq!(cache.verify(&r), Some(true));
        let other = RunReport { result: serde_json::json!({"dim": 1}), ..r };
        assert_eq!(cache.verify(&other), Some(false));
    }

    #[test]
    fn statuses_combine() {
        assert_eq!(Status::Ok.and(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Inconclusive.and(Status::Fails).exit_code(), 1);
    }
}
