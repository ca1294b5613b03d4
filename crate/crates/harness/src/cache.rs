//! One file per task under a cache directory, named by a SHA-256 digest of
//! the task and the code version.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::report::Report;
use crate::HarnessError;

/// Bumped whenever a check changes meaning.
pub const CHECK_REVISION: u32 = 1;

/// Environment variable that overrides the configured cache directory.
pub const CACHE_ENV: &str = "CSFLAB_CACHE";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self, HarnessError> {
        std::fs::create_dir_all(dir).map_err(|source| HarnessError::Io { path: dir.to_path_buf(), source })?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    /// `CSFLAB_CACHE` if set and non-empty, else `configured`.
    pub fn resolve(configured: Option<&Path>) -> Option<PathBuf> {
        match std::env::var_os(CACHE_ENV) {
            Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
            _ => configured.map(Path::to_path_buf),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored report, or `None` when absent or unreadable.
    pub fn get(&self, key: &str) -> Option<Report> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, key: &str, report: &Report) -> Result<(), HarnessError> {
        let path = self.path(key);
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        let io = |source| HarnessError::Io { path: path.clone(), source };
        std::fs::write(&tmp, report.to_line()).map_err(io)?;
        std::fs::rename(&tmp, &path).map_err(io)
    }
}

/// Digest of everything that determines a task's result.
pub fn task_key(conjecture: &str, m: &[usize], gamma: Option<&[usize]>, lambda: &[usize]) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "csflab/{}/{CHECK_REVISION}|{conjecture}|{m:?}|{gamma:?}|{lambda:?}",
        env!("CARGO_PKG_VERSION")
    ));
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Whether a cache hit is recomputed; deterministic in `seed` and `key`.
pub fn audit_selected(seed: u64, key: &str, rate: f64) -> bool {
    let prefix = u64::from_str_radix(&key[..16], 16).unwrap_or(0);
    ChaCha8Rng::seed_from_u64(seed ^ prefix).gen_bool(rate.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjecture::{Conjecture, Status};

    fn report() -> Report {
        Report {
            conjecture: Conjecture::Nonzero,
            n: 2,
            m: vec![0, 0],
            gamma: None,
            lambda: vec![2],
            status: Status::Holds,
            detail: None,
            witness: None,
        }
    }

    #[test]
    fn keys_separate_tasks() {
        let a = task_key("bounds", &[0, 0, 1], None, &[2, 1]);
        assert_eq!(a.len(), 64);
        assert_eq!(a, task_key("bounds", &[0, 0, 1], None, &[2, 1]));
        assert_ne!(a, task_key("bounds", &[0, 0, 1], None, &[3]));
        assert_ne!(a, task_key("nonzero", &[0, 0, 1], None, &[2, 1]));
        assert_ne!(a, task_key("bounds", &[0, 0, 1], Some(&[2, 2]), &[2, 1]));
    }

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(&dir.path().join("c")).unwrap();
        let key = task_key("nonzero", &[0, 0], None, &[2]);
        assert!(cache.get(&key).is_none());
        cache.put(&key, &report()).unwrap();
        assert_eq!(cache.get(&key), Some(report()));
        std::fs::write(cache.dir().join(format!("{key}.json")), "{not json").unwrap();
        assert!(cache.get(&key).is_none());
    }

    #[test]
    fn audit_rate_is_roughly_respected() {
        let picked = (0..2000)
            .map(|i| task_key("bounds", &[i], None, &[1]))
            .filter(|k| audit_selected(7, k, 0.1))
            .count();
        assert!((120..=280).contains(&picked), "{picked}");
        assert!(!audit_selected(7, &task_key("bounds", &[0], None, &[1]), 0.0));
        assert!(audit_selected(7, &task_key("bounds", &[0], None, &[1]), 1.0));
    }
}
