//! On-disk read-through store for built tensors.
//!
//! Layout: `<root>/b<basis>-f<format>/<kind>-n<n>-m<m>.sunt`. The version
//! directory encodes the generator-ordering version and the codec format
//! version, so bumping either makes older entries invisible. Writes go through
//! a temporary file and a rename while holding an exclusive lock on
//! `<root>/.lock`. Payload validation is left to the caller: anything that
//! fails to decode is rebuilt and overwritten.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};

use serde::{Deserialize, Serialize};
use sun_casimir::context::BASIS_ORDERING_VERSION;
use sun_casimir::tensor::codec::FORMAT_VERSION;
use sun_casimir::{ArtifactKey, ArtifactStore};

use crate::CliError;

pub const CACHE_ENV: &str = "SUNCAS_CACHE_DIR";
const EXTENSION: &str = "sunt";
const LOCK_FILE: &str = ".lock";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CacheVersion {
    pub basis: u16,
    pub format: u16,
}

impl CacheVersion {
    pub fn current() -> Self {
        CacheVersion {
            basis: BASIS_ORDERING_VERSION,
            format: FORMAT_VERSION,
        }
    }

    fn dir_name(self) -> String {
        format!("b{}-f{}", self.basis, self.format)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    /// Path relative to the cache root.
    pub path: PathBuf,
    pub bytes: u64,
    /// Whether the entry belongs to the current version directory.
    pub current: bool,
}

#[derive(Debug)]
pub struct DiskCache {
    root: PathBuf,
    version: CacheVersion,
    warned: AtomicBool,
}

/// `$SUNCAS_CACHE_DIR`, else `$XDG_CACHE_HOME/suncas`, else `$HOME/.cache/suncas`.
pub fn default_root() -> Option<PathBuf> {
    let env = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    env(CACHE_ENV)
        .or_else(|| env("XDG_CACHE_HOME").map(|p| p.join("suncas")))
        .or_else(|| env("HOME").map(|p| p.join(".cache").join("suncas")))
}

impl DiskCache {
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, CliError> {
        Self::open_versioned(root, CacheVersion::current())
    }

    /// Opens the cache and proves it writable by taking the lock once.
    pub fn open_versioned(root: impl Into<PathBuf>, version: CacheVersion) -> Result<Self, CliError> {
        let root = root.into();
        let cache = DiskCache {
            root,
            version,
            warned: AtomicBool::new(false),
        };
        let unwritable = |e: io::Error| CliError::CacheUnavailable {
            path: cache.root.clone(),
            source: e,
        };
        fs::create_dir_all(cache.version_dir()).map_err(unwritable)?;
        cache.lock().map_err(unwritable)?;
        Ok(cache)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn version_dir(&self) -> PathBuf {
        self.root.join(self.version.dir_name())
    }

    pub fn entry_path(&self, key: &ArtifactKey) -> PathBuf {
        self.version_dir()
            .join(format!("{}-n{}-m{}.{EXTENSION}", key.kind.tag(), key.n, key.m))
    }

    /// Exclusive lock held until the returned handle is dropped.
    fn lock(&self) -> io::Result<File> {
        let f = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(self.root.join(LOCK_FILE))?;
        f.lock()?;
        Ok(f)
    }

    fn write_entry(&self, path: &Path, bytes: &[u8]) -> io::Result<()> {
        let _guard = self.lock()?;
        let tmp = path.with_extension(format!("{EXTENSION}.tmp{}", std::process::id()));
        let mut f = File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    }

    /// Every entry under the root, across version directories.
    pub fn list(&self) -> io::Result<Vec<CacheEntry>> {
        let current = self.version.dir_name();
        let mut out = Vec::new();
        for dir in fs::read_dir(&self.root)? {
            let dir = dir?;
            if !dir.file_type()?.is_dir() {
                continue;
            }
            let name = dir.file_name();
            for file in fs::read_dir(dir.path())? {
                let file = file?;
                let path = file.path();
                if path.extension().is_some_and(|e| e == EXTENSION) {
                    out.push(CacheEntry {
                        path: Path::new(&name).join(file.file_name()),
                        bytes: file.metadata()?.len(),
                        current: name.to_str() == Some(current.as_str()),
                    });
                }
            }
        }
        out.sort_by(|a, b| a.path.cmp(&b.path));
        Ok(out)
    }

    /// Removes every version directory; returns the number of entries removed.
    pub fn clear(&self) -> io::Result<usize> {
        let _guard = self.lock()?;
        let removed = self.list()?.len();
        for dir in fs::read_dir(&self.root)? {
            let dir = dir?;
            if dir.file_type()?.is_dir() {
                fs::remove_dir_all(dir.path())?;
            }
        }
        fs::create_dir_all(self.version_dir())?;
        Ok(removed)
    }

    fn warn_once(&self, what: &str, err: &io::Error) {
        if !self.warned.swap(true, Ordering::Relaxed) {
            eprintln!(
                "warning: cache {what} failed under {}: {err}; continuing uncached",
                self.root.display()
            );
        }
    }
}

impl ArtifactStore for DiskCache {
    fn load(&self, key: &ArtifactKey) -> Option<Vec<u8>> {
        fs::read(self.entry_path(key)).ok()
    }

    fn save(&self, key: &ArtifactKey, bytes: &[u8]) {
        if let Err(e) = self.write_entry(&self.entry_path(key), bytes) {
            self.warn_once("write", &e);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sun_casimir::ArtifactKind;

    fn key(m: usize) -> ArtifactKey {
        ArtifactKey {
            kind: ArtifactKind::Omega,
            n: 3,
            m,
        }
    }

    #[test]
    fn save_load_list_clear() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        assert!(cache.load(&key(3)).is_none());
        cache.save(&key(3), b"payload");
        assert_eq!(cache.load(&key(3)).as_deref(), Some(&b"payload"[..]));
        let listed = cache.list().unwrap();
        assert_eq!(listed.len(), 1);
        assert!(listed[0].current && listed[0].bytes == 7);
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.list().unwrap().is_empty());
    }

    #[test]
    fn version_bump_hides_old_entries() {
        let dir = tempfile::tempdir().unwrap();
        let old = DiskCache::open(dir.path()).unwrap();
        old.save(&key(2), b"x");
        let bumped = CacheVersion {
            basis: BASIS_ORDERING_VERSION + 1,
            ..CacheVersion::current()
        };
        let new = DiskCache::open_versioned(dir.path(), bumped).unwrap();
        assert!(new.load(&key(2)).is_none());
        assert!(new.list().unwrap().iter().all(|e| !e.current));
    }
}
