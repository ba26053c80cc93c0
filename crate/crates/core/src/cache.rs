//! On-disk cache of Pieri tensors.
//!
//! Each tensor lives in its own directory named by the SHA-256 of its key
//! `(λ, μ, U, n, basis version)`. The directory holds `f1.mtx`, `f2.mtx`
//! and a `manifest.json` recording sizes and checksums. Entries are written
//! to a temporary directory and renamed into place, so readers never see a
//! partial entry. Entries whose manifest, version or checksums do not match
//! are discarded with a warning and rebuilt.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactla::{read_matrix_market, to_matrix_market_string};
use crate::partitions::Partition;
use crate::pieri::{build_pieri_tensor, PieriTensor, UKind};
use crate::schurmodule::BASIS_VERSION;

/// Version of the on-disk layout.
pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedFile {
    pub path: String,
    pub size: u64,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheManifest {
    pub version: u32,
    pub basis_version: u32,
    pub key: String,
    pub lambda: Partition,
    pub mu: Partition,
    pub u: UKind,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub dim_u: usize,
    pub scale_note: String,
    pub f1: CachedFile,
    pub f2: CachedFile,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Content hash identifying a tensor.
pub fn cache_key(lambda: &Partition, mu: &Partition, u: UKind, n: usize) -> String {
    sha256_hex(format!("lambda={lambda};mu={mu};u={u};n={n};basis={BASIS_VERSION}").as_bytes())
}

#[derive(Clone, Debug)]
pub struct PieriCache {
    root: PathBuf,
}

impl PieriCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        PieriCache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn entry_dir(&self, key: &str) -> PathBuf {
        self.root.join("pieri").join(key)
    }

    pub fn get_or_build(&self, lambda: &Partition, mu: &Partition, u: UKind, n: usize) -> Result<PieriTensor> {
        if let Some(t) = self.load(lambda, mu, u, n) {
            return Ok(t);
        }
        let t = build_pieri_tensor(lambda, mu, u, n)?;
        if let Err(e) = self.store(&t) {
            log::warn!("could not write cache entry: {e}");
        }
        Ok(t)
    }

    /// Returns the cached tensor, or `None` when absent or invalid.
    pub fn load(&self, lambda: &Partition, mu: &Partition, u: UKind, n: usize) -> Option<PieriTensor> {
        let key = cache_key(lambda, mu, u, n);
        let dir = self.entry_dir(&key);
        if !dir.exists() {
            return None;
        }
        match read_entry(&dir, &key) {
            Ok(t) => Some(t),
            Err(e) => {
                log::warn!("discarding cache entry {}: {e}", dir.display());
                let _ = fs::remove_dir_all(&dir);
                None
            }
        }
    }

    pub fn store(&self, t: &PieriTensor) -> Result<PathBuf> {
        let key = cache_key(&t.lambda, &t.mu, t.u, t.n);
        let parent = self.root.join("pieri");
        fs::create_dir_all(&parent)?;
        let tmp = tempfile::Builder::new().prefix(".tmp-").tempdir_in(&parent)?;
        let f1 = to_matrix_market_string(&t.f1);
        let f2 = to_matrix_market_string(&t.f2);
        fs::write(tmp.path().join("f1.mtx"), &f1)?;
        fs::write(tmp.path().join("f2.mtx"), &f2)?;
        let manifest = CacheManifest {
            version: CACHE_FORMAT_VERSION,
            basis_version: t.basis_version,
            key: key.clone(),
            lambda: t.lambda.clone(),
            mu: t.mu.clone(),
            u: t.u,
            n: t.n,
            k: t.k,
            l: t.l,
            dim_u: t.dim_u,
            scale_note: t.scale_note.clone(),
            f1: CachedFile { path: "f1.mtx".into(), size: f1.len() as u64, sha256: sha256_hex(f1.as_bytes()) },
            f2: CachedFile { path: "f2.mtx".into(), size: f2.len() as u64, sha256: sha256_hex(f2.as_bytes()) },
        };
        fs::write(tmp.path().join("manifest.json"), serde_json::to_vec_pretty(&manifest)?)?;
        let dest = self.entry_dir(&key);
        let staged = tmp.keep();
        match fs::rename(&staged, &dest) {
            Ok(()) => Ok(dest),
            Err(_) if dest.exists() => {
                // another writer won the race
                let _ = fs::remove_dir_all(&staged);
                Ok(dest)
            }
            Err(e) => {
                let _ = fs::remove_dir_all(&staged);
                Err(e.into())
            }
        }
    }

    /// Manifests of all valid entries, sorted by key.
    pub fn list(&self) -> Result<Vec<CacheManifest>> {
        let dir = self.root.join("pieri");
        if !dir.exists() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for entry in fs::read_dir(&dir)? {
            let path = entry?.path();
            let name = path.file_name().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            if name.starts_with('.') {
                continue;
            }
            if let Ok(bytes) = fs::read(path.join("manifest.json")) {
                if let Ok(m) = serde_json::from_slice::<CacheManifest>(&bytes) {
                    out.push(m);
                }
            }
        }
        out.sort_by(|a, b| a.key.cmp(&b.key));
        Ok(out)
    }

    /// Removes every entry; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let dir = self.root.join("pieri");
        if !dir.exists() {
            return Ok(0);
        }
        let count = fs::read_dir(&dir)?.count();
        fs::remove_dir_all(&dir)?;
        Ok(count)
    }
}

fn read_entry(dir: &Path, key: &str) -> Result<PieriTensor> {
    let manifest: CacheManifest = serde_json::from_slice(&fs::read(dir.join("manifest.json"))?)?;
    if manifest.version != CACHE_FORMAT_VERSION || manifest.basis_version != BASIS_VERSION {
        return Err(Error::Parse(format!(
            "version mismatch (format {}, basis {})",
            manifest.version, manifest.basis_version
        )));
    }
    if manifest.key != key {
        return Err(Error::Parse("manifest key does not match its directory".into()));
    }
    let load = |f: &CachedFile| -> Result<crate::exactla::SparseIntMatrix> {
        let bytes = fs::read(dir.join(&f.path))?;
        if bytes.len() as u64 != f.size || sha256_hex(&bytes) != f.sha256 {
            return Err(Error::Parse(format!("checksum mismatch for {}", f.path)));
        }
        read_matrix_market(bytes.as_slice())
    };
    let f1 = load(&manifest.f1)?;
    let f2 = load(&manifest.f2)?;
    if (f1.rows(), f1.cols()) != (manifest.k * manifest.dim_u, manifest.l)
        || (f2.rows(), f2.cols()) != (manifest.l * manifest.dim_u, manifest.k)
    {
        return Err(Error::Parse("cached matrix shapes do not match the manifest".into()));
    }
    Ok(PieriTensor {
        lambda: manifest.lambda,
        mu: manifest.mu,
        n: manifest.n,
        u: manifest.u,
        k: manifest.k,
        l: manifest.l,
        dim_u: manifest.dim_u,
        f1,
        f2,
        scale_note: manifest.scale_note,
        basis_version: manifest.basis_version,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = PieriCache::new(dir.path());
        let (l, m) = (p(&[2, 1]), p(&[2, 2]));
        assert!(cache.load(&l, &m, UKind::V, 3).is_none());
        let built = cache.get_or_build(&l, &m, UKind::V, 3).unwrap();
        let loaded = cache.load(&l, &m, UKind::V, 3).unwrap();
        assert_eq!(built, loaded);
        assert_eq!(cache.list().unwrap().len(), 1);

        let f1 = dir.path().join("pieri").join(cache_key(&l, &m, UKind::V, 3)).join("f1.mtx");
        let mut text = fs::read_to_string(&f1).unwrap();
        text.push_str("% tampered\n");
        fs::write(&f1, text).unwrap();
        assert!(cache.load(&l, &m, UKind::V, 3).is_none());
        assert_eq!(cache.get_or_build(&l, &m, UKind::V, 3).unwrap(), built);
        assert_eq!(cache.clear().unwrap(), 1);
    }
}
