use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

/// Bumping this orphans every existing entry.
pub const FORMAT_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "WEYLSPEC_CACHE_DIR";

/// Content-addressed JSON store keyed by module name, parameters and
/// format version.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: u32,
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    version: u32,
    module: String,
    params: String,
    checksum: String,
    payload: String,
}

fn sha256_hex(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    hex::encode(h.finalize())
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into(), version: FORMAT_VERSION }
    }

    /// `$WEYLSPEC_CACHE_DIR` if set, else `fallback`.
    pub fn from_env(fallback: Option<PathBuf>) -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from).or(fallback).map(Cache::new)
    }

    pub fn with_version(mut self, version: u32) -> Self {
        self.version = version;
        self
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for<P: Serialize>(&self, module: &str, params: &P) -> Result<PathBuf> {
        let params = serde_json::to_string(params)?;
        let key = sha256_hex(&[module, &self.version.to_string(), &params]);
        Ok(self.dir.join(format!("{module}-{}.json", &key[..32])))
    }

    pub fn store<P: Serialize, T: Serialize>(&self, module: &str, params: &P, value: &T) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(module, params)?;
        let payload = serde_json::to_string(value)?;
        let env = Envelope {
            version: self.version,
            module: module.to_string(),
            params: serde_json::to_string(params)?,
            checksum: sha256_hex(&[&payload]),
            payload,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&env)?.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(path)
    }

    /// `None` when absent; corrupt or mismatched entries are reported and
    /// treated as absent.
    pub fn load<P: Serialize, T: DeserializeOwned>(&self, module: &str, params: &P) -> Result<Option<T>> {
        let path = self.path_for(module, params)?;
        let raw = match fs::read_to_string(&path) {
            Ok(s) => s,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let params = serde_json::to_string(params)?;
        let checked = serde_json::from_str::<Envelope>(&raw).ok().filter(|env| {
            env.version == self.version && env.module == module && env.params == params && env.checksum == sha256_hex(&[&env.payload])
        });
        match checked.and_then(|env| serde_json::from_str::<T>(&env.payload).ok()) {
            Some(v) => Ok(Some(v)),
            None => {
                log::warn!("discarding corrupt cache entry {}", path.display());
                Ok(None)
            }
        }
    }

    /// Loads, or computes and stores.
    pub fn get_or_compute<P, T, F>(&self, module: &str, params: &P, compute: F) -> Result<T>
    where
        P: Serialize,
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(v) = self.load(module, params)? {
            return Ok(v);
        }
        let v = compute()?;
        self.store(module, params, &v)?;
        Ok(v)
    }
}
