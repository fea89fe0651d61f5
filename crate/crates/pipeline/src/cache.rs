//! Case results on disk, one directory per case:
//! `<dir>/<k>_<n>_<group>_<orderhash>/{generators.txt, groebner.txt, report.json, checksum}`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use angmom::model::{EliminationProblem, Group};
use log::warn;
use sha2::{Digest, Sha256};

use crate::case::{CaseSpec, Mode};
use crate::error::{PipelineError, Result};
use crate::workflow::{invariant_order, CaseReport, CaseRun};

const FILES: [&str; 3] = ["generators.txt", "groebner.txt", "report.json"];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub k: usize,
    pub n: usize,
    pub group: String,
    pub order_hash: String,
}

fn order_hash(description: &str, mode: Mode) -> String {
    let mut h = Sha256::new();
    h.update(description.as_bytes());
    if mode == Mode::QuadraticOnly {
        h.update(b"\0q-only");
    }
    format!("{:x}", h.finalize())[..16].to_string()
}

impl CacheKey {
    pub fn for_spec(spec: &CaseSpec) -> Result<Self> {
        let description = match spec.mode {
            Mode::Full => EliminationProblem::new(spec.k, spec.n, spec.group)?
                .order(spec.order)
                .describe(),
            Mode::QuadraticOnly => invariant_order().describe(),
        };
        Ok(Self::new(spec.k, spec.n, spec.group, &description, spec.mode))
    }

    pub fn for_report(report: &CaseReport) -> Self {
        CacheKey {
            k: report.k,
            n: report.n,
            group: report.group.clone(),
            order_hash: order_hash(&report.order_description, report.mode),
        }
    }

    fn new(k: usize, n: usize, group: Group, description: &str, mode: Mode) -> Self {
        CacheKey {
            k,
            n,
            group: group.to_string(),
            order_hash: order_hash(description, mode),
        }
    }

    pub fn dir_name(&self) -> String {
        format!("{}_{}_{}_{}", self.k, self.n, self.group, self.order_hash)
    }
}

fn checksum(contents: &[&str]) -> String {
    let mut h = Sha256::new();
    for (name, body) in FILES.iter().zip(contents) {
        h.update(name.as_bytes());
        h.update([0]);
        h.update(body.as_bytes());
        h.update([0]);
    }
    format!("{:x}", h.finalize())
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| PipelineError::io(&dir, e))?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entry_path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.dir_name())
    }

    /// Writes the entry into a scratch directory and renames it into place.
    pub fn store(&self, run: &CaseRun) -> Result<PathBuf> {
        let key = CacheKey::for_report(&run.report);
        let target = self.entry_path(&key);
        let unique = format!("{}-{}", std::process::id(), TMP_COUNTER.fetch_add(1, Ordering::Relaxed));
        let tmp = self.dir.join(format!(".{}.tmp-{unique}", key.dir_name()));
        fs::create_dir_all(&tmp).map_err(|e| PipelineError::io(&tmp, e))?;
        let report = run.report.to_json()?;
        let contents = [
            run.generators_text.as_str(),
            run.groebner_text.as_str(),
            report.as_str(),
        ];
        for (name, body) in FILES.iter().zip(&contents) {
            let path = tmp.join(name);
            fs::write(&path, body).map_err(|e| PipelineError::io(&path, e))?;
        }
        let path = tmp.join("checksum");
        fs::write(&path, checksum(&contents)).map_err(|e| PipelineError::io(&path, e))?;

        if target.exists() {
            let old = self.dir.join(format!(".{}.old-{unique}", key.dir_name()));
            fs::rename(&target, &old).map_err(|e| PipelineError::io(&target, e))?;
            fs::rename(&tmp, &target).map_err(|e| PipelineError::io(&target, e))?;
            let _ = fs::remove_dir_all(&old);
        } else {
            fs::rename(&tmp, &target).map_err(|e| PipelineError::io(&target, e))?;
        }
        Ok(target)
    }

    /// The stored run for `key`. Missing or corrupt entries are misses;
    /// corrupt ones are logged.
    pub fn load(&self, key: &CacheKey) -> Result<Option<CaseRun>> {
        let entry = self.entry_path(key);
        if !entry.is_dir() {
            return Ok(None);
        }
        let mut contents = Vec::with_capacity(FILES.len());
        for name in FILES.iter().chain(["checksum"].iter()) {
            match fs::read_to_string(entry.join(name)) {
                Ok(s) => contents.push(s),
                Err(e) => {
                    warn!("ignoring cache entry {}: cannot read {name}: {e}", entry.display());
                    return Ok(None);
                }
            }
        }
        let stored = contents.pop().expect("checksum read");
        let refs: Vec<&str> = contents.iter().map(String::as_str).collect();
        if stored.trim() != checksum(&refs) {
            warn!("ignoring cache entry {}: checksum mismatch", entry.display());
            return Ok(None);
        }
        let report = match CaseReport::from_json(&contents[2]) {
            Ok(r) => r,
            Err(e) => {
                warn!("ignoring cache entry {}: {e}", entry.display());
                return Ok(None);
            }
        };
        if CacheKey::for_report(&report) != *key {
            warn!("ignoring cache entry {}: stored for a different case", entry.display());
            return Ok(None);
        }
        let mut it = contents.into_iter();
        Ok(Some(CaseRun {
            generators_text: it.next().expect("three files"),
            groebner_text: it.next().expect("three files"),
            report,
        }))
    }
}
