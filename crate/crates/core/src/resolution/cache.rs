//! Memoized Betti tables, keyed by ideal content and characteristic.
//!
//! Two layers: an in-process map and an optional directory of JSON files.
//! Concurrent requests for the same key compute once; the others wait.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use sha2::{Digest, Sha256};

use super::{betti_tables, BettiOptions, BettiTable, FieldChar, InvariantReport};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

/// Bumped whenever table contents could change for the same input.
pub const ENGINE_VERSION: u32 = 1;

/// Environment variable naming a default on-disk cache directory.
pub const CACHE_DIR_ENV: &str = "MONFIBER_CACHE_DIR";

type Tables = Arc<Vec<BettiTable>>;
type Slot = Arc<OnceLock<Result<Tables>>>;

pub struct BettiCache {
    chars: Vec<FieldChar>,
    opts: BettiOptions,
    dir: Option<PathBuf>,
    mem: Mutex<HashMap<String, Slot>>,
}

/// Stable digest of a ring and its ideal's minimal generators.
pub fn ideal_digest(a: &MonomialIdeal) -> String {
    let mut h = Sha256::new();
    h.update(a.ring().nvars().to_le_bytes());
    for g in a.gens() {
        for &e in g.exps() {
            h.update(e.to_le_bytes());
        }
        h.update([0xff]);
    }
    hex::encode(h.finalize())
}

impl BettiCache {
    /// Cache computing every table for all of `chars` at once.
    pub fn new(chars: Vec<FieldChar>, opts: BettiOptions) -> Self {
        BettiCache {
            chars,
            opts,
            dir: None,
            mem: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.dir = Some(dir.into());
        self
    }

    /// Uses the directory in `MONFIBER_CACHE_DIR` if it is set.
    pub fn with_env_dir(self) -> Self {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => self.with_dir(PathBuf::from(d)),
            _ => self,
        }
    }

    pub fn chars(&self) -> &[FieldChar] {
        &self.chars
    }

    pub fn len(&self) -> usize {
        self.mem.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn file(&self, dir: &Path, digest: &str, p: FieldChar) -> PathBuf {
        dir.join(format!("{digest}-{p}-v{ENGINE_VERSION}.json"))
    }

    fn load(&self, digest: &str) -> Option<Vec<BettiTable>> {
        let dir = self.dir.as_ref()?;
        self.chars
            .iter()
            .map(|&p| {
                let text = std::fs::read_to_string(self.file(dir, digest, p)).ok()?;
                serde_json::from_str(&text).ok()
            })
            .collect()
    }

    fn store(&self, digest: &str, tables: &[BettiTable]) {
        let Some(dir) = &self.dir else { return };
        if std::fs::create_dir_all(dir).is_err() {
            return;
        }
        for t in tables {
            if let Ok(text) = serde_json::to_string(t) {
                // write-then-rename so readers never see partial files
                let path = self.file(dir, digest, t.char);
                let tmp = path.with_extension(format!("tmp{}", std::process::id()));
                if std::fs::write(&tmp, text).is_ok() {
                    let _ = std::fs::rename(&tmp, &path);
                }
            }
        }
    }

    /// Tables for every configured characteristic, in configuration order.
    /// Failures are memoized like successes.
    pub fn tables(&self, a: &MonomialIdeal) -> Result<Tables> {
        let digest = ideal_digest(a);
        let slot = self
            .mem
            .lock()
            .unwrap()
            .entry(digest.clone())
            .or_default()
            .clone();
        slot.get_or_init(|| {
            if let Some(t) = self.load(&digest) {
                return Ok(Arc::new(t));
            }
            let t = betti_tables(a, &self.chars, self.opts)?;
            self.store(&digest, &t);
            Ok(Arc::new(t))
        })
        .clone()
    }

    fn position(&self, p: FieldChar) -> Result<usize> {
        self.chars
            .iter()
            .position(|&c| c == p)
            .ok_or_else(|| Error::domain(format!("characteristic {p} not configured in cache")))
    }

    /// Table for one configured characteristic.
    pub fn table(&self, a: &MonomialIdeal, p: FieldChar) -> Result<BettiTable> {
        let k = self.position(p)?;
        Ok(self.tables(a)?[k].clone())
    }

    /// Invariants of a proper ideal, the zero ideal included.
    pub fn invariants(&self, a: &MonomialIdeal, p: FieldChar) -> Result<InvariantReport> {
        let k = self.position(p)?;
        if a.is_unit() {
            return Err(Error::domain("invariants of the unit ideal"));
        }
        if a.is_zero() {
            return Ok(InvariantReport::of_zero(a.ring().nvars(), p));
        }
        Ok(InvariantReport::from_table(a, &self.tables(a)?[k]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn memory_and_disk_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let chars = FieldChar::default_set();
        let r = Ring::new(&["x", "y", "z"]).unwrap();
        let a = MonomialIdeal::from_exponents(&r, &[&[1, 1, 0], &[0, 1, 1]]).unwrap();
        let c = BettiCache::new(chars.clone(), BettiOptions::default()).with_dir(dir.path());
        let first = c.tables(&a).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.tables(&a).unwrap(), first);
        assert!(Arc::ptr_eq(&c.tables(&a).unwrap(), &first));
        let files = std::fs::read_dir(dir.path()).unwrap().count();
        assert_eq!(files, 3);
        let fresh = BettiCache::new(chars, BettiOptions::default()).with_dir(dir.path());
        assert_eq!(&fresh.load(&ideal_digest(&a)).unwrap(), &*first);
        assert_eq!(
            fresh.table(&a, FieldChar::new(3).unwrap()).unwrap(),
            first[1]
        );
    }

    #[test]
    fn errors_are_memoized() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let opts = BettiOptions {
            budget: 2,
            ..Default::default()
        };
        let c = BettiCache::new(vec![FieldChar::new(2).unwrap()], opts);
        let a = MonomialIdeal::maximal(&r).power(3).unwrap();
        assert!(c.tables(&a).unwrap_err().is_resource());
        assert!(c.tables(&a).unwrap_err().is_resource());
        assert_eq!(c.len(), 1);
        let z = c
            .invariants(&MonomialIdeal::zero(&r), FieldChar::new(2).unwrap())
            .unwrap();
        assert_eq!(z.depth_quotient, 2);
    }
}
