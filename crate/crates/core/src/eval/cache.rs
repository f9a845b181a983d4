//! Persistent value cache keyed by canonical index text and precision tier.
//!
//! Tier `t` certifies an absolute error of at most `10^{-6t}`. A request is
//! served by any entry of the same or a tighter tier.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use super::real::{self, Real};
use super::{EvalError, EvalResult};
use crate::index::SignedIndex;

/// Smallest tier whose tolerance is at most `tol`.
pub fn tier_for(tol: f64) -> u32 {
    let mut t = ((-tol.log10()) / 6.0 - 1e-9).ceil().max(1.0) as u32;
    while tier_tolerance(t) > tol {
        t += 1;
    }
    t
}

pub fn tier_tolerance(tier: u32) -> f64 {
    10f64.powi(-6 * tier as i32)
}

fn stored_digits(tier: u32) -> usize {
    6 * tier as usize + 6
}

fn stored_precision(tier: u32) -> usize {
    real::precision_for(tier_tolerance(tier)) + 32
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Record {
    idx: String,
    tier: u32,
    value: String,
    err: String,
}

#[derive(Debug, Clone)]
struct Stored {
    value_text: String,
    err_text: String,
    value: Real,
    err: f64,
}

impl Stored {
    fn from_result(tier: u32, r: &EvalResult) -> Stored {
        let digits = stored_digits(tier);
        let value_text = real::to_fixed(&r.value, digits);
        // decimal rounding of the value, then round the bound up
        let err = (r.error_bound + 10f64.powi(-(digits as i32))) * 1.001;
        let err_text = format!("{err:.3e}");
        let err = err_text.parse().expect("formatted f64");
        let value = real::parse_decimal(&value_text, stored_precision(tier)).expect("formatted decimal");
        Stored { value_text, err_text, value, err }
    }

    fn from_record(rec: &Record) -> Result<(SignedIndex, Stored), String> {
        let idx: SignedIndex = rec.idx.parse().map_err(|e| format!("bad index {:?}: {e}", rec.idx))?;
        if idx.to_string() != rec.idx {
            return Err(format!("index {:?} is not in canonical form", rec.idx));
        }
        if rec.tier == 0 {
            return Err("tier must be positive".into());
        }
        let value = real::parse_decimal(&rec.value, stored_precision(rec.tier))
            .ok_or_else(|| format!("bad value {:?}", rec.value))?;
        let err: f64 = rec.err.parse().map_err(|_| format!("bad error bound {:?}", rec.err))?;
        if !(err.is_finite() && err >= 0.0 && err <= tier_tolerance(rec.tier)) {
            return Err(format!("error bound {} does not fit tier {}", rec.err, rec.tier));
        }
        Ok((idx, Stored { value_text: rec.value.clone(), err_text: rec.err.clone(), value, err }))
    }

    fn result(&self) -> EvalResult {
        EvalResult::new(self.value.clone(), self.err)
    }
}

type Key = (SignedIndex, u32);

#[derive(Debug, Default)]
pub struct ValueCache {
    path: Option<PathBuf>,
    entries: RwLock<BTreeMap<Key, Stored>>,
    dirty: AtomicBool,
    write: Mutex<()>,
}

/// Outcome of [`ValueCache::open_lenient`].
#[derive(Debug)]
pub struct LenientLoad {
    pub cache: ValueCache,
    /// 1-based line numbers that could not be read.
    pub skipped: Vec<usize>,
}

impl ValueCache {
    pub fn in_memory() -> Self {
        ValueCache::default()
    }

    /// Load from `path`; a missing file is an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, EvalError> {
        let path = path.into();
        let entries = read_file(&path, false)?.0;
        Ok(ValueCache { path: Some(path), entries: RwLock::new(entries), ..Default::default() })
    }

    /// Load from `path`, skipping malformed lines instead of failing.
    pub fn open_lenient(path: impl Into<PathBuf>) -> Result<LenientLoad, EvalError> {
        let path = path.into();
        let (entries, skipped) = read_file(&path, true)?;
        let cache = ValueCache { path: Some(path), entries: RwLock::new(entries), ..Default::default() };
        if !skipped.is_empty() {
            cache.dirty.store(true, Ordering::SeqCst);
        }
        Ok(LenientLoad { cache, skipped })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn counts_by_tier(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for (_, tier) in self.entries.read().expect("cache lock").keys() {
            *out.entry(*tier).or_insert(0) += 1;
        }
        out
    }

    /// The loosest stored entry at `tier` or tighter.
    pub fn lookup(&self, idx: &SignedIndex, tier: u32) -> Option<EvalResult> {
        let entries = self.entries.read().expect("cache lock");
        entries
            .range((idx.clone(), tier)..=(idx.clone(), u32::MAX))
            .next()
            .map(|(_, s)| s.result())
    }

    /// Store a result for `tier`, returning the value as held in the cache
    /// (rounded to the stored decimal digits). An existing entry wins.
    pub fn store(&self, idx: &SignedIndex, tier: u32, result: &EvalResult) -> EvalResult {
        assert!(result.error_bound <= tier_tolerance(tier), "result does not certify tier {tier}");
        let mut entries = self.entries.write().expect("cache lock");
        let stored = entries.entry((idx.clone(), tier)).or_insert_with(|| {
            self.dirty.store(true, Ordering::SeqCst);
            Stored::from_result(tier, result)
        });
        stored.result()
    }

    /// All entries in canonical order.
    pub fn entries(&self) -> Vec<(SignedIndex, u32, EvalResult)> {
        self.entries
            .read()
            .expect("cache lock")
            .iter()
            .map(|((idx, tier), s)| (idx.clone(), *tier, s.result()))
            .collect()
    }

    /// Overwrite an entry; used when re-verifying.
    pub(crate) fn replace(&self, idx: &SignedIndex, tier: u32, result: &EvalResult) {
        self.entries
            .write()
            .expect("cache lock")
            .insert((idx.clone(), tier), Stored::from_result(tier, result));
        self.dirty.store(true, Ordering::SeqCst);
    }

    /// Merge with whatever is on disk now and write atomically. No-op for
    /// an in-memory cache or when nothing changed.
    pub fn flush(&self) -> Result<(), EvalError> {
        self.write_out(true)
    }

    /// Write exactly the in-memory entries, discarding the file contents.
    pub fn flush_replacing(&self) -> Result<(), EvalError> {
        self.dirty.store(true, Ordering::SeqCst);
        self.write_out(false)
    }

    fn write_out(&self, merge: bool) -> Result<(), EvalError> {
        let Some(path) = &self.path else { return Ok(()) };
        if !self.dirty.load(Ordering::SeqCst) {
            return Ok(());
        }
        let _guard = self.write.lock().expect("cache write lock");
        let mut all = if merge && path.exists() { read_file(path, true)?.0 } else { BTreeMap::new() };
        for (k, v) in self.entries.read().expect("cache lock").iter() {
            all.insert(k.clone(), v.clone());
        }
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        fs::create_dir_all(&dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
        for ((idx, tier), s) in &all {
            let rec = Record { idx: idx.to_string(), tier: *tier, value: s.value_text.clone(), err: s.err_text.clone() };
            serde_json::to_writer(&mut tmp, &rec).map_err(std::io::Error::from)?;
            tmp.write_all(b"\n")?;
        }
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        self.dirty.store(false, Ordering::SeqCst);
        Ok(())
    }
}

fn read_file(path: &Path, lenient: bool) -> Result<(BTreeMap<Key, Stored>, Vec<usize>), EvalError> {
    let mut entries: BTreeMap<Key, Stored> = BTreeMap::new();
    let mut skipped = Vec::new();
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok((entries, skipped)),
        Err(e) => return Err(e.into()),
    };
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parsed = serde_json::from_str::<Record>(line)
            .map_err(|e| e.to_string())
            .and_then(|rec| Stored::from_record(&rec).map(|(idx, s)| ((idx, rec.tier), s)));
        match parsed {
            Ok((key, s)) => {
                let keep_old = entries.get(&key).is_some_and(|old| old.err <= s.err);
                if !keep_old {
                    entries.insert(key, s);
                }
            }
            Err(_) if lenient => skipped.push(i + 1),
            Err(reason) => {
                return Err(EvalError::CacheCorrupt { path: path.display().to_string(), line: i + 1, reason })
            }
        }
    }
    Ok((entries, skipped))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(v: i64, err: f64) -> EvalResult {
        EvalResult::new(real::from_int(v, 128), err)
    }

    #[test]
    fn tiers() {
        assert_eq!(tier_for(1e-6), 1);
        assert_eq!(tier_for(1e-4), 1);
        assert_eq!(tier_for(1e-10), 2);
        assert_eq!(tier_for(1e-12), 2);
        assert_eq!(tier_for(0.999e-12), 3);
        assert_eq!(tier_for(1e-30), 5);
        for tol in [3e-5, 1e-7, 2.5e-13, 1e-20] {
            assert!(tier_tolerance(tier_for(tol)) <= tol);
        }
    }

    #[test]
    fn tighter_hits_looser_misses() {
        let c = ValueCache::in_memory();
        let idx = SignedIndex::plain([2]);
        assert!(c.lookup(&idx, 1).is_none());
        c.store(&idx, 2, &result(1, 1e-13));
        assert!(c.lookup(&idx, 1).is_some());
        assert!(c.lookup(&idx, 2).is_some());
        assert!(c.lookup(&idx, 3).is_none());
        assert!(c.lookup(&SignedIndex::plain([3]), 1).is_none());
    }

    #[test]
    fn store_is_idempotent() {
        let c = ValueCache::in_memory();
        let idx = SignedIndex::plain([3]);
        let a = c.store(&idx, 1, &result(5, 1e-8));
        let b = c.store(&idx, 1, &result(6, 1e-8));
        assert_eq!(a.value, b.value);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn persists_and_reloads() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("values.ndjson");
        let c = ValueCache::open(&path).unwrap();
        c.store(&SignedIndex::alt(&[1, -2]), 2, &result(-3, 1e-14));
        c.store(&SignedIndex::plain([2]), 1, &result(2, 1e-8));
        c.flush().unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.contains(r#""idx":"z(1,-2)""#));
        let d = ValueCache::open(&path).unwrap();
        assert_eq!(d.counts_by_tier(), BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(d.lookup(&SignedIndex::plain([2]), 1).unwrap().to_f64(), 2.0);
    }

    #[test]
    fn corrupt_line_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("values.ndjson");
        fs::write(
            &path,
            "{\"idx\":\"z(2)\",\"tier\":1,\"value\":\"1.6449340668\",\"err\":\"1e-9\"}\nnot json\n",
        )
        .unwrap();
        match ValueCache::open(&path) {
            Err(EvalError::CacheCorrupt { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected corruption, got {other:?}"),
        }
        let lenient = ValueCache::open_lenient(&path).unwrap();
        assert_eq!(lenient.skipped, vec![2]);
        assert_eq!(lenient.cache.len(), 1);
    }

    #[test]
    fn loose_bound_for_tier_is_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("values.ndjson");
        fs::write(&path, "{\"idx\":\"z(2)\",\"tier\":2,\"value\":\"1.64\",\"err\":\"1e-3\"}\n").unwrap();
        assert!(matches!(ValueCache::open(&path), Err(EvalError::CacheCorrupt { line: 1, .. })));
    }
}
