//! Persistent memo of brute-force Hall numbers. One line per entry:
//! quiver-tag|dimL;dimM;dimN|keyL;keyM;keyN|q|count

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

pub struct HallCache {
    mem: RwLock<HashMap<String, u64>>,
    file: Option<PathBuf>,
}

fn dims_key(d: &[i64]) -> String {
    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
}

impl HallCache {
    pub fn in_memory() -> Self {
        HallCache { mem: RwLock::new(HashMap::new()), file: None }
    }

    /// Backed by `<dir>/hall-numbers.txt`, loading whatever is already there.
    pub fn with_dir(dir: &Path) -> std::io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        let file = dir.join("hall-numbers.txt");
        let mut mem = HashMap::new();
        if file.exists() {
            for line in std::fs::read_to_string(&file)?.lines() {
                if let Some((key, val)) = line.rsplit_once('|') {
                    if let Ok(v) = val.parse::<u64>() {
                        mem.insert(key.to_string(), v);
                    }
                }
            }
        }
        Ok(HallCache { mem: RwLock::new(mem), file: Some(file) })
    }

    pub fn entry_key(tag: &str, dl: &[i64], dm: &[i64], dn: &[i64], kl: &str, km: &str, kn: &str, q: i64) -> String {
        format!(
            "{tag}|{};{};{}|{kl};{km};{kn}|{q}",
            dims_key(dl),
            dims_key(dm),
            dims_key(dn)
        )
    }

    pub fn get(&self, key: &str) -> Option<u64> {
        self.mem.read().unwrap().get(key).copied()
    }

    pub fn put(&self, key: String, val: u64) {
        self.mem.write().unwrap().insert(key, val);
    }

    pub fn len(&self) -> usize {
        self.mem.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Merge the in-memory entries into the backing file, keeping entries
    /// written by other processes since load.
    pub fn flush(&self) -> std::io::Result<()> {
        let Some(file) = &self.file else {
            return Ok(());
        };
        let mut merged: HashMap<String, u64> = HashMap::new();
        if file.exists() {
            for line in std::fs::read_to_string(file)?.lines() {
                if let Some((key, val)) = line.rsplit_once('|') {
                    if let Ok(v) = val.parse::<u64>() {
                        merged.insert(key.to_string(), v);
                    }
                }
            }
        }
        for (k, v) in self.mem.read().unwrap().iter() {
            merged.insert(k.clone(), *v);
        }
        let mut lines: Vec<String> = merged.into_iter().map(|(k, v)| format!("{k}|{v}")).collect();
        lines.sort();
        let tmp = file.with_extension("tmp");
        let mut f = std::fs::File::create(&tmp)?;
        for line in lines {
            writeln!(f, "{line}")?;
        }
        f.sync_all()?;
        std::fs::rename(&tmp, file)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrips_through_the_backing_file() {
        let dir = std::env::temp_dir().join(format!("hallcache-test-{}", std::process::id()));
        let c = HallCache::with_dir(&dir).unwrap();
        let key = HallCache::entry_key("chain2", &[1, 1], &[1, 0], &[0, 1], "p0-1", "p0-0", "p1-1", 3);
        c.put(key.clone(), 7);
        c.flush().unwrap();
        let c2 = HallCache::with_dir(&dir).unwrap();
        assert_eq!(c2.get(&key), Some(7));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
