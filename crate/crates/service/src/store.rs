use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use serde::Serialize;
use slopepcp::data::{load_csv, preset, preset_names, Dataset};

/// Summary of one stored dataset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DatasetInfo {
    pub id: String,
    pub name: String,
    pub n: usize,
    pub d: usize,
    pub dimensions: Vec<String>,
    pub labelled: bool,
    pub preset: bool,
}

struct Entry {
    info: DatasetInfo,
    data: Arc<Dataset>,
}

/// Presets plus uploads, append-only for the life of the process.
pub struct DatasetStore {
    entries: RwLock<Vec<Entry>>,
    next_upload: RwLock<u64>,
    spool: Option<PathBuf>,
}

fn info(id: String, name: String, data: &Dataset, preset: bool) -> DatasetInfo {
    DatasetInfo {
        id,
        name,
        n: data.len(),
        d: data.dims(),
        dimensions: data.names().to_vec(),
        labelled: data.labels().is_some(),
        preset,
    }
}

impl DatasetStore {
    /// Builds the store with every built-in preset. With a spool directory,
    /// previously spooled uploads (`upload-<k>.csv`) are loaded back.
    pub fn new(spool: Option<PathBuf>) -> slopepcp::Result<Self> {
        let mut entries = Vec::new();
        for name in preset_names() {
            let data = preset(name)?.generate()?;
            entries.push(Entry { info: info(name.to_string(), name.to_string(), &data, true), data: Arc::new(data) });
        }
        let mut next = 1;
        if let Some(dir) = &spool {
            std::fs::create_dir_all(dir).map_err(|e| slopepcp::Error::io(dir, e))?;
            for (k, path) in spooled_files(dir)? {
                let bytes = std::fs::read(&path).map_err(|e| slopepcp::Error::io(&path, e))?;
                let Ok(data) = load_csv(&bytes) else {
                    tracing::warn!(path = %path.display(), "skipping unreadable spooled dataset");
                    continue;
                };
                let id = upload_id(k);
                entries.push(Entry { info: info(id.clone(), id, &data, false), data: Arc::new(data) });
                next = next.max(k + 1);
            }
        }
        Ok(Self { entries: RwLock::new(entries), next_upload: RwLock::new(next), spool })
    }

    pub fn list(&self) -> Vec<DatasetInfo> {
        self.entries.read().unwrap().iter().map(|e| e.info.clone()).collect()
    }

    pub fn get(&self, id: &str) -> Option<Arc<Dataset>> {
        self.entries.read().unwrap().iter().find(|e| e.info.id == id).map(|e| e.data.clone())
    }

    /// Parses and stores a CSV upload under a fresh id.
    pub fn insert_csv(&self, bytes: &[u8], name: Option<String>) -> slopepcp::Result<DatasetInfo> {
        let data = load_csv(bytes)?;
        let k = {
            let mut next = self.next_upload.write().unwrap();
            let k = *next;
            *next += 1;
            k
        };
        let id = upload_id(k);
        if let Some(dir) = &self.spool {
            let path = dir.join(format!("{id}.csv"));
            std::fs::write(&path, bytes).map_err(|e| slopepcp::Error::io(&path, e))?;
        }
        let info = info(id.clone(), name.unwrap_or(id), &data, false);
        self.entries.write().unwrap().push(Entry { info: info.clone(), data: Arc::new(data) });
        Ok(info)
    }
}

fn upload_id(k: u64) -> String {
    format!("upload-{k}")
}

fn spooled_files(dir: &Path) -> slopepcp::Result<Vec<(u64, PathBuf)>> {
    let mut found = Vec::new();
    let read = std::fs::read_dir(dir).map_err(|e| slopepcp::Error::io(dir, e))?;
    for entry in read.flatten() {
        let path = entry.path();
        let k = path
            .file_name()
            .and_then(|n| n.to_str())
            .and_then(|n| n.strip_prefix("upload-"))
            .and_then(|n| n.strip_suffix(".csv"))
            .and_then(|n| n.parse::<u64>().ok());
        if let Some(k) = k {
            found.push((k, path));
        }
    }
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_first_then_uploads() {
        let store = DatasetStore::new(None).unwrap();
        let before = store.list();
        assert!(before.iter().all(|d| d.preset));
        assert_eq!(before.len(), preset_names().len());
        let a = store.insert_csv(b"a,b\n0,1\n", None).unwrap();
        let b = store.insert_csv(b"a,b\n0,1\n", None).unwrap();
        assert_ne!(a.id, b.id);
        assert_eq!(store.list().len(), before.len() + 2);
        assert_eq!(store.list()[..before.len()], before[..]);
        assert!(store.get(&a.id).is_some());
        assert!(store.get("missing").is_none());
    }

    #[test]
    fn spool_survives_restart() {
        let dir = std::env::temp_dir().join(format!("slopepcp-spool-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let first = DatasetStore::new(Some(dir.clone())).unwrap();
        let up = first.insert_csv(b"x,y\n1,2\n3,4\n", Some("mine".into())).unwrap();
        drop(first);
        let second = DatasetStore::new(Some(dir.clone())).unwrap();
        let back = second.get(&up.id).unwrap();
        assert_eq!(back.len(), 2);
        let next = second.insert_csv(b"x,y\n1,2\n", None).unwrap();
        assert_ne!(next.id, up.id);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
