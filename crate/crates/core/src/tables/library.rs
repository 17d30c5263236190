//! A registry of tables, fusions, group orders and problem blocks loaded from CTB files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::{
    parse_document, CtbDocument, CtbError, FusionMap, RawBlock, TableBundle, TableError, TableHead,
};
use crate::cyclonum::BigInt;

#[derive(Debug, Error)]
pub enum LibraryError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: CtbError,
    },
    #[error("{0} is defined twice")]
    Duplicate(String),
    #[error("unknown table or group {0}")]
    Missing(String),
    #[error("no fusion {0} -> {1}")]
    MissingFusion(String, String),
    #[error(transparent)]
    Invalid(#[from] TableError),
}

#[derive(Debug, Clone, Default)]
pub struct TableLibrary {
    tables: BTreeMap<String, TableBundle>,
    fusions: BTreeMap<(String, String), FusionMap>,
    orders: BTreeMap<String, BigInt>,
    blocks: Vec<(String, RawBlock)>,
}

impl TableLibrary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a parsed document; `source` labels its blocks.
    pub fn add_document(&mut self, doc: CtbDocument, source: &str) -> Result<(), LibraryError> {
        for b in doc.tables {
            for f in &b.fusions {
                self.add_fusion(f.clone())?;
            }
            let id = b.head.id.clone();
            if self.tables.contains_key(&id) {
                return Err(LibraryError::Duplicate(format!("table {id}")));
            }
            self.tables.insert(id, b);
        }
        for f in doc.fusions {
            self.add_fusion(f)?;
        }
        for (id, n) in doc.orders {
            if self.orders.insert(id.clone(), n).is_some() {
                return Err(LibraryError::Duplicate(format!("order of {id}")));
            }
        }
        for b in doc.blocks {
            self.blocks.push((source.to_string(), b));
        }
        Ok(())
    }

    fn add_fusion(&mut self, f: FusionMap) -> Result<(), LibraryError> {
        let key = (f.from_head.clone(), f.to_head.clone());
        if self.fusions.contains_key(&key) {
            return Err(LibraryError::Duplicate(format!(
                "fusion {} -> {}",
                key.0, key.1
            )));
        }
        self.fusions.insert(key, f);
        Ok(())
    }

    pub fn add_text(&mut self, text: &str, source: &str) -> Result<(), LibraryError> {
        let doc = parse_document(text).map_err(|e| LibraryError::Parse {
            path: source.to_string(),
            source: e,
        })?;
        self.add_document(doc, source)
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), LibraryError> {
        let text = std::fs::read_to_string(path).map_err(|e| LibraryError::Io {
            path: path.into(),
            source: e,
        })?;
        self.add_text(&text, &path.display().to_string())
    }

    /// Loads every `*.ctb` file of a directory in file-name order.
    pub fn load_dir(&mut self, dir: &Path) -> Result<(), LibraryError> {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| LibraryError::Io {
                path: dir.into(),
                source: e,
            })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "ctb"))
            .collect();
        files.sort();
        for f in files {
            self.load_file(&f)?;
        }
        Ok(())
    }

    pub fn bundle(&self, id: &str) -> Result<&TableBundle, LibraryError> {
        self.tables
            .get(id)
            .ok_or_else(|| LibraryError::Missing(id.to_string()))
    }

    pub fn head(&self, id: &str) -> Result<&TableHead, LibraryError> {
        Ok(&self.bundle(id)?.head)
    }

    pub fn table_ids(&self) -> impl Iterator<Item = &str> {
        self.tables.keys().map(String::as_str)
    }

    pub fn fusion(&self, from: &str, to: &str) -> Result<&FusionMap, LibraryError> {
        self.fusions
            .get(&(from.to_string(), to.to_string()))
            .ok_or_else(|| LibraryError::MissingFusion(from.to_string(), to.to_string()))
    }

    pub fn fusions(&self) -> impl Iterator<Item = &FusionMap> {
        self.fusions.values()
    }

    /// Group order from a table or an `ORDER` declaration.
    pub fn group_order(&self, id: &str) -> Result<BigInt, LibraryError> {
        if let Some(b) = self.tables.get(id) {
            return Ok(b.head.group_order.clone());
        }
        self.orders
            .get(id)
            .cloned()
            .ok_or_else(|| LibraryError::Missing(id.to_string()))
    }

    pub fn blocks<'a>(&'a self, kind: &'a str) -> impl Iterator<Item = &'a RawBlock> + 'a {
        self.blocks
            .iter()
            .filter(move |(_, b)| b.kind == kind)
            .map(|(_, b)| b)
    }

    /// Validates every fusion whose two heads are loaded.
    pub fn validate(&self) -> Result<(), LibraryError> {
        for f in self.fusions.values() {
            if let (Some(a), Some(b)) = (self.tables.get(&f.from_head), self.tables.get(&f.to_head))
            {
                f.validate(&a.head, &b.head)?;
            }
        }
        Ok(())
    }
}
