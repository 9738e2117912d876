//! Bundled data: the group catalog and the rank-5 premodular data, or the same layout read from
//! a directory (`groups.tsv`, `modular/*.json`, `premodular/*.json`).

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::groups::{parse_catalog, CatalogEntry, GroupError, BUNDLED_CATALOG};
use crate::premodular::PremodularDatum;

const BUNDLED_MODULAR: &[(&str, &str)] = &[
    ("su2_4.json", include_str!("../data/modular/su2_4.json")),
    ("su2_9_z2.json", include_str!("../data/modular/su2_9_z2.json")),
    ("su3_4_z3.json", include_str!("../data/modular/su3_4_z3.json")),
    ("su5_1.json", include_str!("../data/modular/su5_1.json")),
];

const BUNDLED_PREMODULAR: &[(&str, &str)] = &[
    ("psu2_8.json", include_str!("../data/premodular/psu2_8.json")),
    ("rep_d14_type.json", include_str!("../data/premodular/rep_d14_type.json")),
    ("rep_d8_type.json", include_str!("../data/premodular/rep_d8_type.json")),
    ("rep_s4_type.json", include_str!("../data/premodular/rep_s4_type.json")),
];

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("group catalog: {0}")]
    Catalog(#[from] GroupError),
    #[error("{0}: missing \"label\"")]
    MissingLabel(PathBuf),
}

#[derive(Clone, Debug)]
pub struct NamedDatum {
    pub file: String,
    pub label: String,
    pub datum: PremodularDatum,
}

#[derive(Clone, Debug)]
pub struct DataSet {
    pub catalog: Vec<CatalogEntry>,
    pub modular: Vec<NamedDatum>,
    pub premodular: Vec<NamedDatum>,
}

/// Parses a datum file; the `label` field names it.
pub fn parse_named_datum(file: &str, text: &str) -> Result<NamedDatum, DataError> {
    let path = PathBuf::from(file);
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|source| DataError::Json { path: path.clone(), source })?;
    let label = value
        .get("label")
        .and_then(|l| l.as_str())
        .ok_or_else(|| DataError::MissingLabel(path.clone()))?
        .to_string();
    let datum = serde_json::from_value(value).map_err(|source| DataError::Json { path, source })?;
    Ok(NamedDatum { file: file.to_string(), label, datum })
}

fn read(path: &Path) -> Result<String, DataError> {
    fs::read_to_string(path).map_err(|source| DataError::Io { path: path.to_path_buf(), source })
}

fn read_json_dir(dir: &Path) -> Result<Vec<NamedDatum>, DataError> {
    let entries = fs::read_dir(dir).map_err(|source| DataError::Io { path: dir.to_path_buf(), source })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .iter()
        .map(|p| {
            let text = read(p)?;
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            parse_named_datum(&name, &text).map_err(|e| match e {
                DataError::Json { source, .. } => DataError::Json { path: p.clone(), source },
                other => other,
            })
        })
        .collect()
}

impl DataSet {
    pub fn bundled() -> Result<Self, DataError> {
        let parse_all = |list: &[(&str, &str)]| -> Result<Vec<NamedDatum>, DataError> {
            list.iter().map(|(f, t)| parse_named_datum(f, t)).collect()
        };
        Ok(DataSet {
            catalog: parse_catalog(BUNDLED_CATALOG)?,
            modular: parse_all(BUNDLED_MODULAR)?,
            premodular: parse_all(BUNDLED_PREMODULAR)?,
        })
    }

    pub fn from_dir(dir: &Path) -> Result<Self, DataError> {
        Ok(DataSet {
            catalog: parse_catalog(&read(&dir.join("groups.tsv"))?)?,
            modular: read_json_dir(&dir.join("modular"))?,
            premodular: read_json_dir(&dir.join("premodular"))?,
        })
    }

    pub fn premodular_by_label(&self, label: &str) -> Option<&NamedDatum> {
        self.premodular.iter().find(|d| d.label == label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_loads() {
        let d = DataSet::bundled().unwrap();
        assert_eq!(d.modular.len(), 4);
        assert_eq!(d.premodular.len(), 4);
        for nd in d.modular.iter().chain(&d.premodular) {
            assert!(nd.datum.check().is_empty(), "{}", nd.label);
        }
    }

    #[test]
    fn from_dir_matches_bundled() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
        let a = DataSet::from_dir(&dir).unwrap();
        let b = DataSet::bundled().unwrap();
        assert_eq!(a.catalog, b.catalog);
        let labels = |v: &[NamedDatum]| v.iter().map(|d| d.label.clone()).collect::<Vec<_>>();
        assert_eq!(labels(&a.premodular), labels(&b.premodular));
        assert!(parse_named_datum("x.json", "{").is_err());
    }
}
