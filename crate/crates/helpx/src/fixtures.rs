//! Bundled data fixtures: character tables, fusion maps, permutation groups
//! and the two verified units, compiled into the library. The environment
//! variable `HELPX_FIXTURES` overrides the lookup with a directory of the
//! same file layout.

use crate::chartab::{parse_fusion, parse_table, CharacterTable, QuotientFusion, TableError};
use std::path::PathBuf;

pub const BUNDLED_TABLES: &[&str] = &[
    "S2", "S3", "S4", "A5", "GL(2,3)", "SL(2,3).C2", "A4:C4", "C2xS4", "SL(2,5)", "S5", "2.S5",
    "S3wrS2", "72_15", "72_22", "72_23", "72_24", "72_31", "72_33", "72_35", "C3xS4", "72_43",
    "A4xS3",
];

pub const BUNDLED_FUSIONS: &[&str] = &[
    "fusion_S4_S3", "fusion_S3wrS2_S2", "fusion_GL23_S4", "fusion_SL23C2_S4", "fusion_A4C4_S4",
    "fusion_C2xS4_S4", "fusion_C3xS4_S4", "fusion_72_43_S4", "fusion_72_15_S4",
];

/// File stem of a table fixture for a group id (mirrors the generator).
pub fn table_file_stem(id: &str) -> String {
    let sanitized: String = id
        .chars()
        .map(|c| match c {
            '(' | ')' => None,
            ',' | '.' | ':' => Some('_'),
            c => Some(c),
        })
        .flatten()
        .collect();
    format!("table_{sanitized}")
}

macro_rules! bundled {
    ($name:literal) => {
        ($name, include_str!(concat!("../fixtures/", $name, ".json")))
    };
}

static FILES: &[(&str, &str)] = &[
    bundled!("table_S2"),
    bundled!("table_S3"),
    bundled!("table_S4"),
    bundled!("table_A5"),
    bundled!("table_GL2_3"),
    bundled!("table_SL2_3_C2"),
    bundled!("table_A4_C4"),
    bundled!("table_C2xS4"),
    bundled!("table_SL2_5"),
    bundled!("table_S5"),
    bundled!("table_2_S5"),
    bundled!("table_S3wrS2"),
    bundled!("table_72_15"),
    bundled!("table_72_22"),
    bundled!("table_72_23"),
    bundled!("table_72_24"),
    bundled!("table_72_31"),
    bundled!("table_72_33"),
    bundled!("table_72_35"),
    bundled!("table_C3xS4"),
    bundled!("table_72_43"),
    bundled!("table_A4xS3"),
    bundled!("fusion_S4_S3"),
    bundled!("fusion_S3wrS2_S2"),
    bundled!("fusion_GL23_S4"),
    bundled!("fusion_SL23C2_S4"),
    bundled!("fusion_A4C4_S4"),
    bundled!("fusion_C2xS4_S4"),
    bundled!("fusion_C3xS4_S4"),
    bundled!("fusion_72_43_S4"),
    bundled!("fusion_72_15_S4"),
    bundled!("unit_S4_order4"),
    bundled!("unit_S3_order3"),
    bundled!("unit_S4_identity"),
    bundled!("group_S4"),
    bundled!("group_S3"),
];

fn override_dir() -> Option<PathBuf> {
    std::env::var_os("HELPX_FIXTURES").map(PathBuf::from)
}

/// Raw fixture text by file stem, honoring `HELPX_FIXTURES`.
pub fn load_raw(stem: &str) -> Result<Vec<u8>, TableError> {
    if let Some(dir) = override_dir() {
        let path = dir.join(format!("{stem}.json"));
        if path.exists() {
            return Ok(std::fs::read(path)?);
        }
    }
    FILES
        .iter()
        .find(|(name, _)| *name == stem)
        .map(|(_, text)| text.as_bytes().to_vec())
        .ok_or_else(|| TableError::UnknownTable(stem.to_string()))
}

pub fn load_table(id: &str) -> Result<CharacterTable, TableError> {
    let text = load_raw(&table_file_stem(id)).map_err(|_| TableError::UnknownTable(id.to_string()))?;
    parse_table(&text)
}

pub fn load_fusion(stem: &str) -> Result<QuotientFusion, TableError> {
    parse_fusion(&load_raw(stem)?)
}
