//! The eleven free equations for n = 2, 4, 8, 16 and their classification
//! table.

use std::fmt;

use super::classify::{classify, SpinorType};
use super::dispersion::dispersion_check;
use super::verify::{verify_square_root, VerificationReport};
use super::LleSpec;
use crate::error::LleError;
use crate::exec::Exec;

pub const CATALOG_KEYS: [&str; 11] = [
    "eq6", "eq7", "eq8", "eq9", "eq10", "eq11", "eq12", "eq13", "eq14", "eq15", "eq16",
];

const ENTRIES: [(&str, &str, &[&str]); 11] = [
    ("eq6", "Q", &["X"]),
    ("eq7", "QI", &["XX", "XY"]),
    ("eq8", "QY", &["XY"]),
    ("eq9", "QII", &["XXX", "XXY", "XYI"]),
    ("eq10", "QII", &["XYI"]),
    ("eq11", "QYI", &["XYX", "XYY"]),
    ("eq12", "QIII", &["XXXX", "XXXY", "XXYI", "XYII"]),
    ("eq13", "QIII", &["XXYI", "XYII"]),
    ("eq14", "QYII", &["XYXX", "XYXY", "XYYI"]),
    ("eq15", "QYII", &["XYYI"]),
    ("eq16", "QIII", &["XYII"]),
];

/// Expected classification table, one row per line.
pub const GOLDEN_TABLE: &str = "\
(2×2) matrices: M, (1+1), 2 real components
(4×4) matrices: M, (1+2), 4 real components
(4×4) matrices: MW, (1+1), 4/2 = 2 real components
(8×8) matrices: M, (1+3), 8 real components
(8×8) matrices: MW, (1+2), 8/2 = 4 real components
(8×8) matrices: D, (1+1), 4_C ≡ 8 real components
(16×16) matrices: M, (1+4), 16 real components
(16×16) matrices: MW, (1+3), 16/2 = 8 real components
(16×16) matrices: D, (1+2), 8_C ≡ 16 real components
(16×16) matrices: W, (1+1), 4_C ≡ 8 real components
(16×16) matrices: H, (1+1), 4_H ≡ 16 real components
";

pub fn catalog() -> Vec<LleSpec> {
    ENTRIES
        .iter()
        .map(|(key, time, space)| LleSpec::free(key, time, space).expect("catalog entry"))
        .collect()
}

pub fn catalog_entry(key: &str) -> Result<LleSpec, LleError> {
    ENTRIES
        .iter()
        .find(|(k, _, _)| *k == key)
        .map(|(key, time, space)| LleSpec::free(key, time, space).expect("catalog entry"))
        .ok_or_else(|| LleError::UnknownKey(key.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub key: String,
    pub n: usize,
    pub spinor_type: SpinorType,
    pub d: usize,
    pub components: String,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({n}×{n}) matrices: {}, (1+{}), {}",
            self.spinor_type,
            self.d,
            self.components,
            n = self.n
        )
    }
}

/// Classifies every catalog entry; rows ordered by size, then type.
pub fn generate_table(exec: Exec) -> Result<Vec<TableRow>, LleError> {
    let specs = catalog();
    let classes = exec.map(&specs, classify);
    let mut rows = Vec::new();
    for (spec, class) in specs.iter().zip(classes) {
        let class = class?;
        rows.push(TableRow {
            key: spec.name().to_string(),
            n: class.n,
            spinor_type: class.spinor_type,
            d: class.d,
            components: class.component_label(),
        });
    }
    rows.sort_by_key(|r| (r.n, r.spinor_type));
    Ok(rows)
}

pub fn golden_rows(golden: &str) -> Vec<String> {
    golden
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMismatch {
    /// One-based row number.
    pub row: usize,
    pub expected: Option<String>,
    pub got: Option<String>,
}

pub fn compare_table(rows: &[TableRow], golden: &str) -> Vec<TableMismatch> {
    let expected = golden_rows(golden);
    let got: Vec<String> = rows.iter().map(TableRow::to_string).collect();
    (0..expected.len().max(got.len()))
        .filter_map(|i| {
            let (e, g) = (expected.get(i), got.get(i));
            (e != g).then(|| TableMismatch {
                row: i + 1,
                expected: e.cloned(),
                got: g.cloned(),
            })
        })
        .collect()
}

/// Square-root and dispersion reports for every catalog entry.
pub fn verify_catalog(exec: Exec) -> Vec<(VerificationReport, VerificationReport)> {
    let specs = catalog();
    exec.map(&specs, |spec| {
        (
            verify_square_root(spec).expect("free entry"),
            dispersion_check(spec, Exec::Sequential).expect("free entry"),
        )
    })
}
