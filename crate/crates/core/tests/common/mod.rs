#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use zetaprod::{load_zero_table, ZeroTable};

pub fn data_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_100k.txt")
}

/// The first 10⁵ zeros, loaded once per test binary.
pub fn full_table() -> &'static ZeroTable {
    static TABLE: OnceLock<ZeroTable> = OnceLock::new();
    TABLE.get_or_init(|| load_zero_table(data_path(), None).expect("data/zeros_100k.txt"))
}

pub fn prefix(n: usize) -> ZeroTable {
    full_table().prefix(n).unwrap()
}
