//! Enumeration budgets and suite configuration. Budgets are configuration,
//! not constants: every suite honors them and reports what it skipped, so
//! raising a budget extends coverage without touching code.

use std::path::PathBuf;

#[derive(Clone, Debug)]
pub struct Config {
    /// Hard cap on q = p^f for tabled field construction.
    pub max_field: u64,
    /// Cap on elements of a streamed residue field (class-table bytes).
    pub max_q_cells: u64,
    /// Cap on enumeration cells for point counting.
    pub max_count_cells: u64,
    /// Jacobi tuple arity cap for the relation suite.
    pub arity_cap: usize,
    /// Extension degree cap for base-change checks.
    pub ext_cap: u32,
    /// Operation-count budget for one raw eigen-check convolution family.
    pub eigen_ops_budget: u64,
    /// Base-field sizes the relation suite sweeps.
    pub relation_qs: Vec<u64>,
    /// Cache directory for field tables (None = no cache).
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (1 = sequential). Output is identical for any value.
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_field: 1 << 20,
            max_q_cells: 200_000_000,
            max_count_cells: 100_000_000,
            arity_cap: 4,
            ext_cap: 3,
            eigen_ops_budget: 2_000_000_000,
            relation_qs: vec![3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27],
            cache_dir: None,
            jobs: 1,
        }
    }
}

impl Config {
    pub fn cache_dir_from_env(mut self) -> Self {
        if self.cache_dir.is_none() {
            if let Ok(dir) = std::env::var("GJSUMS_CACHE_DIR") {
                if !dir.is_empty() {
                    self.cache_dir = Some(PathBuf::from(dir));
                }
            }
        }
        self
    }
}
