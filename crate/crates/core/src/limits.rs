/// Resource caps shared by the generators. Exceeding one is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of entries (cells) in a materialized row or array.
    pub entry_budget: usize,
    /// Maximum number of patterns in a transfer closure.
    pub closure_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            entry_budget: 1 << 24,
            closure_budget: 10_000,
        }
    }
}

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "STERN_THREADS";

/// Worker count from `STERN_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

/// Configures the global rayon pool from `STERN_THREADS`. Later calls (or a
/// pool already in use) leave the existing configuration in place.
pub fn init_threads() {
    if let Some(n) = threads_from_env() {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}
