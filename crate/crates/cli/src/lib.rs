//! Library half of the `heatsphere` binary: output records, range parsing
//! and the verification drivers. `main.rs` only handles flags and exit codes.

pub mod range;
pub mod record;
pub mod suites;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
}
