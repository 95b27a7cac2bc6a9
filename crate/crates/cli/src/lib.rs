//! Library side of the `homcount` command-line tool: b-file and JSON
//! output, the lambda-table cache, OEIS comparisons, and the subcommand
//! bodies.

pub mod bfile;
pub mod cache;
pub mod commands;
pub mod oeis;
pub mod output;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const USAGE: i32 = 2;
}
