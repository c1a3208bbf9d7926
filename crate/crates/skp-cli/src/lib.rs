//! Verification registry, report runner and evaluation helpers behind the
//! `skp` command-line tool.

pub mod checks;
pub mod eval;
pub mod report;
