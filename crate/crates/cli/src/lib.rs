//! Report plumbing, brute-force oracles and the acceptance criteria behind
//! the `ccr` binary.

pub mod commands;
pub mod criteria;
pub mod oracle;
pub mod report;
