//! Random generation, the brute-force oracle, and the property suites.

pub mod engine;
pub mod generator;
pub mod oracle;
pub mod suites;
