//! Exact embedding distributions of linear graph families and their
//! Gaussian limits.

pub mod analytics;
pub mod chain;
pub mod document;
pub mod enumerator;
pub mod poly;
pub mod recurrence;
pub mod spectral;
