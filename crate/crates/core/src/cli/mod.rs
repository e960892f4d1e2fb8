//! Corpus analysis front end: config and corpus loading, per-dream analysis,
//! aggregation and hierarchy inspection.

pub mod aggregate;
pub mod analyze;
pub mod config;
pub mod corpus;
pub mod format;
pub mod inspect;
