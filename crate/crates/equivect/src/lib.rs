//! File formats and command-line front end for `equivect-core`.

pub mod cli;
pub mod cyclo_json;
pub mod render;
pub mod report;
pub mod spec;
