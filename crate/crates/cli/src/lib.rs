//! Command-line front end for `quadtarget-core`.
//!
//! Every command produces [`record::OutputRecord`]s that serialize to one JSON
//! object per line with sorted keys and big integers rendered as decimal
//! strings. The `density` command can also emit CSV.

pub mod commands;
pub mod modspec;
pub mod parallel;
pub mod record;
pub mod selftest;
