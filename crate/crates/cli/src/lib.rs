//! Report documents shared by the `cbsemi` binary and its tests.

pub mod report;

pub use report::{Derived, ErrorDoc, Report, SCHEMA};
