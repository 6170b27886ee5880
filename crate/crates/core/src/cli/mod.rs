//! Command-line frontend.

pub mod curve;
pub mod report;
pub mod run;

pub use run::run;
