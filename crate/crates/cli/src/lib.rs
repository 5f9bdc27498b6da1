//! Fixture loading, suite execution and reporting for the `cmperiods` driver.

pub mod fixtures;
pub mod report;
pub mod suites;

pub use fixtures::{FixtureError, FixtureSet};
pub use report::Report;
pub use suites::{run, run_with, shared_verifier, RunConfig, RunError, Suite};

use std::path::PathBuf;

/// `fixtures/` in the working directory if present, else the copy shipped with the crate.
pub fn default_fixtures_dir() -> PathBuf {
    let local = PathBuf::from("fixtures");
    if local.join(fixtures::FILES[0]).exists() {
        local
    } else {
        PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
    }
}
