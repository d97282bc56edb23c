//! Check outcomes and machine-readable reports.

mod outcome;
mod record;

pub use outcome::{Assumption, Detail, Outcome, Status, Witness};
pub use record::{CheckId, Report};
