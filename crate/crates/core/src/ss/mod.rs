//! Spectral sequence pages, differentials and the checks run on them.

pub mod bp;
mod differential;
mod page;

pub use differential::{degree_audit, extend_leibniz, extend_leibniz_checked, leibniz_monomial, DifferentialSpec, DifferentialTable};
pub use page::{d_squared_audit, groups_on, HomologyPage, Page};
mod checks;
mod survival;

pub use checks::{collapse_certificate, degree_reason_scan, evenness_and_torsion_check, region_audit};
pub use survival::{survival_check, Disposition, SourceEntry, SurvivalCertificate};
mod comparison;
pub use comparison::{comparison_map_check, comparison_target};
pub mod ko;
pub use ko::{ko_e4_check, ko_hilbert_check};
pub mod pipeline;
