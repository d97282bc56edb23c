//! Multigraded commutative rings given by generators and relations.

mod degree;
mod enumerate;
pub mod parse;
mod poly;
mod presentation;
mod ringmap;
mod window;

pub use degree::{Degree, Positivity};
pub use enumerate::MonomialEnumerator;
pub use parse::parse_poly;
pub use poly::{Generator, GeneratorTable, Monomial, PolyElement};
pub use presentation::{DegreeGroup, GradedGroups, RingPresentation};
pub use ringmap::{generation_check, verify_presentation_iso, verify_ring_map, ImageCheck, RingMap};
pub use window::DegreeWindow;
