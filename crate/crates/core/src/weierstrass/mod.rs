//! The 2-local Weierstrass Hopf algebroid and the comodule algebra inside it.

pub mod algebroid;
pub mod cobar;
pub mod comodule;
pub mod curve;
pub mod hopf;
pub mod hurewicz;

pub use algebroid::Algebroid;
pub use curve::{transform_curve, Poly, UnipotentTransformation, WeierstrassCurve};
pub use hopf::{Hopf, Orientation, Tensor};
pub use comodule::Comodule;
