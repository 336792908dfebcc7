//! Exact intersection theory on del Pezzo surfaces of degree 1 through 7:
//! enumeration of curve classes, positivity of adjoint classes `-(K + εD)`,
//! Zariski decomposition and the structural description of low-degree
//! irreducible curves.

pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod positivity;
pub mod rational;
pub mod reference;
pub mod report;
pub mod structure;
pub mod zariski;

pub use error::{Error, Result};
pub use lattice::{DivisorClass, RationalDivisorClass, SurfaceModel};
