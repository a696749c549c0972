//! Exact arithmetic for admissible collections `(S, L, H, r)` on surfaces:
//! divisor lattices and truncated Chern classes, per-family surface models,
//! the A1/A2/A3 decision, `(r, m)` pair enumeration and moduli dimensions.

pub mod admissibility;
pub mod enumeration;
pub mod lattice;
pub mod moduli;
pub mod selfcheck;
pub mod serde_int;
pub mod surface;

pub use admissibility::{
    check_a3, check_collection, hyperelliptic_rule, A3Verdict, Admissibility, AdmissibilityError,
    AdmissibilityReport, Collection, HyperellipticRequirement, HyperellipticRule, Verdict,
};
pub use enumeration::{EnumerationError, PairEntry, PairSet, SearchBox};
pub use lattice::{ChernTotal, DivisorClass, IntersectionForm, LatticeError};
pub use moduli::{DimensionReport, ModuliError, MukaiVector};
pub use surface::{SurfaceError, SurfaceFamily, SurfaceModel};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Admissibility(#[from] AdmissibilityError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
}
