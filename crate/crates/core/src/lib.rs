//! Unipotent conjugacy classes of symplectic groups over GF(2) and their
//! Jordan types on irreducible representations.
//!
//! The library covers the full pipeline: bit-packed GF(2) (and general
//! small-prime) linear algebra, Jordan-type extraction, the characteristic-2
//! symplectic class invariants of Hesselink, functorial module
//! constructions (tensor, exterior power, dual), a randomized Meataxe for
//! composition factors, and a highest-weight planner that realizes the
//! 2-restricted irreducibles of type C_l from natural-module constructions.

pub mod error;
pub mod gf;
pub mod jordan;
pub mod meataxe;
pub mod presets;
pub mod rep;
pub mod seeding;
pub mod symplectic;
pub mod weights;

pub use error::Error;
pub use gf::{FieldMatrix, FieldPoly, FieldVector, GfError};
pub use jordan::JordanType;
pub use meataxe::{ChopReport, CompositionFactors, MeataxeConfig};
pub use presets::Preset;
pub use rep::{GroupWord, MatRep};
pub use symplectic::{HesselinkLabel, SymplecticForm};
pub use weights::{BuildPlan, DimensionTable, ModuleBuilder, Weight};
