//! Exact decision procedures for affine embeddings of homogeneous spaces.
//!
//! The crate turns the combinatorial classification of several classes of
//! affine embeddings into executable checks over exact integer arithmetic:
//!
//! * [`lattice_cone`]: rational polyhedral cones, face lattices, affine
//!   semigroups, membership, saturation and generated subgroups.
//! * [`root_system`]: Cartan data, Weyl group action and dimension formulas
//!   for products of simply connected simple groups with a central torus.
//! * [`rep_theory`]: Weyl dimension, Freudenthal multiplicities and tensor
//!   product decomposition (Brauer–Klimyk).
//! * [`toric`]: effectiveness, normality and the orbit/ideal face
//!   correspondence for affine toric varieties.
//! * [`svariety`]: S-varieties and HV-varieties.
//! * [`monoid`]: perfect semigroups of dominant weights and the cone
//!   criteria for normal reductive monoids.
//! * [`parabolic`]: orbit combinatorics of canonical embeddings of `G/P^u`.
//! * [`sl2`]: normal affine SL(2)-embeddings classified by their height.
//!
//! No floating point is used anywhere.

pub mod error;
pub mod lattice_cone;
pub mod monoid;
pub mod parabolic;
pub mod rep_theory;
pub mod root_system;
pub mod sl2;
pub mod svariety;
pub mod toric;

pub use error::{Error, Result};
