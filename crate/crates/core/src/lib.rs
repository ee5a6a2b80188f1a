//! Certified sufficient criteria for neutrality of representations of finite
//! diagonalizable group schemes, described through their character groups.
//!
//! The usual entry point is [`criteria::neutrality_report`] on a
//! [`Representation`] built either directly or from an [`InputDocument`].

pub mod abelian;
pub mod arith;
pub mod autgroup;
pub mod criteria;
pub mod error;
pub mod geometry;
pub mod modp;
pub mod rep;
pub mod search;
pub mod snf;

pub use abelian::{Character, FiniteAbelianGroup, PrimaryPart, Subgroup};
pub use autgroup::{AutVSubgroup, Automorphism, OrbitPartition, DEFAULT_CAP};
pub use criteria::{Certificate, NeutralityReport, Overall, PrimeVerdict, Strategy, Witness};
pub use error::{Error, Result};
pub use rep::{rep_from_input, BlendedDecomposition, GroupElement, InputDocument, Representation};
