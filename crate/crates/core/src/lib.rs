//! Hyperplane arithmetic in finite abelian groups.
//!
//! This crate models products of finite cyclic groups and the structure of
//! affine hyperplanes contained in the zero locus (the set of elements with
//! some coordinate zero): construction and classification of
//! nearly-coordinate hyperplanes, recovery of a hyperplane splitting from
//! its union, transport of hyperplanes along dual maps, and the block form
//! of zero-locus-preserving isomorphisms. A companion layer computes exact
//! rho invariants of lens spaces and the product signature model that turns
//! the splitting theory into a cancellation argument.
//!
//! Everything is exact: character values live in Q/Z as reduced fractions,
//! rho invariants are rationals, and the structural claims are verified by
//! exhaustive sweeps over small groups (see [`verify`]).

pub mod affine;
pub mod character;
pub mod duality;
pub mod elemset;
pub mod error;
pub mod group;
pub mod hom;
pub mod hyperplane;
pub mod qmodz;
pub mod signature;
pub mod splitting;
pub mod verify;

pub use crate::character::Character;
pub use crate::elemset::ElementSet;
pub use crate::error::{Error, Result};
pub use crate::group::{Element, Group, DEFAULT_ENUM_BUDGET};
pub use crate::hom::HomMatrix;
pub use crate::hyperplane::{AffineHyperplane, NearlyCoordinateData};
pub use crate::qmodz::QmodZ;
pub use crate::signature::{LensSpace, SignatureFamily};
pub use crate::splitting::{RecoveryReport, Splitting};
pub use crate::duality::BlockFormReport;
pub use crate::verify::{SweepConfig, Theorem, VerdictReport};
