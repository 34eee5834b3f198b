//! Conflict measurement for random permutation sets.
//!
//! A random permutation set assigns belief mass to *ordered* focal sets:
//! duplicate-free sequences of frame elements whose order expresses which
//! element the belief should preferably move to when a decision is forced.
//! Two bodies of evidence can agree on which elements are plausible and still
//! disagree on their order, which the classical empty-intersection test does
//! not see.
//!
//! This crate provides:
//!
//! - [`frame`]: the frame of discernment, bitmask subset codes and the
//!   lexicographic order code that together identify an ordered focal set
//!   as `(i, j)`.
//! - [`evidence`]: mass functions and permutation mass functions, validation
//!   and order-forgetting degeneration.
//! - [`overlap`]: prefix overlap, agreement, inconsistency ratios, average
//!   overlap, rank-biased overlap and the permutation-level conflict
//!   [`overlap::k_perm`] under uniform, geometric or custom depth weights.
//! - [`conflict`]: the body-level non-overlap conflict [`conflict::conf`]
//!   together with the Shafer conflict and left/right intersection conflicts
//!   used as baselines.
//! - [`classify`]: order/elemental conflict predicates and the pair and body
//!   taxonomies built on them.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use rps_conflict::{conflict, DepthSpec, Frame, OrderedFocalSet, PermutationMassFunction, WeightScheme};
//!
//! let frame = Frame::numbered(5).unwrap();
//! let seq = |labels: &[&str]| OrderedFocalSet::from_labels(&frame, labels).unwrap();
//! let pmf1 = PermutationMassFunction::new(
//!     frame.clone(),
//!     vec![(seq(&["w2", "w1", "w3", "w5"]), 0.6), (seq(&["w1", "w5", "w3"]), 0.4)],
//! )
//! .unwrap();
//! let pmf2 = PermutationMassFunction::new(
//!     frame.clone(),
//!     vec![(seq(&["w1", "w2", "w3", "w4", "w5"]), 0.8), (seq(&["w1", "w3"]), 0.2)],
//! )
//! .unwrap();
//! let report = conflict::conf(&pmf1, &pmf2, &WeightScheme::Uniform, DepthSpec::Default).unwrap();
//! assert!((report.total - 0.3424).abs() < 5e-4);
//! ```
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod classify;
pub mod conflict;
mod error;
pub mod evidence;
pub mod frame;
pub mod overlap;

pub use classify::{BodyTaxonomy, PairTaxonomy};
pub use conflict::{ConflictReport, PairTerm};
pub use error::{Error, Result};
pub use evidence::{
    MassFunction, Normalization, PermutationMassFunction, Violation, ViolationKind,
};
pub use frame::{Frame, OrderCode, OrderedFocalSet, SubsetCode};
pub use overlap::{DepthSpec, WeightScheme};

/// Tolerance on the sum-to-one check of mass assignments.
pub const MASS_TOLERANCE: f64 = 1e-9;
