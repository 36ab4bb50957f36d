//! Free post-Lie algebra on planar rooted trees, with exact rational arithmetic.
//!
//! The enveloping algebra of the free post-Lie algebra on one generator is the
//! linear span of ordered forests of planar rooted trees. This crate implements
//! that algebra and the structure carried by it:
//!
//! * [`forest`] — planar and nonplanar (abstract) rooted trees and forests,
//!   canonical orders, enumeration, symmetry factors and tree factorials, and a
//!   bit-exact text grammar.
//! * [`series`] — truncated formal series over forest bases, the concatenation
//!   product, the coshuffle coproduct, and character predicates.
//! * [`postlie`] — left grafting and its extension to the enveloping algebra,
//!   the Grossman-Larson product, brackets, and the post-Lie axiom residuals.
//! * [`exponential`] — concatenation and Grossman-Larson exponentials, the
//!   inverse differential of exp, and the Magnus-type recursion connecting them.
//! * [`butcher`] — Butcher tableaux, elementary weights, order conditions, and
//!   series-level characters of Runge-Kutta, Lie-Butcher and
//!   Munthe-Kaas-style schemes.
//!
//! All coefficients are arbitrary-precision rationals; every operation is
//! deterministic and exact. The crate is `no_std` (it requires `alloc`), so the
//! algebraic core can be embedded anywhere; IO, file formats and the CLI live in
//! the companion `postlie-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod butcher;
pub mod exponential;
pub mod forest;
pub mod postlie;
pub mod rational;
pub mod series;

pub use forest::{Label, NonplanarForest, NonplanarTree, PlanarForest, PlanarTree};
pub use rational::Rational;
pub use series::{Series, TensorSeries};
