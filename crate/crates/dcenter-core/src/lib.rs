//! Exact combinatorics and dynamics of critically periodic binomials
//! `z^d + c`.
//!
//! The crate verifies, by several independent routes, that the centers of
//! period `n` in the degree-`d` family sort themselves by combinatorial type
//! according to the identity
//!
//! ```text
//!   sum over compositions n = a_1 + ... + a_r with maximal first part of
//!       phi(a_1) * (d-1)^(r-w) * d^w   =   d^n - 1
//! ```
//!
//! where `w` counts the parts beyond the first equal to `a_1`.
//!
//! - [`hcomp`] enumerates the compositions and evaluates the identity with
//!   exact integer arithmetic.
//! - [`series`] replays the generating-function proof over exact rationals.
//! - [`circle`] models the same count with rotation sets, itineraries, and
//!   angle pairs of the map `theta -> d*theta (mod 1)`.
//! - [`dynamics`] counts actual centers as roots of Gleason polynomials.
//! - [`render`] rasterizes filled Julia sets for chosen centers.
//!
//! The crate is `no_std` (it requires `alloc`); all file and terminal
//! handling lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod circle;
pub mod dynamics;
pub mod hcomp;
pub mod render;
pub mod series;

pub use hcomp::{HComposition, IdentityCheck};
pub use series::FormalPowerSeries;
