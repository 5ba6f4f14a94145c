//! Executable combinatorics and linear algebra for local shtukas over `F_q((z))`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure computation:
//!
//! * [`field`], [`ring`], [`series`]: finite fields `F_{p^n}` with the `q`-Frobenius,
//!   dual-number test rings and truncated Laurent series with explicit precision.
//! * [`root_data`]: split root data, dominance orders, Weyl orbits, `π₁(G)` and the
//!   extended affine Weyl group with its length function.
//! * [`newton`]: Newton points of `GL_r`, defect, Chai's chain-length sum, the
//!   dimension formula and the Newton-point poset.
//! * [`engine`]: the `GL_r` matrix engine (Hodge polygon, Newton point, boundedness,
//!   σ-conjugation, decency, Iwahori double cosets).
//! * [`adlv`]: brute-force point counts of affine Deligne-Lusztig sets in lattice
//!   windows, growth-rate dimension estimates and the perturbation probe.
//!
//! File formats, the command line front end and parallel drivers live in the
//! companion `shtuka` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod adlv;
pub mod engine;
pub mod error;
pub mod field;
pub mod newton;
pub mod rational;
pub mod ring;
pub mod root_data;
pub mod series;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldSpec};
pub use rational::Q;
pub use ring::{DualElem, DualNumbers, Ring};
pub use series::{Series, EXACT};
