//! Exact Heisenberg-picture solutions of the sinusoidal coordinate for
//! solvable one-dimensional quantum systems (Pöschl–Teller, the deformed
//! harmonic oscillator and the Askey–Wilson system), the annihilation and
//! creation operators they define, coherent states, and the classical limits.
//!
//! Operators are realised as truncated matrices in the energy eigenbasis.
//! Every identity comes with a `check_*` routine that compares it against an
//! independent numerical route and returns a [`CheckReport`].

#![no_std]
#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::needless_range_loop,
    clippy::excessive_precision
)]
extern crate alloc;

mod math;

pub mod classical;
pub mod coherent;
pub mod error;
pub mod heisenberg;
pub mod matrix;
pub mod operators;
pub mod polynomials;
pub mod quadrature;
pub mod report;
pub mod special;
pub mod systems;

pub use error::{Error, Result};
pub use report::CheckReport;
pub use systems::{Family, System, SystemSpec};
