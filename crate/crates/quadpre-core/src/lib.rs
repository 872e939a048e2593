//! Exact and certified computation for the arithmetic dynamics of the
//! quadratic family `f_c(z) = z^2 + c`.
//!
//! The crate revolves around three bodies of machinery:
//!
//! * **Iterate polynomials.** [`poly`] builds the iterates
//!   `F_n(c, a) = f_c^n(a)` as exact integer polynomials in `c` and provides
//!   the difference polynomials whose roots are the preperiodic parameter
//!   sets `S(a, k, p)` (and, in the dual variable, the preperiodic point
//!   sets `X(c, k, p)`).
//! * **Certified root finding.** [`roots`] isolates and certifies real and
//!   complex roots of those polynomials: Sturm chains over exact integers,
//!   modular gcd with divisibility certificates, and a simultaneous
//!   (Aberth) complex solver with a posteriori radius bounds.
//! * **Symbolic dynamics.** [`symdyn`] and [`coding`] implement the coding
//!   of real quadratic maps for `c <= -2`: sign sequences, the inverse
//!   branch fixed points, the conjugacy `psi_c`, its exact trigonometric
//!   form at `c = -2`, and the parameter solver `gamma_a` that recovers the
//!   unique parameter at which a given orbit code is realised by the
//!   critical value.
//!
//! [`paramsets`] ties these together: it computes the sets `S(a, k, p)`
//! with certificates, intersects the full preperiodic parameter sets of two
//! starting points up to a depth cap, and runs the bounded verification of
//! the classification of simultaneously preperiodic integer pairs.
//!
//! The crate is `no_std`-compatible (with `alloc`); all IO, serialization
//! and the command line front end live in the companion `quadpre` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod coding;
pub mod error;
pub mod numeric;
pub mod paramsets;
pub mod poly;
pub mod roots;
pub mod symdyn;

pub use error::{Error, Result};
