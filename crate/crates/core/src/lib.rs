//! Exact computer algebra for the symplectic quotient of `k` particles in
//! `R^n` at zero total angular momentum.
//!
//! The crate is layered bottom-up:
//!
//! * [`rational`], [`ring`], [`monomial`], [`order`], [`polynomial`]: exact
//!   sparse polynomial arithmetic over weighted-graded rings.
//! * [`groebner`]: division, Buchberger's algorithm, elimination and ideal
//!   membership.
//! * [`hilbert`]: Hilbert series of graded quotients, Gorenstein symmetry and
//!   Laurent expansion at `t = 1`.
//! * [`model`]: phase-space and Gram-matrix generators, the moment map, the
//!   quadratic relations `Q[i,j]` and the polynomial identities among them.
//! * [`exterior`]: exterior algebra over polynomial coefficients and explicit
//!   certificates writing minors of the Gram matrix in terms of the `Q[i,j]`.

pub mod error;
pub mod exterior;
pub mod groebner;
pub mod hilbert;
pub mod model;
pub mod monomial;
pub mod order;
mod parse;
pub mod polynomial;
pub mod rational;
pub mod ring;

pub use error::{AlgebraError, Result};
pub use monomial::Monomial;
pub use order::{CompiledOrder, MonomialOrder};
pub use polynomial::Polynomial;
pub use rational::Rational;
pub use ring::Ring;
