//! Exact arithmetic and noncommutative Gröbner bases for solvable polynomial
//! algebras, with built-in presentations of the positive and negative parts of
//! the quantum group `U_q(A_N)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`coeffs`]: the coefficient field `Q(q)` and its rational specializations.
//! - [`algebra`]: PBW monomials, elements, commutation rules and products.
//! - [`ordering`]: monomial orderings and the ordering-axiom checker.
//! - [`quantum`]: Jimbo presentations, tensor products, associated graded algebras.
//! - [`groebner`]: normal forms, left/two-sided Buchberger, overlap consistency.
//! - [`dims`]: staircases, GK dimension, Hilbert counts and elimination.
//! - [`syntax`] and [`cli`]: the text formats and the `spa` command line.

pub mod algebra;
pub mod cli;
pub mod coeffs;
pub mod dims;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod ordering;
pub mod quantum;
pub mod rewrite;
pub mod syntax;

pub use algebra::{AlgebraPresentation, CommutationRule, Element, Generator, GeneratorIndex, Label, Monomial};
pub use coeffs::{CoeffError, FieldElement, LaurentPoly, QMode, RatFunc};
pub use error::{Error, Result};
pub use ordering::OrderingSpec;
