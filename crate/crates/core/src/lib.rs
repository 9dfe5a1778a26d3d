//! Exact arithmetic for combinatorial semigroup bialgebras.
//!
//! A commutative graded semigroup `S` with finite fibers defines a coproduct
//! `Δ_S` on the free algebra over the letters `y_s`. The shuffle bialgebra
//! (trivial semigroup) and the stuffle bialgebra (`(ℕ⁺, +)`) are special
//! cases. On top of that structure this crate builds PBW bases over Lyndon
//! words and their duals, the primitive projector `π₁`, the multiplicativity
//! criterion for dual bases and truncated Schützenberger factorizations.

pub mod bases;
pub mod bialgebra;
pub mod cli;
pub mod error;
pub mod factorization;
pub mod linalg;
pub mod poly;
pub mod semigroup;
pub mod words;

pub use bialgebra::{Bialgebra, GradedEndo};
pub use error::{Error, Result};
pub use poly::{Poly, Rational, TensorPoly};
pub use semigroup::{Product, SemigroupElement, SemigroupSpec};
pub use words::{Alphabet, LetterOrder, MultiIndex, Word};
