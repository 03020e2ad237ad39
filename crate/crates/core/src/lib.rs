//! Exact computation of knot and link concordance obstructions.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactalg`]: rationals, Laurent polynomials over ℚ, factorisation,
//!   and the torsion quotient ℚ(t)/ℚ[t,t⁻¹].
//! * [`seifert`]: Seifert matrices and the abelian invariants they carry
//!   (Alexander polynomial, Levine-Tristram signature function, its
//!   certified integral ρ₀, Arf invariant).
//! * [`alexmod`]: the rational Alexander module, its Blanchfield form and
//!   the lattice of self-annihilating submodules.
//! * [`freegroup`]: free-group words with an exact derived-series depth
//!   oracle built on iterated Magnus embeddings.
//! * [`infection`]: the construction language for knots and links built by
//!   infection, Bing doubling and generalized doubling operators.
//! * [`rhocalc`]: symbolic ρ-invariant terms and first-order signatures.
//! * [`verdict`]: sliceness and solvability verdicts with hypothesis ledgers.
//! * [`document`]: the JSON input document consumed by the command line tool.

pub mod alexmod;
pub mod document;
pub mod error;
pub mod exactalg;
pub mod exec;
pub mod freegroup;
pub mod infection;
pub mod knots;
pub mod rhocalc;
pub mod seifert;
pub mod verdict;

pub use error::{Error, Result};
pub use exec::Exec;
