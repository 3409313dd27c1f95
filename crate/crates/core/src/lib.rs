//! Vertical-strip LLT polynomials indexed by Schröder paths.
//!
//! The polynomial of a path is computed three independent ways: by
//! enumerating colorings of its decorated unit-interval graph, by summing
//! over orientations (which gives the elementary expansion directly after
//! `q ↦ q + 1`), and by a recursion driven only by linear relations between
//! paths. The remaining modules check those relations exhaustively and build
//! Schur expansions, Hall–Littlewood functions and the diagonal-harmonics
//! path sums on top.
//!
//! All scalars are Laurent polynomials in `q, t`, generic over an exact
//! field. [`Coeff`] and [`Sym`] fix that field to [`BigRational`].

pub mod coeffring;
pub mod error;
pub mod harmonics;
pub mod llt;
pub mod partitions;
pub mod relations;
pub mod schroeder;
pub mod schur;
pub mod symfunc;

pub use num_rational::{BigRational, Rational64};

pub use coeffring::{Coefficient, LaurentQT};
pub use error::{Error, Result};
pub use partitions::{Composition, Partition};
pub use schroeder::{DecoratedGraph, SchroederPath, Step};
pub use symfunc::{Basis, SymFunc};

/// Laurent polynomial in `q, t` over arbitrary-precision rationals.
pub type Coeff = LaurentQT<BigRational>;
/// Symmetric function with [`Coeff`] coefficients.
pub type Sym = SymFunc<BigRational>;
/// Machine-word variants; overflow panics.
pub type SmallCoeff = LaurentQT<Rational64>;
pub type SmallSym = SymFunc<Rational64>;
