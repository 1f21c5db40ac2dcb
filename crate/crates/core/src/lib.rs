//! Exact arithmetic in the Jacobian algebra of integro-differential operators
//! on polynomial rings.
//!
//! The algebra in one variable is handled in canonical form as a direct sum of
//! a lifted skew-Laurent part and a finite matrix part ([`a1core`]). Several
//! variables are handled as sums of pure tensors ([`tensorn`]). The ideal
//! lattice, which is purely combinatorial, lives in [`lattice`].
//!
//! All arithmetic is over arbitrary-precision rationals; there is no
//! floating point anywhere in this crate.

pub mod a1core;
pub mod error;
pub mod fmatrix;
pub mod lattice;
pub mod rational;
pub mod ratfun;
pub mod skew;
pub mod tensorn;
pub mod units1;

mod upoly;

pub use a1core::{A1Element, Generator, Poly1, SubsetSpec};
pub use error::{Error, NotAUnitReason, Result};
pub use fmatrix::{FiniteMatrix, MultiIndex};
pub use lattice::{Classification, IdealNF, Pattern, PrimeIdeal};
pub use rational::Rational;
pub use ratfun::{PartialFractions, ShiftRatFun};
pub use skew::SkewLaurent;
pub use tensorn::{MinimalUnit, PolyN, TensorElement};
pub use units1::{HUnit, UnitFactorization};
