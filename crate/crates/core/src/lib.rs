//! Exact-arithmetic toolkit for deciding exceptionality and weak
//! exceptionality of quotient singularities C^{n+1}/G for finite complex
//! matrix groups in dimensions 2 through 5.
//!
//! Everything is computed over exact cyclotomic numbers; there is no floating
//! point anywhere. The main entry points are [`catalog`] (constructors for the
//! named groups), [`classify`] (the decision engine), and [`brieskorn`] (the
//! Brieskorn–Pham exponent procedures).

pub mod abelian;
pub mod bounds;
pub mod brieskorn;
pub mod catalog;
pub mod chars;
pub mod classify;
pub mod cyc;
pub mod dixon;
pub mod error;
pub mod gmatrix;
pub mod group;
pub mod matgroup;
pub mod oracle;
pub mod primes;
pub mod rat;
pub mod structure;

pub use cyc::Cyc;
pub use error::{Error, Result};
pub use rat::Rat;
