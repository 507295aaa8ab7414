//! Exact arithmetic over the rationals: big/small rationals, sparse
//! multivariate Laurent polynomials, gcd and canonical rational functions.

pub mod error;
pub mod gcd;
pub mod parse;
pub mod poly;
pub mod ratfn;
pub mod rational;
pub mod vars;

pub use error::ArithError;
pub use gcd::gcd;
pub use parse::{identifiers, parse_ratfn};
pub use poly::{Mono, Poly, MAX_VARS};
pub use ratfn::{MultiPoly, RatFn};
pub use rational::Rat;
pub use vars::{var_rank, VarSet};
