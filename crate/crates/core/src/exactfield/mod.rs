//! Exact arithmetic: integers, rationals, Laurent polynomials in `q`,
//! polynomials in `x, y, z, q` and their fractions.

pub mod gcd;
pub mod int;
pub mod modp;
pub mod mpoly;
pub mod parse;
pub mod qpoly;
pub mod rat;
pub mod ratfun;

pub use int::Int;
pub use mpoly::{MPoly, Mono, Var};
pub use parse::{parse_ratfun, parse_ratfun_with};
pub use qpoly::QPoly;
pub use rat::Rat;
pub use ratfun::{qpoch, RatFun, Subst};
