//! Exact q-holonomic machinery: Ore operators, creative telescoping and the
//! inhomogeneous non-commutative A-polynomial of twist knots.

pub mod error;
pub mod exactfield;
pub mod genfun;
pub mod linsolve;
pub mod oreops;
pub mod telescope;
pub mod twistknot;

pub use error::{Error, Result};
