//! Exact invariants of modular curves of D-elliptic sheaves over F_q(T)
//! and of their Atkin-Lehner quotients: genus, fixed points of the
//! involutions, deficient places, and the parity of the Jacobian.

pub mod checks;
pub mod classnum;
pub mod cli;
pub mod error;
pub mod ffpoly;
pub mod modcurve;
pub mod search;
pub mod symbols;

pub use error::{Error, Result};
