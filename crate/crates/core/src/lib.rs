//! Exact constructions and axiom checkers for inverse semialgebras, partial
//! derivations, partial actions of Lie algebras and F-inverse structures.

pub mod algebra;
pub mod battery;
pub mod error;
pub mod exactalg;
pub mod exel;
pub mod finverse;
pub mod isv;
pub mod paction;
pub mod pmaps;
pub mod semilat;

pub use error::{Error, Result};
