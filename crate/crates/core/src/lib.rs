//! Exact computations with monomial ideals: symbolic powers, Betti numbers
//! and regularity, linear quotients, packing properties, and generators and
//! initial ideals of symbolic Rees algebras.

pub mod error;
pub mod families;
pub mod format;
mod grid;
pub mod ideal;
pub mod linalg;
pub mod linearity;
pub mod monomial;
pub mod packing;
pub mod par;
pub mod primes;
pub mod rees;
pub mod sweep;
pub mod symbolic;
pub mod toric;

pub use error::{Error, Result};
pub use ideal::{intersect_all, minimalize, MonomialIdeal};
pub use monomial::Monomial;
