//! Exact computations on free nilpotent Lie groups: Hall bases, their
//! polynomial vector-field realization, extremal polynomials, and the
//! verification and classification of extremal curves.

pub mod cli;
pub mod curve;
pub mod error;
pub mod exact;
pub mod extremal;
pub mod golden;
pub mod hall;
pub mod quotient;
pub mod realization;

pub use error::{Error, Result};
pub use extremal::ExtremalPolynomial;
pub use hall::{HallBasis, HallElement};
pub use realization::{BuildOptions, GroupContext};
