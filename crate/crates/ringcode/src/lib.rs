//! Linear codes over small finite commutative rings.
//!
//! The crate provides exact arithmetic for four concrete ring families
//! (Z_l, F2+uF2, F2+uF2+vF2+uvF2, and prime fields), general weight functions
//! with exact rational coefficients, Gray maps to prime-field vectors with
//! exhaustive verification of their properties, Singleton-type bound checks
//! decided by arbitrary-precision integer comparison, and an exhaustive
//! scanner that verifies every bound over all small linear codes.

pub mod bounds;
pub mod cli;
pub mod code;
pub mod error;
pub mod gray;
pub mod ring;
pub mod scan;
pub mod weights;

pub use error::RingcodeError;
pub use ring::{RingFamily, RingSpec, RingVector};

pub use cli::run;
