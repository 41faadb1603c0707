//! Exact arithmetic for real Clifford algebras `R_{p,q}` together with the
//! machinery that ties U(n)-structures on `R^{2n}` to primitive idempotents,
//! minimal left ideals and their division rings.
//!
//! Everything is computed over the rationals; no floating point is used.
//!
//! The main entry points:
//!
//! * [`algebra`] - signatures, blades, multivectors, the geometric and exterior products.
//! * [`maps`] - the quantization and symbol maps and their restrictions to subalgebras.
//! * [`linalg`] - exact row reduction and greedy basis extraction.
//! * [`ideals`] - Radon-Hurwitz numbers, the mod 8 classification, primitive idempotents.
//! * [`unitary`] - Kahler forms, the Kahler polynomial, induced idempotents and recovery.
//! * [`text`] / [`report`] - the text grammar, JSON schema and command front end.

pub mod algebra;
pub mod error;
pub mod ideals;
pub mod linalg;
pub mod maps;
pub mod report;
pub mod text;
pub mod unitary;

pub use algebra::{
    blades_commute, mul_blades, pseudoscalar, rat, wedge_blades, Blade, Multivector, Rational,
    Signature, MAX_GENERATORS,
};
pub use error::{Error, Result};
