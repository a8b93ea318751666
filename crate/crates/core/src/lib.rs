//! Exact and floating zero counts on the unit circle for polynomials with
//! coefficients from small finite sets, together with the surrounding
//! machinery: constructions of the interesting families, cosine-form
//! transforms, L1-norm bound checks, and reproducible family scans.

pub mod arith;
pub mod error;
pub mod families;
pub mod l1;
pub mod poly;
pub mod scan;
pub mod transforms;
pub mod zeros;

pub use error::{Error, Result};
pub use poly::{Alphabet, CosinePoly, Poly};
pub use zeros::{CountMethod, ZeroEntry, ZeroReport};
