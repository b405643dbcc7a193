//! Explicit rational points on the degree-(q−1) Fermat curve over GF(q^i),
//! i ∈ {1, 2, 3}, and on the degree-(q−1) Fermat surface over GF(q²),
//! together with brute-force oracles and checkers for the identities and
//! corollaries that the parametrizations imply.

pub mod error;
pub mod gf;

pub use error::{Error, Result};
pub use gf::{FieldCtx, FieldElem, PrimePower, TowerCtx};
pub mod curve;
pub mod points;
pub mod scan;
pub mod surface;
pub mod verify;
pub mod report;
