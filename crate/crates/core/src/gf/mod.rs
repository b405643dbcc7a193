//! Finite-field substrate: prime powers, explicit fields, towers, linear algebra.

pub mod arith;
pub mod field;
pub mod linalg;
mod poly;
pub mod tower;

pub use arith::{gcd_helper, is_prime, prime_powers_up_to, PrimePower, ORDER_CEILING};
pub use field::{FieldCtx, FieldDescriptor, FieldElem};
pub use tower::TowerCtx;
