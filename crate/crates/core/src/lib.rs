//! Exact-arithmetic kernel for difference algebra: difference polynomial
//! rings, limit degrees, difference curves, divisors, and σ-finite
//! morphisms between them.

pub mod error;
pub mod scalar;
pub mod multipoly;
pub mod linalg;
pub mod ideal;
pub mod rig;
pub mod tower;
pub mod ground;
pub mod diffring;
pub mod skew;
pub mod extensions;
pub mod curve;
pub mod divisor;
pub mod morphism;
