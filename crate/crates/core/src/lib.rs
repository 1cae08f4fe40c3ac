//! Flat sub-Lorentzian problems on the Martinet distribution.
//!
//! Two left-invariant-style problems on `M = ℝ³` with horizontal frame
//! `X₁ = ∂ₓ`, `X₂ = ∂_y + (x²/2) ∂_z`:
//!
//! * problem 1 maximizes `∫ √(u₂² − u₁²) dt` over future cone `u₂ ≥ |u₁|`,
//! * problem 2 maximizes `∫ √(u₁² − u₂²) dt` over `u₁ ≥ |u₂|`.
//!
//! The crate evaluates normal extremals in closed form ([`extremals`]),
//! classifies points against the attainable sets ([`geometry`]), inverts
//! the exponential map and builds optimal plans, distances and spheres
//! ([`synthesis`]), and cross-checks all of it with a direct optimizer
//! ([`oracle`]).

pub mod elliptic;
mod error;
pub mod extremals;
pub mod geometry;
pub mod oracle;
pub mod par;
mod quad;
pub mod synthesis;

pub use error::{Error, Result};
pub use geometry::{Point, Problem};
