//! Numerics for the leafwise elliptic equation
//! −Δu − βu = Ψ₁u⁻¹ − Ψ₂u⁻³ + Ψ₃u³ on discretized flat tori.
//!
//! The stationary problem is solved by evolving its parabolic counterpart to
//! a stable attractor and certifying the result: spectral parameters of
//! ℋ = −Δ − β, envelope root ladders per sign regime of Ψ₃, resultant
//! separation certificates, comparison-ODE barriers, decay-rate fits and
//! Newton-refined stationary solutions with positive linearization gaps.

pub mod conditions;
pub mod cubic;
pub mod envelope;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod heat;
pub mod ladder;
pub mod ode;
pub mod oracle;
pub mod spectral;
pub mod stationary;

pub use envelope::{EnvelopeSet, RegimeTag};
pub use error::{Error, Result};
pub use grid::{ScalarField, TorusGrid};
pub use ladder::RootLadder;
pub use spectral::SpectralResult;
