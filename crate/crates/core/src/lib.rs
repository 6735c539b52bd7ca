//! Numerical laboratory for positive radial solutions of
//!
//! ```text
//! -Δu = |u|^{p-1} u + M |∇u|^q        (p > 1, q > 1, M ∈ ℝ)
//! ```
//!
//! The crate integrates the radial profile equation from the singular
//! origin, classifies trajectories (shooting), evaluates the closed-form
//! critical constants and energy functions attached to the equation,
//! solves for constant separable solutions and their bifurcation points,
//! and checks the known a priori bounds as computable predicates.

pub mod diagnostics;
pub mod ode;
pub mod params;
pub mod radial;
pub mod separable;
pub mod shooting;
pub mod util;
pub mod verify;

pub use params::{CriticalConstants, ProblemParams, Regime, ScalingKind, ScalingMap};
pub use radial::{Classification, IntegratorConfig, RadialState, Trajectory};
