//! Numerical laboratory for life-span estimates of the nonlinear heat
//! equation `∂ₜu = Δu + |x|^l |u|^α u` on ℝ^N (truncated to a box).
//!
//! The crate has three layers:
//!
//! * analytic layer — closed-form life-span lower/upper bounds with
//!   explicit constants ([`bounds`]), the scaling identities behind them
//!   ([`scaling`]) and the weighted heat-kernel smoothing experiments
//!   ([`kernel_verify`]);
//! * semigroup layer — the heat semigroup on a truncated cell-centered
//!   grid with exact cell-integrated Gaussian weights ([`semigroup`]),
//!   including the sector (Dirichlet, odd-reflection) variant;
//! * solver layer — Strang splitting with the exact pointwise nonlinear
//!   flow and type-I blow-up time extrapolation ([`solver`]), plus a
//!   Picard fixed-point local solver.
//!
//! Grids, sampled fields and weighted Lebesgue norms live in [`grid`];
//! the symbolic catalogue of initial data in [`profiles`].

pub mod bounds;
pub mod grid;
pub mod kernel_verify;
pub mod opnorms;
pub mod profiles;
pub mod quad;
pub mod scaling;
pub mod semigroup;
pub mod solver;


pub use grid::{Field, Grid, NormSpec};
pub use profiles::{AngularPart, Profile};
