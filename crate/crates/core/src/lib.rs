//! Gamma-function family with a principal-part calculus.
//!
//! Complex Γ, ψ, H₁ and Ei; Kurepa's function K and the alternating
//! function A with their series companions; Riemann ζ, Dirichlet η and β;
//! residues and principal parts (the c₀ Laurent coefficient) at arbitrary
//! points; Casimir energies of spectral zeta models; and a δ = x·D solver
//! for Euler equidimensional equations.

// coefficient tables are kept at their published precision
#![allow(clippy::excessive_precision)]

pub mod config;
pub mod dirichlet;
pub mod error;
pub mod eulerops;
pub mod kurepa;
pub mod meromorphic;
pub mod quadrature;
pub mod registry;
pub mod specfun;
pub mod verify;

pub use config::EvalConfig;
pub use error::{Error, Result};

/// Complex argument and result type used throughout.
pub type ComplexValue = num_complex::Complex64;
