//! Numerical fractal calculus on Cantor-type subsets of the real line and
//! the closed-form quantum mechanics built on top of it.
//!
//! The calculus half provides the flag function, coarse-grained mass, mass
//! function, gamma-dimension estimation, and the integral staircase
//! `S_F^alpha(x)` with three interchangeable backends (finite-depth numeric,
//! analytic Cantor function, and the `x^alpha` power-law surrogate), together
//! with F^alpha-differentiation and F^alpha-integration against a staircase.
//!
//! The quantum half evaluates hydrogen-atom radial wavefunctions, probability
//! densities, and energy levels, and harmonic-oscillator eigenfunctions,
//! densities, and spectra, all expressed through the staircase, with
//! fractal-time phase evolution of superpositions.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to drive from concurrent parameter sweeps.

pub mod error;
pub mod fcalc;
pub mod fractalset;
pub mod hydrogen;
pub mod measure;
pub mod oscillator;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
