//! Spectral response of spatially smeared two-level (Unruh-DeWitt type)
//! detectors, inertial or uniformly accelerated as Fermi-Walker rigid bodies.
//!
//! The crate is organised around the pipeline
//!
//! 1. [`profiles`] - spatial smearing profiles F(x) and their spectral
//!    profiles F^(k) (analytic where possible, adaptive quadrature otherwise);
//! 2. [`qed_bridge`] - smearing functions and Pauli-basis coupling densities
//!    derived from atomic wavefunctions;
//! 3. [`kinematics`] - Fermi-Walker rigid trajectory geometry and the chirped
//!    resonance of a uniformly accelerated frame;
//! 4. [`response`] - wavepacket correlation kernels and the first-order
//!    excitation probability;
//! 5. [`quadrature`] - the oscillation-aware integration engine underneath.

pub mod grid;
pub mod kinematics;
pub mod profiles;
pub mod qed_bridge;
pub mod quadrature;
pub mod response;

pub use num_complex::Complex64;
