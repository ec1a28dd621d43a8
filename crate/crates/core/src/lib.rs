//! Monte Carlo study of entangled pairs of two-level systems whose amplitudes
//! live in the real, complex, or quaternionic numbers.
//!
//! The pipeline runs in layers. [`scalar`] defines the three coefficient
//! algebras behind one trait; [`linalg`] supplies the 4x4 Hermitian kernel
//! (eigenvalues, PSD square roots) those algebras share; [`states`] builds
//! normalized pure states and density matrices; [`sampling`] draws them
//! uniformly from seeded, worker-sharded streams; [`entanglement`] computes
//! concurrence and entanglement of formation plus the closed-form families
//! used as references; [`analysis`] reduces sample sets to densities, summary
//! statistics, and result tables; [`verify`] replays every headline number
//! against an independent oracle and reports pass or fail per criterion.
//!
//! The `tribit` binary in the companion CLI crate exposes the experiments and
//! the verification suite; the wasm crate exposes a browser subset.

pub mod analysis;
pub mod entanglement;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod states;
pub mod verify;
