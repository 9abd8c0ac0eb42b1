//! Two quantizations of the free one-dimensional electromagnetic field on a
//! periodic grid, and the experiments that tell them apart.
//!
//! The local model's excitations ("blips": bosons localized in position)
//! carry a propagation sign `s` and are transported rigidly at the speed of
//! light; field observables are reached through a spectral regularization
//! multiplier `Omega(k) = sqrt(2 hbar |k| / eps0 A c)`. The standard
//! positive-frequency model evolves the plain spectrum with `e^(-i|k|ct)`
//! and disperses. On top of both sit
//!
//! - a beam-splitter / two-detector light-cone causality experiment
//!   ([`fermi`]), exactly proportional under rigid transport and violated by
//!   the standard evolution, and
//! - mirror-image zero-point sums reproducing the closed-form Casimir
//!   forces `-hbar c pi / 12 D^2` (1D) and `-hbar c pi^2 / 240 D^4` per unit
//!   area (3D) ([`casimir`]).
//!
//! All operations are pure functions over immutable values and safe to call
//! concurrently.

pub mod casimir;
pub mod coherent;
pub mod dynamics;
pub mod error;
pub mod extrapolate;
pub mod fermi;
pub mod grid;
pub mod packet;
pub mod spectral;
pub mod units;

pub use error::{Error, Result};
pub use grid::{MomentumGrid, SpatialGrid};
pub use packet::{
    gaussian_packet, spectral_gaussian_packet, BlipWavepacket, MomentumWavepacket, Polarization,
    Sign, Support,
};
pub use units::Units;

pub use num_complex::Complex64;
