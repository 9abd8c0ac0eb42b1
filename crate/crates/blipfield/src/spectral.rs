//! Signed position <-> momentum transforms and the regularization map that
//! turns probability amplitudes into field amplitudes.
//!
//! The transform pair carries the propagation sign in the exponent,
//!
//! ```text
//! psi~_s(k) = (2 pi)^(-1/2) Int dx e^(-i s k x) psi_s(x)
//! psi_s(x)  = (2 pi)^(-1/2) Int dk e^(+i s k x) psi~_s(k)
//! ```
//!
//! discretized in the unique unitary lattice convention, so Parseval holds
//! exactly up to rounding. The regularization operator multiplies the
//! spectrum by `Omega(k) = Omega0 sqrt(|k|)` (optionally damped by
//! `exp(-eps |k|)`); its real-space kernel is
//! `-sqrt(hbar / (4 pi eps0 A c)) |x - x'|^(-3/2)` away from coincidence.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::grid::{MomentumGrid, SpatialGrid};
use crate::packet::{BlipWavepacket, MomentumWavepacket, Sign};
use crate::units::Units;

/// How the regularization operator is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularizationMode {
    /// Multiply the spectrum by `Omega(k) e^(-eps |k|)`. Exact on the grid;
    /// `eps = 0` is allowed.
    Spectral,
    /// Convolve with the smoothed real-space kernel. Requires `eps > 0`
    /// because the bare kernel diverges at coincidence. Intended for
    /// cross-validation and cavity quadrature.
    RealSpace,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizationSpec {
    pub units: Units,
    pub epsilon: f64,
    pub mode: RegularizationMode,
}

impl RegularizationSpec {
    pub fn new(units: Units, epsilon: f64, mode: RegularizationMode) -> Result<Self> {
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidRegulator { eps: epsilon, why: "must be finite and >= 0" });
        }
        if mode == RegularizationMode::RealSpace && epsilon == 0.0 {
            return Err(Error::InvalidRegulator {
                eps: epsilon,
                why: "the real-space kernel diverges at coincidence; use eps > 0 or spectral mode",
            });
        }
        Ok(RegularizationSpec { units, epsilon, mode })
    }

    pub fn spectral(units: Units, epsilon: f64) -> Result<Self> {
        Self::new(units, epsilon, RegularizationMode::Spectral)
    }
}

/// Field-amplitude scale of the wavenumber-k mode:
/// `Omega(k) = sqrt(2 hbar |k| / (eps0 A c))`. Even in k and zero at k = 0,
/// so the zero mode carries probability but no field.
pub fn omega(k: f64, units: &Units) -> f64 {
    units.omega0() * k.abs().sqrt()
}

fn raw_signed_forward(grid: &SpatialGrid, amp: &[Complex64], s: Sign) -> Vec<Complex64> {
    let n = grid.n();
    let mut buf = amp.to_vec();
    let mut planner = FftPlanner::new();
    match s {
        Sign::Plus => planner.plan_fft_forward(n).process(&mut buf),
        Sign::Minus => planner.plan_fft_inverse(n).process(&mut buf),
    }
    let mgrid = grid.momentum();
    let scale = grid.dx() / (2.0 * PI).sqrt();
    let sv = s.value();
    for (m, b) in buf.iter_mut().enumerate() {
        let phase = Complex64::new(0.0, -sv * mgrid.k(m) * grid.x_min()).exp();
        *b *= scale * phase;
    }
    buf
}

fn raw_signed_inverse(mgrid: &MomentumGrid, amp: &[Complex64], s: Sign) -> Vec<Complex64> {
    let grid = mgrid.spatial();
    let n = grid.n();
    let sv = s.value();
    let mut buf: Vec<Complex64> = amp
        .iter()
        .enumerate()
        .map(|(m, a)| a * Complex64::new(0.0, sv * mgrid.k(m) * grid.x_min()).exp())
        .collect();
    let mut planner = FftPlanner::new();
    match s {
        Sign::Plus => planner.plan_fft_inverse(n).process(&mut buf),
        Sign::Minus => planner.plan_fft_forward(n).process(&mut buf),
    }
    let scale = mgrid.dk() / (2.0 * PI).sqrt();
    for b in buf.iter_mut() {
        *b *= scale;
    }
    buf
}

/// Signed transform to the momentum representation. Unitary: the momentum
/// norm equals the position norm.
pub fn to_momentum(psi: &BlipWavepacket) -> MomentumWavepacket {
    let buf = raw_signed_forward(psi.grid(), psi.amp(), psi.s());
    MomentumWavepacket::new(psi.grid().momentum(), Some(psi.s()), psi.lambda(), buf)
        .expect("conjugate grid sizes match")
}

/// Inverse signed transform back to position space. Standard-model spectra
/// (no sign tag) are rejected; they evolve through [`crate::dynamics`].
pub fn to_position(psit: &MomentumWavepacket) -> Result<BlipWavepacket> {
    let s = psit.s().ok_or_else(|| {
        Error::param("momentum packet carries no propagation sign; spectra of the standard model
have no position-space counterpart here")
    })?;
    let buf = raw_signed_inverse(psit.grid(), psit.amp(), s);
    BlipWavepacket::new(*psit.grid().spatial(), s, psit.lambda(), buf)
}

/// Plain (unsigned, `e^(-i k x)`) spectrum of an amplitude array, used by the
/// standard model where the wavenumber sign doubles as the direction.
pub(crate) fn plain_forward(grid: &SpatialGrid, amp: &[Complex64]) -> Vec<Complex64> {
    raw_signed_forward(grid, amp, Sign::Plus)
}

pub(crate) fn plain_inverse(mgrid: &MomentumGrid, amp: &[Complex64]) -> Vec<Complex64> {
    raw_signed_inverse(mgrid, amp, Sign::Plus)
}

/// Apply the regularization operator to a probability-amplitude packet. The
/// output is shaped like a wavepacket but carries field-amplitude density
/// units, not probability amplitude.
pub fn regularize(psi: &BlipWavepacket, spec: &RegularizationSpec) -> Result<BlipWavepacket> {
    match spec.mode {
        RegularizationMode::Spectral => {
            let mut t = to_momentum(psi);
            let mgrid = *t.grid();
            for (m, a) in t.amp_mut().iter_mut().enumerate() {
                let k = mgrid.k(m);
                *a *= omega(k, &spec.units) * (-spec.epsilon * k.abs()).exp();
            }
            to_position(&t)
        }
        RegularizationMode::RealSpace => {
            if spec.epsilon <= 0.0 {
                return Err(Error::InvalidRegulator {
                    eps: spec.epsilon,
                    why: "real-space convolution needs eps > 0",
                });
            }
            let grid = psi.grid();
            let dx = grid.dx();
            let n = grid.n();
            // Open-line convolution: no periodic images. Agrees with the
            // spectral route for packets kept away from the boundary.
            let mut out = vec![Complex64::new(0.0, 0.0); n];
            for (j, o) in out.iter_mut().enumerate() {
                let xj = grid.x(j);
                let mut acc = Complex64::new(0.0, 0.0);
                for (jp, a) in psi.amp().iter().enumerate() {
                    let kern = kernel_realspace_regulated(xj - grid.x(jp), spec.epsilon, &spec.units)?;
                    acc += kern * a;
                }
                *o = acc * dx;
            }
            BlipWavepacket::new(*grid, psi.s(), psi.lambda(), out)
        }
    }
}

/// Real-space regularization kernel away from coincidence:
/// `-sqrt(hbar / (4 pi eps0 A c)) |delta|^(-3/2)`.
pub fn kernel_realspace(delta: f64, units: &Units) -> Result<f64> {
    if delta == 0.0 {
        return Err(Error::CoincidenceSingularity);
    }
    let coeff = (units.hbar() / (4.0 * PI * units.eps0() * units.area() * units.c())).sqrt();
    Ok(-coeff * delta.abs().powf(-1.5))
}

/// Exponentially smoothed real-space kernel,
/// `Omega0 / (2 sqrt(pi)) * Re (eps - i delta)^(-3/2)`:
/// the exact Fourier partner of `Omega(k) e^(-eps |k|)`. Finite everywhere
/// for `eps > 0` and converging to [`kernel_realspace`] as `eps -> 0`.
pub fn kernel_realspace_regulated(delta: f64, eps: f64, units: &Units) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidRegulator { eps, why: "smoothed kernel needs eps > 0" });
    }
    let z = Complex64::new(eps, -delta);
    Ok(units.omega0() / (2.0 * PI.sqrt()) * z.powf(-1.5).re)
}
