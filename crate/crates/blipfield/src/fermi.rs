//! The beam-splitter / two-detector causality experiment.
//!
//! A localized pulse in a coherent state hits a 50:50 splitter; Detector 1
//! sits a distance `l1` up the vertical arm, Detector 2 a distance `l2 > l1`
//! along the horizontal arm, both of length `width`. The click probability
//! of Detector 1 at `t1` and the conditional click probability of Detector 2
//! at `t2` reduce to window integrals of the model's transition amplitude
//! times closed-form coherent coefficients. Under rigid (blip) transport the
//! two probabilities are exactly proportional at `t2 = t1 + (l2 - l1)/c` and
//! Detector 2 stays silent before light can reach it; under standard
//! evolution neither statement survives.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coherent::{coherent_prefactor, two_photon_weight};
use crate::dynamics::PropagatorKind;
use crate::error::{Error, Result};
use crate::packet::BlipWavepacket;
use crate::spectral;
use crate::units::Units;

/// Beam-splitter to detector distances and the detector length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentGeometry {
    l1: f64,
    l2: f64,
    width: f64,
}

impl ExperimentGeometry {
    pub fn new(l1: f64, l2: f64, width: f64) -> Result<Self> {
        if !(l1 > 0.0 && l1.is_finite()) {
            return Err(Error::NonPositive { what: "l1", value: l1 });
        }
        if !(l2 > l1 && l2.is_finite()) {
            return Err(Error::param(format!("need 0 < l1 < l2, got l1 = {l1}, l2 = {l2}")));
        }
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::NonPositive { what: "width", value: width });
        }
        Ok(ExperimentGeometry { l1, l2, width })
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Light travel time between the two detector faces.
    pub fn delay(&self, units: &Units) -> f64 {
        (self.l2 - self.l1) / units.c()
    }
}

/// Probability series and causality metrics of one experiment run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub t1: Vec<f64>,
    pub p1: Vec<f64>,
    pub t2: Vec<f64>,
    pub p2: Vec<f64>,
    /// `p2(t1 + delay) / p1(t1)` per sample.
    pub ratio: Vec<f64>,
    /// `(max - min) / mean` of the ratio series.
    pub ratio_spread: f64,
    /// Largest Detector-2 click probability sampled before light from the
    /// packet's support could possibly arrive.
    pub early_click_mass: f64,
}

/// 50:50 beam-splitter: `a -> (b + i c) / sqrt(2)`. Returns the horizontal
/// (`b`) and vertical (`c`) register mode functions.
pub fn beam_split(psi_in: &BlipWavepacket) -> (BlipWavepacket, BlipWavepacket) {
    let inv = 1.0 / 2.0_f64.sqrt();
    let mut b = psi_in.clone();
    for a in b.amp_mut() {
        *a *= inv;
    }
    let mut c = psi_in.clone();
    for a in c.amp_mut() {
        *a *= Complex64::new(0.0, inv);
    }
    (b, c)
}

/// Transition amplitude of the model at one space-time point: the rigidly
/// shifted wavefunction for blips, the dispersive plain-spectrum sum for the
/// standard model. Both evaluated spectrally so `x` and `t` are unrestricted.
pub fn transition_amplitude(
    model: PropagatorKind,
    psi: &BlipWavepacket,
    x: f64,
    t: f64,
    units: &Units,
) -> Complex64 {
    let grid = psi.grid();
    let mgrid = grid.momentum();
    let ct = units.c() * t;
    let norm = mgrid.dk() / (2.0 * std::f64::consts::PI).sqrt();
    match model {
        PropagatorKind::Blip => {
            let sv = psi.s().value();
            let ft = spectral::to_momentum(psi);
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, a) in ft.amp().iter().enumerate() {
                let k = mgrid.k(m);
                acc += a * Complex64::new(0.0, sv * k * x - k * ct).exp();
            }
            acc * norm
        }
        PropagatorKind::Standard => {
            let ft = spectral::plain_forward(grid, psi.amp());
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, a) in ft.iter().enumerate() {
                let k = mgrid.k(m);
                acc += a * Complex64::new(0.0, k * x - k.abs() * ct).exp();
            }
            acc * norm
        }
    }
}

/// Model amplitude over the whole grid at one time. Whole-cell blip shifts
/// are evaluated as exact cyclic rotations so window identities hold as
/// identical Riemann sums.
fn amplitude_profile(
    model: PropagatorKind,
    psi: &BlipWavepacket,
    t: f64,
    units: &Units,
) -> Vec<Complex64> {
    let grid = psi.grid();
    if model == PropagatorKind::Blip {
        let cells = units.c() * t / grid.dx();
        let rounded = cells.round();
        if (cells - rounded).abs() < 1e-9 {
            let n = grid.n();
            let shift = rounded as i64 * psi.s().value() as i64;
            let mut out = vec![Complex64::new(0.0, 0.0); n];
            for (j, a) in psi.amp().iter().enumerate() {
                let dst = (j as i64 + shift).rem_euclid(n as i64) as usize;
                out[dst] = *a;
            }
            return out;
        }
    }
    crate::dynamics::evolve(psi, t, model, units).into_amp()
}

/// Window cell range with edges snapped outward to whole cells.
fn window_cells(psi: &BlipWavepacket, lo: f64, hi: f64) -> Result<(usize, usize)> {
    let grid = psi.grid();
    let dx = grid.dx();
    if grid.dx() * 2.0 >= hi - lo {
        return Err(Error::param(format!(
            "detector width {} must exceed two grid cells ({dx} each)",
            hi - lo
        )));
    }
    let j_lo = ((lo - grid.x_min()) / dx).floor();
    let j_hi = ((hi - grid.x_min()) / dx).ceil();
    if j_lo < 0.0 || j_hi >= grid.n() as f64 {
        return Err(Error::param(format!("detector window [{lo}, {hi}] lies outside the grid")));
    }
    Ok((j_lo as usize, j_hi as usize))
}

fn window_integral(profile: &[Complex64], cells: (usize, usize), dx: f64) -> f64 {
    profile[cells.0..=cells.1].iter().map(|a| a.norm_sqr()).sum::<f64>() * dx
}

/// Probability for Detector 1 to click at `t1`:
/// `(1/2) coherent_prefactor(alpha) * Int_{l1}^{l1+width} |A(y, t1)|^2 dy`.
pub fn p1_click(
    model: PropagatorKind,
    psi: &BlipWavepacket,
    geometry: &ExperimentGeometry,
    alpha: Complex64,
    t1: f64,
    units: &Units,
) -> Result<f64> {
    if t1 < 0.0 {
        return Err(Error::NonPositive { what: "t1", value: t1 });
    }
    let cells = window_cells(psi, geometry.l1, geometry.l1 + geometry.width)?;
    let profile = amplitude_profile(model, psi, t1, units);
    Ok(0.5 * coherent_prefactor(alpha) * window_integral(&profile, cells, psi.grid().dx()))
}

/// Conditional probability for Detector 2 to click at `t2` given the earlier
/// Detector-1 click:
/// `(two_photon_weight / 4) / coherent_prefactor * Int_{l2}^{l2+width} |A(x, t2)|^2 dx`.
pub fn p2_click(
    model: PropagatorKind,
    psi: &BlipWavepacket,
    geometry: &ExperimentGeometry,
    alpha: Complex64,
    t2: f64,
    units: &Units,
) -> Result<f64> {
    if t2 < 0.0 {
        return Err(Error::NonPositive { what: "t2", value: t2 });
    }
    let prefactor = coherent_prefactor(alpha);
    if prefactor == 0.0 {
        return Err(Error::UndefinedConditional);
    }
    let cells = window_cells(psi, geometry.l2, geometry.l2 + geometry.width)?;
    let profile = amplitude_profile(model, psi, t2, units);
    Ok(two_photon_weight(alpha) / 4.0 / prefactor
        * window_integral(&profile, cells, psi.grid().dx()))
}

/// Run the full experiment: both probability series over the given Detector-1
/// times, the delayed ratio series with its relative spread, and the largest
/// Detector-2 probability sampled before the earliest causal arrival time.
pub fn causality_report(
    model: PropagatorKind,
    psi: &BlipWavepacket,
    geometry: &ExperimentGeometry,
    alpha: Complex64,
    t1_samples: &[f64],
    units: &Units,
) -> Result<ExperimentResult> {
    if t1_samples.len() < 3 {
        return Err(Error::param(format!(
            "causality report needs at least 3 Detector-1 times, got {}",
            t1_samples.len()
        )));
    }
    let support = psi.effective_support()?;
    let delay = geometry.delay(units);

    let pairs: Vec<(f64, f64)> = t1_samples
        .par_iter()
        .map(|&t1| -> Result<(f64, f64)> {
            let p1 = p1_click(model, psi, geometry, alpha, t1, units)?;
            let p2 = p2_click(model, psi, geometry, alpha, t1 + delay, units)?;
            Ok((p1, p2))
        })
        .collect::<Result<Vec<_>>>()?;
    let p1: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let p2: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    if p1.iter().any(|&v| v == 0.0) {
        return Err(Error::param(
            "a Detector-1 probability vanished; pick t1 samples with the packet overlapping \
             the first window",
        ));
    }
    let ratio: Vec<f64> = p1.iter().zip(&p2).map(|(a, b)| b / a).collect();
    let (lo, hi) = ratio.iter().fold((f64::MAX, f64::MIN), |(l, h), &r| (l.min(r), h.max(r)));
    let mean = ratio.iter().sum::<f64>() / ratio.len() as f64;
    let ratio_spread = (hi - lo) / mean;

    // Detector 2 before light from the support's leading edge can arrive,
    // sampled at whole cells so the blip path stays exact.
    let t_causal = (geometry.l2 - support.hi) / units.c();
    let dx = psi.grid().dx();
    let mut early_times = Vec::new();
    if t_causal > 0.0 {
        let total_cells = (t_causal * units.c() / dx).floor() as usize;
        let stride = (total_cells / 160).max(1);
        let mut j = 0;
        while (j as f64) * dx / units.c() < t_causal {
            early_times.push(j as f64 * dx / units.c());
            j += stride;
        }
    }
    let early: Vec<f64> = early_times
        .par_iter()
        .map(|&t2| p2_click(model, psi, geometry, alpha, t2, units))
        .collect::<Result<Vec<_>>>()?;
    let early_click_mass = early.into_iter().fold(0.0, f64::max);

    Ok(ExperimentResult {
        t1: t1_samples.to_vec(),
        p1,
        t2: t1_samples.iter().map(|&t| t + delay).collect(),
        p2,
        ratio,
        ratio_spread,
        early_click_mass,
    })
}
