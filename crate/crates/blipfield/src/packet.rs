use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{MomentumGrid, SpatialGrid};

/// Direction of propagation. `Plus` moves toward increasing x, `Minus`
/// toward decreasing x. This discrete label doubles the Hilbert space so
/// that localized packets can be transported rigidly in either direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    H,
    V,
}

/// Complex amplitude field over a spatial grid, tagged with a propagation
/// sign and a polarization. Amplitudes carry units of length^(-1/2) so that
/// `sum |amp|^2 dx` is a probability.
#[derive(Debug, Clone, PartialEq)]
pub struct BlipWavepacket {
    grid: SpatialGrid,
    s: Sign,
    lambda: Polarization,
    amp: Vec<Complex64>,
}

/// Mass fraction allowed outside the effective support interval.
pub const SUPPORT_MASS_TOL: f64 = 1e-12;

/// Effective support of a localized packet: the smallest grid interval
/// holding all but [`SUPPORT_MASS_TOL`] of the probability mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lo: f64,
    pub hi: f64,
}

impl Support {
    pub fn radius(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }

    /// Distance from `x` to the interval (zero inside).
    pub fn distance(&self, x: f64) -> f64 {
        (self.lo - x).max(x - self.hi).max(0.0)
    }
}

impl BlipWavepacket {
    pub fn new(grid: SpatialGrid, s: Sign, lambda: Polarization, amp: Vec<Complex64>) -> Result<Self> {
        if amp.len() != grid.n() {
            return Err(Error::GridMismatch);
        }
        Ok(BlipWavepacket { grid, s, lambda, amp })
    }

    pub fn zero(grid: SpatialGrid, s: Sign, lambda: Polarization) -> Self {
        BlipWavepacket { grid, s, lambda, amp: vec![Complex64::new(0.0, 0.0); grid.n()] }
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn s(&self) -> Sign {
        self.s
    }

    pub fn lambda(&self) -> Polarization {
        self.lambda
    }

    pub fn amp(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn amp_mut(&mut self) -> &mut [Complex64] {
        &mut self.amp
    }

    pub fn into_amp(self) -> Vec<Complex64> {
        self.amp
    }

    /// `sum_j |amp_j|^2 dx`.
    pub fn norm_sq(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.dx()
    }

    /// Rescale to unit norm. Errors on the zero packet.
    pub fn normalize(&mut self) -> Result<()> {
        let n2 = self.norm_sq();
        if !(n2 > 0.0 && n2.is_finite()) {
            return Err(Error::NonPositive { what: "norm_sq", value: n2 });
        }
        let inv = 1.0 / n2.sqrt();
        for a in &mut self.amp {
            *a *= inv;
        }
        Ok(())
    }

    /// Probability-weighted mean of x.
    pub fn mean_position(&self) -> f64 {
        let dx = self.grid.dx();
        let mut m = 0.0;
        let mut w = 0.0;
        for (j, a) in self.amp.iter().enumerate() {
            let p = a.norm_sqr() * dx;
            m += self.grid.x(j) * p;
            w += p;
        }
        m / w
    }

    /// Smallest grid interval holding all but [`SUPPORT_MASS_TOL`] of the
    /// mass, or `NotLocalized` when no such interval sits comfortably inside
    /// the grid (packets with heavy power-law tails, e.g. one-sided spectra).
    pub fn effective_support(&self) -> Result<Support> {
        let dx = self.grid.dx();
        let total = self.norm_sq();
        if !(total > 0.0) {
            return Err(Error::NotLocalized);
        }
        let half_tol = 0.5 * SUPPORT_MASS_TOL * total;
        let n = self.grid.n();

        let mut acc = 0.0;
        let mut ilo = 0;
        for j in 0..n {
            acc += self.amp[j].norm_sqr() * dx;
            if acc > half_tol {
                ilo = j;
                break;
            }
        }
        acc = 0.0;
        let mut ihi = n - 1;
        for j in (0..n).rev() {
            acc += self.amp[j].norm_sqr() * dx;
            if acc > half_tol {
                ihi = j;
                break;
            }
        }
        if ihi < ilo {
            return Err(Error::NotLocalized);
        }
        let lo = self.grid.x(ilo);
        let hi = self.grid.x(ihi);
        // A localized packet occupies a small fraction of the grid and keeps
        // clear of the periodic boundary.
        let margin = 3.0 * dx;
        if hi - lo > self.grid.length() / 2.0
            || lo < self.grid.x_min() + margin
            || hi > self.grid.x_max() - margin
        {
            return Err(Error::NotLocalized);
        }
        Ok(Support { lo, hi })
    }
}

/// Complex amplitudes over the conjugate wavenumber grid, in FFT bin order.
///
/// `s` is the propagation sign carried through the signed transforms; it is
/// `None` for standard-model spectra, which have no such label.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumWavepacket {
    grid: MomentumGrid,
    s: Option<Sign>,
    lambda: Polarization,
    amp: Vec<Complex64>,
}

impl MomentumWavepacket {
    pub fn new(
        grid: MomentumGrid,
        s: Option<Sign>,
        lambda: Polarization,
        amp: Vec<Complex64>,
    ) -> Result<Self> {
        if amp.len() != grid.n() {
            return Err(Error::GridMismatch);
        }
        Ok(MomentumWavepacket { grid, s, lambda, amp })
    }

    pub fn grid(&self) -> &MomentumGrid {
        &self.grid
    }

    pub fn s(&self) -> Option<Sign> {
        self.s
    }

    pub fn lambda(&self) -> Polarization {
        self.lambda
    }

    pub fn amp(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn amp_mut(&mut self) -> &mut [Complex64] {
        &mut self.amp
    }

    /// `sum_m |amp_m|^2 dk`.
    pub fn norm_sq(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.dk()
    }

    /// Probability-weighted mean of the signed wavenumber.
    pub fn mean_wavenumber(&self) -> f64 {
        let dk = self.grid.dk();
        let mut m = 0.0;
        let mut w = 0.0;
        for (i, a) in self.amp.iter().enumerate() {
            let p = a.norm_sqr() * dk;
            m += self.grid.k(i) * p;
            w += p;
        }
        m / w
    }
}

/// Normalized Gaussian packet `exp(-(x-x0)^2 / 4 sigma^2) * exp(i k0 x)`.
///
/// `sigma` must be resolvable on the grid and the 6-sigma support must keep
/// a further 6-sigma clearance from the periodic boundary, so wrap-around
/// contamination stays far below test tolerances.
pub fn gaussian_packet(
    grid: &SpatialGrid,
    x0: f64,
    sigma: f64,
    k0: f64,
    s: Sign,
    lambda: Polarization,
) -> Result<BlipWavepacket> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::NonPositive { what: "sigma", value: sigma });
    }
    if sigma <= 2.0 * grid.dx() {
        return Err(Error::SigmaUnresolvable { sigma, dx: grid.dx() });
    }
    if !grid.contains(x0) {
        return Err(Error::param(format!(
            "packet center x0 = {x0} lies outside the grid [{}, {}]",
            grid.x_min(),
            grid.x_min() + grid.length()
        )));
    }
    let lo = x0 - 6.0 * sigma;
    let hi = x0 + 6.0 * sigma;
    if lo - grid.x_min() < 6.0 * sigma || (grid.x_min() + grid.length()) - hi < 6.0 * sigma {
        return Err(Error::TouchesBoundary { lo, hi });
    }
    let amp: Vec<Complex64> = grid
        .positions()
        .map(|x| {
            let env = (-(x - x0).powi(2) / (4.0 * sigma * sigma)).exp();
            env * Complex64::new(0.0, k0 * x).exp()
        })
        .collect();
    let mut packet = BlipWavepacket::new(*grid, s, lambda, amp)?;
    packet.normalize()?;
    Ok(packet)
}

/// Normalized narrow spectral Gaussian `exp(-(k-k0)^2 / 4 sigma_k^2)` built
/// directly on the wavenumber grid. Stands in for a sharp mode at `k0`.
pub fn spectral_gaussian_packet(
    grid: &MomentumGrid,
    k0: f64,
    sigma_k: f64,
    s: Sign,
    lambda: Polarization,
) -> Result<MomentumWavepacket> {
    if !(sigma_k > 0.0 && sigma_k.is_finite()) {
        return Err(Error::NonPositive { what: "sigma_k", value: sigma_k });
    }
    if sigma_k <= 2.0 * grid.dk() {
        return Err(Error::SigmaUnresolvable { sigma: sigma_k, dx: grid.dk() });
    }
    if k0.abs() + 6.0 * sigma_k > grid.k_max() {
        return Err(Error::param(format!(
            "spectral packet at k0 = {k0} with width {sigma_k} exceeds the Nyquist band"
        )));
    }
    let amp: Vec<Complex64> = grid
        .wavenumbers()
        .map(|k| Complex64::new((-(k - k0).powi(2) / (4.0 * sigma_k * sigma_k)).exp(), 0.0))
        .collect();
    let mut p = MomentumWavepacket::new(*grid, Some(s), lambda, amp)?;
    let n2 = p.norm_sq();
    let inv = 1.0 / n2.sqrt();
    for a in &mut p.amp {
        *a *= inv;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn grid() -> SpatialGrid {
        SpatialGrid::centered(200.0, 2048).unwrap()
    }

    #[test]
    fn gaussian_is_normalized() {
        let p = gaussian_packet(&grid(), 0.0, 1.0, 0.0, Sign::Plus, Polarization::H).unwrap();
        assert_abs_diff_eq!(p.norm_sq(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn gaussian_mean_position_is_center() {
        let p = gaussian_packet(&grid(), 0.0, 1.0, 0.0, Sign::Plus, Polarization::H).unwrap();
        assert_abs_diff_eq!(p.mean_position(), 0.0, epsilon = 1e-12);
        let q = gaussian_packet(&grid(), 7.25, 1.5, 0.0, Sign::Minus, Polarization::V).unwrap();
        assert_abs_diff_eq!(q.mean_position(), 7.25, epsilon = 1e-10);
    }

    #[test]
    fn gaussian_rejects_unresolvable_sigma() {
        let g = grid();
        let err = gaussian_packet(&g, 0.0, 0.1, 0.0, Sign::Plus, Polarization::H).unwrap_err();
        assert!(matches!(err, Error::SigmaUnresolvable { .. }));
    }

    #[test]
    fn gaussian_rejects_boundary_contact() {
        let g = grid();
        let err = gaussian_packet(&g, 95.0, 1.0, 0.0, Sign::Plus, Polarization::H).unwrap_err();
        assert!(matches!(err, Error::TouchesBoundary { .. }));
        let err = gaussian_packet(&g, 150.0, 1.0, 0.0, Sign::Plus, Polarization::H).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn effective_support_brackets_a_gaussian() {
        let p = gaussian_packet(&grid(), 3.0, 1.0, 2.0, Sign::Plus, Polarization::H).unwrap();
        let s = p.effective_support().unwrap();
        assert!(s.lo < 3.0 - 6.0 && s.hi > 3.0 + 6.0, "support {s:?} too narrow");
        assert!(s.radius() < 9.0, "support {s:?} too wide");
        assert_eq!(s.distance(3.0), 0.0);
        assert!(s.distance(s.hi + 2.0) > 1.9);
    }

    #[test]
    fn zero_packet_has_no_support() {
        let p = BlipWavepacket::zero(grid(), Sign::Plus, Polarization::H);
        assert!(matches!(p.effective_support(), Err(Error::NotLocalized)));
    }

    #[test]
    fn spectral_gaussian_normalized_and_centered() {
        let g = grid().momentum();
        let p = spectral_gaussian_packet(&g, 5.0, 0.25, Sign::Plus, Polarization::H).unwrap();
        assert_abs_diff_eq!(p.norm_sq(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.mean_wavenumber(), 5.0, epsilon = 1e-9);
    }
}
