use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform periodic discretization of a segment of the x axis.
///
/// Grid points are `x_j = x_min + j * dx`, `j = 0..n`, with `dx = length / n`
/// and `n` a power of two so the conjugate transforms stay fast and exactly
/// unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    length: f64,
    n: usize,
    x_min: f64,
    dx: f64,
}

impl SpatialGrid {
    pub fn new(length: f64, n: usize, x_min: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::NonPositive { what: "grid length", value: length });
        }
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::InvalidGridSize { n });
        }
        if !x_min.is_finite() {
            return Err(Error::NonPositive { what: "x_min", value: x_min });
        }
        Ok(SpatialGrid { length, n, x_min, dx: length / n as f64 })
    }

    /// Grid of total length `length` centered on the origin.
    pub fn centered(length: f64, n: usize) -> Result<Self> {
        Self::new(length, n, -length / 2.0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    /// Largest grid point, `x_min + (n-1) dx`.
    pub fn x_max(&self) -> f64 {
        self.x_min + (self.n - 1) as f64 * self.dx
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.x(j))
    }

    /// Index of the grid cell containing `x` (nearest cell center).
    pub fn nearest_index(&self, x: f64) -> usize {
        let j = ((x - self.x_min) / self.dx).round() as i64;
        j.clamp(0, self.n as i64 - 1) as usize
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.x_min && x <= self.x_min + self.length
    }

    /// The conjugate signed-wavenumber grid.
    pub fn momentum(&self) -> MomentumGrid {
        MomentumGrid { spatial: *self }
    }
}

/// The discrete wavenumber set conjugate to a [`SpatialGrid`].
///
/// `dk = 2 pi / length`; stored in FFT bin order with values covering
/// `(-pi/dx, pi/dx]` (the Nyquist bin is assigned the positive sign).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumGrid {
    spatial: SpatialGrid,
}

impl MomentumGrid {
    pub fn spatial(&self) -> &SpatialGrid {
        &self.spatial
    }

    pub fn n(&self) -> usize {
        self.spatial.n
    }

    pub fn dk(&self) -> f64 {
        2.0 * PI / self.spatial.length
    }

    /// Nyquist wavenumber `pi / dx`.
    pub fn k_max(&self) -> f64 {
        PI / self.spatial.dx
    }

    /// Signed wavenumber of FFT bin `m`.
    pub fn k(&self, m: usize) -> f64 {
        let n = self.spatial.n;
        debug_assert!(m < n);
        if m <= n / 2 {
            m as f64 * self.dk()
        } else {
            (m as f64 - n as f64) * self.dk()
        }
    }

    /// Bin holding `-k(m)`. The zero and Nyquist bins map to themselves.
    pub fn flip(&self, m: usize) -> usize {
        let n = self.spatial.n;
        (n - m) % n
    }

    pub fn wavenumbers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n()).map(move |m| self.k(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(SpatialGrid::centered(10.0, 3).is_err());
        assert!(SpatialGrid::centered(10.0, 100).is_err());
        assert!(SpatialGrid::centered(10.0, 2).is_err());
        assert!(SpatialGrid::centered(-10.0, 8).is_err());
        assert!(SpatialGrid::centered(10.0, 4).is_ok());
    }

    #[test]
    fn conjugacy_dx_dk_n() {
        for (len, n) in [(200.0, 4096), (7.5, 64), (1.0, 4)] {
            let g = SpatialGrid::centered(len, n).unwrap();
            let m = g.momentum();
            let prod = g.dx() * m.dk() * n as f64;
            assert!((prod - 2.0 * PI).abs() < 1e-14 * 2.0 * PI, "dx*dk*n = {prod}");
        }
    }

    #[test]
    fn wavenumbers_cover_half_open_band() {
        let g = SpatialGrid::centered(16.0, 8).unwrap();
        let m = g.momentum();
        let ks: Vec<f64> = m.wavenumbers().collect();
        // bins 0..=n/2 positive ramp, then the negative branch
        assert_eq!(ks[0], 0.0);
        assert!((ks[4] - m.k_max()).abs() < 1e-14);
        assert!(ks[5] < 0.0 && ks[7] < 0.0);
        // strictly greater than -k_max
        assert!(ks.iter().all(|&k| k > -m.k_max() - 1e-14 && k <= m.k_max() + 1e-14));
        assert!(ks.iter().all(|&k| k != -m.k_max()));
    }

    #[test]
    fn flip_is_an_involution_negating_k() {
        let g = SpatialGrid::centered(16.0, 8).unwrap();
        let m = g.momentum();
        for i in 0..8 {
            let f = m.flip(i);
            assert_eq!(m.flip(f), i);
            if i != 0 && i != 4 {
                assert!((m.k(f) + m.k(i)).abs() < 1e-14);
            }
        }
        // zero and Nyquist are self-paired
        assert_eq!(m.flip(0), 0);
        assert_eq!(m.flip(4), 4);
    }

    #[test]
    fn positions_start_at_x_min() {
        let g = SpatialGrid::new(8.0, 8, -3.0).unwrap();
        assert_eq!(g.x(0), -3.0);
        assert!((g.x(7) - (-3.0 + 7.0)).abs() < 1e-14);
        assert_eq!(g.nearest_index(-3.0), 0);
        assert_eq!(g.nearest_index(4.2), 7);
    }
}
