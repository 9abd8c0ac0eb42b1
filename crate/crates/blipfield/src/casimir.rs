//! Mirror-image machinery for a perfect cavity: regularized zero-point
//! kernels, the D-dependent Casimir energies and forces in one and three
//! dimensions, folded field profiles inside the cavity, and a numeric oracle
//! for the index-substitution identity that collapses the double image sum.
//!
//! The cavity spans `(-D/2, D/2)`. A blip inside it is reflected forever;
//! its mirror images sit at `x + 2nD` (even number of reflections) and
//! `(2n - 1) D - x` (odd). Summing the regularized field contributions of
//! all images and taking the vacuum expectation value leaves, per unit
//! of the divergent free-field piece, a convergent D-dependent correction:
//!
//! ```text
//! 1D: E_corr = -(hbar c / 2 pi D)   sum_{m>=1} m^-2,  F     = E_corr / D
//! 3D: E/A    = -(hbar c / 8 pi^2 D^3) sum_{m>=1} m^-4,  F/A = 3 E / (A D)
//! ```
//!
//! so `F = -hbar c pi / (12 D^2)` and `F/A = -hbar c pi^2 / (240 D^4)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::{evolve, PropagatorKind};
use crate::error::{Error, Result};
use crate::packet::BlipWavepacket;
use crate::spectral::kernel_realspace_regulated;
use crate::units::Units;

/// Cavity geometry plus the truncation and regulator knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavitySpec {
    pub d: f64,
    pub n_img: usize,
    pub m_max: usize,
    pub eps: f64,
    pub units: Units,
}

impl CavitySpec {
    pub fn new(d: f64, n_img: usize, m_max: usize, eps: f64, units: Units) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::NonPositive { what: "cavity width D", value: d });
        }
        if n_img < 1 {
            return Err(Error::param("image truncation n_img must be at least 1"));
        }
        if m_max < 1 {
            return Err(Error::param("sum truncation m_max must be at least 1"));
        }
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(Error::InvalidRegulator { eps, why: "must be finite and >= 0" });
        }
        if eps > 0.0 && eps >= d / 10.0 {
            return Err(Error::InvalidRegulator {
                eps,
                why: "regulator must sit well inside the cavity scale (eps < D/10)",
            });
        }
        Ok(CavitySpec { d, n_img, m_max, eps, units })
    }
}

/// One zero-point computation. `energy_correction` and `force` are the
/// finite D-dependent parts (energy and force in 1D, per unit area in 3D);
/// `truncation_error_estimate` is the magnitude of the integral tail added
/// past `m_max`, in the units of `energy_correction`. `divergent_free_part`
/// records that the D-independent m = 0 piece exists but was split off
/// symbolically, never summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirResult {
    pub energy_correction: f64,
    pub force: f64,
    pub truncation_error_estimate: f64,
    pub divergent_free_part: bool,
}

/// Even and odd mirror images of a point inside the cavity:
/// `(x + 2nD, (2n - 1) D - x)`.
pub fn image_positions_1d(x: f64, n: i64, d: f64) -> Result<(f64, f64)> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::NonPositive { what: "cavity width D", value: d });
    }
    if x.abs() >= d / 2.0 {
        return Err(Error::OutsideCavity { x, half: d / 2.0 });
    }
    let nf = n as f64;
    Ok((x + 2.0 * nf * d, (2.0 * nf - 1.0) * d - x))
}

/// Regularized 1D zero-point kernel
/// `hbar c * 4 Int dk |k| e^(-eps |k|) e^(i k delta)` in closed form:
/// `hbar c * 8 (eps^2 - delta^2) / (eps^2 + delta^2)^2`. Tends to
/// `-8 hbar c / delta^2` as `eps -> 0`.
pub fn kernel1d(delta: f64, eps: f64, units: &Units) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidRegulator { eps, why: "kernel needs eps > 0" });
    }
    let e2 = eps * eps;
    let d2 = delta * delta;
    Ok(units.hbar() * units.c() * 8.0 * (e2 - d2) / (e2 + d2).powi(2))
}

/// Regularized 3D zero-point kernel
/// `hbar c * (16/9) Int d^3k |k| e^(-eps |k|) e^(i k . delta)`:
/// `hbar c * (128 pi / 9) (3 eps^2 - delta^2) / (eps^2 + delta^2)^3`,
/// tending to `-128 pi hbar c / (9 delta^4)`.
pub fn kernel3d(delta: f64, eps: f64, units: &Units) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidRegulator { eps, why: "kernel needs eps > 0" });
    }
    let e2 = eps * eps;
    let d2 = delta * delta;
    Ok(units.hbar() * units.c() * (128.0 * PI / 9.0) * (3.0 * e2 - d2) / (e2 + d2).powi(3))
}

/// Partial zeta sum `sum_{m=1}^{M} m^-p` in ascending order plus its
/// integral tail estimate; returns `(sum_with_tail, tail)`.
fn zeta_partial_with_tail(p: u32, m_max: usize) -> (f64, f64) {
    let mut sum = 0.0;
    for m in 1..=m_max {
        sum += (m as f64).powi(-(p as i32));
    }
    let mf = m_max as f64;
    let tail = match p {
        2 => 1.0 / mf,
        4 => 1.0 / (3.0 * mf * mf * mf),
        _ => mf.powi(1 - p as i32) / (p as f64 - 1.0),
    };
    (sum + tail, tail)
}

/// Finite, D-dependent part of the cavity zero-point energy in one
/// dimension and the attractive force it produces.
pub fn casimir_1d(spec: &CavitySpec) -> Result<CasimirResult> {
    if spec.m_max < 10 {
        return Err(Error::param("casimir_1d needs m_max >= 10"));
    }
    let (s, tail) = zeta_partial_with_tail(2, spec.m_max);
    let scale = spec.units.hbar() * spec.units.c() / (2.0 * PI * spec.d);
    Ok(CasimirResult {
        energy_correction: -scale * s,
        force: -scale * s / spec.d,
        truncation_error_estimate: scale * tail,
        divergent_free_part: true,
    })
}

/// Finite, D-dependent zero-point energy per unit mirror area in three
/// dimensions and the pressure it produces.
pub fn casimir_3d(spec: &CavitySpec) -> Result<CasimirResult> {
    if spec.m_max < 10 {
        return Err(Error::param("casimir_3d needs m_max >= 10"));
    }
    let (s, tail) = zeta_partial_with_tail(4, spec.m_max);
    let scale = spec.units.hbar() * spec.units.c() / (8.0 * PI * PI * spec.d.powi(3));
    Ok(CasimirResult {
        energy_correction: -scale * s,
        force: -3.0 * scale * s / spec.d,
        truncation_error_estimate: scale * tail,
        divergent_free_part: true,
    })
}

/// Which folded observable to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldObservable {
    /// Electric: images enter with a `-1` phase per reflection.
    E,
    /// Magnetic: images enter with `+1`.
    B,
}

/// A field profile over the cavity interior.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldProfile {
    pub x: Vec<f64>,
    pub value: Vec<f64>,
}

/// Coherent field expectation value inside the cavity for a blip packet,
/// folded over the mirror images:
/// `sum_{n=-n_img}^{n_img} [ R-field(x - x' + 2nD) -/+ R-field(x + x' + (2n-1)D) ]`
/// with `-` for E and `+` for B, evaluated by regularized real-space
/// convolution against the freely transported packet.
pub fn folded_field_profile(
    psi: &BlipWavepacket,
    alpha: Complex64,
    spec: &CavitySpec,
    t: f64,
    observable: FieldObservable,
) -> Result<FieldProfile> {
    if spec.eps <= 0.0 {
        return Err(Error::InvalidRegulator {
            eps: spec.eps,
            why: "folded profiles convolve the real-space kernel and need eps > 0",
        });
    }
    let half = spec.d / 2.0;
    let support = psi.effective_support()?;
    if support.lo <= -half || support.hi >= half {
        return Err(Error::OutsideCavity {
            x: if support.lo <= -half { support.lo } else { support.hi },
            half,
        });
    }
    let units = spec.units;
    let moved = evolve(psi, t, PropagatorKind::Blip, &units);
    let grid = *moved.grid();
    let dx = grid.dx();

    // source cells with any amplitude left after free transport
    let sources: Vec<(f64, Complex64)> = moved
        .amp()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(j, a)| (grid.x(j), *a))
        .collect();

    let interior: Vec<usize> =
        (0..grid.n()).filter(|&j| grid.x(j).abs() < half).collect();
    let n_img = spec.n_img as i64;
    let sign = match observable {
        FieldObservable::E => -1.0,
        FieldObservable::B => 1.0,
    };
    let front = match observable {
        FieldObservable::E => alpha * units.c(),
        FieldObservable::B => alpha * moved.s().value(),
    };

    let values: Vec<f64> = interior
        .par_iter()
        .map(|&j| -> Result<f64> {
            let x = grid.x(j);
            let mut acc = Complex64::new(0.0, 0.0);
            for n in -n_img..=n_img {
                let nf = n as f64;
                let even_off = x + 2.0 * nf * spec.d;
                let odd_off = x + (2.0 * nf - 1.0) * spec.d;
                for &(xp, a) in &sources {
                    let even = kernel_realspace_regulated(even_off - xp, spec.eps, &units)?;
                    let odd = kernel_realspace_regulated(odd_off + xp, spec.eps, &units)?;
                    acc += (even + sign * odd) * a;
                }
            }
            Ok(2.0 * (front * acc * dx).re)
        })
        .collect::<Result<Vec<f64>>>()?;

    Ok(FieldProfile { x: interior.into_iter().map(|j| grid.x(j)).collect(), value: values })
}

/// Numeric check of the image-index reduction behind the zero-point sums,
/// on the bounded test kernel `G(a, b) = exp(-a^2 - b^2)`:
///
/// ```text
/// sum_{n,m} II_{cav x cav} [G(odd_n, odd_m) + G(even_n, even_m)]
///   = sum_m II_{R x cav} G(x - x', x - x' + 2mD)
/// ```
///
/// with both sides truncated at `|n|, |m| <= n_trunc` and the right-hand x
/// range at `[-(2 n_trunc + 1) D, (2 n_trunc + 1) D]`. Returns the relative
/// discrepancy; only kernel tails beyond the truncation survive.
pub fn appendix_reduction_discrepancy(
    d: f64,
    n_trunc: usize,
    quadrature_points: usize,
) -> Result<f64> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::NonPositive { what: "cavity width D", value: d });
    }
    if n_trunc < 1 {
        return Err(Error::param("n_trunc must be at least 1"));
    }
    if quadrature_points < 2 {
        return Err(Error::param("need at least 2 quadrature points"));
    }
    let g = |a: f64, b: f64| (-a * a - b * b).exp();
    let nt = n_trunc as i64;

    // cavity-panel rule on [-D/2, D/2]
    let (xi, wi) = quad::gauss_legendre(quadrature_points);
    let xs: Vec<f64> = xi.iter().map(|&u| u * d / 2.0).collect();
    let ws: Vec<f64> = wi.iter().map(|&w| w * d / 2.0).collect();
    // tile rule on [-D, D], shifted per tile
    let (ti, vi) = quad::gauss_legendre(2 * quadrature_points);
    let ts: Vec<f64> = ti.iter().map(|&u| u * d).collect();
    let vs: Vec<f64> = vi.iter().map(|&w| w * d).collect();

    let mut lhs = 0.0;
    for n in -nt..=nt {
        for m in -nt..=nt {
            let (nf, mf) = (n as f64, m as f64);
            let mut acc = 0.0;
            for (i, &x) in xs.iter().enumerate() {
                for (j, &xp) in xs.iter().enumerate() {
                    let odd = g(x + xp + (2.0 * nf - 1.0) * d, x + xp + (2.0 * mf - 1.0) * d);
                    let even = g(x - xp + 2.0 * nf * d, x - xp + 2.0 * mf * d);
                    acc += ws[i] * ws[j] * (odd + even);
                }
            }
            lhs += acc;
        }
    }

    let mut rhs = 0.0;
    for m in -nt..=nt {
        let mf = m as f64;
        for n in -nt..=nt {
            let shift = 2.0 * n as f64 * d;
            let mut acc = 0.0;
            for (i, &tx) in ts.iter().enumerate() {
                let x = tx + shift;
                for (j, &xp) in xs.iter().enumerate() {
                    let u = x - xp;
                    acc += vs[i] * ws[j] * g(u, u + 2.0 * mf * d);
                }
            }
            rhs += acc;
        }
    }

    Ok((lhs - rhs).abs() / rhs.abs())
}

/// Gauss-Legendre panels used by the reduction oracle.
pub mod quad {
    use std::f64::consts::PI;

    /// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
    /// by Newton iteration on the Legendre recurrence.
    pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=n {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = if n == 1 { 1.0 } else { n as f64 * (x * p1 - p0) / (x * x - 1.0) };
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        (nodes, weights)
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn five_point_nodes_match_reference() {
            let (x, w) = gauss_legendre(5);
            let known = 0.906_179_845_938_664;
            assert!((x[4] - known).abs() < 1e-12);
            assert!((x[2]).abs() < 1e-15);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        }

        #[test]
        fn integrates_high_degree_polynomials_exactly() {
            let (x, w) = gauss_legendre(6);
            // degree 11 is exact for a 6-point rule
            let val: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.powi(10)).sum();
            assert!((val - 2.0 / 11.0).abs() < 1e-13, "got {val}");
        }

        #[test]
        fn one_point_rule_is_midpoint() {
            let (x, w) = gauss_legendre(1);
            assert_eq!(x[0], 0.0);
            assert!((w[0] - 2.0).abs() < 1e-15);
        }
    }
}
