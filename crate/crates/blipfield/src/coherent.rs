use num_complex::Complex64;

/// Weight of the one-photon conditioning sum for a coherent state built on a
/// normalized wavepacket mode: `sum_{n>=0} |c_{n+1}|^2 / (2^n n!)` with
/// number coefficients `c_n = exp(-|alpha|^2/2) alpha^n`. In closed form this
/// is `|alpha|^2 exp(-|alpha|^2 / 2)`.
pub fn coherent_prefactor(alpha: Complex64) -> f64 {
    let a2 = alpha.norm_sqr();
    a2 * (-a2 / 2.0).exp()
}

/// Two-photon weight `|c_2|^2 = |alpha|^4 exp(-|alpha|^2)` of the same
/// coherent state; the only part of the state both detectors can see.
pub fn two_photon_weight(alpha: Complex64) -> f64 {
    let a2 = alpha.norm_sqr();
    a2 * a2 * (-a2).exp()
}
