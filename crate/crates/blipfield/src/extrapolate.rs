/// Richardson extrapolation to zero by Neville's algorithm.
///
/// Given samples `(h_i, f(h_i))` of a quantity with a polynomial error
/// expansion in `h`, returns the polynomial extrapolation of `f` to `h = 0`.
/// Pass `h = eps` for first-order ladders or `h = eps^2` when the leading
/// error is quadratic.
pub fn richardson_zero(points: &[(f64, f64)]) -> f64 {
    assert!(!points.is_empty(), "extrapolation needs at least one point");
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let mut ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            ys[i] = (xs[i] * ys[i + 1] - xs[i + m] * ys[i]) / (xs[i] - xs[i + m]);
        }
    }
    ys[0]
}

/// Geometric regulator ladder `eps0 * ratio^i`, `i = 0..count`.
pub fn geometric_ladder(eps0: f64, ratio: f64, count: usize) -> Vec<f64> {
    assert!(eps0 > 0.0 && ratio > 0.0 && ratio < 1.0);
    (0..count).map(|i| eps0 * ratio.powi(i as i32)).collect()
}
