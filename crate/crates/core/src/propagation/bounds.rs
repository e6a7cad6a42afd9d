//! A-priori error bounds and step-size selection.

/// Default step when no truncation error is expected.
pub const FALLBACK_TIME_STEP: f64 = 0.01;

/// Relative slack under which `t/δt` counts as an integer.
const SNAP: f64 = 1e-9;

/// Split `[0, t]` into `n` full steps of `delta_t` and a remainder
/// `t - n·δt` in `[0, δt)`. Ratios within `1e-9` of an integer snap to it,
/// so `t = 0.3, δt = 0.1` gives three full steps and no remainder.
pub fn split_horizon(t: f64, delta_t: f64) -> (usize, f64) {
    let ratio = t / delta_t;
    let nearest = ratio.round();
    if (ratio - nearest).abs() <= SNAP * nearest.max(1.0) {
        return (nearest as usize, 0.0);
    }
    let n = ratio.floor();
    (n as usize, t - n * delta_t)
}

/// `⌈t/δt⌉` with the same snapping as [`split_horizon`].
pub fn step_count(t: f64, delta_t: f64) -> usize {
    let (n, frac) = split_horizon(t, delta_t);
    n + usize::from(frac > 0.0)
}

/// `34 t δt Δ² (ℓ+2)² ‖A‖ + ⌈t/δt⌉ η*`.
pub fn apriori_error_bound(t: f64, delta_t: f64, sparsity: usize, ell: usize, eta_star: f64, norm_a: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let d = sparsity as f64;
    let l = ell as f64 + 2.0;
    34.0 * t * delta_t * d * d * l * l * norm_a + step_count(t, delta_t) as f64 * eta_star
}

/// `sqrt(η*) / (ℓ Δ)` with the leading constant set to one, or
/// [`FALLBACK_TIME_STEP`] when `η* = 0`.
pub fn optimal_time_step(ell: usize, sparsity: usize, eta_star: f64) -> f64 {
    if eta_star <= 0.0 {
        return FALLBACK_TIME_STEP;
    }
    eta_star.sqrt() / (ell.max(1) as f64 * sparsity.max(1) as f64)
}

/// `2Δ s sqrt(d(d+2)) ‖A‖` with `s = max(1, max|h|)`, bounding `‖[H, A]‖`
/// for `A` of degree `d`.
pub fn commutator_bound(sparsity: usize, degree: usize, norm_a: f64, coeff_scale: f64) -> f64 {
    let d = degree as f64;
    2.0 * sparsity as f64 * coeff_scale * (d * (d + 2.0)).sqrt() * norm_a
}

/// `2 (Δ t (d+2))² (G² + 1) s² ‖A‖`.
pub fn trotter_bound_general(
    t: f64,
    degree: usize,
    groups: usize,
    sparsity: usize,
    norm_a: f64,
    coeff_scale: f64,
) -> f64 {
    let x = sparsity as f64 * t * (degree as f64 + 2.0);
    let g = groups as f64;
    2.0 * x * x * (g * g + 1.0) * coeff_scale * coeff_scale * norm_a
}

/// `2 (t (d+2))² (G² + Δ²) s² ‖A‖`.
pub fn trotter_bound_improved(
    t: f64,
    degree: usize,
    groups: usize,
    sparsity: usize,
    norm_a: f64,
    coeff_scale: f64,
) -> f64 {
    let x = t * (degree as f64 + 2.0);
    let g = groups as f64;
    let d = sparsity as f64;
    2.0 * x * x * (g * g + d * d) * coeff_scale * coeff_scale * norm_a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_arithmetic() {
        assert_eq!(apriori_error_bound(0.0, 0.01, 4, 4, 1.0, 1.0), 0.0);
        let b = apriori_error_bound(0.5, 0.01, 4, 4, 0.0, 1.0);
        assert!((b - 34.0 * 0.5 * 0.01 * 16.0 * 36.0).abs() < 1e-12);
        // ⌈1 / 0.3⌉ = 4.
        assert_eq!(apriori_error_bound(1.0, 0.3, 1, 0, 1.0, 0.0), 4.0);
    }

    #[test]
    fn horizon_split_snaps() {
        assert_eq!(split_horizon(0.3, 0.1), (3, 0.0));
        assert_eq!(split_horizon(0.0, 0.1), (0, 0.0));
        let (n, r) = split_horizon(0.25, 0.1);
        assert_eq!(n, 2);
        assert!((r - 0.05).abs() < 1e-15);
        assert_eq!(step_count(0.25, 0.1), 3);
        assert_eq!(step_count(1.0, 0.01), 100);
    }

    #[test]
    fn time_step_rule() {
        assert_eq!(optimal_time_step(10, 5, 0.0), 0.01);
        assert!((optimal_time_step(10, 5, 1e-4) - 2e-4).abs() < 1e-18);
        let a = optimal_time_step(6, 3, 1e-6);
        assert!((optimal_time_step(6, 3, 4e-6) / a - 2.0).abs() < 1e-12);
    }
}
