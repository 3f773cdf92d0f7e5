//! Special functions, series and quadrature shared by the rest of the crate.

pub mod gamma;
pub mod jet;
pub mod mittag_leffler;
pub mod quad;
pub mod summation;
pub mod trig;

pub use gamma::{cos_pi, gamma, gamma_ratio, ln_gamma, rgamma, sin_pi};
pub use jet::Jet;
pub use mittag_leffler::{mittag_leffler, mittag_leffler_deriv, mittag_leffler_derivs};
pub use quad::{integrate, integrate_with_breaks, QuadConfig, Quadrature};
pub use summation::{compensated_sum, CompensatedSum};
pub use trig::{cot_a, cot_a_derivs, eulerian_partial, eulerian_s, CotMode, SeriesKind};

/// Γ on the real line minus the poles; alias of [`gamma`].
pub fn gamma_ext(x: f64) -> crate::Result<f64> {
    gamma(x)
}

/// `n` points from `lo` to `hi`, log-spaced.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// `n` points from `lo` to `hi`, evenly spaced.
pub fn lin_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}
