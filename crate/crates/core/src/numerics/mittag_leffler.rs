//! Mittag-Leffler function `E_α(x) = Σ x^n / Γ(1 + αn)` and its derivatives.
//!
//! On the negative axis three regimes are used: the power series where its
//! cancellation is harmless, the large-argument expansion
//! `E_α(−y) ~ Σ_{n≥1} (−1)^{n+1} y^{−n} / Γ(1 − αn)` far out, and a contour
//! integral in between:
//!
//! `E_α(−y) = (1/(πα)) ∫₀^∞ e^{−w^{1/α}} Re[e^{iπα} / (i (y + w e^{iπα}))] dw`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{ln_gamma_pos, rgamma};
use super::quad::{integrate_with_breaks, QuadConfig};
use super::summation::CompensatedSum;
use crate::error::{Error, Result};

/// Terms kept in the large-argument expansion (`n = 1..ASYMPTOTIC_N`).
pub const ASYMPTOTIC_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlRegime {
    Exponential,
    Series,
    Integral,
    Asymptotic,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(
            "mittag_leffler",
            format!("alpha must lie in (0,1], got {alpha}"),
        ));
    }
    Ok(())
}

/// Radius past which the truncated expansion is within 1e−12 of the leading term.
pub fn asymptotic_radius(alpha: f64, order: usize) -> f64 {
    let lead = (rgamma(1.0 - alpha)).abs().max(f64::MIN_POSITIVE);
    let mut r: f64 = 1.0;
    for n in ASYMPTOTIC_N..ASYMPTOTIC_N + 3 {
        let c = rgamma(1.0 - alpha * n as f64).abs();
        if c == 0.0 {
            continue;
        }
        // rising factorial growth of the differentiated term
        let mut grow = 1.0;
        for j in 0..order {
            grow *= (n + j) as f64 / (1 + j) as f64;
        }
        let ratio = c * grow / lead * 1e12;
        r = r.max(ratio.powf(1.0 / (n - 1) as f64));
    }
    r
}

pub fn regime(alpha: f64, x: f64, order: usize) -> MlRegime {
    if alpha == 1.0 {
        return MlRegime::Exponential;
    }
    if x >= 0.0 {
        return MlRegime::Series;
    }
    let y = -x;
    if y >= asymptotic_radius(alpha, order) {
        MlRegime::Asymptotic
    } else if y.powf(1.0 / alpha) <= 6.0 {
        MlRegime::Series
    } else {
        MlRegime::Integral
    }
}

/// `E_α(x)`.
pub fn mittag_leffler(alpha: f64, x: f64) -> Result<f64> {
    mittag_leffler_deriv(alpha, x, 0)
}

/// n-th derivative `E_α^{(n)}(x)`.
pub fn mittag_leffler_deriv(alpha: f64, x: f64, n: usize) -> Result<f64> {
    check_alpha(alpha)?;
    if !x.is_finite() {
        return Err(Error::domain("mittag_leffler", "non-finite argument"));
    }
    match regime(alpha, x, n) {
        MlRegime::Exponential => Ok(x.exp()),
        MlRegime::Asymptotic => Ok(ml_asymptotic(alpha, -x, n, ASYMPTOTIC_N)),
        MlRegime::Series => match ml_series(alpha, x, n) {
            Some(v) => Ok(v),
            None => ml_integral(alpha, -x, n),
        },
        MlRegime::Integral => ml_integral(alpha, -x, n),
    }
}

/// Derivatives `E_α^{(k)}(x)` for `k = 0..=max_order`.
pub fn mittag_leffler_derivs(alpha: f64, x: f64, max_order: usize) -> Result<Vec<f64>> {
    (0..=max_order)
        .map(|k| mittag_leffler_deriv(alpha, x, k))
        .collect()
}

/// Power series for the n-th derivative. `None` when cancellation would cost
/// more than about five digits.
pub fn ml_series(alpha: f64, x: f64, n: usize) -> Option<f64> {
    if x == 0.0 {
        return Some(falling(n) * rgamma(1.0 + alpha * n as f64));
    }
    let ln_y = x.abs().ln();
    let neg = x < 0.0;
    let mut sum = CompensatedSum::new();
    let mut abs_sum = 0.0;
    let mut peaked = false;
    let mut prev = f64::NEG_INFINITY;
    for j in 0..20_000usize {
        let jn = (j + n) as f64;
        let ln_t = ln_gamma_pos(jn + 1.0) - ln_gamma_pos(j as f64 + 1.0) + j as f64 * ln_y
            - ln_gamma_pos(1.0 + alpha * jn);
        let t = ln_t.exp();
        if !t.is_finite() {
            return None;
        }
        let signed = if neg && j % 2 == 1 { -t } else { t };
        sum.add(signed);
        abs_sum += t;
        if ln_t < prev {
            peaked = true;
        }
        prev = ln_t;
        if peaked && t < 1e-17 * sum.value().abs() && t < 1e-17 * abs_sum {
            break;
        }
        if peaked && t == 0.0 {
            break;
        }
    }
    let v = sum.value();
    if neg && abs_sum * 1e-15 > 1e-11 * v.abs() {
        return None;
    }
    Some(v)
}

fn falling(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Large-argument expansion of `E_α^{(order)}(−y)` with `terms − 1` terms.
pub fn ml_asymptotic(alpha: f64, y: f64, order: usize, terms: usize) -> f64 {
    let mut s = CompensatedSum::new();
    for n in 1..terms {
        let c = rgamma(1.0 - alpha * n as f64);
        if c == 0.0 {
            continue;
        }
        // m-th x-derivative of y^{−n} is (n)_m y^{−n−m}
        let mut rising = 1.0;
        for j in 0..order {
            rising *= (n + j) as f64;
        }
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        s.add(sign * rising * c * y.powi(-((n + order) as i32)));
    }
    s.value()
}

/// Contour-integral route for `E_α^{(n)}(−y)`, y > 0, 0 < α < 1.
pub fn ml_integral(alpha: f64, y: f64, n: usize) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha == 1.0 {
        return Ok((-y).exp());
    }
    if !(y > 0.0) {
        return Err(Error::domain("ml_integral", "needs y > 0"));
    }
    let rot = Complex64::from_polar(1.0, PI * alpha);
    let fact = falling(n);
    let sign_n = if n % 2 == 0 { 1.0 } else { -1.0 };
    let inv_alpha = 1.0 / alpha;
    let integrand = |w: f64| {
        let damp = (-w.powf(inv_alpha)).exp();
        if damp == 0.0 {
            return 0.0;
        }
        let d = Complex64::new(y, 0.0) + rot * w;
        let q = rot / (Complex64::i() * d.powi(n as i32 + 1));
        damp * sign_n * fact * q.re
    };
    // closest approach of the pole to the path
    let w_star = (-y * (PI * alpha).cos()).max(0.0);
    let width = y * (PI * alpha).sin();
    let mut pts = vec![0.0];
    for p in [w_star - width, w_star, w_star + width] {
        if p > pts[pts.len() - 1] {
            pts.push(p);
        }
    }
    let cut = 40f64.powf(alpha);
    if cut > pts[pts.len() - 1] {
        pts.push(cut);
    }
    pts.push(f64::INFINITY);
    let cfg = QuadConfig::new(1e-300, 1e-13, 4000)?;
    let q = match integrate_with_breaks(integrand, &pts, &cfg) {
        Ok(q) => q.value,
        Err(Error::Convergence { value, err_est }) if err_est <= 1e-10 * value.abs() => value,
        Err(e) => return Err(e),
    };
    // E^{(n)}(−y) = (−1)^n G^{(n)}(y)
    Ok(sign_n * q / (PI * alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn alpha_one_is_exp() {
        for x in [-3.0, 0.0, 2.5] {
            assert_relative_eq!(mittag_leffler(1.0, x).unwrap(), f64::exp(x), max_relative = 1e-15);
        }
    }

    #[test]
    fn zero_argument_and_derivatives() {
        let a = 0.6;
        assert_eq!(mittag_leffler(a, 0.0).unwrap(), 1.0);
        assert_relative_eq!(
            mittag_leffler_deriv(a, 0.0, 1).unwrap(),
            rgamma(1.0 + a),
            max_relative = 1e-14
        );
    }

    #[test]
    fn series_and_integral_overlap() {
        for a in [0.3, 0.5, 0.8] {
            for y in [0.5, 1.0] {
                for n in 0..4 {
                    let s = ml_series(a, -y, n).unwrap();
                    let i = ml_integral(a, y, n).unwrap();
                    assert_relative_eq!(s, i, max_relative = 1e-10);
                }
            }
        }
    }

    #[test]
    fn integral_and_asymptotic_overlap() {
        for a in [0.3, 0.5, 0.7, 0.9] {
            let r = asymptotic_radius(a, 0);
            for y in [r, 1.5 * r] {
                let i = ml_integral(a, y, 0).unwrap();
                let s = ml_asymptotic(a, y, 0, ASYMPTOTIC_N);
                assert_relative_eq!(s, i, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn positive_argument_series() {
        // E_{1/2}(x) = e^{x²} erfc(−x); at x = 1 that is e·(1 + erf 1)
        let v = mittag_leffler(0.5, 1.0).unwrap();
        assert_relative_eq!(v, 1f64.exp() * (1.0 + 0.842_700_792_949_714_9), max_relative = 1e-13);
    }

    #[test]
    fn bad_alpha() {
        assert!(mittag_leffler(0.0, 1.0).is_err());
        assert!(mittag_leffler(1.2, 1.0).is_err());
    }
}
