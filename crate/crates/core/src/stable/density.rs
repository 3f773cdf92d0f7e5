//! Density of the positive stable law from the Kanter mixture.
//!
//! `X = Z^{−α/β}` is, given `U = u`, exponential with rate `c(u) = b(u)^{−1/β}`,
//! so `f_X(x) = (1/π) ∫₀^π c(u) e^{−x c(u)} du`. The smallest rate
//! `c(0+) = βα^{α/β}` is pulled out of the exponential, which keeps the
//! logarithm finite far into both tails.

use std::f64::consts::PI;

use super::kanter::{ln_b_excess_split, log_slope_split};
use super::AlphaParam;
use crate::error::{Error, Result};
use crate::numerics::gamma::{gamma_ratio, rgamma};
use crate::numerics::quad::{integrate_with_breaks, QuadConfig};

/// Default integration settings for density evaluation.
pub fn density_quad() -> QuadConfig {
    QuadConfig {
        abs_tol: 1e-300,
        rel_tol: 1e-12,
        max_subdivisions: 4000,
    }
}

/// ln of `(1/π)∫ c(u) e^{−x(c(u) − c₀)} du`.
///
/// The half `u > π/2` is integrated in `v = π − u`, where the mass sits for
/// small `x`.
fn ln_mixture_core(alpha: AlphaParam, x: f64, cfg: &QuadConfig) -> Result<f64> {
    let (a, b) = (alpha.alpha(), alpha.beta());
    let c0 = alpha.kanter_v_edge();
    let ln_c0 = c0.ln();
    let weight = |t: f64| {
        let e = ln_c0 + t - x * c0 * t.exp_m1();
        if e.is_nan() {
            0.0
        } else {
            e.exp()
        }
    };
    let left = |u: f64| weight(-ln_b_excess_split(alpha, u, PI - u) / b);
    let right = |v: f64| weight(-ln_b_excess_split(alpha, PI - v, v) / b);

    // width of the Gaussian-like bump at the left end
    let kappa = c0 / b * (a * (1.0 - a * a) + b * (1.0 - b * b)) / 6.0;
    let mut lpts = vec![0.0];
    let mut p = 1.0 / (x * kappa).sqrt();
    while p < 0.5 * PI {
        lpts.push(p);
        p *= 2.0;
    }
    lpts.push(0.5 * PI);

    // geometric panels towards π until the exponential has killed the integrand
    let mut rpts = vec![0.5 * PI];
    let mut v = 0.25 * PI;
    while v > 1e-300 {
        rpts.push(v);
        let t = -ln_b_excess_split(alpha, PI - v, v) / b;
        if x * c0 * t.exp() > 60.0 {
            break;
        }
        v *= 0.5;
    }
    rpts.push(0.0);
    rpts.reverse();

    let run = |q: Result<crate::numerics::Quadrature>| match q {
        Ok(q) => Ok(q.value),
        Err(Error::Convergence { value, err_est }) if err_est <= 1e-8 * value.abs() => Ok(value),
        Err(e) => Err(e),
    };
    let q = run(integrate_with_breaks(left, &lpts, cfg))?
        + run(integrate_with_breaks(right, &rpts, cfg))?;
    if !(q > 0.0) {
        return Err(Error::Evaluation {
            what: "stable mixture integral".into(),
            location: x,
        });
    }
    Ok(q.ln() - PI.ln())
}

/// ln of the density of `Z^{−α/β}` at `x > 0`.
pub fn ln_kanter_mixture_density(alpha: AlphaParam, x: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("stable_density", format!("needs finite x > 0, got {x}")));
    }
    Ok(-x * alpha.kanter_v_edge() + ln_mixture_core(alpha, x, cfg)?)
}

/// ln f_α(z).
pub fn ln_stable_density(alpha: AlphaParam, z: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain("stable_density", format!("needs finite z > 0, got {z}")));
    }
    let r = alpha.alpha() / alpha.beta();
    let ln_z = z.ln();
    let x = (-r * ln_z).exp();
    if x == 0.0 || !x.is_finite() {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(ln_kanter_mixture_density(alpha, x, cfg)? + r.ln() - (r + 1.0) * ln_z)
}

/// Density `f_α(z)` of the positive α-stable law with `E e^{−λZ} = e^{−λ^α}`.
pub fn stable_density(alpha: AlphaParam, z: f64, cfg: &QuadConfig) -> Result<f64> {
    if z <= 0.0 {
        return Ok(0.0);
    }
    Ok(ln_stable_density(alpha, z, cfg)?.exp())
}

/// ln of the density of `Z^γ` at `x`.
pub fn ln_power_density(alpha: AlphaParam, gamma: f64, x: f64, cfg: &QuadConfig) -> Result<f64> {
    if gamma == 0.0 || !gamma.is_finite() {
        return Err(Error::domain("power_density", "exponent must be finite and nonzero"));
    }
    if !(x > 0.0) {
        return Err(Error::domain("power_density", format!("needs x > 0, got {x}")));
    }
    let inv = 1.0 / gamma;
    let ln_x = x.ln();
    let z = (inv * ln_x).exp();
    if z == 0.0 || !z.is_finite() {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(ln_stable_density(alpha, z, cfg)? + inv.abs().ln() + (inv - 1.0) * ln_x)
}

/// Density of `Z^γ`, γ ≠ 0.
pub fn power_density(alpha: AlphaParam, gamma: f64, x: f64, cfg: &QuadConfig) -> Result<f64> {
    Ok(ln_power_density(alpha, gamma, x, cfg)?.exp())
}

/// `E[Z^s] = Γ(1 − s/α)/Γ(1 − s)` for `s < α`.
pub fn fractional_moment(alpha: AlphaParam, s: f64) -> Result<f64> {
    if !(s < alpha.alpha()) {
        return Err(Error::domain(
            "fractional_moment",
            format!("moment of order {s} is infinite for alpha = {}", alpha.alpha()),
        ));
    }
    let p = 1.0 - s / alpha.alpha();
    let q = 1.0 - s;
    if q > 0.0 {
        gamma_ratio(p, q)
    } else {
        Ok(crate::numerics::gamma(p)? * rgamma(q))
    }
}

/// Density of `V = b^{−1/β}(U)` at `v`; zero left of the edge `βα^{α/β}`.
pub fn kanter_v_density(alpha: AlphaParam, v: f64) -> Result<f64> {
    let c0 = alpha.kanter_v_edge();
    if !(v > c0) || !v.is_finite() {
        return Ok(0.0);
    }
    let (u, w) = kanter_v_inverse(alpha, v)?;
    let f = log_slope_split(alpha, u, w)[0];
    Ok(alpha.beta() / (PI * v * f))
}

/// The `u ∈ (0,π)` with `b(u)^{−1/β} = v`, returned as `(u, π − u)`.
pub fn kanter_v_inverse(alpha: AlphaParam, v: f64) -> Result<(f64, f64)> {
    let c0 = alpha.kanter_v_edge();
    let target = (v / c0).ln();
    if !(target > 0.0) || !target.is_finite() {
        return Err(Error::domain("kanter_v_inverse", format!("{v} is outside the support")));
    }
    let b = alpha.beta();
    let half = 0.5 * PI;
    // g(u, π−u) increases in u
    let g = |u: f64, w: f64| -ln_b_excess_split(alpha, u, w) / b - target;
    let slope = |u: f64, w: f64| log_slope_split(alpha, u, w)[0] / b;
    if g(half, half) >= 0.0 {
        // root in (0, π/2]: Newton in u, safeguarded by bisection
        let (mut lo, mut hi) = (0.0, half);
        let kappa = (alpha.alpha() * (1.0 - alpha.alpha().powi(2)) + b * (1.0 - b * b)) / (6.0 * b);
        let mut u = (target / kappa).sqrt().min(half);
        for _ in 0..200 {
            let gu = g(u, PI - u);
            if gu == 0.0 {
                break;
            }
            if gu > 0.0 {
                hi = u;
            } else {
                lo = u;
            }
            let mut next = u - gu / slope(u, PI - u);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let done = (next - u).abs() <= 4.0 * f64::EPSILON * u;
            u = next;
            if done || hi - lo <= 4.0 * f64::EPSILON * hi {
                break;
            }
        }
        Ok((u, PI - u))
    } else {
        // root in v = π − u ∈ (0, π/2): Newton in ln v, bisection in ln v
        let (mut lo, mut hi) = (1e-300f64.ln(), half.ln());
        // near π, −ln b ≈ −ln v + const, so t ≈ −(ln v)/β
        let mut lv = (-b * target).max(lo).min(hi);
        for _ in 0..400 {
            let w = lv.exp();
            let gv = g(PI - w, w);
            if gv == 0.0 {
                break;
            }
            if gv > 0.0 {
                lo = lv;
            } else {
                hi = lv;
            }
            // d g / d ln v = −w · slope
            let d = -w * slope(PI - w, w);
            let mut next = lv - gv / d;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let done = (next - lv).abs() <= 4.0 * f64::EPSILON * lv.abs().max(1.0);
            lv = next;
            if done || hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(1.0) {
                break;
            }
        }
        let w = lv.exp();
        Ok((PI - w, w))
    }
}
