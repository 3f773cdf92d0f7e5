//! Kanter's function `b(u) = (sin u / sin αu)^α (sin u / sin βu)^β` on (0,π).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::AlphaParam;
use crate::error::{Error, Result};
use crate::numerics::trig::{cot_a_derivs_split, sin_cos_near_pi, BERNOULLI_EVEN};

/// `b` and its first two derivatives at `u`, plus `h = b·b″/(b′)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KanterEval {
    pub u: f64,
    pub b: f64,
    pub b1: f64,
    pub b2: f64,
    pub h: f64,
}

/// `ln(sin x / x)` for `x ∈ [0, π)`.
pub(crate) fn ln_sinc(x: f64) -> f64 {
    if x < 0.5 {
        // −Σ 2^{2n−1}|B_{2n}| x^{2n} / (n (2n)!)
        let x2 = x * x;
        let mut xp = 1.0;
        let mut pow2 = 0.5;
        let mut fact = 1.0;
        let mut s = 0.0;
        for (i, b) in BERNOULLI_EVEN.iter().enumerate() {
            let n = i + 1;
            xp *= x2;
            pow2 *= 4.0;
            fact *= ((2 * n - 1) * (2 * n)) as f64;
            let t = pow2 * b * xp / (n as f64 * fact);
            s -= t;
            if t < 1e-18 * s.abs() {
                break;
            }
        }
        return s;
    }
    sin_cos_near_pi(x).0.ln() - x.ln()
}

/// `ln(sin x / x)` given both `x` and `π − x`.
fn ln_sinc_split(x: f64, comp: f64) -> f64 {
    if x > 0.5 * PI {
        comp.sin().ln() - x.ln()
    } else {
        ln_sinc(x)
    }
}

/// `ln b(u) − ln b(0+)`, never positive, accurate for small `u`.
pub fn ln_b_excess(alpha: AlphaParam, u: f64) -> f64 {
    ln_b_excess_split(alpha, u, PI - u)
}

/// [`ln_b_excess`] with `v = π − u` supplied exactly.
pub fn ln_b_excess_split(alpha: AlphaParam, u: f64, v: f64) -> f64 {
    let (a, b) = (alpha.alpha(), alpha.beta());
    let ls = ln_sinc_split(u, v);
    // π − αu = βπ + αv and π − βu = απ + βv
    a * (ls - ln_sinc_split(a * u, b * PI + a * v)) + b * (ls - ln_sinc_split(b * u, a * PI + b * v))
}

/// `ln b(0+) = −α ln α − β ln β`.
pub fn ln_b_at_zero(alpha: AlphaParam) -> f64 {
    -alpha.entropy_edge()
}

pub fn ln_b(alpha: AlphaParam, u: f64) -> Result<f64> {
    check_u(u)?;
    Ok(ln_b_at_zero(alpha) + ln_b_excess(alpha, u))
}

fn check_u(u: f64) -> Result<()> {
    if !(u > 0.0 && u < PI) {
        return Err(Error::domain("kanter_b", format!("u must lie in (0,π), got {u}")));
    }
    Ok(())
}

/// `(f, f′, f″)` for `f = −b′/b = αA_α + βA_β`.
pub fn log_slope(alpha: AlphaParam, u: f64) -> Result<[f64; 3]> {
    check_u(u)?;
    Ok(log_slope_split(alpha, u, PI - u))
}

/// [`log_slope`] with `v = π − u` supplied exactly.
pub fn log_slope_split(alpha: AlphaParam, u: f64, v: f64) -> [f64; 3] {
    let (a, b) = (alpha.alpha(), alpha.beta());
    let da = cot_a_derivs_split(a, u, v);
    let db = cot_a_derivs_split(b, u, v);
    [
        a * da[0] + b * db[0],
        a * da[1] + b * db[1],
        a * da[2] + b * db[2],
    ]
}

pub fn kanter_b(alpha: AlphaParam, u: f64) -> Result<KanterEval> {
    let lb = ln_b(alpha, u)?;
    let [f, f1, _] = log_slope(alpha, u)?;
    let b = lb.exp();
    let g = f1 - f * f;
    Ok(KanterEval {
        u,
        b,
        b1: -f * b,
        b2: -g * b,
        h: 1.0 - f1 / (f * f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn half_closed_forms() {
        let a = AlphaParam::new(0.5).unwrap();
        for u in [0.01, 0.7, PI / 2.0, 2.9, PI - 1e-6] {
            let k = kanter_b(a, u).unwrap();
            assert_relative_eq!(k.b, 2.0 * (u / 2.0).cos(), max_relative = 1e-12);
            let c = 1.0 / (u / 2.0).tan();
            assert_relative_eq!(k.h, -c * c, max_relative = 1e-9);
        }
    }

    #[test]
    fn derivatives_by_differences() {
        let a = AlphaParam::new(0.27).unwrap();
        let (u, h) = (1.3, 1e-5);
        let k = kanter_b(a, u).unwrap();
        let p = kanter_b(a, u + h).unwrap();
        let m = kanter_b(a, u - h).unwrap();
        assert_relative_eq!(k.b1, (p.b - m.b) / (2.0 * h), max_relative = 1e-8);
        assert_relative_eq!(k.b2, (p.b1 - m.b1) / (2.0 * h), max_relative = 1e-7);
    }

    #[test]
    fn ln_sinc_branches_meet() {
        for x in [0.5 - 1e-13, 0.5 + 1e-13] {
            assert_relative_eq!(ln_sinc(x), (x.sin() / x).ln(), max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_endpoints() {
        let a = AlphaParam::new(0.4).unwrap();
        assert!(kanter_b(a, 0.0).is_err());
        assert!(kanter_b(a, PI).is_err());
    }
}
