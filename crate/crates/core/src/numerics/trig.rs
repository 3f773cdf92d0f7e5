//! Cotangent combinations `A_γ(u) = γ cot(γu) − cot(u)` and the Eulerian series
//! built from their partial-fraction expansions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stable::AlphaParam;

/// |B_{2j}| for j = 1..=15.
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    1.0 / 30.0,
    1.0 / 42.0,
    1.0 / 30.0,
    5.0 / 66.0,
    691.0 / 2730.0,
    7.0 / 6.0,
    3617.0 / 510.0,
    43867.0 / 798.0,
    174611.0 / 330.0,
    854513.0 / 138.0,
    236364091.0 / 2730.0,
    8553103.0 / 6.0,
    23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Below this the Laurent-cancelled power series is used.
const SMALL_U: f64 = 0.5;

fn laurent_coeffs() -> [f64; 15] {
    // 1/x − cot x = Σ_j 2^{2j}|B_{2j}|/(2j)! x^{2j−1}
    let mut out = [0.0; 15];
    let mut fact = 1.0;
    let mut pow = 1.0;
    for j in 1..=15 {
        fact *= ((2 * j - 1) * (2 * j)) as f64;
        pow *= 4.0;
        out[j - 1] = pow * BERNOULLI_EVEN[j - 1] / fact;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CotMode {
    Closed,
    /// Partial Eulerian sum with this many terms plus an integral tail.
    Series(usize),
}

fn check_gamma_u(gamma: f64, u: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::domain("cot_a", format!("gamma must lie in (0,1), got {gamma}")));
    }
    if !(u > 0.0 && u < PI) {
        return Err(Error::domain("cot_a", format!("u must lie in (0,π), got {u}")));
    }
    Ok(())
}

/// `A_γ(u)` together with its first two derivatives.
pub fn cot_a_derivs(gamma: f64, u: f64) -> Result<[f64; 3]> {
    check_gamma_u(gamma, u)?;
    Ok(cot_a_derivs_unchecked(gamma, u))
}

pub(crate) fn cot_a_derivs_unchecked(gamma: f64, u: f64) -> [f64; 3] {
    if u < SMALL_U {
        let c = laurent_coeffs();
        let u2 = u * u;
        let g2 = gamma * gamma;
        let mut gp = 1.0; // γ^{2j}
        let mut up = 1.0 / u; // u^{2j−1} after the first multiply
        let (mut a, mut a1, mut a2) = (0.0, 0.0, 0.0);
        for (j, cj) in c.iter().enumerate() {
            let j = j + 1;
            gp *= g2;
            up *= u2;
            let k = cj * (1.0 - gp);
            let p = (2 * j - 1) as f64;
            a += k * up;
            a1 += k * p * up / u;
            if j > 1 {
                a2 += k * p * (p - 1.0) * up / u2;
            }
        }
        return [a, a1, a2];
    }
    let (sg, cg) = (gamma * u).sin_cos();
    let (s, c) = sin_cos_near_pi(u);
    let cot_g = cg / sg;
    let cot = c / s;
    let csc2_g = 1.0 / (sg * sg);
    let csc2 = 1.0 / (s * s);
    let a = gamma * cot_g - cot;
    let a1 = -gamma * gamma * csc2_g + csc2;
    let a2 = 2.0 * gamma.powi(3) * csc2_g * cot_g - 2.0 * csc2 * cot;
    [a, a1, a2]
}

/// Like [`cot_a_derivs_unchecked`] but with `v = π − u` supplied exactly, so
/// that points closer to π than the spacing of doubles stay distinct.
pub(crate) fn cot_a_derivs_split(gamma: f64, u: f64, v: f64) -> [f64; 3] {
    if u < 0.5 * PI {
        return cot_a_derivs_unchecked(gamma, u);
    }
    let (s, c) = (v.sin(), -v.cos());
    let gu = gamma * u;
    let (sg, cg) = if gu > 0.5 * PI {
        // π − γu = (1 − γ)π + γv
        let w = (1.0 - gamma) * PI + gamma * v;
        (w.sin(), -w.cos())
    } else {
        gu.sin_cos()
    };
    let cot_g = cg / sg;
    let cot = c / s;
    let csc2_g = 1.0 / (sg * sg);
    let csc2 = 1.0 / (s * s);
    [
        gamma * cot_g - cot,
        -gamma * gamma * csc2_g + csc2,
        2.0 * gamma.powi(3) * csc2_g * cot_g - 2.0 * csc2 * cot,
    ]
}

/// `(sin u, cos u)` with `sin` taken from `π − u` near π, where it is exact.
pub(crate) fn sin_cos_near_pi(u: f64) -> (f64, f64) {
    if u > 0.5 * PI {
        let v = PI - u;
        let (s, c) = v.sin_cos();
        (s, -c)
    } else {
        u.sin_cos()
    }
}

/// `A_γ(u)` in closed form or via its Eulerian expansion.
pub fn cot_a(gamma: f64, u: f64, mode: CotMode) -> Result<f64> {
    check_gamma_u(gamma, u)?;
    match mode {
        CotMode::Closed => Ok(cot_a_derivs_unchecked(gamma, u)[0]),
        CotMode::Series(n) => {
            if n == 0 {
                return Err(Error::param("terms", "series mode needs at least one term"));
            }
            let z = u / PI;
            let s = series_with_tail(&[gamma * z, z], n, 0.0).0;
            Ok(2.0 * (1.0 - gamma * gamma) * z / PI * s)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesKind {
    SAlpha,
    SBeta,
    SPlain,
    SMixed,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 4] = [
        SeriesKind::SAlpha,
        SeriesKind::SBeta,
        SeriesKind::SPlain,
        SeriesKind::SMixed,
    ];

    /// Scale factors `c_i` of the denominators `n² − c_i² z²`.
    fn factors(self, alpha: f64, beta: f64) -> Vec<f64> {
        match self {
            SeriesKind::SAlpha => vec![alpha, 1.0],
            SeriesKind::SBeta => vec![beta, 1.0],
            SeriesKind::SPlain => vec![alpha, beta],
            SeriesKind::SMixed => vec![alpha, beta, 1.0],
        }
    }
}

/// Σ_{n≥1} n² / Π_i (n² − r_i²) summed to `rel_tol` (or exactly `max_terms`
/// terms when `rel_tol` is 0), plus the midpoint-integral tail.
/// Returns (value, tail).
fn series_with_tail(r: &[f64], max_terms: usize, rel_tol: f64) -> (f64, f64) {
    let p: Vec<f64> = r.iter().map(|x| x * x).collect();
    let mut sum = crate::numerics::CompensatedSum::new();
    let mut n = 0usize;
    loop {
        n += 1;
        let nf = n as f64;
        let n2 = nf * nf;
        let mut t = n2;
        for pi in &p {
            t /= n2 - pi;
        }
        sum.add(t);
        if n >= max_terms || (rel_tol > 0.0 && t < rel_tol * sum.value()) {
            break;
        }
    }
    let m = n as f64 + 0.5;
    // midpoint rule plus the first Euler–Maclaurin correction of the leading power
    let k = p.len() as i32;
    let tail = tail_integral(&p, m) - (2 * k - 2) as f64 * m.powi(1 - 2 * k) / 24.0;
    sum.add(tail);
    (sum.value(), tail)
}

/// ∫_M^∞ x² / Π(x² − p_i) dx via complete homogeneous symmetric polynomials.
fn tail_integral(p: &[f64], m: f64) -> f64 {
    let k = p.len() as i32;
    let m2 = m * m;
    // h_j(p) by repeated convolution with geometric series
    const TERMS: usize = 200;
    let mut h = vec![0.0; TERMS];
    h[0] = 1.0;
    for &pi in p {
        for j in 1..TERMS {
            h[j] += pi * h[j - 1];
        }
    }
    let mut total = 0.0;
    let mut mpow = m.powi(3 - 2 * k);
    for (j, hj) in h.iter().enumerate() {
        let term = hj * mpow / (2 * k + 2 * j as i32 - 3) as f64;
        total += term;
        if term.abs() < 1e-18 * total.abs() {
            break;
        }
        mpow /= m2;
    }
    total
}

/// The Eulerian series evaluated at `z ∈ [0,1)` to relative accuracy ~1e−9
/// before the tail correction (the tail brings it near machine precision).
pub fn eulerian_s(alpha: AlphaParam, z: f64, kind: SeriesKind) -> Result<f64> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::domain("eulerian_s", format!("z must lie in [0,1), got {z}")));
    }
    let r: Vec<f64> = kind
        .factors(alpha.alpha(), alpha.beta())
        .into_iter()
        .map(|c| c * z)
        .collect();
    Ok(series_with_tail(&r, usize::MAX, 1e-9).0)
}

/// Partial sums of a series kind up to `n` terms, without tail.
pub fn eulerian_partial(alpha: AlphaParam, z: f64, kind: SeriesKind, n: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::domain("eulerian_partial", format!("z must lie in [0,1), got {z}")));
    }
    let p: Vec<f64> = kind
        .factors(alpha.alpha(), alpha.beta())
        .into_iter()
        .map(|c| (c * z) * (c * z))
        .collect();
    let mut s = 0.0;
    for k in 1..=n {
        let n2 = (k * k) as f64;
        let mut t = n2;
        for pi in &p {
            t /= n2 - pi;
        }
        s += t;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_at_half() {
        assert_relative_eq!(cot_a(0.5, PI / 2.0, CotMode::Closed).unwrap(), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn branches_meet_at_switch() {
        for g in [0.1, 0.3, 0.77] {
            let a = cot_a_derivs_unchecked(g, SMALL_U * (1.0 - 1e-12));
            let b = cot_a_derivs_unchecked(g, SMALL_U * (1.0 + 1e-12));
            for k in 0..3 {
                assert_relative_eq!(a[k], b[k], max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn derivatives_match_differences() {
        let (g, u, h) = (0.35, 1.7, 1e-5);
        let d = cot_a_derivs_unchecked(g, u);
        let fp = cot_a_derivs_unchecked(g, u + h);
        let fm = cot_a_derivs_unchecked(g, u - h);
        assert_relative_eq!(d[1], (fp[0] - fm[0]) / (2.0 * h), max_relative = 1e-8);
        assert_relative_eq!(d[2], (fp[1] - fm[1]) / (2.0 * h), max_relative = 1e-8);
    }

    #[test]
    fn series_mode_agrees() {
        let c = cot_a(0.3, 1.0, CotMode::Closed).unwrap();
        let s = cot_a(0.3, 1.0, CotMode::Series(10_000)).unwrap();
        assert!((c - s).abs() < 1e-10);
        // tail keeps even a handful of terms accurate
        let s5 = cot_a(0.3, 1.0, CotMode::Series(5)).unwrap();
        assert!((c - s5).abs() < 1e-5);
    }

    #[test]
    fn values_at_zero() {
        let a = AlphaParam::new(0.3).unwrap();
        let z2 = PI * PI / 6.0;
        assert_relative_eq!(eulerian_s(a, 0.0, SeriesKind::SAlpha).unwrap(), z2, max_relative = 1e-13);
        assert_relative_eq!(
            eulerian_s(a, 0.0, SeriesKind::SMixed).unwrap(),
            PI.powi(4) / 90.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn domain_errors() {
        let a = AlphaParam::new(0.3).unwrap();
        assert!(eulerian_s(a, 1.0, SeriesKind::SPlain).is_err());
        assert!(cot_a(0.3, 0.0, CotMode::Closed).is_err());
        assert!(cot_a(0.3, PI, CotMode::Closed).is_err());
    }
}
