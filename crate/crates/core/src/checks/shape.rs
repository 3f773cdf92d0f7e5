use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CMReport, CheckConfig, GridSpec, Location, MarginAcc, Method, Target};
use crate::error::{Error, Result};
use crate::numerics::lin_space;
use crate::stable::{AlphaParam, VariableDescriptor};

/// Absolute accuracy assumed for `ln f` when comparing log sums.
const LN_ACCURACY: f64 = 1e-12;

fn ln_values(f: &Target, xs: &[f64]) -> Result<Vec<f64>> {
    xs.par_iter()
        .map(|&x| {
            let l = f.ln_value(x)?;
            if l.is_nan() || l == f64::INFINITY {
                Err(Error::Evaluation {
                    what: f.describe(),
                    location: x,
                })
            } else {
                Ok(l)
            }
        })
        .collect()
}

/// Tests log-concavity of `t ↦ f(e^t)` through second differences on the
/// uniform `t` grid spanned by `cfg.grid`. Margins are minus the estimated
/// second derivative.
pub fn check_hm(f: &Target, cfg: &CheckConfig) -> Result<CMReport> {
    cfg.validate()?;
    let n = cfg.grid.n.max(3);
    let (a, b) = (cfg.grid.min.ln(), cfg.grid.max.ln());
    let ts = lin_space(a, b, n);
    let h = (b - a) / (n - 1) as f64;
    let xs: Vec<f64> = ts.iter().map(|t| t.exp()).collect();
    let phi = ln_values(f, &xs)?;
    let mut acc = MarginAcc::new(1);
    for i in 1..n - 1 {
        let (l, m, r) = (phi[i - 1], phi[i], phi[i + 1]);
        if l == f64::NEG_INFINITY || m == f64::NEG_INFINITY || r == f64::NEG_INFINITY {
            acc.skipped += 1;
            continue;
        }
        acc.points += 1;
        let d2 = (l - 2.0 * m + r) / (h * h);
        acc.push(
            0,
            -d2,
            Location {
                order: 2,
                point: xs[i],
                aux: None,
            },
        );
    }
    Ok(acc.report(Method::Direct, cfg.rel_tol))
}

/// Tests `f(x) f(c/x) ≥ f(1/x) f(cx)` on `x, c ≥ 1` and on `x, c ≤ 1`, with
/// `x` and `c` on a log grid symmetric about 1 that reaches the far end of
/// `cfg.grid`. Margins are `1 − f(1/x) f(cx) / (f(x) f(c/x))`.
pub fn check_class_p(f: &Target, cfg: &CheckConfig) -> Result<CMReport> {
    cfg.validate()?;
    let half = (cfg.grid.n / 2).max(1);
    let reach = cfg.grid.max.ln().abs().max(cfg.grid.min.ln().abs());
    if !(reach > 0.0) {
        return Err(Error::param("grid", "class P needs a grid away from 1"));
    }
    let h = reach / half as f64;
    let n = half as i64;
    // every argument is e^{kh} with |k| ≤ 2n
    let xs: Vec<f64> = (-2 * n..=2 * n).map(|k| (k as f64 * h).exp()).collect();
    let lv = ln_values(f, &xs)?;
    let at = |k: i64| lv[(k + 2 * n) as usize];
    let mut acc = MarginAcc::new(1);
    for side in [1i64, -1] {
        for i in 0..=n {
            for j in 0..=n {
                let (ki, kj) = (side * i, side * j);
                let lhs = at(ki) + at(kj - ki);
                let rhs = at(-ki) + at(kj + ki);
                let margin = if lhs == f64::NEG_INFINITY && rhs == f64::NEG_INFINITY {
                    acc.skipped += 1;
                    continue;
                } else if lhs == f64::NEG_INFINITY {
                    -1.0
                } else if rhs == f64::NEG_INFINITY {
                    1.0
                } else {
                    let diff = lhs - rhs;
                    let scale = at(ki).abs() + at(kj - ki).abs() + at(-ki).abs() + at(kj + ki).abs();
                    if diff.abs() <= 8.0 * f64::EPSILON * scale + 4.0 * LN_ACCURACY {
                        0.0
                    } else {
                        -(-diff).exp_m1()
                    }
                };
                acc.points += 1;
                acc.push(
                    0,
                    margin,
                    Location {
                        order: 0,
                        point: xs[(ki + 2 * n) as usize],
                        aux: Some(xs[(kj + 2 * n) as usize]),
                    },
                );
            }
        }
    }
    Ok(acc.report(Method::Direct, cfg.rel_tol))
}

/// Sampling rectangle `Re z ∈ [−re_max, re_max]`, `Im z ∈ [10⁻³ im_max, im_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PickRegion {
    pub re_max: f64,
    pub im_max: f64,
    pub n_re: usize,
    pub n_im: usize,
}

impl Default for PickRegion {
    fn default() -> Self {
        PickRegion {
            re_max: 4.0,
            im_max: 4.0,
            n_re: 41,
            n_im: 20,
        }
    }
}

/// Tests `Im g ≥ 0` on the region; margins are `Im g / |g|`.
pub fn check_pick<G>(g: G, region: &PickRegion, cfg: &CheckConfig) -> Result<CMReport>
where
    G: Fn(Complex64) -> Complex64 + Sync,
{
    if region.n_re == 0 || region.n_im == 0 || !(region.im_max > 0.0) || !(region.re_max >= 0.0) {
        return Err(Error::param("region", "needs positive sizes"));
    }
    let res = lin_space(-region.re_max, region.re_max, region.n_re);
    let ims = crate::numerics::log_space(1e-3 * region.im_max, region.im_max, region.n_im);
    let zs: Vec<Complex64> = res
        .iter()
        .flat_map(|&r| ims.iter().map(move |&i| Complex64::new(r, i)))
        .collect();
    let vals: Vec<Complex64> = zs.par_iter().map(|&z| g(z)).collect();
    let mut acc = MarginAcc::new(1);
    for (z, v) in zs.iter().zip(&vals) {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Evaluation {
                what: format!("pick function at Im z = {}", z.im),
                location: z.re,
            });
        }
        let m = if v.norm() == 0.0 { 0.0 } else { v.im / v.norm() };
        acc.points += 1;
        acc.push(
            0,
            m,
            Location {
                order: 0,
                point: z.re,
                aux: Some(z.im),
            },
        );
    }
    Ok(acc.report(Method::Direct, cfg.rel_tol))
}

/// `((1−z)^u − (−z)^u)((1−z̄)^{u+1} − (−z̄)^{u+1})` with principal powers.
pub fn pick_h(u: f64, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let zb = z.conj();
    ((one - z).powf(u) - (-z).powf(u)) * ((one - zb).powf(u + 1.0) - (-zb).powf(u + 1.0))
}

/// `Im z · |(1−z)^u − (−z)^u|² + Im((|z|² − z̄)^u)`, equal to `Im pick_h(u, z)`.
pub fn pick_h_im_closed(u: f64, z: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let d = (one - z).powf(u) - (-z).powf(u);
    let w = Complex64::new(z.norm_sqr(), 0.0) - z.conj();
    z.im * d.norm_sqr() + w.powf(u).im
}

/// `g′/g` for `g(z) = f_t(−z)`.
pub fn g_t_log_derivative(t: f64, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let u = t - 1.0;
    let num = (one - z).powf(u) - (-z).powf(u);
    let den = (one - z).powf(u + 1.0) - (-z).powf(u + 1.0);
    one / (one - z) + num / den * (0.5 * t)
}

/// Number of local maxima on the grid, ignoring ripples below `rel_tol · max f`.
/// A maximum at either end of the grid counts.
pub fn count_modes(f: &Target, grid: &GridSpec, rel_tol: f64) -> Result<usize> {
    let xs = grid.points();
    let vals: Vec<f64> = xs
        .par_iter()
        .map(|&x| f.value(x))
        .collect::<Result<Vec<_>>>()?;
    if let Some(i) = vals.iter().position(|v| !v.is_finite()) {
        return Err(Error::Evaluation {
            what: f.describe(),
            location: xs[i],
        });
    }
    Ok(count_modes_values(&vals, rel_tol))
}

#[derive(PartialEq)]
enum Trend {
    Flat,
    Up,
    Down,
}

pub(crate) fn count_modes_values(vals: &[f64], rel_tol: f64) -> usize {
    let Some(&first) = vals.first() else {
        return 0;
    };
    let eps = rel_tol * vals.iter().cloned().fold(0.0, f64::max);
    let mut trend = Trend::Flat;
    let mut extreme = first;
    let mut modes = 0;
    for &v in &vals[1..] {
        match trend {
            Trend::Flat => {
                if v > extreme + eps {
                    trend = Trend::Up;
                    extreme = v;
                } else if v < extreme - eps {
                    // falling from the left edge
                    modes += 1;
                    trend = Trend::Down;
                    extreme = v;
                }
            }
            Trend::Up => {
                if v > extreme {
                    extreme = v;
                } else if v < extreme - eps {
                    modes += 1;
                    trend = Trend::Down;
                    extreme = v;
                }
            }
            Trend::Down => {
                if v < extreme {
                    extreme = v;
                } else if v > extreme + eps {
                    trend = Trend::Up;
                    extreme = v;
                }
            }
        }
    }
    if trend != Trend::Down {
        modes += 1;
    }
    modes
}

/// Bracket for the smallest scale `c` with `cZ_α` in class P.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CAlphaBracket {
    pub lower: f64,
    pub upper: f64,
    /// True when even the largest scale tried failed.
    pub open_ended: bool,
    /// Smallest scale that was tested.
    pub smallest_tested: f64,
    pub checks: usize,
}

const C_MAX: f64 = 1e3;
const C_MIN: f64 = 1e-3;

/// Scans `c` downwards from 10³ to 10⁻³ in half-decades, then bisects in
/// `log c` between the last passing and first failing scale. When no scale
/// fails the bracket is `(0, 0)`.
pub fn estimate_c_alpha(alpha: AlphaParam, cfg: &CheckConfig) -> Result<CAlphaBracket> {
    let base = Target::Density(VariableDescriptor::stable(alpha));
    let mut checks = 0;
    let mut passes = |c: f64| -> Result<bool> {
        checks += 1;
        Ok(check_class_p(&base.clone().scaled(c), cfg)?.passed)
    };
    if !passes(C_MAX)? {
        return Ok(CAlphaBracket {
            lower: C_MAX,
            upper: f64::INFINITY,
            open_ended: true,
            smallest_tested: C_MAX,
            checks: 1,
        });
    }
    let steps = (2.0 * (C_MAX / C_MIN).log10()).round() as i32;
    let mut good = C_MAX;
    for k in 1..=steps {
        let c = C_MAX * 10f64.powf(-0.5 * k as f64);
        if passes(c)? {
            good = c;
            continue;
        }
        let mut bad = c;
        for _ in 0..16 {
            let mid = (good * bad).sqrt();
            if passes(mid)? {
                good = mid;
            } else {
                bad = mid;
            }
        }
        return Ok(CAlphaBracket {
            lower: bad,
            upper: good,
            open_ended: false,
            smallest_tested: c,
            checks,
        });
    }
    Ok(CAlphaBracket {
        lower: 0.0,
        upper: 0.0,
        open_ended: false,
        smallest_tested: good,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn hm_cases() {
        let cfg = CheckConfig::default();
        assert!(check_hm(&Target::Exp, &cfg).unwrap().passed);
        assert!(check_hm(&Target::QuotientY { alpha: 0.3 }, &cfg).unwrap().passed);
        assert!(!check_hm(&Target::QuotientY { alpha: 0.7 }, &cfg).unwrap().passed);
        assert!(!check_hm(&Target::VHalf, &cfg).unwrap().passed);
    }

    #[test]
    fn class_p_exact_on_the_diagonals() {
        let cfg = CheckConfig::default();
        let r = check_class_p(&Target::QuotientT { alpha: 0.7 }, &cfg).unwrap();
        assert!(r.passed);
        assert!(check_class_p(&Target::Exp, &cfg).unwrap().passed);
    }

    #[test]
    fn pick_formula_matches_direct() {
        for u in [0.2, 0.5, 0.9] {
            for z in [Complex64::new(0.0, 1.0), Complex64::new(-3.0, 0.1), Complex64::new(2.0, 0.5)] {
                assert_relative_eq!(pick_h(u, z).im, pick_h_im_closed(u, z), max_relative = 1e-12);
            }
        }
        let cfg = CheckConfig::default();
        let one = Complex64::new(1.0, 0.0);
        assert!(check_pick(|z| one / (one - z), &PickRegion::default(), &cfg).unwrap().passed);
        assert!(!check_pick(|z| -z, &PickRegion::default(), &cfg).unwrap().passed);
    }

    #[test]
    fn modes() {
        assert_eq!(count_modes_values(&[3.0, 2.0, 1.0], 1e-9), 1);
        assert_eq!(count_modes_values(&[1.0, 2.0, 1.0, 2.0, 1.0], 1e-9), 2);
        assert_eq!(count_modes_values(&[1.0, 2.0, 1.999999999999, 2.0, 1.0], 1e-6), 1);
        let g = GridSpec::log(1e-3, 1e3, 200);
        assert_eq!(count_modes(&Target::Exp, &g, 1e-9).unwrap(), 1);
    }
}
