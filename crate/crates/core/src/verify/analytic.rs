use std::f64::consts::PI;

use super::{Finding, Params, Tally};
use crate::checks::{check_class_p, check_hm, count_modes, estimate_c_alpha, CheckConfig, GridScale, GridSpec, Target};
use crate::error::{Error, Result};
use crate::numerics::gamma::{cos_pi, gamma, sin_pi};
use crate::numerics::quad::{integrate_with_breaks, QuadConfig};
use crate::numerics::trig::{cot_a_derivs, eulerian_s, SeriesKind};
use crate::numerics::{lin_space, log_space, mittag_leffler};
use crate::stable::family::integrate_against;
use crate::stable::kanter::log_slope_split;
use crate::stable::{derived_density, ln_power_density, total_mass, AlphaParam, Family, VariableDescriptor};

/// One given `alpha`, or the default list.
fn alphas(p: &mut Params<'_>, defaults: &[f64]) -> Result<Vec<f64>> {
    match p.opt("alpha") {
        Some(_) => Ok(vec![p.alpha("alpha", 0.5)?]),
        None => Ok(defaults.to_vec()),
    }
}

/// Points of `(0, π)` clustered at both ends, as `(u, π − u)`.
fn clustered(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let h = 0.5 * PI * i as f64 / (n + 1) as f64;
            let (s, c) = h.sin_cos();
            (PI * s * s, PI * c * c)
        })
        .collect()
}

pub(super) fn trigo(p: &mut Params<'_>) -> Result<Finding> {
    let list = alphas(p, &[0.1, 0.25, 0.4, 0.5])?;
    let n = p.count("points", 10_000)?;
    let mut t = Tally::new(1e-9);
    t.detail("points", n as f64);
    for a in list {
        let alpha = AlphaParam::new(a)?;
        let pts = clustered(n);
        let mut h = Vec::with_capacity(n);
        let mut convex = f64::INFINITY;
        for &(u, v) in &pts {
            let [f, f1, f2] = log_slope_split(alpha, u, v);
            h.push(1.0 - f1 / (f * f));
            // 1/f convex: 2f′² − f f″ > 0
            convex = convex.min(2.0 - f * f2 / (f1 * f1));
        }
        let step = h.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        t.margin(format!("min_step@{a}"), step);
        t.margin(format!("inverse_slope_convexity@{a}"), convex);
        if a == 0.5 {
            let err = pts
                .iter()
                .zip(&h)
                .map(|(&(u, _), hv)| {
                    let c = 1.0 / (0.5 * u).tan();
                    (hv + c * c).abs() / (1.0 + c * c)
                })
                .fold(0.0, f64::max);
            t.bound("half_closed_form_error", err, 1e-10);
        }
    }
    Ok((t, true))
}

/// `A_b′A_a − A_a′A_b` without the cancellation of the `cot u` poles near π.
fn wronskian_at(a: f64, b: f64, u: f64, v: f64) -> Result<f64> {
    if u < 0.5 * PI {
        let da = cot_a_derivs(a, u)?;
        let db = cot_a_derivs(b, u)?;
        return Ok(db[1] * da[0] - da[1] * db[0]);
    }
    let p = |g: f64| g / (g * u).tan();
    let dp = |g: f64| {
        let s = (g * u).sin();
        -g * g / (s * s)
    };
    let k = -1.0 / v.tan();
    let sv = v.sin();
    let c = 1.0 / (sv * sv);
    Ok(dp(b) * p(a) - dp(a) * p(b) + k * (dp(a) - dp(b)) + c * (p(a) - p(b)))
}

pub(super) fn wronskian(p: &mut Params<'_>) -> Result<Finding> {
    let list = alphas(p, &[0.1, 0.25, 0.4, 0.5])?;
    let n = p.count("points", 10_000)?;
    let mut t = Tally::new(1e-12);
    t.detail("points", n as f64);
    for a0 in list {
        // the inequality is stated for the smaller of α and 1 − α
        let a = a0.min(1.0 - a0);
        let b = 1.0 - a;
        let mut worst = f64::INFINITY;
        for (u, v) in clustered(n) {
            worst = worst.min(wronskian_at(a, b, u, v)?);
        }
        t.margin(format!("min@{a0}"), worst);
    }
    Ok((t, true))
}

pub(super) fn series_ineq(p: &mut Params<'_>) -> Result<Finding> {
    let list = alphas(p, &[0.1, 0.25, 0.4, 0.5])?;
    let n = p.count("points", 1000)?;
    let z_max = p.get("z_max", 0.99);
    if !(z_max > 0.0 && z_max < 1.0) {
        return Err(Error::param("z_max", "must lie in (0, 1)"));
    }
    let mut t = Tally::new(1e-9);
    t.detail("points", n as f64);
    for a in list {
        let alpha = AlphaParam::new(a)?;
        let mut worst = f64::INFINITY;
        for z in lin_space(0.0, z_max, n) {
            let sa = eulerian_s(alpha, z, SeriesKind::SAlpha)?;
            let sb = eulerian_s(alpha, z, SeriesKind::SBeta)?;
            let sab = eulerian_s(alpha, z, SeriesKind::SMixed)?;
            worst = worst.min(sa * sb - 1.5 * sab);
        }
        t.margin(format!("min@{a}"), worst);
        let s0 = eulerian_s(alpha, 0.0, SeriesKind::SAlpha)?;
        let m0 = eulerian_s(alpha, 0.0, SeriesKind::SMixed)?;
        let err = ((s0 - PI * PI / 6.0) / s0).abs().max(((m0 - PI.powi(4) / 90.0) / m0).abs());
        t.bound(format!("values_at_zero_error@{a}"), err, 1e-9);
    }
    Ok((t, true))
}

pub(super) fn classp_identity(p: &mut Params<'_>) -> Result<Finding> {
    let list = alphas(p, &[0.3, 0.5, 0.7])?;
    let point = match (p.opt("x"), p.opt("c")) {
        (Some(x), Some(c)) if x > 0.0 && c > 0.0 => Some((x, c)),
        (None, None) => None,
        _ => return Err(Error::param("x,c", "give both, positive")),
    };
    let mut t = Tally::new(1e-10);
    for a in list {
        let g = Target::QuotientT { alpha: a };
        let k = (sin_pi(a) / (PI * a)).powi(2);
        let pairs: Vec<(f64, f64)> = match point {
            Some(xc) => vec![xc],
            None => {
                let g = log_space(0.1, 10.0, 20);
                g.iter().flat_map(|&x| g.iter().map(move |&c| (x, c))).collect()
            }
        };
        t.detail("points", pairs.len() as f64);
        let mut err: f64 = 0.0;
        for (x, c) in pairs {
            let l1 = 1.0 / (g.value(x)? * g.value(c / x)?);
            let l2 = 1.0 / (g.value(c * x)? * g.value(1.0 / x)?);
            let lhs = k * (l1 - l2);
            let rhs = (1.0 - c * c) * (x - 1.0 / x) * (x + 1.0 / x + 2.0 * cos_pi(a));
            err = err.max((lhs - rhs).abs() / (k * (l1 + l2)));
            if point.is_some() {
                t.detail("lhs", lhs);
                t.detail("rhs", rhs);
            }
        }
        t.bound(format!("identity_error@{a}"), err, 1e-10);
        if point.is_none() {
            let cfg = CheckConfig::default();
            let r = check_class_p(&g, &cfg)?;
            t.report(&format!("class_p@{a}"), &r, cfg.rel_tol, true);
            let b = estimate_c_alpha(AlphaParam::new(a)?, &cfg)?;
            t.detail(format!("scale_bracket_lower@{a}"), b.lower);
            t.detail(format!("scale_bracket_upper@{a}"), b.upper);
            let ok = if a <= 0.5 { b.upper == 0.0 } else { b.lower > 0.0 };
            t.margin(format!("scale_bracket_ok@{a}"), if ok { 0.0 } else { -1.0 });
        }
    }
    Ok((t, true))
}

fn ml_quad() -> QuadConfig {
    QuadConfig::new(1e-300, 1e-11, 4000).expect("valid quadrature settings")
}

pub(super) fn ml_ggc(p: &mut Params<'_>) -> Result<Finding> {
    let a = p.alpha("alpha", 0.7)?;
    let n = p.count("points", 21)?;
    let cfg = ml_quad();
    let mut t = Tally::new(1e-9);
    t.detail("points", n as f64);
    // Laplace transform against its exponential (Thorin) form
    let mut err: f64 = 0.0;
    for lambda in log_space(0.1, 10.0, n) {
        let f = |x: f64| -(-lambda * x).exp_m1() / x * mittag_leffler(a, -x.powf(a)).unwrap_or(f64::NAN);
        let q = integrate_with_breaks(f, &[0.0, 1e-3, 1.0, 10.0, 100.0, f64::INFINITY], &cfg)?;
        let rhs = (-a * q.value).exp();
        let lhs = 1.0 / (1.0 + lambda.powf(a));
        err = err.max((lhs - rhs).abs() / lhs);
    }
    t.bound("exponential_form_error", err, 1e-6);
    let d = VariableDescriptor::with_alpha(Family::MittagLeffler, AlphaParam::new(a)?)?;
    let mass = total_mass(&d, &cfg)?.value;
    t.bound("mass_error", (mass - 1.0).abs(), 1e-6);
    // density from the spectral integral against the series-based density
    let (s, c) = (sin_pi(a), cos_pi(a));
    let mut err: f64 = 0.0;
    for x in log_space(0.01, 100.0, n) {
        let f = |u: f64| {
            let ua = u.powf(a);
            ua * (-x * u).exp() / (ua * ua + 2.0 * ua * c + 1.0)
        };
        let r = 1.0 / x;
        let q = integrate_with_breaks(f, &[0.0, 0.1 * r, r, 10.0 * r, 100.0 * r, f64::INFINITY], &cfg)?;
        let spectral = s / PI * q.value;
        let series = derived_density(&d, x)?;
        err = err.max((spectral - series).abs() / series);
    }
    t.bound("spectral_density_error", err, 1e-8);
    Ok((t, true))
}

fn ml_power_target(a: AlphaParam, s: f64) -> Result<Target> {
    Ok(Target::Density(VariableDescriptor::with_alpha(
        Family::MittagLefflerPower { s },
        a,
    )?))
}

pub(super) fn ml_bimodal(p: &mut Params<'_>) -> Result<Finding> {
    let a = p.alpha("alpha", 0.8)?;
    if a <= 0.5 {
        return Err(Error::param("alpha", "the claim concerns alpha > 1/2"));
    }
    let width = p.get("scan_width", 1.0);
    let step = p.get("scan_step", 0.01);
    if !(width > 0.0 && step > 0.0 && width / step <= 1e4) {
        return Err(Error::param("scan_step", "needs 0 < step, width/step <= 1e4"));
    }
    let alpha = AlphaParam::new(a)?;
    let mut t = Tally::new(1e-8);
    let f0_claim = -1.0 / (a * gamma(-a)?);
    let slope_claim = -1.0 / (a * gamma(-2.0 * a)?);
    t.detail("claimed_value_at_zero", f0_claim);
    t.detail("claimed_slope_at_zero", slope_claim);

    let near_zero = |s: f64| -> Result<(f64, f64, f64)> {
        let f = ml_power_target(alpha, s)?;
        let (y1, y2) = (1e-8, 1e-6);
        let (f1, f2) = (f.value(y1)?, f.value(y2)?);
        Ok((f.value(1e-10)?, f1, (f2 - f1) / (y2 - y1)))
    };
    let s0 = -1.0 / a;
    let (f0, _, slope) = near_zero(s0)?;
    t.detail("value_near_zero", f0);
    t.bound("value_at_zero_error", ((f0 - f0_claim) / f0_claim).abs(), 1e-8);
    t.detail("slope_near_zero", slope);
    t.margin("slope_positive", if slope > 0.0 { 0.0 } else { -1.0 });

    let grid = GridSpec::new(1e-6, 10.0, 2000, GridScale::Lin)?;
    let steps = (width / step).round() as usize;
    let mut found = f64::NAN;
    for k in 1..=steps {
        let s = s0 - step * k as f64;
        if count_modes(&ml_power_target(alpha, s)?, &grid, 1e-9)? >= 2 {
            found = s;
            break;
        }
    }
    t.detail("scanned_powers", steps as f64);
    if found.is_nan() {
        t.margin("bimodal_power_found", -1.0);
    } else {
        t.detail("bimodal_power", found);
        t.margin("bimodal_power_found", 0.0);
    }

    // the same quantities at s = −α, reported for comparison only
    let (g0, _, gslope) = near_zero(-a)?;
    t.detail("value_near_zero_at_minus_alpha", g0);
    t.detail("slope_near_zero_at_minus_alpha", gslope);
    let mut between = 0usize;
    let mut s = -a - step;
    while s > s0 {
        if count_modes(&ml_power_target(alpha, s)?, &grid, 1e-9)? >= 2 {
            between += 1;
        }
        s -= step;
    }
    t.detail("bimodal_powers_between", between as f64);
    Ok((t, true))
}

/// Least-squares slope of `ys` against `xs`.
pub(crate) fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub(super) fn small_x_exponent(p: &mut Params<'_>) -> Result<Finding> {
    let cases = match (p.opt("alpha"), p.opt("gamma")) {
        (None, None) => vec![(0.3, 0.6), (0.2, 0.8)],
        (Some(_), Some(g)) if g > 0.0 => vec![(p.alpha("alpha", 0.3)?, g)],
        _ => return Err(Error::param("alpha,gamma", "give both, gamma > 0")),
    };
    let n = p.count("points", 41)?;
    let cfg = crate::stable::density::density_quad();
    let mut t = Tally::new(1e-12);
    t.detail("points", n as f64);
    for (a, g) in cases {
        let alpha = AlphaParam::new(a)?;
        let xs = log_space(1e-4, 1e-2, n);
        let ly: Vec<f64> = xs
            .iter()
            .map(|&x| ln_power_density(alpha, -g, x, &cfg))
            .collect::<Result<_>>()?;
        let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
        let slope = ols_slope(&lx, &ly);
        t.detail(format!("slope@{a},{g}"), slope);
        // the next tail term of the stable density gives x^{α/γ−1}(1 + c₂x^{α/γ})
        let r = a / g;
        let c2 = -gamma(1.0 + 2.0 * a)? * sin_pi(2.0 * a) / (2.0 * gamma(1.0 + a)? * sin_pi(a));
        let two_term: Vec<f64> = xs
            .iter()
            .zip(&lx)
            .map(|(&x, &l)| (r - 1.0) * l + (c2 * x.powf(r)).ln_1p())
            .collect();
        t.detail(format!("two_term_slope@{a},{g}"), ols_slope(&lx, &two_term));
        t.bound(format!("slope_error@{a},{g}"), (slope - (a / g - 1.0)).abs(), 0.02);
    }
    Ok((t, true))
}

pub(super) fn thm4a_pieces(p: &mut Params<'_>) -> Result<Finding> {
    let a = p.alpha("alpha", 0.2)?;
    if a > 0.25 {
        return Err(Error::param("alpha", "the statement needs alpha <= 1/4"));
    }
    let g = p.get("gamma", 4.0 * a);
    if !(g >= 4.0 * a) {
        return Err(Error::param("gamma", "needs gamma >= 4 alpha"));
    }
    let delta = 2.0 * a / g;
    let alpha = AlphaParam::new(a)?;
    let cfg = QuadConfig::new(1e-300, 1e-10, 4000)?;
    let mut t = Tally::new(1e-7);
    t.detail("delta", delta);

    let mixing = VariableDescriptor::with_alpha(Family::MixingX, alpha)?;
    let mass = total_mass(&mixing, &cfg)?.value;
    t.bound("mixing_mass_error", (mass - 1.0).abs(), 1e-6);

    // x ↦ K x^{δ−3/2} E[e^{−x^δ X}] integrated over [ε, ∞) by swapping the order
    let k = 2f64.sqrt() * delta / gamma(1.0 - a)?;
    let inner_cfg = QuadConfig::new(1e-300, 1e-10, 2000)?;
    let truncated_mass = |eps: f64| -> Result<f64> {
        let lo = eps.powf(delta);
        let q = 1.0 / (2.0 * delta);
        let j = |y: f64| {
            let f = |u: f64| u.powf(-q) * (-u * y).exp();
            let r = 1.0 / y.max(1e-300);
            let mut pts = vec![lo];
            for m in [1e-3, 1e-2, 0.1, 1.0, 10.0] {
                if m * r > lo {
                    pts.push(m * r);
                }
            }
            pts.push(f64::INFINITY);
            integrate_with_breaks(f, &pts, &inner_cfg)
                .map(|v| v.value / delta)
                .unwrap_or(f64::NAN)
        };
        Ok(k * integrate_against(&mixing, j, &cfg)?.value)
    };
    let m_coarse = truncated_mass(1e-6)?;
    let m_fine = truncated_mass(1e-12)?;
    t.detail("target_mass_from_1e-6", m_coarse);
    t.detail("target_mass_from_1e-12", m_fine);
    t.bound("target_mass_error", (m_fine - 1.0).abs(), 1e-6);
    // the x^{δ/2−1} form with constant δ/Γ(1−α) has mass √π E[X^{−1/2}]/Γ(1−α)
    let neg_half = integrate_against(&mixing, |y| y.powf(-0.5), &cfg)?.value;
    t.detail("alternative_form_mass", PI.sqrt() * neg_half / gamma(1.0 - a)?);

    let check = CheckConfig::default();
    let r = check_hm(&Target::Density(mixing), &check)?;
    t.report("mixing_hm", &r, check.rel_tol, true);
    t.detail("hm_points", r.points as f64);
    let z = VariableDescriptor::stable(AlphaParam::new(delta.min(0.999))?);
    let r = check_hm(&Target::Density(z), &check)?;
    t.report("stable_delta_hm", &r, check.rel_tol, true);
    Ok((t, true))
}
