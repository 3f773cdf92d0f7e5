use super::{Finding, Params, Tally};
use crate::checks::{
    check_cm, check_hcm, check_hm, check_pick, g_t_log_derivative, pick_h, pick_h_im_closed,
    CheckConfig, PickRegion, Target,
};
use crate::error::{Error, Result};
use crate::levy::{levy_integrand_g, theta, LevyDensityW, StaircaseBreaks};
use crate::numerics::quad::{integrate_with_breaks, QuadConfig};
use crate::numerics::{cos_pi, lin_space, log_space};
use crate::stable::AlphaParam;
use crate::sweep::{run_sweep, Conjecture, SweepConfig};
use num_complex::Complex64;

pub(super) fn levy_cm(p: &mut Params<'_>) -> Result<Finding> {
    let list = match p.opt("alpha") {
        Some(_) => vec![p.alpha("alpha", 0.5)?],
        None => vec![0.3, 0.5, 0.7],
    };
    let n = p.count("points", 100_000)?;
    let order = p.count("order", 6)?;
    let cfg = CheckConfig {
        max_order: order.max(2),
        ..CheckConfig::default()
    };
    let mut t = Tally::new(1e-10);
    t.detail("points", n as f64);
    for a in list {
        let alpha = AlphaParam::new(a)?;
        let (x_lo, x_hi) = (0.05, 20.0);
        let breaks = StaircaseBreaks::new(alpha, 1.0 + 50.0 / (x_lo * alpha.beta()))?;
        let bps = breaks.theta_breakpoints();
        let t_max = *bps.last().unwrap_or(&1.0);
        // θ on a uniform grid and on both sides of every jump
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut visit = |v: f64| {
            lo = lo.min(v);
            hi = hi.max(v);
        };
        for s in lin_space(0.0, t_max, n) {
            visit(theta(alpha, s));
        }
        for &b in &bps {
            let d = 1e-9 * b.max(1.0);
            visit(theta(alpha, b - d));
            visit(theta(alpha, b + d));
        }
        t.margin(format!("theta_range@{a}"), lo.min(1.0 - hi));

        // piecewise-exact w against quadrature of the staircase and against g̃(βx)/x
        let w = LevyDensityW::new(alpha, x_lo, 2)?;
        let (mut e_quad, mut e_g): (f64, f64) = (0.0, 0.0);
        for x in log_space(x_lo, x_hi, 25) {
            let exact = w.value(x)?;
            let cut = alpha.beta() + 50.0 / x;
            let mut pts: Vec<f64> = vec![0.0];
            pts.extend(bps.iter().copied().filter(|&b| b < cut));
            pts.push(f64::INFINITY);
            let quad = QuadConfig::new(1e-14 * exact, 1e-13, 4000)?;
            let q = integrate_with_breaks(|s| (-s * x).exp() * theta(alpha, s), &pts, &quad)?;
            e_quad = e_quad.max((q.value - exact).abs() / exact);
            let g = levy_integrand_g(alpha, alpha.beta() * x)? / x;
            e_g = e_g.max((g - exact).abs() / exact);
        }
        t.bound(format!("w_quadrature_error@{a}"), e_quad, 1e-10);
        t.bound(format!("w_integrand_error@{a}"), e_g, 1e-10);

        let r = check_cm(&Target::levy_w(alpha)?, &cfg)?;
        t.report(&format!("cm@{a}"), &r, cfg.rel_tol, true);
    }
    Ok((t, true))
}

fn f_t_truth(t: f64) -> bool {
    (1.0..=2.0).contains(&t)
}

pub(super) fn hcm12(p: &mut Params<'_>) -> Result<Finding> {
    let cfg = CheckConfig::default();
    let mut tally = Tally::new(cfg.rel_tol);
    if let Some(tt) = p.opt("t") {
        if !(tt > 0.0) {
            return Err(Error::param("t", "must be positive"));
        }
        let r = check_hcm(&Target::FT { t: tt }, &cfg)?;
        tally.report(&format!("hcm@{tt}"), &r, cfg.rel_tol, true);
        return Ok((tally, f_t_truth(tt)));
    }
    for tt in [0.5, 1.0, 1.5, 2.0, 2.5] {
        let r = check_hcm(&Target::FT { t: tt }, &cfg)?;
        tally.report(&format!("hcm@{tt}"), &r, cfg.rel_tol, f_t_truth(tt));
    }
    let region = PickRegion::default();
    for u in [0.25, 0.5, 0.75] {
        let r = check_pick(|z| pick_h(u, z), &region, &cfg)?;
        tally.report(&format!("pick_h@{u}"), &r, cfg.rel_tol, true);
        let mut err: f64 = 0.0;
        for re in lin_space(-region.re_max, region.re_max, region.n_re) {
            for im in log_space(1e-3 * region.im_max, region.im_max, region.n_im) {
                let z = Complex64::new(re, im);
                let h = pick_h(u, z);
                err = err.max((h.im - pick_h_im_closed(u, z)).abs() / (1.0 + h.norm()));
            }
        }
        tally.bound(format!("pick_h_closed_form_error@{u}"), err, 1e-12);
    }
    tally.detail("pick_h_at_i", pick_h(0.5, Complex64::new(0.0, 1.0)).im);
    for tt in [0.5, 1.0, 1.5, 2.0, 2.5] {
        let r = check_pick(|z| g_t_log_derivative(tt, z), &region, &cfg)?;
        tally.report(&format!("pick_log_derivative@{tt}"), &r, cfg.rel_tol, f_t_truth(tt));
    }
    // for t < 1 the map x ↦ 1/x + (t/2)(x^{t−1} − 1)/(x^t − 1) increases somewhere on [1, ∞)
    let tt = 0.5;
    let xs = log_space(1.0 + 1e-6, 1e4, 2000);
    let phi: Vec<f64> = xs
        .iter()
        .map(|&x| 1.0 / x + 0.5 * tt * (x.powf(tt - 1.0) - 1.0) / (x.powf(tt) - 1.0))
        .collect();
    let rise = phi.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    tally.expect_negative("monotonicity_witness_max_rise", -rise);
    Ok((tally, true))
}

/// `d²/dt² log f_Y(e^t)` in closed form.
pub(crate) fn quotient_y_curvature(alpha: f64, t: f64) -> f64 {
    let c = cos_pi(alpha);
    let ch = (alpha * t).cosh();
    let d = 2.0 * ch + 2.0 * c;
    -4.0 * alpha * alpha * (1.0 + c * ch) / (d * d)
}

pub(super) fn quotient_hm(p: &mut Params<'_>) -> Result<Finding> {
    let cfg = CheckConfig::default();
    let mut tally = Tally::new(cfg.rel_tol);
    let single = match p.opt("alpha") {
        Some(_) => Some(p.alpha("alpha", 0.5)?),
        None => None,
    };
    let list = single.map(|a| vec![a]).unwrap_or_else(|| vec![0.3, 0.5, 0.7]);
    for &a in &list {
        let f = Target::QuotientY { alpha: a };
        let r = check_hm(&f, &cfg)?;
        tally.report(&format!("hm@{a}"), &r, cfg.rel_tol, single.is_some() || a <= 0.5);
        let h = 1e-3;
        let mut err: f64 = 0.0;
        for t in lin_space(-5.0, 5.0, 201) {
            let l = |s: f64| f.ln_value(s.exp());
            let d2 = (l(t - h)? - 2.0 * l(t)? + l(t + h)?) / (h * h);
            err = err.max((d2 - quotient_y_curvature(a, t)).abs());
        }
        tally.bound(format!("curvature_formula_error@{a}"), err, 1e-6);
    }
    Ok((tally, single.map_or(true, |a| a <= 0.5)))
}

pub(super) fn lamp(p: &mut Params<'_>) -> Result<Finding> {
    let cfg = CheckConfig::default();
    let mut tally = Tally::new(cfg.rel_tol);
    if let Some(a) = p.opt("alpha") {
        if !(a.abs() < 1.0) || a == 0.0 {
            return Err(Error::param("alpha", "needs 0 < |alpha| < 1"));
        }
        let r = check_hcm(&Target::Prop41M { alpha: a }, &cfg)?;
        if let Some(loc) = r.worst_location {
            tally.detail("worst_point", loc.point);
            tally.detail("worst_u", loc.aux.unwrap_or(f64::NAN));
            tally.detail("worst_order", loc.order as f64);
        }
        tally.report("hcm", &r, cfg.rel_tol, true);
        return Ok((tally, a.abs() <= 0.5));
    }
    for a in [0.25, 0.4, 0.5, 0.6, 0.75] {
        let r = check_hcm(&Target::Prop41M { alpha: a }, &cfg)?;
        tally.report(&format!("hcm@{a}"), &r, cfg.rel_tol, a <= 0.5);
    }
    Ok((tally, true))
}

pub(super) fn conjecture_sweep(p: &mut Params<'_>) -> Result<Finding> {
    let budget = p.get("budget_seconds", 120.0);
    let mut tally = Tally::new(0.0);
    let plans = [
        (Conjecture::KanterPower, vec![0.3, 0.7], vec![0.5, 2.0]),
        (Conjecture::BetaPower, vec![0.5], vec![0.5, 0.75, 1.0]),
        (Conjecture::StablePower, vec![1.0 / 3.0], vec![-1.0, 1.0]),
    ];
    let mut rows = 0usize;
    let mut errors = 0usize;
    for (c, alphas, powers) in plans {
        let mut cfg = SweepConfig::new(c, alphas, powers);
        cfg.budget_seconds = Some(budget);
        let res = run_sweep(&cfg)?;
        for r in &res.rows {
            rows += 1;
            if r.status != "ok" {
                errors += 1;
                continue;
            }
            let key = format!("{}@{},{}", c.number(), r.alpha, r.power);
            tally.detail(format!("modes_{key}"), r.modes as f64);
            tally.detail(format!("hcm_orders_passed_{key}"), r.hcm_orders_passed as f64);
            tally.detail(format!("class_p_margin_{key}"), r.classp_margin);
        }
    }
    tally.detail("rows", rows as f64);
    tally.detail("errors", errors as f64);
    tally.margin("numerical_errors", -(errors as f64));
    Ok((tally, true))
}
