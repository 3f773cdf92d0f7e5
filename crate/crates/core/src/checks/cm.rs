use rayon::prelude::*;

use super::{CMReport, CheckConfig, Location, MarginAcc, Method, Target};
use crate::error::{Error, Result};
use crate::numerics::{log_space, Jet};

/// Relative accuracy assumed for function values in the difference route.
const VALUE_ACCURACY: f64 = 1e-12;

/// Taylor coefficients of `φ` at 0 with error estimates, from central
/// differences and one Richardson step. `φ` is only sampled on `(−1/2, 1/2)`.
fn fd_coeffs(phi: &dyn Fn(f64) -> Result<f64>, order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let f0 = phi(0.0)?;
    let mut coeffs = vec![f0];
    let mut errs = vec![VALUE_ACCURACY * f0.abs()];
    let mut fact = 1.0;
    for k in 1..=order {
        fact *= k as f64;
        let kf = k as f64;
        let h = (2.0 * f64::EPSILON.powf(1.0 / (kf + 2.0))).min(1.0 / kf);
        let central = |h: f64| -> Result<f64> {
            let mut s = 0.0;
            let mut binom = 1.0;
            for j in 0..=k {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                s += sign * binom * phi((0.5 * kf - j as f64) * h)?;
                binom = binom * (kf - j as f64) / (j as f64 + 1.0);
            }
            Ok(s / h.powi(k as i32))
        };
        let d1 = central(h)?;
        let d2 = central(0.5 * h)?;
        let d = (4.0 * d2 - d1) / 3.0;
        let noise = 2f64.powi(k as i32) * VALUE_ACCURACY * f0.abs() / (0.5 * h).powi(k as i32);
        coeffs.push(d / fact);
        errs.push(((d2 - d1).abs() / 3.0 + noise) / fact);
    }
    Ok((coeffs, errs))
}

/// Margins `(−1)^k c_k / c_0` for one expansion, pushed into `acc`.
fn push_margins(
    acc: &mut MarginAcc,
    coeffs: &[f64],
    errs: Option<&[f64]>,
    point: f64,
    aux: Option<f64>,
) -> Result<()> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Evaluation {
            what: "derivative estimate".into(),
            location: point,
        });
    }
    let c0 = coeffs[0];
    if c0 == 0.0 {
        acc.skipped += 1;
        return Ok(());
    }
    acc.points += 1;
    let loc = |order| Location { order, point, aux };
    if c0 < 0.0 {
        acc.push(0, -1.0, loc(0));
        return Ok(());
    }
    acc.push(0, 1.0, loc(0));
    for k in 1..coeffs.len() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let mut m = sign * coeffs[k] / c0;
        if let Some(e) = errs {
            m += e[k] / c0;
        }
        acc.push(k, m, loc(k));
    }
    Ok(())
}

fn fold(accs: Vec<MarginAcc>, orders: usize) -> MarginAcc {
    accs.into_iter().fold(MarginAcc::new(orders), MarginAcc::merge)
}

fn cm_at(f: &Target, x0: f64, order: usize) -> Result<MarginAcc> {
    let mut acc = MarginAcc::new(order + 1);
    // expansion in τ with x = x0 (1 + τ)
    let x = Jet::from_coeffs({
        let mut c = vec![0.0; order + 1];
        c[0] = x0;
        c[1] = x0;
        c
    });
    match f.jet(&x) {
        Some(j) => push_margins(&mut acc, &j?.c, None, x0, None)?,
        None => {
            let phi = |t: f64| f.value(x0 * (1.0 + t));
            let (c, e) = fd_coeffs(&phi, order)?;
            push_margins(&mut acc, &c, Some(&e), x0, None)?;
        }
    }
    Ok(acc)
}

/// Tests `(−1)^k f^{(k)} ≥ 0` for `k ≤ max_order` on the grid. Margins are
/// `(−1)^k f^{(k)}(x) x^k / (k! f(x))`.
pub fn check_cm(f: &Target, cfg: &CheckConfig) -> Result<CMReport> {
    cfg.validate()?;
    let order = cfg.max_order;
    let accs = cfg
        .grid
        .points()
        .par_iter()
        .map(|&x| cm_at(f, x, order))
        .collect::<Result<Vec<_>>>()?;
    let method = if f.has_jet() { Method::Jet } else { Method::FiniteDifference };
    Ok(fold(accs, order + 1).report(method, cfg.rel_tol))
}

fn hcm_at(f: &Target, u: f64, w0: f64, order: usize) -> Result<MarginAcc> {
    let mut acc = MarginAcc::new(order + 1);
    let delta = w0 - 2.0;
    let pair = |w: &Jet| -> Option<Result<Jet>> {
        // v = (w + √((w−2)(w+2)))/2, so that v + 1/v = w
        let root = (&w.add_const(-2.0) * &w.add_const(2.0)).sqrt();
        let v = (w + &root).scale(0.5);
        let a = f.jet(&v.scale(u))?;
        let b = f.jet(&v.recip().scale(u))?;
        Some(a.and_then(|a| b.map(|b| &a * &b)))
    };
    let mut c = vec![0.0; order + 1];
    c[0] = w0;
    c[1] = delta;
    match pair(&Jet::from_coeffs(c)) {
        Some(h) => push_margins(&mut acc, &h?.c, None, w0, Some(u))?,
        None => {
            let phi = |t: f64| {
                let w = w0 + delta * t;
                let v = 0.5 * (w + ((w - 2.0) * (w + 2.0)).sqrt());
                Ok(f.value(u * v)? * f.value(u / v)?)
            };
            let (c, e) = fd_coeffs(&phi, order)?;
            push_margins(&mut acc, &c, Some(&e), w0, Some(u))?;
        }
    }
    Ok(acc)
}

/// Tests that `w ↦ f(uv) f(u/v)`, `w = v + 1/v`, is CM for every `u` of the
/// `u` grid, on `w − 2` log-spaced over `[10⁻⁶, 10³]`. Margins use the
/// distance `w − 2` to the branch point as the local scale.
pub fn check_hcm(f: &Target, cfg: &CheckConfig) -> Result<CMReport> {
    cfg.validate()?;
    let order = cfg.max_order;
    let ws: Vec<f64> = log_space(1e-6, 1e3, cfg.grid.n).into_iter().map(|d| 2.0 + d).collect();
    let jobs: Vec<(f64, f64)> = cfg
        .u_grid
        .points()
        .into_iter()
        .flat_map(|u| ws.iter().map(move |&w| (u, w)))
        .collect();
    let accs = jobs
        .par_iter()
        .map(|&(u, w)| hcm_at(f, u, w, order))
        .collect::<Result<Vec<_>>>()?;
    let method = if f.has_jet() { Method::Jet } else { Method::FiniteDifference };
    Ok(fold(accs, order + 1).report(method, cfg.rel_tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable::{Family, VariableDescriptor};

    #[test]
    fn exp_passes_lorentz_fails_at_two() {
        let cfg = CheckConfig::default();
        let r = check_cm(&Target::Exp, &cfg).unwrap();
        assert!(r.passed);
        let r = check_cm(&Target::Lorentz, &cfg).unwrap();
        assert!(!r.passed);
        assert_eq!(r.first_failing_order(cfg.rel_tol), Some(2));
    }

    #[test]
    fn difference_route_agrees_on_a_density() {
        // the density of a Gamma(1/2) law is CM
        let d = VariableDescriptor::new(Family::Gamma { shape: 0.5 }, None).unwrap();
        let cfg = CheckConfig {
            max_order: 4,
            ..CheckConfig::default()
        };
        let r = check_cm(&Target::Density(d), &cfg).unwrap();
        assert_eq!(r.method, Method::FiniteDifference);
        assert!(r.passed, "{r:?}");
        let d = VariableDescriptor::new(Family::Gamma { shape: 2.0 }, None).unwrap();
        assert!(!check_cm(&Target::Density(d), &cfg).unwrap().passed);
    }

    #[test]
    fn hcm_simple_cases() {
        let cfg = CheckConfig::default();
        let f = Target::GammaFactor {
            beta: 0.4,
            y: 1.5,
            gamma: 0.7,
        };
        assert!(check_hcm(&f, &cfg).unwrap().passed);
        assert!(!check_hcm(&Target::QuotientT { alpha: 0.3 }, &cfg).unwrap().passed);
    }
}
