use super::{Finding, Params, Tally};
use crate::error::{Error, Result};
use crate::levy::{reconstruct_w_laplace, w_laplace_identity};
use crate::numerics::quad::QuadConfig;
use crate::sampling::{empirical_laplace, empirical_moment, ks_batches, sample, SeedSpec};
use crate::stable::{fractional_moment, AlphaParam, Family, VariableDescriptor};

const BAND: f64 = 4.0;

fn lambdas(p: &mut Params<'_>) -> Result<Vec<f64>> {
    match p.opt("lambda") {
        Some(l) if l > 0.0 => Ok(vec![l]),
        Some(_) => Err(Error::param("lambda", "must be positive")),
        None => Ok(vec![0.5, 1.0, 2.0]),
    }
}

pub(super) fn w_laplace(p: &mut Params<'_>) -> Result<Finding> {
    let a = p.alpha("alpha", 0.5)?;
    let ls = lambdas(p)?;
    let n = p.count("n", 1_000_000)?;
    let seed = p.seed()?;
    let alpha = AlphaParam::new(a)?;
    let mut t = Tally::new(1e-12);
    t.detail("n", n as f64);
    let d = VariableDescriptor::with_alpha(Family::LogKanter, alpha)?;
    let batch = sample(&d, n, SeedSpec::new(seed, 0))?;
    let quad = QuadConfig::new(1e-300, 1e-11, 4000)?;
    for l in ls {
        let exact = w_laplace_identity(alpha, l);
        let (m, se) = empirical_laplace(&batch, alpha.beta() * l);
        t.detail(format!("mean@{l}"), m);
        t.detail(format!("exact@{l}"), exact);
        t.bound(format!("mc_deviation@{l}"), (m - exact).abs(), BAND * se);
        let r = reconstruct_w_laplace(alpha, l, &quad)?;
        t.bound(format!("reconstruction_error@{l}"), (r - exact).abs() / exact, 1e-6);
    }
    Ok((t, true))
}

pub(super) fn kanter_laplace(p: &mut Params<'_>) -> Result<Finding> {
    let list = match p.opt("alpha") {
        Some(_) => vec![p.alpha("alpha", 0.5)?],
        None => vec![0.3, 0.5, 0.7],
    };
    let ls = lambdas(p)?;
    let n = p.count("n", 1_000_000)?;
    let seed = p.seed()?;
    let mut t = Tally::new(1e-12);
    t.detail("n", n as f64);
    for (k, a) in list.into_iter().enumerate() {
        let alpha = AlphaParam::new(a)?;
        let batch = sample(&VariableDescriptor::stable(alpha), n, SeedSpec::new(seed, k as u64))?;
        for &l in &ls {
            let exact = (-l.powf(a)).exp();
            let (m, se) = empirical_laplace(&batch, l);
            t.detail(format!("mean@{a},{l}"), m);
            t.bound(format!("mc_deviation@{a},{l}"), (m - exact).abs(), BAND * se);
        }
    }
    Ok((t, true))
}

/// Checks a sample moment of order `s` against `exact` within the band.
fn moment(t: &mut Tally, key: String, batch: &crate::sampling::SampleBatch, s: f64, exact: f64) {
    let (m, se) = empirical_moment(batch, s);
    t.detail(format!("{key}_mean"), m);
    t.bound(format!("{key}_deviation"), (m - exact).abs(), BAND * se);
}

pub(super) fn bochner(p: &mut Params<'_>) -> Result<Finding> {
    let list = match p.opt("alpha") {
        Some(_) => vec![p.alpha("alpha", 0.35)?],
        None => vec![0.2, 0.35],
    };
    let n = p.count("n", 100_000)?;
    let seed = p.seed()?;
    let ks_max = p.get("ks_max", 0.01);
    let mut t = Tally::new(1e-12);
    t.detail("n", n as f64);
    for (k, a) in list.into_iter().enumerate() {
        if a >= 0.5 {
            return Err(Error::param("alpha", "subordination needs alpha < 1/2"));
        }
        let alpha = AlphaParam::new(a)?;
        let direct = sample(
            &VariableDescriptor::stable(alpha),
            n,
            SeedSpec::new(seed, 2 * k as u64),
        )?;
        let sub = sample(
            &VariableDescriptor::with_alpha(Family::Subordinated, alpha)?,
            n,
            SeedSpec::new(seed, 2 * k as u64 + 1),
        )?;
        t.bound(format!("ks@{a}"), ks_batches(&direct, &sub)?, ks_max);
        for s in [-0.5, 0.25 * a] {
            let exact = fractional_moment(alpha, s)?;
            moment(&mut t, format!("direct_moment@{a},{s}"), &direct, s, exact);
            moment(&mut t, format!("subordinated_moment@{a},{s}"), &sub, s, exact);
        }
    }
    Ok((t, true))
}

pub(super) fn pss(p: &mut Params<'_>) -> Result<Finding> {
    let a = p.alpha("alpha", 1.0 / 3.0)?;
    let g = p.get("gamma", 0.5);
    let n = p.count("n", 100_000)?;
    let seed = p.seed()?;
    let ks_max = p.get("ks_max", 0.01);
    let alpha = AlphaParam::new(a)?;
    let product = VariableDescriptor::with_alpha(Family::PssProduct { gamma: g }, alpha)?;
    let power = VariableDescriptor::with_alpha(Family::StablePower { gamma: -g }, alpha)?;
    let mut t = Tally::new(1e-12);
    t.detail("n", n as f64);
    let x = sample(&power, n, SeedSpec::new(seed, 0))?;
    let y = sample(&product, n, SeedSpec::new(seed, 1))?;
    t.bound("ks", ks_batches(&x, &y)?, ks_max);
    let s = 0.5;
    let exact = fractional_moment(alpha, -g * s)?;
    moment(&mut t, "power_moment".into(), &x, s, exact);
    moment(&mut t, "product_moment".into(), &y, s, exact);
    Ok((t, true))
}
