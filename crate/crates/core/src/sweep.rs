//! Evidence tables around the GGC conjectures for powers of `V_α`, of Beta
//! variables and of `Z_α`. Rows carry indicator margins, never verdicts.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::checks::{check_class_p, check_hcm, check_hm, count_modes, CheckConfig, GridSpec, Target};
use crate::error::{Error, Result};
use crate::numerics::gamma::ln_gamma;
use crate::stable::{AlphaParam, Family, VariableDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conjecture {
    /// `V_α^s` for `s > 0`.
    KanterPower,
    /// `Beta(a, b)^{−s}` for `s ≥ 1`, shifted by 1.
    BetaPower,
    /// `Z_α^γ` for `|γ| ≥ α/(1−α)`.
    StablePower,
}

impl Conjecture {
    pub fn from_number(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Conjecture::KanterPower),
            2 => Ok(Conjecture::BetaPower),
            3 => Ok(Conjecture::StablePower),
            _ => Err(Error::param("conjecture", format!("expected 1, 2 or 3, got {n}"))),
        }
    }

    pub fn number(&self) -> u32 {
        match self {
            Conjecture::KanterPower => 1,
            Conjecture::BetaPower => 2,
            Conjecture::StablePower => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub conjecture: Conjecture,
    /// `α`, or the first Beta shape.
    pub alpha_grid: Vec<f64>,
    pub power_grid: Vec<f64>,
    /// Second Beta shape; defaults to the first.
    pub second_shape: Option<f64>,
    /// Grid for the HM, class-P and log-convexity indicators.
    pub check: CheckConfig,
    /// Reduced settings for the HCM indicator.
    pub hcm: CheckConfig,
    pub mode_grid: GridSpec,
    pub budget_seconds: Option<f64>,
}

impl SweepConfig {
    pub fn new(conjecture: Conjecture, alpha_grid: Vec<f64>, power_grid: Vec<f64>) -> Self {
        SweepConfig {
            conjecture,
            alpha_grid,
            power_grid,
            second_shape: None,
            check: CheckConfig {
                grid: GridSpec::log(1e-3, 1e3, 48),
                ..CheckConfig::default()
            },
            hcm: CheckConfig {
                max_order: 4,
                grid: GridSpec::log(1e-3, 1e3, 16),
                u_grid: GridSpec::log(0.1, 10.0, 5),
                rel_tol: 1e-7,
            },
            mode_grid: GridSpec::log(1e-4, 1e4, 400),
            budget_seconds: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub conjecture: u32,
    pub alpha: f64,
    pub second: Option<f64>,
    pub power: f64,
    pub in_range: bool,
    pub modes: usize,
    pub hm_margin: f64,
    pub log_convexity_margin: f64,
    pub classp_margin: f64,
    /// Highest order up to which the HCM indicator passed; −1 when order 0 fails.
    pub hcm_orders_passed: i64,
    pub hcm_worst_margin: f64,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    /// True when the budget ran out before the grid was covered.
    pub partial: bool,
}

/// Density of `Beta(a, b)^{−s} − 1` on `(0, ∞)`.
fn beta_power_target(a: f64, b: f64, s: f64) -> Result<Target> {
    if !(a > 0.0 && b > 0.0 && s > 0.0) {
        return Err(Error::param("beta", "shapes and power must be positive"));
    }
    let ln_beta = ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?;
    Ok(Target::custom(format!("beta-power(a={a},b={b},s={s})"), move |x: f64| {
        if !(x > 0.0) {
            return Ok(f64::NEG_INFINITY);
        }
        // u = Beta value = (1+x)^{−1/s}
        let l = x.ln_1p() / s;
        let ln_u = -l;
        let ln_1mu = (-(-l).exp_m1()).ln();
        Ok((a - 1.0) * ln_u + (b - 1.0) * ln_1mu - ln_beta - s.ln() - (1.0 / s + 1.0) * x.ln_1p())
    }))
}

fn target_for(cfg: &SweepConfig, a: f64, power: f64) -> Result<(Target, bool, Option<f64>)> {
    match cfg.conjecture {
        Conjecture::KanterPower => {
            let d = VariableDescriptor::with_alpha(Family::KanterVPower { s: power }, AlphaParam::new(a)?)?;
            Ok((Target::Density(d), power > 0.0, None))
        }
        Conjecture::BetaPower => {
            let b = cfg.second_shape.unwrap_or(a);
            Ok((beta_power_target(a, b, power)?, power >= 1.0, Some(b)))
        }
        Conjecture::StablePower => {
            let d = VariableDescriptor::with_alpha(Family::StablePower { gamma: power }, AlphaParam::new(a)?)?;
            Ok((Target::Density(d), power.abs() >= a / (1.0 - a), None))
        }
    }
}

/// Smallest `x² · (ln f)″(x)` from divided differences; ≥ 0 for log-convex `f`.
fn log_convexity(f: &Target, grid: &GridSpec) -> Result<f64> {
    let xs = grid.points();
    let ls: Vec<f64> = xs.iter().map(|&x| f.ln_value(x)).collect::<Result<_>>()?;
    let mut worst = f64::INFINITY;
    for i in 1..xs.len().saturating_sub(1) {
        if !(ls[i - 1].is_finite() && ls[i].is_finite() && ls[i + 1].is_finite()) {
            continue;
        }
        let d1 = (ls[i] - ls[i - 1]) / (xs[i] - xs[i - 1]);
        let d2 = (ls[i + 1] - ls[i]) / (xs[i + 1] - xs[i]);
        let dd = 2.0 * (d2 - d1) / (xs[i + 1] - xs[i - 1]);
        worst = worst.min(xs[i] * xs[i] * dd);
    }
    Ok(worst)
}

fn row(cfg: &SweepConfig, a: f64, power: f64) -> SweepRow {
    let mut r = SweepRow {
        conjecture: cfg.conjecture.number(),
        alpha: a,
        second: None,
        power,
        in_range: false,
        modes: 0,
        hm_margin: f64::NAN,
        log_convexity_margin: f64::NAN,
        classp_margin: f64::NAN,
        hcm_orders_passed: -1,
        hcm_worst_margin: f64::NAN,
        status: "ok".into(),
    };
    let res = (|| -> Result<()> {
        let (f, in_range, second) = target_for(cfg, a, power)?;
        r.in_range = in_range;
        r.second = second;
        r.modes = count_modes(&f, &cfg.mode_grid, 1e-9)?;
        r.hm_margin = check_hm(&f, &cfg.check)?.worst_margin;
        r.log_convexity_margin = log_convexity(&f, &cfg.check.grid)?;
        r.classp_margin = check_class_p(&f, &cfg.check)?.worst_margin;
        let h = check_hcm(&f, &cfg.hcm)?;
        r.hcm_worst_margin = h.worst_margin;
        r.hcm_orders_passed = match h.first_failing_order(cfg.hcm.rel_tol) {
            Some(k) => k as i64 - 1,
            None => cfg.hcm.max_order as i64,
        };
        Ok(())
    })();
    if let Err(e) = res {
        r.status = e.to_string().replace(',', ";");
    }
    r
}

/// Runs the grid row by row, stopping early when the budget is spent.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    if cfg.alpha_grid.is_empty() || cfg.power_grid.is_empty() {
        return Err(Error::param("grid", "sweep grids must not be empty"));
    }
    if cfg.power_grid.iter().any(|p| *p == 0.0 || !p.is_finite()) {
        return Err(Error::param("power_grid", "powers must be finite and non-zero"));
    }
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut partial = false;
    'outer: for &a in &cfg.alpha_grid {
        for &p in &cfg.power_grid {
            if let Some(b) = cfg.budget_seconds {
                if start.elapsed().as_secs_f64() > b {
                    partial = true;
                    break 'outer;
                }
            }
            rows.push(row(cfg, a, p));
        }
    }
    Ok(SweepResult { rows, partial })
}

fn num(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v:e}")
    }
}

pub fn write_sweep_csv<W: Write>(res: &SweepResult, mut w: W) -> Result<()> {
    writeln!(
        w,
        "conjecture,alpha,second,power,in_range,modes,hm_margin,log_convexity_margin,classp_margin,hcm_orders_passed,hcm_worst_margin,status"
    )?;
    for r in &res.rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.conjecture,
            r.alpha,
            r.second.map(|s| s.to_string()).unwrap_or_default(),
            r.power,
            r.in_range,
            r.modes,
            num(r.hm_margin),
            num(r.log_convexity_margin),
            num(r.classp_margin),
            r.hcm_orders_passed,
            num(r.hcm_worst_margin),
            r.status
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_power_density_integrates() {
        let f = beta_power_target(0.5, 0.5, 1.0).unwrap();
        // Beta(1/2,1/2)^{-1} − 1 has density 1/(π (x+1) √x)
        for x in [0.1, 1.0, 7.0] {
            let want = 1.0 / (std::f64::consts::PI * (x + 1.0) * x.sqrt());
            assert!((f.value(x).unwrap() / want - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn single_cell_grid_gives_one_row() {
        let mut cfg = SweepConfig::new(Conjecture::BetaPower, vec![0.5], vec![0.75]);
        cfg.mode_grid = GridSpec::log(1e-3, 1e3, 100);
        let res = run_sweep(&cfg).unwrap();
        assert_eq!(res.rows.len(), 1);
        assert!(!res.partial);
        let r = &res.rows[0];
        assert_eq!(r.status, "ok");
        assert_eq!(r.modes, 1);
        assert_eq!(r.hcm_orders_passed, 4);
        let mut out = Vec::new();
        write_sweep_csv(&res, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap().lines().count(), 2);
    }
}
