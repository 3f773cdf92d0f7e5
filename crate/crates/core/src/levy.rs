//! Lévy structure of `W = log V`.
//!
//! The staircase `[s] − [αs] − [βs]` takes values in `{0, 1}` and jumps only at
//! `k`, `k/α`, `k/β`. In the rescaled variable `t = βs` it is `θ(t)`, and the
//! Lévy density of `W` is its Laplace transform `w(x) = ∫ e^{−tx} θ(t) dt`.

use crate::error::{Error, Result};
use crate::numerics::gamma::{gamma_ratio, ln_gamma};
use crate::numerics::quad::{integrate, integrate_with_breaks, QuadConfig};
use crate::numerics::trig::BERNOULLI_EVEN;
use crate::stable::AlphaParam;

pub use crate::stable::{support_left_edge, EdgeTarget};

/// Floor that treats values within a few ulps of an integer as that integer.
fn snapped_floor(y: f64) -> f64 {
    let r = y.round();
    if (y - r).abs() <= 8.0 * f64::EPSILON * r.abs().max(1.0) {
        r
    } else {
        y.floor()
    }
}

/// `[s] − [αs] − [βs]`.
pub fn staircase(alpha: AlphaParam, s: f64) -> f64 {
    let a = alpha.alpha() * s;
    let fs = snapped_floor(s);
    let fa = snapped_floor(a);
    let fb = snapped_floor(s - a);
    fs - fa - fb
}

/// `θ(t) = [t/β] − [t] − [(α/β)t]` for `t ≥ β`, zero before.
pub fn theta(alpha: AlphaParam, t: f64) -> f64 {
    let b = alpha.beta();
    if !(t >= b) {
        return 0.0;
    }
    let s = match alpha.ratio() {
        Some((p, q)) => t * q as f64 / (q - p) as f64,
        None => t / b,
    };
    staircase(alpha, s)
}

/// Jump points of the staircase up to a cutoff, with the value on each piece.
#[derive(Debug, Clone, PartialEq)]
pub struct StaircaseBreaks {
    pub alpha: AlphaParam,
    /// Jump points in the staircase variable `s`, starting at 1.
    pub breakpoints: Vec<f64>,
    /// Pieces `[t0, t1)` in the θ variable where θ is nonzero, with its value.
    pieces: Vec<(f64, f64, f64)>,
}

impl StaircaseBreaks {
    /// All jumps with `s ≤ s_max`.
    pub fn new(alpha: AlphaParam, s_max: f64) -> Result<Self> {
        if !(s_max >= 1.0) || !s_max.is_finite() {
            return Err(Error::param("s_max", "must be finite and at least 1"));
        }
        let (a, b) = (alpha.alpha(), alpha.beta());
        let breakpoints: Vec<f64> = match alpha.ratio() {
            Some((p, q)) => {
                // numerators over p(q−p) are exact integers
                let m = q - p;
                let d = (p * m) as f64;
                let top = (s_max * d).floor() as u64;
                let mut nums = Vec::new();
                for step in [p * m, q * m, q * p] {
                    let mut n = step;
                    while n <= top {
                        nums.push(n);
                        n += step;
                    }
                }
                nums.sort_unstable();
                nums.dedup();
                nums.into_iter().map(|n| n as f64 / d).collect()
            }
            None => {
                let mut pts = Vec::new();
                for inv in [1.0, 1.0 / a, 1.0 / b] {
                    let mut k = 1.0;
                    while k * inv <= s_max {
                        pts.push(k * inv);
                        k += 1.0;
                    }
                }
                pts.sort_by(|x, y| x.total_cmp(y));
                let mut out: Vec<f64> = Vec::with_capacity(pts.len());
                for p in pts {
                    match out.last() {
                        Some(&l) if p - l <= 1e-14 * p => {}
                        _ => out.push(p),
                    }
                }
                out
            }
        };
        let mut pieces: Vec<(f64, f64, f64)> = Vec::new();
        for w in breakpoints.windows(2) {
            let v = staircase(alpha, 0.5 * (w[0] + w[1]));
            if v == 0.0 {
                continue;
            }
            let (t0, t1) = (b * w[0], b * w[1]);
            match pieces.last_mut() {
                Some(last) if last.1 == t0 && last.2 == v => last.1 = t1,
                _ => pieces.push((t0, t1, v)),
            }
        }
        Ok(StaircaseBreaks {
            alpha,
            breakpoints,
            pieces,
        })
    }

    /// Breakpoints in the θ variable.
    pub fn theta_breakpoints(&self) -> Vec<f64> {
        let b = self.alpha.beta();
        self.breakpoints.iter().map(|s| b * s).collect()
    }

    /// Largest `t` covered.
    pub fn t_max(&self) -> f64 {
        self.alpha.beta() * self.breakpoints.last().copied().unwrap_or(1.0)
    }

    /// Nonzero pieces `(t0, t1, θ)`.
    pub fn pieces(&self) -> &[(f64, f64, f64)] {
        &self.pieces
    }
}

/// `∫₀^L τ^j e^{−τx} dτ` for `j = 0..=k`.
fn lower_moments(len: f64, x: f64, k: usize) -> Vec<f64> {
    let y = len * x;
    let mut out = vec![0.0; k + 1];
    if y < 30.0 {
        // γ(a, y) = y^a e^{−y} Σ y^m / (a(a+1)…(a+m))
        let ey = (-y).exp();
        for (j, o) in out.iter_mut().enumerate() {
            let a = (j + 1) as f64;
            let mut term = 1.0 / a;
            let mut sum = term;
            let mut m = 1.0;
            while term > 1e-17 * sum {
                term *= y / (a + m);
                sum += term;
                m += 1.0;
            }
            *o = len.powi(j as i32 + 1) * ey * sum;
        }
    } else {
        // j!/x^{j+1} · (1 − e^{−y} Σ_{i≤j} y^i/i!)
        let ey = (-y).exp();
        let mut partial = 0.0;
        let mut pow = 1.0;
        let mut fact = 1.0;
        for (j, o) in out.iter_mut().enumerate() {
            if j > 0 {
                pow *= y;
                fact *= j as f64;
            }
            partial += pow / fact;
            *o = fact / x.powi(j as i32 + 1) * (1.0 - ey * partial);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Lévy density of `W` with its derivatives, evaluated exactly piece by piece.
#[derive(Debug, Clone)]
pub struct LevyDensityW {
    breaks: StaircaseBreaks,
    x_min: f64,
    max_order: usize,
}

impl LevyDensityW {
    /// Precomputes breakpoints good for `x ≥ x_min` and derivative orders up to `max_order`.
    pub fn new(alpha: AlphaParam, x_min: f64, max_order: usize) -> Result<Self> {
        if !(x_min > 0.0) || !x_min.is_finite() {
            return Err(Error::domain("levy_density_w", format!("needs x > 0, got {x_min}")));
        }
        let t_max = alpha.beta() + (45.0 + 6.0 * max_order as f64) / x_min;
        let breaks = StaircaseBreaks::new(alpha, (t_max / alpha.beta()).max(1.0))?;
        Ok(LevyDensityW {
            breaks,
            x_min,
            max_order,
        })
    }

    pub fn breaks(&self) -> &StaircaseBreaks {
        &self.breaks
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.derivs(x, 0)?[0])
    }

    /// `[w(x), w′(x), …, w^{(order)}(x)]`.
    pub fn derivs(&self, x: f64, order: usize) -> Result<Vec<f64>> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::domain("levy_density_w", format!("needs finite x > 0, got {x}")));
        }
        if x < self.x_min || order > self.max_order {
            return LevyDensityW::new(self.breaks.alpha, x.min(self.x_min), order.max(self.max_order))?
                .derivs(x, order);
        }
        // (−1)^k w^{(k)}(x) = ∫ t^k e^{−tx} θ(t) dt
        let mut sums = vec![0.0; order + 1];
        let mut comp = vec![0.0; order + 1];
        for &(t0, t1, v) in self.breaks.pieces() {
            let e0 = (-t0 * x).exp();
            if e0 == 0.0 {
                break;
            }
            let moments = lower_moments(t1 - t0, x, order);
            let mut stop = true;
            for k in 0..=order {
                let mut piece = 0.0;
                for (j, mj) in moments.iter().enumerate().take(k + 1) {
                    piece += binomial(k, j) * t0.powi((k - j) as i32) * mj;
                }
                let add = v * e0 * piece;
                // Kahan per order
                let y = add - comp[k];
                let t = sums[k] + y;
                comp[k] = (t - sums[k]) - y;
                sums[k] = t;
                // remaining tail is at most t0^k e^{−t0 x} (1 + k/(t0 x))^k / x
                let tail = e0 * (t0 + k as f64 / x).powi(k as i32) / x;
                if tail > 1e-16 * sums[k] {
                    stop = false;
                }
            }
            if stop {
                break;
            }
        }
        Ok(sums
            .into_iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s } else { -s })
            .collect())
    }
}

/// Lévy density `w(x)` of `W = log V`, `x > 0`.
pub fn levy_density_w(alpha: AlphaParam, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("levy_density_w", format!("needs finite x > 0, got {x}")));
    }
    LevyDensityW::new(alpha, x, 0)?.value(x)
}

/// `1/(e^y − 1) − 1/y + 1/2`, analytic at 0.
fn bernoulli_remainder(y: f64) -> f64 {
    if y < 1.0 {
        // Σ B_{2n} y^{2n−1}/(2n)!, alternating
        let y2 = y * y;
        let mut pow = y;
        let mut fact = 2.0;
        let mut sum = 0.0;
        for (n, b) in BERNOULLI_EVEN.iter().enumerate() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let term = sign * b * pow / fact;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
            pow *= y2;
            let m = (2 * n + 2) as f64;
            fact *= (m + 1.0) * (m + 2.0);
        }
        sum
    } else {
        1.0 / y.exp_m1() - 1.0 / y + 0.5
    }
}

/// `e^{−x}/(1−e^{−x}) − e^{−x/α}/(1−e^{−x/α}) − e^{−x/β}/(1−e^{−x/β})`, `x > 0`.
///
/// Tends to 1/2 at the origin.
pub fn levy_integrand_g(alpha: AlphaParam, x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_nan() {
        return Err(Error::domain("levy_integrand_g", format!("needs x > 0, got {x}")));
    }
    let (a, b) = (alpha.alpha(), alpha.beta());
    if x >= 1.0 {
        return Ok(1.0 / x.exp_m1() - 1.0 / (x / a).exp_m1() - 1.0 / (x / b).exp_m1());
    }
    // the 1/y poles cancel because 1 = α + β
    Ok(0.5 + bernoulli_remainder(x) - bernoulli_remainder(x / a) - bernoulli_remainder(x / b))
}

/// `E[e^{−βλW}] = Γ(1+λ) / (Γ(1+λα) Γ(1+λβ))`.
pub fn w_laplace_identity(alpha: AlphaParam, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return 1.0;
    }
    let (a, b) = (alpha.alpha(), alpha.beta());
    match gamma_ratio(1.0 + lambda, 1.0 + lambda * a) {
        Ok(r) if r.is_finite() => r / crate::numerics::gamma(1.0 + lambda * b).unwrap_or(f64::NAN),
        _ => {
            let l = ln_gamma(1.0 + lambda).unwrap_or(f64::NAN)
                - ln_gamma(1.0 + lambda * a).unwrap_or(f64::NAN)
                - ln_gamma(1.0 + lambda * b).unwrap_or(f64::NAN);
            l.exp()
        }
    }
}

/// `exp −[ĥλ + ∫₀^∞ (1 − e^{−λx}) g̃(x) dx/x]` with `ĥ = α log α + β log β`.
pub fn reconstruct_w_laplace(alpha: AlphaParam, lambda: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::domain("reconstruct_w_laplace", "needs finite lambda >= 0"));
    }
    if lambda == 0.0 {
        return Ok(1.0);
    }
    let f = |x: f64| -(-lambda * x).exp_m1() / x * levy_integrand_g(alpha, x).unwrap_or(0.0);
    // near 0 the integrand tends to λ g̃(0+)
    let near = integrate_with_breaks(f, &[0.0, 1e-3, 0.1, 1.0], cfg)?.value;
    let far = integrate(f, 1.0, f64::INFINITY, cfg)?.value;
    Ok((-(alpha.entropy_edge() * lambda + near + far)).exp())
}
