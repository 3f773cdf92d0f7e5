use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::levy::LevyDensityW;
use crate::numerics::gamma::{cos_pi, sin_pi};
use crate::numerics::mittag_leffler::{mittag_leffler, mittag_leffler_derivs};
use crate::numerics::Jet;
use crate::stable::{ln_derived_density, AlphaParam, Family, VariableDescriptor};

/// Two-column table, interpolated linearly in `(ln x, ln y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl Table {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() < 2 || x.len() != y.len() {
            return Err(Error::param("table", "needs at least two rows of equal length"));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) || !(x[0] > 0.0) {
            return Err(Error::param("table", "x must be positive and strictly increasing"));
        }
        if y.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(Error::param("table", "values must be positive and finite"));
        }
        Ok(Table { x, y })
    }

    /// Reads the first two columns; a non-numeric first line is taken as a header.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split(',').map(str::trim);
            let (a, b) = (it.next().unwrap_or(""), it.next().unwrap_or(""));
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(x), Ok(y)) => {
                    xs.push(x);
                    ys.push(y);
                }
                _ if i == 0 => {}
                _ => {
                    return Err(Error::Parse(format!(
                        "{}: line {}: expected two numbers",
                        path.display(),
                        i + 1
                    )))
                }
            }
        }
        Table::new(xs, ys)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        let n = self.x.len();
        if !(x >= self.x[0] && x <= self.x[n - 1]) {
            return Err(Error::domain(
                "table",
                format!("{x} outside [{}, {}]", self.x[0], self.x[n - 1]),
            ));
        }
        let i = self.x.partition_point(|p| *p <= x).clamp(1, n - 1);
        let (x0, x1) = (self.x[i - 1].ln(), self.x[i].ln());
        let (y0, y1) = (self.y[i - 1].ln(), self.y[i].ln());
        let w = (x.ln() - x0) / (x1 - x0);
        Ok((y0 + w * (y1 - y0)).exp())
    }
}

/// A positive function on `(0, ∞)` that the checks can evaluate.
#[derive(Debug, Clone)]
pub enum Target {
    /// `e^{−x}`.
    Exp,
    /// `1/(1 + x²)`.
    Lorentz,
    /// `E_α(−x)`.
    MlNeg { alpha: f64 },
    /// Lévy density of `log V_α`.
    LevyW {
        alpha: AlphaParam,
        eval: Arc<LevyDensityW>,
    },
    /// `x^{β−1}(x + y)^{−γ}`.
    GammaFactor { beta: f64, y: f64, gamma: f64 },
    FT { t: f64 },
    /// `1/(u^{2α} + 2cos(πα)u^α + 1)`.
    Prop41M { alpha: f64 },
    /// Density of `Z_α/Z'_α`.
    QuotientY { alpha: f64 },
    /// Density of `(Z_α/Z'_α)^α`.
    QuotientT { alpha: f64 },
    /// Density of `V_{1/2}`.
    VHalf,
    /// Any descriptor density, without closed-form derivatives.
    Density(VariableDescriptor),
    /// `x ↦ f(x/c)/c`, the density of `cX`.
    Scaled { inner: Box<Target>, scale: f64 },
    Tabulated(Arc<Table>),
    /// A log-density supplied as a closure.
    Custom(CustomFn),
}

/// Named closure returning `ln f(x)`.
#[derive(Clone)]
pub struct CustomFn {
    pub name: String,
    pub ln_f: Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>,
}

impl std::fmt::Debug for CustomFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CustomFn({})", self.name)
    }
}

pub const BUILTIN_NAMES: [&str; 10] = [
    "exp",
    "lorentz",
    "ml-neg",
    "levy-w",
    "gamma-factor",
    "f-t",
    "prop41-m",
    "quotient-y",
    "quotient-t",
    "v-half",
];

impl Target {
    /// Resolves a builtin name, a descriptor family name or a `.csv` path.
    pub fn from_name(name: &str, params: &BTreeMap<String, f64>) -> Result<Target> {
        let get = |k: &str| {
            params
                .get(k)
                .copied()
                .ok_or_else(|| Error::param(k, format!("target `{name}` needs `{k}`")))
        };
        let alpha = || -> Result<f64> {
            let a = get("alpha")?;
            if a > 0.0 && a < 1.0 {
                Ok(a)
            } else {
                Err(Error::param("alpha", format!("must lie in (0, 1), got {a}")))
            }
        };
        if let Some(path) = name.strip_prefix("csv:") {
            return Ok(Target::Tabulated(Arc::new(Table::from_csv(Path::new(path))?)));
        }
        if name.ends_with(".csv") {
            return Ok(Target::Tabulated(Arc::new(Table::from_csv(Path::new(name))?)));
        }
        Ok(match name {
            "exp" => Target::Exp,
            "lorentz" => Target::Lorentz,
            "ml-neg" => {
                let a = get("alpha")?;
                if !(a > 0.0 && a <= 1.0) {
                    return Err(Error::param("alpha", "must lie in (0, 1]"));
                }
                Target::MlNeg { alpha: a }
            }
            "levy-w" => Target::levy_w(AlphaParam::new(alpha()?)?)?,
            "gamma-factor" => Target::GammaFactor {
                beta: get("beta")?,
                y: get("y")?,
                gamma: get("gamma")?,
            },
            "f-t" => {
                let t = get("t")?;
                if !(t > 0.0) {
                    return Err(Error::param("t", "must be positive"));
                }
                Target::FT { t }
            }
            "prop41-m" => {
                let a = get("alpha")?;
                if !(a.abs() < 1.0) || a == 0.0 {
                    return Err(Error::param("alpha", "needs 0 < |alpha| < 1"));
                }
                Target::Prop41M { alpha: a }
            }
            "quotient-y" => Target::QuotientY { alpha: alpha()? },
            "quotient-t" => Target::QuotientT { alpha: alpha()? },
            "v-half" => Target::VHalf,
            other => {
                let family = Family::from_name(other, |k| params.get(k).copied())?;
                let a = match params.get("alpha") {
                    Some(&a) => Some(AlphaParam::new(a)?),
                    None => None,
                };
                Target::Density(VariableDescriptor::new(family, a)?)
            }
        })
    }

    /// Lévy density of `log V_α` with breakpoints prepared down to `x = 10⁻⁴`.
    pub fn levy_w(alpha: AlphaParam) -> Result<Target> {
        Ok(Target::LevyW {
            alpha,
            eval: Arc::new(LevyDensityW::new(alpha, 1e-4, 10)?),
        })
    }

    pub fn custom<F>(name: impl Into<String>, ln_f: F) -> Target
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        Target::Custom(CustomFn {
            name: name.into(),
            ln_f: Arc::new(ln_f),
        })
    }

    /// The density of `cX` when `self` is the density of `X`.
    pub fn scaled(self, scale: f64) -> Target {
        Target::Scaled {
            inner: Box::new(self),
            scale,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Target::Exp => "exp".into(),
            Target::Lorentz => "lorentz".into(),
            Target::MlNeg { alpha } => format!("ml-neg(alpha={alpha})"),
            Target::LevyW { alpha, .. } => format!("levy-w(alpha={alpha})"),
            Target::GammaFactor { beta, y, gamma } => {
                format!("gamma-factor(beta={beta},y={y},gamma={gamma})")
            }
            Target::FT { t } => format!("f-t(t={t})"),
            Target::Prop41M { alpha } => format!("prop41-m(alpha={alpha})"),
            Target::QuotientY { alpha } => format!("quotient-y(alpha={alpha})"),
            Target::QuotientT { alpha } => format!("quotient-t(alpha={alpha})"),
            Target::VHalf => "v-half".into(),
            Target::Density(d) => match d.alpha {
                Some(a) => format!("{}(alpha={a})", d.family.name()),
                None => d.family.name().into(),
            },
            Target::Scaled { inner, scale } => format!("{}*{scale}", inner.describe()),
            Target::Tabulated(t) => format!("table({} rows)", t.x.len()),
            Target::Custom(c) => c.name.clone(),
        }
    }

    /// True when [`Target::jet`] gives exact Taylor coefficients.
    pub fn has_jet(&self) -> bool {
        match self {
            Target::Density(_) | Target::Tabulated(_) | Target::Custom(_) => false,
            Target::Scaled { inner, .. } => inner.has_jet(),
            _ => true,
        }
    }

    /// Taylor expansion of `f ∘ x`, or `None` without closed-form derivatives.
    pub fn jet(&self, x: &Jet) -> Option<Result<Jet>> {
        let n = x.order();
        let x0 = x.value();
        if !(x0 > 0.0) && !matches!(self, Target::FT { .. }) {
            return Some(Err(Error::domain("target", format!("needs x > 0, got {x0}"))));
        }
        let j = match self {
            Target::Exp => x.scale(-1.0).exp(),
            Target::Lorentz => (x * x).add_const(1.0).recip(),
            Target::MlNeg { alpha } => {
                let d = match mittag_leffler_derivs(*alpha, -x0, n) {
                    Ok(d) => d,
                    Err(e) => return Some(Err(e)),
                };
                let mut fact = 1.0;
                let coeffs: Vec<f64> = d
                    .iter()
                    .enumerate()
                    .map(|(k, v)| {
                        if k > 0 {
                            fact *= k as f64;
                        }
                        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                        sign * v / fact
                    })
                    .collect();
                Jet::compose(&coeffs, x)
            }
            Target::LevyW { eval, .. } => {
                let d = match eval.derivs(x0, n) {
                    Ok(d) => d,
                    Err(e) => return Some(Err(e)),
                };
                let mut fact = 1.0;
                let coeffs: Vec<f64> = d
                    .iter()
                    .enumerate()
                    .map(|(k, v)| {
                        if k > 0 {
                            fact *= k as f64;
                        }
                        v / fact
                    })
                    .collect();
                Jet::compose(&coeffs, x)
            }
            Target::GammaFactor { beta, y, gamma } => {
                &x.powf(beta - 1.0) * &x.add_const(*y).powf(-gamma)
            }
            Target::FT { t } => {
                if x0 < 0.0 {
                    return Some(Err(Error::domain("f_t", "needs x >= 0")));
                }
                if x0 == 0.0 {
                    return None;
                }
                // (x+1)^t − x^t, in the cancellation-free form for large x
                let diff = if x0 > 1.0 {
                    &x.powf(*t) * &x.recip().ln_1p().scale(*t).exp_m1()
                } else {
                    &x.ln_1p().scale(*t).exp() - &x.powf(*t)
                };
                (&x.add_const(1.0) * &diff.sqrt()).recip()
            }
            Target::Prop41M { alpha } => {
                let ua = x.powf(*alpha);
                (&(&ua * &ua) + &ua.scale(2.0 * cos_pi(*alpha))).add_const(1.0).recip()
            }
            Target::QuotientY { alpha } => {
                let a = *alpha;
                let xa = x.powf(a);
                let den = (&(&xa * &xa) + &xa.scale(2.0 * cos_pi(a))).add_const(1.0);
                x.powf(a - 1.0).div(&den).scale(sin_pi(a) / PI)
            }
            Target::QuotientT { alpha } => {
                let a = *alpha;
                let den = (&(x * x) + &x.scale(2.0 * cos_pi(a))).add_const(1.0);
                den.recip().scale(sin_pi(a) / (PI * a))
            }
            Target::VHalf => {
                if x0 <= 0.25 {
                    Jet::constant(0.0, n)
                } else {
                    (x * &x.add_const(-0.25).sqrt()).recip().scale(1.0 / (2.0 * PI))
                }
            }
            Target::Scaled { inner, scale } => {
                return inner
                    .jet(&x.scale(1.0 / scale))
                    .map(|r| r.map(|j| j.scale(1.0 / scale)));
            }
            Target::Density(_) | Target::Tabulated(_) | Target::Custom(_) => return None,
        };
        Some(Ok(j))
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        match self {
            Target::MlNeg { alpha } => mittag_leffler(*alpha, -x),
            Target::LevyW { eval, .. } => eval.value(x),
            Target::FT { t } if x == 0.0 => Ok(crate::stable::family::f_t(*t, 0.0)),
            Target::Density(_) | Target::Custom(_) => Ok(self.ln_value(x)?.exp()),
            Target::Scaled { inner, scale } => Ok(inner.value(x / scale)? / scale),
            Target::Tabulated(t) => t.value(x),
            _ => match self.jet(&Jet::constant(x, 0)) {
                Some(r) => r.map(|j| j.value()),
                None => Err(Error::domain("target", "cannot evaluate")),
            },
        }
    }

    pub fn ln_value(&self, x: f64) -> Result<f64> {
        match self {
            Target::Exp => Ok(-x),
            Target::Density(d) => ln_derived_density(d, x),
            Target::Custom(c) => (c.ln_f)(x),
            Target::Scaled { inner, scale } => Ok(inner.ln_value(x / scale)? - scale.ln()),
            _ => Ok(self.value(x)?.ln()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn jets_agree_with_values() {
        let targets = [
            Target::Exp,
            Target::Lorentz,
            Target::MlNeg { alpha: 0.6 },
            Target::GammaFactor {
                beta: 0.3,
                y: 2.0,
                gamma: 1.5,
            },
            Target::FT { t: 1.5 },
            Target::Prop41M { alpha: 0.4 },
            Target::QuotientY { alpha: 0.7 },
            Target::QuotientT { alpha: 0.7 },
            Target::VHalf,
            Target::levy_w(AlphaParam::new(0.3).unwrap()).unwrap(),
        ];
        for t in &targets {
            for x0 in [0.4, 3.0] {
                let j = t.jet(&Jet::variable(x0, 2)).unwrap().unwrap();
                assert_relative_eq!(j.value(), t.value(x0).unwrap(), max_relative = 1e-12);
                let h = 1e-5;
                let fd = (t.value(x0 + h).unwrap() - t.value(x0 - h).unwrap()) / (2.0 * h);
                assert_relative_eq!(j.derivative(1), fd, max_relative = 1e-6, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn resolves_names() {
        let mut p = BTreeMap::new();
        p.insert("alpha".to_string(), 0.3);
        assert!(matches!(Target::from_name("quotient-y", &p).unwrap(), Target::QuotientY { .. }));
        assert!(matches!(Target::from_name("stable", &p).unwrap(), Target::Density(_)));
        assert!(Target::from_name("nope", &p).is_err());
        assert!(Target::from_name("f-t", &p).is_err());
    }

    #[test]
    fn table_interpolates_power_laws_exactly() {
        let t = Table::new(vec![1.0, 2.0, 4.0], vec![1.0, 0.25, 0.0625]).unwrap();
        assert_relative_eq!(t.value(3.0).unwrap(), 1.0 / 9.0, max_relative = 1e-14);
        assert!(t.value(5.0).is_err());
    }
}
