//! Numerical membership tests for CM, HM, HCM, class P and Pick functions.
//!
//! Every check returns evidence on a finite grid, never a proof.

mod cm;
mod shape;
mod target;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{lin_space, log_space};

pub use cm::{check_cm, check_hcm};
pub use shape::{
    check_class_p, check_hm, check_pick, count_modes, estimate_c_alpha, g_t_log_derivative,
    pick_h, pick_h_im_closed, CAlphaBracket, PickRegion,
};
pub use target::{CustomFn, Table, Target, BUILTIN_NAMES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridScale {
    Log,
    Lin,
}

/// `n` points from `min` to `max`; written `min:max:n:log|lin`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub n: usize,
    pub scale: GridScale,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, n: usize, scale: GridScale) -> Result<Self> {
        let g = GridSpec { min, max, n, scale };
        g.validate()?;
        Ok(g)
    }

    pub fn log(min: f64, max: f64, n: usize) -> Self {
        GridSpec {
            min,
            max,
            n,
            scale: GridScale::Log,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::param("grid", "needs at least one point"));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.max < self.min {
            return Err(Error::param("grid", "needs finite min <= max"));
        }
        if self.n > 1 && self.max == self.min {
            return Err(Error::param("grid", "min = max only allowed with one point"));
        }
        if self.scale == GridScale::Log && !(self.min > 0.0) {
            return Err(Error::param("grid", "log grids need min > 0"));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        match self.scale {
            GridScale::Log => log_space(self.min, self.max, self.n),
            GridScale::Lin => lin_space(self.min, self.max, self.n),
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.scale {
            GridScale::Log => "log",
            GridScale::Lin => "lin",
        };
        write!(f, "{}:{}:{}:{}", self.min, self.max, self.n, s)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Parse(format!("grid `{s}`: expected min:max:n:log|lin"));
        if parts.len() != 4 && parts.len() != 3 {
            return Err(bad());
        }
        let min: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let max: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        let scale = match parts.get(3).map(|p| p.trim()) {
            None | Some("log") => GridScale::Log,
            Some("lin") => GridScale::Lin,
            Some(_) => return Err(bad()),
        };
        GridSpec::new(min, max, n, scale)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub max_order: usize,
    pub grid: GridSpec,
    /// Values of `u` for the HCM check.
    pub u_grid: GridSpec,
    pub rel_tol: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_order: 8,
            grid: GridSpec::log(1e-3, 1e3, 64),
            u_grid: GridSpec::log(1e-2, 1e2, 16),
            rel_tol: 1e-7,
        }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_order < 2 {
            return Err(Error::param("max_order", "must be at least 2"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::param("rel_tol", "must be positive"));
        }
        self.grid.validate()?;
        self.u_grid.validate()
    }
}

/// How the derivatives behind a report were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Exact Taylor coefficients.
    Jet,
    /// Richardson-extrapolated central differences; margins are credited by their error estimate.
    FiniteDifference,
    /// Direct evaluation of the defining inequality.
    Direct,
}

/// Where the worst margin occurred. `aux` is `u` for HCM, `c` for class P and
/// `Im z` for Pick checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Location {
    pub order: usize,
    pub point: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aux: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CMReport {
    pub passed: bool,
    /// Most negative normalized margin.
    pub worst_margin: f64,
    pub worst_location: Option<Location>,
    /// Smallest margin seen at each order; a single entry for checks without orders.
    pub per_order_margins: Vec<f64>,
    pub method: Method,
    /// Number of points where the margins were evaluated.
    pub points: usize,
    /// Points skipped because the function vanished there.
    pub skipped: usize,
}

impl CMReport {
    /// Lowest order whose margin falls below `−rel_tol`.
    pub fn first_failing_order(&self, rel_tol: f64) -> Option<usize> {
        self.per_order_margins.iter().position(|m| *m < -rel_tol)
    }
}

/// Running minimum over margins, merged deterministically.
#[derive(Debug, Clone)]
pub(crate) struct MarginAcc {
    pub per_order: Vec<f64>,
    pub worst: f64,
    pub loc: Option<Location>,
    pub points: usize,
    pub skipped: usize,
}

impl MarginAcc {
    pub fn new(orders: usize) -> Self {
        MarginAcc {
            per_order: vec![f64::INFINITY; orders],
            worst: f64::INFINITY,
            loc: None,
            points: 0,
            skipped: 0,
        }
    }

    pub fn push(&mut self, slot: usize, margin: f64, loc: Location) {
        if margin < self.per_order[slot] {
            self.per_order[slot] = margin;
        }
        if margin < self.worst {
            self.worst = margin;
            self.loc = Some(loc);
        }
    }

    /// Merges `other`, which must cover points later in the fixed grid order.
    pub fn merge(mut self, other: MarginAcc) -> Self {
        for (a, b) in self.per_order.iter_mut().zip(&other.per_order) {
            if *b < *a {
                *a = *b;
            }
        }
        if other.worst < self.worst {
            self.worst = other.worst;
            self.loc = other.loc;
        }
        self.points += other.points;
        self.skipped += other.skipped;
        self
    }

    pub fn report(self, method: Method, rel_tol: f64) -> CMReport {
        CMReport {
            passed: self.worst >= -rel_tol,
            worst_margin: self.worst,
            worst_location: self.loc,
            per_order_margins: self.per_order,
            method,
            points: self.points,
            skipped: self.skipped,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parse_roundtrip() {
        let g: GridSpec = "0.05:50:200:log".parse().unwrap();
        assert_eq!(g.points().len(), 200);
        assert_eq!(g.to_string().parse::<GridSpec>().unwrap(), g);
        assert!("1:0:3:lin".parse::<GridSpec>().is_err());
        assert!("0:1:3:log".parse::<GridSpec>().is_err());
        assert!("0:1:x:lin".parse::<GridSpec>().is_err());
        assert_eq!("2:2:1:lin".parse::<GridSpec>().unwrap().points(), vec![2.0]);
    }
}
