//! Registry of named checks, each reproducing one computable claim and
//! returning a [`CheckOutcome`].

mod analytic;
mod boundary;
mod monte_carlo;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks::CMReport;
use crate::error::{Error, Result};

/// Result of one registered check.
///
/// `passed` says whether the computed margins clear the tolerance; `expected`
/// is what the underlying claim predicts for the given parameters. A boundary
/// case that is supposed to fail has `passed = expected = false`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: String,
    pub passed: bool,
    pub expected: bool,
    pub worst_margin: f64,
    pub tolerance: f64,
    pub details: BTreeMap<String, f64>,
    pub config_echo: BTreeMap<String, f64>,
}

impl CheckOutcome {
    pub fn matches_expectation(&self) -> bool {
        self.passed == self.expected
    }
}

pub const CHECK_IDS: [&str; 17] = [
    "trigo",
    "wronskian",
    "series-ineq",
    "levy-cm",
    "w-laplace",
    "kanter-laplace",
    "bochner",
    "pss-factorization",
    "hcm12",
    "quotient-hm-boundary",
    "lamp",
    "classp-identity",
    "ml-ggc",
    "ml-bimodal",
    "small-x-exponent",
    "thm4a-pieces",
    "conjecture-sweep",
];

/// Ids whose outcome is evidence only and never gates a suite.
pub const EVIDENCE_IDS: [&str; 1] = ["conjecture-sweep"];

/// Parameter lookup with defaults; every value read is echoed in the outcome.
pub(crate) struct Params<'a> {
    given: &'a BTreeMap<String, f64>,
    used: BTreeMap<String, f64>,
}

impl<'a> Params<'a> {
    fn new(given: &'a BTreeMap<String, f64>) -> Self {
        Params {
            given,
            used: BTreeMap::new(),
        }
    }

    pub fn get(&mut self, key: &str, default: f64) -> f64 {
        let v = self.given.get(key).copied().unwrap_or(default);
        self.used.insert(key.to_string(), v);
        v
    }

    pub fn opt(&mut self, key: &str) -> Option<f64> {
        let v = self.given.get(key).copied();
        if let Some(v) = v {
            self.used.insert(key.to_string(), v);
        }
        v
    }

    pub fn alpha(&mut self, key: &str, default: f64) -> Result<f64> {
        let a = self.get(key, default);
        if a > 0.0 && a < 1.0 {
            Ok(a)
        } else {
            Err(Error::param(key, format!("must lie in (0, 1), got {a}")))
        }
    }

    pub fn count(&mut self, key: &str, default: usize) -> Result<usize> {
        let v = self.get(key, default as f64);
        if v >= 1.0 && v.fract() == 0.0 && v < 1e9 {
            Ok(v as usize)
        } else {
            Err(Error::param(key, format!("must be a positive integer, got {v}")))
        }
    }

    pub fn seed(&mut self) -> Result<u64> {
        let v = self.get("seed", DEFAULT_SEED as f64);
        if v >= 0.0 && v.fract() == 0.0 && v < 9.0e15 {
            Ok(v as u64)
        } else {
            Err(Error::param("seed", format!("must be a non-negative integer, got {v}")))
        }
    }

    fn unused(&self) -> Vec<String> {
        self.given
            .keys()
            .filter(|k| !self.used.contains_key(*k))
            .cloned()
            .collect()
    }
}

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Accumulates margins; `passed ⇔ worst ≥ −tol`.
pub(crate) struct Tally {
    tol: f64,
    worst: f64,
    details: BTreeMap<String, f64>,
}

impl Tally {
    pub fn new(tol: f64) -> Self {
        Tally {
            tol,
            worst: f64::INFINITY,
            details: BTreeMap::new(),
        }
    }

    pub fn detail(&mut self, key: impl Into<String>, v: f64) {
        self.details.insert(key.into(), v);
    }

    /// A margin that must be `≥ −tol`.
    pub fn margin(&mut self, key: impl Into<String>, m: f64) {
        self.detail(key, m);
        self.push(m);
    }

    fn push(&mut self, m: f64) {
        if m.is_nan() {
            self.worst = f64::NEG_INFINITY;
        } else if m < self.worst {
            self.worst = m;
        }
    }

    /// Requires `err ≤ bound`; the margin is `1 − err/bound`.
    pub fn bound(&mut self, key: impl Into<String>, err: f64, bound: f64) {
        self.detail(key, err);
        self.push(1.0 - err / bound);
    }

    /// A case that should fail: `m` must lie below `−tol`. Recorded as
    /// `−m − 2·tol` so the usual rule applies.
    pub fn expect_negative(&mut self, key: impl Into<String>, m: f64) {
        self.detail(key, m);
        let t = self.tol;
        self.push(-m - 2.0 * t);
    }

    /// A margin judged at its own tolerance `tol_i`, rescaled onto this tally.
    pub fn scaled(&mut self, key: impl Into<String>, m: f64, tol_i: f64) {
        self.detail(key, m);
        self.push(if m >= 0.0 { m } else { m * self.tol / tol_i });
    }

    /// Records a property-check report that should pass (or fail, when
    /// `expect_pass` is false), with the location of its worst margin.
    pub fn report(&mut self, key: &str, r: &CMReport, rel_tol: f64, expect_pass: bool) {
        if let Some(loc) = r.worst_location {
            self.detail(format!("{key}_worst_point"), loc.point);
            if let Some(aux) = loc.aux {
                self.detail(format!("{key}_worst_aux"), aux);
            }
        }
        if let Some(k) = r.first_failing_order(rel_tol) {
            self.detail(format!("{key}_first_failing_order"), k as f64);
        }
        let key = format!("{key}_worst_margin");
        if expect_pass {
            self.scaled(key, r.worst_margin, rel_tol);
        } else {
            self.detail(key, r.worst_margin);
            let m = r.worst_margin * self.tol / rel_tol;
            let t = self.tol;
            self.push(-m - 2.0 * t);
        }
    }

    fn finish(self, id: &str, expected: bool, params: Params<'_>) -> CheckOutcome {
        let worst = if self.worst == f64::INFINITY {
            0.0
        } else {
            self.worst
        };
        CheckOutcome {
            id: id.to_string(),
            passed: worst >= -self.tol,
            expected,
            worst_margin: worst,
            tolerance: self.tol,
            details: self.details,
            config_echo: params.used,
        }
    }
}

/// What a check function hands back: its tally and the expected verdict.
pub(crate) type Finding = (Tally, bool);

fn dispatch(id: &str, p: &mut Params<'_>) -> Result<Finding> {
    match id {
        "trigo" => analytic::trigo(p),
        "wronskian" => analytic::wronskian(p),
        "series-ineq" => analytic::series_ineq(p),
        "classp-identity" => analytic::classp_identity(p),
        "ml-ggc" => analytic::ml_ggc(p),
        "ml-bimodal" => analytic::ml_bimodal(p),
        "small-x-exponent" => analytic::small_x_exponent(p),
        "thm4a-pieces" => analytic::thm4a_pieces(p),
        "levy-cm" => boundary::levy_cm(p),
        "hcm12" => boundary::hcm12(p),
        "quotient-hm-boundary" => boundary::quotient_hm(p),
        "lamp" => boundary::lamp(p),
        "conjecture-sweep" => boundary::conjecture_sweep(p),
        "w-laplace" => monte_carlo::w_laplace(p),
        "kanter-laplace" => monte_carlo::kanter_laplace(p),
        "bochner" => monte_carlo::bochner(p),
        "pss-factorization" => monte_carlo::pss(p),
        other => Err(Error::Unknown {
            kind: "check id",
            name: other.to_string(),
        }),
    }
}

fn run_inner(id: &str, params: &BTreeMap<String, f64>, strict: bool) -> Result<CheckOutcome> {
    let mut p = Params::new(params);
    let (tally, expected) = dispatch(id, &mut p)?;
    if strict {
        let unused = p.unused();
        if !unused.is_empty() {
            return Err(Error::param(
                unused.join(","),
                format!("not a parameter of `{id}`"),
            ));
        }
    }
    Ok(tally.finish(id, expected, p))
}

/// Runs one registered check. Parameters it does not read are rejected.
pub fn run_check(id: &str, params: &BTreeMap<String, f64>) -> Result<CheckOutcome> {
    run_inner(id, params, true)
}

/// Runs several checks concurrently; outcomes come back in the order of `ids`.
/// Each check reads the parameters it knows and ignores the rest.
pub fn run_suite(ids: &[&str], params: &BTreeMap<String, f64>) -> Result<Vec<CheckOutcome>> {
    for id in ids {
        if !CHECK_IDS.contains(id) {
            return Err(Error::Unknown {
                kind: "check id",
                name: id.to_string(),
            });
        }
    }
    ids.par_iter().map(|id| run_inner(id, params, false)).collect()
}

/// True when every non-evidence outcome matches its expectation.
pub fn suite_ok(outcomes: &[CheckOutcome]) -> bool {
    outcomes
        .iter()
        .filter(|o| !EVIDENCE_IDS.contains(&o.id.as_str()))
        .all(CheckOutcome::matches_expectation)
}

/// Pretty JSON array; maps are key-sorted so the text is stable.
pub fn report_json(outcomes: &[CheckOutcome]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(outcomes)?;
    s.push('\n');
    Ok(s)
}

pub fn write_csv_report<W: Write>(outcomes: &[CheckOutcome], mut w: W) -> Result<()> {
    writeln!(w, "id,passed,expected,worst_margin")?;
    for o in outcomes {
        writeln!(w, "{},{},{},{:e}", o.id, o.passed, o.expected, o.worst_margin)?;
    }
    Ok(())
}

/// Writes `path` as JSON and a sibling `.csv`.
pub fn save_reports(outcomes: &[CheckOutcome], path: &Path) -> Result<()> {
    std::fs::write(path, report_json(outcomes)?)?;
    let csv = path.with_extension("csv");
    write_csv_report(outcomes, std::fs::File::create(csv)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(kv: &[(&str, f64)]) -> BTreeMap<String, f64> {
        kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn unknown_id_and_parameter() {
        assert!(matches!(
            run_check("nope", &BTreeMap::new()),
            Err(Error::Unknown { .. })
        ));
        assert!(run_check("trigo", &params(&[("bogus", 1.0)])).is_err());
        assert!(run_check("trigo", &params(&[("alpha", 1.5)])).is_err());
    }

    #[test]
    fn expected_failure_is_not_a_suite_failure() {
        let o = run_check("lamp", &params(&[("alpha", 0.75)])).unwrap();
        assert!(!o.passed && !o.expected);
        assert!(o.details.contains_key("worst_point"));
        assert!(suite_ok(&[o]));
    }

    #[test]
    fn classp_identity_example() {
        let o = run_check(
            "classp-identity",
            &params(&[("alpha", 0.5), ("x", 2.0), ("c", 3.0)]),
        )
        .unwrap();
        assert!(o.passed, "{o:?}");
        assert!((o.details["rhs"] + 30.0).abs() < 1e-12);
    }
}
