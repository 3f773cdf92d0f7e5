//! Command-line frontend. Exit codes: 0 pass, 2 check failure, 1 error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{
    check_class_p, check_cm, check_hcm, check_hm, check_pick, g_t_log_derivative, pick_h, CheckConfig, GridSpec,
    PickRegion, Target,
};
use crate::error::{Error, Result};
use crate::sampling::{empirical_laplace, read_value_column, sample, SampleBatch, SeedSpec};
use crate::stable::density::density_quad;
use crate::stable::family::laplace_transform;
use crate::stable::{AlphaParam, DensityGrid, Family, VariableDescriptor};
use crate::sweep::{run_sweep, write_sweep_csv, Conjecture, SweepConfig};
use crate::verify::{run_check, run_suite, save_reports, suite_ok, report_json, CHECK_IDS, DEFAULT_SEED};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

pub const THREADS_ENV: &str = "STABLE_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "stable-lab", version, about = "Positive stable laws: sampling, densities, class checks")]
struct Cli {
    /// Worker threads; falls back to STABLE_LAB_THREADS, then to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw a reproducible sample and write it as CSV.
    Sample(SampleArgs),
    /// Tabulate a density on a grid.
    Density(DensityArgs),
    /// Run one property check on a target function.
    Check(CheckArgs),
    /// Run registered verification checks.
    Verify(VerifyArgs),
    /// Evidence tables for the GGC conjectures.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    /// Family name, e.g. stable, mittag-leffler, kanter-v-power.
    #[arg(long)]
    family: String,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    /// Extra parameters as `key=value,key=value`.
    #[arg(long, value_parser = parse_params)]
    params: Option<BTreeMap<String, f64>>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// `min:max:n:log|lin`.
    #[arg(long, default_value = "0.01:100:200:log")]
    grid: GridSpec,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CheckKind {
    Cm,
    Hm,
    Hcm,
    Classp,
    Pick,
    Laplace,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, value_enum)]
    kind: CheckKind,
    /// Builtin name, family name or CSV path. For `pick`: pick-h or g-t-log-derivative.
    /// For `laplace`: a sample CSV.
    #[arg(long)]
    target: String,
    #[arg(long, value_parser = parse_params)]
    params: Option<BTreeMap<String, f64>>,
    #[arg(long)]
    order: Option<usize>,
    /// Relative tolerance; for `laplace` an absolute floor on the 4·stderr band.
    #[arg(long)]
    tol: Option<f64>,
    /// `min:max:n:log|lin`, default 1e-3:1e3:64:log.
    #[arg(long)]
    grid: Option<GridSpec>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// A check id or `all`.
    #[arg(long, default_value = "all")]
    id: String,
    #[arg(long, value_parser = parse_params)]
    params: Option<BTreeMap<String, f64>>,
    /// Seed for the Monte Carlo checks.
    #[arg(long)]
    seed: Option<u64>,
    /// JSON report; a CSV with the same stem is written next to it.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    conjecture: u32,
    /// Comma list or `min:max:n:log|lin`; first Beta shape for conjecture 2.
    #[arg(long, value_parser = parse_list)]
    alpha_grid: Vec1,
    /// Comma list or `min:max:n:log|lin`.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    power_grid: Vec1,
    /// Second Beta shape for conjecture 2; defaults to the first.
    #[arg(long)]
    second_shape: Option<f64>,
    /// Wall-clock budget in seconds; rows after it are dropped and the run is marked partial.
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
struct Vec1(Vec<f64>);

fn parse_params(s: &str) -> std::result::Result<BTreeMap<String, f64>, String> {
    let mut out = BTreeMap::new();
    for kv in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| format!("`{kv}` is not key=value"))?;
        let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn parse_list(s: &str) -> std::result::Result<Vec1, String> {
    if s.contains(':') {
        let g: GridSpec = s.parse().map_err(|e: Error| e.to_string())?;
        return Ok(Vec1(g.points()));
    }
    let v = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("`{p}` is not a number")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err("empty list".into());
    }
    Ok(Vec1(v))
}

/// Record written next to every artifact.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub config: Value,
    pub seed: Option<u64>,
    pub version: String,
    pub wall_time_seconds: f64,
    pub partial: bool,
    pub outputs: Vec<String>,
}

/// `out.csv` → `out.manifest.json`.
pub fn manifest_path(artifact: &Path) -> PathBuf {
    artifact.with_extension("manifest.json")
}

struct Ctx {
    argv: Vec<String>,
    start: Instant,
}

impl Ctx {
    fn manifest(&self, artifact: &Path, config: Value, seed: Option<u64>, partial: bool, outputs: Vec<PathBuf>) -> Result<()> {
        let m = RunManifest {
            command_line: self.argv.clone(),
            config,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds: self.start.elapsed().as_secs_f64(),
            partial,
            outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        };
        // a round trip through Value sorts the keys
        let v = serde_json::to_value(&m)?;
        std::fs::write(manifest_path(artifact), serde_json::to_string_pretty(&v)? + "\n")?;
        Ok(())
    }
}

fn descriptor(f: &FamilyArgs) -> Result<VariableDescriptor> {
    let mut p = f.params.clone().unwrap_or_default();
    for (k, v) in [("alpha", f.alpha), ("gamma", f.gamma), ("s", f.s), ("t", f.t)] {
        if let Some(v) = v {
            p.insert(k.into(), v);
        }
    }
    let family = Family::from_name(&f.family, |k| p.get(k).copied())?;
    let alpha = p.get("alpha").map(|a| AlphaParam::new(*a)).transpose()?;
    VariableDescriptor::new(family, alpha)
}

fn cmd_sample(a: &SampleArgs, ctx: &Ctx) -> Result<i32> {
    let d = descriptor(&a.family)?;
    let batch = sample(&d, a.n, SeedSpec::new(a.seed, a.stream))?;
    match &a.out {
        Some(path) => {
            batch.save(path)?;
            let cfg = json!({ "descriptor": d, "n": a.n, "stream": a.stream });
            ctx.manifest(path, cfg, Some(a.seed), false, vec![path.clone(), path.with_extension("json")])?;
        }
        None => batch.write_csv(std::io::stdout().lock())?,
    }
    Ok(EXIT_PASS)
}

fn cmd_density(a: &DensityArgs, ctx: &Ctx) -> Result<i32> {
    let d = descriptor(&a.family)?;
    if !d.family.is_density() {
        return Err(Error::domain("density", format!("`{}` is not a density", d.family.name())));
    }
    let quad = density_quad();
    let grid = DensityGrid::evaluate(d, a.grid.points(), &quad)?;
    match &a.out {
        Some(path) => {
            grid.save(path, &quad)?;
            let cfg = json!({ "descriptor": d, "grid": a.grid.to_string() });
            ctx.manifest(path, cfg, None, false, vec![path.clone(), path.with_extension("json")])?;
        }
        None => grid.write_csv(std::io::stdout().lock())?,
    }
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct LaplaceRow {
    lambda: f64,
    mean: f64,
    stderr: f64,
    exact: f64,
    band: f64,
    passed: bool,
}

/// Empirical Laplace transform of a sample file against the exact one.
fn laplace_check(a: &CheckArgs, params: &BTreeMap<String, f64>) -> Result<(bool, Value)> {
    let path = Path::new(&a.target);
    let batch = if path.with_extension("json").exists() && !params.contains_key("alpha") {
        SampleBatch::load(path)?
    } else {
        let alpha = params
            .get("alpha")
            .ok_or_else(|| Error::param("alpha", "needed when the sample has no sidecar"))?;
        let values = read_value_column(path)?;
        SampleBatch {
            descriptor: VariableDescriptor::stable(AlphaParam::new(*alpha)?),
            seed: SeedSpec::new(0, 0),
            n: values.len(),
            values,
        }
    };
    let lambdas = match params.get("lambda") {
        Some(l) => vec![*l],
        None => vec![0.5, 1.0, 2.0],
    };
    let floor = a.tol.unwrap_or(0.0);
    let mut rows = Vec::new();
    for l in lambdas {
        let exact = laplace_transform(&batch.descriptor, l)?;
        let (mean, se) = empirical_laplace(&batch, l);
        let band = (4.0 * se).max(floor);
        rows.push(LaplaceRow {
            lambda: l,
            mean,
            stderr: se,
            exact,
            band,
            passed: (mean - exact).abs() <= band,
        });
    }
    let passed = rows.iter().all(|r| r.passed);
    let v = json!({ "descriptor": batch.descriptor, "n": batch.n, "passed": passed, "rows": rows });
    Ok((passed, v))
}

fn cmd_check(a: &CheckArgs, ctx: &Ctx) -> Result<i32> {
    let params = a.params.clone().unwrap_or_default();
    let mut cfg = CheckConfig::default();
    if let Some(o) = a.order {
        cfg.max_order = o;
    }
    if a.kind != CheckKind::Laplace {
        if let Some(t) = a.tol {
            cfg.rel_tol = t;
        }
    }
    if let Some(g) = a.grid {
        cfg.grid = g;
    }
    cfg.validate()?;
    let (passed, report) = match a.kind {
        CheckKind::Laplace => laplace_check(a, &params)?,
        CheckKind::Pick => {
            let need = |k: &str| {
                params
                    .get(k)
                    .copied()
                    .ok_or_else(|| Error::param(k, format!("target `{}` needs `{k}`", a.target)))
            };
            let region = PickRegion::default();
            let r = match a.target.as_str() {
                "pick-h" => {
                    let u = need("u")?;
                    check_pick(move |z: Complex64| pick_h(u, z), &region, &cfg)?
                }
                "g-t-log-derivative" => {
                    let t = need("t")?;
                    check_pick(move |z: Complex64| g_t_log_derivative(t, z), &region, &cfg)?
                }
                other => {
                    return Err(Error::Unknown {
                        kind: "pick target",
                        name: other.to_string(),
                    })
                }
            };
            (r.passed, serde_json::to_value(&r)?)
        }
        kind => {
            let target = Target::from_name(&a.target, &params)?;
            let r = match kind {
                CheckKind::Cm => check_cm(&target, &cfg)?,
                CheckKind::Hm => check_hm(&target, &cfg)?,
                CheckKind::Hcm => check_hcm(&target, &cfg)?,
                _ => check_class_p(&target, &cfg)?,
            };
            (r.passed, serde_json::to_value(&r)?)
        }
    };
    let text = serde_json::to_string_pretty(&report)? + "\n";
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text)?;
            let conf = json!({
                "kind": a.kind,
                "target": a.target,
                "params": params,
                "check": cfg,
                "laplace_floor": a.tol.filter(|_| a.kind == CheckKind::Laplace),
            });
            ctx.manifest(path, conf, None, false, vec![path.clone()])?;
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    eprintln!("{}: {}", a.target, if passed { "PASS" } else { "FAIL" });
    Ok(if passed { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_verify(a: &VerifyArgs, ctx: &Ctx) -> Result<i32> {
    let mut params = a.params.clone().unwrap_or_default();
    if let Some(s) = a.seed {
        params.insert("seed".into(), s as f64);
    }
    let outcomes = if a.id == "all" {
        run_suite(&CHECK_IDS, &params)?
    } else {
        vec![run_check(&a.id, &params)?]
    };
    for o in &outcomes {
        let verdict = match (o.passed, o.expected) {
            (true, true) => "PASS",
            (false, false) => "PASS (expected failure)",
            (true, false) => "FAIL (unexpected pass)",
            (false, true) => "FAIL",
        };
        eprintln!("{:<22} {verdict:<24} worst margin {:+.3e}", o.id, o.worst_margin);
    }
    match &a.report {
        Some(path) => {
            save_reports(&outcomes, path)?;
            let conf = json!({ "id": a.id, "params": params });
            let seed = params.get("seed").map(|s| *s as u64).unwrap_or(DEFAULT_SEED);
            ctx.manifest(path, conf, Some(seed), false, vec![path.clone(), path.with_extension("csv")])?;
        }
        None => std::io::stdout().lock().write_all(report_json(&outcomes)?.as_bytes())?,
    }
    Ok(if suite_ok(&outcomes) { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_sweep(a: &SweepArgs, ctx: &Ctx) -> Result<i32> {
    let mut cfg = SweepConfig::new(Conjecture::from_number(a.conjecture)?, a.alpha_grid.0.clone(), a.power_grid.0.clone());
    cfg.second_shape = a.second_shape;
    cfg.budget_seconds = a.budget;
    let res = run_sweep(&cfg)?;
    if res.partial {
        eprintln!("budget exhausted after {} rows; output is partial", res.rows.len());
    }
    match &a.out {
        Some(path) => {
            let f = std::fs::File::create(path)?;
            let mut w = std::io::BufWriter::new(f);
            write_sweep_csv(&res, &mut w)?;
            w.flush()?;
            ctx.manifest(path, serde_json::to_value(&cfg)?, None, res.partial, vec![path.clone()])?;
        }
        None => write_sweep_csv(&res, std::io::stdout().lock())?,
    }
    Ok(EXIT_PASS)
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::param(THREADS_ENV, format!("`{v}` is not a thread count"))),
        Err(_) => Ok(None),
    }
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
        }
    };
    let ctx = Ctx {
        argv: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
        start: Instant::now(),
    };
    let result = thread_count(cli.threads).and_then(|threads| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            b = b.num_threads(n.max(1));
        }
        let pool = b.build().map_err(|e| Error::param("threads", e.to_string()))?;
        pool.install(|| match &cli.cmd {
            Command::Sample(a) => cmd_sample(a, &ctx),
            Command::Density(a) => cmd_density(a, &ctx),
            Command::Check(a) => cmd_check(a, &ctx),
            Command::Verify(a) => cmd_verify(a, &ctx),
            Command::Sweep(a) => cmd_sweep(a, &ctx),
        })
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_and_lists_parse() {
        let p = parse_params("alpha=0.75, x=2").unwrap();
        assert_eq!(p["alpha"], 0.75);
        assert_eq!(p["x"], 2.0);
        assert!(parse_params("alpha").is_err());
        assert_eq!(parse_list("0.3,0.5").unwrap().0, vec![0.3, 0.5]);
        assert_eq!(parse_list("1:3:3:lin").unwrap().0, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["stable-lab", "sample", "--n", "3"]), EXIT_ERROR);
        assert_eq!(run(["stable-lab", "bogus"]), EXIT_ERROR);
        assert_eq!(run(["stable-lab", "--help"]), EXIT_PASS);
    }

    fn run_in(dir: &Path, args: &[&str]) -> i32 {
        let mut v = vec!["stable-lab".to_string()];
        v.extend(args.iter().map(|a| a.replace("{d}", &dir.display().to_string())));
        run(v)
    }

    #[test]
    fn sample_is_reproducible_and_feeds_the_laplace_check() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path();
        for name in ["a", "b"] {
            let out = format!("{{d}}/{name}.csv");
            let args = ["sample", "--family", "mittag-leffler", "--alpha", "0.7", "--n", "10", "--seed", "3", "--out", &out];
            assert_eq!(run_in(d, &args), EXIT_PASS);
        }
        assert_eq!(std::fs::read(d.join("a.csv")).unwrap(), std::fs::read(d.join("b.csv")).unwrap());
        let m: Value = serde_json::from_str(&std::fs::read_to_string(d.join("a.manifest.json")).unwrap()).unwrap();
        assert_eq!(m["seed"], 3);
        assert_eq!(m["partial"], false);

        let args = ["sample", "--family", "stable", "--alpha", "0.5", "--n", "20000", "--seed", "7", "--out", "{d}/s.csv"];
        assert_eq!(run_in(d, &args), EXIT_PASS);
        let b = SampleBatch::load(&d.join("s.csv")).unwrap();
        assert!(b.values.iter().all(|v| *v > 0.0));
        let args = ["check", "--kind", "laplace", "--target", "{d}/s.csv", "--out", "{d}/l.json"];
        assert_eq!(run_in(d, &args), EXIT_PASS);
    }

    #[test]
    fn density_grid_integrates_to_one() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path();
        let args = ["density", "--family", "stable", "--alpha", "0.5", "--grid", "0.005:5000:4000:log", "--out", "{d}/f.csv"];
        assert_eq!(run_in(d, &args), EXIT_PASS);
        let t = crate::checks::Table::from_csv(&d.join("f.csv")).unwrap();
        let trap: f64 = t.x.windows(2).zip(t.y.windows(2)).map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1])).sum();
        // P(Z_{1/2} > 5000) = erf(1/(2√5000)) ≈ 0.008; the left tail is negligible
        assert!((trap - 0.992).abs() < 2e-3, "{trap}");
        assert_eq!(run_in(d, &["density", "--family", "f-t", "--t", "1"]), EXIT_ERROR);
    }

    #[test]
    fn check_exit_codes_follow_the_truth_tables() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path();
        let cases = [
            (["--kind", "hm", "--target", "quotient-y", "--params", "alpha=0.5"], EXIT_PASS),
            (["--kind", "hm", "--target", "quotient-y", "--params", "alpha=0.7"], EXIT_FAIL),
            (["--kind", "hcm", "--target", "prop41-m", "--params", "alpha=0.25"], EXIT_PASS),
            (["--kind", "hcm", "--target", "prop41-m", "--params", "alpha=0.75"], EXIT_FAIL),
            (["--kind", "hcm", "--target", "f-t", "--params", "t=1.5"], EXIT_PASS),
            (["--kind", "hcm", "--target", "f-t", "--params", "t=2.5"], EXIT_FAIL),
            (["--kind", "pick", "--target", "pick-h", "--params", "u=0.5"], EXIT_PASS),
            (["--kind", "cm", "--target", "no-such-target", "--params", "alpha=0.5"], EXIT_ERROR),
        ];
        for (i, (args, code)) in cases.iter().enumerate() {
            let out = format!("{{d}}/c{i}.json");
            let mut v = vec!["check"];
            v.extend_from_slice(args);
            v.extend_from_slice(&["--out", &out]);
            assert_eq!(run_in(d, &v), *code, "{args:?}");
        }
        let r: Value = serde_json::from_str(&std::fs::read_to_string(d.join("c1.json")).unwrap()).unwrap();
        assert_eq!(r["passed"], false);
        assert!(r["worst_location"]["point"].is_number());
    }

    #[test]
    fn verify_writes_json_csv_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path();
        let args = ["verify", "--id", "lamp", "--params", "alpha=0.75", "--report", "{d}/r.json"];
        assert_eq!(run_in(d, &args), EXIT_PASS);
        let csv = std::fs::read_to_string(d.join("r.csv")).unwrap();
        assert!(csv.starts_with("id,passed,expected,worst_margin\nlamp,false,false,"));
        assert!(d.join("r.manifest.json").exists());
        assert_eq!(run_in(d, &["verify", "--id", "trigo", "--params", "alpha=0.33"]), EXIT_PASS);
        assert_eq!(run_in(d, &["verify", "--id", "nope"]), EXIT_ERROR);
    }

    #[test]
    fn sweep_single_cell_and_partial_flag() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path();
        let args = ["sweep", "--conjecture", "2", "--alpha-grid", "0.5", "--power-grid", "0.75", "--out", "{d}/s.csv"];
        assert_eq!(run_in(d, &args), EXIT_PASS);
        assert_eq!(std::fs::read_to_string(d.join("s.csv")).unwrap().lines().count(), 2);
        let args = ["sweep", "--conjecture", "1", "--alpha-grid", "0.3,0.5", "--power-grid", "1,2", "--budget", "0", "--out", "{d}/p.csv"];
        assert_eq!(run_in(d, &args), EXIT_PASS);
        let m: Value = serde_json::from_str(&std::fs::read_to_string(d.join("p.manifest.json")).unwrap()).unwrap();
        assert_eq!(m["partial"], true);
        assert_eq!(run_in(d, &["sweep", "--conjecture", "4", "--alpha-grid", "0.5", "--power-grid", "1"]), EXIT_ERROR);
    }
}
