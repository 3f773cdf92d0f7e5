//! Acceptance gate. Every test prints one PASS/FAIL line to stderr (outside
//! the test harness capture) and then asserts the same verdict.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use stable_lab::checks::{check_hcm, check_hm, count_modes, estimate_c_alpha, CheckConfig, GridScale, GridSpec, Target};
use stable_lab::levy::w_laplace_identity;
use stable_lab::numerics::{gamma, log_space, mittag_leffler, QuadConfig};
use stable_lab::sampling::{empirical_laplace, ks_batches, ks_distance, sample, SeedSpec};
use stable_lab::stable::density::density_quad;
use stable_lab::stable::{
    derived_density, ln_power_density, stable_density, total_mass, AlphaParam, Family, VariableDescriptor,
};
use stable_lab::verify::{run_check, CheckOutcome};
use statrs::function::erf::erfc;

fn verdict(id: &str, what: &str, ok: bool, detail: String) {
    let line = format!("acceptance {id:<3} {} {what}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "{what}: {detail}");
}

fn alpha(a: f64) -> AlphaParam {
    AlphaParam::new(a).unwrap()
}

fn check(id: &str, kv: &[(&str, f64)]) -> CheckOutcome {
    let p: BTreeMap<String, f64> = kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    run_check(id, &p).unwrap()
}

#[test]
fn closed_form_half_density() {
    let start = Instant::now();
    let cfg = density_quad();
    let mut worst: f64 = 0.0;
    for x in log_space(0.05, 50.0, 200) {
        let f = stable_density(alpha(0.5), x, &cfg).unwrap();
        let exact = (-1.0 / (4.0 * x)).exp() / (2.0 * PI.sqrt() * x.powf(1.5));
        worst = worst.max((f / exact - 1.0).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        "1",
        "Z_1/2 density vs closed form",
        worst <= 1e-8 && secs < 5.0,
        format!("max rel err {worst:.2e} (≤ 1e-8), {secs:.2}s (< 5s)"),
    );
}

#[test]
fn densities_integrate_to_one() {
    let start = Instant::now();
    let cfg = QuadConfig::new(1e-300, 1e-10, 4000).unwrap();
    let mut cases: Vec<VariableDescriptor> = (2..=9)
        .map(|k| VariableDescriptor::stable(alpha(k as f64 / 10.0)))
        .collect();
    for a in [0.3, 0.5, 0.8] {
        cases.push(VariableDescriptor::with_alpha(Family::MittagLeffler, alpha(a)).unwrap());
    }
    for a in [0.3, 0.5, 0.7] {
        cases.push(VariableDescriptor::with_alpha(Family::QuotientT, alpha(a)).unwrap());
        cases.push(VariableDescriptor::with_alpha(Family::QuotientY, alpha(a)).unwrap());
    }
    cases.push(VariableDescriptor::new(Family::VHalf, None).unwrap());
    for a in [0.1, 0.2, 0.3] {
        cases.push(VariableDescriptor::with_alpha(Family::MixingX, alpha(a)).unwrap());
    }
    let mut worst: f64 = 0.0;
    let mut at = String::new();
    for d in &cases {
        let m = total_mass(d, &cfg).unwrap().value;
        if (m - 1.0).abs() > worst {
            worst = (m - 1.0).abs();
            at = format!("{}(α={:?})", d.family.name(), d.alpha.map(|a| a.alpha()));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        "2",
        "normalization",
        worst <= 1e-6 && secs < 30.0,
        format!("{} densities, max |mass−1| {worst:.2e} at {at} (≤ 1e-6), {secs:.1}s (< 30s)", cases.len()),
    );
}

#[test]
fn sampler_laplace_transform() {
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut slowest = 0.0f64;
    for (k, a) in [0.3, 0.5, 0.7].into_iter().enumerate() {
        let start = Instant::now();
        let b = sample(&VariableDescriptor::stable(alpha(a)), 1_000_000, SeedSpec::new(20_240_601, k as u64)).unwrap();
        for l in [0.5, 1.0, 2.0] {
            let (m, se) = empirical_laplace(&b, l);
            let band = (4.0 * se).max(2e-3);
            let dev = (m - (-f64::powf(l, a)).exp()).abs();
            worst = worst.max(dev / band);
            ok &= dev <= band;
        }
        let secs = start.elapsed().as_secs_f64();
        slowest = slowest.max(secs);
        ok &= secs < 10.0;
    }
    verdict(
        "3",
        "sampler Laplace transform",
        ok,
        format!("max deviation/band {worst:.3} (≤ 1), slowest α {slowest:.2}s (< 10s)"),
    );
}

#[test]
fn factorizations_in_law() {
    let n = 100_000;
    let seed = 20_240_601;
    // 4 Z_{1/2} against an inverse Gamma(1/2, 1)
    let z = sample(&VariableDescriptor::stable(alpha(0.5)), n, SeedSpec::new(seed, 0)).unwrap();
    let g = sample(&VariableDescriptor::new(Family::Gamma { shape: 0.5 }, None).unwrap(), n, SeedSpec::new(seed, 1)).unwrap();
    let four_z: Vec<f64> = z.values.iter().map(|v| 4.0 * v).collect();
    let inv_g: Vec<f64> = g.values.iter().map(|v| 1.0 / v).collect();
    let d1 = ks_distance(&four_z, &inv_g).unwrap();

    let mut d2: f64 = 0.0;
    for (k, a) in [0.2, 0.35].into_iter().enumerate() {
        let x = sample(&VariableDescriptor::stable(alpha(a)), n, SeedSpec::new(seed, 10 + 2 * k as u64)).unwrap();
        let sub = VariableDescriptor::with_alpha(Family::Subordinated, alpha(a)).unwrap();
        let y = sample(&sub, n, SeedSpec::new(seed, 11 + 2 * k as u64)).unwrap();
        d2 = d2.max(ks_batches(&x, &y).unwrap());
    }

    let power = VariableDescriptor::with_alpha(Family::StablePower { gamma: -0.5 }, alpha(1.0 / 3.0)).unwrap();
    let product = VariableDescriptor::with_alpha(Family::PssProduct { gamma: 0.5 }, alpha(1.0 / 3.0)).unwrap();
    let x = sample(&power, n, SeedSpec::new(seed, 20)).unwrap();
    let y = sample(&product, n, SeedSpec::new(seed, 21)).unwrap();
    let d3 = ks_batches(&x, &y).unwrap();

    verdict(
        "4",
        "factorizations (KS, n = 1e5 per side)",
        d1 <= 0.01 && d2 <= 0.01 && d3 <= 0.01,
        format!("inverse Gamma {d1:.4}, subordination {d2:.4}, product {d3:.4} (each ≤ 0.01)"),
    );
}

#[test]
fn trigonometric_inequalities() {
    let mut lines = Vec::new();
    let mut ok = true;
    for a in [0.1, 0.25, 0.4, 0.5] {
        let o = check("trigo", &[("alpha", a), ("points", 10_000.0)]);
        let fd = o.details[&format!("min_step@{a}")];
        ok &= o.passed && fd >= -1e-9;
        lines.push(format!("α={a}: min Δh {fd:.2e}"));
    }
    let w = check("wronskian", &[]);
    ok &= w.passed && w.worst_margin >= -1e-12;
    let s = check("series-ineq", &[("points", 1000.0), ("z_max", 0.99)]);
    let smin = s
        .details
        .iter()
        .filter(|(k, _)| k.starts_with("min@"))
        .map(|(_, v)| *v)
        .fold(f64::INFINITY, f64::min);
    ok &= s.passed && smin >= 0.0;
    verdict(
        "5",
        "monotone h, Wronskian, series inequality",
        ok,
        format!("{}; Wronskian min {:.2e}; series min {smin:.4}", lines.join(", "), w.worst_margin),
    );
}

#[test]
fn levy_structure() {
    let l = check("levy-cm", &[]);
    let w = check("w-laplace", &[("alpha", 0.5)]);
    let exact = w_laplace_identity(alpha(0.5), 1.0);
    let mean = w.details["mean@1"];
    let dev = w.details["mc_deviation@1"];
    let routes = ["w_quadrature_error", "w_integrand_error"]
        .iter()
        .map(|k| {
            l.details
                .iter()
                .filter(|(n, _)| n.starts_with(k))
                .map(|(_, v)| *v)
                .fold(0.0, f64::max)
        })
        .collect::<Vec<_>>();
    let recon = w
        .details
        .iter()
        .filter(|(k, _)| k.starts_with("reconstruction_error"))
        .map(|(_, v)| *v)
        .fold(0.0, f64::max);
    let ok = l.passed && w.passed && (exact - 4.0 / PI).abs() < 1e-14 && routes[0] <= 1e-10 && recon <= 1e-6;
    verdict(
        "6",
        "Lévy structure",
        ok,
        format!(
            "θ range ok {}, w vs quadrature {:.1e}, w vs integrand {:.1e}, CM order 6 ok, reconstruction {recon:.1e}, MC mean {mean:.5} vs 4/π (|dev| {dev:.1e})",
            l.details.iter().filter(|(k, _)| k.starts_with("theta_range")).all(|(_, v)| *v >= 0.0),
            routes[0],
            routes[1]
        ),
    );
}

#[test]
fn boundary_truth_tables() {
    let cfg = CheckConfig::default();
    let mut rows = Vec::new();
    let mut ok = true;
    let mut expect = |name: String, passed: bool, want: bool| {
        ok &= passed == want;
        rows.push(format!("{name} {}", if passed == want { "✓" } else { "✗" }));
    };
    for (a, want) in [(0.3, true), (0.5, true), (0.7, false)] {
        let r = check_hm(&Target::QuotientY { alpha: a }, &cfg).unwrap();
        expect(format!("HM Y@{a}"), r.passed, want);
    }
    for (a, want) in [(0.25, true), (0.5, true), (0.75, false)] {
        let r = check_hcm(&Target::Prop41M { alpha: a }, &cfg).unwrap();
        expect(format!("HCM m@{a}"), r.passed, want);
    }
    for (t, want) in [(0.5, false), (1.0, true), (1.5, true), (2.0, true), (2.5, false)] {
        let r = check_hcm(&Target::FT { t }, &cfg).unwrap();
        expect(format!("HCM f_t@{t}"), r.passed, want);
    }
    let r = check_hcm(&Target::VHalf, &cfg).unwrap();
    expect("HCM V_1/2".into(), r.passed, false);
    verdict("7", "boundary truth tables", ok, rows.join(", "));
}

#[test]
fn class_p_identity_and_threshold() {
    let o = check("classp-identity", &[]);
    let cfg = CheckConfig::default();
    let mut brackets = Vec::new();
    let mut ok = o.passed;
    for a in [0.3, 0.5, 0.7] {
        let b = estimate_c_alpha(alpha(a), &cfg).unwrap();
        ok &= if a <= 0.5 { b.lower == 0.0 && b.upper == 0.0 } else { b.lower > 0.0 };
        brackets.push(format!("c_{a} ∈ [{:.4}, {:.4}]", b.lower, b.upper));
    }
    let id_err = o
        .details
        .iter()
        .filter(|(k, _)| k.starts_with("identity_error"))
        .map(|(_, v)| *v)
        .fold(0.0, f64::max);
    verdict(
        "8",
        "class P identity, membership and scale threshold",
        ok && id_err <= 1e-10,
        format!("identity err {id_err:.1e} (≤ 1e-10) on 20×20, {}", brackets.join(", ")),
    );
}

#[test]
fn mittag_leffler_function_and_ggc_forms() {
    let mut worst: f64 = 0.0;
    for k in 0..=1000 {
        let x = 10.0 * k as f64 / 1000.0;
        let e = mittag_leffler(0.5, -x).unwrap();
        let exact = (x * x).exp() * erfc(x);
        worst = worst.max((e - exact).abs() / exact);
    }
    let g = check("ml-ggc", &[]);
    let forms = g.details["exponential_form_error"];
    verdict(
        "9a",
        "E_1/2(−x) vs e^{x²}erfc(x), two Laplace forms",
        worst <= 1e-9 && forms <= 1e-6 && g.passed,
        format!("max rel err {worst:.2e} (≤ 1e-9) on [0, 10]; forms {forms:.2e} (≤ 1e-6) on λ ∈ [0.1, 10]"),
    );
}

#[test]
fn mittag_leffler_power_left_edge_and_bimodality() {
    let a = 0.8;
    let s0 = -1.0 / a;
    let claim = -1.0 / (a * gamma(-a).unwrap());
    let d = VariableDescriptor::with_alpha(Family::MittagLefflerPower { s: s0 }, alpha(a)).unwrap();
    let f0 = derived_density(&d, 1e-10).unwrap();
    let err = ((f0 - claim) / claim).abs();
    // diagnostic only: the same quantity at s = −α
    let at_minus_alpha = derived_density(
        &VariableDescriptor::with_alpha(Family::MittagLefflerPower { s: -a }, alpha(a)).unwrap(),
        1e-10,
    )
    .unwrap();
    let grid = GridSpec::new(1e-6, 10.0, 2000, GridScale::Lin).unwrap();
    let mut found = None;
    for k in 1..=100 {
        let s = s0 - 0.01 * k as f64;
        let t = Target::Density(VariableDescriptor::with_alpha(Family::MittagLefflerPower { s }, alpha(a)).unwrap());
        if count_modes(&t, &grid, 1e-9).unwrap() >= 2 {
            found = Some(s);
            break;
        }
    }
    verdict(
        "9b",
        "M_0.8^{−1/α} left edge and a bimodal power below −1/α",
        err <= 1e-8 && found.is_some(),
        format!(
            "f(0+) = {f0:.10} vs {claim:.10} (rel err {err:.2e}, needs ≤ 1e-8); bimodal s in [{:.2}, {s0:.2}): {found:?}; at s = −α f(0+) = {at_minus_alpha:.10}",
            s0 - 1.0
        ),
    );
}

#[test]
fn small_x_exponent() {
    let cfg = density_quad();
    let mut ok = true;
    let mut rows = Vec::new();
    for (a, g) in [(0.3, 0.6), (0.2, 0.8)] {
        let xs = log_space(1e-4, 1e-2, 41);
        let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
        let ly: Vec<f64> = xs.iter().map(|&x| ln_power_density(alpha(a), -g, x, &cfg).unwrap()).collect();
        let n = lx.len() as f64;
        let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
        let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
        let slope = sxy / sxx;
        let want = a / g - 1.0;
        ok &= (slope - want).abs() <= 0.02;
        rows.push(format!("(α, γ) = ({a}, {g}): slope {slope:.4} vs {want:.4}"));
    }
    verdict("10", "small-x exponent (± 0.02)", ok, rows.join("; "));
}

#[test]
fn verify_reports_are_reproducible() {
    let exe = env!("CARGO_BIN_EXE_stable-lab");
    let dir = tempfile::tempdir().unwrap();
    let mut times = Vec::new();
    let mut codes = Vec::new();
    for name in ["a.json", "b.json"] {
        let start = Instant::now();
        let st = std::process::Command::new(exe)
            .args(["verify", "--id", "all", "--report"])
            .arg(dir.path().join(name))
            .stderr(std::process::Stdio::null())
            .status()
            .unwrap();
        times.push(start.elapsed().as_secs_f64());
        codes.push(st.code());
    }
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    let slow = times.iter().cloned().fold(0.0, f64::max);
    verdict(
        "11",
        "deterministic verify reports",
        a == b && !a.is_empty() && slow < 300.0 && codes.iter().all(|c| *c != Some(1)),
        format!("{} bytes, identical {}, slowest run {slow:.1}s (< 300s), exit codes {codes:?}", a.len(), a == b),
    );
}
