//! Seeded samplers for the descriptor families and a few sample statistics.
//!
//! Draws are produced in fixed-size chunks. Each chunk owns a ChaCha stream
//! keyed by `(seed, stream, chunk)`, so the output does not depend on how many
//! threads generate it.

use std::f64::consts::PI;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Beta, Distribution, Exp1, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::summation::CompensatedSum;
use crate::stable::kanter::{ln_b_at_zero, ln_b_excess_split};
use crate::stable::{AlphaParam, Family, VariableDescriptor};

const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub seed: u64,
    pub stream: u64,
}

impl SeedSpec {
    pub fn new(seed: u64, stream: u64) -> Self {
        SeedSpec { seed, stream }
    }

    /// Same seed, another stream.
    pub fn with_stream(self, stream: u64) -> Self {
        SeedSpec { stream, ..self }
    }

    fn chunk_rng(&self, chunk: u64) -> ChaCha20Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.stream.to_le_bytes());
        key[16..24].copy_from_slice(&chunk.to_le_bytes());
        ChaCha20Rng::from_seed(key)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub descriptor: VariableDescriptor,
    pub seed: SeedSpec,
    pub n: usize,
    pub values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct Sidecar {
    descriptor: VariableDescriptor,
    seed: SeedSpec,
    n: usize,
}

impl SampleBatch {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "value")?;
        for v in &self.values {
            writeln!(w, "{v:e}")?;
        }
        Ok(())
    }

    /// Writes `path` as CSV and the sidecar next to it with a `.json` extension.
    pub fn save(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        self.write_csv(&mut w)?;
        w.flush()?;
        let side = Sidecar {
            descriptor: self.descriptor,
            seed: self.seed,
            n: self.n,
        };
        std::fs::write(path.with_extension("json"), serde_json::to_string_pretty(&side)?)?;
        Ok(())
    }

    /// Reads a batch written by [`SampleBatch::save`].
    pub fn load(path: &Path) -> Result<Self> {
        let side: Sidecar = serde_json::from_str(&std::fs::read_to_string(path.with_extension("json"))?)?;
        let values = read_value_column(path)?;
        if values.len() != side.n {
            return Err(Error::Parse(format!(
                "{}: sidecar says {} rows, found {}",
                path.display(),
                side.n,
                values.len()
            )));
        }
        Ok(SampleBatch {
            descriptor: side.descriptor,
            seed: side.seed,
            n: side.n,
            values,
        })
    }
}

/// Reads the `value` column of a CSV file.
pub fn read_value_column(path: &Path) -> Result<Vec<f64>> {
    let file = std::fs::File::open(path)?;
    let mut lines = BufReader::new(file).lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse(format!("{}: empty file", path.display())))??;
    let col = header
        .split(',')
        .position(|h| h.trim() == "value")
        .ok_or_else(|| Error::Parse(format!("{}: no `value` column", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let field = line.split(',').nth(col).unwrap_or("").trim();
        out.push(field.parse::<f64>().map_err(|_| {
            Error::Parse(format!("{}: line {}: bad number `{field}`", path.display(), i + 2))
        })?);
    }
    Ok(out)
}

/// `n` values of `draw`, generated chunk by chunk in parallel and merged in order.
pub fn sample_with<F>(n: usize, seed: SeedSpec, draw: F) -> Vec<f64>
where
    F: Fn(&mut ChaCha20Rng) -> f64 + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = seed.chunk_rng(c as u64);
            let len = CHUNK.min(n - c * CHUNK);
            (0..len).map(|_| draw(&mut rng)).collect::<Vec<f64>>()
        })
        .collect::<Vec<_>>()
        .concat()
}

fn exp1<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let l: f64 = Exp1.sample(rng);
        if l > 0.0 {
            return l;
        }
    }
}

/// Uniform angle on (0, π) returned as `(u, π − u)`.
fn angle<R: Rng>(rng: &mut R) -> (f64, f64) {
    loop {
        let p: f64 = rng.random();
        if p > 0.0 {
            return (PI * p, PI * (1.0 - p));
        }
    }
}

/// `ln b(U) − ln b(0)` for a uniform angle.
fn ln_b_excess_draw<R: Rng>(alpha: AlphaParam, rng: &mut R) -> f64 {
    let (u, v) = angle(rng);
    ln_b_excess_split(alpha, u, v)
}

/// ln Z_α via `Z = L^{−β/α} b(U)^{−1/α}`.
pub fn ln_stable_draw<R: Rng>(alpha: AlphaParam, rng: &mut R) -> f64 {
    let (a, b) = (alpha.alpha(), alpha.beta());
    let ln_l = exp1(rng).ln();
    let ln_b = ln_b_at_zero(alpha) + ln_b_excess_draw(alpha, rng);
    -(b / a) * ln_l - ln_b / a
}

/// ln V_α with `V = b(U)^{−1/β}`.
pub fn ln_kanter_v_draw<R: Rng>(alpha: AlphaParam, rng: &mut R) -> f64 {
    alpha.kanter_v_edge().ln() - ln_b_excess_draw(alpha, rng) / alpha.beta()
}

fn draw_fn(desc: &VariableDescriptor) -> Result<Box<dyn Fn(&mut ChaCha20Rng) -> f64 + Sync>> {
    let al = || desc.alpha();
    Ok(match desc.family {
        Family::Stable => {
            let a = al()?;
            Box::new(move |r| ln_stable_draw(a, r).exp())
        }
        Family::StablePower { gamma } => {
            let a = al()?;
            Box::new(move |r| (gamma * ln_stable_draw(a, r)).exp())
        }
        Family::QuotientT | Family::QuotientY => {
            let a = al()?;
            let p = if desc.family == Family::QuotientT { a.alpha() } else { 1.0 };
            Box::new(move |r| {
                let x = ln_stable_draw(a, r);
                let y = ln_stable_draw(a, r);
                (p * (x - y)).exp()
            })
        }
        Family::MittagLeffler | Family::MittagLefflerPower { .. } => {
            let a = al()?;
            let s = match desc.family {
                Family::MittagLefflerPower { s } => s,
                _ => 1.0,
            };
            Box::new(move |r| {
                let z = ln_stable_draw(a, r);
                let l = exp1(r).ln();
                (s * (z + l / a.alpha())).exp()
            })
        }
        Family::KanterV => {
            let a = al()?;
            Box::new(move |r| ln_kanter_v_draw(a, r).exp())
        }
        Family::KanterVPower { s } => {
            let a = al()?;
            Box::new(move |r| (s * ln_kanter_v_draw(a, r)).exp())
        }
        Family::VHalf => {
            let a = AlphaParam::new(0.5)?;
            Box::new(move |r| ln_kanter_v_draw(a, r).exp())
        }
        Family::YShifted { s } => {
            let a = AlphaParam::new(0.5)?;
            // V^s − 4^{−s} = 4^{−s} expm1(s ln 4V)
            Box::new(move |r| {
                let l = -ln_b_excess_draw(a, r) / a.beta();
                4f64.powf(-s) * (s * l).exp_m1()
            })
        }
        Family::LogKanter => {
            let a = al()?;
            Box::new(move |r| ln_kanter_v_draw(a, r))
        }
        Family::Subordinated => {
            let a = al()?;
            let a2 = AlphaParam::new(2.0 * a.alpha())?;
            let half = AlphaParam::new(0.5)?;
            Box::new(move |r| {
                let x = ln_stable_draw(a2, r);
                let y = ln_stable_draw(half, r);
                (x + y / a2.alpha()).exp()
            })
        }
        Family::PssProduct { gamma } => {
            let a = al()?;
            let ga = a.alpha() / (a.beta() * gamma);
            let inner = if ga < 1.0 - 1e-12 { Some(AlphaParam::new(ga)?) } else { None };
            Box::new(move |r| {
                let w = ln_kanter_v_draw(a, r) / ga + inner.map_or(0.0, |z| ln_stable_draw(z, r));
                exp1(r) * (-w).exp()
            })
        }
        Family::Gamma { shape } => {
            let g = Gamma::new(shape, 1.0).map_err(|e| Error::param("shape", e.to_string()))?;
            Box::new(move |r| g.sample(r))
        }
        Family::Beta { a, b } => {
            let d = Beta::new(a, b).map_err(|e| Error::param("beta", e.to_string()))?;
            Box::new(move |r| d.sample(r))
        }
        Family::Exponential => Box::new(|r| exp1(r)),
        Family::MixingX | Family::FT { .. } | Family::Prop41M => {
            return Err(Error::domain(
                "sample",
                format!("no sampler for `{}`", desc.family.name()),
            ));
        }
    })
}

/// `n` independent draws of the variable, reproducible from `seed`.
pub fn sample(desc: &VariableDescriptor, n: usize, seed: SeedSpec) -> Result<SampleBatch> {
    if n == 0 {
        return Err(Error::param("n", "must be at least 1"));
    }
    let draw = draw_fn(desc)?;
    let values = sample_with(n, seed, draw);
    Ok(SampleBatch {
        descriptor: *desc,
        seed,
        n,
        values,
    })
}

fn mean_and_stderr(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut s = CompensatedSum::new();
    let mut s2 = CompensatedSum::new();
    let mut n = 0usize;
    for v in values {
        s.add(v);
        s2.add(v * v);
        n += 1;
    }
    let nf = n as f64;
    let mean = s.value() / nf;
    if n < 2 {
        return (mean, f64::NAN);
    }
    let var = ((s2.value() - nf * mean * mean) / (nf - 1.0)).max(0.0);
    (mean, (var / nf).sqrt())
}

/// Sample mean and standard error of `e^{−λX}`.
pub fn empirical_laplace(batch: &SampleBatch, lambda: f64) -> (f64, f64) {
    if lambda == 0.0 {
        return (1.0, 0.0);
    }
    mean_and_stderr(batch.values.iter().map(|x| (-lambda * x).exp()))
}

/// Sample mean and standard error of `X^s`.
pub fn empirical_moment(batch: &SampleBatch, s: f64) -> (f64, f64) {
    mean_and_stderr(batch.values.iter().map(|x| x.powf(s)))
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::param("sample", "both samples must be nonempty"));
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (na, nb) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let t = x[i].min(y[j]);
        while i < x.len() && x[i] <= t {
            i += 1;
        }
        while j < y.len() && y[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// [`ks_distance`] on two batches.
pub fn ks_batches(a: &SampleBatch, b: &SampleBatch) -> Result<f64> {
    ks_distance(&a.values, &b.values)
}
