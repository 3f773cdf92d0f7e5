use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::{ln_derived_density_with, VariableDescriptor};
use crate::error::{Error, Result};
use crate::numerics::quad::QuadConfig;

/// Tabulated density values of one variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    pub points: Vec<f64>,
    pub values: Vec<f64>,
    pub descriptor: VariableDescriptor,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    descriptor: &'a VariableDescriptor,
    n: usize,
    quad: &'a QuadConfig,
}

impl DensityGrid {
    /// Evaluates the descriptor at every point, in parallel.
    pub fn evaluate(desc: VariableDescriptor, points: Vec<f64>, cfg: &QuadConfig) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::param("grid", "needs at least one point"));
        }
        if points.windows(2).any(|w| !(w[1] > w[0])) || points.iter().any(|p| !(*p > 0.0)) {
            return Err(Error::param("grid", "points must be positive and strictly increasing"));
        }
        let values = points
            .par_iter()
            .map(|&x| ln_derived_density_with(&desc, x, cfg).map(f64::exp))
            .collect::<Result<Vec<f64>>>()?;
        if let Some(i) = values.iter().position(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Evaluation {
                what: desc.family.name().into(),
                location: points[i],
            });
        }
        Ok(DensityGrid {
            points,
            values,
            descriptor: desc,
        })
    }

    /// Trapezoid rule over the tabulated points.
    pub fn trapezoid(&self) -> f64 {
        self.points
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
            .sum()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,value")?;
        for (x, v) in self.points.iter().zip(&self.values) {
            writeln!(w, "{x:e},{v:e}")?;
        }
        Ok(())
    }

    /// Writes `path` as CSV and `path` with a `.json` extension as the sidecar.
    pub fn save(&self, path: &Path, cfg: &QuadConfig) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))?;
        let side = Sidecar {
            descriptor: &self.descriptor,
            n: self.points.len(),
            quad: cfg,
        };
        std::fs::write(path.with_extension("json"), serde_json::to_string_pretty(&side)?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::log_space;
    use crate::stable::{density::density_quad, AlphaParam};

    #[test]
    fn csv_roundtrip_shape() {
        let d = VariableDescriptor::stable(AlphaParam::new(0.5).unwrap());
        let g = DensityGrid::evaluate(d, log_space(0.1, 10.0, 5), &density_quad()).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x,value\n"));
        assert_eq!(text.lines().count(), 6);
    }

    #[test]
    fn rejects_unsorted() {
        let d = VariableDescriptor::stable(AlphaParam::new(0.5).unwrap());
        assert!(DensityGrid::evaluate(d, vec![1.0, 0.5], &density_quad()).is_err());
    }
}
