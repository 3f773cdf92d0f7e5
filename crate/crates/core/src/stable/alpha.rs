use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stable index `α ∈ (0,1)` with its complement `β = 1 − α`.
///
/// When built from a ratio `p/q` the exact fraction is kept so that
/// floor-function breakpoints at `k/α` and `k/β` can be located in integer
/// arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaParam {
    alpha: f64,
    beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ratio: Option<(u64, u64)>,
}

impl AlphaParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::param("alpha", format!("must lie in (0,1), got {alpha}")));
        }
        Ok(AlphaParam {
            alpha,
            beta: 1.0 - alpha,
            ratio: None,
        })
    }

    /// α = p/q in lowest terms.
    pub fn from_ratio(p: u64, q: u64) -> Result<Self> {
        if p == 0 || p >= q {
            return Err(Error::param("alpha", format!("ratio {p}/{q} is not in (0,1)")));
        }
        let g = gcd(p, q);
        let (p, q) = (p / g, q / g);
        Ok(AlphaParam {
            alpha: p as f64 / q as f64,
            beta: (q - p) as f64 / q as f64,
            ratio: Some((p, q)),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn ratio(&self) -> Option<(u64, u64)> {
        self.ratio
    }

    /// The parameter with α and β swapped.
    pub fn complement(&self) -> AlphaParam {
        AlphaParam {
            alpha: self.beta,
            beta: self.alpha,
            ratio: self.ratio.map(|(p, q)| (q - p, q)),
        }
    }

    /// Left edge `βα^{α/β}` of the support of `b^{−1/β}(U)`.
    pub fn kanter_v_edge(&self) -> f64 {
        self.beta * self.alpha.powf(self.alpha / self.beta)
    }

    /// `α log α + β log β`, the left edge of `βW`.
    pub fn entropy_edge(&self) -> f64 {
        self.alpha * self.alpha.ln() + self.beta * self.beta.ln()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl std::fmt::Display for AlphaParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.ratio {
            Some((p, q)) => write!(f, "{p}/{q}"),
            None => write!(f, "{}", self.alpha),
        }
    }
}

impl std::str::FromStr for AlphaParam {
    type Err = Error;

    /// Accepts a decimal (`0.3`) or a ratio (`1/3`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad ratio `{s}`")))?;
            let q: u64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad ratio `{s}`")))?;
            return AlphaParam::from_ratio(p, q);
        }
        let a: f64 = s.parse().map_err(|_| Error::Parse(format!("bad alpha `{s}`")))?;
        AlphaParam::new(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(AlphaParam::new(0.0).is_err());
        assert!(AlphaParam::new(1.0).is_err());
        assert!(AlphaParam::new(f64::NAN).is_err());
        let a = AlphaParam::new(0.3).unwrap();
        assert_eq!(a.beta(), 1.0 - 0.3);
    }

    #[test]
    fn ratio_is_reduced() {
        let a: AlphaParam = "2/6".parse().unwrap();
        assert_eq!(a.ratio(), Some((1, 3)));
        assert_eq!(a.complement().ratio(), Some((2, 3)));
    }

    #[test]
    fn edges_at_half() {
        let a = AlphaParam::new(0.5).unwrap();
        assert_eq!(a.kanter_v_edge(), 0.25);
        assert!((a.entropy_edge() + std::f64::consts::LN_2).abs() < 1e-15);
    }
}
