//! Truncated Taylor series ("jets") with the usual arithmetic.
//!
//! A jet of order `n` stores `c[k] = f^{(k)}(x0)/k!` for `k = 0..=n`. All binary
//! operations assume equal orders.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub c: Vec<f64>,
}

impl Jet {
    pub fn constant(v: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = v;
        Jet { c }
    }

    /// The identity map `x0 + τ` at `x0`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut j = Jet::constant(x0, order);
        if order >= 1 {
            j.c[1] = 1.0;
        }
        j
    }

    pub fn from_coeffs(c: Vec<f64>) -> Self {
        Jet { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let mut fact = 1.0;
        for i in 2..=k {
            fact *= i as f64;
        }
        self.c[k] * fact
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet {
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add_const(&self, s: f64) -> Jet {
        let mut j = self.clone();
        j.c[0] += s;
        j
    }

    pub fn recip(&self) -> Jet {
        Jet::constant(1.0, self.order()).div(self)
    }

    pub fn div(&self, d: &Jet) -> Jet {
        let n = self.c.len();
        let mut q = vec![0.0; n];
        for k in 0..n {
            let mut s = self.c[k];
            for j in 1..=k {
                s -= d.c[j] * q[k - j];
            }
            q[k] = s / d.c[0];
        }
        Jet { c: q }
    }

    pub fn exp(&self) -> Jet {
        let n = self.c.len();
        let mut e = vec![0.0; n];
        e[0] = self.c[0].exp();
        for k in 1..n {
            let mut s = 0.0;
            for j in 1..=k {
                s += j as f64 * self.c[j] * e[k - j];
            }
            e[k] = s / k as f64;
        }
        Jet { c: e }
    }

    /// `exp(a) − 1`, accurate when the constant term is small.
    pub fn exp_m1(&self) -> Jet {
        let mut e = self.exp();
        e.c[0] = self.c[0].exp_m1();
        e
    }

    pub fn ln(&self) -> Jet {
        let n = self.c.len();
        let a0 = self.c[0];
        let mut l = vec![0.0; n];
        l[0] = a0.ln();
        for k in 1..n {
            let mut s = k as f64 * self.c[k];
            for j in 1..k {
                s -= j as f64 * l[j] * self.c[k - j];
            }
            l[k] = s / (k as f64 * a0);
        }
        Jet { c: l }
    }

    /// `ln(1 + a)`.
    pub fn ln_1p(&self) -> Jet {
        let mut l = self.add_const(1.0).ln();
        l.c[0] = self.c[0].ln_1p();
        l
    }

    /// `a^p` for a positive constant term.
    pub fn powf(&self, p: f64) -> Jet {
        let n = self.c.len();
        let a0 = self.c[0];
        let mut b = vec![0.0; n];
        b[0] = a0.powf(p);
        for k in 1..n {
            let mut s = 0.0;
            for j in 1..=k {
                s += (p * j as f64 - (k - j) as f64) * self.c[j] * b[k - j];
            }
            b[k] = s / (k as f64 * a0);
        }
        Jet { c: b }
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    /// Composition `outer(self)`, where `outer` holds the Taylor coefficients of
    /// the outer function at `self.value()`.
    pub fn compose(outer: &[f64], inner: &Jet) -> Jet {
        let n = inner.c.len();
        let mut d = inner.clone();
        d.c[0] = 0.0;
        // Horner in the shifted variable
        let coeff = |k: usize| outer.get(k).copied().unwrap_or(0.0);
        let mut acc = Jet::constant(coeff(n - 1), n - 1);
        for k in (0..n - 1).rev() {
            acc = (&acc * &d).add_const(coeff(k));
        }
        acc
    }
}

impl<'a> Add for &'a Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        Jet {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub for &'a Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        Jet {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul for &'a Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let n = self.c.len();
        let mut c = vec![0.0; n];
        for i in 0..n {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..n - i {
                c[i + j] += self.c[i] * o.c[j];
            }
        }
        Jet { c }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exp_ln_roundtrip() {
        let x = Jet::variable(0.7, 6);
        let y = x.exp().ln();
        for (a, b) in y.c.iter().zip(&x.c) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn power_derivatives() {
        // d^k/dx^k x^{-1/2} at 2
        let j = Jet::variable(2.0, 4).powf(-0.5);
        let mut expected = 2f64.powf(-0.5);
        let mut p = -0.5;
        for k in 0..=4 {
            assert_relative_eq!(j.derivative(k), expected, max_relative = 1e-13);
            expected *= p / 2.0;
            p -= 1.0;
        }
    }

    #[test]
    fn division_matches_geometric_series() {
        let one = Jet::constant(1.0, 5);
        let x = Jet::variable(0.0, 5);
        let g = one.div(&(&one - &x));
        assert!(g.c.iter().all(|&v| (v - 1.0).abs() < 1e-15));
    }

    #[test]
    fn compose_against_direct() {
        let x = Jet::variable(0.3, 5);
        let inner = x.sqrt();
        // exp taylor at inner.value()
        let e0 = inner.value().exp();
        let mut outer = vec![0.0; 6];
        let mut f = 1.0;
        for k in 0..6 {
            if k > 0 {
                f *= k as f64;
            }
            outer[k] = e0 / f;
        }
        let a = Jet::compose(&outer, &inner);
        let b = inner.exp();
        for (u, v) in a.c.iter().zip(&b.c) {
            assert_relative_eq!(u, v, max_relative = 1e-12);
        }
    }
}
