//! Complex log-Gamma and digamma: upward recurrence into the Stirling region,
//! then the asymptotic series.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::AnalyticError;

/// `B_2, B_4, .., B_20`.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaEngine {
    pub asymptotic_threshold: f64,
    pub bernoulli_terms: usize,
}

impl Default for GammaEngine {
    fn default() -> Self {
        GammaEngine { asymptotic_threshold: 12.0, bernoulli_terms: 10 }
    }
}

pub(crate) fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

impl GammaEngine {
    fn shift(&self, z: Complex64) -> (Complex64, usize) {
        let mut w = z;
        let mut n = 0;
        while w.re < 0.0 || w.norm() < self.asymptotic_threshold {
            w += 1.0;
            n += 1;
        }
        (w, n)
    }

    /// A branch of `ln Gamma(z)` that is continuous off the negative real axis.
    pub fn ln_gamma(&self, z: Complex64) -> Result<Complex64, AnalyticError> {
        if is_nonpositive_integer(z) {
            return Err(AnalyticError::Pole { re: z.re, im: z.im });
        }
        let (w, n) = self.shift(z);
        let mut shift_sum = Complex64::new(0.0, 0.0);
        for k in 0..n {
            shift_sum += (z + k as f64).ln();
        }
        let inv = w.inv();
        let inv2 = inv * inv;
        let mut series = Complex64::new(0.0, 0.0);
        let mut pw = inv;
        for (k, b) in BERNOULLI.iter().take(self.bernoulli_terms).enumerate() {
            let m = 2.0 * (k + 1) as f64;
            series += pw * (b / (m * (m - 1.0)));
            pw *= inv2;
        }
        let stirling = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series;
        Ok(stirling - shift_sum)
    }

    pub fn digamma(&self, z: Complex64) -> Result<Complex64, AnalyticError> {
        if is_nonpositive_integer(z) {
            return Err(AnalyticError::Pole { re: z.re, im: z.im });
        }
        let (w, n) = self.shift(z);
        let mut shift_sum = Complex64::new(0.0, 0.0);
        for k in 0..n {
            shift_sum += (z + k as f64).inv();
        }
        let inv = w.inv();
        let inv2 = inv * inv;
        let mut series = Complex64::new(0.0, 0.0);
        let mut pw = inv2;
        for (k, b) in BERNOULLI.iter().take(self.bernoulli_terms).enumerate() {
            let m = 2.0 * (k + 1) as f64;
            series += pw * (b / m);
            pw *= inv2;
        }
        Ok(w.ln() - 0.5 * inv - series - shift_sum)
    }
}

pub fn ln_gamma(z: Complex64) -> Result<Complex64, AnalyticError> {
    GammaEngine::default().ln_gamma(z)
}

pub fn digamma(z: Complex64) -> Result<Complex64, AnalyticError> {
    GammaEngine::default().digamma(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(c(1.0, 0.0)).unwrap().re + EULER_GAMMA).abs() < 1e-14);
        let half = -EULER_GAMMA - 2.0 * 2f64.ln();
        assert!((digamma(c(0.5, 0.0)).unwrap().re - half).abs() < 1e-14);
        // psi(10) = H_9 - gamma
        let h9: f64 = (1..10).map(|k| 1.0 / k as f64).sum();
        assert!((digamma(c(10.0, 0.0)).unwrap().re - (h9 - EULER_GAMMA)).abs() < 1e-14);
        assert!(digamma(c(-3.0, 0.0)).is_err());
    }

    #[test]
    fn ln_gamma_factorials_and_recurrence() {
        let mut fact = 1.0f64;
        for n in 1..25 {
            let lg = ln_gamma(c(n as f64, 0.0)).unwrap();
            assert!((lg.re - fact.ln()).abs() < 1e-13 * fact.ln().max(1.0), "n={n}");
            fact *= n as f64;
        }
        let z = c(0.3, 7.5);
        let lhs = (ln_gamma(z + 1.0).unwrap() - ln_gamma(z).unwrap()).exp();
        assert!((lhs - z).norm() < 1e-12);
        assert!((ln_gamma(c(0.5, 0.0)).unwrap().re - 0.5 * PI.ln()).abs() < 1e-14);
    }

    #[test]
    fn reflection_formula() {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        for z in [c(0.25, 0.0), c(-2.5, 1.0), c(0.7, -4.0)] {
            let lhs = (ln_gamma(z).unwrap() + ln_gamma(1.0 - z).unwrap()).exp();
            let rhs = PI / (z * PI).sin();
            assert!((lhs - rhs).norm() < 1e-11 * rhs.norm(), "{z}");
        }
    }
}
