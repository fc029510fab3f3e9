use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::conductor::{ln_x_d, t_of, T_MIN};
use super::AnalyticError;

/// Trapezoid nodes on the coefficient contour.
pub const CONTOUR_NODES: usize = 128;

/// Taylor coefficients `a_1..a_K` of
/// `G_d(s, tau) = X_d(s - tau) / X_d(s) * T^{-tau} - 1` about `tau = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AfeCoefficients {
    pub d: i64,
    pub s: Complex64,
    pub t_cond: f64,
    /// `a[k - 1] = a_k`.
    pub a: Vec<Complex64>,
    /// Radius of analyticity `|2|d| + 1 - s|`.
    pub radius: f64,
    /// Contour radius actually used.
    pub contour: f64,
}

/// `exp(w) - 1` without cancellation for small `w`.
pub(crate) fn expm1_c(w: Complex64) -> Complex64 {
    let (x, y) = (w.re, w.im);
    let s = (0.5 * y).sin();
    Complex64::new(x.exp_m1() * y.cos() - 2.0 * s * s, x.exp() * y.sin())
}

impl AfeCoefficients {
    /// `G_d(s, tau)` evaluated directly.
    pub fn g_value(&self, tau: Complex64) -> Result<Complex64, AnalyticError> {
        g_value(self.d, self.s, self.t_cond, tau)
    }

    /// `sum_{k <= K} a_k tau^k`.
    pub fn series(&self, tau: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = tau;
        for a in &self.a {
            acc += a * p;
            p *= tau;
        }
        acc
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }
}

fn g_value(d: i64, s: Complex64, t_cond: f64, tau: Complex64) -> Result<Complex64, AnalyticError> {
    let base = ln_x_d(d, s)?.ok_or(AnalyticError::Hypothesis("X_d(s) vanishes"))?;
    let shifted = ln_x_d(d, s - tau)?.ok_or(AnalyticError::Hypothesis("X_d(s - tau) vanishes"))?;
    Ok(expm1_c(shifted - base - tau * t_cond.ln()))
}

/// Coefficients by the trapezoid rule on `|tau| = min(1, R/4)`; requires
/// `-1/2 <= Re s <= 3/2` and `T(d, Im s) >= T(0, 1/2)`.
pub fn afe_coefficients(d: i64, s: Complex64, k: usize) -> Result<AfeCoefficients, AnalyticError> {
    if !(-0.5..=1.5).contains(&s.re) {
        return Err(AnalyticError::Hypothesis("Re(s) must lie in [-1/2, 3/2]"));
    }
    let t_cond = t_of(d, s.im);
    if t_cond < *T_MIN {
        return Err(AnalyticError::Hypothesis("T(d, t) below T(0, 1/2)"));
    }
    coefficients_unchecked(d, s, t_cond, k)
}

pub(crate) fn coefficients_unchecked(
    d: i64,
    s: Complex64,
    t_cond: f64,
    k: usize,
) -> Result<AfeCoefficients, AnalyticError> {
    let radius = (Complex64::new(2.0 * d.unsigned_abs() as f64 + 1.0, 0.0) - s).norm();
    let r = (radius / 4.0).min(1.0);
    let m = CONTOUR_NODES;
    let mut a = vec![Complex64::new(0.0, 0.0); k];
    if k > 0 {
        for j in 0..m {
            let unit = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
            let g = g_value(d, s, t_cond, unit * r)?;
            // tau^{-k} = r^{-k} conj(unit)^k
            let mut p = unit.conj() / r;
            for slot in a.iter_mut() {
                *slot += g * p;
                p *= unit.conj() / r;
            }
        }
        for slot in a.iter_mut() {
            *slot /= m as f64;
        }
    }
    Ok(AfeCoefficients { d, s, t_cond, a, radius, contour: r })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vanishes_at_zero_and_matches_series() {
        let co = afe_coefficients(5, c(0.5, 40.0), 8).unwrap();
        assert_eq!(co.series(c(0.0, 0.0)), c(0.0, 0.0));
        assert!(co.g_value(c(0.0, 0.0)).unwrap().norm() < 1e-15);
        let tau = Complex64::from_polar(co.contour / 8.0, 0.7);
        assert!((co.series(tau) - co.g_value(tau).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn leading_coefficients_on_the_critical_line() {
        let (d, t) = (5i64, 40.0);
        let co = afe_coefficients(d, c(0.5, t), 2).unwrap();
        let z2 = (2.0 * d as f64 + 0.5).powi(2) + t * t;
        assert!(co.a[0].norm() <= 10.0 / co.t_cond);
        assert!((co.a[1] - c(0.0, t / z2)).norm() <= 10.0 / co.t_cond);
    }

    #[test]
    fn hypotheses_enforced() {
        assert!(afe_coefficients(0, c(2.0, 30.0), 2).is_err());
        assert!(afe_coefficients(0, c(0.5, 0.0), 2).is_err());
    }

    #[test]
    fn expm1_small_argument() {
        let w = c(1e-12, -2e-12);
        assert!((expm1_c(w) - w).norm() < 1e-23);
    }
}
