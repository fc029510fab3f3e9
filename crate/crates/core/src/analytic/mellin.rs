use num_complex::Complex64;

use super::quadrature::GlRule;
use super::smoothing::{phi, Smoothing};
use super::AnalyticError;

/// The contour is cut where `y ln b` reaches this; the transform of `Phi`
/// is below `1e-13` there.
const INVERSION_FREQ: f64 = 1000.0;
/// Trapezoid error is about `exp(-2 pi c / step)` from the pole at `z = 0`.
const INVERSION_STEP: f64 = 0.05;

impl Smoothing {
    /// `R(z) = -z^{-1} int_{1/b}^{b} rho'(u) u^z du = (c/z) int_{-1}^{1} Phi(L) b^{zL} dL`.
    ///
    /// Simple pole with residue 1 at `z = 0`; odd in `z`.
    pub fn mellin_r(&self, z: Complex64) -> Result<Complex64, AnalyticError> {
        if z == Complex64::new(0.0, 0.0) {
            return Err(AnalyticError::PoleAtZero);
        }
        let zl = z * self.ln_b();
        let sum: Complex64 = self
            .rule()
            .pairs()
            .map(|(x, w)| (zl * x).exp() * (w * phi(x)))
            .sum();
        Ok(sum * self.c() / z)
    }
}

impl Smoothing {
    /// `rho(u) = (2 pi i)^{-1} int_{(c)} R(z) u^{-z} dz` by the trapezoid rule
    /// on `Re z = c`, using `R(conj z) = conj R(z)` to fold the contour.
    pub fn mellin_inversion(&self, u: f64, c: f64) -> Result<f64, AnalyticError> {
        if !(c > 0.0 && u > 0.0) {
            return Err(AnalyticError::Hypothesis("inversion needs c > 0 and u > 0"));
        }
        // a finer inner rule than the configured one: the kernel oscillates at rate y ln b
        let rule = GlRule::new(32);
        let ln_b = self.ln_b();
        let panels = 64;
        let h = 2.0 / panels as f64;
        let nodes: Vec<(f64, f64)> = (0..panels)
            .flat_map(|p| {
                let m = -1.0 + h * (p as f64 + 0.5);
                rule.pairs().map(move |(x, w)| (m + 0.5 * h * x, 0.5 * h * w)).collect::<Vec<_>>()
            })
            .map(|(x, w)| (x * ln_b, w * phi(x)))
            .collect();
        // walk up the contour by rotating each node's phase, one multiply per step
        let mut cur: Vec<Complex64> = nodes.iter().map(|&(xl, w)| Complex64::new(w * (c * xl).exp(), 0.0)).collect();
        let rot: Vec<Complex64> = nodes.iter().map(|&(xl, _)| Complex64::from_polar(1.0, INVERSION_STEP * xl)).collect();
        let n = (INVERSION_FREQ / ln_b / INVERSION_STEP) as usize;
        let ln_u = u.ln();
        let mut acc = 0.0;
        for j in 0..=n {
            let z = Complex64::new(c, INVERSION_STEP * j as f64);
            let sum: Complex64 = cur.iter().sum();
            let term = (sum * self.c() / z * (-z * ln_u).exp()).re;
            acc += if j == 0 { 0.5 * term } else { term };
            for (v, r) in cur.iter_mut().zip(&rot) {
                *v *= r;
            }
        }
        Ok(acc * INVERSION_STEP / std::f64::consts::PI)
    }
}

#[cfg(test)]
mod tests {
    use super::super::smoothing::SmoothingConfig;
    use super::*;

    #[test]
    fn odd_and_residue_one() {
        let s = Smoothing::new(SmoothingConfig::default()).unwrap();
        let z = Complex64::new(0.7, -3.0);
        assert!((s.mellin_r(-z).unwrap() + s.mellin_r(z).unwrap()).norm() < 1e-13);
        let eps = Complex64::new(1e-7, 0.0);
        assert!(((s.mellin_r(eps).unwrap() * eps) - 1.0).norm() < 1e-12);
        assert_eq!(s.mellin_r(Complex64::new(0.0, 0.0)), Err(AnalyticError::PoleAtZero));
    }

    #[test]
    fn inversion_recovers_rho() {
        let s = Smoothing::new(SmoothingConfig::default()).unwrap();
        for u in [1.0, 0.9, 1.2] {
            let v = s.mellin_inversion(u, 0.5).unwrap();
            assert!((v - s.rho(u)).abs() < 1e-10, "u={u}: {v} vs {}", s.rho(u));
        }
    }
}
