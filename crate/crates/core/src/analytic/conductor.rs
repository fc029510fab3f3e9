use std::f64::consts::PI;
use std::sync::LazyLock;

use num_complex::Complex64;

use super::gamma::{digamma, is_nonpositive_integer, ln_gamma, EULER_GAMMA};
use super::AnalyticError;

/// `C_0 = 4 pi e^gamma`.
pub fn c0() -> f64 {
    4.0 * PI * EULER_GAMMA.exp()
}

/// `T(0, 1/2)`, the smallest conductor for which the coefficient expansion is admissible.
pub static T_MIN: LazyLock<f64> = LazyLock::new(|| t_of(0, 0.5));

/// `ln X_d(s)` where `X_d(s) = pi^{2s-1} Gamma(2|d|+1-s) / Gamma(2|d|+s)`.
///
/// Returns `Ok(None)` at zeros of `1/Gamma(2|d|+s)`, where `X_d` vanishes.
pub fn ln_x_d(d: i64, s: Complex64) -> Result<Option<Complex64>, AnalyticError> {
    let k = 2.0 * d.unsigned_abs() as f64;
    let top = k + 1.0 - s;
    if is_nonpositive_integer(top) {
        return Err(AnalyticError::Pole { re: s.re, im: s.im });
    }
    let bottom = k + s;
    if is_nonpositive_integer(bottom) {
        return Ok(None);
    }
    Ok(Some((2.0 * s - 1.0) * PI.ln() + ln_gamma(top)? - ln_gamma(bottom)?))
}

pub fn x_d(d: i64, s: Complex64) -> Result<Complex64, AnalyticError> {
    Ok(ln_x_d(d, s)?.map_or(Complex64::new(0.0, 0.0), |l| l.exp()))
}

/// Analytic conductor `T(d, t) = exp(2 Re psi(2|d| + 1/2 + i|t|) - 2 ln pi)`.
pub fn t_of(d: i64, t: f64) -> f64 {
    let z = Complex64::new(2.0 * d.unsigned_abs() as f64 + 0.5, t.abs());
    let psi = digamma(z).expect("Re z >= 1/2 is never a pole");
    (2.0 * psi.re - 2.0 * PI.ln()).exp()
}

/// `|X_d(s)| / T^{1/2 - sigma}`; bounded above and below for large `T`.
pub fn x_d_bound_ratio(d: i64, s: Complex64) -> Result<f64, AnalyticError> {
    let t = t_of(d, s.im);
    Ok(x_d(d, s)?.norm() / t.powf(0.5 - s.re))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn x_examples() {
        assert!((x_d(0, c(0.5, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        let v = x_d(0, c(-0.5, 0.0)).unwrap();
        assert!((v.re + 1.0 / (4.0 * PI * PI)).abs() < 1e-14 && v.im.abs() < 1e-15);
        for d in [0, 3, -7, 40] {
            assert!((x_d(d, c(0.5, 17.3)).unwrap().norm() - 1.0).abs() < 1e-12);
        }
        assert_eq!(x_d(0, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!(x_d(0, c(1.0, 0.0)).is_err());
        assert!(x_d(1, c(4.0, 0.0)).is_err());
    }

    #[test]
    fn x_is_finite_for_large_d() {
        let v = x_d(10_000, c(0.3, 5.0)).unwrap();
        assert!(v.norm().is_finite() && v.norm() > 0.0);
    }

    #[test]
    fn conductor_examples() {
        let t00 = t_of(0, 0.0);
        assert!((t00 - c0().powi(-2)).abs() < 1e-15);
        assert!((t00 - 1.9962e-3).abs() < 1e-7);
        // psi(5/2) = psi(1/2) + 2 + 2/3
        let want = (16.0f64 / 3.0).exp() * c0().powi(-2);
        assert!((t_of(1, 0.0) - want).abs() < 1e-13);
        assert!((t_of(1, 0.0) - 0.413480).abs() < 1e-6);
        assert_eq!(t_of(0, 7.0), t_of(0, -7.0));
        assert_eq!(t_of(3, 2.0), t_of(-3, 2.0));
        assert!(*T_MIN < 1.0 / (2.0 * c0()));
    }
}
