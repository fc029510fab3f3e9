//! Poisson summation over `Z[i]`: plain with a twist, on a residue class,
//! and with the Kloosterman twist.

use std::collections::HashMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fourier::{fourier_hat, fourier_hat_analytic, TestFunction};
use super::{e_frac, phase_numerator, reduced_with_inverses, sum_over, KloostermanError, KloostermanQuery};
use crate::gauss::{gcd, inv_mod, reduce_mod, GaussInt};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum PoissonVariant {
    /// `sum f(nu) e(Re(tau nu)) = sum f^(xi - tau)`.
    Twisted { tau_re: f64, tau_im: f64 },
    /// `sum_{nu = alpha mod gamma} f(nu) = N(gamma)^-1 sum f^(xi/gamma) e(Re(alpha xi / gamma))`.
    Progression { alpha: GaussInt, gamma: GaussInt },
    /// `sum_{(nu, gamma) = 1} f(nu) e(Re(alpha nu* / gamma)) = N(gamma)^-1 sum f^(xi/gamma) S(alpha, xi; gamma)`.
    Kloosterman { alpha: GaussInt, gamma: GaussInt },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoissonCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

fn disc(center: Complex64, radius: f64) -> impl Iterator<Item = GaussInt> {
    let x0 = (center.re - radius).floor() as i64;
    let x1 = (center.re + radius).ceil() as i64;
    let y0 = (center.im - radius).floor() as i64;
    let y1 = (center.im + radius).ceil() as i64;
    (x0..=x1)
        .flat_map(move |x| (y0..=y1).map(move |y| GaussInt::new(x, y)))
        .filter(move |z| (z.to_complex() - center).norm() <= radius)
}

fn hat(f: &TestFunction, w: Complex64) -> Result<Complex64, KloostermanError> {
    match fourier_hat_analytic(f, w) {
        Ok(v) => Ok(v),
        Err(KloostermanError::UnsupportedTestFunction(_)) => fourier_hat(f, w),
        Err(e) => Err(e),
    }
}

fn cis_frac(num: i128, n: i128) -> Complex64 {
    let (c, s) = e_frac(num, n);
    Complex64::new(c, s)
}

pub fn poisson_verify(f: &TestFunction, variant: PoissonVariant) -> Result<PoissonCheck, KloostermanError> {
    f.validate()?;
    let r = f.support().1;
    let r_hat = f.hat_support()?;
    let zero = Complex64::new(0.0, 0.0);
    let (mut lhs, mut rhs) = (zero, zero);
    let (mut lhs_terms, mut rhs_terms) = (0usize, 0usize);
    match variant {
        PoissonVariant::Twisted { tau_re, tau_im } => {
            let tau = Complex64::new(tau_re, tau_im);
            for nu in disc(zero, r) {
                let z = nu.to_complex();
                lhs += f.eval(z) * Complex64::from_polar(1.0, TAU * (tau * z).re);
                lhs_terms += 1;
            }
            for xi in disc(tau, r_hat) {
                rhs += hat(f, xi.to_complex() - tau)?;
                rhs_terms += 1;
            }
        }
        PoissonVariant::Progression { alpha, gamma } => {
            if gamma.is_zero() {
                return Err(KloostermanError::ZeroModulus);
            }
            let n = gamma.norm() as i128;
            for nu in disc(zero, r).filter(|nu| (*nu - alpha).divisible_by(gamma)) {
                lhs += f.eval(nu.to_complex());
                lhs_terms += 1;
            }
            let g = gamma.to_complex();
            for xi in disc(zero, r_hat * g.norm()) {
                let phase = cis_frac(phase_numerator(alpha * xi, gamma), n);
                rhs += hat(f, xi.to_complex() / g)? * phase;
                rhs_terms += 1;
            }
            rhs /= n as f64;
        }
        PoissonVariant::Kloosterman { alpha, gamma } => {
            if gamma.is_zero() {
                return Err(KloostermanError::ZeroModulus);
            }
            let n = gamma.norm() as i128;
            for nu in disc(zero, r) {
                if !gcd(nu, gamma)?.is_unit() {
                    continue;
                }
                let inv = inv_mod(nu, gamma)?;
                lhs += f.eval(nu.to_complex()) * cis_frac(phase_numerator(alpha * inv, gamma), n);
                lhs_terms += 1;
            }
            let pairs = reduced_with_inverses(gamma)?;
            let mut memo: HashMap<GaussInt, f64> = HashMap::new();
            let g = gamma.to_complex();
            for xi in disc(zero, r_hat * g.norm()) {
                let key = reduce_mod(xi, gamma);
                let s = *memo
                    .entry(key)
                    .or_insert_with(|| sum_over(KloostermanQuery { alpha, beta: key, gamma }, &pairs).value);
                rhs += hat(f, xi.to_complex() / g)? * s;
                rhs_terms += 1;
            }
            rhs /= n as f64;
        }
    }
    let abs_err = (lhs - rhs).norm();
    Ok(PoissonCheck {
        lhs,
        rhs,
        abs_err,
        rel_err: abs_err / lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE),
        lhs_terms,
        rhs_terms,
    })
}
