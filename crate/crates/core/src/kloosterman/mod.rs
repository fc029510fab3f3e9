//! Kloosterman sums over `Z[i]` with exact phase numerators, the Ramanujan
//! closed forms, bound checks, and Poisson-summation harnesses.

mod fourier;
mod poisson;

pub use fourier::{fourier_hat, fourier_hat_analytic, RadialHat, TestFunction};
pub use poisson::{poisson_verify, PoissonCheck, PoissonVariant};

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::{
    divisors_ideal, factorize, gcd, inv_mod, mobius, multiplicative_suite, reduce_mod, tau_of,
    GaussError, GaussInt, ResidueSystem,
};

/// Default largest number of terms for a direct evaluation.
pub const DIRECT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KloostermanError {
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error("norm {norm} exceeds the direct-evaluation cap {cap}")]
    CapExceeded { norm: u64, cap: u64 },
    #[error("unsupported test function: {0}")]
    UnsupportedTestFunction(String),
    #[error(transparent)]
    Gauss(#[from] GaussError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KloostermanQuery {
    pub alpha: GaussInt,
    pub beta: GaussInt,
    pub gamma: GaussInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Ramanujan,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KloostermanResult {
    pub value: f64,
    pub imag_leak: f64,
    pub method: Method,
    pub terms: u64,
}

/// Integer `m` in `(-n/2, n/2]` congruent to `x` mod `n`.
fn centered(x: i128, n: i128) -> i128 {
    let r = x.rem_euclid(n);
    if 2 * r > n {
        r - n
    } else {
        r
    }
}

/// `Re(z * conj(gamma))`, the numerator of `Re(z / gamma)` over `norm(gamma)`.
pub(crate) fn phase_numerator(z: GaussInt, gamma: GaussInt) -> i128 {
    z.re as i128 * gamma.re as i128 + z.im as i128 * gamma.im as i128
}

/// `e(num / n)` with the numerator reduced into `(-n/2, n/2]` first.
pub(crate) fn e_frac(num: i128, n: i128) -> (f64, f64) {
    let x = TAU * centered(num, n) as f64 / n as f64;
    (x.cos(), x.sin())
}

/// Reduced residues modulo `gamma` paired with their inverses.
pub fn reduced_with_inverses(gamma: GaussInt) -> Result<Vec<(GaussInt, GaussInt)>, KloostermanError> {
    let sys = ResidueSystem::new(gamma)?;
    sys.reduced_residues()
        .map(|d| Ok((d, inv_mod(d, gamma)?)))
        .collect()
}

pub fn kloosterman_direct(q: KloostermanQuery) -> Result<KloostermanResult, KloostermanError> {
    kloosterman_direct_capped(q, DIRECT_CAP)
}

/// `S(alpha, beta; gamma) = sum_{delta} e(Re((alpha delta* + beta delta) / gamma))`.
pub fn kloosterman_direct_capped(q: KloostermanQuery, cap: u64) -> Result<KloostermanResult, KloostermanError> {
    if q.gamma.is_zero() {
        return Err(KloostermanError::ZeroModulus);
    }
    let n = q.gamma.norm();
    if n > cap {
        return Err(KloostermanError::CapExceeded { norm: n, cap });
    }
    let pairs = reduced_with_inverses(q.gamma)?;
    Ok(sum_over(q, &pairs))
}

/// Direct sum over a precomputed reduced-residue table for `q.gamma`.
pub fn sum_over(q: KloostermanQuery, pairs: &[(GaussInt, GaussInt)]) -> KloostermanResult {
    let alpha = reduce_mod(q.alpha, q.gamma);
    let beta = reduce_mod(q.beta, q.gamma);
    let n = q.gamma.norm() as i128;
    let (mut re, mut im) = (0.0, 0.0);
    for &(d, dinv) in pairs {
        let num = phase_numerator(alpha * dinv + beta * d, q.gamma);
        let (c, s) = e_frac(num, n);
        re += c;
        im += s;
    }
    KloostermanResult { value: re, imag_leak: im.abs(), method: Method::Direct, terms: pairs.len() as u64 }
}

/// Ramanujan evaluation (the case `gamma | beta`):
/// `sum over ideal divisors nu of (alpha, gamma) of mu(gamma/nu) norm(nu)`.
pub fn ramanujan_eval(alpha: GaussInt, gamma: GaussInt) -> Result<KloostermanResult, KloostermanError> {
    if gamma.is_zero() {
        return Err(KloostermanError::ZeroModulus);
    }
    let g = gcd(alpha, gamma)?;
    let divs = divisors_ideal(g)?;
    let mut value = 0i64;
    for nu in &divs {
        let m = mobius(&factorize(gamma.exact_div(*nu))?);
        value += m * nu.norm() as i64;
    }
    Ok(KloostermanResult {
        value: value as f64,
        imag_leak: 0.0,
        method: Method::Ramanujan,
        terms: divs.len() as u64,
    })
}

/// The two product forms of the Ramanujan sum, as exact rationals `(num, den)`:
/// `mu(gamma/g) N(g) prod_{p | g, p not| gamma/g} (1 - 1/N(p))` and
/// `mu(gamma/g) phi(gamma) / phi(gamma/g)` with `g = (alpha, gamma)`.
pub fn ramanujan_product_forms(alpha: GaussInt, gamma: GaussInt) -> Result<[(i64, i64); 2], KloostermanError> {
    if gamma.is_zero() {
        return Err(KloostermanError::ZeroModulus);
    }
    let g = gcd(alpha, gamma)?;
    let cofactor = gamma.exact_div(g);
    let mu = mobius(&factorize(cofactor)?);
    let (mut num, mut den) = (mu * g.norm() as i64, 1i64);
    for (p, _) in factorize(g)?.factors {
        if !cofactor.divisible_by(p) {
            let q = p.norm() as i64;
            num *= q - 1;
            den *= q;
        }
    }
    let phi_g = multiplicative_suite(gamma)?.phi as i64;
    let phi_c = multiplicative_suite(cofactor)?.phi as i64;
    Ok([(num, den), (mu * phi_g, phi_c)])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub trivial_ok: bool,
    pub weil_ok: bool,
    pub ratio_weil: f64,
}

/// `8 tau_2(gamma)^2 N((alpha, beta, gamma)) N(gamma)`.
pub fn weil_bound(q: KloostermanQuery) -> Result<f64, KloostermanError> {
    let f = factorize(q.gamma)?;
    let tau2 = tau_of(&f, 2) as f64;
    let g = gcd(gcd(q.alpha, q.beta).unwrap_or(crate::gauss::ZERO), q.gamma)?;
    Ok(8.0 * tau2 * tau2 * g.norm() as f64 * q.gamma.norm() as f64)
}

pub fn bound_check(q: KloostermanQuery, r: &KloostermanResult) -> Result<BoundCheck, KloostermanError> {
    let phi = multiplicative_suite(q.gamma)?.phi as f64;
    let slack = 1e-9 * phi.max(1.0);
    let weil = weil_bound(q)?;
    let v2 = r.value * r.value;
    Ok(BoundCheck {
        trivial_ok: r.value.abs() <= phi + slack,
        weil_ok: v2 <= weil * (1.0 + 1e-12) + slack,
        ratio_weil: v2 / weil,
    })
}

/// One row of a corpus sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusRow {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub value: f64,
    pub weil_ratio: f64,
}

fn pair_str(z: GaussInt) -> String {
    format!("{},{}", z.re, z.im)
}

impl CorpusRow {
    pub fn new(q: KloostermanQuery, value: f64, weil_ratio: f64) -> Self {
        CorpusRow {
            alpha: pair_str(q.alpha),
            beta: pair_str(q.beta),
            gamma: pair_str(q.gamma),
            value,
            weil_ratio,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    fn q(a: GaussInt, b: GaussInt, c: GaussInt) -> KloostermanQuery {
        KloostermanQuery { alpha: a, beta: b, gamma: c }
    }

    #[test]
    fn direct_examples() {
        let r = kloosterman_direct(q(g(1, 0), g(1, 0), g(1, 1))).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12 && r.terms == 1);
        let r = kloosterman_direct(q(g(0, 0), g(0, 0), g(3, 0))).unwrap();
        assert_eq!(r.value, 8.0);
        assert!(matches!(
            kloosterman_direct(q(g(1, 0), g(1, 0), g(0, 0))),
            Err(KloostermanError::ZeroModulus)
        ));
        assert!(matches!(
            kloosterman_direct_capped(q(g(1, 0), g(1, 0), g(30, 0)), 100),
            Err(KloostermanError::CapExceeded { .. })
        ));
    }

    #[test]
    fn unit_modulus_is_one() {
        let r = kloosterman_direct(q(g(5, 2), g(-3, 1), g(0, 1))).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_eval(g(1, 0), g(3, 0)).unwrap().value, -1.0);
        let direct = kloosterman_direct(q(g(1, 0), g(0, 0), g(3, 0))).unwrap();
        assert!((direct.value + 1.0).abs() < 1e-12);
        assert_eq!(ramanujan_eval(g(2, 3), g(2, 3)).unwrap().value, 12.0);
        assert_eq!(ramanujan_eval(g(1, 0), g(2, 0)).unwrap().value, 0.0);
        let direct = kloosterman_direct(q(g(1, 0), g(0, 0), g(2, 0))).unwrap();
        assert!(direct.value.abs() < 1e-12);
    }

    #[test]
    fn product_forms_agree() {
        for (a, c) in [(g(1, 0), g(3, 0)), (g(2, 0), g(4, 0)), (g(5, 0), g(10, 5)), (g(0, 0), g(6, 2))] {
            let s = ramanujan_eval(a, c).unwrap().value;
            for (num, den) in ramanujan_product_forms(a, c).unwrap() {
                assert_eq!(s * den as f64, num as f64, "alpha={a} gamma={c}");
            }
        }
    }

    #[test]
    fn bounds_on_a_small_example() {
        let qq = q(g(2, 1), g(1, -3), g(5, 2));
        let r = kloosterman_direct(qq).unwrap();
        let b = bound_check(qq, &r).unwrap();
        assert!(b.trivial_ok && b.weil_ok);
        assert!(b.ratio_weil >= 0.0 && b.ratio_weil <= 1.0);
    }
}
