//! Grossencharacter values, the Dirichlet coefficients of the Hecke zeta
//! function `zeta(s, lambda^d) = (1/4) sum_{alpha != 0} Lambda^d(alpha) |alpha|^{-2s}`,
//! and partial-sum / Euler-product evaluators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::{factor_u64, split_prime, GaussInt};

/// Largest `N` accepted by [`coeff_table`].
pub const COEFF_TABLE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeckeError {
    #[error("zero has no character value")]
    ZeroInput,
    #[error("table size {n} exceeds the cap {cap}")]
    ResourceCap { n: u64, cap: u64 },
    #[error("Euler product needs Re(s) > 1, got {0}")]
    Domain(f64),
    #[error("coefficient key {key} has norm outside (0, {bound}]")]
    KeyOutOfRange { key: GaussInt, bound: u64 },
    #[error("malformed coefficient map: {0}")]
    Format(String),
}

/// Argument of the canonical associate, in `[0, pi/2)`.
fn canonical_arg(alpha: GaussInt) -> f64 {
    let c = alpha.canonical();
    (c.im as f64).atan2(c.re as f64)
}

/// `cis(4 d theta)` with the angle reduced mod `2 pi` before the trig call.
fn cis4(d: i64, theta: f64) -> Complex64 {
    let phi = (4.0 * theta * d as f64).rem_euclid(2.0 * PI);
    Complex64::new(phi.cos(), phi.sin())
}

/// `Lambda^d(alpha) = (alpha/|alpha|)^{4d}`.
pub fn char_value(d: i64, alpha: GaussInt) -> Result<Complex64, HeckeError> {
    if alpha.is_zero() {
        return Err(HeckeError::ZeroInput);
    }
    Ok(cis4(d, canonical_arg(alpha)))
}

/// Sum over ideals of norm `p^e` (p split) of `lambda^d`: `sum_k cos((2k-e) 4 d theta)`.
fn split_local(d: i64, theta: f64, e: u32) -> f64 {
    (0..=e as i64).map(|k| cis4(d * (2 * k - e as i64), theta).re).sum()
}

/// Local factor at the rational prime `p` with exponent `e`.
fn local_factor(d: i64, p: u64, e: u32, theta: impl FnOnce(u64) -> f64) -> f64 {
    match p % 4 {
        2 => {
            if d.rem_euclid(2) == 1 && e % 2 == 1 {
                -1.0
            } else {
                1.0
            }
        }
        3 => {
            if e % 2 == 0 {
                1.0
            } else {
                0.0
            }
        }
        _ => split_local(d, theta(p), e),
    }
}

fn split_theta(p: u64) -> f64 {
    canonical_arg(split_prime(p))
}

/// `delta(Lambda^d, n) = (1/4) sum_{norm(alpha) = n} Lambda^d(alpha)`, assembled
/// from the factorization of `n` (one ideal per unit orbit).
pub fn delta_coeff(d: i64, n: u64) -> f64 {
    assert!(n >= 1);
    factor_u64(n)
        .into_iter()
        .map(|(p, e)| local_factor(d, p, e, split_theta))
        .product()
}

/// Oracle: the same coefficient by scanning lattice points of norm `n`.
/// Returned as a complex number so the imaginary residue is observable.
pub fn delta_lattice(d: i64, n: u64) -> Complex64 {
    let r = (n as f64).sqrt() as i64 + 1;
    let mut acc = Complex64::new(0.0, 0.0);
    for a in -r..=r {
        let rest = n as i64 - a * a;
        if rest < 0 {
            continue;
        }
        let b = (rest as f64).sqrt().round() as i64;
        if b * b != rest {
            continue;
        }
        let ys: &[i64] = if b == 0 { &[0] } else { &[b, -b] };
        for &y in ys {
            acc += cis4(d, (y as f64).atan2(a as f64));
        }
    }
    acc / 4.0
}

/// `delta(Lambda^d, n)` for `n = 1..=up_to`; `values[0]` is unused and zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub d: i64,
    pub up_to: u64,
    pub values: Vec<f64>,
}

impl CoeffTable {
    pub fn get(&self, n: u64) -> f64 {
        self.values[n as usize]
    }
}

/// Smallest-prime-factor table for `0..=n`.
fn spf_table(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

pub fn coeff_table(d: i64, n: u64) -> Result<CoeffTable, HeckeError> {
    coeff_table_capped(d, n, COEFF_TABLE_CAP)
}

/// Coefficient table from a smallest-prime-factor sieve and one Gaussian
/// prime angle per split rational prime. Entries are computed independently,
/// so the result is identical for every thread count.
pub fn coeff_table_capped(d: i64, n: u64, cap: u64) -> Result<CoeffTable, HeckeError> {
    if n > cap {
        return Err(HeckeError::ResourceCap { n, cap });
    }
    let n_us = n as usize;
    let spf = spf_table(n_us);
    let mut theta = vec![0.0f64; n_us + 1];
    theta
        .par_iter_mut()
        .enumerate()
        .filter(|(p, _)| *p >= 5 && p % 4 == 1 && spf[*p] as usize == *p)
        .for_each(|(p, t)| *t = split_theta(p as u64));
    let mut values = vec![0.0f64; n_us + 1];
    values.par_iter_mut().enumerate().skip(1).for_each(|(i, v)| {
        let mut m = i;
        let mut acc = 1.0;
        while m > 1 {
            let p = spf[m] as usize;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            acc *= local_factor(d, p as u64, e, |p| theta[p as usize]);
        }
        *v = acc;
    });
    Ok(CoeffTable { d, up_to: n, values })
}

/// Key wrapper ordering Gaussian integers by norm, then re descending, then im.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Key(GaussInt);

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.enumeration_cmp(&other.0)
    }
}

/// Finite map `A: Z[i] - {0} -> C` with every key of norm at most `norm_bound`.
/// Keys are not canonicalized; `A(mu)` and `A(i mu)` are independent.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoeffMap {
    norm_bound: u64,
    entries: BTreeMap<Key, Complex64>,
}

#[derive(Serialize, Deserialize)]
struct CoeffRecord {
    re: i64,
    im: i64,
    a_re: f64,
    a_im: f64,
}

impl Serialize for CoeffMap {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(
            self.iter().map(|(k, v)| CoeffRecord { re: k.re, im: k.im, a_re: v.re, a_im: v.im }),
        )
    }
}

impl<'de> Deserialize<'de> for CoeffMap {
    fn deserialize<De: serde::Deserializer<'de>>(de: De) -> Result<Self, De::Error> {
        let recs = Vec::<CoeffRecord>::deserialize(de)?;
        CoeffMap::from_records(recs, None).map_err(serde::de::Error::custom)
    }
}

impl CoeffMap {
    pub fn new(norm_bound: u64) -> Self {
        CoeffMap { norm_bound, entries: BTreeMap::new() }
    }

    /// The indicator of `mu = 1`.
    pub fn unit_indicator() -> Self {
        let mut a = CoeffMap::new(1);
        a.insert(GaussInt::new(1, 0), Complex64::new(1.0, 0.0)).unwrap();
        a
    }

    pub fn norm_bound(&self) -> u64 {
        self.norm_bound
    }

    /// Entries with `norm <= m`, under the bound `m`.
    pub fn restricted(&self, m: u64) -> Self {
        CoeffMap {
            norm_bound: m,
            entries: self.entries.iter().filter(|(k, _)| k.0.norm() <= m).map(|(k, v)| (*k, *v)).collect(),
        }
    }

    pub fn insert(&mut self, key: GaussInt, value: Complex64) -> Result<(), HeckeError> {
        let n = key.norm();
        if n == 0 || n > self.norm_bound {
            return Err(HeckeError::KeyOutOfRange { key, bound: self.norm_bound });
        }
        self.entries.insert(Key(key), value);
        Ok(())
    }

    pub fn get(&self, key: GaussInt) -> Complex64 {
        self.entries.get(&Key(key)).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in norm order.
    pub fn iter(&self) -> impl Iterator<Item = (GaussInt, Complex64)> + '_ {
        self.entries.iter().map(|(k, v)| (k.0, *v))
    }

    pub fn l2_squared(&self) -> f64 {
        self.entries.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn max_abs_squared(&self) -> f64 {
        self.entries.values().map(|a| a.norm_sqr()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        let recs: Vec<CoeffRecord> = self
            .iter()
            .map(|(k, v)| CoeffRecord { re: k.re, im: k.im, a_re: v.re, a_im: v.im })
            .collect();
        serde_json::to_string(&recs).expect("plain records serialize")
    }

    /// Parses `[{re, im, a_re, a_im}, ..]`; the norm bound is the largest key norm
    /// unless a larger one is given.
    pub fn from_json(s: &str, norm_bound: Option<u64>) -> Result<Self, HeckeError> {
        let recs: Vec<CoeffRecord> =
            serde_json::from_str(s).map_err(|e| HeckeError::Format(e.to_string()))?;
        Self::from_records(recs, norm_bound)
    }

    fn from_records(recs: Vec<CoeffRecord>, norm_bound: Option<u64>) -> Result<Self, HeckeError> {
        let max = recs
            .iter()
            .map(|r| GaussInt::new(r.re, r.im).norm())
            .max()
            .unwrap_or(1);
        let mut a = CoeffMap::new(norm_bound.unwrap_or(max).max(1));
        for r in recs {
            a.insert(GaussInt::new(r.re, r.im), Complex64::new(r.a_re, r.a_im))?;
        }
        Ok(a)
    }
}

/// `norm^{-s}` as `exp(-s ln norm)`.
pub fn norm_pow(n: u64, s: Complex64) -> Complex64 {
    (-s * (n as f64).ln()).exp()
}

/// `P(A; s, lambda^d) = sum A(mu) Lambda^d(mu) norm(mu)^{-s}`, summed in norm order.
pub fn dirichlet_poly(a: &CoeffMap, s: Complex64, d: i64) -> Complex64 {
    a.iter()
        .map(|(mu, v)| v * cis4(d, canonical_arg(mu)) * norm_pow(mu.norm(), s))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartialSum {
    pub value: Complex64,
    /// Upper bound on the modulus of the omitted tail; infinite for `Re(s) <= 1`.
    pub tail_bound: f64,
}

/// Tail bound from partial summation against the circle-problem majorant
/// `#{0 < |z|^2 <= x} <= pi (x + sqrt(2 x) + 1/2)`.
pub fn tail_bound(sigma: f64, n: u64) -> f64 {
    if sigma <= 1.0 {
        return f64::INFINITY;
    }
    let nf = n as f64;
    FRAC_PI_4
        * sigma
        * (nf.powf(1.0 - sigma) / (sigma - 1.0)
            + std::f64::consts::SQRT_2 * nf.powf(0.5 - sigma) / (sigma - 0.5)
            + 0.5 * nf.powf(-sigma) / sigma)
}

pub fn partial_zeta(s: Complex64, d: i64, n: u64) -> Result<PartialSum, HeckeError> {
    let table = coeff_table(d, n)?;
    Ok(partial_zeta_with(&table, s))
}

pub fn partial_zeta_with(table: &CoeffTable, s: Complex64) -> PartialSum {
    let value = (1..=table.up_to)
        .filter(|&k| table.get(k) != 0.0)
        .map(|k| table.get(k) * norm_pow(k, s))
        .sum();
    PartialSum { value, tail_bound: tail_bound(s.re, table.up_to) }
}

/// Product over prime ideals of norm at most `norm_bound` of `(1 - lambda^d(p) Np^{-s})^{-1}`.
pub fn euler_product_partial(s: Complex64, d: i64, norm_bound: u64) -> Result<Complex64, HeckeError> {
    if s.re <= 1.0 {
        return Err(HeckeError::Domain(s.re));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut acc = one;
    let spf = spf_table(norm_bound as usize);
    for p in 2..=norm_bound {
        if spf[p as usize] as u64 != p {
            continue;
        }
        match p % 4 {
            2 => {
                let lam = if d.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
                acc /= one - lam * norm_pow(2, s);
            }
            3 => {
                if p * p <= norm_bound {
                    acc /= one - norm_pow(p * p, s);
                }
            }
            _ => {
                let th = split_theta(p);
                let x = norm_pow(p, s);
                acc /= one - cis4(d, th) * x;
                acc /= one - cis4(-d, th) * x;
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn character_examples() {
        assert!((char_value(7, g(1, 0)).unwrap() - c(1.0)).norm() < 1e-15);
        assert!((char_value(1, g(1, 1)).unwrap() - c(-1.0)).norm() < 1e-15);
        assert!((char_value(2, g(1, 1)).unwrap() - c(1.0)).norm() < 1e-15);
        assert_eq!(char_value(1, g(0, 0)), Err(HeckeError::ZeroInput));
        for u in crate::gauss::UNITS {
            let z = g(3, 7);
            assert!((char_value(3, u * z).unwrap() - char_value(3, z).unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_coeff(0, 5), 2.0);
        assert_eq!(delta_coeff(4, 3), 0.0);
        assert!((delta_coeff(1, 5) + 0.56).abs() < 1e-14);
        assert!((delta_lattice(1, 5).re + 0.56).abs() < 1e-14);
        assert_eq!(delta_coeff(3, 2), -1.0);
        assert_eq!(delta_coeff(-3, 2), -1.0);
        assert_eq!(delta_coeff(4, 2), 1.0);
    }

    #[test]
    fn table_examples() {
        let t = coeff_table(0, 10).unwrap();
        assert_eq!(&t.values[1..], &[1.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 1.0, 1.0, 2.0]);
        let t = coeff_table(1, 2).unwrap();
        assert_eq!(&t.values[1..], &[1.0, -1.0]);
        assert!(matches!(coeff_table_capped(0, 11, 10), Err(HeckeError::ResourceCap { .. })));
    }

    #[test]
    fn dirichlet_poly_examples() {
        let s = Complex64::new(0.3, 2.0);
        assert!((dirichlet_poly(&CoeffMap::unit_indicator(), s, 5) - c(1.0)).norm() < 1e-15);
        assert_eq!(dirichlet_poly(&CoeffMap::new(10), s, 5), c(0.0));
        let mut a = CoeffMap::new(2);
        a.insert(g(1, 1), c(1.0)).unwrap();
        assert!((dirichlet_poly(&a, c(0.0), 1) - c(-1.0)).norm() < 1e-15);
        assert!(a.insert(g(2, 0), c(1.0)).is_err());
    }

    #[test]
    fn coeff_map_json_roundtrip() {
        let mut a = CoeffMap::new(5);
        a.insert(g(2, -1), Complex64::new(0.5, -2.0)).unwrap();
        a.insert(g(1, 0), c(1.0)).unwrap();
        let s = a.to_json();
        assert!(s.starts_with(r#"[{"re":1,"im":0,"a_re":1.0,"a_im":0.0}"#));
        let b = CoeffMap::from_json(&s, Some(5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn partial_sums() {
        let s2 = c(2.0);
        assert_eq!(partial_zeta(s2, 3, 1).unwrap().value, c(1.0));
        assert!((partial_zeta(s2, 1, 2).unwrap().value - c(0.75)).norm() < 1e-15);
        assert!(partial_zeta(c(0.5), 0, 10).unwrap().tail_bound.is_infinite());
        assert_eq!(euler_product_partial(s2, 0, 1).unwrap(), c(1.0));
        assert!(euler_product_partial(c(1.0), 0, 10).is_err());
    }
}
