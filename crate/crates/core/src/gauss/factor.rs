use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GaussError, GaussInt, ONE};

/// Largest norm accepted by [`factorize`].
pub const FACTOR_NORM_CAP: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussFactorization {
    pub unit: GaussInt,
    /// Canonical primes with positive exponents, ordered by norm, then re, then im.
    pub factors: Vec<(GaussInt, u32)>,
}

impl GaussFactorization {
    pub fn reconstruct(&self) -> GaussInt {
        self.factors.iter().fold(self.unit, |acc, &(p, e)| acc * p.pow(e))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Factor `n` over Z by trial division; returns `(p, e)` pairs in ascending order.
pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The canonical Gaussian prime of norm `p` for a rational prime `p = 1 mod 4`
/// (or `p = 2`), via a square root of -1 and the Hermite-Serret descent.
pub fn split_prime(p: u64) -> GaussInt {
    if p == 2 {
        return GaussInt::new(1, 1);
    }
    assert!(p % 4 == 1, "{p} does not split in Z[i]");
    let x = (2..p)
        .map(|n| pow_mod(n, (p - 1) / 4, p))
        .find(|&x| mul_mod(x, x, p) == p - 1)
        .expect("a quadratic non-residue exists");
    // Euclid on (p, x) stops at the first remainder below sqrt(p)
    let (mut r0, mut r1) = (p, x.min(p - x));
    while (r1 as u128) * (r1 as u128) > p as u128 {
        (r0, r1) = (r1, r0 % r1);
    }
    let a = r1;
    let b = ((p - a * a) as f64).sqrt().round() as u64;
    assert_eq!(a * a + b * b, p, "descent failed for {p}");
    GaussInt::new(a as i64, b as i64).canonical()
}

pub fn factorize(alpha: GaussInt) -> Result<GaussFactorization, GaussError> {
    if alpha.is_zero() {
        return Err(GaussError::ZeroInput);
    }
    let n = alpha.norm();
    if n > FACTOR_NORM_CAP {
        return Err(GaussError::FactorCap { norm: n, cap: FACTOR_NORM_CAP });
    }
    let mut rest = alpha;
    let mut factors = Vec::new();
    for (p, _) in factor_u64(n) {
        let candidates = match p % 4 {
            2 => vec![GaussInt::new(1, 1)],
            3 => vec![GaussInt::new(p as i64, 0)],
            _ => {
                let pi = split_prime(p);
                vec![pi, pi.conj().canonical()]
            }
        };
        for pi in candidates {
            let mut e = 0;
            while rest.divisible_by(pi) {
                rest = rest.exact_div(pi);
                e += 1;
            }
            if e > 0 {
                factors.push((pi, e));
            }
        }
    }
    debug_assert!(rest.is_unit());
    factors.sort_by(|a, b| a.0.divisor_cmp(&b.0));
    Ok(GaussFactorization { unit: rest, factors })
}

/// One canonical generator per ideal divisor of `(alpha)`, ordered by norm,
/// then re, then im.
pub fn divisors_ideal(alpha: GaussInt) -> Result<Vec<GaussInt>, GaussError> {
    let f = factorize(alpha)?;
    let mut divs = vec![ONE];
    for &(p, e) in &f.factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut q = *d;
            for _ in 0..=e {
                next.push(q.canonical());
                q = q * p;
            }
        }
        divs = next;
    }
    divs.sort_by(|a, b| a.divisor_cmp(b));
    Ok(divs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicativeSuite {
    pub phi: u64,
    pub mu: i8,
    pub omega: u32,
    /// `tau[j]` for `j = 1..=4`.
    pub tau: BTreeMap<u32, u64>,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of ordered element tuples `(d_1, .., d_j)` with product `alpha`.
pub fn tau_of(f: &GaussFactorization, j: u32) -> u64 {
    assert!(j >= 1);
    let ideal_tuples: u64 = f
        .factors
        .iter()
        .map(|&(_, e)| binomial(e as u64 + j as u64 - 1, j as u64 - 1))
        .product();
    4u64.pow(j - 1) * ideal_tuples
}

pub fn multiplicative_suite(gamma: GaussInt) -> Result<MultiplicativeSuite, GaussError> {
    let f = factorize(gamma)?;
    let phi = f
        .factors
        .iter()
        .map(|&(p, e)| {
            let q = p.norm();
            q.pow(e - 1) * (q - 1)
        })
        .product();
    let mu = if f.factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.factors.len() % 2 == 0 {
        1
    } else {
        -1
    };
    let tau = (1..=4).map(|j| (j, tau_of(&f, j))).collect();
    Ok(MultiplicativeSuite { phi, mu, omega: f.factors.len() as u32, tau })
}

/// Möbius function of Z[i] from a factorization.
pub(crate) fn mobius(f: &GaussFactorization) -> i64 {
    if f.factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}
