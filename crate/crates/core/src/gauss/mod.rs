//! Exact arithmetic on the Gaussian integers `Z[i]`.
//!
//! Components are `i64`; every product that could leave that range is formed
//! in `i128` and checked on the way back, so arithmetic is exact or panics.

mod enumerate;
mod factor;
mod residue;

pub use enumerate::{enumerate_by_norm, lattice_count_by_norm};
pub use factor::{
    divisors_ideal, factorize, multiplicative_suite, split_prime, tau_of, GaussFactorization,
    MultiplicativeSuite, FACTOR_NORM_CAP,
};
pub(crate) use factor::{factor_u64, mobius};
pub use residue::ResidueSystem;
pub(crate) use residue::reduce as reduce_mod;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("zero is not a valid input here")]
    ZeroInput,
    #[error("{alpha} is not invertible modulo {modulus}")]
    NotInvertible { alpha: GaussInt, modulus: GaussInt },
    #[error("norm {norm} exceeds the factorization cap {cap}")]
    FactorCap { norm: u64, cap: u64 },
    #[error("cannot parse Gaussian integer from {0:?}")]
    Parse(String),
}

/// A Gaussian integer `re + im*i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
pub const I: GaussInt = GaussInt { re: 0, im: 1 };
pub const UNITS: [GaussInt; 4] = [
    GaussInt { re: 1, im: 0 },
    GaussInt { re: 0, im: 1 },
    GaussInt { re: -1, im: 0 },
    GaussInt { re: 0, im: -1 },
];

fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("Gaussian integer component overflows i64")
}

impl GaussInt {
    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub const fn from_int(n: i64) -> Self {
        GaussInt { re: n, im: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// `re^2 + im^2`.
    pub fn norm(self) -> u64 {
        let n = (self.re as i128) * (self.re as i128) + (self.im as i128) * (self.im as i128);
        u64::try_from(n).expect("norm overflows u64")
    }

    pub fn conj(self) -> Self {
        GaussInt::new(self.re, -self.im)
    }

    /// Multiplication by `i`.
    pub fn rotate(self) -> Self {
        GaussInt::new(-self.im, self.re)
    }

    /// The associate with `re > 0, im >= 0`; zero maps to zero.
    pub fn canonical(self) -> Self {
        self.canonical_with_unit().0
    }

    /// Returns `(c, u)` with `c` canonical and `c = u * self`.
    pub fn canonical_with_unit(self) -> (Self, Self) {
        if self.is_zero() {
            return (self, ONE);
        }
        let mut z = self;
        for u in UNITS {
            if z.re > 0 && z.im >= 0 {
                return (z, u);
            }
            z = z.rotate();
        }
        unreachable!("one of the four associates lies in the first quadrant")
    }

    /// Euclidean division `self = q * rhs + r` with `q` the nearest Gaussian
    /// integer to the exact quotient (ties toward negative components), so
    /// `norm(r) <= norm(rhs) / 2`.
    pub fn div_rem(self, rhs: Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by zero Gaussian integer");
        let n = rhs.norm() as i128;
        let (a, b) = (self.re as i128, self.im as i128);
        let (c, d) = (rhs.re as i128, rhs.im as i128);
        // self * conj(rhs)
        let num_re = a * c + b * d;
        let num_im = b * c - a * d;
        let q = GaussInt::new(narrow(round_half_down(num_re, n)), narrow(round_half_down(num_im, n)));
        let r = self - q * rhs;
        (q, r)
    }

    /// Exact divisibility test `rhs | self`.
    pub fn divisible_by(self, rhs: Self) -> bool {
        if rhs.is_zero() {
            return self.is_zero();
        }
        let n = rhs.norm() as i128;
        let (a, b) = (self.re as i128, self.im as i128);
        let (c, d) = (rhs.re as i128, rhs.im as i128);
        (a * c + b * d) % n == 0 && (b * c - a * d) % n == 0
    }

    /// Exact quotient; panics unless `rhs | self`.
    pub fn exact_div(self, rhs: Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        assert!(r.is_zero(), "{self} is not divisible by {rhs}");
        q
    }

    pub fn pow(self, e: u32) -> Self {
        let mut acc = ONE;
        for _ in 0..e {
            acc = acc * self;
        }
        acc
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re as f64, self.im as f64)
    }

    /// Total order used wherever a deterministic listing is needed:
    /// norm ascending, then `re` descending, then `im` ascending.
    pub fn enumeration_cmp(&self, other: &Self) -> Ordering {
        self.norm()
            .cmp(&other.norm())
            .then_with(|| other.re.cmp(&self.re))
            .then_with(|| self.im.cmp(&other.im))
    }

    /// Order for canonical divisors: norm, then `re`, then `im`, all ascending.
    pub fn divisor_cmp(&self, other: &Self) -> Ordering {
        self.norm()
            .cmp(&other.norm())
            .then_with(|| self.re.cmp(&other.re))
            .then_with(|| self.im.cmp(&other.im))
    }
}

/// `ceil(num/den - 1/2)` for `den > 0`: nearest integer, halves rounded down.
fn round_half_down(num: i128, den: i128) -> i128 {
    let a = 2 * num - den;
    let b = 2 * den;
    -((-a).div_euclid(b))
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: Self) -> Self {
        GaussInt::new(
            self.re.checked_add(rhs.re).expect("overflow in GaussInt add"),
            self.im.checked_add(rhs.im).expect("overflow in GaussInt add"),
        )
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: Self) -> Self {
        GaussInt::new(
            self.re.checked_sub(rhs.re).expect("overflow in GaussInt sub"),
            self.im.checked_sub(rhs.im).expect("overflow in GaussInt sub"),
        )
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> Self {
        GaussInt::new(-self.re, -self.im)
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.re as i128, self.im as i128);
        let (c, d) = (rhs.re as i128, rhs.im as i128);
        GaussInt::new(narrow(a * c - b * d), narrow(a * d + b * c))
    }
}

impl From<i64> for GaussInt {
    fn from(n: i64) -> Self {
        GaussInt::from_int(n)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (r, 0) => write!(f, "{r}"),
            (0, i) => write!(f, "{i}i"),
            (r, i) if i < 0 => write!(f, "{r}{i}i"),
            (r, i) => write!(f, "{r}+{i}i"),
        }
    }
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl std::str::FromStr for GaussInt {
    type Err = GaussError;

    /// Parses the `re,im` form used on the command line.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || GaussError::Parse(s.to_string());
        let (re, im) = s.split_once(',').ok_or_else(err)?;
        Ok(GaussInt::new(
            re.trim().parse().map_err(|_| err())?,
            im.trim().parse().map_err(|_| err())?,
        ))
    }
}

/// Canonical highest common factor by the Euclidean algorithm.
pub fn gcd(a: GaussInt, b: GaussInt) -> Result<GaussInt, GaussError> {
    if a.is_zero() && b.is_zero() {
        return Err(GaussError::BothZero);
    }
    let (mut x, mut y) = (a, b);
    while !y.is_zero() {
        let (_, r) = x.div_rem(y);
        x = y;
        y = r;
    }
    Ok(x.canonical())
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` a (not
/// necessarily canonical) highest common factor.
pub fn ext_gcd(a: GaussInt, b: GaussInt) -> (GaussInt, GaussInt, GaussInt) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (ONE, ZERO);
    let (mut t0, mut t1) = (ZERO, ONE);
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(r1);
        r0 = r1;
        r1 = r;
        let s = s0 - q * s1;
        s0 = s1;
        s1 = s;
        let t = t0 - q * t1;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

/// `delta` with `delta * alpha = 1 mod gamma`, reduced into the canonical
/// residue system of `gamma`.
pub fn inv_mod(alpha: GaussInt, gamma: GaussInt) -> Result<GaussInt, GaussError> {
    if gamma.is_zero() {
        return Err(GaussError::ZeroInput);
    }
    let (g, s, _) = ext_gcd(alpha, gamma);
    if !g.is_unit() {
        return Err(GaussError::NotInvertible { alpha, modulus: gamma });
    }
    // s*alpha = g (mod gamma) and g^-1 = conj(g) for a unit
    let inv = s * g.conj();
    Ok(residue::reduce(inv, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn norm_examples() {
        assert_eq!(g(3, 4).norm(), 25);
        assert_eq!(ZERO.norm(), 0);
        assert_eq!(g(1, 1).norm(), 2);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(g(1, 1), g(2, 0)).unwrap(), g(1, 1));
        assert_eq!(gcd(g(3, 0), g(5, 0)).unwrap(), ONE);
        assert_eq!(gcd(ZERO, g(0, -7)).unwrap(), g(7, 0));
        assert_eq!(gcd(ZERO, ZERO), Err(GaussError::BothZero));
    }

    #[test]
    fn gcd_of_one_plus_i_and_two_by_divisor_scan() {
        // every divisor of 2 = -i(1+i)^2, listed exhaustively
        let divisors_of_two: Vec<GaussInt> = (-2..=2)
            .flat_map(|a| (-2..=2).map(move |b| g(a, b)))
            .filter(|d| !d.is_zero() && g(2, 0).divisible_by(*d))
            .collect();
        let common: Vec<_> = divisors_of_two
            .iter()
            .copied()
            .filter(|d| g(1, 1).divisible_by(*d))
            .collect();
        let max_norm = common.iter().map(|d| d.norm()).max().unwrap();
        assert_eq!(max_norm, 2);
        assert!(common.contains(&g(1, 1)));
        assert_eq!(gcd(g(1, 1), g(2, 0)).unwrap(), g(1, 1));
    }

    #[test]
    fn division_rounds_ties_down() {
        // (1+i)/2: exact quotient 1/2 + i/2, both halves round to 0
        let (q, r) = g(1, 1).div_rem(g(2, 0));
        assert_eq!(q, ZERO);
        assert_eq!(r, g(1, 1));
        let (q, _) = g(3, -3).div_rem(g(2, 0));
        assert_eq!(q, g(1, -2));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inv_mod(ONE, g(3, 0)).unwrap(), ONE);
        assert_eq!(inv_mod(ONE, g(2, 3)).unwrap(), ONE);
        let inv = inv_mod(I, g(3, 0)).unwrap();
        // brute scan of the 9 residues mod 3 for the one inverting i
        let sys = ResidueSystem::new(g(3, 0)).unwrap();
        let found: Vec<_> = sys
            .representatives
            .iter()
            .copied()
            .filter(|r| (*r * I - ONE).divisible_by(g(3, 0)))
            .collect();
        assert_eq!(found, vec![inv]);
        assert!((inv - g(0, -1)).divisible_by(g(3, 0)));
        assert!(matches!(
            inv_mod(g(1, 1), g(2, 0)),
            Err(GaussError::NotInvertible { .. })
        ));
    }

    #[test]
    fn canonical_is_first_quadrant() {
        for z in [g(3, 4), g(-3, 4), g(-3, -4), g(3, -4), g(0, 5), g(0, -5), g(-5, 0)] {
            let (c, u) = z.canonical_with_unit();
            assert!(c.re > 0 && c.im >= 0);
            assert_eq!(u * z, c);
        }
        assert_eq!(ZERO.canonical(), ZERO);
    }

    #[test]
    fn parses_cli_form() {
        assert_eq!("3,-4".parse::<GaussInt>().unwrap(), g(3, -4));
        assert!("3".parse::<GaussInt>().is_err());
    }
}
