use serde::{Deserialize, Serialize};

use super::{factorize, GaussError, GaussInt};

/// Complete residue system modulo `gamma`, built from the Hermite normal form
/// of the sublattice `gamma * Z[i]`.
///
/// Representatives are `x + y*i` with `0 <= x < N/g`, `0 <= y < g`, where
/// `N = norm(gamma)` and `g = gcd(re, im)`. They are listed with `y` as the
/// outer loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSystem {
    pub modulus: GaussInt,
    pub representatives: Vec<GaussInt>,
    pub reduced: Vec<usize>,
}

/// HNF basis `(n_over_g, 0), (c, g)` of the lattice `gamma * Z[i]`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Hnf {
    pub n_over_g: i128,
    pub c: i128,
    pub g: i128,
}

fn int_ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // returns (g, x, y) with a*x + b*y = g >= 0
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i128, 0i128);
    let (mut y0, mut y1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

impl Hnf {
    pub(crate) fn new(gamma: GaussInt) -> Self {
        let (a, b) = (gamma.re as i128, gamma.im as i128);
        let n = a * a + b * b;
        // x*gamma + y*(i*gamma) = (x*a - y*b) + (x*b + y*a) i
        let (g, x, y) = int_ext_gcd(b, a);
        let n_over_g = n / g;
        let c = (x * a - y * b).rem_euclid(n_over_g);
        Hnf { n_over_g, c, g }
    }

    pub(crate) fn reduce(&self, z: GaussInt) -> GaussInt {
        let (mut x, mut y) = (z.re as i128, z.im as i128);
        let q = y.div_euclid(self.g);
        x -= q * self.c;
        y -= q * self.g;
        x = x.rem_euclid(self.n_over_g);
        GaussInt::new(x as i64, y as i64)
    }
}

/// Canonical representative of `z` modulo `gamma` (which must be nonzero).
pub(crate) fn reduce(z: GaussInt, gamma: GaussInt) -> GaussInt {
    Hnf::new(gamma).reduce(z)
}

impl ResidueSystem {
    pub fn new(gamma: GaussInt) -> Result<Self, GaussError> {
        if gamma.is_zero() {
            return Err(GaussError::ZeroInput);
        }
        let h = Hnf::new(gamma);
        let mut representatives = Vec::with_capacity(gamma.norm() as usize);
        for y in 0..h.g {
            for x in 0..h.n_over_g {
                representatives.push(GaussInt::new(x as i64, y as i64));
            }
        }
        let primes: Vec<GaussInt> = factorize(gamma)?.factors.iter().map(|f| f.0).collect();
        let reduced = representatives
            .iter()
            .enumerate()
            .filter(|(_, r)| primes.iter().all(|p| !r.divisible_by(*p)))
            .map(|(i, _)| i)
            .collect();
        Ok(ResidueSystem { modulus: gamma, representatives, reduced })
    }

    pub fn reduce(&self, z: GaussInt) -> GaussInt {
        reduce(z, self.modulus)
    }

    pub fn reduced_residues(&self) -> impl Iterator<Item = GaussInt> + '_ {
        self.reduced.iter().map(move |&i| self.representatives[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn sizes() {
        for (gamma, n, phi) in [(g(1, 1), 2, 1), (g(2, 0), 4, 2), (g(3, 0), 9, 8), (ONE_G, 1, 1)] {
            let r = ResidueSystem::new(gamma).unwrap();
            assert_eq!(r.representatives.len(), n);
            assert_eq!(r.reduced.len(), phi);
        }
    }

    const ONE_G: GaussInt = GaussInt::new(1, 0);

    #[test]
    fn reduction_is_a_congruence_and_idempotent() {
        for gamma in [g(3, 0), g(2, 3), g(-4, 6), g(0, -5), g(7, 1)] {
            let sys = ResidueSystem::new(gamma).unwrap();
            let reps: HashSet<_> = sys.representatives.iter().copied().collect();
            assert_eq!(reps.len() as u64, gamma.norm());
            for a in -9..9 {
                for b in -9..9 {
                    let z = g(a, b);
                    let r = sys.reduce(z);
                    assert!(reps.contains(&r), "{z} -> {r} mod {gamma}");
                    assert!((z - r).divisible_by(gamma));
                }
            }
        }
    }

    #[test]
    fn rejects_zero() {
        assert_eq!(ResidueSystem::new(g(0, 0)), Err(GaussError::ZeroInput));
    }
}
