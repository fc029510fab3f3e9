//! Oracles written independently of the library, shared by integration tests.
#![allow(dead_code)]

use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `B_{2k}` for `k = 1..=12`.
const BERNOULLI: [f64; 12] = [
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
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Hurwitz zeta by Euler-Maclaurin with 200 explicit terms.
pub fn hurwitz(s: Complex64, a: f64) -> Complex64 {
    let n = 200usize;
    let mut acc: Complex64 = (0..n).map(|k| (-s * (k as f64 + a).ln()).exp()).sum();
    let x = n as f64 + a;
    let xs = (-s * x.ln()).exp();
    acc += xs * x / (s - 1.0) + 0.5 * xs;
    // rising factorial s (s+1) ... (s+2k-2) and (2k)!
    let mut rising = s;
    let mut fact = 2.0;
    let mut xpow = xs / x;
    for (k, b) in BERNOULLI.iter().enumerate() {
        acc += rising * xpow * (b / fact);
        let j = 2.0 * k as f64;
        rising *= (s + j + 1.0) * (s + j + 2.0);
        fact *= (j + 3.0) * (j + 4.0);
        xpow /= x * x;
    }
    acc
}

pub fn zeta(s: Complex64) -> Complex64 {
    hurwitz(s, 1.0)
}

/// `L(s, chi_4) = 4^{-s} (zeta(s, 1/4) - zeta(s, 3/4))`.
pub fn l_chi4(s: Complex64) -> Complex64 {
    (-s * 4f64.ln()).exp() * (hurwitz(s, 0.25) - hurwitz(s, 0.75))
}

/// `ln Gamma(z)` up to a multiple of `2 pi i`: shift to `Re z >= 20`, then Stirling.
pub fn ln_gamma_mod_2pi(z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 20.0 {
        shift += w.ln();
        w += 1.0;
    }
    let stirling = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * w)
        - 1.0 / (360.0 * w.powi(3))
        + 1.0 / (1260.0 * w.powi(5))
        - 1.0 / (1680.0 * w.powi(7));
    stirling - shift
}

/// `pi^{2s-1} Gamma(2|d|+1-s) / Gamma(2|d|+s)`.
pub fn x_d(d: i64, s: Complex64) -> Complex64 {
    let k = 2.0 * d.unsigned_abs() as f64;
    let pi = std::f64::consts::PI;
    ((2.0 * s - 1.0) * pi.ln() + ln_gamma_mod_2pi(k + 1.0 - s) - ln_gamma_mod_2pi(k + s)).exp()
}

/// `sum_n exp(-pi n^2)`.
pub fn theta_one() -> f64 {
    (-30i32..=30).map(|n| (-std::f64::consts::PI * f64::from(n * n)).exp()).sum()
}

/// `sum_{k | n} chi_4(k)` by trial division over all `k <= n`.
pub fn jacobi(n: u64) -> i64 {
    (1..=n)
        .filter(|k| n % k == 0)
        .map(|k| match k % 4 {
            1 => 1,
            3 => -1,
            _ => 0,
        })
        .sum()
}

/// `#{(a, b) : a^2 + b^2 = n}` for `n <= up_to`.
pub fn r2_table(up_to: u64) -> Vec<u64> {
    let mut r = vec![0u64; up_to as usize + 1];
    let m = (up_to as f64).sqrt() as i64;
    for a in -m..=m {
        for b in -m..=m {
            let n = (a * a + b * b) as u64;
            if n <= up_to {
                r[n as usize] += 1;
            }
        }
    }
    r
}

/// `(1/4) sum_{a^2+b^2=n} ((a+bi)/|a+bi|)^{4d}` in floating point.
pub fn delta_scan(d: i64, n: u64) -> Complex64 {
    let m = (n as f64).sqrt() as i64 + 1;
    let mut acc = Complex64::new(0.0, 0.0);
    for a in -m..=m {
        for b in -m..=m {
            if (a * a + b * b) as u64 == n {
                let u = c(a as f64, b as f64) / (n as f64).sqrt();
                acc += u.powi(4 * d as i32);
            }
        }
    }
    acc / 4.0
}

type G = (i64, i64);

fn mul(x: G, y: G) -> G {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

fn divides(g: G, z: G) -> bool {
    let n = g.0 * g.0 + g.1 * g.1;
    let p = mul(z, (g.0, -g.1));
    p.0 % n == 0 && p.1 % n == 0
}

/// A complete residue system mod `g`, by deduplicating the box `[0, N)^2`.
pub fn residues(g: G) -> Vec<G> {
    let n = g.0 * g.0 + g.1 * g.1;
    let mut reps: Vec<G> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !reps.iter().any(|r| divides(g, (x - r.0, y - r.1))) {
                reps.push((x, y));
            }
            if reps.len() as i64 == n {
                return reps;
            }
        }
    }
    reps
}

/// Kloosterman sum by brute force: inverses found by search, phases in floating point.
pub fn kloosterman_brute(alpha: G, beta: G, g: G) -> Complex64 {
    let n = (g.0 * g.0 + g.1 * g.1) as f64;
    let reps = residues(g);
    let mut acc = Complex64::new(0.0, 0.0);
    for &x in &reps {
        let Some(&inv) = reps.iter().find(|&&y| divides(g, (mul(x, y).0 - 1, mul(x, y).1))) else {
            continue;
        };
        let z = {
            let a = mul(alpha, inv);
            let b = mul(beta, x);
            (a.0 + b.0, a.1 + b.1)
        };
        let re = mul(z, (g.0, -g.1)).0 as f64 / n;
        acc += Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * re);
    }
    acc
}

/// Number of reduced residues mod `g`, by brute force.
pub fn phi_brute(g: G) -> u64 {
    let reps = residues(g);
    reps.iter()
        .filter(|&&x| reps.iter().any(|&y| divides(g, (mul(x, y).0 - 1, mul(x, y).1))))
        .count() as u64
}
