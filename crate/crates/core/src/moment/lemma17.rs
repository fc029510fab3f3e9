//! Both sides of the smoothed large-sieve identity
//! `E_{D,C} = sum_{|xi1 - xi2| < QX} C(xi1) conj C(xi2) (Upsilon o N)^((D/pi) log(xi1/xi2)) + error`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::MomentError;
use crate::analytic::{Smoothing, SmoothingConfig};
use crate::gauss::{GaussInt, I};
use crate::hecke::{char_value, CoeffMap};
use crate::kloosterman::{RadialHat, TestFunction};
use crate::rng;

/// Target trapezoid step in `t`; the integrand is smooth with compact support.
const T_STEP: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma17Result {
    pub lhs: f64,
    pub rhs: Complex64,
    pub rel_err: f64,
    /// `sum |C|^2 (Upsilon o N)^(0)`, the diagonal part of `rhs`.
    pub diagonal: f64,
    pub pairs: usize,
}

/// `C = +-1` with an independent sign per unit orbit on `norm/X^2 in (1/2, 2)`.
pub fn annulus_signs(x: f64, seed: u64) -> CoeffMap {
    let lo = 0.5 * x * x;
    let hi = 2.0 * x * x;
    let mut r = rng::stream(seed, 0);
    let mut c = CoeffMap::new(hi.floor() as u64);
    let b = hi.sqrt().ceil() as i64;
    let mut reps: Vec<GaussInt> = (1..=b)
        .flat_map(|re| (0..=b).map(move |im| GaussInt::new(re, im)))
        .filter(|z| (z.norm() as f64) > lo && (z.norm() as f64) < hi)
        .collect();
    reps.sort_by(|a, b| a.enumeration_cmp(b));
    for z in reps {
        let v = Complex64::new(rng::sign(&mut r), 0.0);
        let mut u = z;
        for _ in 0..4 {
            c.insert(u, v).expect("inside the bound");
            u = u * I;
        }
    }
    c
}

fn validate(c: &CoeffMap, x: f64) -> Result<(), MomentError> {
    for (key, v) in c.iter() {
        if v == Complex64::new(0.0, 0.0) {
            continue;
        }
        let r = key.norm() as f64 / (x * x);
        if !(r > 0.5 && r < 2.0) {
            return Err(MomentError::Support { key, x });
        }
        if (c.get(key * I) - v).norm() > 1e-12 * v.norm() {
            return Err(MomentError::Symmetry { key });
        }
    }
    Ok(())
}

/// `lhs` by direct quadrature over `(d, t)`, `rhs` from the radial transform of
/// `Upsilon_eta(|z|^2)`.
pub fn lemma17_identity(
    d_scale: f64,
    x: f64,
    c: &CoeffMap,
    q: f64,
    smoothing: &SmoothingConfig,
) -> Result<Lemma17Result, MomentError> {
    if !(d_scale >= 1.0 && x > 0.0 && q > 0.0 && q <= 0.5) {
        return Err(MomentError::Config(format!("need D >= 1, X > 0, Q in (0, 1/2]; got {d_scale}, {x}, {q}")));
    }
    validate(c, x)?;
    let fam = Smoothing::new(*smoothing)?.w_eta_family();
    let eta = smoothing.eta;
    let entries: Vec<(GaussInt, Complex64)> =
        c.iter().filter(|(_, v)| *v != Complex64::new(0.0, 0.0)).collect();

    // lhs: |2d + it| < e^{eta/2} D on the support of Upsilon
    let reach = (0.5 * eta).exp() * d_scale;
    let dmax = (0.5 * reach).floor() as i64;
    let mut lhs = 0.0;
    for d in -dmax..=dmax {
        let mut by_norm: BTreeMap<u64, Complex64> = BTreeMap::new();
        for &(xi, v) in &entries {
            *by_norm.entry(xi.norm()).or_default() += v * char_value(d, xi)?;
        }
        let logs: Vec<(f64, Complex64)> = by_norm.into_iter().map(|(n, s)| ((n as f64).ln(), s)).collect();
        let half = (reach * reach - 4.0 * (d * d) as f64).max(0.0).sqrt();
        let steps = ((2.0 * half / T_STEP).ceil() as usize).max(2);
        let h = 2.0 * half / steps as f64;
        let mut acc = 0.0;
        for j in 1..steps {
            let t = -half + h * j as f64;
            let u = (4.0 * (d * d) as f64 + t * t) / (d_scale * d_scale);
            let weight = fam.upsilon(u);
            if weight == 0.0 {
                continue;
            }
            let poly: Complex64 = logs.iter().map(|&(ln, s)| s * Complex64::from_polar(1.0, -t * ln)).sum();
            acc += weight * poly.norm_sqr();
        }
        lhs += acc * h;
    }
    lhs /= 2.0 * d_scale * d_scale;

    // rhs over close pairs
    let mut close = Vec::new();
    for &(a, va) in &entries {
        for &(b, vb) in &entries {
            if (a - b).to_complex().norm() < q * x {
                let ratio = a.to_complex() / b.to_complex();
                close.push((va * vb.conj(), d_scale / PI * ratio.ln().norm()));
            }
        }
    }
    let w_max = close.iter().map(|p| p.1).fold(0.0, f64::max);
    let hat = RadialHat::new(&TestFunction::RadialBump(fam), w_max)?;
    let rhs: Complex64 = close.iter().map(|&(cc, w)| cc * hat.eval(w)).sum();
    let diagonal = c.l2_squared() * hat.eval(0.0);
    let rel_err = (lhs - rhs).norm() / (lhs.abs() + rhs.norm() + 1e-300);
    Ok(Lemma17Result { lhs, rhs, rel_err, diagonal, pairs: close.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_map_gives_zero() {
        let r = lemma17_identity(8.0, 8.0, &CoeffMap::new(128), 0.5, &SmoothingConfig::default()).unwrap();
        assert_eq!((r.lhs, r.rhs, r.rel_err), (0.0, Complex64::new(0.0, 0.0), 0.0));
    }

    #[test]
    fn rejects_bad_maps() {
        let mut c = CoeffMap::new(200);
        c.insert(GaussInt::new(8, 0), Complex64::new(1.0, 0.0)).unwrap();
        let cfg = SmoothingConfig::default();
        assert!(matches!(lemma17_identity(8.0, 8.0, &c, 0.5, &cfg), Err(MomentError::Symmetry { .. })));
        c.insert(GaussInt::new(1, 0), Complex64::new(1.0, 0.0)).unwrap();
        assert!(matches!(lemma17_identity(8.0, 8.0, &c, 0.5, &cfg), Err(MomentError::Support { .. })));
    }

    #[test]
    fn single_orbit_has_only_diagonal_pairs() {
        let mut c = CoeffMap::new(200);
        let mut u = GaussInt::new(7, 3);
        for _ in 0..4 {
            c.insert(u, Complex64::new(1.0, 0.0)).unwrap();
            u = u * I;
        }
        let cfg = SmoothingConfig::default();
        let r = lemma17_identity(32.0, 8.0, &c, 0.5, &cfg).unwrap();
        assert_eq!(r.pairs, 4);
        assert_eq!(r.rhs.re, r.diagonal);
        // the transform at 0 is pi * int Upsilon(u) du
        let fam = Smoothing::new(cfg).unwrap().w_eta_family();
        let mass = crate::analytic::quadrature::GlRule::new(64)
            .integrate_composite((-cfg.eta).exp(), cfg.eta.exp(), 8, |u| fam.upsilon(u));
        assert!((r.diagonal - 4.0 * PI * mass).abs() < 1e-10 * r.diagonal);
        assert!(r.rel_err < 1e-3, "{r:?}");
    }

    #[test]
    fn annulus_map_is_symmetric() {
        let c = annulus_signs(6.0, 3);
        assert!(validate(&c, 6.0).is_ok());
        assert_eq!(c.len() % 4, 0);
        assert_eq!(c, annulus_signs(6.0, 3));
    }
}
