//! Test functions on `C` and their transforms
//! `f^(w) = int f(z) e(-Re(w z)) dx dy`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::KloostermanError;
use crate::analytic::quadrature::GlRule;
use crate::analytic::WEtaFamily;

const GL_NODES: usize = 20;
const MIN_PANELS: usize = 24;
/// `exp(-TAIL)` is the neglected Gaussian mass.
const TAIL: f64 = 40.0;

#[derive(Debug, Clone)]
pub enum TestFunction {
    /// `exp(-pi |z|^2 / sigma0^2)`; self-dual at `sigma0 = 1`.
    Gaussian { sigma0: f64 },
    /// Laplacian of the Gaussian above.
    GaussianLaplacian { sigma0: f64 },
    /// `Upsilon_eta(|z|^2)`.
    RadialBump(WEtaFamily),
    /// `z -> inner(a z)`.
    Dilated { a: Complex64, inner: Box<TestFunction> },
}

impl TestFunction {
    pub fn dilated(self, a: Complex64) -> Self {
        TestFunction::Dilated { a, inner: Box::new(self) }
    }

    pub fn eval(&self, z: Complex64) -> f64 {
        match self {
            TestFunction::Gaussian { sigma0 } => (-PI * z.norm_sqr() / (sigma0 * sigma0)).exp(),
            TestFunction::GaussianLaplacian { sigma0 } => {
                let a = PI / (sigma0 * sigma0);
                let r2 = z.norm_sqr();
                4.0 * a * (a * r2 - 1.0) * (-a * r2).exp()
            }
            TestFunction::RadialBump(fam) => fam.upsilon(z.norm_sqr()),
            TestFunction::Dilated { a, inner } => inner.eval(a * z),
        }
    }

    /// Radius interval outside of which the function is negligible or zero.
    pub fn support(&self) -> (f64, f64) {
        match self {
            TestFunction::Gaussian { sigma0 } => (0.0, sigma0 * (TAIL / PI).sqrt()),
            TestFunction::GaussianLaplacian { sigma0 } => (0.0, sigma0 * ((TAIL + 8.0) / PI).sqrt()),
            TestFunction::RadialBump(fam) => ((-0.5 * fam.eta).exp(), (0.5 * fam.eta).exp()),
            TestFunction::Dilated { a, inner } => {
                let (lo, hi) = inner.support();
                (lo / a.norm(), hi / a.norm())
            }
        }
    }

    /// Radius beyond which the transform is negligible, for rapidly
    /// decaying transforms only.
    pub fn hat_support(&self) -> Result<f64, KloostermanError> {
        match self {
            TestFunction::Gaussian { sigma0 } => Ok((TAIL / PI).sqrt() / sigma0),
            TestFunction::GaussianLaplacian { sigma0 } => Ok(((TAIL + 8.0) / PI).sqrt() / sigma0),
            TestFunction::Dilated { a, inner } => Ok(inner.hat_support()? * a.norm()),
            TestFunction::RadialBump(_) => Err(KloostermanError::UnsupportedTestFunction(
                "transform of the radial bump decays too slowly for lattice sums".into(),
            )),
        }
    }

    pub(crate) fn validate(&self) -> Result<(), KloostermanError> {
        match self {
            TestFunction::Gaussian { sigma0 } | TestFunction::GaussianLaplacian { sigma0 }
                if !(sigma0.is_finite() && *sigma0 > 0.0) =>
            {
                Err(KloostermanError::UnsupportedTestFunction(format!("sigma0 = {sigma0}")))
            }
            TestFunction::Dilated { a, .. } if !(a.norm() > 0.0 && a.norm().is_finite()) => {
                Err(KloostermanError::UnsupportedTestFunction(format!("dilation by {a}")))
            }
            TestFunction::Dilated { inner, .. } => inner.validate(),
            _ => Ok(()),
        }
    }
}

/// Radial panel count: enough to follow the oscillation at `|w|` and the
/// steep flanks of the bump.
fn radial_panels(width: f64, w: f64) -> usize {
    ((2.0 * width * (w + 1.0)).ceil() as usize + 2).max(MIN_PANELS)
}

/// Closed-form transform where one exists.
pub fn fourier_hat_analytic(f: &TestFunction, w: Complex64) -> Result<Complex64, KloostermanError> {
    f.validate()?;
    let real = |x: f64| Ok(Complex64::new(x, 0.0));
    match f {
        TestFunction::Gaussian { sigma0 } => {
            let s2 = sigma0 * sigma0;
            real(s2 * (-PI * s2 * w.norm_sqr()).exp())
        }
        TestFunction::GaussianLaplacian { sigma0 } => {
            let s2 = sigma0 * sigma0;
            let w2 = w.norm_sqr();
            real(-4.0 * PI * PI * w2 * s2 * (-PI * s2 * w2).exp())
        }
        TestFunction::Dilated { a, inner } => Ok(fourier_hat_analytic(inner, w / a)? / a.norm_sqr()),
        TestFunction::RadialBump(_) => Err(KloostermanError::UnsupportedTestFunction(
            "no closed-form transform for the radial bump".into(),
        )),
    }
}

/// Transform by polar quadrature: trapezoid in the angle, composite
/// Gauss-Legendre in the radius.
pub fn fourier_hat(f: &TestFunction, w: Complex64) -> Result<Complex64, KloostermanError> {
    f.validate()?;
    let (r_lo, r_hi) = f.support();
    let wn = w.norm();
    let panels = radial_panels(r_hi - r_lo, wn);
    let m = (TAU * wn * r_hi).ceil() as usize + 40;
    let rule = GlRule::new(GL_NODES);
    let dth = TAU / m as f64;
    let cis: Vec<Complex64> = (0..m).map(|j| Complex64::from_polar(1.0, dth * j as f64)).collect();
    // every variant is radial, so f is sampled once per radius
    let total = rule.integrate_composite(r_lo, r_hi, panels, |r| {
        let f_r = f.eval(Complex64::new(r, 0.0));
        if f_r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let acc: Complex64 = cis.iter().map(|&u| Complex64::from_polar(1.0, -TAU * (w * u).re * r)).sum();
        acc * (f_r * r * dth)
    });
    Ok(total)
}

/// Transform of a radial function as a function of `|w|`, valid for
/// `|w| <= w_max`. The radial samples are taken once, so repeated evaluation
/// costs one cosine per (radius, angle) node.
#[derive(Debug, Clone)]
pub struct RadialHat {
    /// `(r, weight * f(r) * r)` on the radial nodes.
    nodes: Vec<(f64, f64)>,
    cos_theta: Vec<f64>,
    w_max: f64,
}

impl RadialHat {
    pub fn new(f: &TestFunction, w_max: f64) -> Result<Self, KloostermanError> {
        f.validate()?;
        let (r_lo, r_hi) = f.support();
        let panels = radial_panels(r_hi - r_lo, w_max);
        let rule = GlRule::new(GL_NODES);
        let step = (r_hi - r_lo) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * GL_NODES);
        for p in 0..panels {
            let m = r_lo + step * (p as f64 + 0.5);
            for (x, w) in rule.pairs() {
                let r = m + 0.5 * step * x;
                let fr = f.eval(Complex64::new(r, 0.0));
                if fr != 0.0 {
                    nodes.push((r, 0.5 * step * w * fr * r));
                }
            }
        }
        let m = (TAU * w_max * r_hi).ceil() as usize + 40;
        let cos_theta = (0..m).map(|j| (TAU * j as f64 / m as f64).cos()).collect();
        Ok(RadialHat { nodes, cos_theta, w_max })
    }

    pub fn w_max(&self) -> f64 {
        self.w_max
    }

    pub fn eval(&self, rho: f64) -> f64 {
        debug_assert!(rho <= self.w_max * (1.0 + 1e-12));
        let dth = TAU / self.cos_theta.len() as f64;
        self.nodes
            .iter()
            .map(|&(r, wt)| wt * self.cos_theta.iter().map(|c| (TAU * rho * r * c).cos()).sum::<f64>())
            .sum::<f64>()
            * dth
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{Smoothing, SmoothingConfig};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gaussian_is_self_dual() {
        let g = TestFunction::Gaussian { sigma0: 1.0 };
        for w in [c(0.0, 0.0), c(0.3, -0.2), c(1.1, 0.7), c(-2.0, 1.5)] {
            let q = fourier_hat(&g, w).unwrap();
            assert!((q - g.eval(w)).norm() < 1e-10, "{w}: {q}");
        }
    }

    #[test]
    fn laplacian_and_dilation_match_closed_forms() {
        let lap = TestFunction::GaussianLaplacian { sigma0: 0.8 };
        let dil = TestFunction::Gaussian { sigma0: 1.3 }.dilated(c(0.6, 0.8) * 1.7);
        for f in [lap, dil] {
            for w in [c(0.2, 0.1), c(-0.9, 0.4), c(1.4, -1.2)] {
                let q = fourier_hat(&f, w).unwrap();
                let a = fourier_hat_analytic(&f, w).unwrap();
                assert!((q - a).norm() < 1e-10, "{f:?} {w}: {q} vs {a}");
            }
        }
    }

    #[test]
    fn bump_transform_is_real_and_radial() {
        let fam = Smoothing::new(SmoothingConfig::default()).unwrap().w_eta_family();
        let f = TestFunction::RadialBump(fam);
        let a = fourier_hat(&f, c(0.7, 0.0)).unwrap();
        let b = fourier_hat(&f, c(0.0, 0.7)).unwrap();
        assert!(a.im.abs() < 1e-12 && (a - b).norm() < 1e-12);
        assert!(fourier_hat_analytic(&f, c(0.0, 0.0)).is_err());
        let table = RadialHat::new(&f, 3.0).unwrap();
        for rho in [0.0, 0.7, 2.9] {
            let q = fourier_hat(&f, c(rho, 0.0)).unwrap();
            assert!((table.eval(rho) - q.re).abs() < 1e-12, "{rho}");
        }
        let zero = TestFunction::Gaussian { sigma0: 1.0 }.dilated(c(0.0, 0.0));
        assert!(fourier_hat(&zero, c(1.0, 0.0)).is_err());
    }
}
