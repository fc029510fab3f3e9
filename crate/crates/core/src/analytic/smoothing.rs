//! Bump-built smoothings: `rho` with `rho(u) + rho(1/u) = 1`, its logarithmic
//! derivatives `rho_k = (u d/du)^k rho`, the corrected weight `rho~_K`, and the
//! `W_eta`, `Omega_eta`, `Upsilon_eta` family.

use std::f64::consts::LN_2;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::afe_coeffs::AfeCoefficients;
use super::quadrature::GlRule;
use super::AnalyticError;

/// Highest derivative order of `Phi` kept in closed form.
pub const MAX_PHI_DERIVATIVE: usize = 12;

const TABLE_INTERVALS: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothingConfig {
    pub b: f64,
    pub eta: f64,
    pub quad_nodes: usize,
}

impl Default for SmoothingConfig {
    fn default() -> Self {
        SmoothingConfig { b: std::f64::consts::SQRT_2, eta: LN_2 / 3.0, quad_nodes: 256 }
    }
}

impl SmoothingConfig {
    pub fn with_b(b: f64) -> Self {
        SmoothingConfig { b, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), AnalyticError> {
        if !(self.b > 1.0 && self.b.is_finite()) {
            return Err(AnalyticError::Config(format!("b must exceed 1, got {}", self.b)));
        }
        if !(self.eta > 0.0 && self.eta <= LN_2 / 3.0 + 1e-15) {
            return Err(AnalyticError::Config(format!("eta must lie in (0, ln2/3], got {}", self.eta)));
        }
        if self.quad_nodes < 8 {
            return Err(AnalyticError::Config("quad_nodes must be at least 8".into()));
        }
        Ok(())
    }
}

/// `Phi(t) = exp(-1/(1 - t^2))` on `(-1, 1)`, zero elsewhere.
pub fn phi(t: f64) -> f64 {
    if t.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - t * t)).exp()
    }
}

/// Integer polynomials `P_k` with `Phi^{(k)} = P_k (1 - t^2)^{-2k} Phi`,
/// coefficients in ascending degree.
fn phi_derivative_polys() -> Vec<Vec<i128>> {
    let mut polys = vec![vec![1i128]];
    for k in 0..MAX_PHI_DERIVATIVE {
        let p = &polys[k];
        let mut next = vec![0i128; p.len() + 3];
        // (1 - t^2)^2 P'
        for (j, &cj) in p.iter().enumerate().skip(1) {
            let dj = cj * j as i128;
            next[j - 1] += dj;
            next[j + 1] -= 2 * dj;
            next[j + 3] += dj;
        }
        // 4k t (1 - t^2) P - 2 t P
        for (j, &cj) in p.iter().enumerate() {
            next[j + 1] += (4 * k as i128 - 2) * cj;
            next[j + 3] -= 4 * k as i128 * cj;
        }
        while next.len() > 1 && *next.last().unwrap() == 0 {
            next.pop();
        }
        polys.push(next);
    }
    polys
}

/// Prepared smoothing: quadrature rule, normalizing constant, derivative
/// polynomials and an interpolation table for fast `rho`.
#[derive(Debug, Clone)]
pub struct Smoothing {
    pub cfg: SmoothingConfig,
    rule: Arc<GlRule>,
    c: f64,
    ln_b: f64,
    polys: Arc<Vec<Vec<f64>>>,
    /// `F(L) = c int_L^1 Phi` at `L = j / TABLE_INTERVALS`.
    table: Arc<Vec<f64>>,
}

impl Smoothing {
    pub fn new(cfg: SmoothingConfig) -> Result<Self, AnalyticError> {
        cfg.validate()?;
        let rule = GlRule::new(cfg.quad_nodes);
        let half = rule.integrate(0.0, 1.0, phi);
        let c = 0.5 / half;
        let polys = phi_derivative_polys()
            .into_iter()
            .map(|p| p.into_iter().map(|x| x as f64).collect())
            .collect();
        let mut sm = Smoothing {
            cfg,
            rule: Arc::new(rule),
            c,
            ln_b: cfg.b.ln(),
            polys: Arc::new(polys),
            table: Arc::new(Vec::new()),
        };
        let table = (0..=TABLE_INTERVALS)
            .map(|j| sm.upper_tail(j as f64 / TABLE_INTERVALS as f64))
            .collect();
        sm.table = Arc::new(table);
        Ok(sm)
    }

    /// `c = 1 / int Phi`.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn ln_b(&self) -> f64 {
        self.ln_b
    }

    pub fn rule(&self) -> &GlRule {
        &self.rule
    }

    /// `c int_L^1 Phi` for `L in [0, 1]` by the configured Gauss-Legendre rule.
    fn upper_tail(&self, l: f64) -> f64 {
        if l >= 1.0 {
            return 0.0;
        }
        self.c * self.rule.integrate(l, 1.0, phi)
    }

    /// `F(L) = c int_L^1 Phi` on all of R, using `F(-L) = 1 - F(L)`.
    pub fn tail_integral(&self, l: f64) -> f64 {
        if l >= 1.0 {
            0.0
        } else if l <= -1.0 {
            1.0
        } else if l >= 0.0 {
            self.upper_tail(l)
        } else {
            1.0 - self.upper_tail(-l)
        }
    }

    /// Same as [`Self::tail_integral`] from the cubic Hermite table.
    pub fn tail_integral_fast(&self, l: f64) -> f64 {
        if l >= 1.0 {
            return 0.0;
        }
        if l <= -1.0 {
            return 1.0;
        }
        if l < 0.0 {
            return 1.0 - self.tail_integral_fast(-l);
        }
        let h = 1.0 / TABLE_INTERVALS as f64;
        let x = l * TABLE_INTERVALS as f64;
        let j = (x as usize).min(TABLE_INTERVALS - 1);
        let s = x - j as f64;
        let (x0, x1) = (j as f64 * h, (j + 1) as f64 * h);
        let (f0, f1) = (self.table[j], self.table[j + 1]);
        let (d0, d1) = (-self.c * phi(x0) * h, -self.c * phi(x1) * h);
        let s2 = s * s;
        let s3 = s2 * s;
        f0 * (2.0 * s3 - 3.0 * s2 + 1.0)
            + d0 * (s3 - 2.0 * s2 + s)
            + f1 * (-2.0 * s3 + 3.0 * s2)
            + d1 * (s3 - s2)
    }

    pub fn log_b(&self, u: f64) -> f64 {
        u.ln() / self.ln_b
    }

    pub fn rho(&self, u: f64) -> f64 {
        assert!(u > 0.0, "rho needs u > 0");
        self.tail_integral(self.log_b(u))
    }

    pub fn rho_fast(&self, u: f64) -> f64 {
        self.tail_integral_fast(self.log_b(u))
    }

    /// `Phi^{(k)}(t)` from the closed form.
    pub fn phi_derivative(&self, k: usize, t: f64) -> Result<f64, AnalyticError> {
        if k > MAX_PHI_DERIVATIVE {
            return Err(AnalyticError::DerivativeOrder(k));
        }
        if t.abs() >= 1.0 {
            return Ok(0.0);
        }
        let p = self.polys[k].iter().rev().fold(0.0, |acc, &c| acc * t + c);
        let q = 1.0 - t * t;
        Ok(p * (-1.0 / q - 2.0 * k as f64 * q.ln()).exp())
    }

    /// `rho_k = (u d/du)^k rho = -c (ln b)^{-k} Phi^{(k-1)}(log_b u)` for `k >= 1`.
    pub fn rho_k(&self, k: usize, u: f64) -> Result<f64, AnalyticError> {
        if k == 0 {
            return Ok(self.rho(u));
        }
        let l = self.log_b(u);
        Ok(-self.c * self.ln_b.powi(-(k as i32)) * self.phi_derivative(k - 1, l)?)
    }

    /// `rho~_K(u) = rho(u) + sum_k (-1)^k a_k rho_k(u)`.
    pub fn rho_tilde(&self, coeffs: &AfeCoefficients, u: f64) -> Result<Complex64, AnalyticError> {
        self.rho_tilde_with(coeffs, u, self.rho(u))
    }

    pub(crate) fn rho_tilde_with(
        &self,
        coeffs: &AfeCoefficients,
        u: f64,
        rho_u: f64,
    ) -> Result<Complex64, AnalyticError> {
        let mut acc = Complex64::new(rho_u, 0.0);
        let l = self.log_b(u);
        if l.abs() >= 1.0 {
            return Ok(acc);
        }
        let mut sign = -1.0;
        let mut scale = 1.0 / self.ln_b;
        for (k, a) in coeffs.a.iter().enumerate() {
            let rk = -self.c * scale * self.phi_derivative(k, l)?;
            acc += a * (sign * rk);
            sign = -sign;
            scale /= self.ln_b;
        }
        Ok(acc)
    }

    pub fn w_eta_family(&self) -> WEtaFamily {
        WEtaFamily { smoothing: self.clone(), eta: self.cfg.eta }
    }
}

/// `W_eta`, `Omega_eta` and `Upsilon_eta` built from the same bump.
#[derive(Debug, Clone)]
pub struct WEtaFamily {
    smoothing: Smoothing,
    pub eta: f64,
}

impl WEtaFamily {
    fn t_of(&self, u: f64) -> f64 {
        2.0 * (u - 1.0) / self.eta.exp_m1() - 1.0
    }

    /// Equal to 1 on `[0, 1]`, 0 on `[e^eta, inf)`, non-increasing between.
    pub fn w(&self, u: f64) -> f64 {
        self.smoothing.tail_integral(self.t_of(u))
    }

    pub fn w_fast(&self, u: f64) -> f64 {
        self.smoothing.tail_integral_fast(self.t_of(u))
    }

    /// Shifted bump on `[1, e^eta]` with `(1/eta) int Omega = 1`.
    pub fn omega(&self, u: f64) -> f64 {
        let kappa = 2.0 * self.smoothing.c * self.eta / self.eta.exp_m1();
        kappa * phi(self.t_of(u))
    }

    /// `W(u) - W(e^eta u)`, supported in `[e^-eta, e^eta]`.
    pub fn upsilon(&self, u: f64) -> f64 {
        self.w(u) - self.w(self.eta.exp() * u)
    }

    pub fn upsilon_fast(&self, u: f64) -> f64 {
        self.w_fast(u) - self.w_fast(self.eta.exp() * u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm() -> Smoothing {
        Smoothing::new(SmoothingConfig::default()).unwrap()
    }

    #[test]
    fn first_polynomials() {
        let p = phi_derivative_polys();
        assert_eq!(p[1], vec![0, -2]);
        // Phi'' = (6t^4 - 2) / (1-t^2)^4 Phi
        assert_eq!(p[2], vec![-2, 0, 0, 0, 6]);
    }

    #[test]
    fn normalization_matches_a_finer_rule() {
        let s = sm();
        let fine = GlRule::new(2000).integrate(-1.0, 1.0, phi);
        assert!((s.c() * fine - 1.0).abs() < 1e-13);
        let l = 0.37;
        let fine_tail = GlRule::new(2000).integrate(l, 1.0, phi) / fine;
        assert!((s.tail_integral(l) - fine_tail).abs() < 1e-13);
    }

    #[test]
    fn support_and_symmetry() {
        let s = sm();
        let b = s.cfg.b;
        assert_eq!(s.rho(b), 0.0);
        assert_eq!(s.rho(1.0 / b), 1.0);
        assert_eq!(s.rho(1.0), 0.5);
        for u in [0.8, 1.1, 1.3] {
            assert!((s.rho(u) + s.rho(1.0 / u) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn table_tracks_exact_rule() {
        let s = sm();
        for j in 0..997 {
            let l = -1.0 + 2.0 * j as f64 / 996.0;
            assert!((s.tail_integral(l) - s.tail_integral_fast(l)).abs() < 1e-12, "L={l}");
        }
    }

    #[test]
    fn rho_one_closed_form() {
        let s = sm();
        let want = -s.c() * (-1f64).exp() / s.ln_b();
        assert!((s.rho_k(1, 1.0).unwrap() - want).abs() < 1e-15);
        assert!(s.phi_derivative(13, 0.0).is_err());
    }

    #[test]
    fn w_family_endpoints() {
        let w = sm().w_eta_family();
        assert_eq!(w.w(0.5), 1.0);
        assert_eq!(w.w(w.eta.exp()), 0.0);
        assert_eq!(w.upsilon(0.5), 0.0);
        assert_eq!(w.upsilon(2.0 * w.eta.exp()), 0.0);
        let total = GlRule::new(256).integrate(1.0, w.eta.exp(), |u| w.omega(u));
        assert!((total / w.eta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(Smoothing::new(SmoothingConfig { b: 1.0, ..Default::default() }).is_err());
        assert!(Smoothing::new(SmoothingConfig { eta: 0.5, ..Default::default() }).is_err());
    }
}
