//! Weighted fourth moment `E(D; M, A)` at desk scale, envelope reports, and
//! the smoothed second-moment identity.

mod lemma17;

pub use lemma17::{annulus_signs, lemma17_identity, Lemma17Result};

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::afe::{AfeConfig, AfeEngine, AfeError};
use crate::analytic::quadrature::simpson_grid;
use crate::analytic::{t_of, AnalyticError};
use crate::gauss::GaussInt;
use crate::hecke::{dirichlet_poly, CoeffMap, HeckeError};
use crate::kloosterman::KloostermanError;

/// Largest `D` accepted by [`run_moment`].
pub const DESK_CAP: f64 = 24.0;
pub const DEFAULT_THETA: f64 = 2.0 / 9.0;
pub const DEFAULT_EPS: f64 = 0.1;
pub const DEFAULT_WATERMARK: f64 = 1e4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MomentError {
    #[error("{what} = {value} exceeds the desk cap {cap}")]
    CapExceeded { what: &'static str, value: f64, cap: f64 },
    #[error("invalid experiment: {0}")]
    Config(String),
    #[error("coefficient at {key} lies outside the annulus norm/X^2 in (1/2, 2) for X = {x}")]
    Support { key: GaussInt, x: f64 },
    #[error("coefficient map is not invariant under multiplication by i at {key}")]
    Symmetry { key: GaussInt },
    #[error(transparent)]
    Afe(#[from] AfeError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Kloosterman(#[from] KloostermanError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadRule {
    Simpson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    /// Upper bound on the step; the run may use a finer one.
    pub step: f64,
    pub rule: QuadRule,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { step: 0.25, rule: QuadRule::Simpson }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentExperiment {
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "A")]
    pub a: CoeffMap,
    #[serde(default)]
    pub quad: QuadConfig,
    #[serde(default)]
    pub afe: AfeConfig,
    #[serde(default = "default_theta")]
    pub theta: f64,
    #[serde(default = "default_eps")]
    pub eps: f64,
}

fn default_theta() -> f64 {
    DEFAULT_THETA
}

fn default_eps() -> f64 {
    DEFAULT_EPS
}

impl MomentExperiment {
    /// `A = U`, the indicator of `mu = 1`.
    pub fn unit(d: f64, m: f64) -> Self {
        MomentExperiment {
            d,
            m,
            a: CoeffMap::unit_indicator(),
            quad: QuadConfig::default(),
            afe: AfeConfig::default(),
            theta: DEFAULT_THETA,
            eps: DEFAULT_EPS,
        }
    }

    pub fn validate(&self) -> Result<(), MomentError> {
        if !(self.d >= 1.0 && self.m >= 1.0) {
            return Err(MomentError::Config(format!("need D >= 1 and M >= 1, got D = {}, M = {}", self.d, self.m)));
        }
        if self.d > DESK_CAP {
            return Err(MomentError::CapExceeded { what: "D", value: self.d, cap: DESK_CAP });
        }
        if self.m > self.d {
            return Err(MomentError::CapExceeded { what: "M", value: self.m, cap: self.d });
        }
        if !(0.0..=2.0 / 9.0).contains(&self.theta) {
            return Err(MomentError::Config(format!("theta = {} outside [0, 2/9]", self.theta)));
        }
        if !(self.quad.step > 0.0) || !(self.eps > 0.0) {
            return Err(MomentError::Config("step and eps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ratios {
    pub thm1_14: f64,
    pub thm1_15: f64,
    pub sarnak: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentResult {
    #[serde(rename = "E")]
    pub e: f64,
    /// First-order propagation of the per-point AFE error estimates.
    pub e_error_bar: f64,
    pub per_d: Vec<(i64, f64)>,
    pub envelope_thm1_14: f64,
    pub envelope_thm1_15: f64,
    pub envelope_sarnak: f64,
    pub ratios: Ratios,
    /// Largest relative gap between the `d` and `-d` integrals.
    pub symmetry_defect: f64,
    pub step: f64,
    pub runtime_sec: f64,
    pub config_echo: MomentExperiment,
}

/// `(D^{2+eps} + (1 + D M^{-3/2})^theta D^{1+eps} M^2) sum |A|^2`.
pub fn envelope_14(d: f64, m: f64, l2: f64, theta: f64, eps: f64) -> f64 {
    (d.powf(2.0 + eps) + (1.0 + d * m.powf(-1.5)).powf(theta) * d.powf(1.0 + eps) * m * m) * l2
}

/// `D^{2+eps} sum |A|^2 + (1 + D M^{-2})^theta D^{1+eps} M^3 max |A|^2`.
pub fn envelope_15(d: f64, m: f64, l2: f64, max2: f64, theta: f64, eps: f64) -> f64 {
    d.powf(2.0 + eps) * l2 + (1.0 + d / (m * m)).powf(theta) * d.powf(1.0 + eps) * m.powi(3) * max2
}

/// `D^2 ln^4(D + 2)`.
pub fn envelope_sarnak(d: f64) -> f64 {
    d * d * (d + 2.0).ln().powi(4)
}

fn ratio(e: f64, env: f64) -> f64 {
    if e == 0.0 {
        0.0
    } else {
        e / env
    }
}

/// Simpson step for a run: the configured bound, capped by `0.25` and by
/// `pi / (4 sqrt(T_max))`.
pub fn moment_step(exp: &MomentExperiment) -> f64 {
    let dmax = exp.d.floor() as i64;
    let t_max = t_of(dmax, exp.d);
    exp.quad.step.min(0.25).min(std::f64::consts::PI / (4.0 * t_max.sqrt()))
}

struct PerD {
    d: i64,
    integral: f64,
    err: f64,
}

fn integrate_d(engine: &AfeEngine, a: &CoeffMap, d: i64, dd: f64, n: usize) -> Result<PerD, MomentError> {
    // the clamped split at tiny T can exceed the balanced one at |t| = D
    let mut len = 0.0f64;
    for t in [0.0, dd] {
        let (x, y) = engine.resolve_split(t_of(d, t))?;
        len = len.max(x).max(y);
    }
    let table = engine.table_for(d, len, len)?;
    let (ts, ws) = simpson_grid(-dd, dd, n);
    let (mut integral, mut err) = (0.0, 0.0);
    for (t, w) in ts.into_iter().zip(ws) {
        let s = Complex64::new(0.5, t);
        let t_cond = t_of(d, t);
        let (x, y) = engine.resolve_split(t_cond)?;
        let z = engine.eval_with(d, s, t_cond, x, y, &table)?;
        let p2 = dirichlet_poly(a, Complex64::new(0.0, t), d).norm_sqr();
        let zn = z.value.norm();
        integral += w * zn.powi(4) * p2;
        err += w * 4.0 * zn.powi(3) * z.err_estimate * p2;
    }
    Ok(PerD { d, integral, err })
}

pub fn run_moment(exp: &MomentExperiment) -> Result<MomentResult, MomentError> {
    let start = Instant::now();
    exp.validate()?;
    let engine = AfeEngine::new(exp.afe)?;
    let a = exp.a.restricted(exp.m.floor() as u64);
    let step = moment_step(exp);
    let n = {
        let k = (2.0 * exp.d / step).ceil() as usize;
        k + k % 2
    };
    let dmax = exp.d.floor() as i64;
    let rows: Vec<PerD> = if a.is_empty() {
        (-dmax..=dmax).map(|d| PerD { d, integral: 0.0, err: 0.0 }).collect()
    } else {
        (-dmax..=dmax)
            .into_par_iter()
            .map(|d| integrate_d(&engine, &a, d, exp.d, n))
            .collect::<Result<_, _>>()?
    };
    // fixed d-order reduction keeps the result independent of the pool size
    let e: f64 = rows.iter().map(|r| r.integral).sum();
    let e_error_bar: f64 = rows.iter().map(|r| r.err).sum();
    let symmetry_defect = rows
        .iter()
        .filter(|r| r.d > 0)
        .map(|r| {
            let mirror = rows.iter().find(|q| q.d == -r.d).expect("range is symmetric").integral;
            (r.integral - mirror).abs() / r.integral.abs().max(mirror.abs()).max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max);

    let (l2, max2) = (a.l2_squared(), a.max_abs_squared());
    let env14 = envelope_14(exp.d, exp.m, l2, exp.theta, exp.eps);
    let env15 = envelope_15(exp.d, exp.m, l2, max2, exp.theta, exp.eps);
    let envs = envelope_sarnak(exp.d);
    Ok(MomentResult {
        e,
        e_error_bar,
        per_d: rows.iter().map(|r| (r.d, r.integral)).collect(),
        envelope_thm1_14: env14,
        envelope_thm1_15: env15,
        envelope_sarnak: envs,
        ratios: Ratios { thm1_14: ratio(e, env14), thm1_15: ratio(e, env15), sarnak: ratio(e, envs) },
        symmetry_defect,
        step: 2.0 * exp.d / n as f64,
        runtime_sec: start.elapsed().as_secs_f64(),
        config_echo: exp.clone(),
    })
}

/// [`run_moment`] inside a dedicated pool of `threads` workers.
pub fn run_moment_threads(exp: &MomentExperiment, threads: usize) -> Result<MomentResult, MomentError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| MomentError::Config(e.to_string()))?;
    pool.install(|| run_moment(exp))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeRow {
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub ratio_thm1_14: f64,
    pub ratio_thm1_15: f64,
    pub ratio_sarnak: f64,
    /// Some ratio exceeds the watermark, which points at a bug rather than
    /// at the size of an unknown constant.
    pub flagged: bool,
}

pub fn envelope_report(results: &[MomentResult], watermark: f64) -> Vec<EnvelopeRow> {
    results
        .iter()
        .map(|r| {
            let rs = r.ratios;
            let finite = rs.thm1_14.is_finite() && rs.thm1_15.is_finite() && rs.sarnak.is_finite();
            EnvelopeRow {
                d: r.config_echo.d,
                m: r.config_echo.m,
                e: r.e,
                ratio_thm1_14: rs.thm1_14,
                ratio_thm1_15: rs.thm1_15,
                ratio_sarnak: rs.sarnak,
                flagged: !finite || rs.thm1_14.max(rs.thm1_15).max(rs.sarnak) > watermark,
            }
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(MomentExperiment::unit(30.0, 1.0).validate().is_err());
        assert!(MomentExperiment::unit(4.0, 5.0).validate().is_err());
        let mut e = MomentExperiment::unit(4.0, 1.0);
        e.theta = 0.3;
        assert!(e.validate().is_err());
        assert!(MomentExperiment::unit(4.0, 1.0).validate().is_ok());
    }

    #[test]
    fn empty_coefficients_give_zero() {
        let mut e = MomentExperiment::unit(2.0, 1.0);
        e.a = CoeffMap::new(1);
        let r = run_moment(&e).unwrap();
        assert_eq!(r.e, 0.0);
        assert_eq!(r.ratios, Ratios { thm1_14: 0.0, thm1_15: 0.0, sarnak: 0.0 });
    }

    #[test]
    fn small_run_is_symmetric_and_positive() {
        let r = run_moment(&MomentExperiment::unit(2.0, 1.0)).unwrap();
        assert!(r.e > 0.0);
        assert_eq!(r.per_d.len(), 5);
        assert!(r.symmetry_defect < 1e-6, "{}", r.symmetry_defect);
        let sum: f64 = r.per_d.iter().map(|p| p.1).sum();
        assert_eq!(sum, r.e);
    }

    #[test]
    fn slope_of_a_power_law() {
        let pts: Vec<(f64, f64)> = [2.0, 3.0, 5.0].iter().map(|&x: &f64| (x, 3.0 * x.powf(2.2))).collect();
        assert!((log_log_slope(&pts) - 2.2).abs() < 1e-12);
    }
}
