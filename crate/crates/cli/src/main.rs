mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use hecke_core::afe::{fe_residual_with, zeta_d0_oracle, AfeConfig, AfeEngine, ZetaRecord};
use hecke_core::analytic::{Smoothing, SmoothingConfig};
use hecke_core::gauss::GaussInt;
use hecke_core::hecke::{coeff_table, CoeffMap};
use hecke_core::kloosterman::{
    bound_check, kloosterman_direct, poisson_verify, ramanujan_eval, CorpusRow, KloostermanQuery, PoissonVariant,
    TestFunction,
};
use hecke_core::moment::{
    annulus_signs, envelope_report, lemma17_identity, run_moment, MomentExperiment, MomentResult, DEFAULT_WATERMARK,
};
use hecke_core::{rng, suite};

/// Poisson checks pass when both sides agree to this.
const POISSON_TOL: f64 = 1e-9;
/// Direct and Ramanujan routes must agree to this.
const ROUTE_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(name = "hecke-lab", version, about = "Hecke zeta functions over Q(i), Gaussian Kloosterman sums and moment experiments")]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "HECKE_LAB_THREADS")]
    threads: Option<usize>,
    /// Seed for every randomized corpus.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate zeta(s, lambda^d) through the approximate functional equation.
    #[command(subcommand)]
    Zeta(ZetaCmd),
    #[command(subcommand)]
    Coeff(CoeffCmd),
    /// Kloosterman sums over Z[i], single queries or seeded corpus sweeps.
    Kloosterman(KloostermanArgs),
    #[command(subcommand)]
    Poisson(PoissonCmd),
    #[command(subcommand)]
    Smooth(SmoothCmd),
    #[command(subcommand)]
    Moment(MomentCmd),
    #[command(subcommand)]
    Lemma17(Lemma17Cmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum ZetaCmd {
    Eval(ZetaArgs),
    /// Residual of the functional equation at s.
    FeCheck(ZetaArgs),
}

#[derive(Args, Serialize)]
struct ZetaArgs {
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, default_value_t = 0.5)]
    sigma: f64,
    #[arg(long = "K", default_value_t = 4)]
    #[serde(rename = "K")]
    k: usize,
    /// Smoothing width of the sums.
    #[arg(long, default_value_t = hecke_core::afe::DEFAULT_AFE_B)]
    b: f64,
}

impl ZetaArgs {
    fn engine(&self) -> Result<AfeEngine> {
        let cfg = AfeConfig { k: self.k, smoothing: SmoothingConfig::with_b(self.b), ..AfeConfig::default() };
        Ok(AfeEngine::new(cfg)?)
    }

    fn s(&self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

#[derive(Subcommand)]
enum CoeffCmd {
    /// delta(lambda^d, n) for n = 1..=N.
    Table(CoeffArgs),
}

#[derive(Args, Serialize)]
struct CoeffArgs {
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    #[arg(long)]
    n: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum MethodArg {
    Direct,
    Ramanujan,
    Both,
}

fn parse_gauss(s: &str) -> Result<GaussInt, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `re,im`, got `{s}`"))?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}"));
    Ok(GaussInt::new(p(a)?, p(b)?))
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `x,y`, got `{s}`"))?;
    let p = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}"));
    Ok((p(a)?, p(b)?))
}

#[derive(Args, Serialize)]
struct KloostermanArgs {
    #[arg(long, value_parser = parse_gauss, allow_hyphen_values = true, default_value = "1,0")]
    alpha: GaussInt,
    #[arg(long, value_parser = parse_gauss, allow_hyphen_values = true, default_value = "0,0")]
    beta: GaussInt,
    #[arg(long, value_parser = parse_gauss, allow_hyphen_values = true, default_value = "1,1")]
    gamma: GaussInt,
    #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
    method: MethodArg,
    /// Sweep this many random triples instead of evaluating one query.
    #[arg(long)]
    corpus: Option<usize>,
    /// Largest modulus norm in a corpus sweep.
    #[arg(long, default_value_t = 400)]
    max_norm: u64,
    /// Largest component of alpha and beta in a corpus sweep.
    #[arg(long, default_value_t = 50)]
    coeff_bound: i64,
}

#[derive(Subcommand)]
enum PoissonCmd {
    Verify(PoissonArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum VariantArg {
    Plain,
    Progression,
    Kloosterman,
}

#[derive(Args, Serialize)]
struct PoissonArgs {
    #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
    variant: VariantArg,
    /// Width of the Gaussian test function.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "0,0")]
    tau: (f64, f64),
    #[arg(long, value_parser = parse_gauss, allow_hyphen_values = true, default_value = "0,0")]
    alpha: GaussInt,
    #[arg(long, value_parser = parse_gauss, allow_hyphen_values = true, default_value = "1,1")]
    gamma: GaussInt,
    /// Run the shipped parameter matrix instead.
    #[arg(long)]
    matrix: bool,
}

#[derive(Subcommand)]
enum SmoothCmd {
    /// rho, its log-derivatives and the dyadic pieces on a log-spaced grid.
    Table(SmoothArgs),
}

#[derive(Args, Serialize)]
struct SmoothArgs {
    #[arg(long, default_value_t = 0.25)]
    u_min: f64,
    #[arg(long, default_value_t = 4.0)]
    u_max: f64,
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[arg(long, default_value_t = std::f64::consts::SQRT_2)]
    b: f64,
    #[arg(long, default_value_t = std::f64::consts::LN_2 / 3.0)]
    eta: f64,
}

#[derive(Subcommand)]
enum MomentCmd {
    /// E(D; M, A) for one experiment or a list of them.
    Run(MomentArgs),
}

#[derive(Args, Serialize)]
struct MomentArgs {
    /// JSON file holding one experiment or an array of experiments.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Used with `A = U` when no config file is given.
    #[arg(long = "D")]
    #[serde(rename = "D")]
    d: Option<f64>,
    #[arg(long = "M", default_value_t = 1.0)]
    #[serde(rename = "M")]
    m: f64,
    #[arg(long, default_value_t = DEFAULT_WATERMARK)]
    watermark: f64,
}

#[derive(Subcommand)]
enum Lemma17Cmd {
    /// Both sides of the smoothed large-sieve identity.
    Check(Lemma17Args),
}

#[derive(Args, Serialize)]
struct Lemma17Args {
    #[arg(long = "D", default_value_t = 8.0)]
    #[serde(rename = "D")]
    d: f64,
    #[arg(long = "X", default_value_t = 8.0)]
    #[serde(rename = "X")]
    x: f64,
    #[arg(long = "Q", default_value_t = 0.5)]
    #[serde(rename = "Q")]
    q: f64,
    /// Coefficient map as JSON records; defaults to random signs on the annulus.
    #[arg(long)]
    coeffs: Option<PathBuf>,
    /// Exit with status 1 when relErr exceeds this.
    #[arg(long, default_value_t = 0.05)]
    tol: f64,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// The full invariant suite with per-check tolerances.
    All,
}

#[derive(Serialize)]
struct Resolved<'a, A: Serialize> {
    seed: u64,
    threads: usize,
    format: Format,
    #[serde(flatten)]
    args: &'a A,
}

struct Ctx {
    seed: u64,
    threads: usize,
    format: Format,
    out: Option<PathBuf>,
}

impl Ctx {
    fn config<'a, A: Serialize>(&self, args: &'a A) -> Resolved<'a, A> {
        Resolved { seed: self.seed, threads: self.threads, format: self.format, args }
    }

    fn emit<A: Serialize, R: Serialize>(&self, command: &str, args: &A, result: &R) -> Result<()> {
        let mut w = output::sink(self.out.as_deref())?;
        output::json(&mut *w, command, &self.config(args), result)
    }

    fn emit_rows<A: Serialize, R: Serialize>(&self, table: &str, args: &A, rows: &[R]) -> Result<()> {
        let mut w = output::sink(self.out.as_deref())?;
        output::csv(&mut *w, table, &self.config(args), rows)
    }

    fn json_only(&self, command: &str) -> Result<()> {
        if self.format == Format::Csv {
            bail!("`{command}` has no CSV form; use --format json");
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct ZetaEvalOut {
    #[serde(flatten)]
    record: ZetaRecord,
    t_cond: f64,
    /// Exact `zeta(s) L(s, chi_4)` for `d = 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleOut>,
}

#[derive(Serialize)]
struct OracleOut {
    value_re: f64,
    value_im: f64,
    abs_err: f64,
}

fn zeta_eval(ctx: &Ctx, a: &ZetaArgs) -> Result<bool> {
    let v = a.engine()?.eval(a.d, a.s())?;
    let record = ZetaRecord::new(a.d, a.s(), a.k, &v);
    if ctx.format == Format::Csv {
        ctx.emit_rows("zeta", a, &[record])?;
        return Ok(true);
    }
    let oracle = if a.d == 0 {
        let o = zeta_d0_oracle(a.s())?;
        Some(OracleOut { value_re: o.re, value_im: o.im, abs_err: (o - v.value).norm() })
    } else {
        None
    };
    ctx.emit("zeta eval", a, &ZetaEvalOut { record, t_cond: v.t_cond, oracle })?;
    Ok(true)
}

#[derive(Serialize)]
struct FeOut {
    residual: f64,
    tolerance: f64,
    pass: bool,
}

fn zeta_fe(ctx: &Ctx, a: &ZetaArgs) -> Result<bool> {
    ctx.json_only("zeta fe-check")?;
    let residual = fe_residual_with(&a.engine()?, a.d, a.s())?;
    let pass = residual <= 0.05;
    ctx.emit("zeta fe-check", a, &FeOut { residual, tolerance: 0.05, pass })?;
    Ok(pass)
}

#[derive(Serialize)]
struct CoeffRow {
    n: u64,
    delta: f64,
}

fn coeff(ctx: &Ctx, a: &CoeffArgs) -> Result<bool> {
    let t = coeff_table(a.d, a.n)?;
    let rows: Vec<CoeffRow> = (1..=a.n).map(|n| CoeffRow { n, delta: t.get(n) }).collect();
    match ctx.format {
        Format::Csv => ctx.emit_rows("coeff", a, &rows)?,
        Format::Json => ctx.emit("coeff table", a, &rows)?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct KloostermanOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    direct: Option<hecke_core::kloosterman::KloostermanResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ramanujan: Option<hecke_core::kloosterman::KloostermanResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    routes_agree: Option<bool>,
    bounds: hecke_core::kloosterman::BoundCheck,
}

fn kloosterman(ctx: &Ctx, a: &KloostermanArgs) -> Result<bool> {
    if let Some(count) = a.corpus {
        return kloosterman_corpus(ctx, a, count);
    }
    ctx.json_only("kloosterman")?;
    let q = KloostermanQuery { alpha: a.alpha, beta: a.beta, gamma: a.gamma };
    let want_direct = a.method != MethodArg::Ramanujan;
    let want_ram = a.method != MethodArg::Direct;
    if want_ram && !a.beta.divisible_by(a.gamma) {
        bail!("the Ramanujan route needs gamma | beta");
    }
    let direct = want_direct.then(|| kloosterman_direct(q)).transpose()?;
    let ramanujan = want_ram.then(|| ramanujan_eval(a.alpha, a.gamma)).transpose()?;
    let routes_agree = match (&direct, &ramanujan) {
        (Some(x), Some(y)) => Some((x.value - y.value).abs() <= ROUTE_TOL),
        _ => None,
    };
    let reference = direct.as_ref().or(ramanujan.as_ref()).expect("one route runs");
    let bounds = bound_check(q, reference)?;
    let pass = routes_agree.unwrap_or(true) && bounds.trivial_ok && bounds.weil_ok;
    ctx.emit("kloosterman", a, &KloostermanOut { direct, ramanujan, routes_agree, bounds })?;
    Ok(pass)
}

fn kloosterman_corpus(ctx: &Ctx, a: &KloostermanArgs, count: usize) -> Result<bool> {
    use rayon::prelude::*;
    let mut r = rng::stream(ctx.seed, 0);
    let queries: Vec<KloostermanQuery> = (0..count)
        .map(|_| {
            let gamma = rng::gauss_nonzero_norm_le(&mut r, a.max_norm);
            let alpha = rng::gauss_in_box(&mut r, a.coeff_bound);
            KloostermanQuery { alpha, beta: rng::gauss_in_box(&mut r, a.coeff_bound), gamma }
        })
        .collect();
    let rows: Vec<(CorpusRow, bool)> = queries
        .par_iter()
        .map(|&q| {
            let v = kloosterman_direct(q)?;
            let b = bound_check(q, &v)?;
            Ok((CorpusRow::new(q, v.value, b.ratio_weil), b.trivial_ok && b.weil_ok))
        })
        .collect::<Result<_, hecke_core::kloosterman::KloostermanError>>()?;
    let pass = rows.iter().all(|r| r.1);
    let rows: Vec<CorpusRow> = rows.into_iter().map(|r| r.0).collect();
    match ctx.format {
        Format::Csv => ctx.emit_rows("kloosterman-corpus", a, &rows)?,
        Format::Json => ctx.emit("kloosterman corpus", a, &rows)?,
    }
    Ok(pass)
}

#[derive(Serialize)]
struct PoissonOut {
    function: String,
    variant: PoissonVariant,
    check: hecke_core::kloosterman::PoissonCheck,
    pass: bool,
}

fn poisson(ctx: &Ctx, a: &PoissonArgs) -> Result<bool> {
    ctx.json_only("poisson verify")?;
    let cases = if a.matrix {
        suite::poisson_matrix()
    } else {
        let v = match a.variant {
            VariantArg::Plain => PoissonVariant::Twisted { tau_re: a.tau.0, tau_im: a.tau.1 },
            VariantArg::Progression => PoissonVariant::Progression { alpha: a.alpha, gamma: a.gamma },
            VariantArg::Kloosterman => PoissonVariant::Kloosterman { alpha: a.alpha, gamma: a.gamma },
        };
        vec![(TestFunction::Gaussian { sigma0: a.sigma }, v)]
    };
    let mut outs = Vec::new();
    for (f, v) in cases {
        let check = poisson_verify(&f, v)?;
        outs.push(PoissonOut { function: format!("{f:?}"), variant: v, check, pass: check.abs_err <= POISSON_TOL });
    }
    let pass = outs.iter().all(|o| o.pass);
    ctx.emit("poisson verify", a, &outs)?;
    Ok(pass)
}

#[derive(Serialize)]
struct SmoothRow {
    u: f64,
    rho: f64,
    rho_1: f64,
    rho_2: f64,
    rho_3: f64,
    rho_4: f64,
    w_eta: f64,
    upsilon_eta: f64,
}

fn smooth(ctx: &Ctx, a: &SmoothArgs) -> Result<bool> {
    if !(a.u_min > 0.0 && a.u_max > a.u_min && a.points >= 2) {
        bail!("need 0 < u-min < u-max and at least 2 points");
    }
    let sm = Smoothing::new(SmoothingConfig { b: a.b, eta: a.eta, ..SmoothingConfig::default() })?;
    let fam = sm.w_eta_family();
    let ratio = (a.u_max / a.u_min).ln();
    let mut rows = Vec::with_capacity(a.points);
    for j in 0..a.points {
        let u = a.u_min * (ratio * j as f64 / (a.points - 1) as f64).exp();
        rows.push(SmoothRow {
            u,
            rho: sm.rho(u),
            rho_1: sm.rho_k(1, u)?,
            rho_2: sm.rho_k(2, u)?,
            rho_3: sm.rho_k(3, u)?,
            rho_4: sm.rho_k(4, u)?,
            w_eta: fam.w(u),
            upsilon_eta: fam.upsilon(u),
        });
    }
    match ctx.format {
        Format::Csv => ctx.emit_rows("smooth", a, &rows)?,
        Format::Json => ctx.emit("smooth table", a, &rows)?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct MomentRow {
    #[serde(rename = "D")]
    d: f64,
    #[serde(rename = "M")]
    m: f64,
    #[serde(rename = "E")]
    e: f64,
    e_error_bar: f64,
    envelope_thm1_14: f64,
    envelope_thm1_15: f64,
    envelope_sarnak: f64,
    ratio_thm1_14: f64,
    ratio_thm1_15: f64,
    ratio_sarnak: f64,
    flagged: bool,
}

#[derive(Serialize)]
struct MomentEcho<'a> {
    #[serde(flatten)]
    args: &'a MomentArgs,
    experiments: &'a [MomentExperiment],
}

fn load_experiments(a: &MomentArgs) -> Result<Vec<MomentExperiment>> {
    match (&a.config, a.d) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            Ok(if value.is_array() { serde_json::from_value(value)? } else { vec![serde_json::from_value(value)?] })
        }
        (None, Some(d)) => Ok(vec![MomentExperiment::unit(d, a.m)]),
        (None, None) => bail!("give --config or --D"),
    }
}

fn moment(ctx: &Ctx, a: &MomentArgs) -> Result<bool> {
    let exps = load_experiments(a)?;
    if exps.is_empty() {
        bail!("no experiments in the config");
    }
    let results: Vec<MomentResult> = exps.iter().map(run_moment).collect::<Result<_, _>>()?;
    let report = envelope_report(&results, a.watermark);
    let pass = report.iter().all(|r| !r.flagged);
    match ctx.format {
        Format::Csv => {
            let rows: Vec<MomentRow> = results
                .iter()
                .zip(&report)
                .map(|(r, row)| MomentRow {
                    d: row.d,
                    m: row.m,
                    e: r.e,
                    e_error_bar: r.e_error_bar,
                    envelope_thm1_14: r.envelope_thm1_14,
                    envelope_thm1_15: r.envelope_thm1_15,
                    envelope_sarnak: r.envelope_sarnak,
                    ratio_thm1_14: row.ratio_thm1_14,
                    ratio_thm1_15: row.ratio_thm1_15,
                    ratio_sarnak: row.ratio_sarnak,
                    flagged: row.flagged,
                })
                .collect();
            ctx.emit_rows("moment", &MomentEcho { args: a, experiments: &exps }, &rows)?;
        }
        Format::Json => ctx.emit("moment run", a, &results)?,
    }
    Ok(pass)
}

#[derive(Serialize)]
struct Lemma17Out {
    #[serde(flatten)]
    result: hecke_core::moment::Lemma17Result,
    support_size: usize,
    pass: bool,
}

fn lemma17(ctx: &Ctx, a: &Lemma17Args) -> Result<bool> {
    ctx.json_only("lemma17 check")?;
    let c = match &a.coeffs {
        Some(path) => CoeffMap::from_json(&fs::read_to_string(path)?, None)?,
        None => annulus_signs(a.x, ctx.seed),
    };
    let result = lemma17_identity(a.d, a.x, &c, a.q, &SmoothingConfig::default())?;
    let pass = result.rel_err <= a.tol;
    ctx.emit("lemma17 check", a, &Lemma17Out { result, support_size: c.len(), pass })?;
    Ok(pass)
}

fn verify(ctx: &Ctx) -> Result<bool> {
    let report = suite::verify_all(ctx.seed);
    let mut w = output::sink(ctx.out.as_deref())?;
    match ctx.format {
        Format::Json => output::json(&mut *w, "verify all", &ctx.config(&()), &report)?,
        Format::Csv => output::csv(&mut *w, "verify", &ctx.config(&()), &report.checks)?,
    }
    if ctx.out.is_some() || ctx.format == Format::Csv {
        eprint!("{}", report.summary());
    } else {
        print!("{}", report.summary());
    }
    Ok(report.all_passed())
}

fn run(cli: Cli) -> Result<bool> {
    let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        bail!("--threads must be positive");
    }
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    let ctx = Ctx { seed: cli.seed, threads, format: cli.format, out: cli.out };
    match &cli.command {
        Command::Zeta(ZetaCmd::Eval(a)) => zeta_eval(&ctx, a),
        Command::Zeta(ZetaCmd::FeCheck(a)) => zeta_fe(&ctx, a),
        Command::Coeff(CoeffCmd::Table(a)) => coeff(&ctx, a),
        Command::Kloosterman(a) => kloosterman(&ctx, a),
        Command::Poisson(PoissonCmd::Verify(a)) => poisson(&ctx, a),
        Command::Smooth(SmoothCmd::Table(a)) => smooth(&ctx, a),
        Command::Moment(MomentCmd::Run(a)) => moment(&ctx, a),
        Command::Lemma17(Lemma17Cmd::Check(a)) => lemma17(&ctx, a),
        Command::Verify(VerifyCmd::All) => verify(&ctx),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
