//! Randomized experiment harness: generates reciprocal matrices by
//! multiplicatively disturbing consistent ones, sweeps a disturbance grid,
//! and records inconsistency, divergence, and envelope-check outcomes per
//! sample.
//!
//! Determinism contract: a sample's entire random stream derives from
//! `(master_seed, d_index, sample_index)` through a fixed 64-bit mix, so the
//! record list and the CSV bytes are identical across runs and across thread
//! counts.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::BoundCheckReport;
use crate::error::{Error, Result};
use crate::inconsistency::{ci_from_lambda, koczkodaj_ki, RiTable};
use crate::matrix::{PcMatrix, PriorityVector};
use crate::priority::{evm, gmm, EvmOptions};
use crate::similarity::kendall_distance;

/// Distribution of the ranking vector behind each consistent base matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// Independent draws uniform on (0, 1], normalized.
    Uniform01,
    /// Independent draws log-uniform on [1/9, 9], normalized.
    LoguniformScale,
}

/// Distribution of the disturbance factor r on [1/d, d].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorMode {
    /// r uniform on [1/d, d].
    Uniform,
    /// ln r uniform on [-ln d, ln d], treating r and 1/r symmetrically.
    Loguniform,
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightMode::Uniform01 => "uniform01",
            WeightMode::LoguniformScale => "loguniform_scale",
        })
    }
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform01" => Ok(WeightMode::Uniform01),
            "loguniform_scale" | "loguniform" => Ok(WeightMode::LoguniformScale),
            other => Err(Error::Argument(format!("unknown weight mode '{other}'"))),
        }
    }
}

impl fmt::Display for FactorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorMode::Uniform => "uniform",
            FactorMode::Loguniform => "loguniform",
        })
    }
}

impl FromStr for FactorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(FactorMode::Uniform),
            "loguniform" => Ok(FactorMode::Loguniform),
            other => Err(Error::Argument(format!("unknown factor mode '{other}'"))),
        }
    }
}

/// How one random matrix is produced.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorConfig {
    pub n: usize,
    /// Disturbance level, >= 1; 1 leaves the base matrix consistent.
    pub d: f64,
    pub weight_mode: WeightMode,
    pub factor_mode: FactorMode,
    /// Clamp disturbed entries to [1/9, 9] after multiplication.
    pub clamp_to_scale: bool,
}

impl GeneratorConfig {
    pub fn new(n: usize, d: f64) -> Result<Self> {
        let cfg = GeneratorConfig {
            n,
            d,
            weight_mode: WeightMode::Uniform01,
            factor_mode: FactorMode::Uniform,
            clamp_to_scale: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::Domain(format!(
                "generator order must be >= 3, got {}",
                self.n
            )));
        }
        if !(self.d >= 1.0 && self.d.is_finite()) {
            return Err(Error::Domain(format!(
                "disturbance level must be >= 1, got {}",
                self.d
            )));
        }
        Ok(())
    }
}

/// A full grid sweep: `samples_per_d` matrices at every level in `d_grid`.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub n: usize,
    pub d_grid: Vec<f64>,
    pub samples_per_d: usize,
    pub master_seed: u64,
    /// Template for per-sample generation; its `d` is replaced by each grid
    /// value and its `n` must match the experiment order.
    pub generator: GeneratorConfig,
}

impl Default for ExperimentConfig {
    /// Desk-scale defaults: order 4, d from 1.0 to 10.0 in steps of 0.25,
    /// 200 samples per level.
    fn default() -> Self {
        ExperimentConfig {
            n: 4,
            d_grid: default_d_grid(),
            samples_per_d: 200,
            master_seed: 1,
            generator: GeneratorConfig::new(4, 1.0).expect("valid default generator"),
        }
    }
}

/// 1.0, 1.25, ..., 10.0.
pub fn default_d_grid() -> Vec<f64> {
    (0..=36).map(|i| 1.0 + 0.25 * i as f64).collect()
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.generator.validate()?;
        if self.generator.n != self.n {
            return Err(Error::Shape(format!(
                "generator order {} differs from experiment order {}",
                self.generator.n, self.n
            )));
        }
        if self.d_grid.is_empty() {
            return Err(Error::Argument("d grid must be nonempty".to_string()));
        }
        for &d in &self.d_grid {
            if !(d >= 1.0 && d.is_finite()) {
                return Err(Error::Domain(format!("grid level {d} must be >= 1")));
            }
        }
        if self.samples_per_d == 0 {
            return Err(Error::Argument("samples_per_d must be >= 1".to_string()));
        }
        Ok(())
    }

    /// Parses flat `key = value` text. Keys: `n`, `d_grid`, `samples_per_d`,
    /// `master_seed`, `weight_mode`, `factor_mode`, `clamp_to_scale`. A grid
    /// is either comma-separated values or `start:step:end`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (idx, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or_else(|| Error::Parse {
                line: idx + 1,
                column: 1,
                message: format!("expected 'key = value', got '{trimmed}'"),
            })?;
            let key = key.trim();
            let value = value.trim();
            let bad = |message: String| Error::Parse {
                line: idx + 1,
                column: 1,
                message,
            };
            match key {
                "n" => {
                    cfg.n = value
                        .parse()
                        .map_err(|_| bad(format!("'{value}' is not an order")))?;
                }
                "d_grid" => cfg.d_grid = parse_d_grid(value)?,
                "samples_per_d" => {
                    cfg.samples_per_d = value
                        .parse()
                        .map_err(|_| bad(format!("'{value}' is not a sample count")))?;
                }
                "master_seed" => {
                    cfg.master_seed = value
                        .parse()
                        .map_err(|_| bad(format!("'{value}' is not a seed")))?;
                }
                "weight_mode" => cfg.generator.weight_mode = value.parse()?,
                "factor_mode" => cfg.generator.factor_mode = value.parse()?,
                "clamp_to_scale" => {
                    cfg.generator.clamp_to_scale = match value {
                        "true" | "1" => true,
                        "false" | "0" => false,
                        _ => return Err(bad(format!("'{value}' is not a boolean"))),
                    };
                }
                other => return Err(bad(format!("unknown key '{other}'"))),
            }
        }
        cfg.generator.n = cfg.n;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses `start:step:end` (inclusive) or a comma-separated list.
pub fn parse_d_grid(text: &str) -> Result<Vec<f64>> {
    let parse_one = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Argument(format!("'{s}' is not a grid value")))
    };
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let start = parse_one(parts[0])?;
        let step = parse_one(parts[1])?;
        let end = parse_one(parts[2])?;
        if !step.is_finite() || step <= 0.0 || end < start {
            return Err(Error::Argument(format!("bad grid range '{text}'")));
        }
        let count = ((end - start) / step + 0.5).floor() as usize;
        return Ok((0..=count).map(|i| start + step * i as f64).collect());
    }
    text.split(',').map(parse_one).collect()
}

/// One generated sample: inputs, measured indices, and envelope outcomes.
/// `evm_ok` is false only when the eigensolver failed for this sample, in
/// which case the measured fields are NaN and every flag is false. `cr` is
/// NaN when the default random-index table has no entry for the order.
#[derive(Debug, Clone)]
pub struct ExperimentRecord {
    pub d: f64,
    pub sample_index: usize,
    pub seed: u64,
    pub ci: f64,
    pub cr: f64,
    pub ki: f64,
    pub md: f64,
    pub cheb: f64,
    pub kendall: usize,
    pub comp: f64,
    pub comp_lower: f64,
    pub comp_upper: f64,
    pub comp_max: f64,
    pub kappa: f64,
    pub chain_ok: bool,
    pub md_ok: bool,
    pub cheb_ok: bool,
    pub mean_ok: bool,
    pub evm_ok: bool,
}

/// SplitMix64 finalizer; the stable scrambler behind seed derivation.
fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-sample seed; independent of scheduling by construction.
pub fn sample_seed(master_seed: u64, d_index: usize, sample_index: usize) -> u64 {
    let mut h = mix64(master_seed);
    h = mix64(h ^ d_index as u64);
    mix64(h ^ sample_index as u64)
}

/// A random sum-1 vector of `n` positive weights; deterministic per seed.
pub fn random_weight_vector(n: usize, mode: WeightMode, rng_seed: u64) -> Result<PriorityVector> {
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 weights, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let raw: Vec<f64> = (0..n)
        .map(|_| match mode {
            // 1 - u maps [0, 1) onto (0, 1].
            WeightMode::Uniform01 => 1.0 - rng.random::<f64>(),
            WeightMode::LoguniformScale => {
                let ln9 = 9.0_f64.ln();
                rng.random_range(-ln9..=ln9).exp()
            }
        })
        .collect();
    PriorityVector::normalized(raw)
}

/// Multiplies each upper-triangle entry by a random factor on [1/d, d] and
/// mirrors the reciprocal below the diagonal; `d = 1` returns the input
/// unchanged. With `clamp`, disturbed entries are clamped to [1/9, 9].
pub fn disturb(
    c: &PcMatrix,
    d: f64,
    mode: FactorMode,
    clamp: bool,
    rng_seed: u64,
) -> Result<PcMatrix> {
    if !(d >= 1.0 && d.is_finite()) {
        return Err(Error::Domain(format!(
            "disturbance level must be >= 1, got {d}"
        )));
    }
    if d == 1.0 {
        return Ok(c.clone());
    }
    let n = c.order();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let r = match mode {
                FactorMode::Uniform => rng.random_range(1.0 / d..=d),
                FactorMode::Loguniform => {
                    let ln_d = d.ln();
                    rng.random_range(-ln_d..=ln_d).exp()
                }
            };
            let mut e = c.get(i, j) * r;
            if clamp {
                e = e.clamp(1.0 / 9.0, 9.0);
            }
            upper.push(e);
        }
    }
    PcMatrix::from_upper_triangle(n, upper)
}

/// One random matrix: a consistent base induced by a random ranking vector,
/// then disturbed at level `d`. The weight and disturbance streams are split
/// off `seed` deterministically.
pub fn generate_matrix(gen: &GeneratorConfig, seed: u64) -> Result<PcMatrix> {
    gen.validate()?;
    let w = random_weight_vector(gen.n, gen.weight_mode, mix64(seed ^ 1))?;
    let base = PcMatrix::induced(&w);
    disturb(&base, gen.d, gen.factor_mode, gen.clamp_to_scale, mix64(seed ^ 2))
}

fn run_sample(gen: &GeneratorConfig, ri: &RiTable, d: f64, sample_index: usize, seed: u64) -> ExperimentRecord {
    let n = gen.n;
    let matrix = generate_matrix(gen, seed).expect("config validated before the sweep");

    let (ki, _) = koczkodaj_ki(&matrix).expect("order > 2 validated by config");
    let kappa = 1.0 - ki;

    let ev = match evm(&matrix, EvmOptions::default()) {
        Ok(ev) => ev,
        Err(_) => {
            return ExperimentRecord {
                d,
                sample_index,
                seed,
                ci: f64::NAN,
                cr: f64::NAN,
                ki,
                md: f64::NAN,
                cheb: f64::NAN,
                kendall: 0,
                comp: f64::NAN,
                comp_lower: f64::NAN,
                comp_upper: f64::NAN,
                comp_max: f64::NAN,
                kappa,
                chain_ok: false,
                md_ok: false,
                cheb_ok: false,
                mean_ok: false,
                evm_ok: false,
            }
        }
    };
    let gm = gmm(&matrix);

    let ci = ci_from_lambda(ev.lambda_max, n);
    let cr = ri.get(n).map_or(f64::NAN, |r| ci / r);
    let kendall = kendall_distance(&ev.weights, &gm).expect("equal lengths");
    let check = BoundCheckReport::from_parts(n, ki, &ev.weights, &gm).expect("equal lengths");

    ExperimentRecord {
        d,
        sample_index,
        seed,
        ci,
        cr,
        ki,
        md: check.observed.md,
        cheb: check.observed.cheb,
        kendall,
        comp: check.observed.comp,
        comp_lower: check.observed.comp_lower,
        comp_upper: check.observed.comp_upper,
        comp_max: check.observed.comp_max,
        kappa,
        chain_ok: check.chain_ok,
        md_ok: check.md_ok,
        cheb_ok: check.cheb_ok,
        mean_ok: check.mean_ok,
        evm_ok: true,
    }
}

/// Runs the sweep. Samples execute in parallel; records come back ordered by
/// `(d index, sample index)` with seeds that do not depend on scheduling.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    cfg.validate()?;
    let ri = RiTable::default();
    let jobs: Vec<(usize, usize)> = (0..cfg.d_grid.len())
        .flat_map(|di| (0..cfg.samples_per_d).map(move |s| (di, s)))
        .collect();
    let records = jobs
        .into_par_iter()
        .map(|(di, s)| {
            let d = cfg.d_grid[di];
            let mut gen = cfg.generator;
            gen.d = d;
            run_sample(&gen, &ri, d, s, sample_seed(cfg.master_seed, di, s))
        })
        .collect();
    Ok(records)
}

/// Aggregates for one disturbance level.
#[derive(Debug, Clone)]
pub struct LevelSummary {
    pub d: f64,
    pub samples: usize,
    pub mean_ci: f64,
    pub mean_ki: f64,
    pub mean_md: f64,
    pub max_md: f64,
    pub mean_cheb: f64,
    pub max_cheb: f64,
    pub mean_comp_upper: f64,
    pub max_comp_upper: f64,
}

/// Whole-run aggregates. The slack minima quantify how far the observations
/// stayed inside their envelopes over the entire run.
#[derive(Debug, Clone)]
pub struct ExperimentSummary {
    pub per_level: Vec<LevelSummary>,
    pub total_records: usize,
    /// Records with any envelope flag false (excluding eigensolver failures).
    pub bound_violations: usize,
    pub evm_failures: usize,
    pub min_slack_chain: f64,
    pub min_slack_md: f64,
    pub min_slack_cheb: f64,
    pub min_slack_mean: f64,
    /// Rank correlation between d and the per-level mean KI.
    pub spearman_d_mean_ki: f64,
}

/// Reduces a record list (ordered fold, same result on every run). Records do
/// not carry the matrix order, so it is passed in for the Manhattan-interval
/// slack.
pub fn summarize(records: &[ExperimentRecord], n: usize) -> Result<ExperimentSummary> {
    if records.is_empty() {
        return Err(Error::Argument("no records to summarize".to_string()));
    }
    if n < 3 {
        return Err(Error::Argument(format!("order must be >= 3, got {n}")));
    }

    let mut per_level: Vec<LevelSummary> = Vec::new();
    let mut violations = 0;
    let mut failures = 0;
    let mut min_chain = f64::INFINITY;
    let mut min_md = f64::INFINITY;
    let mut min_cheb = f64::INFINITY;
    let mut min_mean = f64::INFINITY;

    for r in records {
        if !r.evm_ok {
            failures += 1;
            continue;
        }
        if !(r.chain_ok && r.md_ok && r.cheb_ok && r.mean_ok) {
            violations += 1;
        }

        let compat_low = r.kappa * r.kappa;
        let compat_high = (1.0 / (r.kappa * r.kappa)).min(1e12);
        let chain = (r.comp_lower - compat_low)
            .min(r.comp - r.comp_lower)
            .min(r.comp_upper - r.comp)
            .min(r.comp_max - r.comp_upper)
            .min(compat_high - r.comp_max);
        min_chain = min_chain.min(chain);
        min_cheb = min_cheb.min(compat_high - 1.0 - r.cheb);
        let nf = n as f64;
        let md_slack = (r.md - nf * (compat_low - 1.0)).min(nf * (compat_high - 1.0) - r.md);
        min_md = min_md.min(md_slack);
        let mean_md = r.md / nf;
        min_mean = min_mean.min((mean_md - (compat_low - 1.0)).min(compat_high - 1.0 - mean_md));

        match per_level.last_mut() {
            Some(level) if level.d == r.d => {
                level.samples += 1;
                level.mean_ci += r.ci;
                level.mean_ki += r.ki;
                level.mean_md += r.md;
                level.max_md = level.max_md.max(r.md);
                level.mean_cheb += r.cheb;
                level.max_cheb = level.max_cheb.max(r.cheb);
                level.mean_comp_upper += r.comp_upper;
                level.max_comp_upper = level.max_comp_upper.max(r.comp_upper);
            }
            _ => per_level.push(LevelSummary {
                d: r.d,
                samples: 1,
                mean_ci: r.ci,
                mean_ki: r.ki,
                mean_md: r.md,
                max_md: r.md,
                mean_cheb: r.cheb,
                max_cheb: r.cheb,
                mean_comp_upper: r.comp_upper,
                max_comp_upper: r.comp_upper,
            }),
        }
    }

    for level in &mut per_level {
        let count = level.samples as f64;
        level.mean_ci /= count;
        level.mean_ki /= count;
        level.mean_md /= count;
        level.mean_cheb /= count;
        level.mean_comp_upper /= count;
    }

    let ds: Vec<f64> = per_level.iter().map(|l| l.d).collect();
    let mean_kis: Vec<f64> = per_level.iter().map(|l| l.mean_ki).collect();
    let spearman = spearman_rho(&ds, &mean_kis);

    Ok(ExperimentSummary {
        per_level,
        total_records: records.len(),
        bound_violations: violations,
        evm_failures: failures,
        min_slack_chain: min_chain,
        min_slack_md: min_md,
        min_slack_cheb: min_cheb,
        min_slack_mean: min_mean,
        spearman_d_mean_ki: spearman,
    })
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman_rho(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    let n = rx.len() as f64;
    let mean = (n - 1.0) / 2.0;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        cov += (a - mean) * (b - mean);
        var_x += (a - mean).powi(2);
        var_y += (b - mean).powi(2);
    }
    if var_x == 0.0 || var_y == 0.0 {
        return 0.0;
    }
    cov / (var_x * var_y).sqrt()
}

fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite values"));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Writes the record list as CSV: a `#`-prefixed provenance header, one column
/// row, then one LF-terminated line per record. Doubles carry 17 significant
/// digits; booleans are 0/1.
pub fn write_csv<W: Write>(out: &mut W, cfg: &ExperimentConfig, records: &[ExperimentRecord]) -> std::io::Result<()> {
    writeln!(
        out,
        "# pcrank-experiment v1; n={}; factor_mode={}; weight_mode={}; clamp={}; master_seed={}",
        cfg.n,
        cfg.generator.factor_mode,
        cfg.generator.weight_mode,
        u8::from(cfg.generator.clamp_to_scale),
        cfg.master_seed
    )?;
    writeln!(
        out,
        "d,sample,seed,ci,cr,ki,kappa,md,cheb,kendall,comp,comp_lower,comp_upper,comp_max,chain_ok,md_ok,cheb_ok,mean_ok"
    )?;
    for r in records {
        writeln!(
            out,
            "{:.16e},{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{},{},{},{}",
            r.d,
            r.sample_index,
            r.seed,
            r.ci,
            r.cr,
            r.ki,
            r.kappa,
            r.md,
            r.cheb,
            r.kendall,
            r.comp,
            r.comp_lower,
            r.comp_upper,
            r.comp_max,
            u8::from(r.chain_ok),
            u8::from(r.md_ok),
            u8::from(r.cheb_ok),
            u8::from(r.mean_ok),
        )?;
    }
    Ok(())
}
