//! Random entangled-state ensembles and the bound-gap versus purity sweep.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eof::{eof_exact, EofOptions};
use crate::error::{Error, Result};
use crate::gaussian::{PurityParams, StandardForm};
use crate::numeric::fmt_sig12;

pub const MAX_ATTEMPTS: usize = 1_000_000;
pub const THREADS_ENV: &str = "GAUSS_EOF_THREADS";
const ENTANGLED_MARGIN: f64 = 1e-9;
const MIN_EXACT: f64 = 1e-12;

pub const CSV_HEADER: [&str; 17] = [
    "index",
    "mu_a",
    "mu_b",
    "mu",
    "beta",
    "a",
    "b",
    "c1",
    "c2",
    "nu_gamma_minus",
    "r_minus",
    "r_plus",
    "eof_lower",
    "eof_exact",
    "eof_upper",
    "delta_minus_pct",
    "delta_plus_pct",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n_states: usize,
    pub s_max: f64,
    pub seed: u64,
    /// States below this global purity are never drawn.
    pub min_purity: f64,
    pub output_path: Option<PathBuf>,
    pub bins: usize,
    pub plot_data: Option<PathBuf>,
    pub eof: EofOptions,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_states: 2000,
            s_max: 5.0,
            seed: 0,
            min_purity: 0.0,
            output_path: None,
            bins: 20,
            plot_data: None,
            eof: EofOptions::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_states == 0 {
            return Err(Error::InvalidParams("n_states must be at least 1".into()));
        }
        if !(self.s_max > 1.0 && self.s_max.is_finite()) {
            return Err(Error::InvalidParams(format!("s_max = {} must exceed 1", self.s_max)));
        }
        if !(0.0..1.0).contains(&self.min_purity) {
            return Err(Error::InvalidParams(format!(
                "min_purity = {} outside [0, 1)",
                self.min_purity
            )));
        }
        if self.bins == 0 {
            return Err(Error::InvalidParams("bins must be at least 1".into()));
        }
        if self.eof.grid_points < 3 || self.eof.tol_r.is_nan() || self.eof.tol_r <= 0.0 {
            return Err(Error::InvalidParams(
                "grid_points must be ≥ 3 and tol_r positive".into(),
            ));
        }
        Ok(())
    }
}

/// The random stream of record `index`; independent of evaluation order.
pub fn record_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One draw of `(s, d, g, β)`, or `None` when the purity cut leaves no room for `g`.
pub fn draw_params<R: Rng + ?Sized>(rng: &mut R, cfg: &SweepConfig) -> Option<PurityParams> {
    let s = rng.random_range(1.0..=cfg.s_max);
    let d = rng.random_range(-(s - 1.0)..=(s - 1.0));
    let g_lo = 2.0 * d.abs() + 1.0;
    let mut g_hi = s * s - d * d;
    if cfg.min_purity > 0.0 {
        g_hi = g_hi.min(1.0 / cfg.min_purity);
    }
    if g_hi < g_lo {
        return None;
    }
    let g = rng.random_range(g_lo..=g_hi);
    let beta = rng.random_range(-1.0..=1.0);
    Some(PurityParams::from_sdg(s, d, g, beta))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub params: PurityParams,
    pub sf: StandardForm,
    pub nu_gamma_minus: f64,
    pub rejections: usize,
}

/// Rejection-samples an entangled standard form.
pub fn sample_entangled<R: Rng + ?Sized>(rng: &mut R, cfg: &SweepConfig) -> Result<Sample> {
    for rejections in 0..MAX_ATTEMPTS {
        let Some(params) = draw_params(rng, cfg) else { continue };
        let Ok(sf) = StandardForm::from_purity_params(&params) else {
            continue;
        };
        let Ok(pt) = sf.expand().pt_spectrum() else { continue };
        if pt.nu_minus < 1.0 - ENTANGLED_MARGIN {
            return Ok(Sample {
                params: params.mode_ordered(),
                sf,
                nu_gamma_minus: pt.nu_minus,
                rejections,
            });
        }
    }
    Err(Error::ExhaustedAttempts(MAX_ATTEMPTS))
}

/// `(δ⁻, δ⁺)` in percent.
pub fn relative_differences(lower: f64, upper: f64, exact: f64) -> Result<(f64, f64)> {
    if exact.is_nan() || exact <= MIN_EXACT {
        return Err(Error::DivisionByZero(exact));
    }
    Ok((
        (exact - lower).abs() / exact * 100.0,
        (upper - exact).abs() / exact * 100.0,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleRecord {
    pub index: usize,
    pub params: PurityParams,
    pub sf: StandardForm,
    pub mu: f64,
    pub nu_gamma_minus: f64,
    pub r_minus: f64,
    pub r_plus: f64,
    pub lower: f64,
    pub upper: f64,
    pub exact: f64,
    pub delta_minus: f64,
    pub delta_plus: f64,
    #[serde(skip)]
    pub rejections: usize,
}

impl EnsembleRecord {
    fn csv_fields(&self) -> Vec<String> {
        let p = &self.params;
        let mut out = vec![self.index.to_string()];
        out.extend(
            [
                p.mu_a,
                p.mu_b,
                p.mu,
                p.beta,
                self.sf.a(),
                self.sf.b(),
                self.sf.c1(),
                self.sf.c2(),
                self.nu_gamma_minus,
                self.r_minus,
                self.r_plus,
                self.lower,
                self.exact,
                self.upper,
                self.delta_minus,
                self.delta_plus,
            ]
            .iter()
            .map(|&x| fmt_sig12(x)),
        );
        out
    }
}

/// Draws and evaluates record `index`. States whose exact value is
/// numerically zero are redrawn from the same stream.
pub fn make_record(cfg: &SweepConfig, index: usize) -> Result<EnsembleRecord> {
    let mut rng = record_rng(cfg.seed, index as u64);
    let mut rejections = 0;
    while rejections < MAX_ATTEMPTS {
        let sample = sample_entangled(&mut rng, cfg)?;
        rejections += sample.rejections;
        let res = match eof_exact(&sample.sf, &cfg.eof) {
            Ok(res) if res.exact > MIN_EXACT => res,
            _ => {
                rejections += 1;
                continue;
            }
        };
        let (delta_minus, delta_plus) = relative_differences(res.lower, res.upper, res.exact)?;
        return Ok(EnsembleRecord {
            index,
            params: sample.params,
            sf: sample.sf,
            mu: sample.params.mu,
            nu_gamma_minus: sample.nu_gamma_minus,
            r_minus: res.r_minus,
            r_plus: res.r_plus,
            lower: res.lower,
            upper: res.upper,
            exact: res.exact,
            delta_minus,
            delta_plus,
            rejections,
        });
    }
    Err(Error::ExhaustedAttempts(MAX_ATTEMPTS))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PurityBin {
    pub lo: f64,
    pub hi: f64,
    pub center: f64,
    pub count: usize,
    pub mean_delta_minus: f64,
    pub mean_delta_plus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n_records: usize,
    pub rejections: usize,
    pub mean_delta_minus: f64,
    pub mean_delta_plus: f64,
    pub upper_closer: bool,
    pub bins: Vec<PurityBin>,
    /// Rank correlation of non-empty bin centers against bin means; `None`
    /// with fewer than two non-empty bins.
    pub spearman_minus: Option<f64>,
    pub spearman_plus: Option<f64>,
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[i].total_cmp(&xs[j]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx).powi(2);
        syy += (b - my).powi(2);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

pub fn summarize(records: &[EnsembleRecord], cfg: &SweepConfig) -> SweepSummary {
    let n = records.len();
    let lo = cfg.min_purity;
    let width = (1.0 - lo) / cfg.bins as f64;
    let mut sums = vec![(0usize, 0.0, 0.0); cfg.bins];
    for r in records {
        let i = (((r.mu - lo) / width) as usize).min(cfg.bins - 1);
        sums[i].0 += 1;
        sums[i].1 += r.delta_minus;
        sums[i].2 += r.delta_plus;
    }
    let bins: Vec<PurityBin> = sums
        .iter()
        .enumerate()
        .map(|(i, &(count, dm, dp))| {
            let b_lo = lo + width * i as f64;
            let b_hi = b_lo + width;
            let mean = |s: f64| if count > 0 { s / count as f64 } else { f64::NAN };
            PurityBin {
                lo: b_lo,
                hi: b_hi,
                center: 0.5 * (b_lo + b_hi),
                count,
                mean_delta_minus: mean(dm),
                mean_delta_plus: mean(dp),
            }
        })
        .collect();
    let filled: Vec<&PurityBin> = bins.iter().filter(|b| b.count > 0).collect();
    let centers: Vec<f64> = filled.iter().map(|b| b.center).collect();
    let dm: Vec<f64> = filled.iter().map(|b| b.mean_delta_minus).collect();
    let dp: Vec<f64> = filled.iter().map(|b| b.mean_delta_plus).collect();

    let mean_delta_minus = records.iter().map(|r| r.delta_minus).sum::<f64>() / n as f64;
    let mean_delta_plus = records.iter().map(|r| r.delta_plus).sum::<f64>() / n as f64;
    SweepSummary {
        n_records: n,
        rejections: records.iter().map(|r| r.rejections).sum(),
        mean_delta_minus,
        mean_delta_plus,
        upper_closer: mean_delta_plus <= mean_delta_minus,
        spearman_minus: spearman(&centers, &dm),
        spearman_plus: spearman(&centers, &dp),
        bins,
    }
}

pub fn thread_count() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Evaluates `cfg.n_states` records (in parallel, ordered by index), writes
/// the CSV and plot data if requested, and summarises.
pub fn run_sweep(cfg: &SweepConfig) -> Result<(Vec<EnsembleRecord>, SweepSummary)> {
    cfg.validate()?;
    let compute = || {
        (0..cfg.n_states)
            .into_par_iter()
            .map(|i| make_record(cfg, i))
            .collect::<Result<Vec<_>>>()
    };
    let records = match thread_count() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParams(format!("{THREADS_ENV}: {e}")))?
            .install(compute)?,
        None => compute()?,
    };
    if let Some(path) = &cfg.output_path {
        write_csv(File::create(path)?, &records)?;
    }
    if let Some(path) = &cfg.plot_data {
        write_plot_data(File::create(path)?, &records)?;
    }
    let summary = summarize(&records, cfg);
    Ok((records, summary))
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("{other:?}")),
    }
}

pub fn write_csv<W: Write>(out: W, records: &[EnsembleRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for r in records {
        w.write_record(r.csv_fields()).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(records: &[EnsembleRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, records)?;
    String::from_utf8(buf).map_err(|e| Error::Parse(e.to_string()))
}

/// A parsed CSV data row: the index and the sixteen numeric columns in header order.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub index: usize,
    pub values: [f64; 16],
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(csv_error)?;
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Parse(format!("unexpected CSV header: {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_error)?;
        let num = |i: usize| -> Result<f64> {
            rec[i]
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {:?} in column {}", &rec[i], CSV_HEADER[i])))
        };
        let index = rec[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad index {:?}", &rec[0])))?;
        let mut values = [0.0; 16];
        for (k, v) in values.iter_mut().enumerate() {
            *v = num(k + 1)?;
        }
        rows.push(CsvRow { index, values });
    }
    Ok(rows)
}

/// Whitespace-separated `μ δ⁻ δ⁺` columns for gnuplot.
pub fn write_plot_data<W: Write>(out: W, records: &[EnsembleRecord]) -> Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "# mu delta_minus_pct delta_plus_pct")?;
    for r in records {
        writeln!(
            w,
            "{} {} {}",
            fmt_sig12(r.mu),
            fmt_sig12(r.delta_minus),
            fmt_sig12(r.delta_plus)
        )?;
    }
    w.flush()?;
    Ok(())
}
