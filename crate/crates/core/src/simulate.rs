//! Monte-Carlo studies: correction factors, relative efficiency and
//! sensitivity to the sampling distribution, plus the least-squares fit of
//! the large-`n` prediction equation.
//!
//! Repetitions are split into chunks of `chunk_size`. Each chunk draws from
//! its own [`RngStream`] and the partial results are merged in chunk order,
//! so reports depend on the configuration only, never on the thread count.

use std::io::Write;

use rayon::prelude::*;

use crate::distributions::{derive_stream_id, DistributionSpec, RngStream, Sampler};
use crate::error::{Error, Result};
use crate::mad::{
    mad0_sorted, normal_mad_quantile, published_table, FactorModel, PredictionCoefficients,
    PreparedMad,
};
use crate::quantiles::{hf7_sorted, MedianEstimatorKind, PreparedMedian, TrimWidth};

pub const MIN_REPETITIONS: usize = 100;
pub const DEFAULT_CHUNK_SIZE: usize = 1000;
pub const DEFAULT_FACTOR_REPETITIONS: usize = 1_000_000;
pub const DEFAULT_EFFICIENCY_REPETITIONS: usize = 10_000;
pub const DEFAULT_SENSITIVITY_REPETITIONS: usize = 1000;

const TAG_FACTORS: u64 = 1;
const TAG_EFFICIENCY: u64 = 2;
const TAG_SENSITIVITY: u64 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub sample_sizes: Vec<usize>,
    pub repetitions: usize,
    pub master_seed: u64,
    pub estimators: Vec<MedianEstimatorKind>,
    /// Only read by [`sensitivity`].
    pub distributions: Vec<DistributionSpec>,
    pub chunk_size: usize,
}

impl SimulationConfig {
    pub fn new(sample_sizes: Vec<usize>, repetitions: usize, master_seed: u64) -> Self {
        SimulationConfig {
            sample_sizes,
            repetitions,
            master_seed,
            estimators: MedianEstimatorKind::CANONICAL.to_vec(),
            distributions: Vec::new(),
            chunk_size: DEFAULT_CHUNK_SIZE,
        }
    }

    pub fn with_estimators(mut self, estimators: Vec<MedianEstimatorKind>) -> Self {
        self.estimators = estimators;
        self
    }

    pub fn with_distributions(mut self, distributions: Vec<DistributionSpec>) -> Self {
        self.distributions = distributions;
        self
    }

    pub fn with_chunk_size(mut self, chunk_size: usize) -> Self {
        self.chunk_size = chunk_size;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions < MIN_REPETITIONS {
            return Err(Error::Config(format!(
                "repetitions must be at least {MIN_REPETITIONS}, got {}",
                self.repetitions
            )));
        }
        if self.chunk_size == 0 {
            return Err(Error::Config("chunk size must be positive".into()));
        }
        if self.sample_sizes.is_empty() {
            return Err(Error::Config("no sample sizes given".into()));
        }
        if let Some(&n) = self.sample_sizes.iter().find(|&&n| n < 2) {
            return Err(Error::Config(format!(
                "sample sizes must be at least 2, got {n}"
            )));
        }
        if self.estimators.is_empty() {
            return Err(Error::Config("no estimators given".into()));
        }
        for kind in &self.estimators {
            kind.validate()?;
        }
        Ok(())
    }

    fn chunks(&self) -> Vec<(u64, usize)> {
        let full = self.repetitions / self.chunk_size;
        let rest = self.repetitions % self.chunk_size;
        let mut out: Vec<(u64, usize)> = (0..full as u64).map(|c| (c, self.chunk_size)).collect();
        if rest > 0 {
            out.push((full as u64, rest));
        }
        out
    }
}

/// Runs `f` on a dedicated pool with `threads` workers, or on the global
/// pool when `threads` is `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::Config("thread count must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::Config(format!("cannot start thread pool: {e}"))),
    }
}

/// Stable per-estimator component of stream ids.
fn estimator_code(kind: MedianEstimatorKind) -> u64 {
    match kind {
        MedianEstimatorKind::Sm => 0,
        MedianEstimatorKind::Hd => 1,
        MedianEstimatorKind::Thd(TrimWidth::InverseSqrt) => 2,
        MedianEstimatorKind::Thd(TrimWidth::Fixed(w)) => 3 ^ w.to_bits().rotate_left(8),
    }
}

fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Count, compensated sum and centred sum of squares of one chunk.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: usize,
    sum: f64,
    m2: f64,
}

impl Moments {
    fn of(values: &[f64]) -> Self {
        let count = values.len();
        let sum = neumaier_sum(values.iter().copied());
        let mean = sum / count as f64;
        let m2 = neumaier_sum(values.iter().map(|v| (v - mean) * (v - mean)));
        Moments { count, sum, m2 }
    }
}

/// Mean and unbiased variance of the union of ordered chunks.
fn merge(parts: &[Moments]) -> (usize, f64, f64) {
    let count: usize = parts.iter().map(|p| p.count).sum();
    let mean = neumaier_sum(parts.iter().map(|p| p.sum)) / count as f64;
    let m2 = neumaier_sum(parts.iter().map(|p| {
        let d = p.sum / p.count as f64 - mean;
        p.m2 + p.count as f64 * d * d
    }));
    (count, mean, m2 / (count - 1) as f64)
}

fn draw_sorted<R: rand::RngCore>(sampler: &Sampler, n: usize, buf: &mut Vec<f64>, rng: &mut R) {
    sampler.fill(buf, n, rng);
    buf.sort_unstable_by(f64::total_cmp);
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorRow {
    pub n: usize,
    pub estimator: MedianEstimatorKind,
    /// Mean of `MAD_0` over the repetitions.
    pub m_n: f64,
    pub c_n: f64,
    /// Standard error of `m_n`.
    pub se_m: f64,
    /// Delta-method standard error of `c_n`.
    pub std_error: f64,
    pub repetitions: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FactorReport {
    pub rows: Vec<FactorRow>,
}

impl FactorReport {
    pub fn row(&self, n: usize, estimator: MedianEstimatorKind) -> Option<&FactorRow> {
        self.rows
            .iter()
            .find(|r| r.n == n && r.estimator == estimator)
    }

    pub fn check_invariants(&self) -> Result<()> {
        for r in &self.rows {
            if !((r.c_n * r.m_n - 1.0).abs() <= 1e-12 && r.std_error >= 0.0) {
                return Err(Error::Invariant(format!(
                    "factor row n = {}, {}: C_n M_n = {}",
                    r.n,
                    r.estimator,
                    r.c_n * r.m_n
                )));
            }
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv_writer(out);
        record(
            &mut w,
            ["n", "estimator", "m_n", "c_n", "std_error", "repetitions"],
        )?;
        for r in &self.rows {
            record(
                &mut w,
                [
                    r.n.to_string(),
                    r.estimator.to_string(),
                    format_sig(r.m_n),
                    format_sig(r.c_n),
                    format_sig(r.std_error),
                    r.repetitions.to_string(),
                ],
            )?;
        }
        flush(w)
    }
}

/// Estimates `C_n = 1 / E[MAD_0]` from standard normal samples.
pub fn estimate_factors(config: &SimulationConfig) -> Result<FactorReport> {
    config.validate()?;
    let sampler = DistributionSpec::standard_normal().sampler()?;
    let chunks = config.chunks();
    let mut rows = Vec::new();
    for &n in &config.sample_sizes {
        for &kind in &config.estimators {
            let median = PreparedMedian::new(kind, n)?;
            let code = estimator_code(kind);
            let parts: Vec<Moments> = chunks
                .par_iter()
                .map(|&(chunk, len)| {
                    let stream = derive_stream_id(&[TAG_FACTORS, n as u64, code, chunk]);
                    let mut rng = RngStream::new(config.master_seed, stream);
                    let mut buf = Vec::with_capacity(n);
                    let mut scratch = Vec::with_capacity(n);
                    let values: Vec<f64> = (0..len)
                        .map(|_| {
                            draw_sorted(&sampler, n, &mut buf, &mut rng);
                            mad0_sorted(&median, &buf, &mut scratch)
                        })
                        .collect();
                    Moments::of(&values)
                })
                .collect();
            let (count, m_n, var) = merge(&parts);
            let se_m = (var / count as f64).sqrt();
            rows.push(FactorRow {
                n,
                estimator: kind,
                m_n,
                c_n: 1.0 / m_n,
                se_m,
                std_error: se_m / (m_n * m_n),
                repetitions: count,
            });
        }
    }
    let report = FactorReport { rows };
    report.check_invariants()?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyRow {
    pub n: usize,
    pub var_sm: f64,
    pub var_hd: Option<f64>,
    pub var_thd: Option<f64>,
    pub e_hd: Option<f64>,
    pub e_thd: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EfficiencyReport {
    pub rows: Vec<EfficiencyRow>,
}

impl EfficiencyReport {
    pub fn row(&self, n: usize) -> Option<&EfficiencyRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn check_invariants(&self) -> Result<()> {
        for r in &self.rows {
            let ok = |var: Option<f64>, e: Option<f64>| match (var, e) {
                (Some(v), Some(e)) => (e - r.var_sm / v).abs() <= 1e-12 * e.abs().max(1.0),
                (None, None) => true,
                _ => false,
            };
            if !(r.var_sm >= 0.0 && ok(r.var_hd, r.e_hd) && ok(r.var_thd, r.e_thd)) {
                return Err(Error::Invariant(format!(
                    "efficiency row n = {} is inconsistent",
                    r.n
                )));
            }
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let opt = |v: Option<f64>| v.map(format_sig).unwrap_or_default();
        let mut w = csv_writer(out);
        record(
            &mut w,
            ["n", "var_sm", "var_hd", "var_thd", "e_hd", "e_thd"],
        )?;
        for r in &self.rows {
            record(
                &mut w,
                [
                    r.n.to_string(),
                    format_sig(r.var_sm),
                    opt(r.var_hd),
                    opt(r.var_thd),
                    opt(r.e_hd),
                    opt(r.e_thd),
                ],
            )?;
        }
        flush(w)
    }
}

/// Variance of each corrected MAD relative to the sample-median MAD, with
/// every estimator applied to the same normal samples.
pub fn efficiency(config: &SimulationConfig) -> Result<EfficiencyReport> {
    config.validate()?;
    let canonical = MedianEstimatorKind::CANONICAL;
    if let Some(k) = config.estimators.iter().find(|k| !canonical.contains(k)) {
        return Err(Error::Config(format!(
            "efficiency supports SM, HD and THD-SQRT only, got {k}"
        )));
    }
    if !config.estimators.contains(&MedianEstimatorKind::Sm) {
        return Err(Error::Config("efficiency needs SM as the baseline".into()));
    }
    let active: Vec<MedianEstimatorKind> = canonical
        .into_iter()
        .filter(|k| config.estimators.contains(k))
        .collect();
    let sampler = DistributionSpec::standard_normal().sampler()?;
    let chunks = config.chunks();
    let mut rows = Vec::new();
    for &n in &config.sample_sizes {
        let mads = active
            .iter()
            .map(|&k| PreparedMad::new(k, n, &FactorModel::Recommended))
            .collect::<Result<Vec<_>>>()?;
        let parts: Vec<Vec<Moments>> = chunks
            .par_iter()
            .map(|&(chunk, len)| {
                let stream = derive_stream_id(&[TAG_EFFICIENCY, n as u64, 0, chunk]);
                let mut rng = RngStream::new(config.master_seed, stream);
                let mut buf = Vec::with_capacity(n);
                let mut scratch = Vec::with_capacity(n);
                let mut values = vec![Vec::with_capacity(len); mads.len()];
                for _ in 0..len {
                    draw_sorted(&sampler, n, &mut buf, &mut rng);
                    for (mad, out) in mads.iter().zip(values.iter_mut()) {
                        out.push(mad.corrected_sorted(&buf, &mut scratch));
                    }
                }
                values.iter().map(|v| Moments::of(v)).collect()
            })
            .collect();
        let variance = |kind: MedianEstimatorKind| {
            active.iter().position(|&k| k == kind).map(|i| {
                let column: Vec<Moments> = parts.iter().map(|p| p[i]).collect();
                merge(&column).2
            })
        };
        let var_sm = variance(MedianEstimatorKind::Sm).expect("baseline present");
        let var_hd = variance(MedianEstimatorKind::Hd);
        let var_thd = variance(MedianEstimatorKind::THD_SQRT);
        rows.push(EfficiencyRow {
            n,
            var_sm,
            var_hd,
            var_thd,
            e_hd: var_hd.map(|v| var_sm / v),
            e_thd: var_thd.map(|v| var_sm / v),
        });
    }
    let report = EfficiencyReport { rows };
    report.check_invariants()?;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Aggregator {
    /// Classic standard deviation.
    Sd,
    /// `q(0.75) - q(0.25)` with Hyndman-Fan type 7 quantiles.
    Iqr,
    /// Corrected MAD built on the sample median.
    MadSm,
}

impl Aggregator {
    pub const ALL: [Aggregator; 3] = [Aggregator::Sd, Aggregator::Iqr, Aggregator::MadSm];

    pub fn name(self) -> &'static str {
        match self {
            Aggregator::Sd => "SD",
            Aggregator::Iqr => "IQR",
            Aggregator::MadSm => "MAD_SM",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityRow {
    pub distribution: DistributionSpec,
    pub n: usize,
    pub estimator: MedianEstimatorKind,
    pub aggregator: Aggregator,
    pub dispersion: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SensitivityReport {
    pub rows: Vec<SensitivityRow>,
}

impl SensitivityReport {
    pub fn dispersion(
        &self,
        distribution: &DistributionSpec,
        n: usize,
        estimator: MedianEstimatorKind,
        aggregator: Aggregator,
    ) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| {
                r.distribution == *distribution
                    && r.n == n
                    && r.estimator == estimator
                    && r.aggregator == aggregator
            })
            .map(|r| r.dispersion)
    }

    pub fn check_invariants(&self) -> Result<()> {
        match self
            .rows
            .iter()
            .find(|r| r.dispersion.is_nan() || r.dispersion < 0.0)
        {
            Some(r) => Err(Error::Invariant(format!(
                "{} n = {} {} {}: dispersion {}",
                r.distribution,
                r.n,
                r.estimator,
                r.aggregator.name(),
                r.dispersion
            ))),
            None => Ok(()),
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv_writer(out);
        record(
            &mut w,
            ["distribution", "n", "estimator", "aggregator", "dispersion"],
        )?;
        for r in &self.rows {
            record(
                &mut w,
                [
                    r.distribution.to_string(),
                    r.n.to_string(),
                    r.estimator.to_string(),
                    r.aggregator.name().to_string(),
                    format_sig(r.dispersion),
                ],
            )?;
        }
        flush(w)
    }
}

fn aggregate(values: &mut [f64], aggregator: Aggregator) -> Result<f64> {
    values.sort_unstable_by(f64::total_cmp);
    Ok(match aggregator {
        Aggregator::Sd => {
            let (_, _, var) = merge(&[Moments::of(values)]);
            var.sqrt()
        }
        Aggregator::Iqr => hf7_sorted(values, 0.75) - hf7_sorted(values, 0.25),
        Aggregator::MadSm => PreparedMad::new(
            MedianEstimatorKind::Sm,
            values.len(),
            &FactorModel::Recommended,
        )?
        .corrected_sorted(values, &mut Vec::with_capacity(values.len())),
    })
}

/// Dispersion of corrected MAD estimates across repetitions for each
/// distribution, sample size and estimator.
pub fn sensitivity(config: &SimulationConfig) -> Result<SensitivityReport> {
    config.validate()?;
    if config.distributions.is_empty() {
        return Err(Error::Config("no distributions given".into()));
    }
    let chunks = config.chunks();
    let mut rows = Vec::new();
    for (d, spec) in config.distributions.iter().enumerate() {
        let sampler = spec.sampler()?;
        for &n in &config.sample_sizes {
            let mads = config
                .estimators
                .iter()
                .map(|&k| PreparedMad::new(k, n, &FactorModel::Recommended))
                .collect::<Result<Vec<_>>>()?;
            let parts: Vec<Vec<Vec<f64>>> = chunks
                .par_iter()
                .map(|&(chunk, len)| {
                    let stream = derive_stream_id(&[TAG_SENSITIVITY, d as u64, n as u64, chunk]);
                    let mut rng = RngStream::new(config.master_seed, stream);
                    let mut buf = Vec::with_capacity(n);
                    let mut scratch = Vec::with_capacity(n);
                    let mut values = vec![Vec::with_capacity(len); mads.len()];
                    for _ in 0..len {
                        draw_sorted(&sampler, n, &mut buf, &mut rng);
                        for (mad, out) in mads.iter().zip(values.iter_mut()) {
                            out.push(mad.corrected_sorted(&buf, &mut scratch));
                        }
                    }
                    values
                })
                .collect();
            for (i, &kind) in config.estimators.iter().enumerate() {
                let estimates: Vec<f64> = parts.iter().flat_map(|p| p[i].iter().copied()).collect();
                for aggregator in Aggregator::ALL {
                    rows.push(SensitivityRow {
                        distribution: *spec,
                        n,
                        estimator: kind,
                        aggregator,
                        dispersion: aggregate(&mut estimates.clone(), aggregator)?,
                    });
                }
            }
        }
    }
    let report = SensitivityReport { rows };
    report.check_invariants()?;
    Ok(report)
}

/// Least-squares coefficients of the prediction equation.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub estimator: String,
    pub alpha: f64,
    pub beta: f64,
    /// Largest `|C_n(predicted) - C_n(input)|` over the fitted points.
    pub residual_max: f64,
    /// Exclusive lower bound of the fitted range.
    pub n_low: usize,
    /// Inclusive upper bound of the fitted range.
    pub n_high: usize,
    pub points: usize,
}

impl FitResult {
    pub fn coefficients(&self) -> PredictionCoefficients {
        PredictionCoefficients {
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    pub fn write_csv<W: Write>(results: &[FitResult], out: W) -> Result<()> {
        let mut w = csv_writer(out);
        record(
            &mut w,
            [
                "estimator",
                "alpha",
                "beta",
                "residual_max",
                "n_low",
                "n_high",
            ],
        )?;
        for r in results {
            record(
                &mut w,
                [
                    r.estimator.clone(),
                    format_sig(r.alpha),
                    format_sig(r.beta),
                    format_sig(r.residual_max),
                    r.n_low.to_string(),
                    r.n_high.to_string(),
                ],
            )?;
        }
        flush(w)
    }
}

/// Fits `A_n = alpha / n + beta / n²`, with `A_n = 1 / (C_n Φ⁻¹(0.75)) - 1`,
/// by ordinary least squares without intercept over the points with
/// `low < n <= high`.
pub fn fit_prediction(
    estimator: &str,
    points: &[(usize, f64)],
    (low, high): (usize, usize),
) -> Result<FitResult> {
    let q = normal_mad_quantile();
    let mut selected: Vec<(usize, f64)> = points
        .iter()
        .copied()
        .filter(|&(n, _)| n > low && n <= high)
        .collect();
    selected.sort_by_key(|&(n, _)| n);
    selected.dedup_by_key(|&mut (n, _)| n);
    if selected.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{estimator}: {} distinct n in ({low}, {high}], need at least 3",
            selected.len()
        )));
    }
    if let Some(&(n, c)) = selected.iter().find(|&&(_, c)| !(c > 0.0 && c.is_finite())) {
        return Err(Error::InsufficientData(format!(
            "{estimator}: C_{n} = {c} is not usable"
        )));
    }
    // regress on u = s/n and u² so that both columns are of order one
    let s = selected[0].0 as f64;
    let (mut suu, mut suv, mut svv, mut sua, mut sva) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(n, c) in &selected {
        let u = s / n as f64;
        let v = u * u;
        let a = 1.0 / (c * q) - 1.0;
        suu += u * u;
        suv += u * v;
        svv += v * v;
        sua += u * a;
        sva += v * a;
    }
    let det = suu * svv - suv * suv;
    if det.is_nan() || det.abs() <= 1e-300 {
        return Err(Error::InsufficientData(format!(
            "{estimator}: singular design"
        )));
    }
    let a1 = (sua * svv - sva * suv) / det;
    let a2 = (suu * sva - suv * sua) / det;
    let coefficients = PredictionCoefficients {
        alpha: a1 * s,
        beta: a2 * s * s,
    };
    let residual_max = selected
        .iter()
        .map(|&(n, c)| (coefficients.factor(n) - c).abs())
        .fold(0.0, f64::max);
    Ok(FitResult {
        estimator: estimator.to_string(),
        alpha: coefficients.alpha,
        beta: coefficients.beta,
        residual_max,
        n_low: low,
        n_high: high,
        points: selected.len(),
    })
}

/// Fit on the embedded published table of a canonical estimator.
pub fn fit_published(kind: MedianEstimatorKind, range: (usize, usize)) -> Result<FitResult> {
    let table = published_table(kind).ok_or_else(|| Error::FactorUnavailable {
        estimator: kind.to_string(),
        n: 0,
    })?;
    fit_prediction(&kind.to_string(), table, range)
}

/// Fit on the simulated factors of one estimator.
pub fn fit_report(
    report: &FactorReport,
    kind: MedianEstimatorKind,
    range: (usize, usize),
) -> Result<FitResult> {
    let points: Vec<(usize, f64)> = report
        .rows
        .iter()
        .filter(|r| r.estimator == kind)
        .map(|r| (r.n, r.c_n))
        .collect();
    fit_prediction(&kind.to_string(), &points, range)
}

/// Formats with 10 significant digits, in positional notation unless the
/// magnitude is extreme.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.9e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..15).contains(&exp) {
        format!("{:.*}", (9 - exp).max(0) as usize, v)
    } else {
        sci
    }
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn record<W: Write, I, T>(w: &mut csv::Writer<W>, fields: I) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: AsRef<[u8]>,
{
    w.write_record(fields)
        .map_err(|e| Error::Config(format!("writing CSV: {e}")))
}

fn flush<W: Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush()
        .map_err(|e| Error::Config(format!("writing CSV: {e}")))
}
