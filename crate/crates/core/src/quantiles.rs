//! Median and quantile estimators: the Hyndman-Fan type 7 sample quantile,
//! the Harrell-Davis estimator, and the trimmed Harrell-Davis estimator
//! that sums only over the highest density interval of the weight
//! generating Beta distribution.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::specfun::{beta_density, inc_beta, BetaParams, Probability};

/// Slack used by the HDI case analysis on the Beta shapes.
pub const HDI_EPS: f64 = 1e-9;
/// Bracketing tolerance of the HDI root finder.
pub const HDI_TOLERANCE: f64 = 1e-9;

/// Finite observations, sorted ascending on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        values.sort_unstable_by(f64::total_cmp);
        Ok(Sample { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Order statistics, ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl TryFrom<Vec<f64>> for Sample {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Sample::new(values)
    }
}

impl TryFrom<&[f64]> for Sample {
    type Error = Error;

    fn try_from(values: &[f64]) -> Result<Self> {
        Sample::new(values.to_vec())
    }
}

/// Width of the trimming window used by the trimmed Harrell-Davis estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrimWidth {
    /// `1 / sqrt(n)`, resolved against the sample size at call time.
    InverseSqrt,
    Fixed(f64),
}

impl TrimWidth {
    pub fn resolve(self, n: usize) -> f64 {
        match self {
            TrimWidth::InverseSqrt => 1.0 / (n.max(1) as f64).sqrt(),
            TrimWidth::Fixed(w) => w,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MedianEstimatorKind {
    /// Sample median.
    Sm,
    /// Harrell-Davis.
    Hd,
    /// Trimmed Harrell-Davis.
    Thd(TrimWidth),
}

impl MedianEstimatorKind {
    pub const THD_SQRT: MedianEstimatorKind = MedianEstimatorKind::Thd(TrimWidth::InverseSqrt);

    /// The three estimators with published correction factors.
    pub const CANONICAL: [MedianEstimatorKind; 3] = [
        MedianEstimatorKind::Sm,
        MedianEstimatorKind::Hd,
        MedianEstimatorKind::THD_SQRT,
    ];

    pub fn validate(self) -> Result<Self> {
        if let MedianEstimatorKind::Thd(TrimWidth::Fixed(w)) = self {
            check_width(w)?;
        }
        Ok(self)
    }

    pub fn is_canonical(self) -> bool {
        Self::CANONICAL.contains(&self)
    }
}

impl fmt::Display for MedianEstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MedianEstimatorKind::Sm => f.write_str("SM"),
            MedianEstimatorKind::Hd => f.write_str("HD"),
            MedianEstimatorKind::Thd(TrimWidth::InverseSqrt) => f.write_str("THD-SQRT"),
            MedianEstimatorKind::Thd(TrimWidth::Fixed(w)) => write!(f, "THD({w})"),
        }
    }
}

impl FromStr for MedianEstimatorKind {
    type Err = Error;

    /// Accepts `sm`, `hd`, `thd-sqrt` (or `thd`), and `thd(<width>)`,
    /// case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "sm" => Ok(MedianEstimatorKind::Sm),
            "hd" => Ok(MedianEstimatorKind::Hd),
            "thd" | "thd-sqrt" | "thd_sqrt" | "thdsqrt" => Ok(MedianEstimatorKind::THD_SQRT),
            other => {
                let width = other
                    .strip_prefix("thd(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .and_then(|w| w.trim().parse::<f64>().ok())
                    .ok_or_else(|| Error::Config(format!("unknown estimator '{s}'")))?;
                MedianEstimatorKind::Thd(TrimWidth::Fixed(width)).validate()
            }
        }
    }
}

/// Highest density interval `[left, right]` of width `width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hdi {
    pub left: f64,
    pub right: f64,
    pub width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HdiOutcome {
    Interval(Hdi),
    /// Both shapes are at most 1: the density has no interior mode.
    Degenerate,
}

/// Per-order-statistic weights of a weighted quantile estimator.
///
/// `weights` has one entry per order statistic; entries outside
/// `first..=last` are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileWeights {
    weights: Vec<f64>,
    params: BetaParams,
    hdi: Option<Hdi>,
    first: usize,
    last: usize,
}

impl QuantileWeights {
    fn from_weights(weights: Vec<f64>, params: BetaParams, hdi: Option<Hdi>) -> Self {
        let first = weights.iter().position(|&w| w != 0.0).unwrap_or(0);
        let last = weights
            .iter()
            .rposition(|&w| w != 0.0)
            .unwrap_or(weights.len().saturating_sub(1));
        QuantileWeights {
            weights,
            params,
            hdi,
            first,
            last,
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn params(&self) -> BetaParams {
        self.params
    }

    pub fn hdi(&self) -> Option<Hdi> {
        self.hdi
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weighted sum over sorted values of the same length.
    pub fn apply(&self, sorted: &[f64]) -> f64 {
        debug_assert_eq!(sorted.len(), self.weights.len());
        let (lo, hi) = (sorted[self.first], sorted[self.last]);
        if lo == hi {
            return lo;
        }
        let range = self.first..=self.last;
        let acc: f64 = self.weights[range.clone()]
            .iter()
            .zip(&sorted[range])
            .map(|(w, x)| w * x)
            .sum();
        acc.clamp(lo, hi)
    }
}

fn check_nonempty(x: &Sample) -> Result<()> {
    if x.is_empty() {
        Err(Error::EmptySample)
    } else {
        Ok(())
    }
}

fn check_interior(p: Probability) -> Result<()> {
    if p.is_interior() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "quantile probability (must be inside (0, 1))",
            value: p.value(),
        })
    }
}

fn check_width(width: f64) -> Result<()> {
    if width > 0.0 && width <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "trimming width",
            value: width,
        })
    }
}

/// Hyndman-Fan type 7 quantile of sorted values.
pub(crate) fn hf7_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let h = (n - 1) as f64 * p;
    let lo = h.floor();
    let frac = h - lo;
    let lo = lo as usize;
    if lo + 1 >= n {
        return sorted[n - 1];
    }
    let (a, b) = (sorted[lo], sorted[lo + 1]);
    if frac == 0.0 || a == b {
        a
    } else {
        (1.0 - frac) * a + frac * b
    }
}

/// Hyndman-Fan type 7 quantile (linear interpolation between order
/// statistics). At `p = 0.5` this is the ordinary sample median.
pub fn hf7_quantile(x: &Sample, p: Probability) -> Result<f64> {
    check_nonempty(x)?;
    Ok(hf7_sorted(x.values(), p.value()))
}

/// Weights from a CDF evaluated on the grid `i / n`.
///
/// For the median the weights are built symmetric: the outer pairs come from
/// CDF differences on the lower half of the grid and the central weight(s)
/// take the remaining mass. This keeps `W_i == W_{n+1-i}` exact, and a
/// two-point window reduces to the exact midpoint.
fn weights_from_cdf(n: usize, symmetric: bool, cdf: impl Fn(f64) -> f64) -> Vec<f64> {
    let nf = n as f64;
    let mut w = vec![0.0; n];
    if symmetric {
        let outer = if n.is_multiple_of(2) {
            n / 2 - 1
        } else {
            n / 2
        };
        let mut prev = cdf(0.0);
        let mut mass = 0.0;
        for i in 0..outer {
            let next = cdf((i + 1) as f64 / nf);
            let wi = (next - prev).max(0.0);
            w[i] = wi;
            w[n - 1 - i] = wi;
            mass += wi;
            prev = next;
        }
        if n.is_multiple_of(2) {
            let inner = (0.5 - mass).max(0.0);
            w[n / 2 - 1] = inner;
            w[n / 2] = inner;
        } else {
            w[n / 2] = (1.0 - 2.0 * mass).max(0.0);
        }
    } else {
        let mut prev = cdf(0.0);
        for (i, wi) in w.iter_mut().enumerate() {
            let next = cdf((i + 1) as f64 / nf);
            *wi = (next - prev).max(0.0);
            prev = next;
        }
    }
    w
}

/// Harrell-Davis weights `I_{i/n}(a, b) - I_{(i-1)/n}(a, b)` with
/// `a = (n + 1) p`, `b = (n + 1)(1 - p)`.
pub fn hd_weights(n: usize, p: Probability) -> Result<QuantileWeights> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    check_interior(p)?;
    let params = BetaParams::for_quantile(n, p)?;
    let (a, b) = (params.alpha(), params.beta());
    let w = weights_from_cdf(n, p.value() == 0.5, |v| inc_beta(v, a, b));
    Ok(QuantileWeights::from_weights(w, params, None))
}

pub fn hd_quantile(x: &Sample, p: Probability) -> Result<f64> {
    check_nonempty(x)?;
    if x.len() == 1 {
        check_interior(p)?;
        return Ok(x.values()[0]);
    }
    Ok(hd_weights(x.len(), p)?.apply(x.values()))
}

/// Highest density interval of the given width for `Beta(alpha, beta)`.
pub fn beta_hdi(params: BetaParams, width: f64) -> Result<HdiOutcome> {
    check_width(width)?;
    let (a, b) = (params.alpha(), params.beta());
    let interval = |left: f64, right: f64| HdiOutcome::Interval(Hdi { left, right, width });
    if a < 1.0 + HDI_EPS && b < 1.0 + HDI_EPS {
        return Ok(HdiOutcome::Degenerate);
    }
    if a < 1.0 + HDI_EPS && b > 1.0 {
        return Ok(interval(0.0, width));
    }
    if a > 1.0 && b < 1.0 + HDI_EPS {
        return Ok(interval(1.0 - width, 1.0));
    }
    if width > 1.0 - HDI_EPS {
        return Ok(interval(0.0, 1.0));
    }
    if a == b {
        // symmetric density: the interval is centred on the mode
        let left = 0.5 - 0.5 * width;
        return Ok(interval(left, left + width));
    }

    let mode = params.mode();
    let mut lo = (mode - width).max(0.0);
    let mut hi = mode.min(1.0 - width);
    // pdf(l) - pdf(l + width) is <= 0 at lo and >= 0 at hi
    let f = |l: f64| beta_density(l, a, b) - beta_density(l + width, a, b);
    let left = if hi <= lo {
        lo
    } else {
        let mut mid = 0.5 * (lo + hi);
        while hi - lo > HDI_TOLERANCE {
            let fm = f(mid);
            if fm == 0.0 {
                break;
            }
            if fm < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            mid = 0.5 * (lo + hi);
        }
        mid
    };
    Ok(interval(left, left + width))
}

/// Trimmed Harrell-Davis weights: differences of the Beta CDF restricted
/// to the HDI of the given width and renormalized. Falls back to plain
/// Harrell-Davis weights when the HDI is degenerate.
pub fn thd_weights(n: usize, p: Probability, width: f64) -> Result<QuantileWeights> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    check_interior(p)?;
    check_width(width)?;
    let params = BetaParams::for_quantile(n, p)?;
    let hdi = match beta_hdi(params, width)? {
        HdiOutcome::Interval(hdi) => hdi,
        HdiOutcome::Degenerate => return hd_weights(n, p),
    };
    let (a, b) = (params.alpha(), params.beta());
    let cdf_left = inc_beta(hdi.left, a, b);
    let cdf_right = inc_beta(hdi.right, a, b);
    let span = cdf_right - cdf_left;
    let trimmed_cdf = |v: f64| {
        if v <= hdi.left {
            0.0
        } else if v >= hdi.right {
            1.0
        } else {
            (inc_beta(v, a, b) - cdf_left) / span
        }
    };
    let w = weights_from_cdf(n, p.value() == 0.5, trimmed_cdf);
    Ok(QuantileWeights::from_weights(w, params, Some(hdi)))
}

pub fn thd_quantile(x: &Sample, p: Probability, width: f64) -> Result<f64> {
    check_nonempty(x)?;
    check_width(width)?;
    if x.len() == 1 {
        check_interior(p)?;
        return Ok(x.values()[0]);
    }
    Ok(thd_weights(x.len(), p, width)?.apply(x.values()))
}

/// Quantile estimate with the chosen estimator family.
pub fn quantile(x: &Sample, p: Probability, kind: MedianEstimatorKind) -> Result<f64> {
    match kind {
        MedianEstimatorKind::Sm => hf7_quantile(x, p),
        MedianEstimatorKind::Hd => hd_quantile(x, p),
        MedianEstimatorKind::Thd(width) => thd_quantile(x, p, width.resolve(x.len())),
    }
}

pub fn median(x: &Sample, kind: MedianEstimatorKind) -> Result<f64> {
    quantile(x, Probability::HALF, kind)
}

/// A median estimator bound to one sample size, with its weights computed
/// once. Used wherever many samples of the same size are processed.
#[derive(Debug, Clone)]
pub struct PreparedMedian {
    kind: MedianEstimatorKind,
    n: usize,
    weights: Option<QuantileWeights>,
}

impl PreparedMedian {
    pub fn new(kind: MedianEstimatorKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySample);
        }
        let kind = kind.validate()?;
        let weights = match (kind, n) {
            (MedianEstimatorKind::Sm, _) | (_, 1) => None,
            (MedianEstimatorKind::Hd, _) => Some(hd_weights(n, Probability::HALF)?),
            (MedianEstimatorKind::Thd(width), _) => {
                Some(thd_weights(n, Probability::HALF, width.resolve(n))?)
            }
        };
        Ok(PreparedMedian { kind, n, weights })
    }

    pub fn kind(&self) -> MedianEstimatorKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> Option<&QuantileWeights> {
        self.weights.as_ref()
    }

    /// Median of `sorted`, which must hold exactly `n` ascending values.
    pub fn estimate_sorted(&self, sorted: &[f64]) -> f64 {
        debug_assert_eq!(sorted.len(), self.n);
        match &self.weights {
            Some(w) => w.apply(sorted),
            None => hf7_sorted(sorted, 0.5),
        }
    }

    pub fn estimate(&self, x: &Sample) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::Config(format!(
                "prepared for n = {}, got a sample of size {}",
                self.n,
                x.len()
            )));
        }
        Ok(self.estimate_sorted(x.values()))
    }
}
