//! Seeded samplers for the simulation studies.
//!
//! Every draw comes from an [`RngStream`], a ChaCha8 generator addressed by
//! `(master_seed, stream_id)`. Parallel work derives one stream per chunk
//! with [`derive_stream_id`].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};
use crate::quantiles::Sample;
use crate::specfun::{inc_beta, normal_cdf};

/// Parametric family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionSpec {
    Uniform {
        a: f64,
        b: f64,
    },
    /// Lower limit `a`, upper limit `b`, mode `c`.
    Triangular {
        a: f64,
        b: f64,
        c: f64,
    },
    Beta {
        a: f64,
        b: f64,
    },
    Normal {
        mean: f64,
        sd: f64,
    },
    Weibull {
        scale: f64,
        shape: f64,
    },
    StudentT {
        df: f64,
    },
    /// `F(x) = exp(-exp(-(x - loc) / scale))`
    Gumbel {
        loc: f64,
        scale: f64,
    },
    Exponential {
        rate: f64,
    },
    Cauchy {
        x0: f64,
        gamma: f64,
    },
    /// `F(x) = 1 - (loc / x)^shape` for `x >= loc`
    Pareto {
        loc: f64,
        shape: f64,
    },
    LogNormal {
        mlog: f64,
        sdlog: f64,
    },
    /// `F(x) = exp(-x^-shape)` for `x > 0`
    Frechet {
        shape: f64,
    },
    /// Degenerate distribution at `value`.
    PointMass {
        value: f64,
    },
}

fn positive(what: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}

fn finite(what: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}

impl DistributionSpec {
    pub fn standard_normal() -> Self {
        DistributionSpec::Normal { mean: 0.0, sd: 1.0 }
    }

    /// The twenty distributions of the sensitivity study, in table order.
    pub fn sensitivity_set() -> Vec<DistributionSpec> {
        use DistributionSpec::*;
        vec![
            Uniform { a: 0.0, b: 1.0 },
            Triangular {
                a: 0.0,
                b: 2.0,
                c: 1.0,
            },
            Triangular {
                a: 0.0,
                b: 2.0,
                c: 0.2,
            },
            Beta { a: 2.0, b: 4.0 },
            Beta { a: 2.0, b: 10.0 },
            Normal { mean: 0.0, sd: 1.0 },
            Weibull {
                scale: 1.0,
                shape: 2.0,
            },
            StudentT { df: 3.0 },
            Gumbel {
                loc: 0.0,
                scale: 1.0,
            },
            Exponential { rate: 1.0 },
            Cauchy {
                x0: 0.0,
                gamma: 1.0,
            },
            Pareto {
                loc: 1.0,
                shape: 0.5,
            },
            Pareto {
                loc: 1.0,
                shape: 2.0,
            },
            LogNormal {
                mlog: 0.0,
                sdlog: 1.0,
            },
            LogNormal {
                mlog: 0.0,
                sdlog: 2.0,
            },
            LogNormal {
                mlog: 0.0,
                sdlog: 3.0,
            },
            Weibull {
                scale: 1.0,
                shape: 0.3,
            },
            Weibull {
                scale: 1.0,
                shape: 0.5,
            },
            Frechet { shape: 1.0 },
            Frechet { shape: 3.0 },
        ]
    }

    pub fn validate(self) -> Result<Self> {
        use DistributionSpec::*;
        match self {
            Uniform { a, b } => {
                finite("uniform a", a)?;
                finite("uniform b", b)?;
                if a >= b {
                    return Err(Error::InvalidSpec(format!(
                        "uniform needs a < b, got {a}, {b}"
                    )));
                }
            }
            Triangular { a, b, c } => {
                finite("triangular a", a)?;
                finite("triangular b", b)?;
                finite("triangular c", c)?;
                if !(a < b && a <= c && c <= b) {
                    return Err(Error::InvalidSpec(format!(
                        "triangular needs a <= c <= b and a < b, got {a}, {b}, {c}"
                    )));
                }
            }
            Beta { a, b } => {
                positive("beta a", a)?;
                positive("beta b", b)?;
            }
            Normal { mean, sd } => {
                finite("normal mean", mean)?;
                positive("normal sd", sd)?;
            }
            Weibull { scale, shape } => {
                positive("weibull scale", scale)?;
                positive("weibull shape", shape)?;
            }
            StudentT { df } => positive("student df", df)?,
            Gumbel { loc, scale } => {
                finite("gumbel loc", loc)?;
                positive("gumbel scale", scale)?;
            }
            Exponential { rate } => positive("exponential rate", rate)?,
            Cauchy { x0, gamma } => {
                finite("cauchy x0", x0)?;
                positive("cauchy gamma", gamma)?;
            }
            Pareto { loc, shape } => {
                positive("pareto loc", loc)?;
                positive("pareto shape", shape)?;
            }
            LogNormal { mlog, sdlog } => {
                finite("lognormal mlog", mlog)?;
                positive("lognormal sdlog", sdlog)?;
            }
            Frechet { shape } => positive("frechet shape", shape)?,
            PointMass { value } => finite("point mass value", value)?,
        }
        Ok(self)
    }

    /// Analytic cumulative distribution function.
    pub fn cdf(&self, x: f64) -> f64 {
        use DistributionSpec::*;
        match *self {
            Uniform { a, b } => ((x - a) / (b - a)).clamp(0.0, 1.0),
            Triangular { a, b, c } => {
                if x <= a {
                    0.0
                } else if x >= b {
                    1.0
                } else if x <= c {
                    (x - a) * (x - a) / ((b - a) * (c - a))
                } else {
                    1.0 - (b - x) * (b - x) / ((b - a) * (b - c))
                }
            }
            Beta { a, b } => inc_beta(x.clamp(0.0, 1.0), a, b),
            Normal { mean, sd } => normal_cdf((x - mean) / sd).value(),
            Weibull { scale, shape } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-(x / scale).powf(shape)).exp_m1()
                }
            }
            StudentT { df } => {
                let tail = 0.5 * inc_beta(df / (df + x * x), 0.5 * df, 0.5);
                if x > 0.0 {
                    1.0 - tail
                } else {
                    tail
                }
            }
            Gumbel { loc, scale } => (-(-(x - loc) / scale).exp()).exp(),
            Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            Cauchy { x0, gamma } => 0.5 + ((x - x0) / gamma).atan() / PI,
            Pareto { loc, shape } => {
                if x < loc {
                    0.0
                } else {
                    1.0 - (loc / x).powf(shape)
                }
            }
            LogNormal { mlog, sdlog } => {
                if x <= 0.0 {
                    0.0
                } else {
                    normal_cdf((x.ln() - mlog) / sdlog).value()
                }
            }
            Frechet { shape } => {
                if x <= 0.0 {
                    0.0
                } else {
                    (-x.powf(-shape)).exp()
                }
            }
            PointMass { value } => {
                if x < value {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    pub fn sampler(&self) -> Result<Sampler> {
        let spec = self.validate()?;
        let gamma = |shape: f64| {
            Gamma::new(shape, 1.0).map_err(|e| Error::InvalidSpec(format!("{spec}: {e}")))
        };
        let kind = match spec {
            DistributionSpec::Beta { a, b } => SamplerKind::Beta(gamma(a)?, gamma(b)?),
            DistributionSpec::StudentT { df } => SamplerKind::StudentT(gamma(0.5 * df)?),
            _ => SamplerKind::Direct,
        };
        Ok(Sampler { spec, kind })
    }
}

fn fmt_num(v: f64) -> String {
    format!("{v}")
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DistributionSpec::*;
        let n = fmt_num;
        match *self {
            Uniform { a, b } => write!(f, "Uniform(a={}, b={})", n(a), n(b)),
            Triangular { a, b, c } => {
                write!(f, "Triangular(a={}, b={}, c={})", n(a), n(b), n(c))
            }
            Beta { a, b } => write!(f, "Beta(a={}, b={})", n(a), n(b)),
            Normal { mean, sd } => write!(f, "Normal(m={}, sd={})", n(mean), n(sd)),
            Weibull { scale, shape } => {
                write!(f, "Weibull(scale={}, shape={})", n(scale), n(shape))
            }
            StudentT { df } => write!(f, "Student(df={})", n(df)),
            Gumbel { loc, scale } => write!(f, "Gumbel(loc={}, scale={})", n(loc), n(scale)),
            Exponential { rate } => write!(f, "Exp(rate={})", n(rate)),
            Cauchy { x0, gamma } => write!(f, "Cauchy(x0={}, gamma={})", n(x0), n(gamma)),
            Pareto { loc, shape } => write!(f, "Pareto(loc={}, shape={})", n(loc), n(shape)),
            LogNormal { mlog, sdlog } => {
                write!(f, "LogNormal(mlog={}, sdlog={})", n(mlog), n(sdlog))
            }
            Frechet { shape } => write!(f, "Frechet(shape={})", n(shape)),
            PointMass { value } => write!(f, "PointMass(value={})", n(value)),
        }
    }
}

struct Params {
    spec: String,
    pairs: Vec<(String, f64, bool)>,
}

impl Params {
    fn take(&mut self, keys: &[&str], default: Option<f64>) -> Result<f64> {
        for (key, value, used) in &mut self.pairs {
            if keys.contains(&key.as_str()) {
                if *used {
                    return Err(Error::InvalidSpec(format!(
                        "'{}': parameter '{key}' given twice",
                        self.spec
                    )));
                }
                *used = true;
                return Ok(*value);
            }
        }
        default.ok_or_else(|| {
            Error::InvalidSpec(format!("'{}': missing parameter '{}'", self.spec, keys[0]))
        })
    }

    fn finish(self) -> Result<()> {
        match self.pairs.iter().find(|(_, _, used)| !used) {
            Some((key, _, _)) => Err(Error::InvalidSpec(format!(
                "'{}': unknown parameter '{key}'",
                self.spec
            ))),
            None => Ok(()),
        }
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    /// Parses `family(key=value, ...)`. Family and key names are
    /// case-insensitive; parameters with a conventional default may be
    /// omitted.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let bad = |msg: &str| Error::InvalidSpec(format!("'{text}': {msg}"));
        let (family, body) = match text.find('(') {
            Some(open) => {
                let body = text[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| bad("missing closing parenthesis"))?;
                (text[..open].trim(), body)
            }
            None => (text, ""),
        };
        let mut pairs = Vec::new();
        for item in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| bad("expected key=value"))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| bad(&format!("'{}' is not a number", value.trim())))?;
            pairs.push((key.trim().to_ascii_lowercase(), value, false));
        }
        let mut p = Params {
            spec: text.to_string(),
            pairs,
        };
        use DistributionSpec::*;
        let spec = match family.to_ascii_lowercase().as_str() {
            "uniform" | "unif" => Uniform {
                a: p.take(&["a", "min"], Some(0.0))?,
                b: p.take(&["b", "max"], Some(1.0))?,
            },
            "triangular" | "tri" => Triangular {
                a: p.take(&["a"], None)?,
                b: p.take(&["b"], None)?,
                c: p.take(&["c", "mode"], None)?,
            },
            "beta" => Beta {
                a: p.take(&["a", "alpha"], None)?,
                b: p.take(&["b", "beta"], None)?,
            },
            "normal" | "norm" | "gaussian" => Normal {
                mean: p.take(&["m", "mean", "mu"], Some(0.0))?,
                sd: p.take(&["sd", "sigma"], Some(1.0))?,
            },
            "weibull" => Weibull {
                scale: p.take(&["scale", "lambda"], Some(1.0))?,
                shape: p.take(&["shape", "k"], None)?,
            },
            "student" | "studentt" | "student-t" | "t" => StudentT {
                df: p.take(&["df", "nu"], None)?,
            },
            "gumbel" => Gumbel {
                loc: p.take(&["loc", "mu"], Some(0.0))?,
                scale: p.take(&["scale", "beta"], Some(1.0))?,
            },
            "exp" | "exponential" => Exponential {
                rate: p.take(&["rate", "lambda"], Some(1.0))?,
            },
            "cauchy" => Cauchy {
                x0: p.take(&["x0", "loc"], Some(0.0))?,
                gamma: p.take(&["gamma", "scale"], Some(1.0))?,
            },
            "pareto" => Pareto {
                loc: p.take(&["loc", "xm", "scale"], Some(1.0))?,
                shape: p.take(&["shape", "alpha"], None)?,
            },
            "lognormal" | "lnorm" => LogNormal {
                mlog: p.take(&["mlog", "meanlog", "mu"], Some(0.0))?,
                sdlog: p.take(&["sdlog", "sigma"], Some(1.0))?,
            },
            "frechet" => Frechet {
                shape: p.take(&["shape", "alpha"], None)?,
            },
            "pointmass" | "point" | "constant" => PointMass {
                value: p.take(&["value", "c"], Some(0.0))?,
            },
            other => return Err(bad(&format!("unknown family '{other}'"))),
        };
        p.finish()?;
        spec.validate()
    }
}

enum SamplerKind {
    Direct,
    Beta(Gamma<f64>, Gamma<f64>),
    StudentT(Gamma<f64>),
}

/// A validated spec with any auxiliary generators prepared.
pub struct Sampler {
    spec: DistributionSpec,
    kind: SamplerKind,
}

/// Uniform draw on the open interval `(0, 1)`.
fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

impl Sampler {
    pub fn spec(&self) -> &DistributionSpec {
        &self.spec
    }

    pub fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        use DistributionSpec::*;
        match (&self.kind, self.spec) {
            (SamplerKind::Beta(ga, gb), _) => {
                let x = ga.sample(rng);
                let y = gb.sample(rng);
                x / (x + y)
            }
            (SamplerKind::StudentT(half_chi2), StudentT { df }) => {
                let z: f64 = rng.sample(StandardNormal);
                z / (2.0 * half_chi2.sample(rng) / df).sqrt()
            }
            (_, Normal { mean, sd }) => mean + sd * rng.sample::<f64, _>(StandardNormal),
            (_, LogNormal { mlog, sdlog }) => {
                (mlog + sdlog * rng.sample::<f64, _>(StandardNormal)).exp()
            }
            (_, PointMass { value }) => value,
            (_, spec) => inverse_cdf(spec, open_unit(rng)),
        }
    }

    pub fn fill<R: RngCore + ?Sized>(&self, out: &mut Vec<f64>, n: usize, rng: &mut R) {
        out.clear();
        out.extend((0..n).map(|_| self.draw(rng)));
    }
}

fn inverse_cdf(spec: DistributionSpec, u: f64) -> f64 {
    use DistributionSpec::*;
    match spec {
        Uniform { a, b } => a + (b - a) * u,
        Triangular { a, b, c } => {
            let split = (c - a) / (b - a);
            if u < split {
                a + (u * (b - a) * (c - a)).sqrt()
            } else {
                b - ((1.0 - u) * (b - a) * (b - c)).sqrt()
            }
        }
        Weibull { scale, shape } => scale * (-u.ln()).powf(1.0 / shape),
        Gumbel { loc, scale } => loc - scale * (-u.ln()).ln(),
        Exponential { rate } => -u.ln() / rate,
        Cauchy { x0, gamma } => x0 + gamma * (PI * (u - 0.5)).tan(),
        Pareto { loc, shape } => loc * u.powf(-1.0 / shape),
        Frechet { shape } => (-u.ln()).powf(-1.0 / shape),
        Beta { .. } | Normal { .. } | StudentT { .. } | LogNormal { .. } | PointMass { .. } => {
            unreachable!("{spec} is not sampled by inversion")
        }
    }
}

/// splitmix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hashes a tuple of work coordinates into a stream id.
pub fn derive_stream_id(parts: &[u64]) -> u64 {
    parts.iter().fold(0x6a09_e667_f3bc_c909, |acc, &p| {
        mix64(acc ^ mix64(p.wrapping_add(0x9e37_79b9_7f4a_7c15)))
    })
}

/// Deterministic random stream addressed by `(master_seed, stream_id)`.
#[derive(Debug, Clone)]
pub struct RngStream {
    master_seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_id);
        RngStream {
            master_seed,
            stream_id,
            rng,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// `n` i.i.d. draws from `spec`.
pub fn sample(spec: &DistributionSpec, n: usize, rng: &mut RngStream) -> Result<Sample> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let sampler = spec.sampler()?;
    let mut out = Vec::with_capacity(n);
    sampler.fill(&mut out, n, rng);
    Sample::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn draws(spec: DistributionSpec, n: usize, stream: u64) -> Vec<f64> {
        let sampler = spec.sampler().unwrap();
        let mut rng = RngStream::new(20240601, stream);
        let mut out = Vec::new();
        sampler.fill(&mut out, n, &mut rng);
        out
    }

    #[test]
    fn clt_examples() {
        let u = draws(DistributionSpec::Uniform { a: 0.0, b: 1.0 }, 1_000_000, 1);
        let mean = u.iter().sum::<f64>() / u.len() as f64;
        assert!((mean - 0.5).abs() < 0.002, "mean {mean}");

        let z = draws(DistributionSpec::standard_normal(), 1_000_000, 2);
        let below = z.iter().filter(|&&v| v < 0.674489750196082).count() as f64 / 1e6;
        assert!((below - 0.75).abs() < 0.002, "fraction {below}");

        let e = sample(
            &DistributionSpec::Exponential { rate: 1.0 },
            1_000_000,
            &mut RngStream::new(9, 3),
        )
        .unwrap();
        let med = crate::quantiles::hf7_quantile(&e, crate::Probability::HALF).unwrap();
        assert!((med - 2f64.ln()).abs() < 0.003, "median {med}");
    }

    fn ks_statistic(spec: &DistributionSpec, mut x: Vec<f64>) -> f64 {
        x.sort_by(f64::total_cmp);
        let n = x.len() as f64;
        x.iter()
            .enumerate()
            .map(|(i, &v)| {
                let f = spec.cdf(v);
                (f - i as f64 / n).max((i + 1) as f64 / n - f)
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn every_family_passes_ks() {
        // asymptotic Kolmogorov critical value at significance 0.001
        let n = 10_000;
        let critical = 1.9495 / (n as f64).sqrt();
        for (i, spec) in DistributionSpec::sensitivity_set().into_iter().enumerate() {
            let d = ks_statistic(&spec, draws(spec, n, 100 + i as u64));
            assert!(d < critical, "{spec}: D = {d}");
        }
    }

    #[test]
    fn determinism_and_stream_separation() {
        let spec = DistributionSpec::standard_normal();
        let a = draws(spec, 1000, 7);
        let b = draws(spec, 1000, 7);
        assert_eq!(a, b);
        let c = draws(spec, 1000, 8);
        assert_ne!(a, c);
        let mut r1 = RngStream::new(5, 0);
        let mut r2 = RngStream::new(6, 0);
        assert_ne!(r1.next_u64(), r2.next_u64());
    }

    #[test]
    fn disjoint_streams_are_uncorrelated() {
        let spec = DistributionSpec::standard_normal();
        let n = 100_000;
        for (s1, s2) in [
            (0, 1),
            (derive_stream_id(&[1, 2, 3]), derive_stream_id(&[1, 2, 4])),
        ] {
            let x = draws(spec, n, s1);
            let y = draws(spec, n, s2);
            let mx = x.iter().sum::<f64>() / n as f64;
            let my = y.iter().sum::<f64>() / n as f64;
            let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
            for (a, b) in x.iter().zip(&y) {
                sxy += (a - mx) * (b - my);
                sxx += (a - mx) * (a - mx);
                syy += (b - my) * (b - my);
            }
            let r = sxy / (sxx * syy).sqrt();
            assert!(r.abs() < 0.01, "r = {r}");
        }
    }

    #[test]
    fn stream_ids_differ_by_coordinate() {
        let mut seen = std::collections::HashSet::new();
        for n in 0..20u64 {
            for e in 0..3u64 {
                for c in 0..50u64 {
                    assert!(seen.insert(derive_stream_id(&[1, n, e, c])));
                }
            }
        }
    }

    #[test]
    fn parse_table_names() {
        let text = [
            "Uniform(a=0, b=1)",
            "Triangular(a=0, b=2, c=1)",
            "Triangular(a=0, b=2, c=0.2)",
            "Beta(a=2, b=4)",
            "Beta(a=2, b=10)",
            "Normal(m=0, sd=1)",
            "Weibull(scale=1, shape=2)",
            "Student(df=3)",
            "Gumbel(loc=0, scale=1)",
            "Exp(rate=1)",
            "Cauchy(x0=0, gamma=1)",
            "Pareto(loc=1, shape=0.5)",
            "Pareto(loc=1, shape=2)",
            "LogNormal(mlog=0, sdlog=1)",
            "LogNormal(mlog=0, sdlog=2)",
            "LogNormal(mlog=0, sdlog=3)",
            "Weibull(shape=0.3)",
            "Weibull(shape=0.5)",
            "Frechet(shape=1)",
            "Frechet(shape=3)",
        ];
        let set = DistributionSpec::sensitivity_set();
        assert_eq!(set.len(), 20);
        for (t, spec) in text.iter().zip(&set) {
            assert_eq!(&t.parse::<DistributionSpec>().unwrap(), spec);
            assert_eq!(spec.to_string().parse::<DistributionSpec>().unwrap(), *spec);
        }
        assert_eq!(
            "lognormal(mlog=0,sdlog=2)"
                .parse::<DistributionSpec>()
                .unwrap(),
            DistributionSpec::LogNormal {
                mlog: 0.0,
                sdlog: 2.0
            }
        );
        assert_eq!(
            "CAUCHY".parse::<DistributionSpec>().unwrap(),
            DistributionSpec::Cauchy {
                x0: 0.0,
                gamma: 1.0
            }
        );
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "nope(a=1)",
            "uniform(a=1, b=0)",
            "beta(a=1)",
            "normal(sd=-1)",
            "normal(m=0, q=1)",
            "normal(m=0, m=1)",
            "triangular(a=0, b=1, c=2)",
            "exp(rate=abc)",
            "exp(rate=1",
            "pareto(shape=0)",
        ] {
            assert!(bad.parse::<DistributionSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn point_mass_is_constant() {
        let x = sample(
            &DistributionSpec::PointMass { value: 2.5 },
            10,
            &mut RngStream::new(1, 1),
        )
        .unwrap();
        assert!(x.values().iter().all(|&v| v == 2.5));
    }

    #[test]
    fn cdf_spot_values() {
        use approx::assert_abs_diff_eq;
        let t3 = DistributionSpec::StudentT { df: 3.0 };
        // P(T_3 <= 1) = 1/2 + (1/π)(atan(1/√3) + (1/√3)/(1 + 1/3))
        let r = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(
            t3.cdf(1.0),
            0.5 + (r.atan() + r / (1.0 + r * r)) / PI,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(t3.cdf(-1.0), 1.0 - t3.cdf(1.0), epsilon = 1e-14);
        assert_abs_diff_eq!(
            DistributionSpec::Frechet { shape: 1.0 }.cdf(1.0),
            (-1.0f64).exp(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            DistributionSpec::Pareto {
                loc: 1.0,
                shape: 2.0
            }
            .cdf(2.0),
            0.75
        );
    }
}
