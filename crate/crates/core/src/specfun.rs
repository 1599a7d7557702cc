//! Special functions used by the estimators: the regularized incomplete beta
//! function, the beta density, and the standard normal CDF and quantile.
//!
//! Everything here is a pure function of its arguments.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

/// A real number in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const HALF: Probability = Probability(0.5);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::Domain {
                what: "probability",
                value,
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `true` if strictly inside `(0, 1)`.
    pub fn is_interior(self) -> bool {
        self.0 > 0.0 && self.0 < 1.0
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

/// Shape parameters of a Beta distribution; both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    alpha: f64,
    beta: f64,
}

impl BetaParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::Domain {
                what: "beta shape alpha",
                value: alpha,
            });
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::Domain {
                what: "beta shape beta",
                value: beta,
            });
        }
        Ok(BetaParams { alpha, beta })
    }

    /// Parameters of the Beta distribution that generates Harrell-Davis
    /// weights for the `p`-th quantile of a sample of size `n`:
    /// `((n + 1) p, (n + 1)(1 - p))`.
    pub fn for_quantile(n: usize, p: Probability) -> Result<Self> {
        let m = n as f64 + 1.0;
        Self::new(m * p.value(), m * (1.0 - p.value()))
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Mode of the density; only meaningful when both shapes exceed 1.
    pub fn mode(&self) -> f64 {
        (self.alpha - 1.0) / (self.alpha + self.beta - 2.0)
    }
}

fn check_unit(v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "beta argument",
            value: v,
        })
    }
}

/// Regularized incomplete beta function `I_v(alpha, beta)`.
pub fn reg_inc_beta(v: f64, params: BetaParams) -> Result<Probability> {
    check_unit(v)?;
    Ok(Probability(inc_beta(v, params.alpha, params.beta)))
}

/// Density of `Beta(alpha, beta)` at `v`. Returns `+inf` at a boundary
/// where the density is unbounded.
pub fn beta_pdf(v: f64, params: BetaParams) -> Result<f64> {
    check_unit(v)?;
    Ok(beta_density(v, params.alpha, params.beta))
}

pub(crate) fn beta_density(x: f64, a: f64, b: f64) -> f64 {
    if x == 0.0 || x == 1.0 {
        // shape on the side of the boundary being evaluated
        let (near, far) = if x == 0.0 { (a, b) } else { (b, a) };
        return if near < 1.0 {
            f64::INFINITY
        } else if near == 1.0 {
            (-ln_beta(near, far)).exp()
        } else {
            0.0
        };
    }
    front(x, a, b) / (x * (1.0 - x))
}

pub(crate) fn inc_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    if a == b && x == 0.5 {
        return 0.5;
    }
    if x > (a + 1.0) / (a + b + 2.0) {
        1.0 - inc_beta_cf(1.0 - x, b, a)
    } else {
        inc_beta_cf(x, a, b)
    }
}

fn inc_beta_cf(x: f64, a: f64, b: f64) -> f64 {
    let f = front(x, a, b);
    if f == 0.0 {
        return 0.0;
    }
    f * beta_continued_fraction(x, a, b) / a
}

/// Modified Lentz evaluation of the continued fraction for `I_x(a, b)`.
/// Converges quickly for `x < (a + 1) / (a + b + 2)`.
fn beta_continued_fraction(x: f64, a: f64, b: f64) -> f64 {
    const MAX_ITER: usize = 10_000;
    const EPS: f64 = 1e-16;
    const TINY: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// `x^a (1 - x)^b / B(a, b)` for `0 < x < 1`.
///
/// Large shapes go through Stirling's series so that the huge terms of
/// `ln Γ` cancel analytically instead of numerically.
fn front(x: f64, a: f64, b: f64) -> f64 {
    const LARGE: f64 = 8.0;
    let y = 1.0 - x;
    if a >= LARGE && b >= LARGE {
        let s = a + b;
        let x0 = a / s;
        let y0 = b / s;
        let t = a * ((x - x0) / x0).ln_1p() + b * ((x0 - x) / y0).ln_1p();
        let bcorr = stirling_tail(a) + stirling_tail(b) - stirling_tail(s);
        (a * b / (2.0 * PI * s)).sqrt() * (t - bcorr).exp()
    } else if b >= LARGE {
        front_small_large(x, y, a, b).exp()
    } else if a >= LARGE {
        front_small_large(y, x, b, a).exp()
    } else {
        (a * x.ln() + b * (-x).ln_1p() - ln_beta(a, b)).exp()
    }
}

/// Log of the beta front factor when `a` is small and `b >= 8`.
/// Uses `ln Γ(b) - ln Γ(a + b)` expanded with Stirling's series.
fn front_small_large(x: f64, y: f64, a: f64, b: f64) -> f64 {
    let s = a + b;
    // ln Γ(b) - ln Γ(s)
    let gamma_ratio =
        -(b - 0.5) * (a / b).ln_1p() - a * s.ln() + a + stirling_tail(b) - stirling_tail(s);
    let ln_y = if x < 0.5 { (-x).ln_1p() } else { y.ln() };
    a * x.ln() + b * ln_y - ln_gamma(a) - gamma_ratio
}

pub(crate) fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// `ln Γ(x)` for `x > 0`.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    const SHIFT_TO: f64 = 8.0;
    if x >= SHIFT_TO {
        return (x - 0.5) * x.ln() - x + LN_SQRT_2PI + stirling_tail(x);
    }
    let mut z = x;
    let mut prod = 1.0;
    while z < SHIFT_TO {
        prod *= z;
        z += 1.0;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + stirling_tail(z) - prod.ln()
}

/// `ln Γ(x) - [(x - 1/2) ln x - x + ln √(2π)]` for `x >= 8`.
fn stirling_tail(x: f64) -> f64 {
    // B_{2k} / (2k (2k - 1)), k = 1..8
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let r = 1.0 / x;
    let r2 = r * r;
    let mut acc = 0.0;
    for c in C.iter().rev() {
        acc = acc * r2 + c;
    }
    acc * r
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_2PI
}

/// Standard normal CDF `Φ(x)`.
pub fn normal_cdf(x: f64) -> Probability {
    Probability(0.5 * libm::erfc(-x / SQRT_2))
}

/// Standard normal quantile `Φ⁻¹(p)` for `0 < p < 1`.
///
/// Acklam's rational approximation followed by one Halley step against
/// [`normal_cdf`]. The upper half is obtained by reflection, so
/// `normal_quantile(1 - p) == -normal_quantile(p)` holds exactly whenever
/// `1 - p` is representable.
pub fn normal_quantile(p: Probability) -> Result<f64> {
    let p = p.value();
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain {
            what: "normal quantile probability",
            value: p,
        });
    }
    if p > 0.5 {
        return Ok(-lower_normal_quantile(1.0 - p));
    }
    Ok(lower_normal_quantile(p))
}

fn lower_normal_quantile(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    if p == 0.5 {
        return 0.0;
    }
    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    };

    let e = normal_cdf(x).value() - p;
    let u = e * SQRT_2PI * (0.5 * x * x).exp();
    if u.is_finite() {
        x - u / (1.0 + 0.5 * x * u)
    } else {
        x
    }
}
