//! Two-sided Gaussian probabilities and the inequalities the rounding
//! analysis leans on.
//!
//! `phi(t) = P{|xi| <= t}` and `phi_bar(t) = P{|xi| > t}` for a standard
//! normal `xi`. Both are evaluated through `erf`/`erfc` at `t / sqrt(2)`:
//! a positive-term series below the crossover and a continued fraction for
//! the complementary function above it, so `phi_bar` keeps full relative
//! accuracy deep into the tail instead of being computed as `1 - phi`.

use rand::Rng;

use crate::error::{Error, Result};

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const SQRT_2: f64 = std::f64::consts::SQRT_2;
/// `sqrt(2 / pi)`, the density of `|xi|` at zero.
const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;

/// Below this argument of `erf` the series is used, above it the continued fraction.
const ERF_CROSSOVER: f64 = 1.5;

/// Additive slack for the scaling inequality check.
pub const SCALING_SLACK: f64 = 1e-12;
/// Additive slack for the tail sandwich check.
pub const SANDWICH_SLACK: f64 = 1e-13;

fn check_t(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain(format!("expected finite t >= 0, got {t}")));
    }
    Ok(())
}

/// `erf(x)` for `0 <= x < ERF_CROSSOVER` via
/// `2/sqrt(pi) * exp(-x^2) * sum_n 2^n x^(2n+1) / (2n+1)!!`.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term > sum * 1e-17 {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
    }
    FRAC_2_SQRT_PI * (-x2).exp() * sum
}

/// `erfc(x)` for `x >= ERF_CROSSOVER`, modified Lentz evaluation of
/// `exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`.
fn erfc_cfrac(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = f;
    let mut d = 0.0;
    for n in 1..5000 {
        let a = 0.5 * n as f64;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (f * std::f64::consts::PI.sqrt())
}

/// Two-sided standard normal probability `P{|xi| <= t}`.
pub fn phi(t: f64) -> Result<f64> {
    check_t(t)?;
    let x = t / SQRT_2;
    if x < ERF_CROSSOVER {
        Ok(erf_series(x))
    } else {
        Ok(1.0 - erfc_cfrac(x))
    }
}

/// Two-sided tail `P{|xi| > t}`, accurate in relative terms until the
/// result leaves the normal `f64` range (around `t = 37.5`).
pub fn phi_bar(t: f64) -> Result<f64> {
    check_t(t)?;
    let x = t / SQRT_2;
    if x < ERF_CROSSOVER {
        Ok(1.0 - erf_series(x))
    } else {
        Ok(erfc_cfrac(x))
    }
}

/// Density of `|xi|` at `t >= 0`.
fn abs_density(t: f64) -> f64 {
    SQRT_2_OVER_PI * (-0.5 * t * t).exp()
}

/// Inverse of [`phi_bar`]: the `t > 0` with `phi_bar(t) = p`.
///
/// Brackets by doubling, bisects, then polishes with Newton steps on
/// `ln phi_bar(t) - ln p`, which stays well scaled for tiny `p`.
pub fn phi_bar_inverse(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("expected p in (0, 1), got {p}")));
    }
    let tail = |t: f64| phi_bar(t).expect("t is non-negative");

    let mut lo = 0.0;
    let mut hi = 1.0;
    while tail(hi) > p {
        lo = hi;
        hi *= 2.0;
        if hi > 64.0 {
            return Err(Error::domain(format!("p = {p:e} is below the representable tail")));
        }
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if tail(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-6 * hi.max(1e-300) {
            break;
        }
    }

    let target = p.ln();
    let mut t = 0.5 * (lo + hi);
    for _ in 0..50 {
        let q = tail(t);
        if q <= 0.0 {
            break;
        }
        // d/dt ln phi_bar(t) = -density(t) / phi_bar(t)
        let slope = -abs_density(t) / q;
        let step = (q.ln() - target) / slope;
        let next = (t - step).clamp(lo, hi);
        if (next - t).abs() <= 1e-15 * t.max(1e-300) {
            t = next;
            break;
        }
        t = next;
    }
    Ok(t)
}

/// `phi_bar(beta * t) <= phi_bar(t)^(beta^2)` up to [`SCALING_SLACK`].
pub fn check_scaling_inequality(t: f64, beta: f64) -> Result<bool> {
    if t.is_nan() || t <= 0.0 || t.is_infinite() {
        return Err(Error::domain(format!("expected t > 0, got {t}")));
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::domain(format!("expected beta in (0, 1], got {beta}")));
    }
    let lhs = phi_bar(beta * t)?;
    let rhs = phi_bar(t)?.powf(beta * beta);
    Ok(lhs <= rhs + SCALING_SLACK)
}

/// Lower and upper tail bounds
/// `2t/(sqrt(2 pi)(t^2+1)) e^(-t^2/2)` and `2/(sqrt(2 pi) t) e^(-t^2/2)`.
pub fn tail_bounds(t: f64) -> (f64, f64) {
    let dens = abs_density(t);
    (dens * t / (t * t + 1.0), dens / t)
}

/// Both strict tail bounds hold at `t`, each up to [`SANDWICH_SLACK`].
pub fn check_tail_sandwich(t: f64) -> Result<bool> {
    if t.is_nan() || t <= 0.0 || t.is_infinite() {
        return Err(Error::domain(format!("expected t > 0, got {t}")));
    }
    let tail = phi_bar(t)?;
    let (lower, upper) = tail_bounds(t);
    Ok(lower < tail + SANDWICH_SLACK && tail < upper + SANDWICH_SLACK)
}

/// Sampled tail curve `(t, phi_bar(t))` on a uniform grid of positive `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailGrid {
    points: Vec<(f64, f64)>,
    resolution: f64,
}

impl TailGrid {
    /// Grid `resolution, 2*resolution, ...` up to `t_max`.
    pub fn new(resolution: f64, t_max: f64) -> Result<Self> {
        if resolution.is_nan() || resolution <= 0.0 || t_max.is_nan() || t_max < resolution || t_max.is_infinite() {
            return Err(Error::domain(format!("bad grid: resolution {resolution}, t_max {t_max}")));
        }
        let count = (t_max / resolution + 1e-9).floor() as usize;
        let mut points = Vec::with_capacity(count);
        for i in 1..=count {
            let t = resolution * i as f64;
            let q = phi_bar(t)?;
            if !(q > 0.0 && q < 1.0) {
                return Err(Error::domain(format!("phi_bar({t}) = {q} left (0, 1)")));
            }
            if let Some(&(_, prev)) = points.last() {
                if q >= prev {
                    return Err(Error::domain(format!("phi_bar not decreasing at t = {t}")));
                }
            }
            points.push((t, q));
        }
        Ok(TailGrid { points, resolution })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }
}

/// Marsaglia polar sampler; keeps the second variate of each accepted pair.
#[derive(Debug, Default, Clone)]
pub struct PolarNormal {
    spare: Option<f64>,
}

impl PolarNormal {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let a = 2.0 * rng.random::<f64>() - 1.0;
            let b = 2.0 * rng.random::<f64>() - 1.0;
            let s = a * a + b * b;
            if s > 0.0 && s < 1.0 {
                let scale = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(b * scale);
                return a * scale;
            }
        }
    }

    pub fn fill<R: Rng + ?Sized>(&mut self, rng: &mut R, out: &mut [f64]) {
        for x in out {
            *x = self.sample(rng);
        }
    }
}

/// `dim` independent standard normals drawn from `rng`.
pub fn sample_gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Vec<f64>> {
    if dim == 0 {
        return Err(Error::domain("gaussian vector dimension must be positive"));
    }
    let mut out = vec![0.0; dim];
    PolarNormal::new().fill(rng, &mut out);
    Ok(out)
}
