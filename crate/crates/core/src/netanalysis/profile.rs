use std::collections::BTreeMap;
use std::io::Write;

use crate::config::DegreeWeighting;
use crate::error::{Error, Result};
use crate::graph::{link_degrees, Network};

use super::fit_line;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
    Total,
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "in" => Ok(Direction::In),
            "out" => Ok(Direction::Out),
            "total" => Ok(Direction::Total),
            other => Err(Error::InvalidArgument(format!("unknown direction `{other}`"))),
        }
    }
}

/// Least-squares fit of `log p_k = −γ·log k + c` on log-binned frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub k_min: usize,
    pub k_max: usize,
    /// Number of (k, p_k) points used.
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile {
    pub direction: Direction,
    pub histogram: BTreeMap<usize, usize>,
    pub p_k: BTreeMap<usize, f64>,
    pub mean_degree: f64,
    /// `None` when fewer than two nonempty bins lie at or above `k_min`.
    pub power_law: Option<PowerLawFit>,
    pub poisson_mean: f64,
}

pub const DEFAULT_K_MIN: usize = 2;

/// Histogram of unweighted degrees with power-law and Poisson fits.
pub fn degree_profile(net: &Network, direction: Direction) -> Result<DegreeProfile> {
    degree_profile_from(net, direction, DEFAULT_K_MIN)
}

pub fn degree_profile_from(net: &Network, direction: Direction, k_min: usize) -> Result<DegreeProfile> {
    let n = net.vertex_count();
    if n < 2 {
        return Err(Error::InsufficientData(format!("degree profile needs N >= 2, got {n}")));
    }
    let d = link_degrees(net, DegreeWeighting::Count);
    let degrees = match direction {
        Direction::In => d.indeg,
        Direction::Out => d.outdeg,
        Direction::Total => d.deg,
    };
    let mut histogram = BTreeMap::new();
    for k in degrees {
        *histogram.entry(k as usize).or_insert(0usize) += 1;
    }
    let p_k: BTreeMap<usize, f64> = histogram.iter().map(|(&k, &c)| (k, c as f64 / n as f64)).collect();
    let mean_degree = p_k.iter().map(|(&k, &p)| k as f64 * p).sum();
    let power_law = fit_power_law(&p_k, k_min.max(1));
    Ok(DegreeProfile { direction, histogram, p_k, mean_degree, power_law, poisson_mean: mean_degree })
}

// Logarithmic (base 2) bins over k ≥ k_min; each bin's frequency is divided
// by the number of integer degrees it spans so the fit sees a density.
fn fit_power_law(p_k: &BTreeMap<usize, f64>, k_min: usize) -> Option<PowerLawFit> {
    let k_max = *p_k.keys().next_back()?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut lo = k_min;
    while lo <= k_max {
        let next = if lo.is_power_of_two() { 2 * lo } else { lo.next_power_of_two() };
        let hi = next.min(k_max + 1);
        let mass: f64 = p_k.range(lo..hi).map(|(_, p)| p).sum();
        if mass > 0.0 {
            let width = (hi - lo) as f64;
            xs.push(((lo as f64) * ((hi - 1) as f64)).sqrt().ln());
            ys.push((mass / width).ln());
        }
        lo = hi;
    }
    let (slope, _) = fit_line(&xs, &ys)?;
    Some(PowerLawFit { gamma: -slope, k_min, k_max, points: xs.len() })
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `Σ_{k ≥ k_min} k^(−γ)`: explicit sum, then the integral tail.
fn hurwitz_zeta(gamma: f64, k_min: usize) -> f64 {
    const TERMS: usize = 20_000;
    let head: f64 = (k_min..k_min + TERMS).map(|k| (k as f64).powf(-gamma)).sum();
    let edge = (k_min + TERMS) as f64 - 0.5;
    head + edge.powf(1.0 - gamma) / (gamma - 1.0)
}

impl DegreeProfile {
    pub fn vertex_count(&self) -> usize {
        self.histogram.values().sum()
    }

    fn tail(&self, k_min: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.histogram.range(k_min..).map(|(&k, &c)| (k, c))
    }

    /// Log-likelihood of the degrees `k ≥ k_min` under a Poisson law with
    /// the empirical mean, truncated to the same support.
    pub fn poisson_log_likelihood(&self, k_min: usize) -> f64 {
        let m = self.poisson_mean;
        if m <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let below: f64 = (0..k_min).map(|k| (k as f64 * m.ln() - m - ln_factorial(k)).exp()).sum();
        let log_mass = (1.0 - below).max(f64::MIN_POSITIVE).ln();
        self.tail(k_min).map(|(k, c)| c as f64 * (k as f64 * m.ln() - m - ln_factorial(k) - log_mass)).sum()
    }

    /// Maximized log-likelihood of the degrees `k ≥ k_min` (with
    /// `k_min ≥ 1`) under a discrete power law, and the maximizing exponent.
    pub fn power_law_log_likelihood(&self, k_min: usize) -> (f64, f64) {
        let k_min = k_min.max(1);
        let (count, sum_ln): (f64, f64) = self
            .tail(k_min)
            .fold((0.0, 0.0), |(c, s), (k, n)| (c + n as f64, s + n as f64 * (k as f64).ln()));
        let ll = |g: f64| -g * sum_ln - count * hurwitz_zeta(g, k_min).ln();
        // golden-section search, the likelihood is concave in γ
        let (mut a, mut b) = (1.001f64, 8.0f64);
        let r = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..80 {
            let c = b - r * (b - a);
            let d = a + r * (b - a);
            if ll(c) > ll(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let g = 0.5 * (a + b);
        (ll(g), g)
    }

    /// Two-column plot data `k<TAB>p_k`.
    pub fn write_plot_data(&self, mut out: impl Write, fmt: impl Fn(f64) -> String) -> std::io::Result<()> {
        writeln!(out, "k\tp_k")?;
        for (k, p) in &self.p_k {
            writeln!(out, "{k}\t{}", fmt(*p))?;
        }
        Ok(())
    }
}
