//! HITS and its preferential-attachment-weighted variant.
//!
//! Both run two independent power iterations, one per chain. The authority
//! chain applies `x ↦ ((x∘w₁)·Lᵀ ∘ w₂)·L`, the hub chain
//! `x ↦ ((x∘w₂)·L ∘ w₁)·Lᵀ`; classic HITS has `w₁ = w₂ = 1`, the
//! accelerated variant `w₁ = ca`, `w₂ = ch`. Each chain operator is then
//! smoothed with ζ.

use crate::config::{DegreeWeighting, RunConfig};
use crate::engine::{power_iterate, uniform, LinearOperator, RankResult, Smoothed};
use crate::error::{Error, Result};
use crate::graph::{link_degrees, Network};
use crate::sparse::CsrMatrix;
use crate::traderank::pa_constants;

#[derive(Debug, Clone, PartialEq)]
pub struct HitsResult {
    pub authority: RankResult,
    pub hub: RankResult,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chain {
    Authority,
    Hub,
}

/// One HITS chain as an unsmoothed operator.
#[derive(Debug, Clone)]
pub struct HitsOperator {
    links: CsrMatrix,
    chain: Chain,
    // `None` stands for all-ones.
    ca: Option<Vec<f64>>,
    ch: Option<Vec<f64>>,
}

fn scaled<'a>(x: &'a [f64], w: &Option<Vec<f64>>, buf: &'a mut Vec<f64>) -> &'a [f64] {
    match w {
        None => x,
        Some(w) => {
            buf.clear();
            buf.extend(x.iter().zip(w).map(|(a, b)| a * b));
            buf
        }
    }
}

impl HitsOperator {
    pub fn classic(net: &Network, chain: Chain) -> Self {
        HitsOperator { links: net.links().clone(), chain, ca: None, ch: None }
    }

    /// Authority chain `Ca·Lᵀ·Ch·L`, hub chain `Ch·L·Ca·Lᵀ`.
    pub fn weighted(net: &Network, chain: Chain, ca: Vec<f64>, ch: Vec<f64>) -> Result<Self> {
        let n = net.vertex_count();
        for v in [&ca, &ch] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: v.len() });
            }
        }
        Ok(HitsOperator { links: net.links().clone(), chain, ca: Some(ca), ch: Some(ch) })
    }
}

impl LinearOperator for HitsOperator {
    fn dim(&self) -> usize {
        self.links.n_rows()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        let mut buf = Vec::new();
        let mut mid = vec![0.0; x.len()];
        match self.chain {
            Chain::Authority => {
                // hub scores, then authority scores
                self.links.mul_vec(scaled(x, &self.ca, &mut buf), &mut mid);
                self.links.vec_mul(scaled(&mid, &self.ch, &mut buf), out);
            }
            Chain::Hub => {
                self.links.vec_mul(scaled(x, &self.ch, &mut buf), &mut mid);
                self.links.mul_vec(scaled(&mid, &self.ca, &mut buf), out);
            }
        }
    }
}

fn run(net: &Network, cfg: &RunConfig, make: impl Fn(Chain) -> Result<HitsOperator>) -> Result<HitsResult> {
    let n = net.vertex_count();
    if n == 0 {
        return Err(Error::EmptyNetwork);
    }
    let start = uniform(n);
    let chain = |c| -> Result<RankResult> {
        let op = Smoothed::new(make(c)?, cfg.zeta())?;
        power_iterate(&op, &start, cfg.tolerance(), cfg.max_iterations(), true)
    };
    Ok(HitsResult { authority: chain(Chain::Authority)?, hub: chain(Chain::Hub)? })
}

/// Dominant eigenvectors of `ζ·LᵀL + ((1 − ζ)/N)·eeᵀ` (authority) and
/// `ζ·LLᵀ + ((1 − ζ)/N)·eeᵀ` (hub).
pub fn hits(net: &Network, cfg: &RunConfig) -> Result<HitsResult> {
    run(net, cfg, |c| Ok(HitsOperator::classic(net, c)))
}

/// HITS with caller-supplied per-vertex weights in place of `ca`/`ch`.
pub fn hits_with_weights(net: &Network, cfg: &RunConfig, ca: &[f64], ch: &[f64]) -> Result<HitsResult> {
    run(net, cfg, |c| HitsOperator::weighted(net, c, ca.to_vec(), ch.to_vec()))
}

/// HITS where every page's contribution is weighted by its preferential
/// attachment constants, computed from unweighted link counts.
pub fn hits_accelerated(net: &Network, cfg: &RunConfig) -> Result<HitsResult> {
    let pa = pa_constants(&link_degrees(net, DegreeWeighting::Count));
    hits_with_weights(net, cfg, &pa.ca, &pa.ch)
}
