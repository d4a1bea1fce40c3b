//! Ranking for trading networks.
//!
//! A vertex gains score by being pointed to by in-link-rich vertices
//! (buying from big buyers) and by pointing to out-link-rich vertices
//! (selling to big sellers). With row vectors the operator is
//! `M = β·Ca·L + (1 − β)·Ch·Lᵀ`: row `j` of `Ca·L` carries `ca_j` of the
//! selling vertex, row `j` of `Ch·Lᵀ` carries `ch_j` of the buying vertex.

use crate::config::RunConfig;
use crate::engine::{power_iterate, smooth, stochasticize, uniform, RankResult, Smoothed, StochasticMatrix};
use crate::error::{Error, Result};
use crate::graph::{link_degrees, DegreeSummary, Mode, Network};
use crate::sparse::CsrMatrix;

/// Per-vertex preferential attachment constants.
#[derive(Debug, Clone, PartialEq)]
pub struct PAConstants {
    pub ca: Vec<f64>,
    pub ch: Vec<f64>,
    /// Sign of `indeg − outdeg`.
    pub p: Vec<i8>,
    /// `|indeg − outdeg|^p`, with `0^0 = 1`.
    pub k_diag: Vec<f64>,
}

/// `ca = (indeg/deg)·k`, `ch = (outdeg/deg)/k` with `k = |indeg − outdeg|^p`.
/// Isolated vertices get `ca = ch = 0` and `k = 1`.
pub fn pa_constants(deg: &DegreeSummary) -> PAConstants {
    let n = deg.deg.len();
    let mut out = PAConstants {
        ca: Vec::with_capacity(n),
        ch: Vec::with_capacity(n),
        p: Vec::with_capacity(n),
        k_diag: Vec::with_capacity(n),
    };
    for i in 0..n {
        let (din, dout, d) = (deg.indeg[i], deg.outdeg[i], deg.deg[i]);
        let p: i8 = if din > dout {
            1
        } else if din < dout {
            -1
        } else {
            0
        };
        let gap = (din - dout).abs();
        let k = match p {
            1 => gap,
            -1 => 1.0 / gap,
            _ => 1.0,
        };
        let (ca, ch) = if d > 0.0 { (din / d * k, dout / d / k) } else { (0.0, 0.0) };
        out.p.push(p);
        out.k_diag.push(k);
        out.ca.push(ca);
        out.ch.push(ch);
    }
    out
}

fn require_trading(net: &Network, algorithm: &'static str) -> Result<()> {
    if net.mode() != Mode::Trading {
        return Err(Error::WrongMode { algorithm, expected: "trading" });
    }
    if net.vertex_count() == 0 {
        return Err(Error::EmptyNetwork);
    }
    Ok(())
}

/// Constants of a trading network under the configured degree weighting.
pub fn trade_constants(net: &Network, cfg: &RunConfig) -> PAConstants {
    pa_constants(&link_degrees(net, cfg.degree_weighting()))
}

/// The unnormalized operator `M = β·Ca·L + (1 − β)·Ch·Lᵀ`.
pub fn trade_matrix(net: &Network, cfg: &RunConfig) -> Result<CsrMatrix> {
    require_trading(net, "traderank")?;
    let pa = trade_constants(net, cfg);
    let l = net.links();
    let authority = l.scale_rows(&pa.ca);
    let hub = l.transpose().scale_rows(&pa.ch);
    Ok(authority.add_scaled(cfg.beta(), &hub, 1.0 - cfg.beta()))
}

/// `R = ζ·N⁻¹M + ((1 − ζ)/N)·eeᵀ`.
pub fn traderank_operator(net: &Network, cfg: &RunConfig) -> Result<Smoothed<StochasticMatrix>> {
    smooth(stochasticize(&trade_matrix(net, cfg)?)?, cfg.zeta())
}

pub fn traderank(net: &Network, cfg: &RunConfig) -> Result<RankResult> {
    let op = traderank_operator(net, cfg)?;
    power_iterate(&op, &uniform(net.vertex_count()), cfg.tolerance(), cfg.max_iterations(), true)
}

/// Smoothed buyer (`Ca·L`) and seller (`Ch·Lᵀ`) operators.
pub fn buyer_seller_operators(
    net: &Network,
    cfg: &RunConfig,
) -> Result<(Smoothed<StochasticMatrix>, Smoothed<StochasticMatrix>)> {
    require_trading(net, "buyer-seller")?;
    let pa = trade_constants(net, cfg);
    let l = net.links();
    let buyer = smooth(stochasticize(&l.scale_rows(&pa.ca))?, cfg.zeta())?;
    let seller = smooth(stochasticize(&l.transpose().scale_rows(&pa.ch))?, cfg.zeta())?;
    Ok((buyer, seller))
}

/// Separate rankings of agents as buyers and as sellers.
pub fn buyer_seller(net: &Network, cfg: &RunConfig) -> Result<(RankResult, RankResult)> {
    let (b, s) = buyer_seller_operators(net, cfg)?;
    let start = uniform(net.vertex_count());
    let run = |op| power_iterate(op, &start, cfg.tolerance(), cfg.max_iterations(), true);
    Ok((run(&b)?, run(&s)?))
}

/// Reserved (non-traded) resource amounts per agent and the blend weight of
/// the flow ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct BlendInput {
    reserved: Vec<f64>,
    c: f64,
}

impl BlendInput {
    pub fn new(reserved: Vec<f64>, c: f64) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::Config(format!("c must lie in (0, 1), got {c}")));
        }
        if reserved.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidArgument("reserved amounts must be nonnegative".into()));
        }
        if reserved.iter().all(|v| *v == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(BlendInput { reserved, c })
    }

    pub fn reserved(&self) -> &[f64] {
        &self.reserved
    }

    pub fn c(&self) -> f64 {
        self.c
    }
}

/// `r̂ = c·r + (1 − c)·u/Σu`.
pub fn blend_reserved(rank: &RankResult, blend: &BlendInput) -> Result<RankResult> {
    let n = rank.scores.len();
    if blend.reserved.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: blend.reserved.len() });
    }
    if !rank.converged {
        return Err(Error::InvalidArgument("cannot blend an unconverged ranking".into()));
    }
    let total: f64 = blend.reserved.iter().sum();
    let scores = rank
        .scores
        .iter()
        .zip(&blend.reserved)
        .map(|(r, u)| blend.c * r + (1.0 - blend.c) * u / total)
        .collect();
    Ok(RankResult { scores, ..rank.clone() })
}
