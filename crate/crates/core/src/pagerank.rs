//! PageRank on the loop-free link matrix.

use crate::config::RunConfig;
use crate::engine::{power_iterate, smooth, stochasticize, uniform, RankResult, Smoothed, StochasticMatrix};
use crate::error::{Error, Result};
use crate::graph::Network;

/// `P = α·S + ((1 − α)/N)·eeᵀ` with `S` the row-normalized link matrix and
/// dangling rows made uniform.
pub fn pagerank_operator(net: &Network, cfg: &RunConfig) -> Result<Smoothed<StochasticMatrix>> {
    if net.vertex_count() == 0 {
        return Err(Error::EmptyNetwork);
    }
    smooth(stochasticize(net.links())?, cfg.alpha())
}

pub fn pagerank(net: &Network, cfg: &RunConfig) -> Result<RankResult> {
    let op = pagerank_operator(net, cfg)?;
    power_iterate(&op, &uniform(net.vertex_count()), cfg.tolerance(), cfg.max_iterations(), true)
}
