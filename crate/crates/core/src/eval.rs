//! Similarity metrics and the iteration-count benchmark.

use std::io::Write;

use rayon::prelude::*;

use crate::config::{DegreeWeighting, RunConfig};
use crate::engine::RankResult;
use crate::error::{Error, Result};
use crate::graph::{link_degrees, Mode, Network};
use crate::hits::{hits, hits_accelerated};
use crate::pagerank::pagerank;
use crate::traderank::traderank;

/// Rank positions induced by a score vector; `ranks[i] == 1` for the
/// largest score. Ties go to the lower vertex index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    pub ranks: Vec<usize>,
}

impl Ordering {
    pub fn from_scores(scores: &[f64]) -> Self {
        let mut order: Vec<usize> = (0..scores.len()).collect();
        order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
        let mut ranks = vec![0; scores.len()];
        for (pos, &v) in order.iter().enumerate() {
            ranks[v] = pos + 1;
        }
        Ordering { ranks }
    }

    /// Vertex indices from highest to lowest score.
    pub fn descending(&self) -> Vec<usize> {
        let mut out = vec![0; self.ranks.len()];
        for (v, &r) in self.ranks.iter().enumerate() {
            out[r - 1] = v;
        }
        out
    }
}

fn check_dims(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), actual: y.len() });
    }
    Ok(())
}

/// `x·y / (‖x‖₂‖y‖₂)`.
pub fn cosine(x: &[f64], y: &[f64]) -> Result<f64> {
    check_dims(x, y)?;
    let norm = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let (nx, ny) = (norm(x), norm(y));
    if nx == 0.0 || ny == 0.0 {
        return Err(Error::ZeroVector);
    }
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    Ok(dot / (nx * ny))
}

/// `1 − 6·Σd² / (N(N² − 1))` over the induced orderings, without tie
/// correction.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    check_dims(x, y)?;
    let n = x.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!("spearman needs N >= 2, got {n}")));
    }
    let (ox, oy) = (Ordering::from_scores(x), Ordering::from_scores(y));
    let d2: f64 = ox
        .ranks
        .iter()
        .zip(&oy.ranks)
        .map(|(a, b)| {
            let d = *a as f64 - *b as f64;
            d * d
        })
        .sum();
    let n = n as f64;
    Ok(1.0 - 6.0 * d2 / (n * (n * n - 1.0)))
}

/// Total export plus import of every agent, normalized to sum 1.
pub fn total_volume(net: &Network) -> Result<Vec<f64>> {
    if net.mode() != Mode::Trading {
        return Err(Error::WrongMode { algorithm: "total volume", expected: "trading" });
    }
    let deg = link_degrees(net, DegreeWeighting::Volume).deg;
    let total: f64 = deg.iter().sum();
    if deg.is_empty() || total <= 0.0 {
        return Err(Error::EmptyNetwork);
    }
    Ok(deg.into_iter().map(|d| d / total).collect())
}

/// Outcome of one algorithm on one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct CellRun {
    pub iterations: usize,
    pub converged: bool,
    pub final_residual: f64,
}

impl From<&RankResult> for CellRun {
    fn from(r: &RankResult) -> Self {
        CellRun {
            iterations: r.iterations,
            converged: r.converged,
            final_residual: r.final_residual().unwrap_or(f64::NAN),
        }
    }
}

pub type Cell = std::result::Result<CellRun, String>;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    /// Authority-chain count; the hub chain is reported separately.
    pub hits: Cell,
    pub hits_hub: Cell,
    pub pagerank: Cell,
    pub traderank: Cell,
    pub hits_accel: Cell,
    pub hits_accel_hub: Cell,
    /// Similarity of the traderank scores to total volume.
    pub cosine: Option<f64>,
    pub spearman: Option<f64>,
}

impl BenchmarkRow {
    fn cells(&self) -> [(&'static str, &Cell); 6] {
        [
            ("hits", &self.hits),
            ("hits_hub", &self.hits_hub),
            ("pagerank", &self.pagerank),
            ("traderank", &self.traderank),
            ("hits_accel", &self.hits_accel),
            ("hits_accel_hub", &self.hits_accel_hub),
        ]
    }
}

/// Column means over the rows where a value exists.
#[derive(Debug, Clone, PartialEq)]
pub struct AverageRow {
    pub vertices: f64,
    pub edges: f64,
    pub iterations: [Option<f64>; 6],
    pub cosine: Option<f64>,
    pub spearman: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub rows: Vec<BenchmarkRow>,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (mut sum, mut count) = (0.0, 0usize);
    for v in values {
        sum += v;
        count += 1;
    }
    (count > 0).then(|| sum / count as f64)
}

impl BenchmarkReport {
    pub fn average(&self) -> AverageRow {
        let mut iterations = [None; 6];
        for (k, slot) in iterations.iter_mut().enumerate() {
            *slot = mean(
                self.rows.iter().filter_map(|r| r.cells()[k].1.as_ref().ok().map(|c| c.iterations as f64)),
            );
        }
        AverageRow {
            vertices: mean(self.rows.iter().map(|r| r.vertices as f64)).unwrap_or(0.0),
            edges: mean(self.rows.iter().map(|r| r.edges as f64)).unwrap_or(0.0),
            iterations,
            cosine: mean(self.rows.iter().filter_map(|r| r.cosine)),
            spearman: mean(self.rows.iter().filter_map(|r| r.spearman)),
        }
    }

    /// Table with one row per dataset plus an `Average` row. Cells of runs
    /// that failed read `NA`; unconverged or failed runs are listed in
    /// `notes`.
    pub fn write_csv(&self, mut out: impl Write, fmt: impl Fn(f64) -> String) -> std::io::Result<()> {
        writeln!(
            out,
            "dataset,vertices,edges,hits,hits_hub,pagerank,traderank,hits_accel,hits_accel_hub,cos_theta,rho,notes"
        )?;
        let opt = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), &fmt);
        for r in &self.rows {
            let mut notes = Vec::new();
            let mut cols = Vec::new();
            for (name, cell) in r.cells() {
                match cell {
                    Ok(c) => {
                        cols.push(c.iterations.to_string());
                        if !c.converged {
                            notes.push(format!("{name} not converged"));
                        }
                    }
                    Err(e) => {
                        cols.push("NA".into());
                        notes.push(format!("{name}: {e}"));
                    }
                }
            }
            writeln!(
                out,
                "{},{},{},{},{},{},\"{}\"",
                r.name,
                r.vertices,
                r.edges,
                cols.join(","),
                opt(r.cosine),
                opt(r.spearman),
                notes.join("; ").replace('"', "'"),
            )?;
        }
        let avg = self.average();
        let iters: Vec<String> = avg.iterations.iter().map(|v| opt(*v)).collect();
        writeln!(
            out,
            "Average,{},{},{},{},{},\"\"",
            fmt(avg.vertices),
            fmt(avg.edges),
            iters.join(","),
            opt(avg.cosine),
            opt(avg.spearman),
        )
    }
}

fn bench_one(name: &str, net: &Network, cfg: &RunConfig) -> BenchmarkRow {
    let cell = |r: &Result<RankResult>| -> Cell { r.as_ref().map(CellRun::from).map_err(|e| e.to_string()) };
    let pr = pagerank(net, cfg);
    let (h_auth, h_hub) = match hits(net, cfg) {
        Ok(h) => (Ok(h.authority), Ok(h.hub)),
        Err(e) => (Err(e.to_string()), Err(e.to_string())),
    };
    let (a_auth, a_hub) = match hits_accelerated(net, cfg) {
        Ok(h) => (Ok(h.authority), Ok(h.hub)),
        Err(e) => (Err(e.to_string()), Err(e.to_string())),
    };
    let tr = traderank(net, cfg);
    let (mut cos, mut rho) = (None, None);
    if let (Ok(r), Ok(t)) = (&tr, total_volume(net)) {
        cos = cosine(&r.scores, &t).ok();
        rho = spearman(&r.scores, &t).ok();
    }
    let run = |r: &std::result::Result<RankResult, String>| -> Cell {
        r.as_ref().map(CellRun::from).map_err(Clone::clone)
    };
    BenchmarkRow {
        name: name.to_owned(),
        vertices: net.vertex_count(),
        edges: net.link_count(),
        hits: run(&h_auth),
        hits_hub: run(&h_hub),
        pagerank: cell(&pr),
        traderank: cell(&tr),
        hits_accel: run(&a_auth),
        hits_accel_hub: run(&a_hub),
        cosine: cos,
        spearman: rho,
    }
}

/// Run every algorithm on every dataset at the configured tolerance.
/// Failures are recorded per cell.
pub fn benchmark(datasets: &[(String, Network)], cfg: &RunConfig) -> BenchmarkReport {
    let rows = datasets.par_iter().map(|(name, net)| bench_one(name, net, cfg)).collect();
    BenchmarkReport { rows }
}
