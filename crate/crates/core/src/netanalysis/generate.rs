use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric, LogNormal};

use crate::error::{Error, Result};
use crate::graph::{Edge, Mode, Network};

/// How a new vertex chooses the existing vertices it links to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attachment {
    /// Probability proportional to current total degree.
    Preferential,
    /// Every existing vertex equally likely.
    Uniform,
}

/// Snapshots of one growing network, oldest first. Vertex sets are nested.
#[derive(Debug, Clone)]
pub struct GrowthHistory {
    pub snapshots: Vec<Network>,
}

impl GrowthHistory {
    pub fn last(&self) -> &Network {
        self.snapshots.last().expect("history has at least one snapshot")
    }
}

#[derive(Debug, Clone)]
pub struct GrowthOptions {
    pub n: usize,
    pub m_edges: usize,
    pub seed: u64,
    pub attachment: Attachment,
    /// Record a snapshot every this many vertices; the final network is
    /// always recorded. Defaults to `n / 10`.
    pub snapshot_every: Option<usize>,
    /// Emit both directions of every edge instead of new → old only.
    pub symmetric: bool,
}

impl GrowthOptions {
    pub fn new(n: usize, m_edges: usize, seed: u64) -> Self {
        GrowthOptions {
            n,
            m_edges,
            seed,
            attachment: Attachment::Preferential,
            snapshot_every: None,
            symmetric: false,
        }
    }

    pub fn attachment(mut self, a: Attachment) -> Self {
        self.attachment = a;
        self
    }

    pub fn snapshot_every(mut self, every: usize) -> Self {
        self.snapshot_every = Some(every);
        self
    }

    pub fn symmetric(mut self, yes: bool) -> Self {
        self.symmetric = yes;
        self
    }
}

fn numbered_ids(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn unit(source: usize, target: usize) -> Edge {
    Edge { source, target, weight: 1.0, resource: None }
}

/// Grow a network from an `m_edges`-clique, adding one vertex at a time
/// with `m_edges` links to distinct existing vertices.
pub fn grow(opts: &GrowthOptions) -> Result<GrowthHistory> {
    let (n, m) = (opts.n, opts.m_edges);
    if m < 1 || n <= m {
        return Err(Error::InvalidArgument(format!("growth needs n > m_edges >= 1, got n={n}, m_edges={m}")));
    }
    let every = opts.snapshot_every.unwrap_or(n / 10).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ids = numbered_ids(n);

    let mut edges: Vec<Edge> = Vec::new();
    // one entry per edge endpoint, so sampling from it is degree-proportional
    let mut ends: Vec<usize> = Vec::new();
    let link = |edges: &mut Vec<Edge>, ends: &mut Vec<usize>, a: usize, b: usize| {
        edges.push(unit(a, b));
        if opts.symmetric {
            edges.push(unit(b, a));
        }
        ends.push(a);
        ends.push(b);
    };
    for a in 0..m {
        for b in 0..a {
            link(&mut edges, &mut ends, a, b);
        }
    }

    let mut snapshots = Vec::new();
    let mut snap = |t: usize, edges: &[Edge]| -> Result<()> {
        snapshots.push(Network::from_parts(Mode::Www, ids[..t].to_vec(), edges.to_vec())?);
        Ok(())
    };
    if m % every == 0 {
        snap(m, &edges)?;
    }

    let mut targets: Vec<usize> = Vec::with_capacity(m);
    for t in m..n {
        targets.clear();
        while targets.len() < m {
            let pick = match opts.attachment {
                Attachment::Preferential if !ends.is_empty() => ends[rng.random_range(0..ends.len())],
                _ => rng.random_range(0..t),
            };
            if !targets.contains(&pick) {
                targets.push(pick);
            }
        }
        for &old in &targets {
            link(&mut edges, &mut ends, t, old);
        }
        let size = t + 1;
        if size % every == 0 || size == n {
            snap(size, &edges)?;
        }
    }
    Ok(GrowthHistory { snapshots })
}

/// Barabási–Albert growth with directed new → old edges.
pub fn generate_ba(n: usize, m_edges: usize, seed: u64) -> Result<GrowthHistory> {
    grow(&GrowthOptions::new(n, m_edges, seed))
}

/// Directed Erdős–Rényi graph: every ordered pair of distinct vertices is an
/// edge independently with probability `edge_prob`.
pub fn generate_er(n: usize, edge_prob: f64, seed: u64) -> Result<Network> {
    if !(edge_prob > 0.0 && edge_prob < 1.0) {
        return Err(Error::InvalidArgument(format!("edge probability must lie in (0, 1), got {edge_prob}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gap = Geometric::new(edge_prob).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let pairs = (n as u64) * (n as u64 - 1);
    let mut edges = Vec::new();
    // skip straight to the next success instead of flipping every pair
    let mut k = gap.sample(&mut rng);
    while k < pairs {
        let i = (k / (n as u64 - 1)) as usize;
        let mut j = (k % (n as u64 - 1)) as usize;
        if j >= i {
            j += 1;
        }
        edges.push(unit(i, j));
        k = k.saturating_add(1).saturating_add(gap.sample(&mut rng));
    }
    Network::from_parts(Mode::Www, numbered_ids(n), edges)
}

/// Weighted trading network: `links` distinct directed pairs, the seller
/// chosen proportionally to out-degree + 1 and the buyer to in-degree + 1,
/// with log-normal prices.
pub fn generate_trade(n: usize, links: usize, seed: u64) -> Result<Network> {
    if n < 2 {
        return Err(Error::InvalidArgument("a trade network needs at least 2 agents".into()));
    }
    let max = n * (n - 1);
    if links > max {
        return Err(Error::InvalidArgument(format!("{links} links exceed the {max} possible ordered pairs")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let price = LogNormal::new(0.0, 1.5).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut sellers: Vec<usize> = (0..n).collect();
    let mut buyers: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::with_capacity(links);
    let mut edges = Vec::with_capacity(links);
    let mut misses = 0usize;
    while edges.len() < links {
        let (s, b) = if misses < 64 {
            (sellers[rng.random_range(0..sellers.len())], buyers[rng.random_range(0..buyers.len())])
        } else {
            // dense corner: fall back to uniform pairs
            (rng.random_range(0..n), rng.random_range(0..n))
        };
        if s == b || !seen.insert((s, b)) {
            misses += 1;
            continue;
        }
        misses = 0;
        sellers.push(s);
        buyers.push(b);
        let weight: f64 = price.sample(&mut rng) * 1000.0;
        edges.push(Edge { source: s, target: b, weight, resource: None });
    }
    Network::from_parts(Mode::Trading, numbered_ids(n), edges)
}

/// Directed scale-free graph shaped like a web crawl: heavy-tailed in- and
/// out-degrees with roughly `avg_degree` links per page.
///
/// Pages arrive one at a time. Each draws an out-degree from a discrete
/// Pareto law (tail exponent 2) with mean `avg_degree / 1.2` and links to
/// that many distinct earlier pages chosen proportionally to in-degree + 1;
/// every such link is reciprocated with probability 0.2.
pub fn generate_directed_scale_free(n: usize, avg_degree: f64, seed: u64) -> Result<Network> {
    if n < 2 {
        return Err(Error::InvalidArgument("need at least 2 pages".into()));
    }
    if !avg_degree.is_finite() || avg_degree < 1.0 {
        return Err(Error::InvalidArgument(format!("average degree must be at least 1, got {avg_degree}")));
    }
    const RECIPROCITY: f64 = 0.2;
    // Pareto(x_m, 2) has mean 2·x_m
    let x_m = avg_degree / (1.0 + RECIPROCITY) / 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets: Vec<usize> = Vec::new();
    let mut edges = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    for page in 1..n {
        let u: f64 = 1.0 - rng.random::<f64>();
        let draw = (x_m / u.sqrt()).round().max(1.0);
        let out = (draw as usize).min(page);
        chosen.clear();
        while chosen.len() < out {
            let r = rng.random_range(0..targets.len() + page);
            let t = if r < targets.len() { targets[r] } else { r - targets.len() };
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push(unit(page, t));
            targets.push(t);
            if rng.random::<f64>() < RECIPROCITY {
                edges.push(unit(t, page));
                targets.push(page);
            }
        }
    }
    Network::from_parts(Mode::Www, numbered_ids(n), edges)
}
