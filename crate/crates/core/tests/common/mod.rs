//! Dense reference implementations assembled directly from edge lists.
#![allow(dead_code)]

use linkrank::{ingest_edge_list, EdgeRow, Mode, Network};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<Vec<f64>>;

/// Loop-free weighted adjacency with parallel edges summed.
pub fn dense_links(net: &Network) -> Dense {
    let n = net.vertex_count();
    let mut l = vec![vec![0.0; n]; n];
    for e in net.edges() {
        if e.source != e.target {
            l[e.source][e.target] += e.weight;
        }
    }
    l
}

pub fn transpose(a: &Dense) -> Dense {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0.0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

pub fn diag_left(d: &[f64], a: &Dense) -> Dense {
    a.iter().zip(d).map(|(row, s)| row.iter().map(|v| v * s).collect()).collect()
}

/// Row-normalize; zero rows become uniform.
pub fn row_stochastic(a: &Dense) -> Dense {
    let n = a.len();
    a.iter()
        .map(|row| {
            let s: f64 = row.iter().sum();
            if s == 0.0 {
                vec![1.0 / n as f64; n]
            } else {
                row.iter().map(|v| v / s).collect()
            }
        })
        .collect()
}

/// `ζ·A + ((1 − ζ)/N)·eeᵀ`.
pub fn smoothed(a: &Dense, zeta: f64) -> Dense {
    let n = a.len() as f64;
    a.iter().map(|row| row.iter().map(|v| zeta * v + (1.0 - zeta) / n).collect()).collect()
}

pub fn vec_mat(x: &[f64], a: &Dense) -> Vec<f64> {
    let n = a.len();
    let mut y = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            y[j] += x[i] * a[i][j];
        }
    }
    y
}

pub fn l1(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum()
}

fn normalize(x: &[f64]) -> Vec<f64> {
    let s: f64 = x.iter().sum();
    x.iter().map(|v| v / s).collect()
}

/// Dominant left eigenvector of a positive matrix, 1-normalized, by repeated
/// squaring until the rows of the power agree.
pub fn dominant_left(a: &Dense) -> Vec<f64> {
    let mut q = a.clone();
    for _ in 0..200 {
        let mut next = matmul(&q, &q);
        let total: f64 = next.iter().flatten().sum();
        for v in next.iter_mut().flatten() {
            *v /= total;
        }
        let rows: Vec<Vec<f64>> = next.iter().map(|r| normalize(r)).collect();
        let spread = rows.iter().map(|r| l1(r, &rows[0])).fold(0.0, f64::max);
        q = next;
        if spread < 1e-15 {
            break;
        }
    }
    let row = q.iter().max_by(|a, b| a.iter().sum::<f64>().total_cmp(&b.iter().sum())).unwrap();
    normalize(row)
}

/// Hand evaluation of the per-vertex constants from degree vectors.
pub fn constants(indeg: &[f64], outdeg: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut ca = Vec::new();
    let mut ch = Vec::new();
    for (&i, &o) in indeg.iter().zip(outdeg) {
        let deg = i + o;
        if deg == 0.0 {
            ca.push(0.0);
            ch.push(0.0);
            continue;
        }
        let gap = (i - o).abs();
        let k = if i > o {
            gap
        } else if i < o {
            1.0 / gap
        } else {
            1.0
        };
        ca.push(i / deg * k);
        ch.push(o / deg / k);
    }
    (ca, ch)
}

pub fn volume_degrees(l: &Dense) -> (Vec<f64>, Vec<f64>) {
    let n = l.len();
    let indeg = (0..n).map(|j| (0..n).map(|i| l[i][j]).sum()).collect();
    let outdeg = l.iter().map(|r| r.iter().sum()).collect();
    (indeg, outdeg)
}

pub fn count_degrees(l: &Dense) -> (Vec<f64>, Vec<f64>) {
    let ones: Dense =
        l.iter().map(|r| r.iter().map(|&v| if v > 0.0 { 1.0 } else { 0.0 }).collect()).collect();
    volume_degrees(&ones)
}

pub fn pagerank_oracle(net: &Network, alpha: f64) -> Vec<f64> {
    let l = dense_links(net);
    dominant_left(&smoothed(&row_stochastic(&l), alpha))
}

/// (authority, hub) for weights `ca`, `ch` (all-ones gives classic HITS).
pub fn hits_oracle(net: &Network, zeta: f64, ca: &[f64], ch: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let l = dense_links(net);
    let lt = transpose(&l);
    let auth = matmul(&diag_left(ca, &lt), &diag_left(ch, &l));
    let hub = matmul(&diag_left(ch, &l), &diag_left(ca, &lt));
    (dominant_left(&smoothed(&auth, zeta)), dominant_left(&smoothed(&hub, zeta)))
}

pub fn hits_accelerated_oracle(net: &Network, zeta: f64) -> (Vec<f64>, Vec<f64>) {
    let (i, o) = count_degrees(&dense_links(net));
    let (ca, ch) = constants(&i, &o);
    hits_oracle(net, zeta, &ca, &ch)
}

/// `M = β·Ca·L + (1 − β)·Ch·Lᵀ` with volume constants.
pub fn trade_matrix_oracle(net: &Network, beta: f64) -> Dense {
    let l = dense_links(net);
    let (i, o) = volume_degrees(&l);
    let (ca, ch) = constants(&i, &o);
    let a = diag_left(&ca, &l);
    let h = diag_left(&ch, &transpose(&l));
    a.iter()
        .zip(&h)
        .map(|(ra, rh)| ra.iter().zip(rh).map(|(x, y)| beta * x + (1.0 - beta) * y).collect())
        .collect()
}

pub fn traderank_oracle(net: &Network, beta: f64, zeta: f64) -> Vec<f64> {
    dominant_left(&smoothed(&row_stochastic(&trade_matrix_oracle(net, beta)), zeta))
}

/// (buyer, seller).
pub fn buyer_seller_oracle(net: &Network, zeta: f64) -> (Vec<f64>, Vec<f64>) {
    let l = dense_links(net);
    let (i, o) = volume_degrees(&l);
    let (ca, ch) = constants(&i, &o);
    let b = smoothed(&row_stochastic(&diag_left(&ca, &l)), zeta);
    let s = smoothed(&row_stochastic(&diag_left(&ch, &transpose(&l))), zeta);
    (dominant_left(&b), dominant_left(&s))
}

/// Random edge rows over at most `n` vertices. Weighted rows draw prices in
/// (0, 10]; self-loops and repeated pairs occur.
pub fn random_rows(rng: &mut ChaCha8Rng, n: usize, weighted: bool) -> Vec<EdgeRow> {
    let m = rng.random_range(1..=n * n);
    (0..m)
        .map(|_| {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            let w = if weighted { rng.random_range(0.01..10.0) } else { 1.0 };
            EdgeRow::new(format!("v{a}"), format!("v{b}"), w)
        })
        .collect()
}

pub fn random_network(seed: u64, max_n: usize) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=max_n);
    let weighted = rng.random_bool(0.5);
    let rows = random_rows(&mut rng, n, weighted);
    ingest_edge_list(&rows, if weighted { Mode::Trading } else { Mode::Www }).unwrap()
}

pub fn rows(edges: &[(&str, &str, f64)]) -> Vec<EdgeRow> {
    edges.iter().map(|(a, b, w)| EdgeRow::new(*a, *b, *w)).collect()
}

pub fn net(edges: &[(&str, &str, f64)], mode: Mode) -> Network {
    ingest_edge_list(&rows(edges), mode).unwrap()
}
