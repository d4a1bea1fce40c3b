//! Property tests for the invariants of the ranking pipeline.

mod common;

use common::*;
use linkrank::engine::{power_iterate, smooth, stochasticize, LinearOperator};
use linkrank::graph::{read_edge_list, write_edge_list};
use linkrank::sparse::CsrMatrix;
use linkrank::traderank::traderank_operator;
use linkrank::{
    cosine, degree_summary, hits, hits_accelerated, ingest_edge_list, pagerank, spearman, split_by_resource,
    traderank, DegreeWeighting, EdgeRow, Mode, Network, Ordering, RunConfig,
};
use proptest::prelude::*;

fn edges(max_n: usize, weighted: bool) -> impl Strategy<Value = (usize, Vec<(usize, usize, f64)>)> {
    (2..=max_n).prop_flat_map(move |n| {
        let w = if weighted { (0.1f64..10.0).boxed() } else { Just(1.0).boxed() };
        (Just(n), prop::collection::vec((0..n, 0..n, w), 1..=3 * n))
    })
}

fn build(edges: &[(usize, usize, f64)], mode: Mode) -> Network {
    let rows: Vec<EdgeRow> =
        edges.iter().map(|&(a, b, w)| EdgeRow::new(format!("v{a}"), format!("v{b}"), w)).collect();
    ingest_edge_list(&rows, mode).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn network_and_perm(max_n: usize, weighted: bool) -> impl Strategy<Value = (Network, Vec<usize>)> {
    let mode = if weighted { Mode::Trading } else { Mode::Www };
    edges(max_n, weighted).prop_flat_map(move |(_, e)| {
        let net = build(&e, mode);
        let n = net.vertex_count();
        (Just(net), permutation(n))
    })
}

fn assert_equivariant(base: &[f64], permuted: &[f64], perm: &[usize], tol: f64) -> Result<(), TestCaseError> {
    let back: Vec<f64> = (0..base.len()).map(|i| permuted[perm[i]]).collect();
    prop_assert!(l1(base, &back) <= tol, "{base:?} vs {back:?}");
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sparse_rank_one_matches_dense((n, e) in edges(50, true), zeta in 0.05f64..0.999, seed in any::<u64>()) {
        let mut dense = vec![vec![0.0; n]; n];
        for &(a, b, w) in &e {
            dense[a][b] += w;
        }
        let op = smooth(stochasticize(&CsrMatrix::from_dense(&dense)).unwrap(), zeta).unwrap();
        let oracle = smoothed(&row_stochastic(&dense), zeta);
        let x: Vec<f64> = (0..n).map(|i| ((seed >> (i % 60)) & 7) as f64 + 0.5).collect();
        let mut y = vec![0.0; n];
        op.apply(&x, &mut y);
        let expect = vec_mat(&x, &oracle);
        for (a, b) in y.iter().zip(&expect) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }

    #[test]
    fn degree_sums_match_adjacency((_, e) in edges(15, true)) {
        let net = build(&e, Mode::Trading);
        let d = degree_summary(&net);
        let n = net.vertex_count();
        let mut rows = vec![0.0; n];
        let mut cols = vec![0.0; n];
        for x in net.edges() {
            rows[x.source] += x.weight;
            cols[x.target] += x.weight;
        }
        for i in 0..n {
            prop_assert!((d.outdeg[i] - rows[i]).abs() <= 1e-12 * rows[i].max(1.0));
            prop_assert!((d.indeg[i] - cols[i]).abs() <= 1e-12 * cols[i].max(1.0));
        }
    }

    #[test]
    fn export_round_trip((_, e) in edges(15, true)) {
        let net = build(&e, Mode::Trading);
        let mut buf = Vec::new();
        write_edge_list(&net.to_rows(), &mut buf).unwrap();
        let again = ingest_edge_list(&read_edge_list(buf.as_slice()).unwrap(), Mode::Trading).unwrap();
        prop_assert_eq!(again.adjacency(), net.adjacency());
        prop_assert_eq!(again.ids(), net.ids());
    }

    #[test]
    fn split_then_merge_preserves_rows(raw in prop::collection::vec((0..6usize, 0..6usize, 0.5f64..5.0, 0..3usize), 0..30)) {
        let labels = ["steel", "sodium", "oil"];
        let rows: Vec<EdgeRow> = raw
            .iter()
            .map(|&(a, b, w, l)| EdgeRow::new(format!("v{a}"), format!("v{b}"), w).labeled(labels[l]))
            .collect();
        let split = split_by_resource(&rows).unwrap();
        let key = |s: &str, t: &str, w: f64, r: &str| (s.to_owned(), t.to_owned(), w.to_bits(), r.to_owned());
        let mut expected: Vec<_> = rows.iter().map(|r| key(&r.source, &r.target, r.weight.unwrap(), r.resource.as_deref().unwrap())).collect();
        let mut merged: Vec<_> = split
            .iter()
            .flat_map(|(label, net)| {
                net.edges().iter().map(move |e| key(&net.ids()[e.source], &net.ids()[e.target], e.weight, label))
            })
            .collect();
        expected.sort();
        merged.sort();
        prop_assert_eq!(merged, expected);
    }

    #[test]
    fn pagerank_permutation_equivariant((net, perm) in network_and_perm(12, false)) {
        let cfg = RunConfig::default();
        let a = pagerank(&net, &cfg).unwrap();
        let b = pagerank(&net.permuted(&perm).unwrap(), &cfg).unwrap();
        assert_equivariant(&a.scores, &b.scores, &perm, 10.0 * cfg.tolerance())?;
        prop_assert!((a.scores.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(a.final_residual().unwrap() <= cfg.tolerance());
    }

    #[test]
    fn hits_permutation_equivariant((net, perm) in network_and_perm(10, false)) {
        let cfg = RunConfig::builder().tolerance(1e-13).build().unwrap();
        let p = net.permuted(&perm).unwrap();
        for (a, b) in [(hits(&net, &cfg).unwrap(), hits(&p, &cfg).unwrap()), (hits_accelerated(&net, &cfg).unwrap(), hits_accelerated(&p, &cfg).unwrap())] {
            assert_equivariant(&a.authority.scores, &b.authority.scores, &perm, 1e-7)?;
            assert_equivariant(&a.hub.scores, &b.hub.scores, &perm, 1e-7)?;
            prop_assert!(a.authority.scores.iter().chain(&a.hub.scores).all(|v| *v > 0.0));
        }
    }

    #[test]
    fn traderank_permutation_equivariant((net, perm) in network_and_perm(12, true)) {
        let cfg = RunConfig::default();
        let a = traderank(&net, &cfg).unwrap();
        let b = traderank(&net.permuted(&perm).unwrap(), &cfg).unwrap();
        assert_equivariant(&a.scores, &b.scores, &perm, 10.0 * cfg.tolerance())?;
    }

    #[test]
    fn traderank_unique_from_random_starts((_, e) in edges(20, true), starts in prop::collection::vec(prop::collection::vec(0.01f64..1.0, 20), 3)) {
        let net = build(&e, Mode::Trading);
        let n = net.vertex_count();
        let cfg = RunConfig::default();
        let op = traderank_operator(&net, &cfg).unwrap();
        let runs: Vec<Vec<f64>> = starts
            .iter()
            .map(|s| {
                let s = &s[..n];
                let total: f64 = s.iter().sum();
                let s: Vec<f64> = s.iter().map(|v| v / total).collect();
                power_iterate(&op, &s, cfg.tolerance(), cfg.max_iterations(), true).unwrap().scores
            })
            .collect();
        // x_k − x* contracts by ζ per step in the 1-norm, so a stop at residual
        // τ leaves each run within ζ/(1 − ζ)·τ of the fixed point.
        let z = cfg.zeta();
        let bound = 2.0 * z / (1.0 - z) * cfg.tolerance();
        for r in &runs {
            prop_assert!(l1(r, &runs[0]) <= bound, "spread {} > {bound}", l1(r, &runs[0]));
            prop_assert!(r.iter().all(|v| *v > 0.0));
            prop_assert!((r.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn traderank_count_weighting_invariant_under_weight_scaling((_, e) in edges(12, true), scale in 0.01f64..100.0) {
        let cfg = RunConfig::builder().degree_weighting(DegreeWeighting::Count).build().unwrap();
        let net = build(&e, Mode::Trading);
        let scaled: Vec<_> = e.iter().map(|&(a, b, w)| (a, b, w * scale)).collect();
        let a = traderank(&net, &cfg).unwrap().scores;
        let b = traderank(&build(&scaled, Mode::Trading), &cfg).unwrap().scores;
        prop_assert!(l1(&a, &b) <= 10.0 * cfg.tolerance());
        for i in 0..a.len() {
            for j in 0..a.len() {
                if a[i] - a[j] > 10.0 * cfg.tolerance() {
                    prop_assert!(b[i] > b[j]);
                }
            }
        }
    }

    #[test]
    fn spearman_symmetric_and_reflexive(x in prop::collection::vec(-1e3f64..1e3, 2..40), y in prop::collection::vec(-1e3f64..1e3, 40)) {
        let y = &y[..x.len()];
        prop_assert_eq!(spearman(&x, y).unwrap(), spearman(y, &x).unwrap());
        prop_assert!((spearman(&x, &x).unwrap() - 1.0).abs() <= 1e-12);
        let r = spearman(&x, y).unwrap();
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&r));
    }

    #[test]
    fn cosine_scale_invariant(x in prop::collection::vec(0.01f64..10.0, 1..30), y in prop::collection::vec(0.01f64..10.0, 30), a in 1e-3f64..1e3, b in 1e-3f64..1e3) {
        let y = &y[..x.len()];
        let c = cosine(&x, y).unwrap();
        let xs: Vec<f64> = x.iter().map(|v| v * a).collect();
        let ys: Vec<f64> = y.iter().map(|v| v * b).collect();
        prop_assert!((cosine(&xs, &ys).unwrap() - c).abs() <= 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
    }

    #[test]
    fn ordering_is_a_permutation(x in prop::collection::vec(prop::sample::select(vec![0.1, 0.2, 0.3, 0.4]), 1..40)) {
        let o = Ordering::from_scores(&x);
        let mut seen = o.ranks.clone();
        seen.sort_unstable();
        prop_assert_eq!(seen, (1..=x.len()).collect::<Vec<_>>());
        prop_assert_eq!(&o, &Ordering::from_scores(&x));
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                if x[i] == x[j] {
                    prop_assert!(o.ranks[i] < o.ranks[j]);
                }
            }
        }
    }
}

/// Under volume weighting `|indeg − outdeg|^p` scales as `c^p`, so scaling all
/// weights shifts each row's balance between bought and sold flow and can
/// reorder vertices.
#[test]
fn traderank_volume_weighting_is_not_scale_free() {
    let e = [(0, 2, 5.5), (0, 1, 6.25), (2, 0, 8.3), (1, 0, 4.8)];
    let scaled: Vec<_> = e.iter().map(|&(a, b, w)| (a, b, w * 44.0)).collect();
    let cfg = RunConfig::default();
    let a = traderank(&build(&e, Mode::Trading), &cfg).unwrap().scores;
    let b = traderank(&build(&scaled, Mode::Trading), &cfg).unwrap().scores;
    assert!(a[1] > a[2] && b[1] < b[2], "{a:?} {b:?}");
}

#[test]
fn regular_cycle_is_uniform() {
    let n = 7;
    let e: Vec<_> =
        (0..n).map(|i| (i, (i + 1) % n, 1.0)).chain((0..n).map(|i| (i, (i + 3) % n, 1.0))).collect();
    let net = build(&e, Mode::Www);
    let cfg = RunConfig::default();
    let uniform = vec![1.0 / n as f64; n];
    assert!(l1(&pagerank(&net, &cfg).unwrap().scores, &uniform) <= 10.0 * cfg.tolerance());
    let h = hits(&net, &cfg).unwrap();
    assert!(l1(&h.authority.scores, &uniform) <= 10.0 * cfg.tolerance());
    let t = traderank(&net.with_mode(Mode::Trading).unwrap(), &cfg).unwrap();
    assert!(l1(&t.scores, &uniform) <= 10.0 * cfg.tolerance());
}

#[test]
fn degree_profile_total_equals_vertex_count() {
    use linkrank::netanalysis::{degree_profile, generate_ba, Direction};
    let net = generate_ba(500, 2, 3).unwrap().last().clone();
    for d in [Direction::In, Direction::Out, Direction::Total] {
        let p = degree_profile(&net, d).unwrap();
        assert_eq!(p.histogram.values().sum::<usize>(), 500);
        let mass: f64 = p.p_k.values().sum();
        assert!((mass - 1.0).abs() < 1e-12);
        let mean: f64 = p.p_k.iter().map(|(k, pk)| *k as f64 * pk).sum();
        assert!((mean - p.mean_degree).abs() < 1e-9);
    }
}
