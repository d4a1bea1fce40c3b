use std::collections::BTreeMap;

use crate::config::DegreeWeighting;
use crate::error::{Error, Result};
use crate::graph::link_degrees;

use super::{fit_line, GrowthHistory};

/// Binned degree-growth curve and its fitted exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct PaTest {
    /// Exponent `v` of `Δk ∝ k^v`.
    pub v: f64,
    /// `(mean k, mean Δk per added vertex)` per nonempty bin.
    pub bins: Vec<(f64, f64)>,
}

const MIN_BINS: usize = 5;

// two bins per octave of k
fn bin_of(k: f64) -> i64 {
    (2.0 * k.log2()).floor() as i64
}

/// Measure how degree growth depends on current degree across the
/// snapshots of a growing network.
///
/// For each consecutive pair of snapshots every vertex of the earlier one
/// with positive degree contributes `(k, Δk / added)`, where `added` is the
/// number of vertices that arrived in between. Observations are pooled,
/// binned logarithmically in k, averaged, and `v` is the least-squares slope
/// of `log Δk` against `log k`.
pub fn pa_test(history: &GrowthHistory) -> Result<PaTest> {
    let snaps = &history.snapshots;
    if snaps.len() < 2 {
        return Err(Error::InsufficientData(format!("need at least 2 snapshots, got {}", snaps.len())));
    }
    // bin -> (Σk, ΣΔk, count)
    let mut acc: BTreeMap<i64, (f64, f64, usize)> = BTreeMap::new();
    for pair in snaps.windows(2) {
        let (before, after) = (&pair[0], &pair[1]);
        let added = after.vertex_count().saturating_sub(before.vertex_count());
        if added == 0 {
            continue;
        }
        let k0 = link_degrees(before, DegreeWeighting::Count).deg;
        let k1 = link_degrees(after, DegreeWeighting::Count).deg;
        for (i, id) in before.ids().iter().enumerate() {
            let k = k0[i];
            if k <= 0.0 {
                continue;
            }
            let j = after.index_of(id).ok_or_else(|| {
                Error::InvalidArgument(format!("vertex `{id}` missing from a later snapshot"))
            })?;
            let slot = acc.entry(bin_of(k)).or_insert((0.0, 0.0, 0));
            slot.0 += k;
            slot.1 += (k1[j] - k) / added as f64;
            slot.2 += 1;
        }
    }
    let bins: Vec<(f64, f64)> =
        acc.values().map(|&(sk, sd, c)| (sk / c as f64, sd / c as f64)).filter(|&(_, dk)| dk > 0.0).collect();
    if bins.len() < MIN_BINS {
        return Err(Error::InsufficientData(format!(
            "only {} nonempty degree bins, need {MIN_BINS}",
            bins.len()
        )));
    }
    let xs: Vec<f64> = bins.iter().map(|b| b.0.ln()).collect();
    let ys: Vec<f64> = bins.iter().map(|b| b.1.ln()).collect();
    let (v, _) =
        fit_line(&xs, &ys).ok_or_else(|| Error::InsufficientData("degree bins do not vary".into()))?;
    Ok(PaTest { v, bins })
}

pub fn pa_exponent(history: &GrowthHistory) -> Result<f64> {
    pa_test(history).map(|t| t.v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netanalysis::generate_ba;

    #[test]
    fn single_snapshot_rejected() {
        let mut h = generate_ba(200, 2, 1).unwrap();
        h.snapshots.truncate(1);
        assert!(matches!(pa_exponent(&h), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn too_few_bins_reports_count() {
        use crate::graph::{ingest_edge_list, EdgeRow, Mode};
        let rows =
            |n: usize| -> Vec<EdgeRow> { (1..=n).map(|i| EdgeRow::new(i.to_string(), "0", 1.0)).collect() };
        let h = GrowthHistory {
            snapshots: vec![
                ingest_edge_list(&rows(2), Mode::Www).unwrap(),
                ingest_edge_list(&rows(3), Mode::Www).unwrap(),
            ],
        };
        let err = pa_exponent(&h).unwrap_err().to_string();
        assert!(err.contains("nonempty degree bins"), "{err}");
    }
}
