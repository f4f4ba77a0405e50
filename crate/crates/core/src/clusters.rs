//! Maximal runs of consecutive significant windows and their size
//! distribution.

use crate::error::{Error, Result};
use crate::rolling::{significance_series, RollingResult, Which};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    /// `end_index` of the first significant window.
    pub start: usize,
    /// `end_index` of the last significant window.
    pub end: usize,
    /// Number of windows in the run.
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterTable {
    pub clusters: Vec<Cluster>,
    pub total_positions: usize,
    pub which: Option<Which>,
}

impl ClusterTable {
    pub fn sizes(&self) -> Vec<u64> {
        self.clusters.iter().map(|c| c.size as u64).collect()
    }

    /// Index of the cluster containing window `end_index`, if any.
    pub fn cluster_of(&self, end_index: usize) -> Option<usize> {
        let i = self.clusters.partition_point(|c| c.end < end_index);
        self.clusters
            .get(i)
            .filter(|c| c.start <= end_index)
            .map(|_| i)
    }
}

/// Run-length encodes `flags`; zero-based position `i` is labelled `offset + i`.
pub fn extract_clusters(flags: &[bool], offset: usize) -> ClusterTable {
    let labels: Vec<usize> = (0..flags.len()).map(|i| offset + i).collect();
    extract_clusters_at(flags, &labels)
}

/// Run-length encodes `flags` with explicit per-position labels. Runs are
/// taken over consecutive positions; `size` counts positions.
pub fn extract_clusters_at(flags: &[bool], labels: &[usize]) -> ClusterTable {
    assert_eq!(flags.len(), labels.len(), "flags and labels differ in length");
    let mut clusters = Vec::new();
    let mut run: Option<(usize, usize)> = None;
    for (i, &f) in flags.iter().enumerate() {
        match (f, run) {
            (true, None) => run = Some((i, i)),
            (true, Some((s, _))) => run = Some((s, i)),
            (false, Some((s, e))) => {
                clusters.push(Cluster {
                    start: labels[s],
                    end: labels[e],
                    size: e - s + 1,
                });
                run = None;
            }
            (false, None) => {}
        }
    }
    if let Some((s, e)) = run {
        clusters.push(Cluster {
            start: labels[s],
            end: labels[e],
            size: e - s + 1,
        });
    }
    ClusterTable {
        clusters,
        total_positions: flags.len(),
        which: None,
    }
}

/// Clusters of a rolling result at significance level `alpha`.
pub fn clusters_from_rolling(res: &RollingResult, which: Which, alpha: f64) -> ClusterTable {
    let flags = significance_series(res, which, alpha);
    let labels: Vec<usize> = res.records.iter().map(|w| w.end_index).collect();
    ClusterTable {
        which: Some(which),
        ..extract_clusters_at(&flags, &labels)
    }
}

/// Empirical CCDF of cluster sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeDistribution {
    /// Sorted ascending.
    pub sizes: Vec<u64>,
    /// `(size, fraction of clusters with size >= size)` for each distinct size, ascending.
    pub ccdf: Vec<(u64, f64)>,
}

pub fn size_distribution(table: &ClusterTable) -> Result<SizeDistribution> {
    if table.clusters.is_empty() {
        return Err(Error::EmptyTable);
    }
    Ok(ccdf_of(table.sizes()))
}

pub(crate) fn ccdf_of(mut sizes: Vec<u64>) -> SizeDistribution {
    sizes.sort_unstable();
    let total = sizes.len() as f64;
    let mut ccdf = Vec::new();
    let mut i = 0;
    while i < sizes.len() {
        let v = sizes[i];
        ccdf.push((v, (sizes.len() - i) as f64 / total));
        while i < sizes.len() && sizes[i] == v {
            i += 1;
        }
    }
    SizeDistribution { sizes, ccdf }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn run_length_example() {
        let t = extract_clusters(&[false, true, true, false, true], 10);
        assert_eq!(
            t.clusters,
            vec![
                Cluster { start: 11, end: 12, size: 2 },
                Cluster { start: 14, end: 14, size: 1 },
            ]
        );
        assert_eq!(t.total_positions, 5);
    }

    #[test]
    fn all_false_and_empty() {
        assert!(extract_clusters(&[false; 6], 0).clusters.is_empty());
        assert!(extract_clusters(&[], 0).clusters.is_empty());
        let t = extract_clusters(&[], 0);
        assert_eq!(size_distribution(&t), Err(Error::EmptyTable));
    }

    #[test]
    fn ccdf_counts() {
        let d = ccdf_of(vec![4, 1, 2, 1]);
        assert_eq!(d.ccdf, vec![(1, 1.0), (2, 0.5), (4, 0.25)]);
        let single = extract_clusters(&[true, true, true], 0);
        assert_eq!(size_distribution(&single).unwrap().ccdf, vec![(3, 1.0)]);
    }

    #[test]
    fn lookup_by_end_index() {
        let t = extract_clusters(&[false, true, true, false, true], 0);
        assert_eq!(t.cluster_of(0), None);
        assert_eq!(t.cluster_of(1), Some(0));
        assert_eq!(t.cluster_of(2), Some(0));
        assert_eq!(t.cluster_of(3), None);
        assert_eq!(t.cluster_of(4), Some(1));
        assert_eq!(t.cluster_of(5), None);
    }

    fn naive_sizes(flags: &[bool]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut count = 0;
        for &f in flags.iter().chain(std::iter::once(&false)) {
            if f {
                count += 1;
            } else if count > 0 {
                out.push(count);
                count = 0;
            }
        }
        out
    }

    proptest! {
        #[test]
        fn conservation_and_maximality(flags in prop::collection::vec(any::<bool>(), 0..400), offset in 0usize..1000) {
            let t = extract_clusters(&flags, offset);
            let sizes: Vec<usize> = t.clusters.iter().map(|c| c.size).collect();
            prop_assert_eq!(sizes, naive_sizes(&flags));
            prop_assert_eq!(t.clusters.iter().map(|c| c.size).sum::<usize>(), flags.iter().filter(|f| **f).count());
            for w in t.clusters.windows(2) {
                prop_assert!(w[1].start >= w[0].end + 2);
            }
            for c in &t.clusters {
                prop_assert_eq!(c.size, c.end - c.start + 1);
            }
            if !t.clusters.is_empty() {
                let d = size_distribution(&t).unwrap();
                prop_assert_eq!(d.ccdf[0].1, 1.0);
                prop_assert!(d.ccdf.windows(2).all(|w| w[1].1 < w[0].1 && w[1].1 > 0.0));
            }
        }
    }
}
