//! Partition quality: modularity, normalized mutual information, and the
//! strong/weak community predicates.
//!
//! NMI is the disjoint-partition form `2 I(X;Y) / (H(X) + H(Y))` with natural
//! logarithms (the base cancels). When both entropies vanish the two
//! partitions are the same single community and NMI is defined as 1.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use libm::log;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

/// Weighted Newman-Girvan modularity,
/// `Q = sum_c [ W_c / W - (S_c / 2W)^2 ]` with `W_c` the weight inside
/// community `c`, `S_c` the total strength of its members and `W` the total
/// edge weight.
pub fn modularity(g: &Graph, p: &Partition) -> Result<f64> {
    p.check_covers(g)?;
    let total = g.total_weight();
    if g.edge_count() == 0 || total <= 0.0 {
        return Err(Error::NoEdges);
    }
    let k = p.community_count();
    let mut inside = alloc::vec![0.0; k];
    let mut strength = alloc::vec![0.0; k];
    for e in g.edges() {
        let c = p.community_of(e.u);
        if c == p.community_of(e.v) {
            inside[c as usize] += e.weight;
        }
    }
    for u in g.nodes() {
        strength[p.community_of(u) as usize] += g.strength(u);
    }
    let q = inside
        .iter()
        .zip(&strength)
        .map(|(&w_c, &s_c)| {
            let frac = s_c / (2.0 * total);
            w_c / total - frac * frac
        })
        .sum();
    Ok(q)
}

/// Contingency counts between two partitions of the same node set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfusionTable {
    /// Non-zero cells `((row, column), count)`, sorted.
    pub cells: Vec<((u32, u32), usize)>,
    pub row_totals: Vec<usize>,
    pub column_totals: Vec<usize>,
    pub total: usize,
}

impl ConfusionTable {
    pub fn new(a: &Partition, b: &Partition) -> Result<ConfusionTable> {
        if a.node_count() != b.node_count() {
            return Err(Error::PartitionSize {
                expected: a.node_count(),
                found: b.node_count(),
            });
        }
        let mut cells: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for (&x, &y) in a.assignment().iter().zip(b.assignment()) {
            *cells.entry((x, y)).or_default() += 1;
        }
        Ok(ConfusionTable {
            cells: cells.into_iter().collect(),
            row_totals: a.sizes(),
            column_totals: b.sizes(),
            total: a.node_count(),
        })
    }

    fn entropy(counts: &[usize], total: f64) -> f64 {
        counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / total;
                -p * log(p)
            })
            .sum()
    }

    pub fn row_entropy(&self) -> f64 {
        Self::entropy(&self.row_totals, self.total as f64)
    }

    pub fn column_entropy(&self) -> f64 {
        Self::entropy(&self.column_totals, self.total as f64)
    }

    pub fn mutual_information(&self) -> f64 {
        let n = self.total as f64;
        self.cells
            .iter()
            .map(|&((r, c), count)| {
                let joint = count as f64;
                let expected =
                    self.row_totals[r as usize] as f64 * self.column_totals[c as usize] as f64;
                joint / n * log(joint * n / expected)
            })
            .sum()
    }
}

pub fn nmi(a: &Partition, b: &Partition) -> Result<f64> {
    if a.node_count() == 0 {
        return Err(Error::InvalidParameter(
            "NMI needs at least one node".into(),
        ));
    }
    let table = ConfusionTable::new(a, b)?;
    let denom = table.row_entropy() + table.column_entropy();
    if denom <= 0.0 {
        return Ok(1.0);
    }
    Ok((2.0 * table.mutual_information() / denom).clamp(0.0, 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommunityFlags {
    pub size: usize,
    /// Sum of `d_in` over members (each internal edge counted from both ends).
    pub internal_degree: usize,
    /// Sum of `d_out` over members.
    pub external_degree: usize,
    /// Every member has more edges inside than outside.
    pub strong: bool,
    /// Members have more edge endpoints inside than outside in total.
    pub weak: bool,
}

/// Strong/weak predicates per community (indexed by community id). Edge
/// counts, not weights.
pub fn strong_weak_check(g: &Graph, p: &Partition) -> Result<Vec<CommunityFlags>> {
    p.check_covers(g)?;
    let mut flags = alloc::vec![
        CommunityFlags { size: 0, internal_degree: 0, external_degree: 0, strong: true, weak: false };
        p.community_count()
    ];
    for u in g.nodes() {
        let (d_in, d_out) = p.degree_split(g, u);
        let f = &mut flags[p.community_of(u) as usize];
        f.size += 1;
        f.internal_degree += d_in;
        f.external_degree += d_out;
        f.strong &= d_in > d_out;
    }
    for f in &mut flags {
        f.weak = f.internal_degree > f.external_degree;
    }
    Ok(flags)
}

#[derive(Clone, Debug, PartialEq)]
pub struct QualityReport {
    pub modularity: f64,
    pub community_count: usize,
    /// `(community size, number of communities of that size)`, ascending by size.
    pub size_histogram: Vec<(usize, usize)>,
    pub communities: Vec<CommunityFlags>,
}

pub fn quality_report(g: &Graph, p: &Partition) -> Result<QualityReport> {
    let modularity = modularity(g, p)?;
    let communities = strong_weak_check(g, p)?;
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for size in p.sizes() {
        *histogram.entry(size).or_default() += 1;
    }
    Ok(QualityReport {
        modularity,
        community_count: p.community_count(),
        size_histogram: histogram.into_iter().collect(),
        communities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Graph {
        Graph::from_edges(
            6,
            [
                (0, 1, 1.0),
                (1, 2, 1.0),
                (0, 2, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
                (3, 5, 1.0),
            ],
        )
        .unwrap()
    }

    fn bridged() -> Graph {
        Graph::from_edges(
            6,
            [
                (0, 1, 1.0),
                (1, 2, 1.0),
                (0, 2, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
                (3, 5, 1.0),
                (2, 3, 1.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn one_community_scores_zero() {
        let g = bridged();
        assert!(modularity(&g, &Partition::whole(6)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn singletons_score_negative_strength_squares() {
        let g = bridged();
        let q = modularity(&g, &Partition::singletons(6)).unwrap();
        let w2 = 2.0 * g.total_weight();
        let expected: f64 = -g.nodes().map(|u| (g.strength(u) / w2).powi(2)).sum::<f64>();
        assert!((q - expected).abs() < 1e-15);
        assert!(q < 0.0);
    }

    #[test]
    fn disjoint_triangles_half() {
        let q = modularity(
            &two_triangles(),
            &Partition::from_labels(&[0, 0, 0, 1, 1, 1]),
        )
        .unwrap();
        assert!((q - 0.5).abs() < 1e-15);
    }

    #[test]
    fn bridged_triangles_five_fourteenths() {
        let q = modularity(&bridged(), &Partition::from_labels(&[0, 0, 0, 1, 1, 1])).unwrap();
        assert!((q - 5.0 / 14.0).abs() < 1e-15);
    }

    #[test]
    fn modularity_errors() {
        let g = Graph::from_edges(2, []).unwrap();
        assert_eq!(modularity(&g, &Partition::whole(2)), Err(Error::NoEdges));
        assert!(matches!(
            modularity(&bridged(), &Partition::whole(5)),
            Err(Error::PartitionSize { .. })
        ));
    }

    #[test]
    fn nmi_examples() {
        let p = Partition::from_labels(&[0, 0, 1, 1]);
        assert!((nmi(&p, &p).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(
            nmi(&Partition::whole(4), &Partition::singletons(4)).unwrap(),
            0.0
        );
        let q = Partition::from_labels(&[0, 0, 1, 2]);
        // I = ln 2, H1 = ln 2, H2 = 1.5 ln 2
        assert!((nmi(&p, &q).unwrap() - 0.8).abs() < 1e-12);
        assert_eq!(
            nmi(&Partition::whole(1), &Partition::whole(1)).unwrap(),
            1.0
        );
        assert_eq!(
            nmi(&Partition::singletons(3), &Partition::singletons(3)).unwrap(),
            1.0
        );
    }

    #[test]
    fn nmi_rejects_mismatched_sizes() {
        assert!(matches!(
            nmi(&Partition::whole(3), &Partition::whole(4)),
            Err(Error::PartitionSize {
                expected: 3,
                found: 4
            })
        ));
    }

    #[test]
    fn confusion_table_shape() {
        let t = ConfusionTable::new(
            &Partition::from_labels(&[0, 0, 1, 1]),
            &Partition::from_labels(&[0, 0, 1, 2]),
        )
        .unwrap();
        assert_eq!(t.cells, alloc::vec![((0, 0), 2), ((1, 1), 1), ((1, 2), 1)]);
        assert_eq!(t.cells.iter().map(|c| c.1).sum::<usize>(), t.total);
    }

    #[test]
    fn strong_weak_examples() {
        let tri = Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let f = strong_weak_check(&tri, &Partition::whole(3)).unwrap();
        assert!(f[0].strong && f[0].weak);

        let pair = Graph::from_edges(2, [(0, 1, 1.0)]).unwrap();
        let f = strong_weak_check(&pair, &Partition::singletons(2)).unwrap();
        assert!(!f[0].strong && !f[0].weak);

        let f =
            strong_weak_check(&bridged(), &Partition::from_labels(&[0, 0, 0, 1, 1, 1])).unwrap();
        assert!(f.iter().all(|c| c.strong && c.weak));
        assert_eq!((f[0].internal_degree, f[0].external_degree), (6, 1));
    }

    #[test]
    fn report_histogram() {
        let r = quality_report(&bridged(), &Partition::from_labels(&[0, 0, 0, 1, 1, 2])).unwrap();
        assert_eq!(r.community_count, 3);
        assert_eq!(r.size_histogram, alloc::vec![(1, 1), (2, 1), (3, 1)]);
    }
}
