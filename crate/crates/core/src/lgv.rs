//! Brute-force check of Lindström's lemma.
//!
//! For index sets `I` and `J` of equal size, every family of pairwise
//! vertex-disjoint paths with the `t`-th path running `a_{I[t]} -> b_{J[t]}`
//! is generated by backtracking. The weight of a family is the product of its
//! path weights, and the sum over families is compared with the minor
//! `det W[I, J]` of the weight matrix.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{minor_value, ExactMatrix, IndexSet};
use crate::network::{
    path_count_matrix, path_weight, walk, weight_matrix, Network, Path, VertexId,
};

/// Default cap on the product of individual path counts.
pub const DEFAULT_FAMILY_LIMIT: u64 = 10_000_000;

/// Pairwise vertex-disjoint paths, the `t`-th joining `a_{I[t]}` to `b_{J[t]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFamily {
    paths: Vec<Path>,
}

impl PathFamily {
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Product of the member path weights.
    pub fn weight(&self, network: &Network) -> Result<BigUint> {
        self.paths
            .iter()
            .try_fold(BigUint::one(), |acc, p| Ok(acc * path_weight(network, p)?))
    }
}

/// Settings for the family search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Refuse searches whose product of individual path counts exceeds this.
    pub max_combinations: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_combinations: DEFAULT_FAMILY_LIMIT,
        }
    }
}

struct Search<'a> {
    network: &'a Network,
    ends: Vec<(VertexId, VertexId)>,
    // reaches[t][v]: v can reach the t-th sink.
    reaches: Vec<Vec<bool>>,
}

impl<'a> Search<'a> {
    fn new(
        network: &'a Network,
        rows: &IndexSet,
        cols: &IndexSet,
        limits: SearchLimits,
    ) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        if rows.is_empty() {
            return Err(Error::InvalidIndexSet(
                "disjoint path families need at least one source".into(),
            ));
        }
        let mut ends = Vec::with_capacity(rows.len());
        for (i, j) in rows.iter().zip(cols.iter()) {
            ends.push((network.source(i)?, network.sink(j)?));
        }

        let counts = path_count_matrix(network);
        let estimate = rows
            .iter()
            .zip(cols.iter())
            .map(|(i, j)| counts.entry(i, j).magnitude().clone())
            .fold(BigUint::one(), |acc, c| acc * c);
        if estimate > BigUint::from(limits.max_combinations) {
            return Err(Error::GuardExceeded {
                what: "disjoint path family search",
                estimate,
                limit: BigUint::from(limits.max_combinations),
                advice: "shrink the index sets or raise the limit",
            });
        }

        let reaches = ends
            .iter()
            .map(|&(_, sink)| reachable_to(network, sink))
            .collect();
        Ok(Search {
            network,
            ends,
            reaches,
        })
    }

    fn run(&self, visit: &mut dyn FnMut(&[Vec<VertexId>])) {
        let mut occupied = vec![false; self.network.vertex_count()];
        let mut chosen: Vec<Vec<VertexId>> = Vec::with_capacity(self.ends.len());
        self.extend(&mut occupied, &mut chosen, visit);
    }

    fn extend(
        &self,
        occupied: &mut [bool],
        chosen: &mut Vec<Vec<VertexId>>,
        visit: &mut dyn FnMut(&[Vec<VertexId>]),
    ) {
        let t = chosen.len();
        if t == self.ends.len() {
            visit(chosen);
            return;
        }
        let (source, sink) = self.ends[t];
        if occupied[source.0] {
            return;
        }
        let allowed: Vec<bool> = self.reaches[t]
            .iter()
            .zip(occupied.iter())
            .map(|(&r, &o)| r && !o)
            .collect();
        if !allowed[source.0] {
            return;
        }
        // Collect this pair's candidate paths first; recursion needs `occupied`
        // mutably.
        let mut candidates = Vec::new();
        let mut stack = vec![source];
        walk(self.network, sink, &allowed, &mut stack, &mut |p| {
            candidates.push(p.to_vec())
        });
        for path in candidates {
            for v in &path {
                occupied[v.0] = true;
            }
            chosen.push(path);
            self.extend(occupied, chosen, visit);
            let path = chosen.pop().expect("pushed above");
            for v in &path {
                occupied[v.0] = false;
            }
        }
    }
}

fn reachable_to(network: &Network, sink: VertexId) -> Vec<bool> {
    let mut reach = vec![false; network.vertex_count()];
    reach[sink.0] = true;
    for &v in network.topological_order().iter().rev() {
        if network.out_edges(v).any(|e| reach[e.head.0]) {
            reach[v.0] = true;
        }
    }
    reach
}

/// Every vertex-disjoint path family joining `a_{I[t]}` to `b_{J[t]}`, in
/// depth-first order.
pub fn enumerate_disjoint_families(
    network: &Network,
    rows: &IndexSet,
    cols: &IndexSet,
) -> Result<Vec<PathFamily>> {
    enumerate_disjoint_families_with(network, rows, cols, SearchLimits::default())
}

pub fn enumerate_disjoint_families_with(
    network: &Network,
    rows: &IndexSet,
    cols: &IndexSet,
    limits: SearchLimits,
) -> Result<Vec<PathFamily>> {
    let search = Search::new(network, rows, cols, limits)?;
    let mut out = Vec::new();
    search.run(&mut |paths| {
        out.push(PathFamily {
            paths: paths.iter().map(|p| Path::new(p.clone())).collect(),
        })
    });
    Ok(out)
}

/// Sum of family weights and the number of families.
fn family_totals(
    network: &Network,
    rows: &IndexSet,
    cols: &IndexSet,
    limits: SearchLimits,
) -> Result<(BigUint, usize)> {
    let search = Search::new(network, rows, cols, limits)?;
    let mut sum = BigUint::zero();
    let mut count = 0usize;
    search.run(&mut |paths| {
        let mut weight = BigUint::one();
        for p in paths {
            for w in p.windows(2) {
                weight *= &network
                    .edge_between(w[0], w[1])
                    .expect("walked edge")
                    .weight;
            }
        }
        sum += weight;
        count += 1;
    });
    Ok((sum, count))
}

/// Total weight of all vertex-disjoint families joining `I` to `J`.
pub fn family_weight_sum(network: &Network, rows: &IndexSet, cols: &IndexSet) -> Result<BigUint> {
    family_totals(network, rows, cols, SearchLimits::default()).map(|(sum, _)| sum)
}

/// Minor of the weight matrix next to the disjoint-family sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LindstromReport {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub minor: BigInt,
    pub family_sum: BigUint,
    pub family_count: usize,
}

impl LindstromReport {
    /// Whether the minor equals the family sum. `false` is a falsification,
    /// not an error.
    pub fn equal(&self) -> bool {
        self.minor == BigInt::from(self.family_sum.clone())
    }
}

pub fn verify_lindstrom(
    network: &Network,
    rows: &IndexSet,
    cols: &IndexSet,
) -> Result<LindstromReport> {
    let weights = weight_matrix(network);
    verify_with_weights(network, &weights, rows, cols, SearchLimits::default())
}

/// [`verify_lindstrom`] against a precomputed weight matrix.
pub fn verify_with_weights(
    network: &Network,
    weights: &ExactMatrix,
    rows: &IndexSet,
    cols: &IndexSet,
    limits: SearchLimits,
) -> Result<LindstromReport> {
    let (family_sum, family_count) = family_totals(network, rows, cols, limits)?;
    let minor = minor_value(weights, rows, cols)?;
    Ok(LindstromReport {
        rows: rows.clone(),
        cols: cols.clone(),
        minor,
        family_sum,
        family_count,
    })
}

/// Outcome of checking every `(I, J)` up to a given size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveSummary {
    pub n: usize,
    pub max_size: usize,
    pub pairs_checked: usize,
    pub failures: Vec<LindstromReport>,
}

impl ExhaustiveSummary {
    pub fn all_equal(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs [`verify_lindstrom`] over every pair of index sets of equal size
/// `1..=max_size`, ordered by `(size, I, J)`.
pub fn verify_all(
    network: &Network,
    max_size: usize,
    limits: SearchLimits,
) -> Result<ExhaustiveSummary> {
    verify_all_against(network, &weight_matrix(network), max_size, limits)
}

/// [`verify_all`] with minors taken from `weights` instead of the network's
/// own weight matrix, e.g. the matrix of an unmutated reference network.
pub fn verify_all_against(
    network: &Network,
    weights: &ExactMatrix,
    max_size: usize,
    limits: SearchLimits,
) -> Result<ExhaustiveSummary> {
    let n = network.n();
    let mut pairs_checked = 0;
    let mut failures = Vec::new();
    for size in 1..=max_size.min(n) {
        for rows in IndexSet::subsets(n, size) {
            for cols in IndexSet::subsets(n, size) {
                let report = verify_with_weights(network, weights, &rows, &cols, limits)?;
                pairs_checked += 1;
                if !report.equal() {
                    failures.push(report);
                }
            }
        }
    }
    Ok(ExhaustiveSummary {
        n,
        max_size,
        pairs_checked,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lah::lah_closed_form;
    use crate::network::{enumerate_paths, lah_network, unit_network};
    use alloc::collections::BTreeSet;

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn two_by_two_on_n2() {
        let n = lah_network(2);
        let fams = enumerate_disjoint_families(&n, &set(&[1, 2]), &set(&[1, 2])).unwrap();
        assert_eq!(fams.len(), 1);
        assert_eq!(fams[0].paths()[0].vertices().len(), 2);
        assert_eq!(fams[0].paths()[1].vertices().len(), 3);
        assert_eq!(fams[0].weight(&n).unwrap(), BigUint::one());
    }

    #[test]
    fn singletons_are_single_paths() {
        let n = lah_network(5);
        for i in 1..=5 {
            for j in 1..=5 {
                let fams = enumerate_disjoint_families(&n, &set(&[i]), &set(&[j])).unwrap();
                let paths = enumerate_paths(&n, i, j).unwrap();
                assert_eq!(fams.len(), paths.len());
                assert_eq!(
                    family_weight_sum(&n, &set(&[i]), &set(&[j])).unwrap(),
                    lah_closed_form(i, j)
                );
            }
        }
    }

    #[test]
    fn n3_rows23_cols12() {
        let n = lah_network(3);
        let r = verify_lindstrom(&n, &set(&[2, 3]), &set(&[1, 2])).unwrap();
        assert_eq!(r.minor, BigInt::from(6));
        assert_eq!(r.family_sum, BigUint::from(6u32));
        assert!(r.equal());
    }

    #[test]
    fn leading_principal_families_weigh_one() {
        let n = lah_network(5);
        for p in 1..=5 {
            assert_eq!(
                family_weight_sum(&n, &IndexSet::full(p), &IndexSet::full(p)).unwrap(),
                BigUint::one()
            );
        }
    }

    #[test]
    fn above_diagonal_sets_have_no_families() {
        let n = lah_network(5);
        assert_eq!(
            family_weight_sum(&n, &set(&[1, 2]), &set(&[3, 4])).unwrap(),
            BigUint::zero()
        );
        assert_eq!(
            family_weight_sum(&n, &set(&[1]), &set(&[5])).unwrap(),
            BigUint::zero()
        );
    }

    #[test]
    fn principal_2x2_on_n4() {
        let r = verify_lindstrom(&lah_network(4), &set(&[2, 3]), &set(&[2, 3])).unwrap();
        assert!(r.equal());
    }

    #[test]
    fn mutated_diagonal_is_detected() {
        let n = lah_network(3);
        let tail = n.grid_vertex(3, 2).unwrap();
        let head = n.grid_vertex(2, 2).unwrap();
        assert_eq!(
            n.edge_between(tail, head).unwrap().weight,
            BigUint::from(3u32)
        );
        let mutated = n.with_edge_weight(tail, head, BigUint::from(4u32)).unwrap();
        // Against its own weight matrix the mutated network still satisfies the
        // lemma, so the reference is the unmutated matrix.
        let own = verify_lindstrom(&mutated, &set(&[2, 3]), &set(&[1, 2])).unwrap();
        assert!(own.equal());
        assert_eq!(own.family_sum, BigUint::from(8u32));
        let original = weight_matrix(&n);
        let r = verify_with_weights(
            &mutated,
            &original,
            &set(&[2, 3]),
            &set(&[1, 2]),
            SearchLimits::default(),
        )
        .unwrap();
        assert_eq!(r.minor, BigInt::from(6));
        assert!(!r.equal());
    }

    #[test]
    fn exhaustive_small_networks() {
        for n in 1..=4 {
            for net in [lah_network(n), unit_network(n)] {
                let s = verify_all(&net, 3, SearchLimits::default()).unwrap();
                assert!(s.all_equal(), "n = {n}: {:?}", s.failures);
            }
        }
    }

    #[test]
    fn families_are_disjoint() {
        let n = lah_network(5);
        for size in 1..=3 {
            for rows in IndexSet::subsets(5, size) {
                for cols in IndexSet::subsets(5, size) {
                    for fam in enumerate_disjoint_families(&n, &rows, &cols).unwrap() {
                        let total: usize = fam.paths().iter().map(|p| p.vertices().len()).sum();
                        let union: BTreeSet<_> = fam
                            .paths()
                            .iter()
                            .flat_map(|p| p.vertices().iter())
                            .collect();
                        assert_eq!(union.len(), total);
                    }
                }
            }
        }
    }

    #[test]
    fn argument_errors() {
        let n = lah_network(3);
        assert!(matches!(
            family_weight_sum(&n, &set(&[1, 2]), &set(&[1])),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(family_weight_sum(&n, &IndexSet::empty(), &IndexSet::empty()).is_err());
        assert!(matches!(
            family_weight_sum(&n, &set(&[4]), &set(&[1])),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn guard_reports_estimate() {
        let n = lah_network(7);
        let limits = SearchLimits {
            max_combinations: 100,
        };
        let err =
            enumerate_disjoint_families_with(&n, &set(&[6, 7]), &set(&[3, 4]), limits).unwrap_err();
        // C(5,2) * C(6,3) = 10 * 20
        match err {
            Error::GuardExceeded { estimate, .. } => assert_eq!(estimate, BigUint::from(200u32)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
