//! The status engine: transmission-like sums of distances from each vertex to
//! a target set, computed in linear time by a two-pass rerooting DP, plus
//! branch weights, centroid location by three interchangeable methods, and
//! peripherian (status-maximizing) sets.
//!
//! For a tree `T` and target set `A`, the A-status of a vertex `u` is
//! `s(u, A) = Σ_{a ∈ A} d(u, a)`. The four headline invariants are the
//! minimum and maximum of `s(·, A)` over all vertices for `A` the leaf set
//! and `A` the internal-vertex set.
//!
//! All arithmetic is exact and integral; the "half of |A|" centroid test
//! compares doubled integers instead of dividing.

use serde::Serialize;
use thiserror::Error;

use crate::tree::{Tree, VertexSet};

/// Which vertices form the target set of a status query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Selector {
    /// Vertices of degree exactly 1.
    Leaves,
    /// Vertices of degree at least 2.
    Internal,
    /// Every vertex (the classic transmission).
    All,
}

impl Selector {
    pub const fn name(self) -> &'static str {
        match self {
            Selector::Leaves => "leaves",
            Selector::Internal => "internal",
            Selector::All => "all",
        }
    }

    /// Membership indicator of the target set in `t`.
    pub fn indicator(self, t: &Tree) -> Vec<bool> {
        (0..t.order())
            .map(|v| match self {
                Selector::Leaves => t.degree(v) == 1,
                Selector::Internal => t.degree(v) >= 2,
                Selector::All => true,
            })
            .collect()
    }

    /// The target set as a [`VertexSet`].
    pub fn members(self, t: &Tree) -> VertexSet {
        VertexSet::from_indicator(&self.indicator(t))
    }
}

/// How to locate an A-centroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentroidMethod {
    /// Argmin of the status vector.
    Brute,
    /// Argmin of the branch weight (they coincide on every tree).
    BranchWeight,
    /// All vertices whose branch weight is at most half the target count;
    /// defined only for the leaf and internal selectors on orders ≥ 3.
    HalfCondition,
}

/// Errors from status queries.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StatusError {
    /// The selected target set has no members (e.g. `Internal` on an edge).
    #[error("the {0} target set is empty for this tree")]
    EmptyTargetSet(&'static str),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    /// The chosen centroid method does not apply to these arguments.
    #[error("method precondition violated: {0}")]
    MethodPreconditionViolated(String),
}

/// The status of every vertex with respect to one selector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatusVector {
    selector: Selector,
    values: Vec<u64>,
}

impl StatusVector {
    pub fn selector(&self) -> Selector {
        self.selector
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn min(&self) -> u64 {
        *self.values.iter().min().expect("trees are nonempty")
    }

    pub fn max(&self) -> u64 {
        *self.values.iter().max().expect("trees are nonempty")
    }

    fn arg_extremum(&self, pick: u64) -> VertexSet {
        let indicator: Vec<bool> = self.values.iter().map(|&v| v == pick).collect();
        VertexSet::from_indicator(&indicator)
    }
}

/// Everything `extremes` learns about one selector on one tree: both extreme
/// values, the full witness sets, and every vertex's branch weight.
///
/// The minimizer set is the A-centroid and always induces a path; the
/// maximizer set is the A-peripherian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentroidReport {
    pub selector: Selector,
    pub min_value: u64,
    pub max_value: u64,
    pub min_set: VertexSet,
    pub max_set: VertexSet,
    /// `branch_weights[u]` = max over branches at `u` of the number of target
    /// vertices inside the branch.
    pub branch_weights: Vec<u64>,
}

/// The status vector of `t` for `sel`, by the two-pass rerooting DP:
/// a post-order pass accumulates per-subtree target counts and distance sums,
/// a pre-order pass converts each parent's status to its child's via
/// `s(child) = s(parent) + |A| - 2·(targets below child)`.
pub fn status_vector(t: &Tree, sel: Selector) -> Result<StatusVector, StatusError> {
    let (values, _, _) = status_and_counts(t, sel)?;
    Ok(StatusVector {
        selector: sel,
        values,
    })
}

/// Shared core: status values, per-subtree target counts (rooted at 0), and
/// the BFS order/parent arrays they were computed under.
#[allow(clippy::type_complexity)]
fn status_and_counts(
    t: &Tree,
    sel: Selector,
) -> Result<(Vec<u64>, Vec<u64>, (Vec<usize>, Vec<usize>)), StatusError> {
    let n = t.order();
    let indicator = sel.indicator(t);
    let total: u64 = indicator.iter().filter(|&&x| x).count() as u64;
    if total == 0 {
        return Err(StatusError::EmptyTargetSet(sel.name()));
    }
    let (order, parent) = t.bfs_order_from(0);
    let mut below = vec![0u64; n]; // targets in the subtree rooted here
    let mut down_sum = vec![0u64; n]; // Σ distances to targets in the subtree
    for &u in order.iter().rev() {
        if indicator[u] {
            below[u] += 1;
        }
        // parent[root] == root and self-loops are impossible, so this test
        // also does the right thing at the root.
        for &v in t.neighbors(u) {
            if v != parent[u] {
                below[u] += below[v];
                down_sum[u] += down_sum[v] + below[v];
            }
        }
    }
    let mut values = vec![0u64; n];
    values[order[0]] = down_sum[order[0]];
    for &u in order.iter().skip(1) {
        // Crossing the edge from the parent moves one step closer to the
        // `below[u]` targets and one step farther from the rest.
        values[u] = values[parent[u]] + total - 2 * below[u];
    }
    Ok((values, below, (order, parent)))
}

/// Branch weights of every vertex in linear time: for the root that is the
/// largest child-subtree count; for any other vertex the up-branch
/// (`total - below[u]`) competes with the child subtrees.
fn branch_weights_all(t: &Tree, sel: Selector) -> Result<(Vec<u64>, u64), StatusError> {
    let n = t.order();
    let indicator = sel.indicator(t);
    let total: u64 = indicator.iter().filter(|&&x| x).count() as u64;
    let (order, parent) = t.bfs_order_from(0);
    let mut below = vec![0u64; n];
    for &u in order.iter().rev() {
        if indicator[u] {
            below[u] += 1;
        }
        for &v in t.neighbors(u) {
            if v != parent[u] {
                below[u] += below[v];
            }
        }
    }
    let root = order[0];
    let mut weights = vec![0u64; n];
    for u in 0..n {
        let mut w = if u == root { 0 } else { total - below[u] };
        for &v in t.neighbors(u) {
            if v != parent[u] {
                w = w.max(below[v]);
            }
        }
        weights[u] = w;
    }
    Ok((weights, total))
}

/// Both extremes of the status vector with full witness sets and all branch
/// weights. The min witness set is the A-centroid, the max witness set the
/// A-peripherian.
pub fn extremes(t: &Tree, sel: Selector) -> Result<CentroidReport, StatusError> {
    let sv = status_vector(t, sel)?;
    let (branch_weights, _) = branch_weights_all(t, sel)?;
    let (min_value, max_value) = (sv.min(), sv.max());
    Ok(CentroidReport {
        selector: sel,
        min_value,
        max_value,
        min_set: sv.arg_extremum(min_value),
        max_set: sv.arg_extremum(max_value),
        branch_weights,
    })
}

/// The branch weight of a single vertex: the largest number of target
/// vertices in one component of `t - u`. Zero when the target set is empty
/// or the tree has one vertex.
pub fn branch_weight(t: &Tree, u: usize, sel: Selector) -> Result<u64, StatusError> {
    let n = t.order();
    if u >= n {
        return Err(StatusError::VertexOutOfRange {
            vertex: u,
            order: n,
        });
    }
    let indicator = sel.indicator(t);
    // One BFS from u; each vertex inherits the branch of its parent.
    let (order, parent) = t.bfs_order_from(u);
    let mut branch_of = vec![usize::MAX; n];
    let mut counts: Vec<u64> = vec![0; t.degree(u)];
    for (slot, &first) in t.neighbors(u).iter().enumerate() {
        branch_of[first] = slot;
    }
    for &v in order.iter().skip(1) {
        if branch_of[v] == usize::MAX {
            branch_of[v] = branch_of[parent[v]];
        }
        if indicator[v] {
            counts[branch_of[v]] += 1;
        }
    }
    Ok(counts.into_iter().max().unwrap_or(0))
}

/// The A-centroid (status-minimizing set) of `t` for `sel`, located by the
/// requested method. All three methods agree wherever they are defined.
pub fn a_centroid(t: &Tree, sel: Selector, method: CentroidMethod) -> Result<VertexSet, StatusError> {
    match method {
        CentroidMethod::Brute => {
            let sv = status_vector(t, sel)?;
            Ok(sv.arg_extremum(sv.min()))
        }
        CentroidMethod::BranchWeight => {
            let (weights, total) = branch_weights_all(t, sel)?;
            if total == 0 {
                return Err(StatusError::EmptyTargetSet(sel.name()));
            }
            let min = *weights.iter().min().expect("trees are nonempty");
            let indicator: Vec<bool> = weights.iter().map(|&w| w == min).collect();
            Ok(VertexSet::from_indicator(&indicator))
        }
        CentroidMethod::HalfCondition => {
            if t.order() < 3 {
                return Err(StatusError::MethodPreconditionViolated(format!(
                    "half-condition needs order at least 3, got {}",
                    t.order()
                )));
            }
            if sel == Selector::All {
                return Err(StatusError::MethodPreconditionViolated(
                    "half-condition is defined for the leaves and internal selectors only".into(),
                ));
            }
            let (weights, total) = branch_weights_all(t, sel)?;
            if total == 0 {
                return Err(StatusError::EmptyTargetSet(sel.name()));
            }
            // 2·bw(u) ≤ |A|, kept in integers.
            let indicator: Vec<bool> = weights.iter().map(|&w| 2 * w <= total).collect();
            Ok(VertexSet::from_indicator(&indicator))
        }
    }
}

/// The A-peripherian: the set of vertices of maximum A-status.
pub fn peripherian(t: &Tree, sel: Selector) -> Result<VertexSet, StatusError> {
    let sv = status_vector(t, sel)?;
    Ok(sv.arg_extremum(sv.max()))
}

/// The JSON-facing report for one status query; field names are part of the
/// tool's output contract.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct StatusReport {
    pub n: usize,
    pub selector: &'static str,
    pub values: Vec<u64>,
    pub min: u64,
    pub min_set: Vec<usize>,
    pub max: u64,
    pub max_set: Vec<usize>,
}

impl StatusReport {
    pub fn compute(t: &Tree, sel: Selector) -> Result<Self, StatusError> {
        let report = extremes(t, sel)?;
        let sv = status_vector(t, sel)?;
        Ok(StatusReport {
            n: t.order(),
            selector: sel.name(),
            values: sv.values().to_vec(),
            min: report.min_value,
            min_set: report.min_set.members().to_vec(),
            max: report.max_value,
            max_set: report.max_set.members().to_vec(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chair() -> Tree {
        Tree::parse_edge_list("5\n0 1\n1 2\n2 3\n1 4\n").unwrap()
    }

    fn path(n: usize) -> Tree {
        Tree::from_edges_unchecked(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Independent quadratic oracle: sum rows of the BFS distance table.
    fn oracle_status(t: &Tree, sel: Selector) -> Vec<u64> {
        let dist = t.all_pairs_distances();
        let targets = sel.members(t);
        (0..t.order())
            .map(|u| targets.iter().map(|a| dist[u][a] as u64).sum())
            .collect()
    }

    #[test]
    fn chair_status_vectors_match_the_frozen_values() {
        let t = chair();
        let leaves = status_vector(&t, Selector::Leaves).unwrap();
        assert_eq!(leaves.values(), &[5, 4, 5, 6, 5]);
        let internal = status_vector(&t, Selector::Internal).unwrap();
        assert_eq!(internal.values(), &[3, 1, 1, 3, 3]);
    }

    #[test]
    fn chair_extremes_match_the_frozen_values() {
        let t = chair();
        let l = extremes(&t, Selector::Leaves).unwrap();
        assert_eq!((l.min_value, l.max_value), (4, 6));
        assert_eq!(l.min_set.members(), &[1]);
        assert_eq!(l.max_set.members(), &[3]);
        let i = extremes(&t, Selector::Internal).unwrap();
        assert_eq!((i.min_value, i.max_value), (1, 3));
        assert_eq!(i.min_set.members(), &[1, 2]);
        assert_eq!(i.max_set.members(), &[0, 3, 4]);
    }

    #[test]
    fn rerooting_matches_the_distance_oracle_on_assorted_trees() {
        let samples = [
            chair(),
            path(2),
            path(7),
            Tree::from_prufer(&[0, 0, 0], 5).unwrap(),
            Tree::from_prufer(&[3, 3, 1, 4, 1], 7).unwrap(),
            Tree::from_prufer(&[2, 6, 2, 6, 0, 4], 8).unwrap(),
        ];
        for t in &samples {
            for sel in [Selector::Leaves, Selector::Internal, Selector::All] {
                let expected = oracle_status(t, sel);
                match status_vector(t, sel) {
                    Ok(sv) => assert_eq!(sv.values(), &expected[..], "{t:?} {sel:?}"),
                    Err(StatusError::EmptyTargetSet(_)) => {
                        assert!(sel.members(t).is_empty())
                    }
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }

    #[test]
    fn transmission_at_the_path_center() {
        // All-vertex status of the middle of a 5-path: 2+1+0+1+2.
        let sv = status_vector(&path(5), Selector::All).unwrap();
        assert_eq!(sv.values()[2], 6);
        assert_eq!(sv.min(), 6);
    }

    #[test]
    fn every_path_vertex_has_leaf_status_n_minus_1() {
        for n in 2..10 {
            let sv = status_vector(&path(n), Selector::Leaves).unwrap();
            assert!(sv.values().iter().all(|&v| v == (n - 1) as u64));
        }
    }

    #[test]
    fn empty_target_set_is_an_error() {
        let p2 = path(2);
        assert_eq!(
            status_vector(&p2, Selector::Internal),
            Err(StatusError::EmptyTargetSet("internal"))
        );
        let one = Tree::parse_edge_list("1\n").unwrap();
        assert_eq!(
            status_vector(&one, Selector::Leaves),
            Err(StatusError::EmptyTargetSet("leaves"))
        );
        // The one-vertex tree still has a well-defined all-vertex status.
        assert_eq!(status_vector(&one, Selector::All).unwrap().values(), &[0]);
    }

    #[test]
    fn branch_weights_on_the_chair() {
        let t = chair();
        assert_eq!(branch_weight(&t, 1, Selector::Leaves).unwrap(), 1);
        assert_eq!(branch_weight(&t, 2, Selector::Leaves).unwrap(), 2);
        assert_eq!(branch_weight(&t, 0, Selector::Leaves).unwrap(), 2);
        let report = extremes(&t, Selector::Leaves).unwrap();
        assert_eq!(report.branch_weights, vec![2, 1, 2, 2, 2]);
        assert_eq!(
            branch_weight(&t, 7, Selector::All),
            Err(StatusError::VertexOutOfRange { vertex: 7, order: 5 })
        );
    }

    #[test]
    fn all_three_centroid_methods_agree_on_the_chair() {
        let t = chair();
        for method in [
            CentroidMethod::Brute,
            CentroidMethod::BranchWeight,
            CentroidMethod::HalfCondition,
        ] {
            assert_eq!(
                a_centroid(&t, Selector::Leaves, method).unwrap().members(),
                &[1],
                "{method:?}"
            );
        }
        for method in [CentroidMethod::Brute, CentroidMethod::BranchWeight] {
            assert_eq!(
                a_centroid(&t, Selector::Internal, method).unwrap().members(),
                &[1, 2]
            );
        }
    }

    #[test]
    fn half_condition_rejects_small_orders_and_the_all_selector() {
        assert!(matches!(
            a_centroid(&path(2), Selector::Leaves, CentroidMethod::HalfCondition),
            Err(StatusError::MethodPreconditionViolated(_))
        ));
        assert!(matches!(
            a_centroid(&chair(), Selector::All, CentroidMethod::HalfCondition),
            Err(StatusError::MethodPreconditionViolated(_))
        ));
    }

    #[test]
    fn centroid_min_set_induces_a_path() {
        for t in [chair(), path(6), Tree::from_prufer(&[2, 2, 4, 4], 6).unwrap()] {
            for sel in [Selector::Leaves, Selector::Internal, Selector::All] {
                if sel.members(&t).is_empty() {
                    continue;
                }
                let report = extremes(&t, sel).unwrap();
                assert!(t.induces_path(&report.min_set), "{t:?} {sel:?}");
            }
        }
    }

    #[test]
    fn peripherian_of_the_chair_and_of_paths() {
        let t = chair();
        assert_eq!(peripherian(&t, Selector::Leaves).unwrap().members(), &[3]);
        assert_eq!(
            peripherian(&t, Selector::Internal).unwrap().members(),
            &[0, 3, 4]
        );
        // On a path every vertex is a leaf-peripherian vertex.
        let p = path(6);
        assert_eq!(
            peripherian(&p, Selector::Leaves).unwrap().members(),
            &[0, 1, 2, 3, 4, 5]
        );
    }

    #[test]
    fn status_report_serializes_with_the_contract_field_names() {
        let report = StatusReport::compute(&chair(), Selector::Leaves).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["n"], 5);
        assert_eq!(json["selector"], "leaves");
        assert_eq!(json["values"].as_array().unwrap().len(), 5);
        assert_eq!(json["min"], 4);
        assert_eq!(json["min_set"], serde_json::json!([1]));
        assert_eq!(json["max"], 6);
        assert_eq!(json["max_set"], serde_json::json!([3]));
    }
}
