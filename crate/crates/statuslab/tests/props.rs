//! Property-based invariants over randomly generated labeled trees, plus a
//! couple of deterministic whole-universe partitions that back the filtered
//! enumeration.

use proptest::prelude::*;

use statuslab::{
    canonical_form, enumerate_trees, random_tree, status_vector, Selector, Tree, TreeFilter,
};

/// Uniform labeled trees of order `2..=max_n` via random Prüfer sequences.
fn labeled_tree(max_n: usize) -> impl Strategy<Value = Tree> {
    (2usize..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n - 2)
            .prop_map(move |seq| Tree::from_prufer(&seq, n).expect("valid symbols decode"))
    })
}

fn tree_and_permutation(max_n: usize) -> impl Strategy<Value = (Tree, Vec<usize>)> {
    labeled_tree(max_n).prop_flat_map(|t| {
        let n = t.order();
        let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (Just(t), perm)
    })
}

proptest! {
    #[test]
    fn prufer_codec_round_trips(raw in proptest::collection::vec(0usize..64, 0..=10)) {
        let n = raw.len() + 2;
        let seq: Vec<usize> = raw.into_iter().map(|s| s % n).collect();
        let t = Tree::from_prufer(&seq, n).unwrap();
        prop_assert_eq!(t.to_prufer().unwrap(), seq);
    }

    #[test]
    fn edge_list_serialization_round_trips(t in labeled_tree(40)) {
        let text = t.to_edge_list();
        prop_assert_eq!(&Tree::parse_edge_list(&text).unwrap(), &t);
    }

    /// Crossing one edge changes the status by the number of targets on one
    /// side minus the other: at most the target count in absolute value, and
    /// of the same parity.
    #[test]
    fn status_is_lipschitz_along_edges(t in labeled_tree(40)) {
        for sel in [Selector::Leaves, Selector::Internal, Selector::All] {
            let Ok(sv) = status_vector(&t, sel) else { continue };
            let total = sel.members(&t).len() as i64;
            for (u, v) in t.edges() {
                let (a, b) = (sv.values()[u] as i64, sv.values()[v] as i64);
                prop_assert!((a - b).abs() <= total);
                prop_assert_eq!((a - b).rem_euclid(2), total.rem_euclid(2));
            }
        }
    }

    #[test]
    fn canonical_form_is_relabel_invariant((t, perm) in tree_and_permutation(24)) {
        let n = t.order();
        let relabeled_edges: Vec<(usize, usize)> =
            t.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        let relabeled = Tree::from_edges(n, &relabeled_edges).unwrap();
        prop_assert_eq!(canonical_form(&t), canonical_form(&relabeled));
    }

    /// The classification flags agree with definitions stated independently
    /// of how `classify` computes them.
    #[test]
    fn classify_flags_match_independent_definitions(t in labeled_tree(24)) {
        let flags = t.classify();
        let n = t.order();
        let degrees: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();

        let leaf_count = degrees.iter().filter(|&&d| d == 1).count();
        prop_assert_eq!(flags.is_path, leaf_count == 2 || n <= 2);

        prop_assert_eq!(flags.is_star, degrees.iter().any(|&d| d == n - 1));

        let internal: Vec<usize> = (0..n).filter(|&v| degrees[v] >= 2).collect();
        let two_adjacent_centers =
            internal.len() == 2 && t.neighbors(internal[0]).contains(&internal[1]);
        prop_assert_eq!(flags.is_double_star, two_adjacent_centers);

        // Caterpillar: every vertex within distance one of a diametric path.
        let dist = t.all_pairs_distances();
        let (mut x, mut y) = (0, 0);
        for u in 0..n {
            for v in 0..n {
                if dist[u][v] > dist[x][y] {
                    (x, y) = (u, v);
                }
            }
        }
        let spine = t.path_between(x, y);
        let hugs_spine =
            (0..n).all(|v| spine.iter().any(|&s| dist[v][s] <= 1));
        prop_assert_eq!(flags.is_caterpillar, hugs_spine);

        // Starlike: no branch vertex, or a single one whose branches are all
        // hanging paths.
        let branches: Vec<usize> = (0..n).filter(|&v| degrees[v] > 2).collect();
        let spider_like = match branches.as_slice() {
            [] => true,
            [hub] => t.hanging_path_lengths(*hub).unwrap().len() == degrees[*hub],
            _ => false,
        };
        prop_assert_eq!(flags.is_starlike, spider_like);

        prop_assert_eq!(flags.diameter, t.diameter());
        prop_assert_eq!(flags.max_degree, degrees.iter().copied().max().unwrap());
    }

    #[test]
    fn vertex_partition_is_a_partition(t in labeled_tree(40)) {
        let (leaves, internal) = t.vertex_partition().unwrap();
        prop_assert_eq!(leaves.len() + internal.len(), t.order());
        for v in 0..t.order() {
            prop_assert!(leaves.contains(v) != internal.contains(v));
        }
    }
}

/// Exact-match filters partition the universe of classes, whichever
/// dimension is filtered on.
#[test]
fn filters_partition_the_universe() {
    for n in 2..=10usize {
        let everything = enumerate_trees(n, TreeFilter::default()).unwrap().count();
        let by_diameter: usize = (1..n)
            .map(|d| {
                enumerate_trees(
                    n,
                    TreeFilter {
                        diameter: Some(d),
                        ..TreeFilter::default()
                    },
                )
                .unwrap()
                .count()
            })
            .sum();
        let by_max_degree: usize = (1..n)
            .map(|m| {
                enumerate_trees(
                    n,
                    TreeFilter {
                        max_degree: Some(m),
                        ..TreeFilter::default()
                    },
                )
                .unwrap()
                .count()
            })
            .sum();
        assert_eq!(by_diameter, everything, "diameter partition at order {n}");
        assert_eq!(by_max_degree, everything, "degree partition at order {n}");
    }
}

/// The engine handles a four-orders-of-magnitude larger tree than the
/// enumeration ceiling: a random tree of order 10^4, with status values
/// spot-checked against plain BFS.
#[test]
fn large_random_tree_smoke() {
    let t = random_tree(10_000, 42);
    assert_eq!(t.order(), 10_000);
    assert_eq!(t.edges().count(), 9_999);
    assert_eq!(random_tree(10_000, 42), t, "seeding is reproducible");
    let sv = status_vector(&t, Selector::All).unwrap();
    for &u in &[0usize, 17, 4_242, 9_000, 9_999] {
        let by_bfs: u64 = t.bfs_distances(u).iter().map(|&d| d as u64).sum();
        assert_eq!(sv.values()[u], by_bfs, "vertex {u}");
    }
}
