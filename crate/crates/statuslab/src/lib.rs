//! Exact status invariants of trees, and an exhaustive verifier for the
//! sharp bounds they satisfy.
//!
//! For a tree `T` and a target set `A` of its vertices, the *A-status* of a
//! vertex `u` is the sum of the distances from `u` to the members of `A`.
//! Taking `A` to be the leaves or the internal (non-leaf) vertices and then
//! minimizing or maximizing over `u` yields four invariants — written `ls`,
//! `LS`, `is`, `IS` — whose extremal behaviour over all trees of a given
//! order (possibly with a fixed diameter or maximum degree) is what this
//! crate computes, constructs, and certifies:
//!
//! - [`tree`]: the [`Tree`] type (validated edge lists, Prüfer codec, BFS
//!   toolkit, structural classification).
//! - [`status`]: linear-time status vectors for a target selector, branch
//!   weights, the A-centroid by three independent methods, and the
//!   A-peripherian.
//! - [`families`]: constructors for the named extremal families (paths,
//!   stars, brooms, double brooms, spiders) and parsing of family specs.
//! - [`enumeration`]: streaming enumeration of all isomorphism classes of
//!   trees of one order, canonical forms, and seeded random trees.
//! - [`claims`]: the registry of sharp bounds with their equality
//!   characterizations, the exhaustive [`verify`] scan, and pointwise
//!   structural lemma checks.
//!
//! Everything is integer-exact; there is no floating point anywhere in the
//! invariants. Enumeration at the default ceiling (order 18) stays within
//! desk-scale time and memory.
//!
//! ```
//! use statuslab::{ClaimParams, Selector, StatusReport, Tree, VerifyOptions};
//!
//! // The "chair": a path 0-1-2-3 with an extra leaf 4 at vertex 1.
//! let chair = Tree::parse_edge_list("5\n0 1\n1 2\n2 3\n1 4\n").unwrap();
//! let report = StatusReport::compute(&chair, Selector::Leaves).unwrap();
//! assert_eq!(report.values, vec![5, 4, 5, 6, 5]);
//!
//! // Every tree of order 8 satisfies the global lower bound on `ls`,
//! // with equality exactly for the starlike trees.
//! let verdict = statuslab::verify(
//!     "ls_min_global",
//!     &ClaimParams::order(8),
//!     &VerifyOptions::default(),
//! )
//! .unwrap();
//! assert!(verdict.passed());
//! ```

pub mod claims;
pub mod enumeration;
pub mod families;
pub mod status;
pub mod tree;

pub use claims::{
    check_hanging_shift, check_structural_lemma, claims, find_claim, hanging_path_count,
    structural_lemma_ids, verify, Claim, ClaimError, ClaimParams, ClaimReport, Direction,
    Invariant, VerifyOptions,
};
pub use enumeration::{
    canonical_form, enumerate_trees, enumerate_trees_with_ceiling, random_tree, tree_center,
    CanonicalForm, EnumerationError, TreeFilter, TreeStream, DEFAULT_CEILING,
};
pub use families::{
    diam_even_extremal_family, double_broom_in_classical_range, make_broom, make_double_broom,
    make_path, make_spider, make_star, FamilyError, FamilyKind, FamilySpec,
};
pub use status::{
    a_centroid, branch_weight, extremes, peripherian, status_vector, CentroidMethod,
    CentroidReport, Selector, StatusError, StatusReport, StatusVector,
};
pub use tree::{NotATreeKind, StructureFlags, Tree, TreeError, VertexSet};
