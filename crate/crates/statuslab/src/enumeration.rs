//! Exhaustive enumeration of unlabeled trees (one representative per
//! isomorphism class), canonical forms, and seeded random labeled trees.
//!
//! Generation walks the canonical level sequences of rooted trees with the
//! classic constant-time successor rule, keeps only candidates rooted at a
//! centroid (at most two per free tree), and deduplicates by canonical form.
//! The stream is lazy, deterministic, and emits each class exactly once; its
//! counts are pinned against the known tree counts and an independent
//! Prüfer-decoding oracle in the test suite.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::tree::Tree;

/// Largest order enumerable without an explicit override (the CLI maps the
/// `STATUSLAB_CEILING` environment variable onto this knob).
pub const DEFAULT_CEILING: usize = 18;

/// Errors from enumeration setup.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("order 0 has no trees")]
    OrderZero,
    /// Exhaustive scans above the ceiling must be requested explicitly.
    #[error("order {n} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },
}

/// Exact-match restrictions applied to the emitted classes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TreeFilter {
    pub diameter: Option<usize>,
    pub max_degree: Option<usize>,
}

impl TreeFilter {
    pub fn matches(&self, t: &Tree) -> bool {
        if let Some(d) = self.diameter {
            if t.diameter() != d {
                return false;
            }
        }
        if let Some(m) = self.max_degree {
            let max_degree = (0..t.order()).map(|v| t.degree(v)).max().unwrap_or(0);
            if max_degree != m {
                return false;
            }
        }
        true
    }
}

/// An isomorphism-invariant encoding of a tree: the AHU parenthesization
/// rooted at the classical center, taking the lexicographically smaller of
/// the two rootings when the center is an edge. Two trees are isomorphic if
/// and only if their canonical forms are equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    /// The form as printable ASCII parentheses.
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("forms are ASCII by construction")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

/// The classical center: the one or two adjacent vertices minimizing
/// eccentricity, found by peeling leaf layers.
pub fn tree_center(t: &Tree) -> (usize, Option<usize>) {
    let n = t.order();
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        for &v in &layer {
            removed[v] = true;
        }
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] <= 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    let mut survivors = (0..n).filter(|&v| !removed[v]);
    let first = survivors.next().expect("a tree has a center");
    (first, survivors.next())
}

/// AHU encoding of `t` rooted at `root`: children codes are sorted and
/// wrapped in one pair of parentheses per vertex.
fn encode_rooted(t: &Tree, root: usize) -> Vec<u8> {
    let (order, parent) = t.bfs_order_from(root);
    let mut enc: Vec<Vec<u8>> = vec![Vec::new(); t.order()];
    for &u in order.iter().rev() {
        let mut children: Vec<Vec<u8>> = t
            .neighbors(u)
            .iter()
            .filter(|&&v| v != parent[u])
            .map(|&v| std::mem::take(&mut enc[v]))
            .collect();
        children.sort_unstable();
        let mut code = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
        code.push(b'(');
        for child in children {
            code.extend_from_slice(&child);
        }
        code.push(b')');
        enc[u] = code;
    }
    std::mem::take(&mut enc[root])
}

/// The canonical form of `t` (invariant under relabeling).
pub fn canonical_form(t: &Tree) -> CanonicalForm {
    let (c1, c2) = tree_center(t);
    let code = encode_rooted(t, c1);
    match c2 {
        None => CanonicalForm(code),
        Some(c2) => CanonicalForm(code.min(encode_rooted(t, c2))),
    }
}

/// Canonical level sequences of rooted trees in reverse lexicographic order,
/// from the path `1,2,...,n` down to the star `1,2,2,...,2`, advanced by the
/// constant-time successor rule: truncate at the last entry above 2 and tile
/// the tail with the block starting at that entry's parent.
struct LevelSequences {
    seq: Vec<usize>,
    started: bool,
    exhausted: bool,
}

impl LevelSequences {
    fn new(n: usize) -> Self {
        LevelSequences {
            seq: (1..=n).collect(),
            started: false,
            exhausted: false,
        }
    }

    /// Moves to the next sequence; false once all have been visited.
    fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        let n = self.seq.len();
        let Some(p) = (0..n).rev().find(|&i| self.seq[i] > 2) else {
            self.exhausted = true;
            return false;
        };
        let q = (0..p)
            .rev()
            .find(|&i| self.seq[i] == self.seq[p] - 1)
            .expect("a vertex above level 2 has an earlier parent");
        for i in p..n {
            self.seq[i] = self.seq[i - (p - q)];
        }
        true
    }

    fn current(&self) -> &[usize] {
        &self.seq
    }
}

/// Parent array of a level sequence: each vertex attaches to the most recent
/// vertex one level up.
fn parents_of(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    let mut last_at_level = vec![usize::MAX; n + 2];
    last_at_level[seq[0]] = 0;
    let mut parent = vec![0usize; n];
    for (i, &level) in seq.iter().enumerate().skip(1) {
        parent[i] = last_at_level[level - 1];
        last_at_level[level] = i;
    }
    parent
}

fn tree_from_level_sequence(seq: &[usize]) -> Tree {
    let parent = parents_of(seq);
    let n = seq.len();
    Tree::from_edges_unchecked(n, (1..n).map(|i| (parent[i], i)))
}

/// True when the sequence's root is a centroid of the underlying free tree:
/// every root branch holds at most ⌊n/2⌋ vertices. Each free tree passes for
/// exactly its one or two centroid rootings, which keeps the dedup set no
/// larger than the class count.
fn root_is_centroid(seq: &[usize]) -> bool {
    let n = seq.len();
    if n <= 2 {
        return true;
    }
    let parent = parents_of(seq);
    let mut size = vec![1usize; n];
    for i in (1..n).rev() {
        size[parent[i]] += size[i];
    }
    (1..n).all(|i| seq[i] != 2 || size[i] <= n / 2)
}

/// A lazy, deterministic stream of unlabeled trees of one order, one
/// representative per isomorphism class, optionally filtered.
pub struct TreeStream {
    gen: LevelSequences,
    seen: HashSet<CanonicalForm>,
    filter: TreeFilter,
}

impl Iterator for TreeStream {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        while self.gen.advance() {
            let seq = self.gen.current();
            if !root_is_centroid(seq) {
                continue;
            }
            let t = tree_from_level_sequence(seq);
            if !self.seen.insert(canonical_form(&t)) {
                continue;
            }
            if self.filter.matches(&t) {
                return Some(t);
            }
        }
        None
    }
}

/// Streams every isomorphism class of trees of order `n` under the default
/// ceiling.
pub fn enumerate_trees(n: usize, filter: TreeFilter) -> Result<TreeStream, EnumerationError> {
    enumerate_trees_with_ceiling(n, filter, DEFAULT_CEILING)
}

/// Streams every isomorphism class of trees of order `n`, refusing orders
/// above `ceiling` so accidental exponential scans fail fast.
pub fn enumerate_trees_with_ceiling(
    n: usize,
    filter: TreeFilter,
    ceiling: usize,
) -> Result<TreeStream, EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::OrderZero);
    }
    if n > ceiling {
        return Err(EnumerationError::CeilingExceeded { n, ceiling });
    }
    Ok(TreeStream {
        gen: LevelSequences::new(n),
        seen: HashSet::new(),
        filter,
    })
}

/// A uniformly random labeled tree of order `n`, reproducible from the seed:
/// a ChaCha8 stream seeded with `seed` draws the `n - 2` Prüfer symbols
/// uniformly from `0..n`.
///
/// Panics if `n` is 0.
pub fn random_tree(n: usize, seed: u64) -> Tree {
    assert!(n >= 1, "random_tree needs order at least 1");
    if n <= 2 {
        return Tree::from_edges_unchecked(n, (1..n).map(|v| (0, v)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Tree::from_prufer(&seq, n).expect("uniform Prüfer symbols always decode")
}
