//! Tree representation, edge-list I/O, the Prüfer codec, distance tables, and
//! structural predicates (path / star / double star / caterpillar / starlike).
//!
//! Vertices are always the contiguous labels `0..n`. Every constructor funnels
//! through [`Tree::from_edges`], which enforces the tree invariants (exact edge
//! count, no self-loops or duplicate edges, connectivity), so a `Tree` value is
//! a tree by construction everywhere else in the crate.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use thiserror::Error;

/// Why an edge list failed to describe a tree. Wrong edge count, multi-edges,
/// and disconnection are reported distinctly so callers can surface the precise
/// defect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotATreeKind {
    /// A tree on `n` vertices has exactly `n - 1` edges.
    EdgeCount { expected: usize, found: usize },
    /// An edge joins a vertex to itself.
    SelfLoop { vertex: usize },
    /// The same unordered pair appears twice.
    DuplicateEdge { u: usize, v: usize },
    /// The edge count is right but the graph is not connected (equivalently,
    /// it contains a cycle elsewhere).
    Disconnected { reached: usize, order: usize },
}

impl fmt::Display for NotATreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotATreeKind::EdgeCount { expected, found } => {
                write!(f, "expected {expected} edges, found {found}")
            }
            NotATreeKind::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            NotATreeKind::DuplicateEdge { u, v } => write!(f, "duplicate edge {u} {v}"),
            NotATreeKind::Disconnected { reached, order } => {
                write!(f, "disconnected: reached {reached} of {order} vertices")
            }
        }
    }
}

/// Errors from tree construction and structural queries.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TreeError {
    /// Input text that does not even parse as an edge list (bad token, bad
    /// arity, order zero, endpoint out of range).
    #[error("malformed input: {0}")]
    MalformedInput(String),
    /// Syntactically fine edge list that is not a tree.
    #[error("not a tree: {0}")]
    NotATree(NotATreeKind),
    /// A Prüfer sequence for order `n` must have length `n - 2`.
    #[error("prüfer sequence has length {found}, expected {expected} for order {order}")]
    BadLength {
        found: usize,
        expected: usize,
        order: usize,
    },
    /// A Prüfer symbol outside `0..n`.
    #[error("prüfer label {label} out of range for order {order}")]
    LabelOutOfRange { label: usize, order: usize },
    /// The operation needs more vertices than the tree has.
    #[error("order {0} is too small for this operation")]
    TooSmall(usize),
    /// A vertex argument outside `0..n`.
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    /// Attached paths must have at least one edge.
    #[error("path length must be at least 1")]
    NonPositiveLength,
}

/// A sorted set of vertices of a fixed tree, tagged with the order of that
/// tree so subset/complement queries stay honest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    members: Vec<usize>,
    universe: usize,
}

impl VertexSet {
    /// Builds a set from arbitrary members (sorted and deduplicated here).
    ///
    /// Panics in debug builds if a member is outside `0..universe`.
    pub fn new(mut members: Vec<usize>, universe: usize) -> Self {
        members.sort_unstable();
        members.dedup();
        debug_assert!(members.iter().all(|&v| v < universe));
        VertexSet { members, universe }
    }

    /// Builds a set from a membership indicator over `0..len`.
    pub fn from_indicator(indicator: &[bool]) -> Self {
        let members = indicator
            .iter()
            .enumerate()
            .filter_map(|(v, &inside)| inside.then_some(v))
            .collect();
        VertexSet {
            members,
            universe: indicator.len(),
        }
    }

    /// The members in increasing order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Order of the tree this set lives in.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// True when every member of `self` is a member of `other`.
    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Structural classification of a tree, computed once by [`Tree::classify`].
///
/// The flags are deliberately not mutually exclusive: `P_2` and `P_3` are both
/// paths and stars, every star and every path is starlike and a caterpillar,
/// and `is_double_star` holds exactly when the diameter is 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureFlags {
    /// Maximum degree at most 2.
    pub is_path: bool,
    /// Some vertex is adjacent to all others (diameter at most 2).
    pub is_star: bool,
    /// Diameter exactly 3: two adjacent centers, everything else a leaf.
    pub is_double_star: bool,
    /// Deleting all leaves yields a path, a single vertex, or nothing.
    pub is_caterpillar: bool,
    /// At most one vertex has degree greater than 2.
    pub is_starlike: bool,
    /// Number of edges on a longest path.
    pub diameter: usize,
    /// Largest vertex degree (0 for the one-vertex tree).
    pub max_degree: usize,
}

/// An unrooted tree on vertices `0..n`, stored as sorted adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(n={}; ", self.order())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, ")")
    }
}

impl Tree {
    /// Validates and builds a tree on `n` vertices from an edge slice.
    ///
    /// Rejects, in order: order 0 and out-of-range endpoints (malformed), a
    /// wrong edge count, self-loops, duplicate edges, and disconnection. With
    /// exactly `n - 1` distinct proper edges, connectivity is equivalent to
    /// acyclicity, so nothing further needs checking.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::MalformedInput("order must be at least 1".into()));
        }
        for &(u, v) in edges {
            let bad = if u >= n { u } else { v };
            if bad >= n {
                return Err(TreeError::MalformedInput(format!(
                    "edge endpoint {bad} out of range for order {n}"
                )));
            }
        }
        if edges.len() != n - 1 {
            return Err(TreeError::NotATree(NotATreeKind::EdgeCount {
                expected: n - 1,
                found: edges.len(),
            }));
        }
        for &(u, v) in edges {
            if u == v {
                return Err(TreeError::NotATree(NotATreeKind::SelfLoop { vertex: u }));
            }
        }
        let mut normalized: Vec<(usize, usize)> =
            edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(TreeError::NotATree(NotATreeKind::DuplicateEdge {
                u: w[0].0,
                v: w[0].1,
            }));
        }
        let tree = Self::from_edges_unchecked(n, edges.iter().copied());
        let reached = tree.bfs_order_from(0).0.len();
        if reached != n {
            return Err(TreeError::NotATree(NotATreeKind::Disconnected {
                reached,
                order: n,
            }));
        }
        Ok(tree)
    }

    /// Builds adjacency directly for edges already known to form a tree
    /// (family constructors, Prüfer decoding, level-sequence enumeration).
    pub(crate) fn from_edges_unchecked(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Tree { adj }
    }

    /// Parses the line-oriented edge-list format: the first significant line
    /// is the order `n`, each following significant line is one edge `u v`.
    /// Lines starting with `#` and blank lines are skipped; a trailing newline
    /// is optional.
    pub fn parse_edge_list(text: &str) -> Result<Self, TreeError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| TreeError::MalformedInput("empty input".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| TreeError::MalformedInput(format!("bad order line `{header}`")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let (u, v) = match (it.next(), it.next(), it.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(TreeError::MalformedInput(format!(
                        "edge line `{line}` must be exactly `u v`"
                    )))
                }
            };
            let parse = |tok: &str| {
                tok.parse::<usize>()
                    .map_err(|_| TreeError::MalformedInput(format!("bad vertex token `{tok}`")))
            };
            edges.push((parse(u)?, parse(v)?));
        }
        Self::from_edges(n, &edges)
    }

    /// Serializes to the edge-list format parsed by [`Tree::parse_edge_list`].
    /// Edges are emitted with the smaller endpoint first, in lexicographic
    /// order, so the output is canonical for a given labeled tree.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.order().to_string());
        out.push('\n');
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Decodes a Prüfer sequence into the unique labeled tree of order `n`.
    /// The sequence must have length `n - 2` with every symbol in `0..n`.
    pub fn from_prufer(seq: &[usize], n: usize) -> Result<Self, TreeError> {
        if n < 2 {
            return Err(TreeError::TooSmall(n));
        }
        if seq.len() != n - 2 {
            return Err(TreeError::BadLength {
                found: seq.len(),
                expected: n - 2,
                order: n,
            });
        }
        if let Some(&label) = seq.iter().find(|&&s| s >= n) {
            return Err(TreeError::LabelOutOfRange { label, order: n });
        }
        let mut degree = vec![1usize; n];
        for &s in seq {
            degree[s] += 1;
        }
        let mut leaves: BinaryHeap<Reverse<usize>> = (0..n)
            .filter(|&v| degree[v] == 1)
            .map(Reverse)
            .collect();
        let mut edges = Vec::with_capacity(n - 1);
        for &s in seq {
            let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf left");
            edges.push((leaf, s));
            degree[s] -= 1;
            if degree[s] == 1 {
                leaves.push(Reverse(s));
            }
        }
        let Reverse(a) = leaves.pop().expect("two vertices remain");
        let Reverse(b) = leaves.pop().expect("two vertices remain");
        edges.push((a, b));
        Ok(Self::from_edges_unchecked(n, edges.into_iter()))
    }

    /// Encodes this tree (order at least 2) as its Prüfer sequence: repeatedly
    /// record the neighbor of the smallest leaf and delete that leaf.
    pub fn to_prufer(&self) -> Result<Vec<usize>, TreeError> {
        let n = self.order();
        if n < 2 {
            return Err(TreeError::TooSmall(n));
        }
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut leaves: BinaryHeap<Reverse<usize>> = (0..n)
            .filter(|&v| degree[v] == 1)
            .map(Reverse)
            .collect();
        let mut seq = Vec::with_capacity(n - 2);
        for _ in 0..n - 2 {
            let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf left");
            removed[leaf] = true;
            let &parent = self.adj[leaf]
                .iter()
                .find(|&&w| !removed[w])
                .expect("a non-final leaf has a live neighbor");
            seq.push(parent);
            degree[parent] -= 1;
            if degree[parent] == 1 {
                leaves.push(Reverse(parent));
            }
        }
        Ok(seq)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// All edges with the smaller endpoint first, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// BFS order and parent array from `root` (the root is its own parent).
    pub fn bfs_order_from(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.order();
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        parent[root] = root;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in &self.adj[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    order.push(v);
                }
            }
        }
        (order, parent)
    }

    /// Distances from `src` to every vertex, by BFS.
    pub fn bfs_distances(&self, src: usize) -> Vec<u32> {
        let (order, parent) = self.bfs_order_from(src);
        let mut dist = vec![0u32; self.order()];
        for &v in order.iter().skip(1) {
            dist[v] = dist[parent[v]] + 1;
        }
        dist
    }

    /// The full n×n distance table (one BFS per source). Quadratic by design:
    /// this is the brute-force oracle every status computation is checked
    /// against, so it stays independent of the linear-time engine.
    pub fn all_pairs_distances(&self) -> Vec<Vec<u32>> {
        (0..self.order()).map(|v| self.bfs_distances(v)).collect()
    }

    /// Number of edges on a longest path, via the classic double sweep.
    pub fn diameter(&self) -> usize {
        let first = self.bfs_distances(0);
        let far = (0..self.order()).max_by_key(|&v| first[v]).unwrap_or(0);
        let second = self.bfs_distances(far);
        second.iter().copied().max().unwrap_or(0) as usize
    }

    /// The unique path between two vertices, endpoints included.
    pub fn path_between(&self, u: usize, v: usize) -> Vec<usize> {
        let (_, parent) = self.bfs_order_from(v);
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = parent[cur];
            path.push(cur);
        }
        path
    }

    /// Splits the vertices into (leaves, internal vertices): degree exactly 1
    /// versus degree at least 2. Defined for order at least 2; for order 2
    /// both vertices are leaves and the internal set is empty.
    pub fn vertex_partition(&self) -> Result<(VertexSet, VertexSet), TreeError> {
        let n = self.order();
        if n < 2 {
            return Err(TreeError::TooSmall(n));
        }
        let leaf_indicator: Vec<bool> = (0..n).map(|v| self.degree(v) == 1).collect();
        let internal_indicator: Vec<bool> = leaf_indicator.iter().map(|&l| !l).collect();
        Ok((
            VertexSet::from_indicator(&leaf_indicator),
            VertexSet::from_indicator(&internal_indicator),
        ))
    }

    /// The subtree induced by deleting every leaf, with vertices relabeled
    /// order-preservingly, or `None` when nothing remains (only order 2: both
    /// vertices are leaves). The one-vertex tree has no leaves and survives
    /// unchanged.
    pub fn delete_leaves(&self) -> Option<Tree> {
        let n = self.order();
        let keep: Vec<usize> = (0..n).filter(|&v| self.degree(v) != 1).collect();
        if keep.is_empty() {
            return None;
        }
        let mut relabel = vec![usize::MAX; n];
        for (new, &old) in keep.iter().enumerate() {
            relabel[old] = new;
        }
        let edges = self.edges().filter(|&(u, v)| relabel[u] != usize::MAX && relabel[v] != usize::MAX).map(|(u, v)| (relabel[u], relabel[v]));
        Some(Tree::from_edges_unchecked(keep.len(), edges))
    }

    /// True when the members of `set` induce a path in this tree (a single
    /// vertex counts; the empty set does not).
    pub fn induces_path(&self, set: &VertexSet) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut induced_edges = 0;
        for u in set.iter() {
            let induced_degree = self.adj[u].iter().filter(|&&v| set.contains(v)).count();
            if induced_degree > 2 {
                return false;
            }
            induced_edges += induced_degree;
        }
        // A subgraph of a tree with k vertices and k-1 edges is connected.
        induced_edges / 2 == set.len() - 1
    }

    /// Grows the tree by a path of `len` new edges hanging at `at`: new
    /// vertices `n, n+1, ..., n+len-1` with `at — n — n+1 — ... — n+len-1`.
    pub fn attach_path(&self, at: usize, len: usize) -> Result<Tree, TreeError> {
        let n = self.order();
        if at >= n {
            return Err(TreeError::VertexOutOfRange {
                vertex: at,
                order: n,
            });
        }
        if len == 0 {
            return Err(TreeError::NonPositiveLength);
        }
        let new_edges = (0..len).map(|i| {
            let tail = if i == 0 { at } else { n + i - 1 };
            (tail, n + i)
        });
        Ok(Tree::from_edges_unchecked(
            n + len,
            self.edges().chain(new_edges),
        ))
    }

    /// Lengths of the hanging paths at `u`, as a sorted multiset. A hanging
    /// path is a branch at a vertex of degree at least 3 whose interior
    /// vertices all have degree 2 and whose far end is a leaf; vertices of
    /// degree at most 2 have none by convention.
    pub fn hanging_path_lengths(&self, u: usize) -> Result<Vec<usize>, TreeError> {
        let n = self.order();
        if u >= n {
            return Err(TreeError::VertexOutOfRange {
                vertex: u,
                order: n,
            });
        }
        if self.degree(u) < 3 {
            return Ok(Vec::new());
        }
        let mut lengths = Vec::new();
        for &first in &self.adj[u] {
            let (mut prev, mut cur, mut len) = (u, first, 1usize);
            while self.degree(cur) == 2 {
                let &next = self.adj[cur].iter().find(|&&w| w != prev).expect("degree 2");
                prev = cur;
                cur = next;
                len += 1;
            }
            if self.degree(cur) == 1 {
                lengths.push(len);
            }
        }
        lengths.sort_unstable();
        Ok(lengths)
    }

    /// Computes all structural flags in one pass.
    pub fn classify(&self) -> StructureFlags {
        let n = self.order();
        let diameter = self.diameter();
        let max_degree = (0..n).map(|v| self.degree(v)).max().unwrap_or(0);
        let branching = (0..n).filter(|&v| self.degree(v) > 2).count();
        let is_caterpillar = match self.delete_leaves() {
            None => true,
            Some(spine) => (0..spine.order()).all(|v| spine.degree(v) <= 2),
        };
        StructureFlags {
            is_path: max_degree <= 2,
            is_star: diameter <= 2,
            is_double_star: diameter == 3,
            is_caterpillar,
            is_starlike: branching <= 1,
            diameter,
            max_degree,
        }
    }
}
