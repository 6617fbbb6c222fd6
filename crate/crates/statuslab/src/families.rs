//! Constructors for the named extremal families — paths, stars, double brooms
//! `T_{n;a,b}`, brooms `P_{n,a}`, spiders — plus the two-part family that is
//! extremal for the leaf-status upper bound at even `n - d`, and a parser for
//! compact `kind:params` family descriptions.
//!
//! Vertex numbering is fixed and documented per constructor (centers first,
//! then path interiors, then leaves) so serialized output is reproducible.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::enumeration::canonical_form;
use crate::tree::Tree;

/// Errors from family construction and spec parsing.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    /// A spider needs legs, and every leg needs positive length.
    #[error("spider legs must be a nonempty list of positive lengths")]
    EmptyLegs,
    /// The even-diameter extremal family exists only when `n - d` is even.
    #[error("n - d must be even, got n = {n} and d = {d}")]
    ParityMismatch { n: usize, d: usize },
    #[error("unknown family kind `{0}`")]
    UnknownKind(String),
    #[error("bad family spec `{spec}`: {reason}")]
    BadSpec { spec: String, reason: String },
}

/// The path `P_n` as vertices `0 — 1 — ... — n-1`.
pub fn make_path(n: usize) -> Result<Tree, FamilyError> {
    if n == 0 {
        return Err(FamilyError::ParamOutOfRange("path order must be >= 1".into()));
    }
    Ok(Tree::from_edges_unchecked(n, (1..n).map(|v| (v - 1, v))))
}

/// The star `S_n`: center 0, leaves `1..n`.
pub fn make_star(n: usize) -> Result<Tree, FamilyError> {
    if n == 0 {
        return Err(FamilyError::ParamOutOfRange("star order must be >= 1".into()));
    }
    Ok(Tree::from_edges_unchecked(n, (1..n).map(|v| (0, v))))
}

/// The double broom `T_{n;a,b}`: stars with `a` and `b` leaves whose centers
/// are joined by a path of length `n - a - b - 1`.
///
/// Numbering: vertex 0 is the `a`-side center, vertex 1 the `b`-side center,
/// then the path interior from the `a` side, then the `a` leaves, then the
/// `b` leaves.
///
/// Accepts any `a, b >= 1` with `a + b <= n - 2`; values outside the
/// classical window `2 <= a, b <= (n-2)/2` are degenerate but constructible
/// (callers can test [`double_broom_in_classical_range`]), because boundary
/// probing and the even-diameter extremal family need them. `T_{n;1,1}` is
/// the path, `T_{n;a,a}` is written `T_{n,a}`.
pub fn make_double_broom(n: usize, a: usize, b: usize) -> Result<Tree, FamilyError> {
    if a == 0 || b == 0 {
        return Err(FamilyError::ParamOutOfRange(
            "double broom needs a >= 1 and b >= 1".into(),
        ));
    }
    if a + b + 2 > n {
        return Err(FamilyError::ParamOutOfRange(format!(
            "double broom needs a + b <= n - 2, got a = {a}, b = {b}, n = {n}"
        )));
    }
    let interior = n - a - b - 2; // path vertices strictly between the centers
    let mut edges = Vec::with_capacity(n - 1);
    let mut chain = vec![0];
    chain.extend(2..2 + interior);
    chain.push(1);
    edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
    let first_leaf = 2 + interior;
    edges.extend((first_leaf..first_leaf + a).map(|leaf| (0, leaf)));
    edges.extend((first_leaf + a..first_leaf + a + b).map(|leaf| (1, leaf)));
    Ok(Tree::from_edges_unchecked(n, edges.into_iter()))
}

/// True when `(a, b)` lies in the classical double-broom window
/// `2 <= a, b <= (n-2)/2` (checked with doubled integers).
pub fn double_broom_in_classical_range(n: usize, a: usize, b: usize) -> bool {
    a >= 2 && b >= 2 && 2 * a <= n - 2 && 2 * b <= n - 2
}

/// The broom `P_{n,a}`: a star with `a` leaves whose center is one end of a
/// path on `n - a` vertices. `P_{n,1}` is the path, `P_{n,n-2}` the star.
///
/// Numbering: vertex 0 is the star center, `1..n-a` the rest of the path,
/// `n-a..n` the star leaves.
pub fn make_broom(n: usize, a: usize) -> Result<Tree, FamilyError> {
    if a == 0 || a + 2 > n {
        return Err(FamilyError::ParamOutOfRange(format!(
            "broom needs 1 <= a <= n - 2, got a = {a}, n = {n}"
        )));
    }
    let path_len = n - a; // vertices 0..path_len form the handle
    let mut edges: Vec<(usize, usize)> = (1..path_len).map(|v| (v - 1, v)).collect();
    edges.extend((path_len..n).map(|leaf| (0, leaf)));
    Ok(Tree::from_edges_unchecked(n, edges.into_iter()))
}

/// A spider (starlike tree): paths of the given lengths all hanging at the
/// center, vertex 0. Fewer than three legs only describes a path or a point,
/// so that degenerate case must be opted into with `allow_degenerate`.
pub fn make_spider(leg_lengths: &[usize], allow_degenerate: bool) -> Result<Tree, FamilyError> {
    if leg_lengths.is_empty() || leg_lengths.contains(&0) {
        return Err(FamilyError::EmptyLegs);
    }
    if leg_lengths.len() < 3 && !allow_degenerate {
        return Err(FamilyError::ParamOutOfRange(format!(
            "a spider needs at least 3 legs, got {}",
            leg_lengths.len()
        )));
    }
    let n = 1 + leg_lengths.iter().sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &len in leg_lengths {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Ok(Tree::from_edges_unchecked(n, edges.into_iter()))
}

/// The extremal family for the diameter-constrained leaf-status maximum when
/// `n - d` is even: the lopsided double broom `T_{n;(n-d)/2,(n-d)/2+1}`
/// together with, for `d >= 4`, every tree obtained from `T_{n-1,(n-d)/2}` by
/// hanging one new leaf at a degree-two vertex. Members are deduplicated by
/// canonical form; each has order `n` and diameter `d`.
pub fn diam_even_extremal_family(n: usize, d: usize) -> Result<Vec<Tree>, FamilyError> {
    if d < 3 || d + 1 > n {
        return Err(FamilyError::ParamOutOfRange(format!(
            "need 3 <= d <= n - 1, got d = {d}, n = {n}"
        )));
    }
    if !(n - d).is_multiple_of(2) {
        return Err(FamilyError::ParityMismatch { n, d });
    }
    let a = (n - d) / 2;
    let mut members = vec![make_double_broom(n, a, a + 1)?];
    if d >= 4 {
        let base = make_double_broom(n - 1, a, a)?;
        for v in 0..base.order() {
            if base.degree(v) == 2 {
                members.push(
                    base.attach_path(v, 1)
                        .expect("vertex index is in range and length 1 is positive"),
                );
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut family = Vec::new();
    for t in members {
        debug_assert_eq!(t.order(), n);
        debug_assert_eq!(t.diameter(), d);
        if seen.insert(canonical_form(&t)) {
            family.push(t);
        }
    }
    Ok(family)
}

/// The family kinds a [`FamilySpec`] can name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Path,
    Star,
    DoubleBroom,
    Broom,
    Spider,
    DiamEvenExtremal,
}

impl FamilyKind {
    pub const fn name(self) -> &'static str {
        match self {
            FamilyKind::Path => "path",
            FamilyKind::Star => "star",
            FamilyKind::DoubleBroom => "double_broom",
            FamilyKind::Broom => "broom",
            FamilyKind::Spider => "spider",
            FamilyKind::DiamEvenExtremal => "diam_even_extremal",
        }
    }
}

/// A parsed `kind:params` family description, e.g. `double_broom:10,3,3`,
/// `path:7`, `spider:1,2,3`, `diam_even_extremal:10,4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub params: Vec<usize>,
}

impl FamilySpec {
    /// Builds the member trees. Single-tree kinds yield one element;
    /// `diam_even_extremal` yields the whole deduplicated family.
    pub fn build(&self) -> Result<Vec<Tree>, FamilyError> {
        let arity = |want: usize| -> Result<(), FamilyError> {
            if self.params.len() == want {
                Ok(())
            } else {
                Err(FamilyError::BadSpec {
                    spec: self.to_string(),
                    reason: format!(
                        "{} takes {want} parameter(s), got {}",
                        self.kind.name(),
                        self.params.len()
                    ),
                })
            }
        };
        match self.kind {
            FamilyKind::Path => {
                arity(1)?;
                Ok(vec![make_path(self.params[0])?])
            }
            FamilyKind::Star => {
                arity(1)?;
                Ok(vec![make_star(self.params[0])?])
            }
            FamilyKind::DoubleBroom => {
                arity(3)?;
                Ok(vec![make_double_broom(
                    self.params[0],
                    self.params[1],
                    self.params[2],
                )?])
            }
            FamilyKind::Broom => {
                arity(2)?;
                Ok(vec![make_broom(self.params[0], self.params[1])?])
            }
            FamilyKind::Spider => Ok(vec![make_spider(&self.params, true)?]),
            FamilyKind::DiamEvenExtremal => {
                arity(2)?;
                diam_even_extremal_family(self.params[0], self.params[1])
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind.name())?;
        for (i, p) in self.params.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let (kind_str, params_str) = s.split_once(':').ok_or_else(|| FamilyError::BadSpec {
            spec: s.into(),
            reason: "expected `kind:params`".into(),
        })?;
        let kind = match kind_str {
            "path" => FamilyKind::Path,
            "star" => FamilyKind::Star,
            "double_broom" => FamilyKind::DoubleBroom,
            "broom" => FamilyKind::Broom,
            "spider" => FamilyKind::Spider,
            "diam_even_extremal" => FamilyKind::DiamEvenExtremal,
            other => return Err(FamilyError::UnknownKind(other.into())),
        };
        let params = params_str
            .split(',')
            .map(|tok| {
                tok.trim().parse::<usize>().map_err(|_| FamilyError::BadSpec {
                    spec: s.into(),
                    reason: format!("bad integer `{tok}`"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FamilySpec { kind, params })
    }
}
