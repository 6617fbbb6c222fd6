//! The claim registry and the exhaustive verifier.
//!
//! Each registered claim states, for one status invariant, a sharp bound as a
//! closed formula in the parameters together with an independent description
//! of the trees attaining it (a structural predicate or an explicit family
//! constructor). [`verify`] scans every isomorphism class in the requested
//! universe, checks the bound on each tree, and compares the set of attainers
//! against the description — the formula route and the structural route are
//! computed separately on purpose, so a defect in either one surfaces as a
//! disagreement instead of silently cancelling out.
//!
//! Alongside the bound claims, [`check_structural_lemma`] probes pointwise
//! facts (centroid method agreement, peripherian location, the leaf-deleted
//! identity, the hanging-path shift) on arbitrary trees; these are the
//! workhorse facts the bounds rest on, and the test suite exercises them both
//! exhaustively at small orders and on random trees at larger ones.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::enumeration::{
    canonical_form, enumerate_trees_with_ceiling, CanonicalForm, EnumerationError, TreeFilter,
    DEFAULT_CEILING,
};
use crate::families::{
    diam_even_extremal_family, make_broom, make_double_broom, FamilyError,
};
use crate::status::{a_centroid, peripherian, status_vector, CentroidMethod, Selector, StatusError};
use crate::tree::{StructureFlags, Tree, TreeError};

/// Errors from claim lookup and verification.
#[derive(Debug, Error)]
pub enum ClaimError {
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("unknown structural lemma `{0}`")]
    UnknownLemma(String),
    #[error("claim `{claim}` requires parameter `{param}`")]
    MissingParam {
        claim: &'static str,
        param: &'static str,
    },
    #[error("claim `{claim}` is out of its stated domain: {reason}")]
    OutOfDomain { claim: String, reason: String },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Status(#[from] StatusError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// The four extremal invariants: minimum/maximum leaf status and
/// minimum/maximum internal status, each over all vertices of the tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    MinLeafStatus,
    MaxLeafStatus,
    MinInternalStatus,
    MaxInternalStatus,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::MinLeafStatus => "ls",
            Invariant::MaxLeafStatus => "LS",
            Invariant::MinInternalStatus => "is",
            Invariant::MaxInternalStatus => "IS",
        }
    }

    pub fn selector(self) -> Selector {
        match self {
            Invariant::MinLeafStatus | Invariant::MaxLeafStatus => Selector::Leaves,
            Invariant::MinInternalStatus | Invariant::MaxInternalStatus => Selector::Internal,
        }
    }

    pub fn evaluate(self, t: &Tree) -> Result<u64, StatusError> {
        let sv = status_vector(t, self.selector())?;
        Ok(match self {
            Invariant::MinLeafStatus | Invariant::MinInternalStatus => sv.min(),
            Invariant::MaxLeafStatus | Invariant::MaxInternalStatus => sv.max(),
        })
    }
}

/// Which side of the bound the universe must stay on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// The invariant is at least the bound on every tree in the universe.
    Lower,
    /// The invariant is at most the bound on every tree in the universe.
    Upper,
}

/// Parameters a claim is instantiated at. `d` and `max_degree` restrict the
/// universe to trees with exactly that diameter / maximum degree and are only
/// consulted by claims that declare the need.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClaimParams {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
}

impl ClaimParams {
    pub fn order(n: usize) -> Self {
        ClaimParams {
            n,
            d: None,
            max_degree: None,
        }
    }

    pub fn with_diameter(n: usize, d: usize) -> Self {
        ClaimParams {
            n,
            d: Some(d),
            max_degree: None,
        }
    }

    pub fn with_max_degree(n: usize, max_degree: usize) -> Self {
        ClaimParams {
            n,
            d: None,
            max_degree: Some(max_degree),
        }
    }
}

type PredicateFn = fn(&Tree, &StructureFlags, &ClaimParams) -> bool;
type FamilyFn = fn(&ClaimParams) -> Result<Vec<Tree>, FamilyError>;

/// How the attainers of a bound are described independently of the scan.
enum Characterization {
    /// A structural test each tree either passes or fails.
    Predicate(PredicateFn),
    /// An explicit construction of every attaining isomorphism class.
    Family(FamilyFn),
}

struct Tier {
    value: u64,
    predicate: PredicateFn,
}

enum ClaimKind {
    Bound {
        direction: Direction,
        bound: fn(&ClaimParams) -> u64,
        characterization: Characterization,
    },
    /// The lowest attainable values of the invariant, each with the exact
    /// class of trees attaining it.
    Tiered { tiers: [Tier; 3] },
}

/// One verifiable statement about an invariant over a parameterized universe
/// of trees.
pub struct Claim {
    id: &'static str,
    summary: &'static str,
    invariant: Invariant,
    needs_diameter: bool,
    needs_max_degree: bool,
    domain: fn(&ClaimParams) -> Option<String>,
    kind: ClaimKind,
}

impl Claim {
    pub fn id(&self) -> &'static str {
        self.id
    }

    pub fn summary(&self) -> &'static str {
        self.summary
    }

    pub fn invariant(&self) -> Invariant {
        self.invariant
    }

    pub fn needs_diameter(&self) -> bool {
        self.needs_diameter
    }

    pub fn needs_max_degree(&self) -> bool {
        self.needs_max_degree
    }

    /// The claimed sharp value at `params` (for tiered claims, the lowest
    /// tier).
    pub fn bound(&self, params: &ClaimParams) -> u64 {
        match &self.kind {
            ClaimKind::Bound { bound, .. } => bound(params),
            ClaimKind::Tiered { tiers } => tiers[0].value,
        }
    }

    /// `Err(reason)` when `params` falls outside the claim's stated domain.
    pub fn in_domain(&self, params: &ClaimParams) -> Result<(), String> {
        match (self.domain)(params) {
            None => Ok(()),
            Some(reason) => Err(reason),
        }
    }
}

// ---------------------------------------------------------------------------
// Bound formulas. All arithmetic is exact and saturating so that formulas
// stay total even on out-of-domain exploratory parameters.
// ---------------------------------------------------------------------------

fn b_order_minus_one(p: &ClaimParams) -> u64 {
    p.n.saturating_sub(1) as u64
}

fn b_min_leaf_max(p: &ClaimParams) -> u64 {
    let n = p.n as u64;
    (n + 1) * (n + 1) / 8
}

fn b_min_leaf_max_diameter(p: &ClaimParams) -> u64 {
    let n = p.n as u64;
    let d = p.d.unwrap_or(0) as u64;
    let rest = n.saturating_sub(d);
    if rest % 2 == 1 {
        (rest + 1) * d / 2
    } else {
        rest * d / 2 + 1
    }
}

fn b_max_leaf_max(p: &ClaimParams) -> u64 {
    let n = p.n as u64;
    n * n / 4
}

/// The number of hanging-path components a tree of order `n` and diameter `d`
/// must carry off a diametric path to exist at all; zero exactly for paths.
pub fn hanging_path_count(n: usize, d: usize) -> usize {
    if d >= n.saturating_sub(1) || d < 2 {
        return 0;
    }
    let off_path = n - 1 - d;
    if d.is_multiple_of(2) {
        (2 * off_path).div_ceil(d)
    } else {
        (2 * off_path).div_ceil(d - 1)
    }
}

fn b_max_leaf_min_diameter(p: &ClaimParams) -> u64 {
    let d = p.d.unwrap_or(0);
    let t = hanging_path_count(p.n, d);
    p.n.saturating_sub(1) as u64 + (d as u64 * t as u64).div_ceil(2)
}

fn b_max_leaf_max_diameter(p: &ClaimParams) -> u64 {
    let d = p.d.unwrap_or(0) as u64;
    d * (p.n as u64).saturating_sub(d)
}

fn b_min_internal_min_diameter(p: &ClaimParams) -> u64 {
    let d = p.d.unwrap_or(0) as u64;
    d.saturating_sub(1) * d.saturating_sub(1) / 4
}

fn b_min_internal_max(p: &ClaimParams) -> u64 {
    let m = (p.n as u64).saturating_sub(2);
    m * m / 4
}

fn b_max_internal_min_diameter(p: &ClaimParams) -> u64 {
    let d = p.d.unwrap_or(0) as u64;
    d * d.saturating_sub(1) / 2
}

fn b_max_internal_max(p: &ClaimParams) -> u64 {
    let n = p.n as u64;
    n.saturating_sub(1) * n.saturating_sub(2) / 2
}

fn b_max_internal_max_degree(p: &ClaimParams) -> u64 {
    let m = (p.n as u64).saturating_sub(p.max_degree.unwrap_or(0) as u64);
    m * (m + 1) / 2
}

// ---------------------------------------------------------------------------
// Domains.
// ---------------------------------------------------------------------------

fn dom_order_2(p: &ClaimParams) -> Option<String> {
    (p.n < 2).then(|| format!("needs order at least 2, got {}", p.n))
}

fn dom_order_3(p: &ClaimParams) -> Option<String> {
    (p.n < 3).then(|| format!("needs order at least 3, got {}", p.n))
}

fn dom_order_4(p: &ClaimParams) -> Option<String> {
    (p.n < 4).then(|| format!("needs order at least 4, got {}", p.n))
}

fn dom_order_6(p: &ClaimParams) -> Option<String> {
    (p.n < 6).then(|| format!("needs order at least 6, got {}", p.n))
}

fn dom_diameter_window(p: &ClaimParams) -> Option<String> {
    let Some(d) = p.d else {
        return Some("needs a diameter".into());
    };
    (d < 2 || d + 1 > p.n).then(|| format!("needs 2 <= d <= n - 1, got n = {}, d = {d}", p.n))
}

fn dom_diameter_window_from_3(p: &ClaimParams) -> Option<String> {
    let Some(d) = p.d else {
        return Some("needs a diameter".into());
    };
    (d < 3 || d + 1 > p.n).then(|| format!("needs 3 <= d <= n - 1, got n = {}, d = {d}", p.n))
}

fn dom_max_degree_window(p: &ClaimParams) -> Option<String> {
    let Some(m) = p.max_degree else {
        return Some("needs a maximum degree".into());
    };
    (m < 2 || m + 1 > p.n)
        .then(|| format!("needs 2 <= max_degree <= n - 1, got n = {}, max_degree = {m}", p.n))
}

// ---------------------------------------------------------------------------
// Structural predicates.
// ---------------------------------------------------------------------------

fn pred_starlike(_t: &Tree, flags: &StructureFlags, _p: &ClaimParams) -> bool {
    flags.is_starlike
}

fn pred_path(_t: &Tree, flags: &StructureFlags, _p: &ClaimParams) -> bool {
    flags.is_path
}

fn pred_caterpillar(_t: &Tree, flags: &StructureFlags, _p: &ClaimParams) -> bool {
    flags.is_caterpillar
}

fn pred_star(_t: &Tree, flags: &StructureFlags, _p: &ClaimParams) -> bool {
    flags.is_star
}

fn pred_double_star(_t: &Tree, flags: &StructureFlags, _p: &ClaimParams) -> bool {
    flags.is_double_star
}

fn pred_caterpillar_diameter_4(_t: &Tree, flags: &StructureFlags, _p: &ClaimParams) -> bool {
    flags.is_caterpillar && flags.diameter == 4
}

/// Starlike, maximum degree as requested, and all but at most two of the
/// hanging paths at the hub have length one.
fn pred_short_legged_starlike(t: &Tree, flags: &StructureFlags, p: &ClaimParams) -> bool {
    let Some(wanted) = p.max_degree else {
        return false;
    };
    if !flags.is_starlike || flags.max_degree != wanted {
        return false;
    }
    if wanted <= 2 {
        return flags.is_path;
    }
    let hub = (0..t.order())
        .find(|&v| t.degree(v) == wanted)
        .expect("a vertex of maximum degree exists");
    match t.hanging_path_lengths(hub) {
        Ok(lengths) => lengths.iter().filter(|&&len| len == 1).count() >= wanted - 2,
        Err(_) => false,
    }
}

/// The equality shape behind the diameter-constrained lower bound on the
/// maximum leaf status: some diametric path leaves exactly the forced number
/// of components hanging off it, every off-path vertex has degree at most
/// two (so the components are hanging paths), and the two path ends share the
/// maximum leaf status — exactly, when `d · t` is even, or straddling it by
/// one when odd.
fn pred_balanced_diametric_spine(t: &Tree, flags: &StructureFlags, _p: &ClaimParams) -> bool {
    let n = t.order();
    let d = flags.diameter;
    let forced = hanging_path_count(n, d);
    let Ok(sv) = status_vector(t, Selector::Leaves) else {
        return false;
    };
    let top = sv.max();
    let values = sv.values();
    let dist = t.all_pairs_distances();
    for x in 0..n {
        for y in x + 1..n {
            if dist[x][y] as usize != d {
                continue;
            }
            let path = t.path_between(x, y);
            let mut on_path = vec![false; n];
            for &v in &path {
                on_path[v] = true;
            }
            if (0..n).any(|v| !on_path[v] && t.degree(v) > 2) {
                continue;
            }
            // Each off-path component of a tree meets the path by exactly
            // one edge, so counting those edges counts the components.
            let components: usize = path
                .iter()
                .map(|&u| t.neighbors(u).iter().filter(|&&w| !on_path[w]).count())
                .sum();
            if components != forced {
                continue;
            }
            let (sx, sy) = (values[x], values[y]);
            let balanced = if (d * forced).is_multiple_of(2) {
                top == sx && sx == sy
            } else {
                top == sx.max(sy) && sx.abs_diff(sy) == 1
            };
            if balanced {
                return true;
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Extremal family constructors.
// ---------------------------------------------------------------------------

fn fam_min_leaf_max(p: &ClaimParams) -> Result<Vec<Tree>, FamilyError> {
    let n = p.n;
    if n % 4 == 1 {
        let lo = (n - 1) / 4;
        Ok(vec![
            make_double_broom(n, lo, lo)?,
            make_double_broom(n, lo + 1, lo + 1)?,
        ])
    } else {
        let a = n.div_ceil(4);
        Ok(vec![make_double_broom(n, a, a)?])
    }
}

fn fam_min_leaf_max_diameter(p: &ClaimParams) -> Result<Vec<Tree>, FamilyError> {
    let n = p.n;
    let d = p.d.ok_or_else(|| {
        FamilyError::ParamOutOfRange("diameter-constrained family needs a diameter".into())
    })?;
    if (n - d) % 2 == 1 {
        let a = (n - d).div_ceil(2);
        Ok(vec![make_double_broom(n, a, a)?])
    } else {
        diam_even_extremal_family(n, d)
    }
}

fn fam_max_leaf_max(p: &ClaimParams) -> Result<Vec<Tree>, FamilyError> {
    let n = p.n;
    if n.is_multiple_of(2) {
        Ok(vec![make_broom(n, n / 2)?])
    } else {
        Ok(vec![
            make_broom(n, (n - 1) / 2)?,
            make_broom(n, n.div_ceil(2))?,
        ])
    }
}

fn fam_max_leaf_max_diameter(p: &ClaimParams) -> Result<Vec<Tree>, FamilyError> {
    let d = p.d.ok_or_else(|| {
        FamilyError::ParamOutOfRange("diameter-constrained family needs a diameter".into())
    })?;
    Ok(vec![make_broom(p.n, p.n - d)?])
}

// ---------------------------------------------------------------------------
// The registry.
// ---------------------------------------------------------------------------

static CLAIMS: [Claim; 14] = [
    Claim {
        id: "ls_min_global",
        summary: "minimum leaf status is at least n - 1; equality exactly for starlike trees",
        invariant: Invariant::MinLeafStatus,
        needs_diameter: false,
        needs_max_degree: false,
        domain: dom_order_2,
        kind: ClaimKind::Bound {
            direction: Direction::Lower,
            bound: b_order_minus_one,
            characterization: Characterization::Predicate(pred_starlike),
        },
    },
    Claim {
        id: "ls_max_global",
        summary: "minimum leaf status is at most floor((n+1)^2/8); attained by balanced double brooms",
        invariant: Invariant::MinLeafStatus,
        needs_diameter: false,
        needs_max_degree: false,
        domain: dom_order_6,
        kind: ClaimKind::Bound {
            direction: Direction::Upper,
            bound: b_min_leaf_max,
            characterization: Characterization::Family(fam_min_leaf_max),
        },
    },
    Claim {
        id: "ls_max_diameter",
        summary: "at diameter d, minimum leaf status is at most (n-d+1)d/2 for odd n-d, else (n-d)d/2 + 1",
        invariant: Invariant::MinLeafStatus,
        needs_diameter: true,
        needs_max_degree: false,
        domain: dom_diameter_window_from_3,
        kind: ClaimKind::Bound {
            direction: Direction::Upper,
            bound: b_min_leaf_max_diameter,
            characterization: Characterization::Family(fam_min_leaf_max_diameter),
        },
    },
    Claim {
        id: "LS_min_global",
        summary: "maximum leaf status is at least n - 1; equality exactly for paths",
        invariant: Invariant::MaxLeafStatus,
        needs_diameter: false,
        needs_max_degree: false,
        domain: dom_order_2,
        kind: ClaimKind::Bound {
            direction: Direction::Lower,
            bound: b_order_minus_one,
            characterization: Characterization::Predicate(pred_path),
        },
    },
    Claim {
        id: "LS_max_global",
        summary: "maximum leaf status is at most floor(n^2/4); attained by near-halved brooms",
        invariant: Invariant::MaxLeafStatus,
        needs_diameter: false,
        needs_max_degree: false,
        domain: dom_order_4,
        kind: ClaimKind::Bound {
            direction: Direction::Upper,
            bound: b_max_leaf_max,
            characterization: Characterization::Family(fam_max_leaf_max),
        },
    },
    Claim {
        id: "LS_min_diameter",
        summary: "at diameter d, maximum leaf status is at least n - 1 + ceil(dt/2) with t forced hanging paths",
        invariant: Invariant::MaxLeafStatus,
        needs_diameter: true,
        needs_max_degree: false,
        domain: dom_diameter_window,
        kind: ClaimKind::Bound {
            direction: Direction::Lower,
            bound: b_max_leaf_min_diameter,
            characterization: Characterization::Predicate(pred_balanced_diametric_spine),
        },
    },
    Claim {
        id: "LS_max_diameter",
        summary: "at diameter d, maximum leaf status is at most d(n-d); equality exactly for the broom",
        invariant: Invariant::MaxLeafStatus,
        needs_diameter: true,
        needs_max_degree: false,
        domain: dom_diameter_window,
        kind: ClaimKind::Bound {
            direction: Direction::Upper,
            bound: b_max_leaf_max_diameter,
            characterization: Characterization::Family(fam_max_leaf_max_diameter),
        },
    },
    Claim {
        id: "is_small_cases",
        summary: "minimum internal status 0, 1, 2 exactly for stars, double stars, diameter-4 caterpillars",
        invariant: Invariant::MinInternalStatus,
        needs_diameter: false,
        needs_max_degree: false,
        domain: dom_order_3,
        kind: ClaimKind::Tiered {
            tiers: [
                Tier {
                    value: 0,
                    predicate: pred_star,
                },
                Tier {
                    value: 1,
                    predicate: pred_double_star,
                },
                Tier {
                    value: 2,
                    predicate: pred_caterpillar_diameter_4,
                },
            ],
        },
    },
    Claim {
        id: "is_min_diameter",
        summary: "at diameter d, minimum internal status is at least floor((d-1)^2/4); equality exactly for caterpillars",
        invariant: Invariant::MinInternalStatus,
        needs_diameter: true,
        needs_max_degree: false,
        domain: dom_diameter_window,
        kind: ClaimKind::Bound {
            direction: Direction::Lower,
            bound: b_min_internal_min_diameter,
            characterization: Characterization::Predicate(pred_caterpillar),
        },
    },
    Claim {
        id: "is_max_global",
        summary: "minimum internal status is at most floor((n-2)^2/4); equality exactly for paths",
        invariant: Invariant::MinInternalStatus,
        needs_diameter: false,
        needs_max_degree: false,
        domain: dom_order_3,
        kind: ClaimKind::Bound {
            direction: Direction::Upper,
            bound: b_min_internal_max,
            characterization: Characterization::Predicate(pred_path),
        },
    },
    Claim {
        id: "IS_small_cases",
        summary: "maximum internal status 1, 3, 6 exactly for stars, double stars, diameter-4 caterpillars",
        invariant: Invariant::MaxInternalStatus,
        needs_diameter: false,
        needs_max_degree: false,
        domain: dom_order_3,
        kind: ClaimKind::Tiered {
            tiers: [
                Tier {
                    value: 1,
                    predicate: pred_star,
                },
                Tier {
                    value: 3,
                    predicate: pred_double_star,
                },
                Tier {
                    value: 6,
                    predicate: pred_caterpillar_diameter_4,
                },
            ],
        },
    },
    Claim {
        id: "IS_min_diameter",
        summary: "at diameter d, maximum internal status is at least d(d-1)/2; equality exactly for caterpillars",
        invariant: Invariant::MaxInternalStatus,
        needs_diameter: true,
        needs_max_degree: false,
        domain: dom_diameter_window,
        kind: ClaimKind::Bound {
            direction: Direction::Lower,
            bound: b_max_internal_min_diameter,
            characterization: Characterization::Predicate(pred_caterpillar),
        },
    },
    Claim {
        id: "IS_max_global",
        summary: "maximum internal status is at most (n-1)(n-2)/2; equality exactly for paths",
        invariant: Invariant::MaxInternalStatus,
        needs_diameter: false,
        needs_max_degree: false,
        domain: dom_order_3,
        kind: ClaimKind::Bound {
            direction: Direction::Upper,
            bound: b_max_internal_max,
            characterization: Characterization::Predicate(pred_path),
        },
    },
    Claim {
        id: "IS_max_maxdeg",
        summary: "at maximum degree D, maximum internal status is at most (n-D)(n-D+1)/2; attained by short-legged starlike trees",
        invariant: Invariant::MaxInternalStatus,
        needs_diameter: false,
        needs_max_degree: true,
        domain: dom_max_degree_window,
        kind: ClaimKind::Bound {
            direction: Direction::Upper,
            bound: b_max_internal_max_degree,
            characterization: Characterization::Predicate(pred_short_legged_starlike),
        },
    },
];

/// Every registered claim, in a fixed order.
pub fn claims() -> &'static [Claim] {
    &CLAIMS
}

/// Looks a claim up by identifier.
pub fn find_claim(id: &str) -> Result<&'static Claim, ClaimError> {
    CLAIMS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| ClaimError::UnknownClaim(id.to_string()))
}

/// Knobs for [`verify`]. Defaults: the standard enumeration ceiling, one
/// worker per available core, strict domain checking, batches of 64 classes.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub ceiling: usize,
    pub workers: usize,
    /// Permit parameters outside the claim's stated domain; the scan then
    /// reports whatever it finds instead of refusing to run.
    pub explore: bool,
    pub batch_size: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            ceiling: DEFAULT_CEILING,
            workers: std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1),
            explore: false,
            batch_size: 64,
        }
    }
}

/// The outcome of verifying one claim at one parameter point. Field names
/// are part of the tool's JSON output contract.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub claim: String,
    pub params: ClaimParams,
    /// Number of isomorphism classes scanned.
    pub universe: usize,
    pub bound: u64,
    /// Edge lists of trees that break the bound or defeat the
    /// characterization; empty when the claim holds.
    pub violations: Vec<String>,
    /// Canonical forms of the trees attaining the bound, sorted.
    pub extremal: Vec<String>,
    /// True when the attainers are exactly the trees the characterization
    /// names.
    pub characterization_agreement: bool,
    pub seconds: f64,
}

impl ClaimReport {
    /// True when the scan found no violations and the characterization
    /// matched.
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.characterization_agreement
    }
}

#[derive(Default)]
struct Partial {
    violations: Vec<String>,
    mismatches: Vec<String>,
    extremal: Vec<CanonicalForm>,
}

/// Runs `work` over `items` in fixed-size batches claimed by a shared cursor;
/// results are merged in batch order, so the outcome does not depend on the
/// worker count.
fn process_batches<T, R, F>(items: &[T], workers: usize, batch_size: usize, work: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&[T]) -> R + Sync,
{
    let batch_size = batch_size.max(1);
    let batches = items.len().div_ceil(batch_size).max(1);
    let cursor = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = (0..batches).map(|_| Mutex::new(None)).collect();
    let threads = workers.max(1).min(batches);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let b = cursor.fetch_add(1, Ordering::Relaxed);
                if b >= batches {
                    break;
                }
                let lo = b * batch_size;
                let hi = (lo + batch_size).min(items.len());
                let result = work(&items[lo..hi]);
                *slots[b].lock().expect("no panics while holding the slot") = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("worker threads have exited")
                .expect("every batch was processed")
        })
        .collect()
}

/// Exhaustively verifies `claim_id` at `params`: scans every isomorphism
/// class in the universe, records bound violations and attainers, and checks
/// the attainers against the claim's independent characterization. A failing
/// claim yields a report with the evidence, not an error; errors are reserved
/// for unusable inputs (unknown claim, missing or out-of-domain parameters,
/// ceiling).
pub fn verify(
    claim_id: &str,
    params: &ClaimParams,
    opts: &VerifyOptions,
) -> Result<ClaimReport, ClaimError> {
    let claim = find_claim(claim_id)?;
    if claim.needs_diameter && params.d.is_none() {
        return Err(ClaimError::MissingParam {
            claim: claim.id,
            param: "d",
        });
    }
    if claim.needs_max_degree && params.max_degree.is_none() {
        return Err(ClaimError::MissingParam {
            claim: claim.id,
            param: "max_degree",
        });
    }
    if let Err(reason) = claim.in_domain(params) {
        if !opts.explore {
            return Err(ClaimError::OutOfDomain {
                claim: claim.id.to_string(),
                reason,
            });
        }
    }
    let filter = TreeFilter {
        diameter: claim.needs_diameter.then_some(params.d).flatten(),
        max_degree: claim.needs_max_degree.then_some(params.max_degree).flatten(),
    };
    let start = Instant::now();
    let universe: Vec<Tree> = enumerate_trees_with_ceiling(params.n, filter, opts.ceiling)?.collect();

    let scan = |trees: &[Tree]| -> Result<Partial, ClaimError> {
        let mut part = Partial::default();
        for t in trees {
            let value = claim.invariant.evaluate(t)?;
            let flags = t.classify();
            match &claim.kind {
                ClaimKind::Bound {
                    direction,
                    bound,
                    characterization,
                } => {
                    let limit = bound(params);
                    let broken = match direction {
                        Direction::Lower => value < limit,
                        Direction::Upper => value > limit,
                    };
                    if broken {
                        part.violations.push(t.to_edge_list());
                    }
                    let attains = value == limit;
                    if attains {
                        part.extremal.push(canonical_form(t));
                    }
                    if let Characterization::Predicate(pred) = characterization {
                        if pred(t, &flags, params) != attains {
                            part.mismatches.push(t.to_edge_list());
                        }
                    }
                }
                ClaimKind::Tiered { tiers } => {
                    let mut agrees = true;
                    for tier in tiers {
                        if (value == tier.value) != (tier.predicate)(t, &flags, params) {
                            agrees = false;
                        }
                    }
                    if !agrees {
                        part.mismatches.push(t.to_edge_list());
                    }
                    if value == tiers[0].value {
                        part.extremal.push(canonical_form(t));
                    }
                }
            }
        }
        Ok(part)
    };

    let partials = process_batches(&universe, opts.workers, opts.batch_size, scan);
    let mut violations = Vec::new();
    let mut mismatches = Vec::new();
    let mut attainers = BTreeSet::new();
    for partial in partials {
        let partial = partial?;
        violations.extend(partial.violations);
        mismatches.extend(partial.mismatches);
        attainers.extend(partial.extremal);
    }

    let mut agreement = mismatches.is_empty();
    if let ClaimKind::Bound {
        characterization: Characterization::Family(build),
        ..
    } = &claim.kind
    {
        let described: BTreeSet<CanonicalForm> =
            build(params)?.iter().map(canonical_form).collect();
        agreement = agreement && described == attainers;
    }
    violations.extend(mismatches);

    Ok(ClaimReport {
        claim: claim.id.to_string(),
        params: *params,
        universe: universe.len(),
        bound: claim.bound(params),
        violations,
        extremal: attainers.iter().map(|c| c.to_string()).collect(),
        characterization_agreement: agreement,
        seconds: start.elapsed().as_secs_f64(),
    })
}

// ---------------------------------------------------------------------------
// Structural lemmas.
// ---------------------------------------------------------------------------

/// Identifiers accepted by [`check_structural_lemma`].
pub fn structural_lemma_ids() -> [&'static str; 6] {
    [
        "lemma_centroid_bw",
        "lemma_centroid_half",
        "lemma_leaf_periph",
        "lemma_internal_periph",
        "leaf_deleted_identity",
        "hanging_shift",
    ]
}

fn require_order(t: &Tree, min: usize, what: &str) -> Result<(), ClaimError> {
    if t.order() < min {
        return Err(ClaimError::HypothesisViolated(format!(
            "{what} needs order at least {min}, got {}",
            t.order()
        )));
    }
    Ok(())
}

/// Checks one pointwise structural fact on `t`; `Ok(true)` means the fact
/// holds there. Facts and their hypotheses:
///
/// - `lemma_centroid_bw` (order >= 3): for both target selectors, the
///   status minimizers are exactly the branch-weight minimizers.
/// - `lemma_centroid_half` (order >= 3): the status minimizers are exactly
///   the vertices whose branch weight is at most half the target count.
/// - `lemma_leaf_periph` (order >= 2): the maximum leaf status lives on all
///   vertices for a path and only on leaves otherwise.
/// - `lemma_internal_periph` (order >= 3): the maximum internal status lives
///   only on leaves.
/// - `leaf_deleted_identity` (order >= 3): the minimum internal status of
///   `t` equals the minimum all-vertex status of the leaf-deleted tree.
/// - `hanging_shift` (order >= 2): a small deterministic sweep of
///   [`check_hanging_shift`] over a few attachment vertices and path pairs.
pub fn check_structural_lemma(t: &Tree, id: &str) -> Result<bool, ClaimError> {
    match id {
        "lemma_centroid_bw" => {
            require_order(t, 3, id)?;
            for sel in [Selector::Leaves, Selector::Internal] {
                let brute = a_centroid(t, sel, CentroidMethod::Brute)?;
                let weighted = a_centroid(t, sel, CentroidMethod::BranchWeight)?;
                if brute != weighted {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        "lemma_centroid_half" => {
            require_order(t, 3, id)?;
            for sel in [Selector::Leaves, Selector::Internal] {
                let brute = a_centroid(t, sel, CentroidMethod::Brute)?;
                let halved = a_centroid(t, sel, CentroidMethod::HalfCondition)?;
                if brute != halved {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        "lemma_leaf_periph" => {
            require_order(t, 2, id)?;
            let per = peripherian(t, Selector::Leaves)?;
            if t.classify().is_path {
                Ok(per.len() == t.order())
            } else {
                Ok(per.is_subset_of(&Selector::Leaves.members(t)))
            }
        }
        "lemma_internal_periph" => {
            require_order(t, 3, id)?;
            let per = peripherian(t, Selector::Internal)?;
            Ok(per.is_subset_of(&Selector::Leaves.members(t)))
        }
        "leaf_deleted_identity" => {
            require_order(t, 3, id)?;
            let inner = status_vector(t, Selector::Internal)?.min();
            let core = t
                .delete_leaves()
                .expect("order >= 3 leaves a nonempty core");
            let core_min = status_vector(&core, Selector::All)?.min();
            Ok(inner == core_min)
        }
        "hanging_shift" => {
            require_order(t, 2, id)?;
            let n = t.order();
            let mut spots = vec![0, n / 2, n - 1];
            spots.dedup();
            for u in spots {
                for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
                    if !check_hanging_shift(t, u, p, q)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        other => Err(ClaimError::UnknownLemma(other.to_string())),
    }
}

/// Checks the hanging-path shift at one configuration: attaching paths of
/// lengths `p + 1, q - 1` at `u` instead of `p, q` (with `p >= q >= 1`) never
/// lowers the maximum internal status, and keeps it equal exactly when
/// `q >= 2` and the base tree is a star centered at `u`. The base tree needs
/// at least two vertices (with a single vertex both configurations describe
/// the same path).
pub fn check_hanging_shift(t: &Tree, u: usize, p: usize, q: usize) -> Result<bool, ClaimError> {
    let n = t.order();
    if n < 2 {
        return Err(ClaimError::HypothesisViolated(
            "the shift needs a base tree of order at least 2".into(),
        ));
    }
    if q < 1 || p < q {
        return Err(ClaimError::HypothesisViolated(format!(
            "the shift needs p >= q >= 1, got p = {p}, q = {q}"
        )));
    }
    let before = t.attach_path(u, p)?.attach_path(u, q)?;
    let after = if q == 1 {
        t.attach_path(u, p + 1)?
    } else {
        t.attach_path(u, p + 1)?.attach_path(u, q - 1)?
    };
    let is_before = status_vector(&before, Selector::Internal)?.max();
    let is_after = status_vector(&after, Selector::Internal)?.max();
    if is_after < is_before {
        return Ok(false);
    }
    let expects_equality = q >= 2 && t.classify().is_star && t.degree(u) == n - 1;
    Ok((is_after == is_before) == expects_equality)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_path, make_spider, make_star};

    fn chair() -> Tree {
        Tree::parse_edge_list("5\n0 1\n1 2\n2 3\n1 4\n").unwrap()
    }

    fn quiet() -> VerifyOptions {
        VerifyOptions {
            workers: 2,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn registry_is_complete_and_unique() {
        let ids: Vec<&str> = claims().iter().map(|c| c.id()).collect();
        assert_eq!(ids.len(), 14);
        let unique: BTreeSet<&&str> = ids.iter().collect();
        assert_eq!(unique.len(), ids.len());
        assert!(find_claim("ls_min_global").is_ok());
        assert!(matches!(
            find_claim("nonsense"),
            Err(ClaimError::UnknownClaim(_))
        ));
    }

    #[test]
    fn bound_formulas_hit_pinned_values() {
        let at = |id: &str, p: ClaimParams| find_claim(id).unwrap().bound(&p);
        assert_eq!(at("ls_min_global", ClaimParams::order(7)), 6);
        assert_eq!(at("ls_max_global", ClaimParams::order(10)), 15);
        assert_eq!(at("ls_max_global", ClaimParams::order(9)), 12);
        assert_eq!(at("ls_max_diameter", ClaimParams::with_diameter(10, 4)), 13);
        assert_eq!(at("ls_max_diameter", ClaimParams::with_diameter(10, 5)), 15);
        assert_eq!(at("LS_max_global", ClaimParams::order(10)), 25);
        assert_eq!(at("LS_min_diameter", ClaimParams::with_diameter(15, 8)), 22);
        assert_eq!(at("LS_max_diameter", ClaimParams::with_diameter(10, 4)), 24);
        assert_eq!(at("is_min_diameter", ClaimParams::with_diameter(9, 4)), 2);
        assert_eq!(at("is_max_global", ClaimParams::order(10)), 16);
        assert_eq!(at("IS_min_diameter", ClaimParams::with_diameter(9, 4)), 6);
        assert_eq!(at("IS_max_global", ClaimParams::order(10)), 36);
        assert_eq!(at("IS_max_maxdeg", ClaimParams::with_max_degree(7, 3)), 10);
    }

    #[test]
    fn forced_hanging_path_counts() {
        assert_eq!(hanging_path_count(15, 8), 2);
        assert_eq!(hanging_path_count(9, 8), 0);
        assert_eq!(hanging_path_count(5, 2), 2);
        assert_eq!(hanging_path_count(10, 3), 6);
        assert_eq!(hanging_path_count(10, 2), 7);
        assert_eq!(hanging_path_count(2, 1), 0);
    }

    #[test]
    fn lower_bound_on_min_leaf_status_verifies() {
        let report = verify("ls_min_global", &ClaimParams::order(8), &quiet()).unwrap();
        assert_eq!(report.universe, 23);
        assert_eq!(report.bound, 7);
        assert!(report.passed(), "violations: {:?}", report.violations);
    }

    #[test]
    fn broom_family_matches_max_leaf_attainers() {
        let report = verify("LS_max_global", &ClaimParams::order(9), &quiet()).unwrap();
        assert!(report.passed());
        let expected: BTreeSet<String> = [make_broom(9, 4).unwrap(), make_broom(9, 5).unwrap()]
            .iter()
            .map(|t| canonical_form(t).to_string())
            .collect();
        assert_eq!(report.extremal.iter().cloned().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn tiered_internal_status_classification_verifies() {
        let report = verify("is_small_cases", &ClaimParams::order(5), &quiet()).unwrap();
        assert_eq!(report.universe, 3);
        assert_eq!(report.bound, 0);
        assert!(report.passed());
        assert_eq!(
            report.extremal,
            vec![canonical_form(&make_star(5).unwrap()).to_string()]
        );
    }

    #[test]
    fn out_of_domain_is_an_error_unless_exploring() {
        let params = ClaimParams::order(4);
        assert!(matches!(
            verify("ls_max_global", &params, &quiet()),
            Err(ClaimError::OutOfDomain { .. })
        ));
        // Exploring runs the scan; at n = 4 both classes attain the formula
        // value but the family names only one, so agreement honestly fails.
        let opts = VerifyOptions {
            explore: true,
            ..quiet()
        };
        let report = verify("ls_max_global", &params, &opts).unwrap();
        assert_eq!(report.universe, 2);
        assert!(report.violations.is_empty());
        assert!(!report.characterization_agreement);
    }

    #[test]
    fn missing_parameters_are_rejected() {
        assert!(matches!(
            verify("ls_max_diameter", &ClaimParams::order(10), &quiet()),
            Err(ClaimError::MissingParam { param: "d", .. })
        ));
        assert!(matches!(
            verify("IS_max_maxdeg", &ClaimParams::order(10), &quiet()),
            Err(ClaimError::MissingParam {
                param: "max_degree",
                ..
            })
        ));
    }

    #[test]
    fn reports_are_identical_across_worker_counts() {
        let params = ClaimParams::with_diameter(10, 4);
        let serial = verify(
            "ls_max_diameter",
            &params,
            &VerifyOptions {
                workers: 1,
                ..VerifyOptions::default()
            },
        )
        .unwrap();
        let parallel = verify(
            "ls_max_diameter",
            &params,
            &VerifyOptions {
                workers: 8,
                batch_size: 3,
                ..VerifyOptions::default()
            },
        )
        .unwrap();
        assert_eq!(serial.universe, parallel.universe);
        assert_eq!(serial.violations, parallel.violations);
        assert_eq!(serial.extremal, parallel.extremal);
        assert_eq!(
            serial.characterization_agreement,
            parallel.characterization_agreement
        );
        assert_eq!(serial.extremal.len(), 2);
        assert!(serial.passed());
    }

    #[test]
    fn structural_lemmas_hold_on_the_chair() {
        for id in structural_lemma_ids() {
            assert!(
                check_structural_lemma(&chair(), id).unwrap(),
                "lemma {id}"
            );
        }
    }

    #[test]
    fn lemma_hypotheses_are_enforced() {
        let p2 = make_path(2).unwrap();
        assert!(matches!(
            check_structural_lemma(&p2, "lemma_centroid_bw"),
            Err(ClaimError::HypothesisViolated(_))
        ));
        assert!(check_structural_lemma(&p2, "lemma_leaf_periph").unwrap());
        assert!(matches!(
            check_structural_lemma(&p2, "no_such_lemma"),
            Err(ClaimError::UnknownLemma(_))
        ));
    }

    #[test]
    fn hanging_shift_equality_needs_a_star_center_and_long_legs() {
        // Star centered at the attachment vertex, q >= 2: equal.
        let p2 = make_path(2).unwrap();
        assert!(check_hanging_shift(&p2, 0, 2, 2).unwrap());
        // Same star but q = 1: the shift is strict, and the check knows it.
        assert!(check_hanging_shift(&p2, 0, 1, 1).unwrap());
        // Attaching at the end of a path of order 3: strict.
        let p3 = make_path(3).unwrap();
        assert!(check_hanging_shift(&p3, 0, 2, 2).unwrap());
        assert!(check_hanging_shift(&p3, 1, 2, 2).unwrap());
        // Hypotheses: q >= 1, p >= q, base order >= 2.
        assert!(matches!(
            check_hanging_shift(&p3, 0, 1, 0),
            Err(ClaimError::HypothesisViolated(_))
        ));
        assert!(matches!(
            check_hanging_shift(&p3, 0, 1, 2),
            Err(ClaimError::HypothesisViolated(_))
        ));
        let k1 = make_path(1).unwrap();
        assert!(matches!(
            check_hanging_shift(&k1, 0, 2, 1),
            Err(ClaimError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn shift_values_match_a_direct_computation() {
        // From a path of order 3 attached at its end: legs (2,2) vs (3,1)
        // around the hub give spiders with maximum internal status 9 and 10.
        let p3 = make_path(3).unwrap();
        let before = p3.attach_path(0, 2).unwrap().attach_path(0, 2).unwrap();
        let spider = make_spider(&[2, 2, 2], false).unwrap();
        assert_eq!(
            canonical_form(&before),
            canonical_form(&spider),
            "the attachment really builds the symmetric spider"
        );
        assert_eq!(
            status_vector(&spider, Selector::Internal).unwrap().max(),
            9
        );
        let lopsided = make_spider(&[1, 2, 3], false).unwrap();
        assert_eq!(
            status_vector(&lopsided, Selector::Internal).unwrap().max(),
            10
        );
    }

    #[test]
    fn diameter_bounds_stay_consistent_with_the_global_one() {
        // Maximizing the diameter-constrained formula over d recovers the
        // global formula.
        for n in 6..=12usize {
            let global = find_claim("ls_max_global")
                .unwrap()
                .bound(&ClaimParams::order(n));
            let best = (3..n)
                .map(|d| {
                    find_claim("ls_max_diameter")
                        .unwrap()
                        .bound(&ClaimParams::with_diameter(n, d))
                })
                .max()
                .unwrap();
            assert_eq!(global, best, "order {n}");
        }
    }
}
