//! Command-line front end: compute status invariants of a tree, locate
//! centroids and peripherians, build named families, enumerate isomorphism
//! classes, exhaustively verify registered claims, and spot-check the
//! structural lemmas on random trees.
//!
//! Exit codes: 0 success / claim certified, 2 a scanned claim failed,
//! 3 domain error (out-of-domain parameters, unusable selector, ceiling),
//! 64 usage error, 65 malformed input data, 74 I/O error.

use std::fs;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use statuslab::{
    check_structural_lemma, claims, double_broom_in_classical_range, enumerate_trees_with_ceiling,
    find_claim, random_tree, status_vector, a_centroid, canonical_form, peripherian,
    structural_lemma_ids, verify, CentroidMethod, ClaimError, ClaimParams, ClaimReport,
    FamilyKind, FamilySpec, Selector, StatusReport, Tree, TreeFilter, VerifyOptions,
    DEFAULT_CEILING,
};

const EXIT_OK: i32 = 0;
const EXIT_VIOLATION: i32 = 2;
const EXIT_DOMAIN: i32 = 3;
const EXIT_USAGE: i32 = 64;
const EXIT_DATA: i32 = 65;
const EXIT_IO: i32 = 74;

#[derive(Parser)]
#[command(
    name = "statuslab",
    version,
    about = "Status invariants of trees: compute, construct, enumerate, verify",
    after_help = "Examples:\n  \
        statuslab family broom:10,5 | statuslab status --in - --selector leaves\n  \
        statuslab enumerate -n 9 --diameter 4 --emit canon\n  \
        statuslab verify --claim ls_max_global --n 6..12 --json reports.json\n  \
        statuslab random-check --k 200 --n 120 --seed 1"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Status vector, extremes, and witness sets for one tree
    Status(StatusArgs),
    /// A-centroid by every method, plus the peripherian
    Centroid(CentroidArgs),
    /// Build a named family and print its edge list(s)
    Family(FamilyArgs),
    /// Enumerate all isomorphism classes of trees of one order
    Enumerate(EnumerateArgs),
    /// Exhaustively verify a registered claim over all trees
    Verify(VerifyArgs),
    /// Check the structural lemmas on seeded random trees
    RandomCheck(RandomCheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SelectorArg {
    Leaves,
    Internal,
    All,
}

impl From<SelectorArg> for Selector {
    fn from(s: SelectorArg) -> Selector {
        match s {
            SelectorArg::Leaves => Selector::Leaves,
            SelectorArg::Internal => Selector::Internal,
            SelectorArg::All => Selector::All,
        }
    }
}

#[derive(Args)]
struct StatusArgs {
    /// Edge-list file, or `-` for stdin
    #[arg(long = "in", value_name = "PATH", default_value = "-")]
    input: String,
    /// Which vertices count toward the status sum
    #[arg(long, value_enum, default_value_t = SelectorArg::Leaves)]
    selector: SelectorArg,
    /// Print one line of JSON instead of the human summary
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CentroidArgs {
    /// Edge-list file, or `-` for stdin
    #[arg(long = "in", value_name = "PATH", default_value = "-")]
    input: String,
    /// Which vertices count toward the status sum
    #[arg(long, value_enum, default_value_t = SelectorArg::Leaves)]
    selector: SelectorArg,
    /// Print one line of JSON instead of the human summary
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family spec: `path:7`, `star:6`, `broom:9,4`, `double_broom:10,3,4`,
    /// `spider:1,2,3`, or `diam_even_extremal:10,4`
    spec: String,
    /// Print only the member with this zero-based index
    #[arg(long)]
    index: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    /// Just the number of classes
    Count,
    /// Each class as an edge list
    Edges,
    /// Each class as its canonical form
    Canon,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Tree order
    #[arg(short = 'n', long = "n", value_name = "N")]
    order: usize,
    /// Keep only trees with exactly this diameter
    #[arg(long)]
    diameter: Option<usize>,
    /// Keep only trees with exactly this maximum degree
    #[arg(long)]
    max_degree: Option<usize>,
    /// What to print
    #[arg(long, value_enum, default_value_t = EmitArg::Count)]
    emit: EmitArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim identifier (see --list)
    #[arg(long)]
    claim: Option<String>,
    /// Order or inclusive order range, e.g. `9` or `3..12`
    #[arg(long = "n", short = 'n', value_name = "N[..M]")]
    orders: Option<String>,
    /// Diameter; without it, diameter-constrained claims sweep 2..=n-1
    #[arg(long)]
    d: Option<usize>,
    /// Maximum degree; without it, degree-constrained claims sweep 2..=n-1
    #[arg(long)]
    max_degree: Option<usize>,
    /// Write the reports as a JSON array to this path (`-` for stdout)
    #[arg(long, value_name = "PATH")]
    json: Option<String>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    workers: Option<usize>,
    /// Scan outside the claim's stated domain instead of refusing
    #[arg(long)]
    explore: bool,
    /// List the registered claims and exit
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct RandomCheckArgs {
    /// Number of random trees
    #[arg(long, default_value_t = 1000)]
    k: usize,
    /// Order of each random tree
    #[arg(short = 'n', long = "n", default_value_t = 200)]
    order: usize,
    /// Base seed; tree i uses seed + i
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print one line of JSON instead of the human summary
    #[arg(long)]
    json: bool,
}

fn main() {
    // Behave like a Unix filter when the read end of a pipe closes
    // (`statuslab ... | head`): terminate on SIGPIPE instead of panicking
    // mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match cli.command {
        Command::Status(args) => cmd_status(args),
        Command::Centroid(args) => cmd_centroid(args),
        Command::Family(args) => cmd_family(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::RandomCheck(args) => cmd_random_check(args),
    };
    std::process::exit(code);
}

/// Reads and parses a tree, mapping failures onto the exit-code scheme.
fn read_tree(path: &str) -> Result<Tree, i32> {
    let text = if path == "-" {
        let mut buf = String::new();
        if let Err(e) = io::stdin().read_to_string(&mut buf) {
            eprintln!("error: reading stdin: {e}");
            return Err(EXIT_IO);
        }
        buf
    } else {
        match fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("error: reading `{path}`: {e}");
                return Err(EXIT_IO);
            }
        }
    };
    Tree::parse_edge_list(&text).map_err(|e| {
        eprintln!("error: `{path}`: {e}");
        EXIT_DATA
    })
}

fn fmt_set(members: &[usize]) -> String {
    let inner: Vec<String> = members.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn ceiling_from_env() -> Result<usize, i32> {
    match std::env::var("STATUSLAB_CEILING") {
        Err(_) => Ok(DEFAULT_CEILING),
        Ok(raw) => raw.trim().parse().map_err(|_| {
            eprintln!("error: STATUSLAB_CEILING must be a positive integer, got `{raw}`");
            EXIT_USAGE
        }),
    }
}

fn cmd_status(args: StatusArgs) -> i32 {
    let tree = match read_tree(&args.input) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let report = match StatusReport::compute(&tree, args.selector.into()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DOMAIN;
        }
    };
    if args.json {
        println!("{}", serde_json::to_string(&report).expect("reports serialize"));
    } else {
        let values: Vec<String> = report.values.iter().map(|v| v.to_string()).collect();
        println!("n: {}", report.n);
        println!("selector: {}", report.selector);
        println!("values: {}", values.join(" "));
        println!("min: {} at {}", report.min, fmt_set(&report.min_set));
        println!("max: {} at {}", report.max, fmt_set(&report.max_set));
    }
    EXIT_OK
}

fn cmd_centroid(args: CentroidArgs) -> i32 {
    let tree = match read_tree(&args.input) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let sel: Selector = args.selector.into();
    let sv = match status_vector(&tree, sel) {
        Ok(sv) => sv,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DOMAIN;
        }
    };
    let brute = a_centroid(&tree, sel, CentroidMethod::Brute).expect("same preconditions");
    let weighted = a_centroid(&tree, sel, CentroidMethod::BranchWeight).expect("same preconditions");
    // The half-condition method has extra preconditions; report it as
    // unavailable rather than failing the whole query.
    let halved = a_centroid(&tree, sel, CentroidMethod::HalfCondition);
    let per = peripherian(&tree, sel).expect("same preconditions");
    if args.json {
        let half_json = match &halved {
            Ok(set) => json!(set.members()),
            Err(_) => json!(null),
        };
        let out = json!({
            "n": tree.order(),
            "selector": sel.name(),
            "min": sv.min(),
            "max": sv.max(),
            "brute": brute.members(),
            "branch_weight": weighted.members(),
            "half_condition": half_json,
            "peripherian": per.members(),
        });
        println!("{out}");
    } else {
        println!("n: {}", tree.order());
        println!("selector: {}", sel.name());
        println!("status minimizers (brute): {} at value {}", brute, sv.min());
        println!("branch-weight minimizers: {weighted}");
        match halved {
            Ok(set) => println!("half-condition set: {set}"),
            Err(e) => println!("half-condition set: n/a ({e})"),
        }
        println!("peripherian: {} at value {}", per, sv.max());
    }
    EXIT_OK
}

fn cmd_family(args: FamilyArgs) -> i32 {
    let spec: FamilySpec = match args.spec.parse() {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if spec.kind == FamilyKind::DoubleBroom && spec.params.len() == 3 {
        let (n, a, b) = (spec.params[0], spec.params[1], spec.params[2]);
        if a >= 1 && b >= 1 && a + b + 2 <= n && !double_broom_in_classical_range(n, a, b) {
            eprintln!(
                "warning: double_broom:{n},{a},{b} lies outside the classical window \
                 2 <= a, b <= (n-2)/2; building it anyway"
            );
        }
    }
    let members = match spec.build() {
        Ok(members) => members,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DOMAIN;
        }
    };
    match args.index {
        Some(i) => {
            let Some(t) = members.get(i) else {
                eprintln!(
                    "error: index {i} out of range; `{}` has {} member(s)",
                    spec,
                    members.len()
                );
                return EXIT_USAGE;
            };
            print!("{}", t.to_edge_list());
        }
        None => {
            let many = members.len() > 1;
            for (i, t) in members.iter().enumerate() {
                if many {
                    println!("# member {}/{}", i + 1, members.len());
                }
                print!("{}", t.to_edge_list());
            }
        }
    }
    EXIT_OK
}

fn cmd_enumerate(args: EnumerateArgs) -> i32 {
    let ceiling = match ceiling_from_env() {
        Ok(c) => c,
        Err(code) => return code,
    };
    let filter = TreeFilter {
        diameter: args.diameter,
        max_degree: args.max_degree,
    };
    let stream = match enumerate_trees_with_ceiling(args.order, filter, ceiling) {
        Ok(stream) => stream,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DOMAIN;
        }
    };
    match args.emit {
        EmitArg::Count => println!("{}", stream.count()),
        EmitArg::Canon => {
            for t in stream {
                println!("{}", canonical_form(&t));
            }
        }
        EmitArg::Edges => {
            for (i, t) in stream.enumerate() {
                if i > 0 {
                    println!();
                }
                println!("# tree {}", i + 1);
                print!("{}", t.to_edge_list());
            }
        }
    }
    EXIT_OK
}

/// Parses `9` or `3..12` (inclusive; `3..=12` is accepted as the same thing).
fn parse_order_range(text: &str) -> Result<(usize, usize), String> {
    let parse_one = |s: &str| -> Result<usize, String> {
        s.trim()
            .parse()
            .map_err(|_| format!("`{s}` is not a number"))
    };
    match text.split_once("..") {
        None => {
            let n = parse_one(text)?;
            Ok((n, n))
        }
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (parse_one(lo)?, parse_one(hi)?);
            if lo > hi {
                return Err(format!("empty order range {lo}..{hi}"));
            }
            Ok((lo, hi))
        }
    }
}

fn claim_error_exit(e: &ClaimError) -> i32 {
    match e {
        ClaimError::UnknownClaim(_) | ClaimError::UnknownLemma(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

fn cmd_verify(args: VerifyArgs) -> i32 {
    if args.list {
        for claim in claims() {
            println!("{:<18} {}", claim.id(), claim.summary());
        }
        return EXIT_OK;
    }
    let (Some(claim_id), Some(orders)) = (&args.claim, &args.orders) else {
        eprintln!("error: --claim and --n are required (or use --list)");
        return EXIT_USAGE;
    };
    let claim = match find_claim(claim_id) {
        Ok(claim) => claim,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("hint: run `statuslab verify --list`");
            return claim_error_exit(&e);
        }
    };
    let (lo, hi) = match parse_order_range(orders) {
        Ok(range) => range,
        Err(msg) => {
            eprintln!("error: --n: {msg}");
            return EXIT_USAGE;
        }
    };
    let ceiling = match ceiling_from_env() {
        Ok(c) => c,
        Err(code) => return code,
    };
    let mut opts = VerifyOptions {
        ceiling,
        explore: args.explore,
        ..VerifyOptions::default()
    };
    if let Some(w) = args.workers {
        opts.workers = w.max(1);
    }

    let sweeping_orders = lo < hi;
    let mut reports: Vec<ClaimReport> = Vec::new();
    let mut any_failed = false;
    for n in lo..=hi {
        // Parameter points at this order: the explicit value if given,
        // otherwise a sweep over the sensible window for the constrained
        // dimension (out-of-domain points are skipped, not errors).
        let points: Vec<(ClaimParams, bool)> = if claim.needs_diameter() {
            match args.d {
                Some(d) => vec![(ClaimParams::with_diameter(n, d), false)],
                None => (2..n.max(2))
                    .map(|d| (ClaimParams::with_diameter(n, d), true))
                    .collect(),
            }
        } else if claim.needs_max_degree() {
            match args.max_degree {
                Some(m) => vec![(ClaimParams::with_max_degree(n, m), false)],
                None => (2..n.max(2))
                    .map(|m| (ClaimParams::with_max_degree(n, m), true))
                    .collect(),
            }
        } else {
            vec![(ClaimParams::order(n), false)]
        };
        for (params, swept) in points {
            match verify(claim.id(), &params, &opts) {
                Ok(report) => {
                    let verdict = if report.passed() { "PASS" } else { "FAIL" };
                    any_failed |= !report.passed();
                    let mut line = format!("{verdict} {} n={}", report.claim, params.n);
                    if let Some(d) = params.d {
                        line.push_str(&format!(" d={d}"));
                    }
                    if let Some(m) = params.max_degree {
                        line.push_str(&format!(" max_degree={m}"));
                    }
                    line.push_str(&format!(
                        ": universe={} bound={} extremal={}",
                        report.universe,
                        report.bound,
                        report.extremal.len()
                    ));
                    if !report.violations.is_empty() {
                        line.push_str(&format!(" violations={}", report.violations.len()));
                    }
                    if !report.characterization_agreement {
                        line.push_str(" agreement=no");
                    }
                    line.push_str(&format!(" ({:.3}s)", report.seconds));
                    println!("{line}");
                    reports.push(report);
                }
                Err(ClaimError::OutOfDomain { .. }) if swept || sweeping_orders => {
                    // Skipped sweep point; stay quiet to keep one line per
                    // verified parameter point.
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return claim_error_exit(&e);
                }
            }
        }
    }
    if reports.is_empty() {
        eprintln!("error: no parameter point fell inside the claim's domain");
        return EXIT_DOMAIN;
    }
    if let Some(path) = &args.json {
        let body = serde_json::to_string_pretty(&reports).expect("reports serialize");
        if path == "-" {
            println!("{body}");
        } else if let Err(e) = fs::write(path, body + "\n") {
            eprintln!("error: writing `{path}`: {e}");
            return EXIT_IO;
        }
    }
    if any_failed {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

fn cmd_random_check(args: RandomCheckArgs) -> i32 {
    if args.order < 3 {
        eprintln!("error: random-check needs --n at least 3 (the lemma hypotheses require it)");
        return EXIT_USAGE;
    }
    let lemmas = structural_lemma_ids();
    let mut failures: Vec<(String, u64, String)> = Vec::new();
    for i in 0..args.k {
        let seed = args.seed + i as u64;
        let tree = random_tree(args.order, seed);
        for id in lemmas {
            match check_structural_lemma(&tree, id) {
                Ok(true) => {}
                Ok(false) => failures.push((id.to_string(), seed, tree.to_edge_list())),
                Err(e) => {
                    eprintln!("error: lemma {id} on seed {seed}: {e}");
                    return EXIT_DOMAIN;
                }
            }
        }
    }
    if args.json {
        let out = json!({
            "k": args.k,
            "n": args.order,
            "seed": args.seed,
            "lemmas": lemmas,
            "failures": failures
                .iter()
                .map(|(id, seed, edges)| json!({"lemma": id, "seed": seed, "edges": edges}))
                .collect::<Vec<_>>(),
            "passed": failures.is_empty(),
        });
        println!("{out}");
    } else if failures.is_empty() {
        println!(
            "checked {} random trees of order {} against {} structural facts: all hold",
            args.k,
            args.order,
            lemmas.len()
        );
    } else {
        for (id, seed, edges) in &failures {
            println!("FAIL {id} seed={seed}");
            print!("{edges}");
        }
        println!("{} failure(s)", failures.len());
    }
    // Ensure everything reached the pipe before the explicit exit.
    let _ = io::stdout().flush();
    if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}
