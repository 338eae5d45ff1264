//! Command line front end.
//!
//! Exit codes: 0 for a clean run, 1 when `check` finds violations or
//! `complex` fails its rank or Euler condition, 2 for expression syntax
//! errors, 3 for domain errors. The environment variable BOTTKIT_THREADS
//! caps the parallelism of the internal scans.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bottkit::bott::{cohomology_table, GrassmannianCtx};
use bottkit::bundles::BundleExpr;
use bottkit::complexes::{
    complex_checks, eagon_northcott, fonarev_ci, fonarev_glued_chain, g25_examples,
    serre_extension, ComplexSpec, EnVariant,
};
use bottkit::criteria::{
    acm_scan, beilinson_sets, evaluate, main_component_sets, main_hypotheses, ottaviani_sets,
    AcmFamily, ConditionPoint, ConditionSet,
};
use bottkit::diagram::{ascii_diagram, svg_diagram};
use bottkit::error::Error;
use bottkit::grammar::{parse_bundle, q_dual_factor_label, q_factor_label};
use bottkit::partitions::Partition;
use bottkit::report;

#[derive(Parser)]
#[command(
    name = "bottkit",
    version,
    about = "Exact sheaf cohomology of homogeneous bundles on Grassmannians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of h^j(E(t)) for a bundle expression over a twist window
    Cohomology(CohomologyArgs),
    /// List or draw the hypothesis sets of a splitting criterion
    Criteria(CriteriaArgs),
    /// Evaluate a bundle against a criterion and report every violation
    Check(CheckArgs),
    /// Enumerate the bundles of a family without intermediate cohomology
    AcmScan(AcmScanArgs),
    /// Build a distinguished complex and run the exactness checks on it
    Complex(ComplexArgs),
    /// Print the rectangle-complement identity for a Schur functor of Q
    Complement(ComplementArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Svg,
    Ascii,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Criterion {
    /// Level-0 splitting criterion for line bundle sums on G(1,n)
    Am,
    /// Cohomological characterization of direct sums of Q and O twists
    Ottaviani,
    /// Vanishing pattern behind the full exceptional collection
    Beilinson,
    /// Level-k splitting criterion, level set with --k-level
    Main,
}

impl Criterion {
    fn name(self) -> &'static str {
        match self {
            Criterion::Am => "am",
            Criterion::Ottaviani => "ottaviani",
            Criterion::Beilinson => "beilinson",
            Criterion::Main => "main",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Symmetric powers Sym^i Q, 1 <= i <= bound
    Sym,
    /// Schur functors S_p Q, |p| <= bound, one representative per dual pair
    Schur,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    /// One of the two Eagon-Northcott complexes, index j, variant r or r-dual
    Eagon,
    /// The glued length-2n extension on G(1,n) from O(-n-1) to O
    Serre,
    /// Staircase complex C_i on G(k,n) with --index i, or the full glued
    /// chain when --index is omitted
    Fonarev,
    /// Fixed eleven-term list on G(2,5) kept verbatim as data; fails checks
    G25Fonarev,
    /// Corrected self-dual eleven-term complex on G(2,5)
    G25Selfdual,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    /// 0 -> Wedge^j S' -> ... -> S^j Q -> 0
    R,
    /// 0 -> S^j Q' -> ... -> Wedge^j S -> 0
    RDual,
}

#[derive(Args)]
struct CohomologyArgs {
    /// Grassmannian G(k,n), written k,n
    #[arg(short = 'g', long = "grassmannian", value_parser = parse_pair_usize)]
    grassmannian: (usize, usize),
    /// Bundle expression, e.g. "Sym^3 Q(-4) + 2 * Wedge^2 S'"
    #[arg(short = 'b', long = "bundle")]
    bundle: String,
    /// Explicit twist window lo,hi instead of the automatic certified one
    #[arg(short = 'w', long = "window", value_parser = parse_pair_i64, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
    #[arg(short = 'f', long = "format", value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct CriteriaArgs {
    /// Grassmannian G(k,n); the criteria are stated on G(1,n)
    #[arg(short = 'g', long = "grassmannian", value_parser = parse_pair_usize)]
    grassmannian: (usize, usize),
    #[arg(short = 'c', long = "criterion", value_enum)]
    criterion: Criterion,
    /// Level of the main criterion (ignored by the others)
    #[arg(long = "k-level", default_value_t = 0)]
    k_level: usize,
    #[arg(short = 'f', long = "format", value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// Grassmannian G(k,n); the criteria are stated on G(1,n)
    #[arg(short = 'g', long = "grassmannian", value_parser = parse_pair_usize)]
    grassmannian: (usize, usize),
    /// Bundle expression to test
    #[arg(short = 'b', long = "bundle")]
    bundle: String,
    #[arg(short = 'c', long = "criterion", value_enum)]
    criterion: Criterion,
    /// Level of the main criterion (ignored by the others)
    #[arg(long = "k-level", default_value_t = 0)]
    k_level: usize,
    #[arg(short = 'f', long = "format", value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct AcmScanArgs {
    /// Grassmannian G(k,n), written k,n
    #[arg(short = 'g', long = "grassmannian", value_parser = parse_pair_usize)]
    grassmannian: (usize, usize),
    #[arg(long = "family", value_enum, default_value_t = Family::Sym)]
    family: Family,
    /// Size bound: top exponent, or maximal number of partition boxes
    #[arg(long = "bound", default_value_t = 6)]
    bound: u32,
    #[arg(short = 'f', long = "format", value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct ComplexArgs {
    /// Grassmannian G(k,n), written k,n
    #[arg(short = 'g', long = "grassmannian", value_parser = parse_pair_usize)]
    grassmannian: (usize, usize),
    #[arg(long = "which", value_enum)]
    which: Which,
    /// Index j for eagon, i for fonarev
    #[arg(long = "index")]
    index: Option<usize>,
    /// Shape of the Eagon-Northcott complex
    #[arg(long = "variant", value_enum, default_value_t = Variant::R)]
    variant: Variant,
    /// Twist applied to every term
    #[arg(long = "extra-twist", default_value_t = 0, allow_hyphen_values = true)]
    extra_twist: i64,
    #[arg(short = 'f', long = "format", value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct ComplementArgs {
    /// Rank parameter of G(k,n): Q has rank k+1
    #[arg(short = 'k', long = "k")]
    k: usize,
    /// Partition, comma separated, e.g. 4,1
    #[arg(short = 'p', long = "partition", value_parser = parse_parts)]
    partition: CommaParts,
    #[arg(short = 'f', long = "format", value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Debug)]
struct CommaParts(Vec<u32>);

fn parse_pair_usize(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma separated integers, got {s:?}"))?;
    let k = a
        .trim()
        .parse()
        .map_err(|e| format!("bad first entry {a:?}: {e}"))?;
    let n = b
        .trim()
        .parse()
        .map_err(|e| format!("bad second entry {b:?}: {e}"))?;
    Ok((k, n))
}

fn parse_pair_i64(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma separated integers, got {s:?}"))?;
    let lo = a
        .trim()
        .parse()
        .map_err(|e| format!("bad first entry {a:?}: {e}"))?;
    let hi = b
        .trim()
        .parse()
        .map_err(|e| format!("bad second entry {b:?}: {e}"))?;
    Ok((lo, hi))
}

fn parse_parts(s: &str) -> Result<CommaParts, String> {
    let parts = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad part {x:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CommaParts(parts))
}

/// A failed run: the message goes to stderr, the code becomes the exit
/// status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse { .. }) { 2 } else { 3 };
        Failure {
            code,
            message: format!("error: {e}"),
        }
    }
}

fn domain_failure(msg: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: format!("error: {}", msg.into()),
    }
}

/// Parse a bundle argument, turning syntax errors into a caret display.
fn parse_cli_bundle(ctx: GrassmannianCtx, text: &str) -> Result<BundleExpr, Failure> {
    parse_bundle(ctx, text).map_err(|e| match e {
        Error::Parse { col, msg } => Failure {
            code: 2,
            message: format!(
                "error: parse error at column {col}: {msg}\n  {text}\n  {caret:>col$}",
                caret = "^"
            ),
        },
        other => Failure::from(other),
    })
}

fn print_json(v: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("json rendering cannot fail")
    );
}

fn cmd_cohomology(a: CohomologyArgs) -> Result<bool, Failure> {
    let ctx = GrassmannianCtx::new(a.grassmannian.0, a.grassmannian.1)?;
    let expr = parse_cli_bundle(ctx, &a.bundle)?;
    let table = cohomology_table(ctx, &expr, a.window)?;
    if a.window.is_some() && !table.certified() {
        eprintln!(
            "warning: window {:?} is not certified complete, nonzero groups may exist outside it",
            table.window()
        );
    }
    let label = expr.to_string();
    match a.format {
        Format::Table | Format::Ascii => print!("{}", report::table_text(ctx, &label, &table)),
        Format::Json => print_json(&report::table_json(ctx, &label, &table)),
        Format::Svg => print!("{}", report::table_svg(ctx, &table)),
    }
    Ok(true)
}

fn criterion_sets(c: Criterion, n: usize, k_level: usize) -> Result<Vec<ConditionSet>, Error> {
    match c {
        Criterion::Am => main_component_sets(n, 0),
        Criterion::Main => main_component_sets(n, k_level),
        Criterion::Ottaviani => ottaviani_sets(n),
        Criterion::Beilinson => beilinson_sets(n),
    }
}

fn criterion_union(c: Criterion, n: usize, k_level: usize) -> Result<ConditionSet, Error> {
    Ok(match c {
        Criterion::Am => main_hypotheses(n, 0)?,
        Criterion::Main => main_hypotheses(n, k_level)?,
        Criterion::Ottaviani => ConditionSet::union_named("ottaviani", &ottaviani_sets(n)?),
        Criterion::Beilinson => ConditionSet::union_named("beilinson", &beilinson_sets(n)?),
    })
}

fn cmd_criteria(a: CriteriaArgs) -> Result<bool, Failure> {
    let (k, n) = a.grassmannian;
    if k != 1 {
        return Err(domain_failure(
            "the splitting criteria are stated on Grassmannians of lines, pass -g 1,n",
        ));
    }
    GrassmannianCtx::new(k, n)?;
    let sets = criterion_sets(a.criterion, n, a.k_level)?;
    match a.format {
        Format::Table => print!("{}", report::sets_text(&sets)),
        Format::Json => print_json(&report::sets_json(&sets)),
        Format::Ascii => print!("{}", ascii_diagram(&sets, n)),
        Format::Svg => print!("{}", svg_diagram(&sets, n)),
    }
    Ok(true)
}

fn cmd_check(a: CheckArgs) -> Result<bool, Failure> {
    let (k, n) = a.grassmannian;
    let ctx = GrassmannianCtx::new(k, n)?;
    let conds = criterion_union(a.criterion, n, a.k_level)?;
    let expr = parse_cli_bundle(ctx, &a.bundle)?;
    let violations = evaluate(ctx, &expr, &conds)?;
    match a.format {
        Format::Table => print!("{}", report::violations_text(&violations)),
        Format::Json => print_json(&report::violations_json(
            a.criterion.name(),
            n,
            a.k_level,
            &violations,
        )),
        Format::Ascii | Format::Svg => {
            let marked = ConditionSet::new(
                "violations",
                violations
                    .iter()
                    .map(|v| ConditionPoint::new(v.i, v.j))
                    .collect(),
            );
            let layers = vec![conds, marked];
            if a.format == Format::Ascii {
                print!("{}", ascii_diagram(&layers, n));
            } else {
                print!("{}", svg_diagram(&layers, n));
            }
        }
    }
    Ok(violations.is_empty())
}

fn cmd_acm_scan(a: AcmScanArgs) -> Result<bool, Failure> {
    let ctx = GrassmannianCtx::new(a.grassmannian.0, a.grassmannian.1)?;
    let (family, family_name) = match a.family {
        Family::Sym => (AcmFamily::Symmetric, "sym"),
        Family::Schur => (AcmFamily::Schur, "schur"),
    };
    let found = acm_scan(ctx, family, a.bound)?;
    match a.format {
        Format::Table | Format::Ascii => print!("{}", report::acm_text(&found)),
        Format::Json => print_json(&report::acm_json(ctx, family_name, a.bound, &found)),
        Format::Svg => return Err(domain_failure("acm-scan has no SVG rendering")),
    }
    Ok(true)
}

fn build_complex(ctx: GrassmannianCtx, a: &ComplexArgs) -> Result<ComplexSpec, Failure> {
    let spec = match a.which {
        Which::Eagon => {
            let j = a
                .index
                .ok_or_else(|| domain_failure("--which eagon needs --index J"))?;
            let variant = match a.variant {
                Variant::R => EnVariant::R,
                Variant::RDual => EnVariant::RDual,
            };
            return Ok(eagon_northcott(ctx, j, variant, a.extra_twist)?);
        }
        Which::Serre => {
            if ctx.k() != 1 {
                return Err(domain_failure(
                    "the glued extension lives on G(1,n), pass -g 1,n",
                ));
            }
            serre_extension(ctx.n())?
        }
        Which::Fonarev => match a.index {
            Some(i) => fonarev_ci(ctx, i)?,
            None => fonarev_glued_chain(ctx)?,
        },
        Which::G25Fonarev | Which::G25Selfdual => {
            if (ctx.k(), ctx.n()) != (2, 5) {
                return Err(domain_failure("the g25 complexes live on G(2,5), pass -g 2,5"));
            }
            let (glued, selfdual) = g25_examples();
            if a.which == Which::G25Fonarev {
                glued
            } else {
                selfdual
            }
        }
    };
    Ok(spec.twist(a.extra_twist))
}

fn cmd_complex(a: ComplexArgs) -> Result<bool, Failure> {
    let ctx = GrassmannianCtx::new(a.grassmannian.0, a.grassmannian.1)?;
    let spec = build_complex(ctx, &a)?;
    let checks = complex_checks(&spec)?;
    match a.format {
        Format::Table | Format::Ascii => print!("{}", report::complex_text(&checks)),
        Format::Json => print_json(&report::complex_json(&checks)),
        Format::Svg => return Err(domain_failure("complex has no SVG rendering")),
    }
    Ok(checks.rank_ok && checks.euler_ok)
}

fn cmd_complement(a: ComplementArgs) -> Result<bool, Failure> {
    let p = Partition::new(a.partition.0.clone())?;
    if p.is_empty() {
        return Err(domain_failure("the partition must have at least one box"));
    }
    let rows = a.k + 1;
    let width = p.first();
    let c = p.complement(rows, width)?;
    let lhs = if c.is_empty() {
        format!("O(-{width})")
    } else {
        q_dual_factor_label(&p)
    };
    let rhs = if c.is_empty() {
        "O".to_string()
    } else {
        q_factor_label(&c)
    };
    match a.format {
        Format::Table | Format::Ascii => println!("{lhs}({width}) = {rhs}"),
        Format::Json => print_json(&serde_json::json!({
            "k": a.k,
            "partition": p.parts(),
            "complement": c.parts(),
            "lhs": format!("{lhs}({width})"),
            "rhs": rhs,
        })),
        Format::Svg => return Err(domain_failure("complement has no SVG rendering")),
    }
    Ok(true)
}

fn dispatch(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Cohomology(a) => cmd_cohomology(a),
        Command::Criteria(a) => cmd_criteria(a),
        Command::Check(a) => cmd_check(a),
        Command::AcmScan(a) => cmd_acm_scan(a),
        Command::Complex(a) => cmd_complex(a),
        Command::Complement(a) => cmd_complement(a),
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("BOTTKIT_THREADS") {
        match v.parse::<usize>() {
            Ok(nt) if nt > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(nt)
                    .build_global();
            }
            _ => eprintln!("warning: BOTTKIT_THREADS must be a positive integer, ignoring {v:?}"),
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
