//! Command line for the integer relation Hopf algebra.
//!
//! Exit codes: 0 on success, 1 on a verification failure or a refused
//! algebraic request, 2 on usage errors.

use clap::{Args, Parser, Subcommand};
use intrel::error::Error;
use intrel::families::{enumerate_family, EnumerationMode, FamilyTag};
use intrel::family_algebra::{
    quotient_coproduct, quotient_product, subalgebra_coproduct, subalgebra_product, FamilyBasis,
    FamilyElement, FamilyTensor,
};
use intrel::hopf::count_indecomposables;
use intrel::json::parse_family_basis;
use intrel::projections::ProjectionMap;
use intrel::relation::relation_count;
use intrel::relation::IntegerRelation;
use intrel::verify::{run_suite, Suite};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "intrel",
    version,
    about = "Hopf algebra of integer binary relations"
)]
struct Cli {
    /// Size of the verification worker pool (defaults to the CPU count).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count relations, indecomposables, or family members up to a size.
    Count(CountArgs),
    /// Run an exhaustive verification suite.
    Verify(VerifyArgs),
    /// Multiply two family elements read from JSON files.
    Product(ProductArgs),
    /// Compute the coproduct of a family element read from a JSON file.
    Coproduct(CoproductArgs),
    /// Apply a deletion map to a relation read from a JSON file.
    Project(ProjectArgs),
    /// Export a Hasse diagram in DOT format.
    ExportDot(ExportDotArgs),
}

#[derive(Args)]
struct CountArgs {
    /// What to count: "relations", "indecomposables", or "family".
    what: String,
    /// Family tag, only with "family" (for example TOEP).
    #[arg(required_if_eq("what", "family"))]
    family: Option<String>,
    /// Largest size; one table row per size from 1 up to this.
    n: Option<usize>,
    /// Emit machine-readable JSON instead of the table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: lattice, hopf, bases, families, projections, subalgebras, all.
    suite: String,
    /// Size bound; each check caps it further to stay tractable.
    #[arg(value_name = "N_MAX")]
    n_max_positional: Option<usize>,
    /// Size bound as a flag, overriding the positional form.
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProductArgs {
    /// Family of both operands (quotient tags or fiber-sum kinds).
    #[arg(long)]
    family: String,
    /// Basis style: "quotient" or "fiber-sum".
    #[arg(long, default_value = "quotient")]
    style: String,
    /// JSON file with the left operand ("-" for stdin).
    left: String,
    /// JSON file with the right operand.
    right: String,
}

#[derive(Args)]
struct CoproductArgs {
    #[arg(long)]
    family: String,
    #[arg(long, default_value = "quotient")]
    style: String,
    /// JSON file with the element ("-" for stdin).
    input: String,
}

#[derive(Args)]
struct ProjectArgs {
    /// Deletion map: WOIPd, IWOIPid, DWOIPdd, TOIPd, WOEPid, or WOEPdd.
    #[arg(long)]
    map: String,
    /// JSON file with the relation ("-" for stdin).
    input: String,
}

#[derive(Args)]
struct ExportDotArgs {
    /// Which lattice: "weak-order" or "tamari".
    object: String,
    /// Size of the ground set.
    n: usize,
    /// Restrict the weak order to one family.
    #[arg(long)]
    family: Option<String>,
}

/// Errors that indicate a refused computation rather than bad usage.
fn is_refusal(e: &Error) -> bool {
    matches!(e, Error::TamariQuotient { .. } | Error::ClosureViolation(_))
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Input(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("reading {path}: {e}")))
    }
}

fn parse_family_element(text: &str) -> Result<FamilyElement, Error> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))
}

fn parse_relation(text: &str) -> Result<IntegerRelation, Error> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))
}

fn cmd_count(args: &CountArgs) -> Result<(), Error> {
    // the positional grammar puts the size in `family` unless counting
    // family members
    let (what, family, n) = match args.what.as_str() {
        "family" => {
            let family = args
                .family
                .as_deref()
                .and_then(FamilyTag::parse)
                .ok_or_else(|| Error::Input("count family needs a valid family tag".into()))?;
            let n = args
                .n
                .ok_or_else(|| Error::Input("count family needs a size".into()))?;
            ("family", Some(family), n)
        }
        other @ ("relations" | "indecomposables") => {
            let n = args
                .family
                .as_deref()
                .and_then(|s| s.parse().ok())
                .or(args.n)
                .ok_or_else(|| Error::Input(format!("count {other} needs a size")))?;
            (other, None, n)
        }
        other => return Err(Error::Input(format!("nothing to count named {other:?}"))),
    };

    let mut rows: Vec<(usize, String)> = Vec::new();
    for k in 1..=n {
        let value = match (what, family) {
            ("relations", _) => relation_count(k).to_string(),
            ("indecomposables", _) => count_indecomposables(k)?.to_string(),
            (_, Some(tag)) => enumerate_family(k, tag, EnumerationMode::Construct)?
                .len()
                .to_string(),
            _ => unreachable!(),
        };
        rows.push((k, value));
    }

    if args.json {
        let label = match family {
            Some(tag) => format!("family {tag}"),
            None => what.to_string(),
        };
        let counts: Vec<serde_json::Value> = rows
            .iter()
            .map(|(k, v)| serde_json::json!({"n": k, "count": v}))
            .collect();
        println!("{}", serde_json::json!({"what": label, "counts": counts}));
    } else {
        let width = rows.iter().map(|(_, v)| v.len()).max().unwrap_or(1);
        println!("{:>3}  {:>width$}", "n", "count");
        for (k, v) in rows {
            println!("{k:>3}  {v:>width$}");
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, Error> {
    let suite = Suite::parse(&args.suite)
        .ok_or_else(|| Error::Input(format!("unknown suite {:?}", args.suite)))?;
    let n_max = args.n_max.or(args.n_max_positional).unwrap_or(4);
    let report = run_suite(suite, n_max);
    if args.json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        println!(
            "suite {} at n_max {}: {} checks, {} failures, {} ms",
            report.suite,
            report.n_max,
            report.checks_run,
            report.failures.len(),
            report.wall_ms
        );
        for failure in &report.failures {
            println!("FAIL {}: {}", failure.check, failure.counterexample);
        }
    }
    Ok(report.passed())
}

fn cmd_product(args: &ProductArgs) -> Result<(), Error> {
    let basis = parse_family_basis(&args.family, &args.style)?;
    if let FamilyBasis::Quotient(family) = basis {
        intrel::family_algebra::quotient_supported(family)?;
    }
    let left = parse_family_element(&read_input(&args.left)?)?;
    let right = parse_family_element(&read_input(&args.right)?)?;
    if left.basis() != basis || right.basis() != basis {
        return Err(Error::Input(
            "operand headers disagree with --family/--style".into(),
        ));
    }
    let result: FamilyElement = match basis {
        FamilyBasis::Quotient(_) => quotient_product(&left, &right)?,
        FamilyBasis::FiberSum(kind) => {
            // bilinear extension over the basis terms
            let mut acc = FamilyElement::zero(basis);
            for (t1, c1) in left.terms() {
                for (t2, c2) in right.terms() {
                    let c = c1.checked_mul(c2).ok_or(Error::Overflow)?;
                    for (key, coeff) in subalgebra_product(kind, t1, t2)?.terms() {
                        acc.add_term(key.clone(), coeff.checked_mul(c).ok_or(Error::Overflow)?)?;
                    }
                }
            }
            acc
        }
    };
    println!(
        "{}",
        serde_json::to_string(&result).expect("element serializes")
    );
    Ok(())
}

fn cmd_coproduct(args: &CoproductArgs) -> Result<(), Error> {
    let basis = parse_family_basis(&args.family, &args.style)?;
    if let FamilyBasis::Quotient(family) = basis {
        intrel::family_algebra::quotient_supported(family)?;
    }
    let input = parse_family_element(&read_input(&args.input)?)?;
    if input.basis() != basis {
        return Err(Error::Input(
            "element header disagrees with --family/--style".into(),
        ));
    }
    let result: FamilyTensor = match basis {
        FamilyBasis::Quotient(_) => quotient_coproduct(&input)?,
        FamilyBasis::FiberSum(kind) => {
            let mut acc = intrel::family_algebra::FamilyTensor::zero(basis);
            for (t, c) in input.terms() {
                for ((l, r), coeff) in subalgebra_coproduct(kind, t)?.terms() {
                    acc.add_term(
                        l.clone(),
                        r.clone(),
                        coeff.checked_mul(c).ok_or(Error::Overflow)?,
                    )?;
                }
            }
            acc
        }
    };
    println!(
        "{}",
        serde_json::to_string(&result).expect("tensor serializes")
    );
    Ok(())
}

fn cmd_project(args: &ProjectArgs) -> Result<(), Error> {
    let map = ProjectionMap::parse(&args.map)
        .ok_or_else(|| Error::Input(format!("unknown map {:?}", args.map)))?;
    let input = parse_relation(&read_input(&args.input)?)?;
    let image = map.apply(&input)?;
    println!(
        "{}",
        serde_json::to_string(&image).expect("relation serializes")
    );
    Ok(())
}

fn dot_graph(name: &str, nodes: &[IntegerRelation], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n"));
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for node in nodes {
        out.push_str(&format!("  \"{}\";\n", node.canonical_label()));
    }
    for &(lo, hi) in edges {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            nodes[lo].canonical_label(),
            nodes[hi].canonical_label()
        ));
    }
    out.push_str("}\n");
    out
}

/// Cover relations of the induced weak order on an arbitrary node set.
fn cover_edges(nodes: &[IntegerRelation]) -> Vec<(usize, usize)> {
    let k = nodes.len();
    let mut less = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            less[i][j] = i != j && nodes[i].weak_le(&nodes[j]);
        }
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if less[i][j] && !(0..k).any(|m| less[i][m] && less[m][j]) {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn cmd_export_dot(args: &ExportDotArgs) -> Result<(), Error> {
    match args.object.as_str() {
        "weak-order" => {
            let (name, nodes) = match &args.family {
                None => {
                    if args.n > 4 {
                        return Err(Error::Input(
                            "the full weak order export is limited to sizes up to 4".into(),
                        ));
                    }
                    (
                        format!("weak order on relations of size {}", args.n),
                        intrel::relation::enumerate_relations(args.n).collect::<Vec<_>>(),
                    )
                }
                Some(tag_name) => {
                    let tag = FamilyTag::parse(tag_name)
                        .ok_or_else(|| Error::Input(format!("unknown family {tag_name:?}")))?;
                    if args.n > 6 {
                        return Err(Error::Input(
                            "family weak order exports are limited to sizes up to 6".into(),
                        ));
                    }
                    (
                        format!("weak order on {tag} of size {}", args.n),
                        enumerate_family(args.n, tag, EnumerationMode::Construct)?,
                    )
                }
            };
            let edges = cover_edges(&nodes);
            print!("{}", dot_graph(&name, &nodes, &edges));
            Ok(())
        }
        "tamari" => {
            if args.n > 6 {
                return Err(Error::Input(
                    "the Tamari export is limited to sizes up to 6".into(),
                ));
            }
            let order = intrel::families::tamari_order(args.n);
            let nodes: Vec<IntegerRelation> = order
                .trees()
                .iter()
                .map(intrel::families::from_binary_tree)
                .collect();
            let mut edges = Vec::new();
            for (i, tree) in order.trees().iter().enumerate() {
                for upper in order.covers_of(tree) {
                    let j = order
                        .trees()
                        .iter()
                        .position(|t| *t == upper)
                        .expect("cover");
                    edges.push((i, j));
                }
            }
            print!(
                "{}",
                dot_graph(
                    &format!("tamari lattice of size {}", args.n),
                    &nodes,
                    &edges
                )
            );
            Ok(())
        }
        other => Err(Error::Input(format!("nothing to export named {other:?}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: building the worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome: Result<bool, Error> = match &cli.command {
        Command::Count(args) => cmd_count(args).map(|_| true),
        Command::Verify(args) => cmd_verify(args),
        Command::Product(args) => cmd_product(args).map(|_| true),
        Command::Coproduct(args) => cmd_coproduct(args).map(|_| true),
        Command::Project(args) => cmd_project(args).map(|_| true),
        Command::ExportDot(args) => cmd_export_dot(args).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_refusal(&e) => {
            eprintln!("refused: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
