//! `scab`: command-line access to the example catalog, mutation, exchange
//! graphs, lamination transport, positive realizations and regressions.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 for
//! usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use scab_core::catalog::{get_example, list, run_regressions, ExampleBundle};
use scab_core::exchange::{enumerate_exchange_graph, ExchangeGraph, ExtendedMatrix, GeometricSeed};
use scab_core::lamination::{apply_path, parse_path, shear_coords};
use scab_core::numeric::realize;

const DEFAULT_MAX_SEEDS: usize = 100_000;

#[derive(Parser)]
#[command(name = "scab", version, about = "Cluster algebras from triangulated surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or show the built-in example bundles.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Mutate an (extended) exchange matrix read from a JSON file.
    Mutate {
        #[arg(long)]
        matrix: PathBuf,
        /// Comma-separated mutation directions, e.g. 0,2,1.
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
    },
    /// Enumerate the exchange graph of an example.
    Enumerate {
        #[arg(long)]
        example: String,
        #[arg(long)]
        max: Option<usize>,
        /// Write the graph as JSON here instead of only printing a summary.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transport a lamination of an example along a flip/tag-change path.
    Shear {
        #[arg(long)]
        example: String,
        #[arg(long)]
        lamination: usize,
        #[arg(long, default_value_t = 0)]
        multilamination: usize,
        /// Steps like `f0,t2`: flip position 0, then change tags at puncture 2.
        #[arg(long, default_value = "")]
        path: String,
    },
    /// Propagate positive values through an example's exchange relations.
    Realize {
        #[arg(long)]
        example: String,
        #[arg(long)]
        assign: PathBuf,
    },
    /// Replay the expected values of the catalog.
    Verify {
        /// `paper` runs every bundle; any bundle name runs just that one.
        #[arg(long, default_value = "paper")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
    /// Export the exchange graph of an example.
    Export {
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long, default_value = "punctured-digon")]
        example: String,
        #[arg(long)]
        max: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

/// An error together with the exit status it should produce.
struct Failure {
    code: u8,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Catalog { action } => catalog(action),
        Command::Mutate { matrix, seq } => mutate(&matrix, &seq),
        Command::Enumerate { example, max, out } => enumerate(&example, max, out.as_deref()),
        Command::Shear {
            example,
            lamination,
            multilamination,
            path,
        } => shear(&example, multilamination, lamination, &path),
        Command::Realize { example, assign } => realize_cmd(&example, &assign),
        Command::Verify { suite, json } => verify(&suite, json),
        Command::Export { format, example, max } => export(format, &example, max),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn catalog(action: CatalogAction) -> CliResult {
    match action {
        CatalogAction::List => {
            for name in list() {
                let b = get_example(&name)?;
                println!("{name:<28} {}", b.description);
            }
        }
        CatalogAction::Show { name, json } => {
            let b = get_example(&name)?;
            if json {
                print_json(&b.to_json());
            } else {
                show(&b);
            }
        }
    }
    Ok(())
}

fn show(b: &ExampleBundle) {
    println!("{}: {}", b.name, b.description);
    if let Some(s) = &b.surface {
        println!("surface: genus {}, boundary {:?}, punctures {}", s.genus, s.boundary, s.punctures);
    }
    println!("cluster: {}", b.names.x.join(", "));
    if !b.names.q.is_empty() {
        println!("coefficients: {}", b.names.q.join(", "));
    }
    println!("extended matrix:\n{}", b.seed.ext());
    println!("expected values:");
    for e in &b.expectations {
        println!("  {} [{}; {}]", e.name, e.provenance, e.anchor);
    }
    for n in &b.notes {
        println!("note: {n}");
    }
}

fn mutate(path: &Path, seq: &[usize]) -> CliResult {
    let v = read_json(path)?;
    let rows = v.get("matrix").unwrap_or(&v);
    let mut m = ExtendedMatrix::from_json(rows)?;
    for &k in seq {
        m = m.mutate(k)?;
    }
    println!("{}", serde_json::to_string(&m.to_json()).expect("rows serialize"));
    Ok(())
}

fn seed_bound(max: Option<usize>) -> Result<usize, Failure> {
    let cap = match std::env::var("SCAB_MAX_SEEDS") {
        Ok(s) => s.trim().parse().map_err(|_| format!("SCAB_MAX_SEEDS={s:?} is not a count"))?,
        Err(_) => DEFAULT_MAX_SEEDS,
    };
    Ok(max.map_or(cap, |m| m.min(cap)))
}

fn graph(example: &str, max: Option<usize>) -> Result<ExchangeGraph<GeometricSeed>, Failure> {
    let b = get_example(example)?;
    Ok(enumerate_exchange_graph(&b.seed, seed_bound(max)?)?)
}

fn enumerate(example: &str, max: Option<usize>, out: Option<&Path>) -> CliResult {
    let g = graph(example, max)?;
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&g.to_json()).expect("graph serializes");
        fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }
    println!(
        "vertices: {}\nedges: {}\ncluster variables: {}\ntruncated: {}",
        g.vertex_count(),
        g.edges().len(),
        g.variables.len(),
        g.truncated
    );
    Ok(())
}

fn shear(example: &str, multilamination: usize, lamination: usize, path: &str) -> CliResult {
    let b = get_example(example)?;
    let ml = b
        .multilaminations
        .get(multilamination)
        .ok_or_else(|| format!("{example} has {} multi-laminations", b.multilaminations.len()))?;
    let l = ml
        .laminations
        .get(lamination)
        .ok_or_else(|| format!("multi-lamination {multilamination} has {} laminations", ml.laminations.len()))?;
    let steps = parse_path(path)?;
    let target = apply_path(&l.reference, &steps)?;
    let coords = shear_coords(l, &target, &steps)?;
    print_json(&json!({
        "lamination": l.name,
        "path": path,
        "arcs": (0..target.arc_count()).map(|k| target.arc_name(k)).collect::<Vec<_>>(),
        "shear": coords,
    }));
    Ok(())
}

fn floats(v: &Value, what: &str) -> Result<Vec<f64>, Failure> {
    let arr = v.as_array().ok_or_else(|| format!("{what} must be an array of numbers"))?;
    arr.iter()
        .map(|x| x.as_f64().ok_or_else(|| Failure::from(format!("{what} must be an array of numbers"))))
        .collect()
}

fn realize_cmd(example: &str, assign: &Path) -> CliResult {
    let b = get_example(example)?;
    let v = read_json(assign)?;
    let a = v.get("assignment").ok_or("missing \"assignment\"")?;
    let x = floats(a.get("x").ok_or("missing assignment.x")?, "assignment.x")?;
    let q = match a.get("q") {
        Some(q) => floats(q, "assignment.q")?,
        None => Vec::new(),
    };
    let mut r = realize(&b.seed, &x, &q)?;
    let queries = match v.get("queries") {
        Some(Value::Array(qs)) => qs.clone(),
        Some(_) => return Err("\"queries\" must be an array".into()),
        None => vec![json!({ "path": [] })],
    };
    let mut values = Vec::new();
    let mut residuals = Vec::new();
    for query in &queries {
        let path: Vec<usize> = query
            .get("path")
            .and_then(Value::as_array)
            .ok_or("each query needs a \"path\" array")?
            .iter()
            .map(|k| k.as_u64().map(|k| k as usize).ok_or("path entries must be indices"))
            .collect::<Result<_, _>>()?;
        values.push(r.values_at(&path)?);
        residuals.push(r.symbolic_residual(&path)?);
    }
    let max = residuals.iter().copied().fold(0.0, f64::max);
    print_json(&json!({
        "values": values,
        "residuals": { "symbolic": residuals, "max": max },
    }));
    Ok(())
}

fn verify(suite: &str, as_json: bool) -> CliResult {
    let report = run_regressions(if suite == "paper" { "all" } else { suite });
    if as_json {
        print_json(&report.to_json());
    } else {
        println!("{report}");
    }
    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<String> = report.failures().map(|e| format!("{} ({})", e.check, e.anchor)).collect();
        Err(Failure {
            code: 1,
            message: format!("failed: {}", failed.join(", ")),
        })
    }
}

fn export(format: ExportFormat, example: &str, max: Option<usize>) -> CliResult {
    let g = graph(example, max)?;
    match format {
        ExportFormat::Dot => print!("{}", g.to_dot()),
        ExportFormat::Json => print_json(&g.to_json()),
    }
    Ok(())
}
