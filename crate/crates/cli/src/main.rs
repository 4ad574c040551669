//! `cayley-k0`: K0 groups of Leavitt path algebras of Cayley graphs, Haselgrove
//! numbers, Smith normal forms and verification sweeps.

mod verify;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use cayley_k0::graph::DirectedMultigraph;
use cayley_k0::k_theory::{
    self, k0_closed_form_j2, k0_closed_form_j3, k0_full, k0_of_graph, k0_reduced,
    realization_graph_j3, K0Result,
};
use cayley_k0::linalg::{determinant_divisors, parse_matrix, snf, IntMatrix};
use cayley_k0::sequences::SequenceCache;
use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

/// Largest `n` the full route accepts without `--force`.
const FULL_ROUTE_LIMIT: usize = 2000;

#[derive(Parser)]
#[command(name = "cayley-k0", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// K0 of the Cayley graph C_n^j, or of a graph read from JSON.
    K0 {
        #[arg(long, required_unless_present = "graph")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "graph")]
        j: Option<usize>,
        /// Graph JSON file `{"n": .., "adjacency": [[..], ..]}`; overrides --n/--j.
        #[arg(long, conflicts_with_all = ["n", "j"])]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Full)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Allow the full route above n = 2000.
        #[arg(long)]
        force: bool,
    },
    /// Haselgrove numbers H_k(n) for n in an inclusive range.
    Haselgrove {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Terms of an integer sequence over an inclusive range.
    Sequence {
        #[arg(long, value_enum)]
        name: SequenceName,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Smith normal form of a matrix file.
    Snf {
        #[arg(long)]
        input: PathBuf,
        /// Include the unimodular U and V with U * M * V = S.
        #[arg(long)]
        transforms: bool,
        /// Include the determinant divisors (dimensions up to 8).
        #[arg(long)]
        divisors: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run verification sweeps; exits 2 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        j_max: Option<usize>,
    },
    /// Four-vertex graph whose Leavitt path algebra realizes L_K(C_n^3).
    Realize {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        j: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Full,
    Reduced,
    Closed,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SequenceName {
    Narayana,
    Fibonacci,
    D3,
    Dprime3,
}

impl SequenceName {
    fn as_str(self) -> &'static str {
        match self {
            Self::Narayana => "narayana",
            Self::Fibonacci => "fibonacci",
            Self::D3 => "d3",
            Self::Dprime3 => "dprime3",
        }
    }
}

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Check(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) | Self::Check(m) => f.write_str(m),
        }
    }
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub(crate) fn big(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integers are valid JSON numbers"))
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(big).collect()))
            .collect(),
    )
}

/// Appends `elapsed_ms` and prints one JSON document.
fn emit(mut record: Value, start: Instant) {
    if let Value::Object(map) = &mut record {
        map.insert("elapsed_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    println!("{record}");
}

fn group_line(r: &K0Result) -> String {
    let order = r
        .group
        .order()
        .map_or_else(|| "infinite".to_string(), |o| o.to_string());
    format!("{:<15} {}  (order {order})", r.method.as_str(), r.group)
}

fn run_k0(
    n: Option<usize>,
    j: Option<usize>,
    graph: Option<PathBuf>,
    method: Method,
    format: Format,
    force: bool,
) -> Result<(), CliError> {
    let start = Instant::now();
    if let Some(path) = graph {
        let text = std::fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let g = DirectedMultigraph::from_json(&text).map_err(usage)?;
        let r = k0_of_graph(&g).map_err(usage)?;
        match format {
            Format::Json => emit(r.to_json(g.n_vertices(), None), start),
            Format::Table => println!("n={} {}", g.n_vertices(), group_line(&r)),
        }
        return Ok(());
    }
    let (n, j) = (n.expect("required by clap"), j.expect("required by clap"));
    let wants_full = matches!(method, Method::Full | Method::All);
    if wants_full && n > FULL_ROUTE_LIMIT && !force {
        return Err(usage(format!(
            "full route refused for n = {n} > {FULL_ROUTE_LIMIT}; pass --force"
        )));
    }
    let results = match method {
        Method::Full => vec![k0_full(n, j).map_err(usage)?],
        Method::Reduced => vec![k0_reduced(n, j).map_err(usage)?],
        Method::Closed => vec![match j {
            2 => k0_closed_form_j2(n).map_err(usage)?,
            3 => k0_closed_form_j3(n).map_err(usage)?,
            _ => return Err(usage(format!("no closed form for j = {j}; use j = 2 or 3"))),
        }],
        Method::All => k_theory::k0_all_routes(n, j).map_err(usage)?,
    };
    let agree = results.windows(2).all(|w| w[0].group == w[1].group);
    match (format, method) {
        (Format::Json, Method::All) => {
            let routes: Vec<Value> = results.iter().map(|r| r.to_json(n, Some(j))).collect();
            emit(json!({ "n": n, "j": j, "routes": routes, "agree": agree }), start);
        }
        (Format::Json, _) => emit(results[0].to_json(n, Some(j)), start),
        (Format::Table, _) => {
            for r in &results {
                println!("n={n} j={j} {}", group_line(r));
            }
        }
    }
    if agree {
        Ok(())
    } else {
        Err(CliError::Check(format!("routes disagree for n = {n}, j = {j}")))
    }
}

fn print_table<T: fmt::Display>(rows: &[(T, BigInt)]) {
    for (i, v) in rows {
        println!("{i}\t{v}");
    }
}

fn run_haselgrove(k: usize, from: usize, to: usize, format: Format) -> Result<(), CliError> {
    let start = Instant::now();
    if from == 0 || from > to {
        return Err(usage(format!("need 1 <= from <= to, got {from}..{to}")));
    }
    let cache = SequenceCache::new();
    let rows = (from..=to)
        .map(|n| cache.haselgrove(k, n).map(|h| (n, h)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    match format {
        Format::Json => {
            let values: Vec<Value> = rows.iter().map(|(_, v)| big(v)).collect();
            emit(json!({ "k": k, "from": from, "to": to, "values": values }), start);
        }
        Format::Table => print_table(&rows),
    }
    Ok(())
}

fn run_sequence(name: SequenceName, from: i64, to: i64, format: Format) -> Result<(), CliError> {
    let start = Instant::now();
    if from > to {
        return Err(usage(format!("empty range {from}..{to}")));
    }
    let cache = SequenceCache::new();
    let index = |i: i64| usize::try_from(i).map_err(|_| usage(format!("{} needs n >= 1", name.as_str())));
    let mut rows = Vec::new();
    for i in from..=to {
        let v = match name {
            SequenceName::Narayana => cache.narayana(i).map_err(usage)?,
            SequenceName::Fibonacci => cache.fibonacci(i).map_err(usage)?,
            SequenceName::D3 => k_theory::d3(index(i)?).map_err(usage)?,
            SequenceName::Dprime3 => k_theory::dprime3(index(i)?).map_err(usage)?,
        };
        rows.push((i, v));
    }
    match format {
        Format::Json => {
            let values: Vec<Value> = rows.iter().map(|(_, v)| big(v)).collect();
            emit(
                json!({ "name": name.as_str(), "from": from, "to": to, "values": values }),
                start,
            );
        }
        Format::Table => print_table(&rows),
    }
    Ok(())
}

fn run_snf(input: PathBuf, transforms: bool, divisors: bool, format: Format) -> Result<(), CliError> {
    let start = Instant::now();
    let text = std::fs::read_to_string(&input).map_err(|e| usage(format!("{}: {e}", input.display())))?;
    let m = parse_matrix(&text).map_err(|e| usage(format!("{}: {e}", input.display())))?;
    let d = snf(&m).map_err(usage)?;
    let alphas = if divisors {
        Some(determinant_divisors(&m).map_err(usage)?)
    } else {
        None
    };
    match format {
        Format::Json => {
            let mut record = Map::new();
            record.insert("rows".into(), json!(m.rows()));
            record.insert("cols".into(), json!(m.cols()));
            record.insert("factors".into(), Value::Array(d.factors.iter().map(big).collect()));
            if transforms {
                record.insert("u".into(), matrix_json(&d.u));
                record.insert("v".into(), matrix_json(&d.v));
            }
            if let Some(a) = &alphas {
                record.insert("divisors".into(), Value::Array(a.iter().map(big).collect()));
            }
            emit(Value::Object(record), start);
        }
        Format::Table => {
            let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            println!("factors: {}", join(&d.factors));
            if transforms {
                print!("U:\n{}V:\n{}", d.u, d.v);
            }
            if let Some(a) = &alphas {
                println!("divisors: {}", join(a));
            }
        }
    }
    Ok(())
}

fn run_realize(n: usize, j: usize) -> Result<(), CliError> {
    if j != 3 {
        return Err(usage(format!("realization graphs are built for j = 3 only, got j = {j}")));
    }
    let g = realization_graph_j3(n).map_err(usage)?;
    println!("{}", g.to_json());
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::K0 { n, j, graph, method, format, force } => run_k0(n, j, graph, method, format, force),
        Command::Haselgrove { k, from, to, format } => run_haselgrove(k, from, to, format),
        Command::Sequence { name, from, to, format } => run_sequence(name, from, to, format),
        Command::Snf { input, transforms, divisors, format } => run_snf(input, transforms, divisors, format),
        Command::Verify { suite, n_max, j_max } => verify::run(suite, n_max, j_max),
        Command::Realize { n, j } => run_realize(n, j),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 1,
                CliError::Check(_) => 2,
            })
        }
    }
}
