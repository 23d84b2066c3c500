mod report;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use signed_nullity::enumeration::{
    catalog_nullity_classes, verify_theorem, EnumerationError, SweepConfig, TheoremId, CEILING_ENV,
    DEFAULT_CEILING,
};
use signed_nullity::recognizers::{
    bicyclic_base, recognize_rank2, recognize_rank3, unbalanced_bicyclic_verdict, BicyclicBase,
    RankClassVerdict, UnbalancedBicyclicVerdict,
};
use signed_nullity::reductions::{reduce, ReductionTrace};
use signed_nullity::{
    is_balanced, nullity, parse_graph, rank, to_dot, to_graph_file, BalanceWitness, SignedGraph,
};

use report::ReportDocument;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "signull",
    version,
    about = "Exact nullity and structure of signed graphs"
)]
#[command(
    after_help = "Graph files: first line `n m`, then m lines `u v s` with 0 <= u < v < n and s in {+,-}.\n\
Lines starting with '#' and blank lines are ignored. Use `-` to read standard input.\n\n\
Exit status: 0 success, 1 verification violations, 2 usage errors, 3 I/O or parse errors."
)]
struct Cli {
    /// Largest order for exhaustive sweeps and catalogs (at most 10; above 8 runs get slow)
    #[arg(long, global = true, env = CEILING_ENV, default_value_t = DEFAULT_CEILING)]
    ceiling: usize,

    /// Worker threads for sweeps and catalogs (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print order, rank and nullity
    Nullity { file: PathBuf },
    /// Decide balance and print a switching function or a negative cycle
    Balance { file: PathBuf },
    /// Rank-2 and rank-3 verdicts, bicyclic base and the unbalanced-bicyclic bound
    Classify { file: PathBuf },
    /// Delete pendant pairs until none remain; print the residue and the trace
    Reduce { file: PathBuf },
    /// Run an exhaustive verification sweep
    Verify {
        /// Sweep id, e.g. unbalanced-bicyclic (alias theorem3.1); see --list
        #[arg(long, required_unless_present = "list")]
        theorem: Option<String>,
        /// Smallest order checked
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        /// Largest order checked
        #[arg(long, required_unless_present = "list")]
        max_n: Option<usize>,
        /// List sweep ids and aliases
        #[arg(long)]
        list: bool,
    },
    /// Bicyclic classes of order N with an unbalanced signature of nullity N - K
    Catalog {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Use the all-positive signature instead of the unbalanced ones
        #[arg(long)]
        balanced_only: bool,
    },
    /// Convert a graph file
    Convert {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        to: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Graph,
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<EnumerationError> for Failure {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::ThreadPool(msg) => Failure::Io(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    let mut bytes = Vec::new();
    if path.as_os_str() == "-" {
        io::stdin()
            .read_to_end(&mut bytes)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
    } else {
        bytes = std::fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(bytes)
}

fn load(path: &PathBuf) -> Result<(Vec<u8>, SignedGraph), Failure> {
    let bytes = read_input(path)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::Io(format!("{}: not UTF-8", path.display())))?;
    let g = parse_graph(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok((bytes, g))
}

#[derive(Serialize)]
struct BaseSummary {
    label: String,
    #[serde(flatten)]
    base: BicyclicBase,
}

#[derive(Serialize)]
struct Classification {
    order: usize,
    size: usize,
    rank: usize,
    nullity: usize,
    balanced: bool,
    rank2: RankClassVerdict,
    rank3: RankClassVerdict,
    bicyclic_base: Option<BaseSummary>,
    unbalanced_bicyclic: Option<UnbalancedBicyclicVerdict>,
}

#[derive(Serialize)]
struct Reduction {
    nullity_before: usize,
    nullity_after: usize,
    reduced: SignedGraph,
    trace: ReductionTrace,
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let config = SweepConfig::with_ceiling(cli.ceiling)?;
    if cli.ceiling > DEFAULT_CEILING {
        eprintln!(
            "warning: ceiling {} exceeds {DEFAULT_CEILING}; exhaustive runs may take long",
            cli.ceiling
        );
    }
    let config = match cli.threads {
        Some(t) => config.threads(t),
        None => config,
    };
    let write = |out: &mut dyn Write, s: &str| {
        out.write_all(s.as_bytes())
            .map_err(|e| Failure::Io(e.to_string()))
    };

    match cli.command {
        Command::Nullity { file } => {
            let (_, g) = load(&file)?;
            let r = rank(&g);
            write(
                out,
                &format!("n={} rank={} nullity={}\n", g.order(), r, g.order() - r),
            )?;
        }
        Command::Balance { file } => {
            let (_, g) = load(&file)?;
            let line = match is_balanced(&g) {
                BalanceWitness::Balanced(theta) => format!("balanced theta={theta}\n"),
                BalanceWitness::Unbalanced(c) => {
                    let vs: Vec<String> = c.vertices().iter().map(ToString::to_string).collect();
                    format!("unbalanced cycle={}\n", vs.join(" "))
                }
            };
            write(out, &line)?;
        }
        Command::Classify { file } => {
            let (bytes, g) = load(&file)?;
            let base = bicyclic_base(&g);
            let r = rank(&g);
            let body = Classification {
                order: g.order(),
                size: g.size(),
                rank: r,
                nullity: g.order() - r,
                balanced: is_balanced(&g).is_balanced(),
                rank2: recognize_rank2(&g),
                rank3: recognize_rank3(&g),
                unbalanced_bicyclic: unbalanced_bicyclic_verdict(&g).ok(),
                bicyclic_base: base.map(|b| BaseSummary {
                    label: b.label(),
                    base: b,
                }),
            };
            write(
                out,
                &ReportDocument::new("classify", &bytes, body).to_json(),
            )?;
        }
        Command::Reduce { file } => {
            let (bytes, g) = load(&file)?;
            let (reduced, trace) = reduce(&g);
            let body = Reduction {
                nullity_before: nullity(&g),
                nullity_after: nullity(&reduced),
                reduced,
                trace,
            };
            write(out, &ReportDocument::new("reduce", &bytes, body).to_json())?;
        }
        Command::Verify { list: true, .. } => {
            for id in TheoremId::ALL {
                write(
                    out,
                    &format!("{:<22} {}\n", id.name(), id.aliases().join(", ")),
                )?;
            }
        }
        Command::Verify {
            theorem,
            min_n,
            max_n,
            ..
        } => {
            let id: TheoremId = theorem.expect("required by clap").parse()?;
            let max_n = max_n.expect("required by clap");
            let report = verify_theorem(id, min_n..=max_n, &config)?;
            eprintln!("elapsed: {:.3}s", report.elapsed.as_secs_f64());
            let invocation = format!("verify theorem={} orders={min_n}..={max_n}", id.name());
            write(
                out,
                &ReportDocument::new("verify", invocation.as_bytes(), &report).to_json(),
            )?;
            if !report.passed() {
                eprintln!("{} violation(s)", report.violations.len());
                return Ok(EXIT_VIOLATION);
            }
        }
        Command::Catalog {
            n,
            k,
            balanced_only,
        } => {
            let catalog = catalog_nullity_classes(n, k, balanced_only, &config)?;
            let invocation = format!("catalog n={n} k={k} balanced_only={balanced_only}");
            write(
                out,
                &ReportDocument::new("catalog", invocation.as_bytes(), &catalog).to_json(),
            )?;
        }
        Command::Convert { file, to } => {
            let (_, g) = load(&file)?;
            let text = match to {
                Format::Dot => to_dot(&g),
                Format::Graph => to_graph_file(&g),
            };
            write(out, &text)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let status = match run(cli, &mut out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            EXIT_IO
        }
    };
    let _ = out.flush();
    ExitCode::from(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn ceiling_bounds_are_usage_errors() {
        let cli = Cli::parse_from([
            "signull",
            "--ceiling",
            &(signed_nullity::enumeration::MAX_CEILING + 1).to_string(),
            "catalog",
            "--n",
            "5",
            "--k",
            "4",
        ]);
        assert!(matches!(run(cli, &mut Vec::new()), Err(Failure::Usage(_))));
    }
}
