use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyperarr_cli::commands::{self, Options, Report};
use hyperarr_cli::corpus::{default_corpus_dir, run_corpus};
use hyperarr_cli::{json, load_arrangement, load_graph, parse_hyperplane, CliError, EXIT_PARSE};

/// Exact computations on central hyperplane arrangements over Q.
#[derive(Parser, Debug)]
#[command(name = "hyperarr", version)]
struct Cli {
    /// Largest degree searched for generators.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Search every degree up to the cap instead of stopping at |A| - rank + 1.
    #[arg(long, global = true)]
    no_regularity_bound: bool,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized cross-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include generator coefficients in JSON output.
    #[arg(long, global = true)]
    emit_generators: bool,
    /// Node budget for the filtration search.
    #[arg(long, global = true, default_value_t = hyperarr::hypersolvable::DEFAULT_BUDGET)]
    budget: u64,
    /// Run brute-force oracles alongside the main computation.
    #[arg(long, global = true)]
    crosscheck: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection lattice with Moebius values and chi(t).
    Lattice { input: PathBuf },
    /// Characteristic polynomial; with --hyperplane, the non-freeness test.
    Charpoly {
        input: PathBuf,
        #[arg(long)]
        hyperplane: Option<String>,
    },
    /// Minimal generator degrees of D(A).
    Derivations { input: PathBuf },
    /// Saito certificate; with --hyperplane, the tests for adding it.
    Freeness {
        input: PathBuf,
        #[arg(long)]
        hyperplane: Option<String>,
    },
    /// Minimal restriction number t_A and the inequality t_A >= |A| - d_A.
    Tnumber { input: PathBuf },
    /// Generators of D(A ∪ {H_1, ..., H_q}) built from those of D(A).
    Addition {
        input: PathBuf,
        #[arg(long = "hyperplane", required = true)]
        hyperplanes: Vec<String>,
        /// Check the graded span against D(A) through this degree.
        #[arg(long)]
        verify_up_to: Option<u32>,
    },
    /// Tri(G), t of the graphic arrangement and the degree bound.
    GraphAnalyze {
        input: PathBuf,
        #[arg(long)]
        derivations: bool,
    },
    /// Solvable filtration, hyperexponents and the quadratic Poincare polynomial.
    HypAnalyze { input: PathBuf },
    /// Run a regression corpus (default: the shipped one).
    Corpus { dir: Option<PathBuf> },
}

fn options(cli: &Cli) -> Options {
    Options {
        max_degree: cli.max_degree,
        regularity_bound: !cli.no_regularity_bound,
        seed: cli.seed,
        emit_generators: cli.emit_generators,
        budget: cli.budget,
        crosscheck: cli.crosscheck,
    }
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Lattice { .. } => "lattice",
        Command::Charpoly { .. } => "charpoly",
        Command::Derivations { .. } => "derivations",
        Command::Freeness { .. } => "freeness",
        Command::Tnumber { .. } => "tnumber",
        Command::Addition { .. } => "addition",
        Command::GraphAnalyze { .. } => "graph-analyze",
        Command::HypAnalyze { .. } => "hyp-analyze",
        Command::Corpus { .. } => "corpus",
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = options(cli);
    match &cli.command {
        Command::Lattice { input } => Ok(commands::lattice(&load_arrangement(input)?)),
        Command::Charpoly { input, hyperplane } => {
            let a = load_arrangement(input)?;
            let h = hyperplane
                .as_deref()
                .map(|t| parse_hyperplane(t, a.dim()))
                .transpose()?;
            commands::charpoly(&a, h.as_ref())
        }
        Command::Derivations { input } => Ok(commands::derivations(&load_arrangement(input)?, &opts)),
        Command::Freeness { input, hyperplane } => {
            let a = load_arrangement(input)?;
            let h = hyperplane
                .as_deref()
                .map(|t| parse_hyperplane(t, a.dim()))
                .transpose()?;
            commands::freeness(&a, h.as_ref(), &opts)
        }
        Command::Tnumber { input } => commands::tnumber(&load_arrangement(input)?, &opts),
        Command::Addition {
            input,
            hyperplanes,
            verify_up_to,
        } => {
            let a = load_arrangement(input)?;
            let hs = hyperplanes
                .iter()
                .map(|t| parse_hyperplane(t, a.dim()))
                .collect::<Result<Vec<_>, _>>()?;
            commands::addition(&a, &hs, *verify_up_to, &opts)
        }
        Command::GraphAnalyze { input, derivations } => {
            commands::graph_analyze(&load_graph(input)?, *derivations, &opts)
        }
        Command::HypAnalyze { input } => commands::hyp_analyze(&load_arrangement(input)?, &opts),
        Command::Corpus { dir } => {
            let dir = dir.clone().unwrap_or_else(default_corpus_dir);
            let s = run_corpus(&dir)?;
            Ok(Report {
                json: s.to_json(),
                text: s.to_text(),
                warnings: s.warnings.clone(),
                violations: Vec::new(),
                code: s.exit_code(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE as u8 } else { 0 });
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if cli.json {
        let mut v = json::envelope(name(&cli.command), report.json.clone());
        v["violations"] = serde_json::json!(report.violations);
        println!("{}", serde_json::to_string_pretty(&v).expect("values serialize"));
    } else {
        print!("{}", report.text);
    }
    for v in &report.violations {
        eprintln!("error: invariant violated: {v}");
    }
    ExitCode::from(report.exit_code() as u8)
}
