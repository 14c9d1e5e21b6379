use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bandapprox::bench::{run_algorithm, run_sweep, to_csv, SweepSpec};
use bandapprox::oracle::DEFAULT_ORACLE_CAP;
use bandapprox::{
    exact_bandwidth_with_cap, gen_dense_random, layout_bandwidth, parse_graph, parse_layout, Algorithm,
    ApproxOptions, BoxsizeSearch, DeltaRule, Error, Graph, RunReport,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bandapprox", version, about = "Bandwidth approximation for dense graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph with minimum degree at least delta * n.
    Generate {
        n: usize,
        delta: f64,
        seed: u64,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compute the exact bandwidth and an optimal layout.
    Exact { graph: PathBuf },
    /// Run one of the approximation algorithms.
    Approx {
        graph: PathBuf,
        #[arg(long, default_value = "2")]
        alg: Algorithm,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Density used for sampling sizes; measured from the graph when omitted.
        #[arg(long)]
        delta: Option<f64>,
        /// Drop the tightened windows for roots at distance three.
        #[arg(long)]
        no_3hop: bool,
        /// Restrict box sizes to ceil(delta * n)..=n/2.
        #[arg(long = "paper-range", alias = "narrow-range")]
        narrow_range: bool,
        #[arg(long, value_enum, default_value_t = SearchMode::Linear)]
        search: SearchMode,
        /// With binary search, also run the linear scan and report its answer.
        #[arg(long)]
        verify_monotone: bool,
        #[arg(long, default_value_t = 50)]
        max_tries: usize,
        /// Also compute the exact bandwidth and the ratio.
        #[arg(long)]
        exact: bool,
        /// Include per-phase wall times in the report.
        #[arg(long)]
        timings: bool,
        /// Write the layout to this file.
        #[arg(long)]
        layout_out: Option<PathBuf>,
    },
    /// Print the bandwidth of a layout.
    Verify { graph: PathBuf, layout: PathBuf },
    /// Run a sweep over generated instances and print CSV.
    Bench {
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0.3)]
        delta: f64,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        alg: Vec<Algorithm>,
        /// Compute exact bandwidths for instances within the oracle cap.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        no_3hop: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMode {
    Linear,
    Binary,
}

enum Failure {
    Io(String),
    Input(String),
    Infeasible(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Infeasible(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Input(m) | Failure::Infeasible(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InfeasibleGenerator { .. }
            | Error::OracleCapExceeded { .. }
            | Error::CertificationFailed { .. }
            | Error::NoFeasibleConfiguration { .. }
            | Error::Unsupported(_) => Failure::Infeasible(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn oracle_cap() -> Result<usize, Failure> {
    match std::env::var("BANDAPPROX_ORACLE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("BANDAPPROX_ORACLE_CAP must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate { n, delta, seed, out } => {
            let g = gen_dense_random(n, delta, seed)?;
            write_out(out.as_deref(), &g.to_edge_list())
        }
        Command::Exact { graph } => {
            let g = load_graph(&graph)?;
            let (b, f) = exact_bandwidth_with_cap(&g, oracle_cap()?)?;
            print!("{b}\n{}", f.to_text());
            Ok(())
        }
        Command::Approx {
            graph,
            alg,
            seed,
            alpha,
            c,
            delta,
            no_3hop,
            narrow_range,
            search,
            verify_monotone,
            max_tries,
            exact,
            timings,
            layout_out,
        } => {
            let g = load_graph(&graph)?;
            let opts = ApproxOptions {
                alpha,
                c,
                delta: delta.map(DeltaRule::Fixed),
                three_hop: !no_3hop,
                narrow_range,
                max_tries,
                search: match search {
                    SearchMode::Linear => BoxsizeSearch::Linear,
                    SearchMode::Binary => BoxsizeSearch::Binary,
                },
                verify_monotone,
                ..ApproxOptions::default()
            };
            let result = run_algorithm(alg, &g, &opts, seed)?;
            let exact = if exact {
                Some(exact_bandwidth_with_cap(&g, oracle_cap()?)?.0)
            } else {
                None
            };
            if let Some(p) = &layout_out {
                write_out(Some(p), &result.layout.to_text())?;
            }
            print!("{}", RunReport::from_result(&result, seed, exact).render(timings));
            Ok(())
        }
        Command::Verify { graph, layout } => {
            let g = load_graph(&graph)?;
            let f = parse_layout(&read(&layout)?).map_err(|e| Failure::Input(format!("{}: {e}", layout.display())))?;
            println!("{}", layout_bandwidth(&g, &f)?);
            Ok(())
        }
        Command::Bench {
            n,
            delta,
            seeds,
            alg,
            exact,
            no_3hop,
            out,
        } => {
            let spec = SweepSpec {
                ns: n,
                delta,
                seeds,
                algorithms: alg,
                exact,
                oracle_cap: oracle_cap()?,
                options: ApproxOptions {
                    three_hop: !no_3hop,
                    ..ApproxOptions::default()
                },
            };
            write_out(out.as_deref(), &to_csv(&run_sweep(&spec)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
