use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};

use grouprr::harness::{
    run_trials, sweep, write_sweep_csv, write_trials_csv, ExperimentConfig, GraphSource, Mechanism, Sampling, Stat,
    SweepAxis,
};
use grouprr::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Axis {
    MuStar,
    Epsilon,
    N,
    S,
}

/// Simulate triangle and 4-cycle counting under edge local differential privacy.
#[derive(Debug, Parser)]
#[command(name = "grouprr", version)]
#[command(group(ArgGroup::new("source").required(true).args(["graph", "synthetic"])))]
struct Cli {
    /// Whitespace-separated edge list.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Node ids in --graph start at 1.
    #[arg(long, requires = "graph")]
    one_based: bool,
    /// powerlaw:N[:EXP[:MINDEG]], er:N:P, bipartite:L:R:P or wiki.
    #[arg(long)]
    synthetic: Option<String>,
    /// triangles or c4.
    #[arg(long, default_value = "triangles")]
    stat: String,
    /// grouprr-clip, grouprr-smooth, arr or rr. Repeat for sweeps.
    #[arg(long, default_value = "grouprr-clip", value_delimiter = ',')]
    mechanism: Vec<String>,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    /// Relative weights of ε0,ε1,ε2.
    #[arg(long, value_delimiter = ',', num_args = 3)]
    eps_split: Option<Vec<f64>>,
    #[arg(long, conflicts_with_all = ["s", "mu_c"])]
    mu_star: Option<f64>,
    #[arg(long, requires = "mu_c")]
    s: Option<usize>,
    #[arg(long, requires = "s")]
    mu_c: Option<f64>,
    /// ARR-style retention rate when --s/--mu-c are given.
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    subsample: Option<usize>,
    #[arg(long, default_value_t = 1e-3)]
    beta: f64,
    #[arg(long)]
    threads: Option<usize>,
    /// Adds a wall-time column.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Sweep this axis over --values.
    #[arg(long, value_enum, requires = "values")]
    sweep: Option<Axis>,
    #[arg(long, value_delimiter = ',')]
    values: Option<Vec<f64>>,
}

fn config(cli: &Cli, mechanism: Mechanism) -> Result<ExperimentConfig, Error> {
    let graph = match (&cli.graph, &cli.synthetic) {
        (Some(path), _) => GraphSource::Path { path: path.clone(), one_based: cli.one_based },
        (None, Some(spec)) => spec.parse()?,
        (None, None) => unreachable!("clap enforces a graph source"),
    };
    let mut cfg = ExperimentConfig::new(graph, cli.stat.parse::<Stat>()?, mechanism);
    cfg.epsilon = cli.epsilon;
    cfg.split = cli.eps_split.as_ref().map(|v| [v[0], v[1], v[2]]);
    cfg.sampling = match (cli.mu_star, cli.s, cli.mu_c) {
        (Some(m), _, _) => Sampling::MuStar(m),
        (None, Some(s), Some(mu_c)) => Sampling::Explicit { s, mu_c, mu: cli.mu },
        _ => Sampling::MuStar(1.0),
    };
    cfg.trials = cli.trials;
    cfg.seed = cli.seed;
    cfg.subsample = cli.subsample;
    cfg.beta = cli.beta;
    cfg.threads = cli.threads;
    cfg.timing = cli.timing;
    cfg.validate()?;
    Ok(cfg)
}

fn open(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|source| Error::Io { path: path.clone(), source })?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

fn run(cli: &Cli) -> Result<(), Error> {
    let mechanisms = cli.mechanism.iter().map(|m| m.parse()).collect::<Result<Vec<Mechanism>, _>>()?;
    let template = config(cli, mechanisms[0])?;
    let io_err = |e: io::Error| Error::Io { path: cli.out.clone().unwrap_or_else(|| "-".into()), source: e };

    if let Some(axis) = cli.sweep {
        let axis = match axis {
            Axis::MuStar => SweepAxis::MuStar,
            Axis::Epsilon => SweepAxis::Epsilon,
            Axis::N => SweepAxis::N,
            Axis::S => SweepAxis::S,
        };
        let rows = sweep(&template, axis, cli.values.as_deref().unwrap_or_default(), &mechanisms)?;
        let mut w = open(&cli.out)?;
        match cli.format {
            Format::Csv => write_sweep_csv(&mut w, &rows)?,
            Format::Json => serde_json::to_writer_pretty(&mut w, &rows)?,
        }
        return w.flush().map_err(io_err);
    }

    if mechanisms.len() != 1 {
        return Err(Error::InvalidParameter("several mechanisms require --sweep".into()));
    }
    let report = run_trials(&template)?;
    let mut w = open(&cli.out)?;
    match cli.format {
        Format::Csv => {
            write_trials_csv(&mut w, &report.rows, cli.timing)?;
            if let Some(out) = &cli.out {
                let path = summary_path(out);
                let f = File::create(&path).map_err(|source| Error::Io { path: path.clone(), source })?;
                serde_json::to_writer_pretty(BufWriter::new(f), &report.summary)?;
            }
        }
        Format::Json => serde_json::to_writer_pretty(&mut w, &report)?,
    }
    w.flush().map_err(io_err)
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::Io { .. } => "io",
        Error::InvalidParameter(_) => "invalid_parameter",
        Error::KeyOutOfRange { .. } => "key_out_of_range",
        Error::EdgeDirection { .. } => "edge_direction",
        Error::Decode(_) => "decode",
        Error::Csv(_) => "csv",
        Error::Json(_) => "json",
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": "usage", "message": e.to_string() }));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": kind(&e), "message": e.to_string() }));
            ExitCode::FAILURE
        }
    }
}
