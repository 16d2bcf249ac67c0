use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ssc_core::augmentation::{augmenters, AugmentOptions};
use ssc_core::controllability::{pmi_solvers, validate_pmi, validate_ssc_bound, LeaderSet, PmiSequence};
use ssc_core::generate::{GenSpec, Model, ModelKind};
use ssc_core::harness::{run_experiment, ExperimentConfig};
use ssc_core::{Error, Graph};

#[derive(Parser)]
#[command(name = "sscaug", version, about = "Leader-distance preserving edge augmentation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph as an edge list.
    Gen {
        #[arg(long)]
        model: ModelKind,
        #[arg(long)]
        n: usize,
        /// Edge probability (erdos-renyi).
        #[arg(long)]
        p: Option<f64>,
        /// Attachment count (barabasi-albert).
        #[arg(long)]
        gamma: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute a PMI sequence of distance-to-leader vectors.
    Pmi {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        leaders: Vec<usize>,
        #[arg(long, default_value = "greedy")]
        solver: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Add edges while keeping every monitored leader distance.
    Augment {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        leaders: Vec<usize>,
        #[arg(long, default_value = "randomized")]
        algorithm: String,
        /// Read the PMI sequence from a JSON file instead of solving for one.
        #[arg(long, conflicts_with = "pmi_solver")]
        pmi: Option<PathBuf>,
        #[arg(long)]
        pmi_solver: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Repetitions of the randomized algorithm.
        #[arg(short = 'c', long = "repetitions", default_value_t = AugmentOptions::default().repetitions)]
        repetitions: usize,
        /// Report `runtime_ms` as null so output is reproducible.
        #[arg(long)]
        no_timing: bool,
        /// Also write the augmented graph as an edge list.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check controllability rank against a claimed lower bound on random weights.
    Validate {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        leaders: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Claimed bound; defaults to the greedy PMI length.
        #[arg(long)]
        delta: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run an ensemble experiment from a JSON config and write CSV.
    Experiment {
        #[arg(short, long)]
        config: PathBuf,
        /// Overrides the `output` field of the config.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Use 100 instances and 150 repetitions.
        #[arg(long)]
        full: bool,
        /// Write per-point means as JSON here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Error> {
    match output {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn load(graph: &Path, leaders: Vec<usize>) -> Result<(Graph, LeaderSet), Error> {
    let g = Graph::parse_edge_list(&read(graph)?)?;
    let leaders = LeaderSet::new(leaders, g.n())?;
    Ok((g, leaders))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Gen { model, n, p, gamma, seed, output } => {
            let model = match model {
                ModelKind::ErdosRenyi => Model::ErdosRenyi {
                    p: p.ok_or_else(|| Error::Input("--p is required for erdos-renyi".into()))?,
                },
                ModelKind::BarabasiAlbert => Model::BarabasiAlbert {
                    gamma: gamma.ok_or_else(|| Error::Input("--gamma is required for barabasi-albert".into()))?,
                },
            };
            let g = GenSpec { model, n, seed }.generate()?;
            emit(&g.to_edge_list(), output.as_deref())
        }
        Command::Pmi { graph, leaders, solver, output } => {
            let (g, leaders) = load(&graph, leaders)?;
            let pmi = pmi_solvers().get(&solver)?.solve(&g, &leaders)?;
            emit(&with_newline(pmi.to_json()), output.as_deref())
        }
        Command::Augment {
            graph,
            leaders,
            algorithm,
            pmi,
            pmi_solver,
            seed,
            repetitions,
            no_timing,
            graph_out,
            output,
        } => {
            let (g, leaders) = load(&graph, leaders)?;
            let algorithm = augmenters().get(&algorithm)?;
            let pmi = match pmi {
                Some(path) => {
                    let pmi = PmiSequence::from_json(&read(&path)?)?;
                    validate_pmi(&g, &leaders, &pmi)?;
                    pmi
                }
                None => pmi_solvers()
                    .get(pmi_solver.as_deref().unwrap_or("greedy"))?
                    .solve(&g, &leaders)?,
            };
            let result = algorithm.augment(&g, &leaders, &pmi, &AugmentOptions { seed, repetitions })?;
            if let Some(path) = graph_out {
                fs::write(path, result.augmented.to_edge_list())?;
            }
            emit(&with_newline(result.to_json(!no_timing)), output.as_deref())
        }
        Command::Validate { graph, leaders, trials, seed, delta, output } => {
            let (g, leaders) = load(&graph, leaders)?;
            let delta = match delta {
                Some(d) => d,
                None => pmi_solvers().get("greedy")?.solve(&g, &leaders)?.len(),
            };
            let report = validate_ssc_bound(&g, &leaders, delta, trials, seed)?;
            emit(&with_newline(report.to_json()), output.as_deref())?;
            if report.pass {
                Ok(())
            } else {
                Err(Error::Domain(format!(
                    "rank fell below {delta} in trial {}",
                    report.failing_trial.unwrap_or_default()
                )))
            }
        }
        Command::Experiment { config, output, full, summary } => {
            let mut cfg = ExperimentConfig::from_json(&read(&config)?)?;
            if full {
                cfg = cfg.full_scale();
            }
            let out_path = output
                .or_else(|| cfg.output.clone())
                .ok_or_else(|| Error::Input("no output path: pass -o or set \"output\" in the config".into()))?;
            let outcome = run_experiment(&cfg)?;
            outcome.write_csv(fs::File::create(&out_path)?)?;
            if let Some(path) = summary {
                fs::write(path, with_newline(outcome.summary_json()))?;
            }
            Ok(())
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Domain(_) | Error::Size(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
