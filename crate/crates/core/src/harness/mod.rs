//! Experiment configuration, trial execution, sweeps and output.

mod config;
mod output;
mod run;

pub use config::{derive_parameters, DerivedParameters, ExperimentConfig, GraphSource, Mechanism, Sampling, Stat, WIKI_ENV};
pub use output::{write_sweep_csv, write_trials_csv};
pub use run::{
    build_graph, l2_error, median, prepare_graph, relative_error, run_trial, run_trials, run_trials_on, summarize,
    sweep, RunReport, Summary, SweepAxis, SweepRow, TrialResult, RELATIVE_ERROR_DEFINITION, WIKI_NODES,
};
