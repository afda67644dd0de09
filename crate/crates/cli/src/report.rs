//! Run reports: every invocation echoes enough configuration on stderr to
//! reproduce it exactly (command line, optimizer settings, seed, wall time).

use std::time::Instant;

use gme_core::OptimizerConfig;
use serde::Serialize;

#[derive(Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub restarts: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub wall_ms: u128,
}

impl RunReport {
    pub fn new(cfg: &OptimizerConfig, started: Instant) -> Self {
        Self {
            command: std::env::args().collect(),
            restarts: cfg.restarts,
            max_iterations: cfg.max_iterations,
            tolerance: cfg.tolerance,
            seed: cfg.seed,
            wall_ms: started.elapsed().as_millis(),
        }
    }

    /// Prints the report as a single JSON line on stderr, keeping stdout
    /// clean for CSV/JSON payloads.
    pub fn emit(&self) {
        eprintln!("{}", serde_json::to_string(self).expect("report serialization"));
    }
}
