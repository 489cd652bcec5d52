//! The machine-readable side channel written by `--report`.

use std::fs;
use std::path::Path;

use fracdiff_core::kernels::KernelSpec;
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// The (α, β, η) triple as echoed in reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecEcho {
    /// Space-fractional order.
    pub alpha: f64,
    /// Time-fractional order.
    pub beta: f64,
    /// Diffusion coefficient.
    pub eta: f64,
}

impl From<&KernelSpec> for SpecEcho {
    fn from(s: &KernelSpec) -> Self {
        SpecEcho { alpha: s.alpha(), beta: s.beta(), eta: s.eta() }
    }
}

/// Summary of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    /// Subcommand name.
    pub command: String,
    /// Parameters, when the command has a single spec.
    pub spec: Option<SpecEcho>,
    /// Data rows written (header excluded).
    pub rows_written: usize,
    /// Largest relative disagreement between independent evaluations that
    /// the command performed; 0 when it performed none.
    pub max_cross_route_discrepancy: f64,
    /// Elapsed wall-clock time in seconds.
    pub wall_time: f64,
}

impl RunReport {
    /// Write as pretty JSON.
    pub fn write(&self, path: &Path) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| CliError::usage(e.to_string()))?;
        fs::write(path, text + "\n").map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }
}
