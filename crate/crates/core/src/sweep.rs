//! Sweeps of the averaged metrics over the coupling ratio `g / sqrt(kappa gamma)`,
//! and their CSV form.

use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::cavity::ScatterRules;
use crate::circuits::GateKind;
use crate::error::{Error, Result};
use crate::metrics::{
    average_efficiency_closed_form, average_efficiency_simulated, average_fidelity,
    AveragingSpec, MetricsRow, DEFAULT_NODES_PER_ANGLE,
};

pub const CSV_HEADER: &str = "gate,x,r_abs,f_avg,eta_avg_sim,eta_avg_closed";

/// Below this ratio the resonant reflection amplitude is negative and only
/// its magnitude enters the scattering rules.
pub const WEAK_COUPLING_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub gates: Vec<GateKind>,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub nodes_per_angle: usize,
    /// `None` writes to standard output.
    pub output_path: Option<PathBuf>,
    pub allow_weak_coupling: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            gates: GateKind::ALL.to_vec(),
            x_min: 0.5,
            x_max: 10.0,
            points: 100,
            nodes_per_angle: DEFAULT_NODES_PER_ANGLE,
            output_path: None,
            allow_weak_coupling: false,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.gates.is_empty() {
            return bad("at least one gate is required".into());
        }
        if !self.x_min.is_finite() || !self.x_max.is_finite() {
            return bad("x range must be finite".into());
        }
        if self.x_min < 0.0 {
            return bad(format!("x_min must be non-negative, got {}", self.x_min));
        }
        if self.x_max <= self.x_min {
            return bad(format!(
                "x_max ({}) must exceed x_min ({})",
                self.x_max, self.x_min
            ));
        }
        if self.points < 2 {
            return bad(format!("need at least 2 points, got {}", self.points));
        }
        if self.nodes_per_angle < 4 {
            return bad(format!(
                "need at least 4 nodes per angle, got {}",
                self.nodes_per_angle
            ));
        }
        if self.x_min < WEAK_COUPLING_THRESHOLD && !self.allow_weak_coupling {
            return bad(format!(
                "x_min = {} is below {WEAK_COUPLING_THRESHOLD}; pass --allow-weak-coupling to sweep there",
                self.x_min
            ));
        }
        Ok(())
    }

    pub fn needs_weak_coupling_warning(&self) -> bool {
        self.x_min < WEAK_COUPLING_THRESHOLD
    }

    /// Evenly spaced x values, both ends included.
    pub fn x_values(&self) -> Vec<f64> {
        let step = (self.x_max - self.x_min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.x_max
                } else {
                    self.x_min + step * k as f64
                }
            })
            .collect()
    }
}

/// Averaged metrics of one gate at one coupling ratio.
pub fn metrics_row(gate: GateKind, x: f64, nodes_per_angle: usize) -> Result<MetricsRow> {
    let rules = ScatterRules::from_coupling_ratio(x)?;
    let spec = AveragingSpec::new(gate, nodes_per_angle)?;
    let r_abs = rules.r_matched();
    Ok(MetricsRow {
        g_over_sqrt_kg: x,
        r_abs,
        f_avg: average_fidelity(gate, &rules, &spec)?,
        eta_avg_sim: average_efficiency_simulated(gate, &rules, &spec)?,
        eta_avg_closed: average_efficiency_closed_form(gate, r_abs)?,
    })
}

/// Rows for every gate (outer) and x value (inner), in that order.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<(GateKind, MetricsRow)>> {
    config.validate()?;
    let xs = config.x_values();
    let jobs: Vec<(GateKind, f64)> = config
        .gates
        .iter()
        .flat_map(|&g| xs.iter().map(move |&x| (g, x)))
        .collect();
    jobs.par_iter()
        .map(|&(g, x)| metrics_row(g, x, config.nodes_per_angle).map(|row| (g, row)))
        .collect()
}

/// Decimal rendering with 12 significant digits.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0.00000000000".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    // The exponent after rounding to 12 digits decides the decimals.
    let sci = format!("{v:.11e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let decimals = (11 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn write_csv<W: Write>(out: &mut W, rows: &[(GateKind, MetricsRow)]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for (gate, row) in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            gate.name(),
            format_sig12(row.g_over_sqrt_kg),
            format_sig12(row.r_abs),
            format_sig12(row.f_avg),
            format_sig12(row.eta_avg_sim),
            format_sig12(row.eta_avg_closed),
        )?;
    }
    out.flush()
}

/// Runs the sweep and writes the CSV to the configured destination.
pub fn cmd_sweep(config: &SweepConfig) -> Result<Vec<(GateKind, MetricsRow)>> {
    let rows = run_sweep(config)?;
    match &config.output_path {
        Some(path) => {
            let io_err = |source| Error::Io {
                path: path.clone(),
                source,
            };
            let file = std::fs::File::create(path).map_err(io_err)?;
            let mut w = std::io::BufWriter::new(file);
            write_csv(&mut w, &rows).map_err(io_err)?;
        }
        None => {
            let stdout = std::io::stdout();
            write_csv(&mut stdout.lock(), &rows).map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })?;
        }
    }
    Ok(rows)
}
