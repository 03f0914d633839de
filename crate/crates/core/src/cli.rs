//! Command-line front end: `run`, `sweep` and `verify`.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification or numerical
//! failure, 3 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::cavity::ScatterRules;
use crate::circuits::{run_gate, GateKind};
use crate::elements::HadamardConvention;
use crate::error::Error;
use crate::metrics::{efficiency, fidelity, DEFAULT_NODES_PER_ANGLE};
use crate::state::InputAngles;
use crate::sweep::{cmd_sweep, SweepConfig, WEAK_COUPLING_THRESHOLD};
use crate::verify::{cmd_verify, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hybrid-gates",
    version,
    about = "Photon-NV hybrid CNOT, Toffoli and Fredkin gates in optical microcavities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one gate on a product input and print the output state.
    Run(RunArgs),
    /// Average fidelity and efficiency over a range of g/sqrt(kappa gamma), as CSV.
    Sweep(SweepArgs),
    /// Run the built-in consistency checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// CNOT, Toffoli or Fredkin.
    #[arg(long)]
    pub gate: GateKind,
    /// Photon angle: cos(alpha)|R> + sin(alpha)|L>.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// First spin angle.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Second spin angle (Toffoli and Fredkin).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta: f64,
    /// Coupling ratio g/sqrt(kappa gamma).
    #[arg(long, default_value_t = 1000.0)]
    pub x: f64,
    /// Read the angles in degrees.
    #[arg(long)]
    pub degrees: bool,
    /// Accept x below 0.5.
    #[arg(long)]
    pub allow_weak_coupling: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Gates to sweep, comma separated or repeated (default: all).
    #[arg(long, value_delimiter = ',')]
    pub gate: Vec<GateKind>,
    #[arg(long, default_value_t = 0.5)]
    pub x_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    /// Starting quadrature nodes per angle.
    #[arg(long, default_value_t = DEFAULT_NODES_PER_ANGLE)]
    pub nodes: usize,
    /// Output CSV file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Accept x_min below 0.5.
    #[arg(long)]
    pub allow_weak_coupling: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Quadrature nodes per angle for the averaging checks.
    #[arg(long, default_value_t = DEFAULT_NODES_PER_ANGLE)]
    pub nodes: usize,
    /// Run the circuits with the mirrored wave-plate Hadamard (checks must fail).
    #[arg(long, hide = true)]
    pub flip_hwp: bool,
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } => EXIT_IO,
        Error::InvalidParameter(_) | Error::Shape(_) | Error::OffResonance => EXIT_USAGE,
        Error::DegenerateState | Error::IncompleteRouting { .. } | Error::NotConverged { .. } => {
            EXIT_VERIFY
        }
    }
}

fn weak_coupling_warning(x: f64) {
    eprintln!(
        "warning: g/sqrt(kappa gamma) = {x} is below {WEAK_COUPLING_THRESHOLD}; the resonant \
         reflection amplitude is negative there and only its magnitude |r| is used"
    );
}

fn run(args: &RunArgs, out: &mut dyn Write) -> Result<(), Error> {
    if args.x < WEAK_COUPLING_THRESHOLD {
        if !args.allow_weak_coupling {
            return Err(Error::InvalidParameter(format!(
                "x = {} is below {WEAK_COUPLING_THRESHOLD}; pass --allow-weak-coupling",
                args.x
            )));
        }
        weak_coupling_warning(args.x);
    }
    let angles = if args.degrees {
        InputAngles::from_degrees(args.alpha, args.beta, args.delta)?
    } else {
        InputAngles::new(args.alpha, args.beta, args.delta)?
    };
    let rules = ScatterRules::from_coupling_ratio(args.x)?;
    let result = run_gate(args.gate, &angles, &rules)?;
    let ideal = run_gate(args.gate, &angles, &ScatterRules::ideal())?;
    let io = |source| Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    writeln!(out, "gate: {}", args.gate).map_err(io)?;
    writeln!(out, "|r|: {}", rules.r_matched()).map_err(io)?;
    writeln!(out, "output: {}", result.output).map_err(io)?;
    writeln!(out, "ideal: {}", ideal.output).map_err(io)?;
    writeln!(out, "efficiency: {:.12}", efficiency(&result)).map_err(io)?;
    match fidelity(&ideal.output, &result.output) {
        Ok(f) => writeln!(out, "fidelity: {f:.12}").map_err(io)?,
        Err(Error::DegenerateState) => writeln!(out, "fidelity: undefined (photon lost)").map_err(io)?,
        Err(e) => return Err(e),
    }
    Ok(())
}

fn sweep(args: &SweepArgs) -> Result<(), Error> {
    let config = SweepConfig {
        gates: if args.gate.is_empty() {
            GateKind::ALL.to_vec()
        } else {
            args.gate.clone()
        },
        x_min: args.x_min,
        x_max: args.x_max,
        points: args.points,
        nodes_per_angle: args.nodes,
        output_path: args.out.clone(),
        allow_weak_coupling: args.allow_weak_coupling,
    };
    config.validate()?;
    if config.needs_weak_coupling_warning() {
        weak_coupling_warning(config.x_min);
    }
    cmd_sweep(&config)?;
    Ok(())
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Run(args) => run(args, &mut std::io::stdout().lock()),
        Command::Sweep(args) => sweep(args),
        Command::Verify(args) => {
            let opts = VerifyOptions {
                nodes_per_angle: args.nodes,
                hwp: if args.flip_hwp {
                    HadamardConvention::Flipped
                } else {
                    HadamardConvention::Standard
                },
            };
            match cmd_verify(&opts) {
                Ok(report) => {
                    println!("{report}");
                    if !report.all_passed() {
                        for c in report.failures() {
                            eprintln!("verification failed: {}", c.name);
                        }
                        return EXIT_VERIFY;
                    }
                    Ok(())
                }
                Err(e) => Err(e),
            }
        }
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
