//! Photon-controlled CNOT, Toffoli and Fredkin gates acting on NV-center
//! electron spins held in single-sided optical microcavities.
//!
//! The crate is layered bottom-up:
//!
//! - [`cavity`]: reflection coefficient of a cavity with or without a coupled
//!   emitter, and the scattering rules derived from it.
//! - [`state`]: sparse photon-path-spin states.
//! - [`elements`]: beam splitters, wave plates, switches, electron-spin
//!   Hadamards and the cavity scattering step.
//! - [`circuits`]: the three gates as element scripts.
//! - [`metrics`]: fidelity, efficiency and their angle averages.
//! - [`sweep`]: parameter sweeps and CSV output.
//! - [`verify`]: built-in consistency checks.
//! - [`cli`]: the `hybrid-gates` command line.
//!
//! ```
//! use hybrid_gates::{run_gate, GateKind, InputAngles, ScatterRules};
//!
//! let angles = InputAngles::new(std::f64::consts::FRAC_PI_2, 0.0, 0.0).unwrap();
//! let out = run_gate(GateKind::Cnot, &angles, &ScatterRules::ideal()).unwrap();
//! assert!((out.survival - 1.0).abs() < 1e-12);
//! ```

pub mod cavity;
pub mod circuits;
pub mod cli;
pub mod elements;
pub mod error;
pub mod metrics;
pub mod quadrature;
pub mod state;
pub mod sweep;
pub mod verify;

pub use cavity::{
    make_scatter_rules, reflection_coefficient, resonant_reflection, CavityParams, ScatterRules,
};
pub use circuits::{
    ideal_truth_output, run_cnot, run_fredkin, run_gate, run_toffoli, trace_gate, Circuit,
    ComputationalBasis, GateKind, GateResult, GateTransfer, Step, Trace,
};
pub use elements::{
    apply_electron_hadamard, apply_hwp_hadamard, apply_hwp_hadamard_with, apply_hwp_sigma_z,
    apply_nv_scatter, apply_pbs, apply_switch, HadamardConvention, PbsRouting,
};
pub use error::{Error, Result};
pub use metrics::{
    average_efficiency_closed_form, average_efficiency_simulated, average_fidelity, efficiency,
    fidelity, fixed_average_fidelity, monte_carlo_fidelity, refine_average_fidelity,
    AveragingSpec, GateAverager, MetricsRow, MonteCarloEstimate, QuadratureEstimate,
};
pub use state::{
    normalize, overlap, product_input, BasisLabel, HybridState, InputAngles, Polarization, Spin,
};
pub use sweep::{cmd_sweep, run_sweep, SweepConfig};
pub use verify::{cmd_verify, VerifyOptions, VerifyReport};
