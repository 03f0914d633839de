use std::path::PathBuf;

use crate::state::Polarization;

/// Errors produced anywhere in the simulator.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state has zero norm and cannot be normalized")]
    DegenerateState,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("PBS routing has no entry for polarization {pol} on path {path}")]
    IncompleteRouting { pol: Polarization, path: u16 },

    #[error("scattering rules are only defined on resonance (omega_c = omega_0 = omega_p)")]
    OffResonance,

    #[error(
        "quadrature did not converge: |Q(2n) - Q(n)| = {delta:.3e} at n = {nodes_per_angle} nodes per angle"
    )]
    NotConverged {
        nodes_per_angle: usize,
        delta: f64,
        estimate: f64,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
