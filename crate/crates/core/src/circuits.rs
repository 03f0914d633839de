//! The CNOT, Toffoli and Fredkin circuits as fixed, unrolled element scripts.
//!
//! The photon's polarization is the control qubit, the NV spins are the
//! targets. Every circuit starts with the photon on path 0 and ends on a
//! terminal path; whatever does not reach the terminal path (absorbed in a
//! lossy cavity or sent out of a dark PBS port) counts as lost.
//!
//! Path numbers of the figure modes that appear in the intermediate states
//! are kept (Toffoli: 1, 8, 12, 18, 19; Fredkin: 1, 2, 3, 4, 10, 11, 12, 13).
//! Arm and dark-port numbers inside the interaction blocks are local choices.
//!
//! Mode map, CNOT (terminal 3):
//! ```text
//! 0 -PBS1-> R:1 (bypass) / L:2 (NV) -PBS2-> 3, dark 4
//! ```
//! Toffoli (spin 0 = c2, spin 1 = t; terminal 19):
//! ```text
//! 0 -PBS1-> R:1 / L:2
//! 2 -HWP1- PBS2 -> R:3 (NV c2) / L:4 -PBS3-> 8 (dark 5) -HWP2-
//! 8 -PBS4-> R:9 (NV t) / L:10 -PBS5-> 12 (dark 11)           [H_e(t) around]
//! 12 -HWP3- PBS6 -> R:13 (NV c2) / L:14 -PBS7-> 18 (dark 15) -HWP4-
//! PBS8: R from 1, L from 18 -> 19 (dark 20)
//! ```
//! Fredkin (spin 0 = t1, spin 1 = t2; terminal 13):
//! ```text
//! 0 -PBS1-> R:1 / L:2,  S1: 2 -> 3,  HWP1: 3 -> 4
//! block: 4 -PBS2-> R:5 (NV t1, NV t2) / L:6 -PBS3-> 9 (dark 7)
//! pass 1: S2 9 -> 10, S1 10 -> 3, HWP1 3 -> 4
//! pass 2: H_e both, block, H_e both, S2 9 -> 10, S1 10 -> 3
//! pass 3: HWP1 3 -> 4, block, S2 9 -> 11, HWP2 11 -> 12
//! PBS4: R from 1, L from 12 -> 13 (dark 14)
//! ```

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::cavity::ScatterRules;
use crate::elements::{
    apply_electron_hadamard, apply_hwp_hadamard_with, apply_hwp_sigma_z, apply_nv_scatter,
    apply_pbs, apply_switch, HadamardConvention, PbsRouting,
};
use crate::error::{Error, Result};
use crate::state::{
    norm_sq, product_input, BasisLabel, HybridState, InputAngles, Path, Polarization, Spin, Spins,
};

/// Which gate a circuit implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateKind {
    Cnot,
    Toffoli,
    Fredkin,
}

impl GateKind {
    pub const ALL: [GateKind; 3] = [GateKind::Cnot, GateKind::Toffoli, GateKind::Fredkin];

    pub fn spin_count(self) -> usize {
        match self {
            GateKind::Cnot => 1,
            GateKind::Toffoli | GateKind::Fredkin => 2,
        }
    }

    /// Number of input angles the gate's product input depends on.
    pub fn angle_count(self) -> usize {
        self.spin_count() + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "Toffoli",
            GateKind::Fredkin => "Fredkin",
        }
    }

    pub fn terminal_path(self) -> Path {
        match self {
            GateKind::Cnot => 3,
            GateKind::Toffoli => 19,
            GateKind::Fredkin => 13,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cnot" => Ok(GateKind::Cnot),
            "toffoli" => Ok(GateKind::Toffoli),
            "fredkin" => Ok(GateKind::Fredkin),
            _ => Err(Error::InvalidParameter(format!(
                "unknown gate {s:?} (expected cnot, toffoli or fredkin)"
            ))),
        }
    }
}

/// One element of a circuit script.
#[derive(Debug, Clone)]
pub enum Step {
    Pbs(PbsRouting),
    HwpSigmaZ(Path),
    HwpHadamard(Path),
    ElectronHadamard(usize),
    NvScatter { nv: usize, path: Path },
    /// Optical switch, or plain propagation from one labelled mode to the next.
    Switch { from: Path, to: Path },
    /// Records the state under this name; no action.
    Checkpoint(&'static str),
}

/// Checkpoint names exposed by the scripts.
pub mod checkpoint {
    /// Toffoli, after `PBS1 HWP1 PBS2 NV_c2 PBS3 HWP2`; photon on 1 and 8.
    pub const TOFFOLI_FIRST_BLOCK: &str = "toffoli/first-block";
    /// Toffoli, after `H_e PBS4 NV_t PBS5 H_e`; photon on 1 and 12.
    pub const TOFFOLI_SECOND_BLOCK: &str = "toffoli/second-block";
    /// Fredkin, after the first pass through the NV block; photon on 1 and 4.
    pub const FREDKIN_FIRST_PASS: &str = "fredkin/first-pass";
    /// Fredkin, after the second pass; photon on 1 and 3.
    pub const FREDKIN_SECOND_PASS: &str = "fredkin/second-pass";
}

/// An unrolled element sequence for one gate.
#[derive(Debug, Clone)]
pub struct Circuit {
    kind: GateKind,
    steps: Vec<Step>,
}

impl Circuit {
    pub fn for_gate(kind: GateKind) -> Self {
        let steps = match kind {
            GateKind::Cnot => cnot_script(),
            GateKind::Toffoli => toffoli_script(),
            GateKind::Fredkin => fredkin_script(),
        };
        Self { kind, steps }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Runs the script on `input` and keeps the named intermediate states.
    pub fn trace(
        &self,
        input: &HybridState,
        rules: &ScatterRules,
        hwp: HadamardConvention,
    ) -> Result<Trace> {
        if input.spin_count() != self.kind.spin_count() {
            return Err(Error::Shape(format!(
                "{} acts on {} spins, input has {}",
                self.kind,
                self.kind.spin_count(),
                input.spin_count()
            )));
        }
        let mut state = input.clone();
        let mut checkpoints = Vec::new();
        for step in &self.steps {
            state = match step {
                Step::Pbs(routing) => apply_pbs(&state, routing)?,
                Step::HwpSigmaZ(path) => apply_hwp_sigma_z(&state, *path),
                Step::HwpHadamard(path) => apply_hwp_hadamard_with(&state, *path, hwp),
                Step::ElectronHadamard(nv) => apply_electron_hadamard(&state, *nv)?,
                Step::NvScatter { nv, path } => apply_nv_scatter(&state, *nv, *path, rules)?,
                Step::Switch { from, to } => apply_switch(&state, *from, *to),
                Step::Checkpoint(name) => {
                    checkpoints.push((*name, state.clone()));
                    continue;
                }
            };
        }
        let output = state.project_path(self.kind.terminal_path());
        let survival = norm_sq(&output);
        Ok(Trace {
            output: GateResult { output, survival },
            checkpoints,
            unprojected: state,
        })
    }

    pub fn run(&self, input: &HybridState, rules: &ScatterRules) -> Result<GateResult> {
        Ok(self.trace(input, rules, HadamardConvention::Standard)?.output)
    }
}

/// Output of a circuit run, restricted to the terminal path.
#[derive(Debug, Clone, PartialEq)]
pub struct GateResult {
    /// Un-normalized output state.
    pub output: HybridState,
    /// Probability that the photon reaches the terminal path.
    pub survival: f64,
}

/// Full record of one circuit run.
#[derive(Debug, Clone)]
pub struct Trace {
    pub output: GateResult,
    pub checkpoints: Vec<(&'static str, HybridState)>,
    /// Final state before projection, dark ports included.
    pub unprojected: HybridState,
}

impl Trace {
    pub fn checkpoint(&self, name: &str) -> Option<&HybridState> {
        self.checkpoints.iter().find(|(n, _)| *n == name).map(|(_, s)| s)
    }
}

fn cnot_script() -> Vec<Step> {
    use Step::*;
    vec![
        ElectronHadamard(0),
        Pbs(PbsRouting::split(0, 1, 2)),
        NvScatter { nv: 0, path: 2 },
        Pbs(PbsRouting::merge(1, 2, 3, 4)),
        ElectronHadamard(0),
        HwpSigmaZ(3),
    ]
}

/// Split by a PBS, let the R arm reflect off `nv`, recombine.
fn nv_block(nv: usize, input: Path, nv_arm: Path, bypass: Path, out: Path, dark: Path) -> Vec<Step> {
    use Step::*;
    vec![
        Pbs(PbsRouting::split(input, nv_arm, bypass)),
        NvScatter { nv, path: nv_arm },
        Pbs(PbsRouting::merge(nv_arm, bypass, out, dark)),
    ]
}

fn toffoli_script() -> Vec<Step> {
    use Step::*;
    const C2: usize = 0;
    const T: usize = 1;
    let mut s = vec![Pbs(PbsRouting::split(0, 1, 2)), HwpHadamard(2)];
    s.extend(nv_block(C2, 2, 3, 4, 8, 5));
    s.push(HwpHadamard(8));
    s.push(Checkpoint(checkpoint::TOFFOLI_FIRST_BLOCK));

    s.push(ElectronHadamard(T));
    s.extend(nv_block(T, 8, 9, 10, 12, 11));
    s.push(ElectronHadamard(T));
    s.push(Checkpoint(checkpoint::TOFFOLI_SECOND_BLOCK));

    s.push(HwpHadamard(12));
    s.extend(nv_block(C2, 12, 13, 14, 18, 15));
    s.push(HwpHadamard(18));
    s.push(Pbs(PbsRouting::merge(1, 18, 19, 20)));
    s
}

fn fredkin_block() -> Vec<Step> {
    use Step::*;
    vec![
        Pbs(PbsRouting::split(4, 5, 6)),
        NvScatter { nv: 0, path: 5 },
        NvScatter { nv: 1, path: 5 },
        Pbs(PbsRouting::merge(5, 6, 9, 7)),
    ]
}

fn fredkin_script() -> Vec<Step> {
    use Step::*;
    let hwp1 = [HwpHadamard(3), Switch { from: 3, to: 4 }];
    let mut s = vec![Pbs(PbsRouting::split(0, 1, 2)), Switch { from: 2, to: 3 }];

    s.extend(hwp1.clone());
    s.extend(fredkin_block());
    s.push(Switch { from: 9, to: 10 });
    s.push(Switch { from: 10, to: 3 });
    s.extend(hwp1.clone());
    s.push(Checkpoint(checkpoint::FREDKIN_FIRST_PASS));

    s.extend([ElectronHadamard(0), ElectronHadamard(1)]);
    s.extend(fredkin_block());
    s.extend([ElectronHadamard(0), ElectronHadamard(1)]);
    s.push(Switch { from: 9, to: 10 });
    s.push(Switch { from: 10, to: 3 });
    s.push(Checkpoint(checkpoint::FREDKIN_SECOND_PASS));

    s.extend(hwp1);
    s.extend(fredkin_block());
    s.push(Switch { from: 9, to: 11 });
    s.push(HwpHadamard(11));
    s.push(Switch { from: 11, to: 12 });
    s.push(Pbs(PbsRouting::merge(1, 12, 13, 14)));
    s
}

pub fn run_gate(gate: GateKind, angles: &InputAngles, rules: &ScatterRules) -> Result<GateResult> {
    Circuit::for_gate(gate).run(&product_input(angles, gate), rules)
}

pub fn run_cnot(angles: &InputAngles, rules: &ScatterRules) -> Result<GateResult> {
    run_gate(GateKind::Cnot, angles, rules)
}

pub fn run_toffoli(angles: &InputAngles, rules: &ScatterRules) -> Result<GateResult> {
    run_gate(GateKind::Toffoli, angles, rules)
}

pub fn run_fredkin(angles: &InputAngles, rules: &ScatterRules) -> Result<GateResult> {
    run_gate(GateKind::Fredkin, angles, rules)
}

/// Runs a gate on its product input and returns the full trace.
pub fn trace_gate(
    gate: GateKind,
    angles: &InputAngles,
    rules: &ScatterRules,
    hwp: HadamardConvention,
) -> Result<Trace> {
    Circuit::for_gate(gate).trace(&product_input(angles, gate), rules, hwp)
}

/// A computational basis input or output: photon polarization and spins,
/// no path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComputationalBasis {
    pub pol: Polarization,
    pub spins: Spins,
}

impl ComputationalBasis {
    pub fn new(pol: Polarization, spins: &[Spin]) -> Self {
        Self {
            pol,
            spins: spins.iter().copied().collect(),
        }
    }

    /// All `2 * 2^n` basis states of a gate, R before L, `+` before `-`.
    pub fn all(gate: GateKind) -> Vec<Self> {
        let n = gate.spin_count();
        let mut out = Vec::with_capacity(2 << n);
        for pol in Polarization::ALL {
            for bits in 0..(1usize << n) {
                let spins: Vec<Spin> = (0..n)
                    .map(|i| Spin::ALL[(bits >> (n - 1 - i)) & 1])
                    .collect();
                out.push(Self::new(pol, &spins));
            }
        }
        out
    }

    /// Position of this state in [`ComputationalBasis::all`].
    pub fn index(&self) -> usize {
        let n = self.spins.len();
        let bits = self
            .spins
            .iter()
            .fold(0usize, |acc, s| (acc << 1) | s.index());
        (self.pol.index() << n) | bits
    }

    pub fn on_path(&self, path: Path) -> BasisLabel {
        BasisLabel {
            pol: self.pol,
            path,
            spins: self.spins.clone(),
        }
    }
}

/// Truth table of each gate: with the photon in L, CNOT flips the spin,
/// Toffoli flips spin 1 when spin 0 is `|->`, Fredkin swaps the two spins.
/// With the photon in R nothing changes.
pub fn ideal_truth_output(gate: GateKind, input: &ComputationalBasis) -> Result<ComputationalBasis> {
    if input.spins.len() != gate.spin_count() {
        return Err(Error::Shape(format!(
            "{gate} needs {} spins, got {}",
            gate.spin_count(),
            input.spins.len()
        )));
    }
    let mut out = input.clone();
    if input.pol == Polarization::L {
        match gate {
            GateKind::Cnot => out.spins[0] = input.spins[0].flipped(),
            GateKind::Toffoli => {
                if input.spins[0] == Spin::Minus {
                    out.spins[1] = input.spins[1].flipped();
                }
            }
            GateKind::Fredkin => out.spins.swap(0, 1),
        }
    }
    Ok(out)
}

/// The linear map a circuit applies, restricted to the terminal path, as a
/// dense matrix over [`ComputationalBasis::all`].
///
/// Built by running the script once per basis input.
#[derive(Debug, Clone)]
pub struct GateTransfer {
    gate: GateKind,
    dim: usize,
    // Row-major: entry (out, inp) at out * dim + inp.
    matrix: Vec<Complex64>,
}

impl GateTransfer {
    pub fn new(gate: GateKind, rules: &ScatterRules) -> Result<Self> {
        let circuit = Circuit::for_gate(gate);
        let basis = ComputationalBasis::all(gate);
        let dim = basis.len();
        let terminal = gate.terminal_path();
        let mut matrix = vec![Complex64::default(); dim * dim];
        for (col, b) in basis.iter().enumerate() {
            let input = HybridState::from_terms(
                gate.spin_count(),
                [(b.on_path(0), Complex64::new(1.0, 0.0))],
            )?;
            let result = circuit.run(&input, rules)?;
            for (label, amp) in result.output.terms() {
                debug_assert_eq!(label.path, terminal);
                let row = ComputationalBasis {
                    pol: label.pol,
                    spins: label.spins.clone(),
                }
                .index();
                matrix[row * dim + col] = *amp;
            }
        }
        Ok(Self { gate, dim, matrix })
    }

    pub fn gate(&self) -> GateKind {
        self.gate
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, out: usize, inp: usize) -> Complex64 {
        self.matrix[out * self.dim + inp]
    }

    /// Output amplitudes for input amplitudes given in basis order.
    pub fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(input.len(), self.dim, "input length must match the basis");
        self.matrix
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(input).map(|(m, x)| m * x).sum())
            .collect()
    }

    /// Applies the map to real input amplitudes, writing into `out`.
    pub(crate) fn apply_real_into(&self, input: &[f64], out: &mut [Complex64]) {
        for (row, o) in self.matrix.chunks_exact(self.dim).zip(out.iter_mut()) {
            *o = row.iter().zip(input).map(|(m, x)| m * x).sum();
        }
    }

    /// The output as a state on the terminal path.
    pub fn output_state(&self, amplitudes: &[Complex64]) -> Result<HybridState> {
        let terminal = self.gate.terminal_path();
        let terms = ComputationalBasis::all(self.gate)
            .into_iter()
            .zip(amplitudes)
            .map(|(b, a)| (b.on_path(terminal), *a));
        HybridState::from_terms(self.gate.spin_count(), terms)
    }
}

/// Product-input amplitudes in [`ComputationalBasis::all`] order.
pub fn product_amplitudes(gate: GateKind, angles: &InputAngles) -> Vec<f64> {
    let photon = [angles.alpha.cos(), angles.alpha.sin()];
    let spin_part = spin_amplitudes(gate, angles.beta, angles.delta);
    photon
        .iter()
        .flat_map(|p| spin_part.iter().map(move |s| p * s))
        .collect()
}

/// Spin factor of the product input, `+` before `-`, spin 0 most significant.
pub(crate) fn spin_amplitudes(gate: GateKind, beta: f64, delta: f64) -> Vec<f64> {
    let b = [beta.cos(), beta.sin()];
    match gate.spin_count() {
        1 => b.to_vec(),
        _ => {
            let d = [delta.cos(), delta.sin()];
            vec![b[0] * d[0], b[0] * d[1], b[1] * d[0], b[1] * d[1]]
        }
    }
}
