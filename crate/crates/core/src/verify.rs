//! Self-checks behind the `verify` subcommand: truth tables, intermediate
//! states against their hand-derived forms, the lossy CNOT output, the
//! efficiency closed forms and quadrature convergence.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cavity::ScatterRules;
use crate::circuits::{checkpoint, ideal_truth_output, trace_gate, ComputationalBasis, GateKind};
use crate::elements::HadamardConvention;
use crate::error::Result;
use crate::metrics::{
    average_efficiency_closed_form, average_efficiency_simulated, fidelity, AveragingSpec,
    GateAverager, CONVERGENCE_TOLERANCE,
};
use crate::state::{BasisLabel, HybridState, InputAngles, Path, Polarization, Spin};

/// Tolerance for amplitude and probability comparisons.
pub const STATE_TOLERANCE: f64 = 1e-12;
/// Tolerance between simulated and closed-form average efficiency.
pub const EFFICIENCY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub nodes_per_angle: usize,
    /// Wave-plate convention used for the circuit runs. Anything other than
    /// the standard one is expected to fail.
    pub hwp: HadamardConvention,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            nodes_per_angle: crate::metrics::DEFAULT_NODES_PER_ANGLE,
            hwp: HadamardConvention::Standard,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckOutcome {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Largest amplitude difference between `a` and `e^{i phi} b`, with the
/// phase fixed on the largest amplitude of `b`.
pub fn distance_up_to_phase(a: &HybridState, b: &HybridState) -> f64 {
    let anchor = b
        .terms()
        .max_by(|x, y| x.1.norm_sqr().total_cmp(&y.1.norm_sqr()))
        .map(|(l, amp)| (l.clone(), *amp));
    let phase = match anchor {
        Some((label, bv)) if bv.norm() > STATE_TOLERANCE => {
            let av = a.amplitude(&label);
            if av.norm() > STATE_TOLERANCE {
                (av / bv) / (av / bv).norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        }
        _ => Complex64::new(1.0, 0.0),
    };
    let labels = a.terms().map(|(l, _)| l).chain(b.terms().map(|(l, _)| l));
    labels
        .map(|l| (a.amplitude(l) - phase * b.amplitude(l)).norm())
        .fold(0.0, f64::max)
}

/// The 5 x 5 x 5 grid of input angles used by the state checks.
pub fn angle_grid() -> Vec<InputAngles> {
    let axis: Vec<f64> = (0..5).map(|k| 0.3 + TAU * k as f64 / 5.0).collect();
    let mut out = Vec::with_capacity(125);
    for &a in &axis {
        for &b in &axis {
            for &d in &axis {
                out.push(InputAngles::new(a, b, d).expect("finite angles"));
            }
        }
    }
    out
}

/// Hand-derived states at the named points of the ideal circuits.
pub mod expected {
    use super::*;
    use Polarization::{L, R};
    use Spin::{Minus as M, Plus as P};

    type Term = (Polarization, Path, [Spin; 2], f64);

    fn two_spin(terms: &[Term]) -> HybridState {
        HybridState::from_terms(
            2,
            terms
                .iter()
                .map(|&(pol, path, s, amp)| (BasisLabel::new(pol, path, &s), Complex64::new(amp, 0.0))),
        )
        .expect("normalized by construction")
    }

    fn trig(a: &InputAngles) -> [f64; 6] {
        [a.alpha.cos(), a.alpha.sin(), a.beta.cos(), a.beta.sin(), a.delta.cos(), a.delta.sin()]
    }

    /// Photon R on `path`, both spins in their input states.
    fn r_branch(a: &InputAngles, path: Path) -> Vec<Term> {
        let [ca, _, cb, sb, cd, sd] = trig(a);
        vec![
            (R, path, [P, P], ca * cb * cd),
            (R, path, [P, M], ca * cb * sd),
            (R, path, [M, P], ca * sb * cd),
            (R, path, [M, M], ca * sb * sd),
        ]
    }

    pub fn cnot_output(a: &InputAngles) -> HybridState {
        let [ca, sa, cb, sb, _, _] = trig(a);
        HybridState::from_terms(
            1,
            [
                (BasisLabel::new(R, 3, &[P]), ca * cb),
                (BasisLabel::new(R, 3, &[M]), ca * sb),
                (BasisLabel::new(L, 3, &[M]), sa * cb),
                (BasisLabel::new(L, 3, &[P]), sa * sb),
            ]
            .map(|(l, v)| (l, Complex64::new(v, 0.0))),
        )
        .expect("normalized by construction")
    }

    /// Un-normalized CNOT output for matched amplitude `r`.
    pub fn cnot_lossy_output(a: &InputAngles, r: f64) -> HybridState {
        let [ca, sa, cb, sb, _, _] = trig(a);
        HybridState::from_terms(
            1,
            [
                (BasisLabel::new(R, 3, &[P]), ca * cb),
                (BasisLabel::new(R, 3, &[M]), ca * sb),
                (BasisLabel::new(L, 3, &[M]), sa / 2.0 * (cb * (r + 1.0) - sb * (r - 1.0))),
                (BasisLabel::new(L, 3, &[P]), sa / 2.0 * (sb * (r + 1.0) - cb * (r - 1.0))),
            ]
            .map(|(l, v)| (l, Complex64::new(v, 0.0))),
        )
        .expect("sub-normalized for r in [0, 1]")
    }

    pub fn toffoli_first_block(a: &InputAngles) -> HybridState {
        let [_, sa, cb, sb, cd, sd] = trig(a);
        let mut t = r_branch(a, 1);
        t.extend([
            (L, 8, [P, P], sa * cb * cd),
            (L, 8, [P, M], sa * cb * sd),
            (R, 8, [M, P], -sa * sb * cd),
            (R, 8, [M, M], -sa * sb * sd),
        ]);
        two_spin(&t)
    }

    pub fn toffoli_second_block(a: &InputAngles) -> HybridState {
        let [_, sa, cb, sb, cd, sd] = trig(a);
        let mut t = r_branch(a, 1);
        t.extend([
            (L, 12, [P, P], sa * cb * cd),
            (L, 12, [P, M], sa * cb * sd),
            (R, 12, [M, M], -sa * sb * cd),
            (R, 12, [M, P], -sa * sb * sd),
        ]);
        two_spin(&t)
    }

    pub fn toffoli_output(a: &InputAngles) -> HybridState {
        let [_, sa, cb, sb, cd, sd] = trig(a);
        let mut t = r_branch(a, 19);
        t.extend([
            (L, 19, [P, P], sa * cb * cd),
            (L, 19, [P, M], sa * cb * sd),
            (L, 19, [M, M], sa * sb * cd),
            (L, 19, [M, P], sa * sb * sd),
        ]);
        two_spin(&t)
    }

    pub fn fredkin_first_pass(a: &InputAngles) -> HybridState {
        let [_, sa, cb, sb, cd, sd] = trig(a);
        let mut t = r_branch(a, 1);
        t.extend([
            (L, 4, [P, P], sa * cb * cd),
            (R, 4, [P, M], -sa * cb * sd),
            (R, 4, [M, P], -sa * sb * cd),
            (L, 4, [M, M], sa * sb * sd),
        ]);
        two_spin(&t)
    }

    pub fn fredkin_second_pass(a: &InputAngles) -> HybridState {
        let [_, sa, cb, sb, cd, sd] = trig(a);
        let mut t = r_branch(a, 1);
        t.extend([
            (L, 3, [P, P], sa * cb * cd),
            (R, 3, [M, P], -sa * cb * sd),
            (R, 3, [P, M], -sa * sb * cd),
            (L, 3, [M, M], sa * sb * sd),
        ]);
        two_spin(&t)
    }

    pub fn fredkin_output(a: &InputAngles) -> HybridState {
        let [_, sa, cb, sb, cd, sd] = trig(a);
        let mut t = r_branch(a, 13);
        t.extend([
            (L, 13, [P, P], sa * cb * cd),
            (L, 13, [M, P], sa * cb * sd),
            (L, 13, [P, M], sa * sb * cd),
            (L, 13, [M, M], sa * sb * sd),
        ]);
        two_spin(&t)
    }
}

fn check_truth_table(report: &mut VerifyReport, gate: GateKind, opts: &VerifyOptions) -> Result<()> {
    let mut worst = 0.0f64;
    for input in ComputationalBasis::all(gate) {
        let state = HybridState::from_terms(
            gate.spin_count(),
            [(input.on_path(0), Complex64::new(1.0, 0.0))],
        )?;
        let want = ideal_truth_output(gate, &input)?;
        let want = HybridState::from_terms(
            gate.spin_count(),
            [(want.on_path(gate.terminal_path()), Complex64::new(1.0, 0.0))],
        )?;
        let trace = crate::circuits::Circuit::for_gate(gate).trace(&state, &ScatterRules::ideal(), opts.hwp)?;
        let got = &trace.output;
        let f = if got.survival > 0.0 { fidelity(&want, &got.output)? } else { 0.0 };
        worst = worst.max((1.0 - f).abs()).max((1.0 - got.survival).abs());
    }
    report.push(
        format!("truth-table/{}", gate.name()),
        worst <= STATE_TOLERANCE,
        format!("{} basis inputs, worst deviation {worst:.2e}", ComputationalBasis::all(gate).len()),
    );
    Ok(())
}

fn check_states<F>(
    report: &mut VerifyReport,
    name: &str,
    gate: GateKind,
    opts: &VerifyOptions,
    select: F,
) -> Result<()>
where
    F: Fn(&crate::circuits::Trace, &InputAngles) -> (HybridState, HybridState),
{
    let mut worst = 0.0f64;
    for angles in angle_grid() {
        let trace = trace_gate(gate, &angles, &ScatterRules::ideal(), opts.hwp)?;
        let (got, want) = select(&trace, &angles);
        worst = worst.max(distance_up_to_phase(&got, &want));
    }
    report.push(
        name,
        worst <= STATE_TOLERANCE,
        format!("125 angle triples, worst amplitude deviation {worst:.2e}"),
    );
    Ok(())
}

fn checkpoint_of(trace: &crate::circuits::Trace, name: &str) -> HybridState {
    trace.checkpoint(name).cloned().expect("circuit defines the checkpoint")
}

fn check_lossy_cnot(report: &mut VerifyReport, opts: &VerifyOptions) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let angles = InputAngles::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), 0.0)?;
        let r: f64 = rng.gen_range(0.0..=1.0);
        let got = trace_gate(GateKind::Cnot, &angles, &ScatterRules::new(r)?, opts.hwp)?.output.output;
        let want = expected::cnot_lossy_output(&angles, r);
        let diff = got
            .terms()
            .map(|(l, _)| l)
            .chain(want.terms().map(|(l, _)| l))
            .map(|l| (got.amplitude(l) - want.amplitude(l)).norm())
            .fold(0.0, f64::max);
        worst = worst.max(diff);
    }
    report.push(
        "lossy-output/CNOT",
        worst <= STATE_TOLERANCE,
        format!("25 random (alpha, beta, |r|), worst amplitude deviation {worst:.2e}"),
    );
    Ok(())
}

fn check_efficiency(report: &mut VerifyReport, gate: GateKind, opts: &VerifyOptions) -> Result<()> {
    let spec = AveragingSpec::new(gate, opts.nodes_per_angle)?;
    let mut worst = 0.0f64;
    for k in 0..=10 {
        let r = k as f64 / 10.0;
        let sim = average_efficiency_simulated(gate, &ScatterRules::new(r)?, &spec)?;
        worst = worst.max((sim - average_efficiency_closed_form(gate, r)?).abs());
    }
    report.push(
        format!("efficiency-closed-form/{}", gate.name()),
        worst <= EFFICIENCY_TOLERANCE,
        format!("|r| in {{0, 0.1, ..., 1}}, worst deviation {worst:.2e}"),
    );
    Ok(())
}

fn check_convergence(report: &mut VerifyReport, gate: GateKind, opts: &VerifyOptions) -> Result<()> {
    let n = opts.nodes_per_angle;
    let r = 99.0 / 101.0;
    let avg = GateAverager::new(gate, &ScatterRules::new(r)?)?;
    let coarse = avg.grid(n);
    let fine = avg.grid(2 * n);
    let df = (fine.fidelity - coarse.fidelity).abs();
    let de = (fine.efficiency - coarse.efficiency).abs();
    report.push(
        format!("quadrature-convergence/{}", gate.name()),
        df <= CONVERGENCE_TOLERANCE && de <= CONVERGENCE_TOLERANCE,
        format!("|r| = 99/101, {n} vs {} nodes: fidelity change {df:.2e}, efficiency change {de:.2e}", 2 * n),
    );
    Ok(())
}

/// Runs every check. Errors are reserved for invalid options; failing checks
/// are reported in the returned report.
pub fn cmd_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    AveragingSpec::new(GateKind::Cnot, opts.nodes_per_angle)?;
    let mut report = VerifyReport::default();
    for gate in GateKind::ALL {
        check_truth_table(&mut report, gate, opts)?;
    }

    use checkpoint::*;
    check_states(&mut report, "checkpoint/toffoli-first-block", GateKind::Toffoli, opts, |t, a| {
        (checkpoint_of(t, TOFFOLI_FIRST_BLOCK), expected::toffoli_first_block(a))
    })?;
    check_states(&mut report, "checkpoint/toffoli-second-block", GateKind::Toffoli, opts, |t, a| {
        (checkpoint_of(t, TOFFOLI_SECOND_BLOCK), expected::toffoli_second_block(a))
    })?;
    check_states(&mut report, "checkpoint/fredkin-first-pass", GateKind::Fredkin, opts, |t, a| {
        (checkpoint_of(t, FREDKIN_FIRST_PASS), expected::fredkin_first_pass(a))
    })?;
    check_states(&mut report, "checkpoint/fredkin-second-pass", GateKind::Fredkin, opts, |t, a| {
        (checkpoint_of(t, FREDKIN_SECOND_PASS), expected::fredkin_second_pass(a))
    })?;
    check_states(&mut report, "output/CNOT", GateKind::Cnot, opts, |t, a| {
        (t.output.output.clone(), expected::cnot_output(a))
    })?;
    check_states(&mut report, "output/Toffoli", GateKind::Toffoli, opts, |t, a| {
        (t.output.output.clone(), expected::toffoli_output(a))
    })?;
    check_states(&mut report, "output/Fredkin", GateKind::Fredkin, opts, |t, a| {
        (t.output.output.clone(), expected::fredkin_output(a))
    })?;
    check_lossy_cnot(&mut report, opts)?;

    for gate in GateKind::ALL {
        check_efficiency(&mut report, gate, opts)?;
    }
    for gate in GateKind::ALL {
        check_convergence(&mut report, gate, opts)?;
    }
    Ok(report)
}
