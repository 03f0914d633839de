//! Fidelity and efficiency of the gates, for single inputs and averaged
//! uniformly over the input angles in `[0, 2pi]`.
//!
//! The fidelity compares the ideal output with the *normalized* realistic
//! output, so it measures the state quality given that the photon came out.
//! The efficiency is the probability that it came out. The two are reported
//! separately and never multiplied.
//!
//! Averages are uniform over every angle in `[0, 2pi)`. The mean over the
//! photon angle `alpha` is taken in closed form; the spin angles use the
//! periodic trapezoidal rule. The efficiency integrand is a trigonometric
//! polynomial of degree 2 in each angle, so any grid with at least 3 nodes
//! per angle integrates it exactly. The fidelity integrand is smooth but can
//! sit close to a singularity when the cavity is lossy, so
//! [`average_fidelity`] doubles the grid until two successive grids agree.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cavity::ScatterRules;
use crate::circuits::{spin_amplitudes, GateKind, GateResult, GateTransfer};
use crate::error::{Error, Result};
use crate::quadrature::{CompensatedSum, PeriodicNodes};
use crate::state::{normalize, overlap, HybridState, NORM_FLOOR};

/// Default number of quadrature nodes per angle.
pub const DEFAULT_NODES_PER_ANGLE: usize = 32;

/// Agreement required between successive grids of the refinement.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-12;

/// Quadrature grid for averaging over the input angles of one gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AveragingSpec {
    /// Uniform nodes on each angle (refinement starts here).
    pub nodes_per_angle: usize,
    /// 2 for CNOT (alpha, beta), 3 for Toffoli and Fredkin.
    pub angle_count: usize,
    /// Refinement stops with an error beyond this many nodes per angle.
    pub max_nodes_per_angle: usize,
}

impl AveragingSpec {
    pub fn new(gate: GateKind, nodes_per_angle: usize) -> Result<Self> {
        let angle_count = gate.angle_count();
        let max_nodes_per_angle = if angle_count == 2 { 1 << 14 } else { 4096 };
        let spec = Self {
            nodes_per_angle,
            angle_count,
            max_nodes_per_angle: max_nodes_per_angle.max(nodes_per_angle),
        };
        spec.validate_for(gate)?;
        Ok(spec)
    }

    pub fn with_max_nodes(mut self, max_nodes_per_angle: usize) -> Self {
        self.max_nodes_per_angle = max_nodes_per_angle;
        self
    }

    pub fn validate_for(&self, gate: GateKind) -> Result<()> {
        if self.nodes_per_angle < 4 {
            return Err(Error::InvalidParameter(format!(
                "need at least 4 nodes per angle, got {}",
                self.nodes_per_angle
            )));
        }
        if self.angle_count != gate.angle_count() {
            return Err(Error::InvalidParameter(format!(
                "{gate} is averaged over {} angles, spec has {}",
                gate.angle_count(),
                self.angle_count
            )));
        }
        Ok(())
    }
}

/// One averaged data point for one gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsRow {
    pub g_over_sqrt_kg: f64,
    pub r_abs: f64,
    pub f_avg: f64,
    pub eta_avg_sim: f64,
    pub eta_avg_closed: f64,
}

/// Result of refining a quadrature by node doubling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    /// Value on the finest grid evaluated.
    pub value: f64,
    /// Nodes per angle of that grid.
    pub nodes_per_angle: usize,
    /// `|Q(n) - Q(n/2)|` for the last doubling.
    pub delta: f64,
    pub converged: bool,
}

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// `|<ideal|normalize(realistic)>|^2`.
pub fn fidelity(ideal: &HybridState, realistic: &HybridState) -> Result<f64> {
    let realistic = normalize(realistic)?;
    let ov = overlap(ideal, &realistic)?;
    Ok(ov.norm_sqr().min(1.0))
}

/// Photon survival probability of a run.
pub fn efficiency(result: &GateResult) -> f64 {
    result.survival
}

/// Closed-form average efficiency as a polynomial in `|r|`.
pub fn average_efficiency_closed_form(gate: GateKind, r_abs: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r_abs) {
        return Err(Error::InvalidParameter(format!(
            "|r| must lie in [0, 1], got {r_abs}"
        )));
    }
    let r = r_abs;
    let r2 = r * r;
    Ok(match gate {
        GateKind::Cnot => (3.0 + r2) / 4.0,
        GateKind::Toffoli => {
            (3.0 + r2) * horner(&[27.0, 2.0, 4.0, -2.0, 1.0], r) / 128.0
        }
        GateKind::Fredkin => {
            horner(
                &[
                    1361.0, -156.0, 286.0, 28.0, 239.0, 152.0, 148.0, -24.0, -1.0, 4.0, 14.0,
                    -4.0, 1.0,
                ],
                r,
            ) / 2048.0
        }
    })
}

/// Evaluates `sum c[k] x^k`.
fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Average of fidelity and efficiency on a fixed grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAverages {
    pub fidelity: f64,
    pub efficiency: f64,
}

/// Integrand evaluator for one gate under given rules.
///
/// The output for input angles `(alpha, beta, delta)` is
/// `cos(alpha) X + sin(alpha) Y`, where `X` and `Y` depend only on the spin
/// angles. Fidelity and survival are therefore ratios and sums of quadratic
/// forms in `(cos alpha, sin alpha)`, and their mean over `alpha` has a closed
/// form. Only the spin angles are sampled.
#[derive(Debug, Clone)]
pub struct GateAverager {
    gate: GateKind,
    real: GateTransfer,
    ideal: GateTransfer,
}

/// Quadratic forms in `(cos alpha, sin alpha)` for one spin node.
#[derive(Debug, Clone, Copy)]
struct AlphaForms {
    // <ideal|real> = c^2 ov_cc + c s ov_cs + s^2 ov_ss
    ov_cc: Complex64,
    ov_cs: Complex64,
    ov_ss: Complex64,
    // |real|^2
    n_cc: f64,
    n_cs: f64,
    n_ss: f64,
}

impl AlphaForms {
    fn eval(&self, c: f64, s: f64) -> (f64, f64) {
        let (cc, cs, ss) = (c * c, c * s, s * s);
        let survival = cc * self.n_cc + cs * self.n_cs + ss * self.n_ss;
        let ov = self.ov_cc * cc + self.ov_cs * cs + self.ov_ss * ss;
        let f = if survival > NORM_FLOOR {
            (ov.norm_sqr() / survival).min(1.0)
        } else {
            0.0
        };
        (f, survival.max(0.0))
    }

    /// Exact mean over `alpha` of the fidelity and the survival.
    ///
    /// With `theta = 2 alpha` the survival is `p0 + rho cos(theta - phi)`
    /// and `|<ideal|real>|^2` a trigonometric polynomial of degree 2, so the
    /// mean of their ratio follows from
    /// `mean(cos(k t) / (a + b cos t)) = (-b / (a + s))^k / s`,
    /// `s = sqrt(a^2 - b^2)`. The form below is rearranged around the
    /// survival minimum so it stays accurate when that minimum is near zero.
    fn alpha_mean(&self) -> (f64, f64) {
        let p0 = 0.5 * (self.n_cc + self.n_ss);
        let p1 = 0.5 * (self.n_cc - self.n_ss);
        let q1 = 0.5 * self.n_cs;
        let rho = p1.hypot(q1);
        let d_min = (p0 - rho).max(0.0);
        let d_max = p0 + rho;
        if d_max <= NORM_FLOOR {
            return (0.0, 0.0);
        }
        let e1 = Complex64::from_polar(1.0, q1.atan2(p1));

        // Fourier coefficients of <ideal|real> in theta.
        let i = Complex64::i();
        let o0 = 0.5 * (self.ov_cc + self.ov_ss);
        let o1 = 0.25 * (self.ov_cc - self.ov_ss - i * self.ov_cs);
        let om1 = 0.25 * (self.ov_cc - self.ov_ss + i * self.ov_cs);
        // ... and of its modulus squared in theta - phi.
        let m1 = ((o0 * om1.conj() + o1 * o0.conj()) * e1).re;
        let m2 = (o1 * om1.conj() * e1 * e1).re;

        let s = (d_min * d_max).sqrt();
        let tau = rho / (p0 + s);
        // |<ideal|real>|^2 at the survival minimum never exceeds d_min.
        let n_min = (o0 - o1 * e1 - om1 * e1.conj()).norm_sqr().min(d_min);
        let head = if s > 0.0 { n_min / s } else { 0.0 };
        // (1 - tau) / s
        let slope = ((d_min / d_max).sqrt() + 1.0) / (p0 + s);
        let f = head + slope * (2.0 * m1 - 2.0 * m2 * (1.0 + tau));
        (f.clamp(0.0, 1.0), p0)
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

impl GateAverager {
    pub fn new(gate: GateKind, rules: &ScatterRules) -> Result<Self> {
        Ok(Self {
            gate,
            real: GateTransfer::new(gate, rules)?,
            ideal: GateTransfer::new(gate, &ScatterRules::ideal())?,
        })
    }

    pub fn gate(&self) -> GateKind {
        self.gate
    }

    fn forms(&self, beta: f64, delta: f64) -> AlphaForms {
        let dim = self.real.dim();
        let half = dim / 2;
        let spin = spin_amplitudes(self.gate, beta, delta);
        let mut r_in = vec![0.0; dim];
        let mut l_in = vec![0.0; dim];
        r_in[..half].copy_from_slice(&spin);
        l_in[half..].copy_from_slice(&spin);

        let zero = Complex64::default();
        let (mut x, mut y) = (vec![zero; dim], vec![zero; dim]);
        let (mut xi, mut yi) = (vec![zero; dim], vec![zero; dim]);
        self.real.apply_real_into(&r_in, &mut x);
        self.real.apply_real_into(&l_in, &mut y);
        self.ideal.apply_real_into(&r_in, &mut xi);
        self.ideal.apply_real_into(&l_in, &mut yi);

        AlphaForms {
            ov_cc: dot(&xi, &x),
            ov_cs: dot(&xi, &y) + dot(&yi, &x),
            ov_ss: dot(&yi, &y),
            n_cc: dot(&x, &x).re,
            n_cs: 2.0 * dot(&x, &y).re,
            n_ss: dot(&y, &y).re,
        }
    }

    /// Fidelity and survival at one set of input angles. Inputs that never
    /// reach the output get fidelity 0.
    pub fn point(&self, alpha: f64, beta: f64, delta: f64) -> (f64, f64) {
        self.forms(beta, delta).eval(alpha.cos(), alpha.sin())
    }

    fn spin_nodes(&self, nodes: usize) -> Vec<(f64, f64)> {
        let grid = PeriodicNodes::new(nodes);
        match self.gate.angle_count() {
            2 => grid.angles.iter().map(|&b| (b, 0.0)).collect(),
            _ => grid
                .angles
                .iter()
                .flat_map(|&b| grid.angles.iter().map(move |&d| (b, d)))
                .collect(),
        }
    }

    /// Averages over all angles: `alpha` exactly, the spin angles on `nodes`
    /// uniform nodes each.
    pub fn grid(&self, nodes: usize) -> GridAverages {
        let spin_nodes = self.spin_nodes(nodes);
        let partial: Vec<(f64, f64)> = spin_nodes
            .par_iter()
            .map(|&(beta, delta)| self.forms(beta, delta).alpha_mean())
            .collect();
        reduce(&partial, spin_nodes.len())
    }

    /// Averages with every angle, `alpha` included, on `nodes` uniform nodes.
    pub fn grid_sampled(&self, nodes: usize) -> GridAverages {
        let grid = PeriodicNodes::new(nodes);
        let spin_nodes = self.spin_nodes(nodes);
        // Partial sums per spin node, reduced afterwards in a fixed order.
        let partial: Vec<(f64, f64)> = spin_nodes
            .par_iter()
            .map(|&(beta, delta)| {
                let forms = self.forms(beta, delta);
                let mut f_acc = CompensatedSum::default();
                let mut e_acc = CompensatedSum::default();
                for (c, s) in grid.cos.iter().zip(&grid.sin) {
                    let (f, e) = forms.eval(*c, *s);
                    f_acc.add(f);
                    e_acc.add(e);
                }
                (f_acc.value() / nodes as f64, e_acc.value() / nodes as f64)
            })
            .collect();
        reduce(&partial, spin_nodes.len())
    }

    /// Doubles the grid from `spec.nodes_per_angle` until the average
    /// fidelity changes by at most `tol`, or the next grid would exceed
    /// `spec.max_nodes_per_angle`.
    pub fn refine_fidelity(&self, spec: &AveragingSpec, tol: f64) -> Result<QuadratureEstimate> {
        spec.validate_for(self.gate)?;
        let mut n = spec.nodes_per_angle;
        let mut prev = self.grid(n).fidelity;
        let mut delta = f64::INFINITY;
        while n * 2 <= spec.max_nodes_per_angle {
            n *= 2;
            let next = self.grid(n).fidelity;
            delta = (next - prev).abs();
            prev = next;
            if delta <= tol {
                return Ok(QuadratureEstimate {
                    value: next,
                    nodes_per_angle: n,
                    delta,
                    converged: true,
                });
            }
        }
        Ok(QuadratureEstimate {
            value: prev,
            nodes_per_angle: n,
            delta,
            converged: false,
        })
    }

    /// Plain Monte Carlo over uniform angles.
    pub fn monte_carlo_fidelity(&self, samples: usize, seed: u64) -> MonteCarloEstimate {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tau = std::f64::consts::TAU;
        let mut sum = CompensatedSum::default();
        let mut sum_sq = CompensatedSum::default();
        for _ in 0..samples {
            let alpha = rng.gen_range(0.0..tau);
            let beta = rng.gen_range(0.0..tau);
            let delta = if self.gate.angle_count() == 3 {
                rng.gen_range(0.0..tau)
            } else {
                0.0
            };
            let (f, _) = self.point(alpha, beta, delta);
            sum.add(f);
            sum_sq.add(f * f);
        }
        let n = samples as f64;
        let mean = sum.value() / n;
        let var = (sum_sq.value() / n - mean * mean).max(0.0) * n / (n - 1.0);
        MonteCarloEstimate {
            mean,
            std_error: (var / n).sqrt(),
            samples,
        }
    }
}

fn reduce(partial: &[(f64, f64)], count: usize) -> GridAverages {
    let f: CompensatedSum = partial.iter().map(|p| p.0).collect();
    let e: CompensatedSum = partial.iter().map(|p| p.1).collect();
    GridAverages {
        fidelity: f.value() / count as f64,
        efficiency: e.value() / count as f64,
    }
}

/// Average fidelity over all input angles, refined until successive grids
/// agree within [`CONVERGENCE_TOLERANCE`].
pub fn average_fidelity(gate: GateKind, rules: &ScatterRules, spec: &AveragingSpec) -> Result<f64> {
    let est = refine_average_fidelity(gate, rules, spec)?;
    if est.converged {
        Ok(est.value)
    } else {
        Err(Error::NotConverged {
            nodes_per_angle: est.nodes_per_angle,
            delta: est.delta,
            estimate: est.value,
        })
    }
}

pub fn refine_average_fidelity(
    gate: GateKind,
    rules: &ScatterRules,
    spec: &AveragingSpec,
) -> Result<QuadratureEstimate> {
    GateAverager::new(gate, rules)?.refine_fidelity(spec, CONVERGENCE_TOLERANCE)
}

/// Average fidelity on exactly `spec.nodes_per_angle` nodes per angle.
pub fn fixed_average_fidelity(
    gate: GateKind,
    rules: &ScatterRules,
    spec: &AveragingSpec,
) -> Result<f64> {
    spec.validate_for(gate)?;
    Ok(GateAverager::new(gate, rules)?.grid(spec.nodes_per_angle).fidelity)
}

/// Average survival probability of the simulated circuit.
pub fn average_efficiency_simulated(
    gate: GateKind,
    rules: &ScatterRules,
    spec: &AveragingSpec,
) -> Result<f64> {
    spec.validate_for(gate)?;
    Ok(GateAverager::new(gate, rules)?.grid(spec.nodes_per_angle).efficiency)
}

pub fn monte_carlo_fidelity(
    gate: GateKind,
    rules: &ScatterRules,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least 2 samples".into()));
    }
    Ok(GateAverager::new(gate, rules)?.monte_carlo_fidelity(samples, seed))
}
