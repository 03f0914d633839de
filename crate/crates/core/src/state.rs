//! Pure states of one photon (polarization and spatial mode) and one or two
//! NV electron spins, stored as a sparse map of complex amplitudes.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use arrayvec::ArrayVec;
use num_complex::Complex64;

use crate::circuits::GateKind;
use crate::error::{Error, Result};

/// Amplitudes with magnitude below this are dropped after every element.
pub const PRUNE_TOLERANCE: f64 = 1e-12;

/// States with `norm_sq` at or below this are treated as empty (photon lost).
pub const NORM_FLOOR: f64 = PRUNE_TOLERANCE * PRUNE_TOLERANCE;

/// Slack on the sub-normalization bound `norm_sq <= 1`.
pub const NORM_SLACK: f64 = 1e-12;

/// Circular polarization of the photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarization {
    R,
    L,
}

impl Polarization {
    pub const ALL: [Polarization; 2] = [Polarization::R, Polarization::L];

    pub fn index(self) -> usize {
        match self {
            Polarization::R => 0,
            Polarization::L => 1,
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarization::R => f.write_str("R"),
            Polarization::L => f.write_str("L"),
        }
    }
}

/// NV ground-state sublevel, `|+> = |m_s = +1>` and `|-> = |m_s = -1>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spin {
    Plus,
    Minus,
}

impl Spin {
    pub const ALL: [Spin; 2] = [Spin::Plus, Spin::Minus];

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Spin::Plus => 0,
            Spin::Minus => 1,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spin::Plus => f.write_str("+"),
            Spin::Minus => f.write_str("\u{2212}"),
        }
    }
}

/// Spins of the one or two NV centers, in circuit order.
pub type Spins = ArrayVec<Spin, 2>;

pub fn spins(list: &[Spin]) -> Spins {
    list.iter().copied().collect()
}

/// Spatial mode index, numbered as in the circuit diagrams. Path 0 is the
/// input port of every circuit.
pub type Path = u16;

/// One basis ket `|pol, path, spins>`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    pub pol: Polarization,
    pub path: Path,
    pub spins: Spins,
}

impl BasisLabel {
    pub fn new(pol: Polarization, path: Path, spin_list: &[Spin]) -> Self {
        Self {
            pol,
            path,
            spins: spins(spin_list),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}", self.pol, self.path)?;
        for s in &self.spins {
            write!(f, ",{s}")?;
        }
        f.write_str("\u{27e9}")
    }
}

/// Input angles of the product state
/// `(cos a |R> + sin a |L>) (cos b |+> + sin b |->) (cos d |+> + sin d |->)`.
///
/// `delta` is ignored by single-spin gates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputAngles {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
}

impl InputAngles {
    /// Wraps each angle into `[0, 2pi)`; rejects non-finite input.
    pub fn new(alpha: f64, beta: f64, delta: f64) -> Result<Self> {
        let wrap = |name: &str, x: f64| {
            if x.is_finite() {
                Ok(x.rem_euclid(TAU))
            } else {
                Err(Error::InvalidParameter(format!("angle {name} must be finite, got {x}")))
            }
        };
        Ok(Self {
            alpha: wrap("alpha", alpha)?,
            beta: wrap("beta", beta)?,
            delta: wrap("delta", delta)?,
        })
    }

    pub fn from_degrees(alpha: f64, beta: f64, delta: f64) -> Result<Self> {
        Self::new(alpha.to_radians(), beta.to_radians(), delta.to_radians())
    }
}

/// Sub-normalized pure state of the hybrid system.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridState {
    spin_count: usize,
    amplitudes: BTreeMap<BasisLabel, Complex64>,
}

impl HybridState {
    /// The zero vector (every photon lost).
    pub fn empty(spin_count: usize) -> Result<Self> {
        if !(1..=2).contains(&spin_count) {
            return Err(Error::Shape(format!(
                "spin count must be 1 or 2, got {spin_count}"
            )));
        }
        Ok(Self {
            spin_count,
            amplitudes: BTreeMap::new(),
        })
    }

    /// Builds a state from explicit terms. Repeated labels are summed.
    pub fn from_terms<I>(spin_count: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisLabel, Complex64)>,
    {
        let mut state = Self::empty(spin_count)?;
        for (label, amp) in terms {
            if label.spins.len() != spin_count {
                return Err(Error::Shape(format!(
                    "label {label} has {} spins, state has {spin_count}",
                    label.spins.len()
                )));
            }
            state.accumulate(label, amp);
        }
        state.prune();
        state.check_sub_normalized()?;
        Ok(state)
    }

    pub fn spin_count(&self) -> usize {
        self.spin_count
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, label: &BasisLabel) -> Complex64 {
        self.amplitudes.get(label).copied().unwrap_or_default()
    }

    /// Terms in label order.
    pub fn terms(&self) -> impl Iterator<Item = (&BasisLabel, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(self)
    }

    /// Keeps only the amplitude found on `path`.
    pub fn project_path(&self, path: Path) -> HybridState {
        Self {
            spin_count: self.spin_count,
            amplitudes: self
                .amplitudes
                .iter()
                .filter(|(l, _)| l.path == path)
                .map(|(l, a)| (l.clone(), *a))
                .collect(),
        }
    }

    /// Every path that currently carries amplitude.
    pub fn occupied_paths(&self) -> Vec<Path> {
        let mut paths: Vec<Path> = self.amplitudes.keys().map(|l| l.path).collect();
        paths.sort_unstable();
        paths.dedup();
        paths
    }

    /// `a * x + b * y`, rejected if the result leaves the unit ball.
    pub fn superpose(a: Complex64, x: &HybridState, b: Complex64, y: &HybridState) -> Result<Self> {
        if x.spin_count != y.spin_count {
            return Err(Error::Shape("superposed states differ in spin count".into()));
        }
        let terms = x
            .terms()
            .map(|(l, v)| (l.clone(), a * v))
            .chain(y.terms().map(|(l, v)| (l.clone(), b * v)));
        Self::from_terms(x.spin_count, terms)
    }

    /// Multiplies every amplitude by `factor`; rejected if the result leaves the unit ball.
    pub fn scaled(&self, factor: Complex64) -> Result<Self> {
        Self::from_terms(
            self.spin_count,
            self.terms().map(|(l, a)| (l.clone(), factor * a)),
        )
    }

    pub(crate) fn from_map_unchecked(
        spin_count: usize,
        amplitudes: BTreeMap<BasisLabel, Complex64>,
    ) -> Self {
        let mut state = Self {
            spin_count,
            amplitudes,
        };
        state.prune();
        state
    }

    pub(crate) fn accumulate(&mut self, label: BasisLabel, amp: Complex64) {
        *self.amplitudes.entry(label).or_default() += amp;
    }

    fn prune(&mut self) {
        self.amplitudes.retain(|_, a| a.norm() >= PRUNE_TOLERANCE);
    }

    fn check_sub_normalized(&self) -> Result<()> {
        let n = self.norm_sq();
        if n > 1.0 + NORM_SLACK {
            return Err(Error::InvalidParameter(format!(
                "state norm^2 = {n} exceeds 1"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for HybridState {
    /// Renders as `0.500+0.000i |L,4,+,−⟩ + ...` in label order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.amplitudes.is_empty() {
            return f.write_str("0");
        }
        for (i, (label, amp)) in self.amplitudes.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}{}i {label}", fmt_component(amp.re), fmt_signed(amp.im))?;
        }
        Ok(())
    }
}

// Keeps "-0.000" out of golden output.
fn fmt_component(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" { "0.000".into() } else { s }
}

fn fmt_signed(x: f64) -> String {
    let s = fmt_component(x);
    if s.starts_with('-') { s } else { format!("+{s}") }
}

/// Normalized product input of the given gate, with the photon on path 0.
pub fn product_input(angles: &InputAngles, gate: GateKind) -> HybridState {
    let photon = [
        (Polarization::R, angles.alpha.cos()),
        (Polarization::L, angles.alpha.sin()),
    ];
    let first = [(Spin::Plus, angles.beta.cos()), (Spin::Minus, angles.beta.sin())];
    let second = [(Spin::Plus, angles.delta.cos()), (Spin::Minus, angles.delta.sin())];
    let spin_count = gate.spin_count();

    let mut map = BTreeMap::new();
    for (pol, cp) in photon {
        for (s1, c1) in first {
            if spin_count == 1 {
                map.insert(BasisLabel::new(pol, 0, &[s1]), Complex64::new(cp * c1, 0.0));
            } else {
                for (s2, c2) in second {
                    map.insert(
                        BasisLabel::new(pol, 0, &[s1, s2]),
                        Complex64::new(cp * c1 * c2, 0.0),
                    );
                }
            }
        }
    }
    HybridState::from_map_unchecked(spin_count, map)
}

/// `sum |amplitude|^2`.
pub fn norm_sq(state: &HybridState) -> f64 {
    state.amplitudes.values().map(|a| a.norm_sqr()).sum()
}

/// Rescales to unit norm.
pub fn normalize(state: &HybridState) -> Result<HybridState> {
    let n = norm_sq(state);
    if n <= NORM_FLOOR {
        return Err(Error::DegenerateState);
    }
    let inv = 1.0 / n.sqrt();
    Ok(HybridState {
        spin_count: state.spin_count,
        amplitudes: state
            .amplitudes
            .iter()
            .map(|(l, a)| (l.clone(), a * inv))
            .collect(),
    })
}

/// Inner product `<a|b>`, conjugate-linear in `a`.
pub fn overlap(a: &HybridState, b: &HybridState) -> Result<Complex64> {
    if a.spin_count != b.spin_count {
        return Err(Error::Shape(format!(
            "overlap of states with {} and {} spins",
            a.spin_count, b.spin_count
        )));
    }
    let (small, large, conj_small) = if a.len() <= b.len() {
        (a, b, true)
    } else {
        (b, a, false)
    };
    let mut acc = Complex64::default();
    for (label, x) in &small.amplitudes {
        if let Some(y) = large.amplitudes.get(label) {
            acc += if conj_small { x.conj() * y } else { y.conj() * x };
        }
    }
    Ok(acc)
}
