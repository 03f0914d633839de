#![allow(dead_code)]

use std::collections::BTreeMap;

use hybrid_gates::{BasisLabel, HybridState, Polarization, Spin};
use num_complex::Complex64;

/// A single-spin vector `a|+> + b|->`.
pub type SpinVec = [f64; 2];

pub fn ket(a: f64, b: f64) -> SpinVec {
    [a, b]
}

pub const PLUS: SpinVec = [1.0, 0.0];
pub const MINUS: SpinVec = [0.0, 1.0];

/// Sum of `coef |pol, path> (x) spins[0] (x) spins[1] ...`, built by
/// expanding the tensor products.
#[derive(Default)]
pub struct Builder {
    spin_count: usize,
    terms: BTreeMap<BasisLabel, Complex64>,
}

impl Builder {
    pub fn new(spin_count: usize) -> Self {
        Self {
            spin_count,
            terms: BTreeMap::new(),
        }
    }

    pub fn add(mut self, coef: f64, pol: Polarization, path: u16, spins: &[SpinVec]) -> Self {
        assert_eq!(spins.len(), self.spin_count);
        let mut partial: Vec<(Vec<Spin>, f64)> = vec![(Vec::new(), coef)];
        for v in spins {
            partial = partial
                .into_iter()
                .flat_map(|(labels, c)| {
                    [(Spin::Plus, v[0]), (Spin::Minus, v[1])].map(|(s, a)| {
                        let mut l = labels.clone();
                        l.push(s);
                        (l, c * a)
                    })
                })
                .collect();
        }
        for (labels, c) in partial {
            *self
                .terms
                .entry(BasisLabel::new(pol, path, &labels))
                .or_default() += Complex64::new(c, 0.0);
        }
        self
    }

    pub fn build(self) -> HybridState {
        HybridState::from_terms(self.spin_count, self.terms).unwrap()
    }
}

/// Largest amplitude difference over the union of both supports.
pub fn max_diff(a: &HybridState, b: &HybridState) -> f64 {
    a.terms()
        .map(|(l, _)| l)
        .chain(b.terms().map(|(l, _)| l))
        .map(|l| (a.amplitude(l) - b.amplitude(l)).norm())
        .fold(0.0, f64::max)
}

/// Deterministic angle triples covering the torus.
pub fn angle_samples(n: usize, seed: u64) -> Vec<(f64, f64, f64)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    (0..n)
        .map(|_| (rng.gen_range(0.0..tau), rng.gen_range(0.0..tau), rng.gen_range(0.0..tau)))
        .collect()
}
