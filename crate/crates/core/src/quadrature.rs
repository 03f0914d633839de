//! Uniform (periodic trapezoidal) nodes on `[0, 2pi)` and a compensated
//! accumulator for deterministic sums.

use std::f64::consts::TAU;

/// Nodes `2 pi k / n`, `k = 0..n`, with their cosines and sines.
#[derive(Debug, Clone)]
pub struct PeriodicNodes {
    pub angles: Vec<f64>,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl PeriodicNodes {
    pub fn new(n: usize) -> Self {
        let angles: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
        let cos = angles.iter().map(|a| a.cos()).collect();
        let sin = angles.iter().map(|a| a.sin()).collect();
        Self { angles, cos, sin }
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Mean of `f` over the uniform grid with `n` nodes on each of `dims` angles.
pub fn periodic_mean<F>(n: usize, dims: usize, mut f: F) -> f64
where
    F: FnMut(&[f64]) -> f64,
{
    let nodes = PeriodicNodes::new(n);
    let total = n.pow(dims as u32);
    let mut point = vec![0.0; dims];
    let mut acc = CompensatedSum::default();
    for flat in 0..total {
        let mut rem = flat;
        for slot in point.iter_mut().rev() {
            *slot = nodes.angles[rem % n];
            rem /= n;
        }
        acc.add(f(&point));
    }
    acc.value() / total as f64
}
