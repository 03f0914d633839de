//! Primitive element actions: polarizing beam splitters, half-wave plates,
//! microwave Hadamard pulses on an NV spin, photon scattering off an
//! NV-cavity unit, and optical switches.
//!
//! Every function takes a state by reference and returns the transformed
//! state. Amplitudes below [`PRUNE_TOLERANCE`](crate::state::PRUNE_TOLERANCE)
//! are dropped from the result.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::cavity::ScatterRules;
use crate::error::{Error, Result};
use crate::state::{BasisLabel, HybridState, Path, Polarization, Spin};

/// Where a PBS sends each `(polarization, input path)`.
///
/// Paths that are not input ports of the splitter pass through untouched.
/// On an input port, every polarization that shows up must have an entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbsRouting {
    table: BTreeMap<(Polarization, Path), Path>,
    ports: BTreeSet<Path>,
}

impl PbsRouting {
    pub fn new<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = ((Polarization, Path), Path)>,
    {
        let table: BTreeMap<_, _> = entries.into_iter().collect();
        let ports = table.keys().map(|&(_, p)| p).collect();
        Self { table, ports }
    }

    /// A splitter with one input port: R is transmitted to `transmitted`,
    /// L is reflected to `reflected`.
    pub fn split(input: Path, transmitted: Path, reflected: Path) -> Self {
        Self::new([
            ((Polarization::R, input), transmitted),
            ((Polarization::L, input), reflected),
        ])
    }

    /// A splitter recombining R arriving on `r_in` and L arriving on `l_in`
    /// into `out`. The opposite polarizations leave through `dark`.
    pub fn merge(r_in: Path, l_in: Path, out: Path, dark: Path) -> Self {
        Self::new([
            ((Polarization::R, r_in), out),
            ((Polarization::L, l_in), out),
            ((Polarization::L, r_in), dark),
            ((Polarization::R, l_in), dark),
        ])
    }

    pub fn route(&self, pol: Polarization, path: Path) -> Result<Path> {
        if !self.ports.contains(&path) {
            return Ok(path);
        }
        self.table
            .get(&(pol, path))
            .copied()
            .ok_or(Error::IncompleteRouting { pol, path })
    }
}

/// Sign convention of the 22.5° half-wave plate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HadamardConvention {
    /// `R -> (R + L)/sqrt2`, `L -> (R - L)/sqrt2`.
    #[default]
    Standard,
    /// `R -> (L - R)/sqrt2`, `L -> (R + L)/sqrt2`. The other self-inverse
    /// choice; kept so the verifier can show that it breaks the circuits.
    Flipped,
}

fn remap<F>(state: &HybridState, mut f: F) -> Result<HybridState>
where
    F: FnMut(&BasisLabel, Complex64, &mut dyn FnMut(BasisLabel, Complex64)) -> Result<()>,
{
    let mut out: BTreeMap<BasisLabel, Complex64> = BTreeMap::new();
    for (label, &amp) in state.terms() {
        f(label, amp, &mut |l, a| *out.entry(l).or_default() += a)?;
    }
    Ok(HybridState::from_map_unchecked(state.spin_count(), out))
}

fn check_nv(state: &HybridState, nv_index: usize) -> Result<()> {
    if nv_index >= state.spin_count() {
        return Err(Error::Shape(format!(
            "NV index {nv_index} out of range for {} spins",
            state.spin_count()
        )));
    }
    Ok(())
}

/// Routes every amplitude through a polarizing beam splitter.
pub fn apply_pbs(state: &HybridState, routing: &PbsRouting) -> Result<HybridState> {
    remap(state, |label, amp, emit| {
        let path = routing.route(label.pol, label.path)?;
        emit(BasisLabel { path, ..label.clone() }, amp);
        Ok(())
    })
}

/// Half-wave plate at 0°: `sigma_z` on the photon polarization on `path`.
pub fn apply_hwp_sigma_z(state: &HybridState, path: Path) -> HybridState {
    remap(state, |label, amp, emit| {
        let flip = label.path == path && label.pol == Polarization::L;
        emit(label.clone(), if flip { -amp } else { amp });
        Ok(())
    })
    .expect("sigma_z cannot fail")
}

/// Half-wave plate at 22.5°: polarization Hadamard on `path`.
pub fn apply_hwp_hadamard(state: &HybridState, path: Path) -> HybridState {
    apply_hwp_hadamard_with(state, path, HadamardConvention::Standard)
}

pub fn apply_hwp_hadamard_with(
    state: &HybridState,
    path: Path,
    convention: HadamardConvention,
) -> HybridState {
    let h = FRAC_1_SQRT_2;
    // (coefficient on R, coefficient on L) of the image of each input.
    let (image_r, image_l) = match convention {
        HadamardConvention::Standard => ((h, h), (h, -h)),
        HadamardConvention::Flipped => ((-h, h), (h, h)),
    };
    remap(state, |label, amp, emit| {
        if label.path != path {
            emit(label.clone(), amp);
            return Ok(());
        }
        let (to_r, to_l) = match label.pol {
            Polarization::R => image_r,
            Polarization::L => image_l,
        };
        emit(BasisLabel { pol: Polarization::R, ..label.clone() }, amp * to_r);
        emit(BasisLabel { pol: Polarization::L, ..label.clone() }, amp * to_l);
        Ok(())
    })
    .expect("Hadamard cannot fail")
}

/// Microwave Hadamard on NV spin `nv_index`:
/// `|+> -> (|+> + |->)/sqrt2`, `|-> -> (|+> - |->)/sqrt2`.
pub fn apply_electron_hadamard(state: &HybridState, nv_index: usize) -> Result<HybridState> {
    check_nv(state, nv_index)?;
    let h = FRAC_1_SQRT_2;
    remap(state, |label, amp, emit| {
        let sign = match label.spins[nv_index] {
            Spin::Plus => h,
            Spin::Minus => -h,
        };
        let mut plus = label.clone();
        plus.spins[nv_index] = Spin::Plus;
        let mut minus = label.clone();
        minus.spins[nv_index] = Spin::Minus;
        emit(plus, amp * h);
        emit(minus, amp * sign);
        Ok(())
    })
}

/// Photon on `path` reflects off the cavity holding NV `nv_index`.
///
/// `(R,+)` and `(L,-)` are scaled by `r_matched`, `(R,-)` and `(L,+)` by
/// `r_mismatched`. Amplitudes on other paths are untouched.
pub fn apply_nv_scatter(
    state: &HybridState,
    nv_index: usize,
    path: Path,
    rules: &ScatterRules,
) -> Result<HybridState> {
    check_nv(state, nv_index)?;
    remap(state, |label, amp, emit| {
        if label.path != path {
            emit(label.clone(), amp);
            return Ok(());
        }
        let matched = matches!(
            (label.pol, label.spins[nv_index]),
            (Polarization::R, Spin::Plus) | (Polarization::L, Spin::Minus)
        );
        let factor = if matched {
            rules.r_matched()
        } else {
            rules.r_mismatched()
        };
        emit(label.clone(), amp * factor);
        Ok(())
    })
}

/// Moves everything on `from_path` to `to_path`, both polarizations.
pub fn apply_switch(state: &HybridState, from_path: Path, to_path: Path) -> HybridState {
    remap(state, |label, amp, emit| {
        let path = if label.path == from_path { to_path } else { label.path };
        emit(BasisLabel { path, ..label.clone() }, amp);
        Ok(())
    })
    .expect("switch cannot fail")
}
