//! Reflection of a single photon off a single-sided cavity holding one NV
//! center, in the weak-excitation limit.
//!
//! All rates and frequencies share one (arbitrary) unit. On resonance only the
//! ratio `g / sqrt(kappa * gamma)` matters, so the usual convention is
//! `kappa = gamma = 1` and `g` equal to that ratio.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Physical parameters of one NV-cavity unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    /// NV-cavity coupling strength.
    pub g: f64,
    /// Cavity field damping rate.
    pub kappa: f64,
    /// NV dipole decay rate.
    pub gamma: f64,
    /// Cavity mode frequency.
    pub omega_c: f64,
    /// NV transition frequency.
    pub omega_0: f64,
    /// Probe photon frequency.
    pub omega_p: f64,
}

impl CavityParams {
    /// A unit with cavity, emitter and probe all at frequency `omega`.
    pub fn resonant(g: f64, kappa: f64, gamma: f64, omega: f64) -> Result<Self> {
        let params = Self {
            g,
            kappa,
            gamma,
            omega_c: omega,
            omega_0: omega,
            omega_p: omega,
        };
        params.validate()?;
        Ok(params)
    }

    /// Resonant unit with `kappa = gamma = 1`, so that `g` is the coupling ratio.
    pub fn from_coupling_ratio(g_over_sqrt_kg: f64) -> Result<Self> {
        Self::resonant(g_over_sqrt_kg, 1.0, 1.0, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        validate_rates(self.g, self.kappa, self.gamma)?;
        for (name, w) in [
            ("omega_c", self.omega_c),
            ("omega_0", self.omega_0),
            ("omega_p", self.omega_p),
        ] {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and non-negative, got {w}"
                )));
            }
        }
        Ok(())
    }

    pub fn is_resonant(&self) -> bool {
        let scale = self.omega_c.abs().max(self.omega_0.abs()).max(self.omega_p.abs()).max(1.0);
        let tol = 1e-12 * scale;
        (self.omega_c - self.omega_p).abs() <= tol && (self.omega_0 - self.omega_p).abs() <= tol
    }

    /// `g / sqrt(kappa * gamma)`.
    pub fn coupling_ratio(&self) -> f64 {
        self.g / (self.kappa * self.gamma).sqrt()
    }
}

fn validate_rates(g: f64, kappa: f64, gamma: f64) -> Result<()> {
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "kappa must be finite and positive, got {kappa}"
        )));
    }
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma must be finite and positive, got {gamma}"
        )));
    }
    if !(g.is_finite() && g >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "g must be finite and non-negative, got {g}"
        )));
    }
    Ok(())
}

/// Complex reflection coefficient `r(omega_p)` of the NV-cavity unit.
pub fn reflection_coefficient(params: &CavityParams) -> Result<Complex64> {
    params.validate()?;
    let cavity_detuning = Complex64::new(0.0, params.omega_c - params.omega_p);
    let emitter = Complex64::new(params.gamma / 2.0, params.omega_0 - params.omega_p);
    let g2 = params.g * params.g;
    let half_kappa = params.kappa / 2.0;
    let numerator = (cavity_detuning - half_kappa) * emitter + g2;
    let denominator = (cavity_detuning + half_kappa) * emitter + g2;
    Ok(numerator / denominator)
}

/// Reflection coefficient on resonance, `(4g^2 - kappa*gamma) / (4g^2 + kappa*gamma)`.
///
/// Equals -1 for an empty (cold) cavity and tends to 1 as `g` grows.
pub fn resonant_reflection(g: f64, kappa: f64, gamma: f64) -> Result<f64> {
    validate_rates(g, kappa, gamma)?;
    let kg = kappa * gamma;
    let g2 = 4.0 * g * g;
    Ok((g2 - kg) / (g2 + kg))
}

/// Conditional amplitudes picked up by the photon when it reflects off an
/// NV-cavity unit.
///
/// A photon whose polarization drives the transition allowed from the
/// current spin state (R with `|+>`, L with `|->`) sees the hot cavity and
/// reflects with amplitude `r_matched`; otherwise it sees the cold cavity and
/// picks up `r_mismatched = -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterRules {
    r_matched: f64,
    r_mismatched: f64,
}

impl ScatterRules {
    pub fn new(r_matched: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r_matched) {
            return Err(Error::InvalidParameter(format!(
                "matched reflection amplitude must lie in [0, 1], got {r_matched}"
            )));
        }
        Ok(Self {
            r_matched,
            r_mismatched: -1.0,
        })
    }

    /// Strong-coupling limit: matched amplitude 1, mismatched -1.
    pub fn ideal() -> Self {
        Self {
            r_matched: 1.0,
            r_mismatched: -1.0,
        }
    }

    /// Rules for a resonant unit with the given `g / sqrt(kappa * gamma)`.
    pub fn from_coupling_ratio(g_over_sqrt_kg: f64) -> Result<Self> {
        make_scatter_rules(&CavityParams::from_coupling_ratio(g_over_sqrt_kg)?)
    }

    pub fn r_matched(&self) -> f64 {
        self.r_matched
    }

    pub fn r_mismatched(&self) -> f64 {
        self.r_mismatched
    }

    pub fn is_ideal(&self) -> bool {
        self.r_matched == 1.0
    }
}

/// Builds the scattering rules of a resonant unit.
///
/// The matched amplitude is stored as `|r|`, so below `g = sqrt(kappa*gamma)/2`
/// (where `r` turns negative) the sign is dropped. Off-resonant parameters are
/// rejected.
pub fn make_scatter_rules(params: &CavityParams) -> Result<ScatterRules> {
    params.validate()?;
    if !params.is_resonant() {
        return Err(Error::OffResonance);
    }
    let r = resonant_reflection(params.g, params.kappa, params.gamma)?;
    ScatterRules::new(r.abs().min(1.0))
}
