//! Reflection amplitude of the hot and cold cavity across the probe
//! detuning, then |r| on resonance against the coupling ratio.
//!
//!     cargo run --example reflection_spectrum

use hybrid_gates::{reflection_coefficient, resonant_reflection, CavityParams, ScatterRules};

fn main() -> hybrid_gates::Result<()> {
    let (kappa, gamma, g) = (1.0, 0.1, 1.5);
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "detune", "|r_hot|", "arg_hot", "|r_cold|", "arg_cold");
    for k in -8..=8 {
        let detune = 0.25 * k as f64;
        let mut hot = CavityParams::resonant(g, kappa, gamma, 0.0)?;
        hot.omega_c = 10.0;
        hot.omega_0 = 10.0;
        hot.omega_p = 10.0 + detune;
        let cold = CavityParams { g: 0.0, ..hot };
        let (rh, rc) = (reflection_coefficient(&hot)?, reflection_coefficient(&cold)?);
        println!(
            "{detune:>8.2} {:>10.5} {:>10.5} {:>10.5} {:>10.5}",
            rh.norm(),
            rh.arg(),
            rc.norm(),
            rc.arg()
        );
    }

    println!("\n{:>8} {:>12} {:>12}", "g/sqrt(kg)", "r", "|r| used");
    for x in [0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let r = resonant_reflection(x, 1.0, 1.0)?;
        let rules = ScatterRules::from_coupling_ratio(x)?;
        println!("{x:>8.2} {r:>12.6} {:>12.6}", rules.r_matched());
    }
    Ok(())
}
