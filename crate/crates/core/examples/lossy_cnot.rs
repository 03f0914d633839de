//! CNOT with a finite coupling: the L branch loses amplitude and picks up an
//! admixture of the unflipped spin.
//!
//!     cargo run --example lossy_cnot -- 0.8

use hybrid_gates::{fidelity, run_cnot, InputAngles, ScatterRules};
use std::f64::consts::FRAC_PI_2;

fn main() -> hybrid_gates::Result<()> {
    let x: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("coupling ratio must be a number"))
        .unwrap_or(0.8);
    let rules = ScatterRules::from_coupling_ratio(x)?;
    println!("g/sqrt(kappa gamma) = {x}, |r| = {:.6}\n", rules.r_matched());

    for (alpha, beta) in [(0.0, 0.0), (FRAC_PI_2, 0.0), (FRAC_PI_2 / 2.0, 0.4), (1.2, 2.5)] {
        let angles = InputAngles::new(alpha, beta, 0.0)?;
        let ideal = run_cnot(&angles, &ScatterRules::ideal())?;
        let real = run_cnot(&angles, &rules)?;
        println!("alpha = {alpha:.3}, beta = {beta:.3}");
        println!("  ideal:     {}", ideal.output);
        println!("  realistic: {}", real.output);
        println!(
            "  fidelity {:.8}, efficiency {:.8}\n",
            fidelity(&ideal.output, &real.output)?,
            real.survival
        );
    }
    Ok(())
}
