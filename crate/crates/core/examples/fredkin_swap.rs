//! The Fredkin gate swaps the two spins when the photon is L.
//!
//!     cargo run --example fredkin_swap

use hybrid_gates::{fidelity, run_fredkin, InputAngles, ScatterRules};

fn main() -> hybrid_gates::Result<()> {
    // Photon L, spins (+, -).
    let swap = InputAngles::from_degrees(90.0, 0.0, 90.0)?;
    println!("L photon:  {}", run_fredkin(&swap, &ScatterRules::ideal())?.output);
    let keep = InputAngles::from_degrees(0.0, 0.0, 90.0)?;
    println!("R photon:  {}", run_fredkin(&keep, &ScatterRules::ideal())?.output);

    let angles = InputAngles::from_degrees(45.0, 30.0, 70.0)?;
    let ideal = run_fredkin(&angles, &ScatterRules::ideal())?;
    println!("\n{:>6} {:>12} {:>12}", "|r|", "fidelity", "efficiency");
    for r in [0.0, 0.25, 0.5, 0.75, 0.9, 1.0] {
        let real = run_fredkin(&angles, &ScatterRules::new(r)?)?;
        println!("{r:>6.2} {:>12.8} {:>12.8}", fidelity(&ideal.output, &real.output)?, real.survival);
    }
    Ok(())
}
