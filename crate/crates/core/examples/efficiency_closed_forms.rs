//! Simulated average efficiency next to the closed-form polynomials.
//!
//!     cargo run --example efficiency_closed_forms

use hybrid_gates::{
    average_efficiency_closed_form, average_efficiency_simulated, AveragingSpec, GateKind,
    ScatterRules,
};

fn main() -> hybrid_gates::Result<()> {
    println!("{:>5} {:>22} {:>22} {:>22}", "|r|", "CNOT", "Toffoli", "Fredkin");
    for k in 0..=10 {
        let r = k as f64 / 10.0;
        let mut line = format!("{r:>5.1}");
        for gate in GateKind::ALL {
            let sim = average_efficiency_simulated(gate, &ScatterRules::new(r)?, &AveragingSpec::new(gate, 32)?)?;
            let closed = average_efficiency_closed_form(gate, r)?;
            line.push_str(&format!(" {sim:>11.8} ({:>+8.1e})", sim - closed));
        }
        println!("{line}");
    }
    Ok(())
}
