//! Every computational basis input of each gate, in the strong-coupling limit.
//!
//!     cargo run --example cnot_truth_table

use hybrid_gates::{Circuit, ComputationalBasis, GateKind, HybridState, ScatterRules};
use num_complex::Complex64;

fn main() -> hybrid_gates::Result<()> {
    for gate in GateKind::ALL {
        println!("{gate}");
        let circuit = Circuit::for_gate(gate);
        for input in ComputationalBasis::all(gate) {
            let state = HybridState::from_terms(
                gate.spin_count(),
                [(input.on_path(0), Complex64::new(1.0, 0.0))],
            )?;
            let result = circuit.run(&state, &ScatterRules::ideal())?;
            println!("  {state}  ->  {}", result.output);
        }
    }
    Ok(())
}
