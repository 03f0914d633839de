//! Intermediate states of the Toffoli circuit after each interaction block.
//!
//!     cargo run --example toffoli_checkpoints

use hybrid_gates::{trace_gate, GateKind, HadamardConvention, InputAngles, ScatterRules};

fn main() -> hybrid_gates::Result<()> {
    let angles = InputAngles::from_degrees(60.0, 30.0, 20.0)?;
    let trace = trace_gate(GateKind::Toffoli, &angles, &ScatterRules::ideal(), HadamardConvention::Standard)?;
    for (name, state) in &trace.checkpoints {
        println!("{name}:\n  {state}\n");
    }
    println!("output:\n  {}", trace.output.output);
    println!("survival: {:.12}", trace.output.survival);

    // A wave plate with the mirrored Hadamard spoils the intermediate states.
    let flipped = trace_gate(GateKind::Toffoli, &angles, &ScatterRules::ideal(), HadamardConvention::Flipped)?;
    println!("\nwith the mirrored wave-plate Hadamard, first block:\n  {}", flipped.checkpoints[0].1);
    Ok(())
}
