//! The built-in consistency checks, as run by `hybrid-gates verify`.
//!
//!     cargo run --release --example verify_report

use hybrid_gates::{cmd_verify, VerifyOptions};

fn main() -> hybrid_gates::Result<()> {
    let report = cmd_verify(&VerifyOptions::default())?;
    println!("{report}");
    let coarse = cmd_verify(&VerifyOptions { nodes_per_angle: 4, ..VerifyOptions::default() })?;
    println!("\nwith 4 nodes per angle:");
    for c in coarse.failures() {
        println!("  {c}");
    }
    Ok(())
}
