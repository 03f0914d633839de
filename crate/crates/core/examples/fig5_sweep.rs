//! Average fidelity and efficiency of all three gates against
//! g/sqrt(kappa gamma), written as CSV.
//!
//!     cargo run --release --example fig5_sweep -- fig5.csv

use hybrid_gates::{cmd_sweep, SweepConfig};

fn main() -> hybrid_gates::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "fig5.csv".into());
    let config = SweepConfig {
        output_path: Some(out.clone().into()),
        ..SweepConfig::default()
    };
    let rows = cmd_sweep(&config)?;
    println!("wrote {} rows to {out}", rows.len());
    for (gate, row) in rows.iter().filter(|(_, r)| r.g_over_sqrt_kg == 0.5 || r.g_over_sqrt_kg == 10.0) {
        println!(
            "  {gate:<8} x = {:>4}: F = {:.6}, eta = {:.6}",
            row.g_over_sqrt_kg, row.f_avg, row.eta_avg_sim
        );
    }
    Ok(())
}
