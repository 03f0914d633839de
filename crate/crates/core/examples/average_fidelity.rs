//! Average fidelity by grid refinement, with a Monte Carlo cross-check.
//!
//!     cargo run --release --example average_fidelity

use hybrid_gates::{
    monte_carlo_fidelity, refine_average_fidelity, AveragingSpec, GateAverager, GateKind,
    ScatterRules,
};

fn main() -> hybrid_gates::Result<()> {
    for gate in GateKind::ALL {
        println!("{gate}");
        for r in [0.0, 0.5, 0.98] {
            let rules = ScatterRules::new(r)?;
            let avg = GateAverager::new(gate, &rules)?;
            let coarse: Vec<String> = [4, 8, 16, 32]
                .iter()
                .map(|&n| format!("{:.10}", avg.grid(n).fidelity))
                .collect();
            let est = refine_average_fidelity(gate, &rules, &AveragingSpec::new(gate, 32)?)?;
            let mc = monte_carlo_fidelity(gate, &rules, 200_000, 1)?;
            println!("  |r| = {r}: grids 4..32 [{}]", coarse.join(", "));
            println!(
                "    refined {:.12} at {} nodes (last change {:.1e}), Monte Carlo {:.6} +- {:.6}",
                est.value, est.nodes_per_angle, est.delta, mc.mean, mc.std_error
            );
        }
    }
    Ok(())
}
