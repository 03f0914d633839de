//! The building blocks on their own: a PBS split, a wave plate, a cavity
//! reflection and a recombining PBS.
//!
//!     cargo run --example optical_elements

use hybrid_gates::{
    apply_electron_hadamard, apply_hwp_hadamard, apply_nv_scatter, apply_pbs, product_input,
    GateKind, InputAngles, PbsRouting, ScatterRules,
};

fn main() -> hybrid_gates::Result<()> {
    let input = product_input(&InputAngles::from_degrees(30.0, 0.0, 0.0)?, GateKind::Cnot);
    println!("input:            {input}");
    let split = apply_pbs(&input, &PbsRouting::split(0, 1, 2))?;
    println!("after PBS:        {split}");
    let rotated = apply_hwp_hadamard(&split, 2);
    println!("HWP on path 2:    {rotated}");
    let spin = apply_electron_hadamard(&rotated, 0)?;
    println!("electron H:       {spin}");
    let lossy = apply_nv_scatter(&spin, 0, 2, &ScatterRules::new(0.6)?)?;
    println!("cavity, |r|=0.6:  {lossy}");
    let merged = apply_pbs(&lossy, &PbsRouting::merge(1, 2, 3, 4))?;
    println!("merged:           {merged}");
    for path in merged.occupied_paths() {
        println!("  path {path}: probability {:.6}", merged.project_path(path).norm_sq());
    }
    Ok(())
}
