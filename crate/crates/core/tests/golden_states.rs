//! Rendered states compared against checked-in text. Set `UPDATE_GOLDEN=1`
//! to rewrite the files after an intended change.

use std::fmt::Write;
use std::path::PathBuf;

use hybrid_gates::{
    trace_gate, Circuit, ComputationalBasis, GateKind, HadamardConvention, HybridState,
    InputAngles, ScatterRules,
};
use num_complex::Complex64;

fn check(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_GOLDEN=1)", path.display()));
    if expected != actual {
        for (i, (e, a)) in expected.lines().zip(actual.lines()).enumerate() {
            if e != a {
                panic!("{name} differs at line {}:\n  expected: {e}\n  actual:   {a}", i + 1);
            }
        }
        panic!("{name}: line count differs");
    }
}

#[test]
fn truth_tables() {
    let mut out = String::new();
    for gate in GateKind::ALL {
        writeln!(out, "{gate}").unwrap();
        for input in ComputationalBasis::all(gate) {
            let state = HybridState::from_terms(
                gate.spin_count(),
                [(input.on_path(0), Complex64::new(1.0, 0.0))],
            )
            .unwrap();
            let result = Circuit::for_gate(gate).run(&state, &ScatterRules::ideal()).unwrap();
            writeln!(out, "{state} -> {}", result.output).unwrap();
        }
    }
    check("truth_tables.txt", &out);
}

#[test]
fn traces() {
    let angles = InputAngles::from_degrees(60.0, 30.0, 20.0).unwrap();
    let mut out = String::new();
    for gate in GateKind::ALL {
        let trace = trace_gate(gate, &angles, &ScatterRules::ideal(), HadamardConvention::Standard).unwrap();
        writeln!(out, "[{gate}]").unwrap();
        for (name, state) in &trace.checkpoints {
            writeln!(out, "{name}: {state}").unwrap();
        }
        writeln!(out, "output: {}", trace.output.output).unwrap();
    }
    check("traces.txt", &out);
}

#[test]
fn lossy_outputs() {
    let angles = InputAngles::from_degrees(50.0, 25.0, 75.0).unwrap();
    let mut out = String::new();
    for gate in GateKind::ALL {
        for r in [0.0, 0.5] {
            let trace = trace_gate(gate, &angles, &ScatterRules::new(r).unwrap(), HadamardConvention::Standard).unwrap();
            writeln!(out, "{gate} |r|={r}: {}", trace.output.output).unwrap();
            writeln!(out, "  survival {:.9}", trace.output.survival).unwrap();
        }
    }
    check("lossy_outputs.txt", &out);
}

#[test]
fn empty_state_renders_as_zero() {
    assert_eq!(HybridState::empty(1).unwrap().to_string(), "0");
}
