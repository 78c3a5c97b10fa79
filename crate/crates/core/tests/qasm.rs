mod common;

use hqa_core::metrics::{circuit_depth, gate_complexity, measure_circuit, reset_metrics};
use hqa_core::qasm::{expand_user_gates, parse_program, parse_qasm, InstructionKind};
use hqa_core::QasmError;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn no_prefixes() -> Vec<String> {
    vec!["anc".to_string()]
}

#[test]
fn reference_circuits_parse() {
    for rel in common::REFERENCE_CIRCUITS {
        let c = common::load_circuit(rel);
        assert!(c.num_qubits > 0, "{rel}");
        assert!(!c.instructions.is_empty(), "{rel}");
    }
}

#[test]
fn reference_depths_by_hand() {
    let expect = [
        ("circuits/bell.qasm", 3),
        ("circuits/ghz3.qasm", 4),
        ("circuits/qft4.qasm", 9),
        ("circuits/teleportation.qasm", 8),
    ];
    for (rel, depth) in expect {
        assert_eq!(circuit_depth(&common::load_circuit(rel)), depth, "{rel}");
    }
}

#[test]
fn teleportation_metric_set() {
    let c = common::load_circuit("circuits/teleportation.qasm");
    let m = measure_circuit(&c, &no_prefixes());
    assert_eq!(m.width, 3);
    assert_eq!(m.conditional_count, 2);
    assert_eq!(m.quantum_cyclomatic, 3);
    assert_eq!(m.measure_count, 3);
    // q[0] and q[1] are measured before the conditioned gates act on q[2],
    // but they are never touched again, so every measurement is terminal.
    assert_eq!(m.nonterminal_measure_count, 0);
    assert_eq!(m.auxiliary_qubit_count, 0);
}

#[test]
fn grover_gate_mix() {
    let c = common::load_circuit("circuits/grover3.qasm");
    let g = gate_complexity(&c);
    assert_eq!(g.multi, 2);
    assert_eq!(g.total, g.single + g.multi);
    assert_eq!(g.total, 21);
}

#[test]
fn midcircuit_reset_and_measurement() {
    let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\n\
               reset q[0];\nh q[0];\nmeasure q[0] -> c[0];\nreset q[0];\nx q[0];\nmeasure q[0] -> c[0];\n";
    let c = parse_qasm(src, "r.qasm").unwrap();
    assert_eq!(reset_metrics(&c), (2, 1));
    let m = measure_circuit(&c, &no_prefixes());
    assert_eq!(m.measure_count, 2);
    assert_eq!(m.nonterminal_measure_count, 1);
}

#[test]
fn auxiliary_register_prefix() {
    let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nqreg ancilla[3];\nh q[0];\n";
    let c = parse_qasm(src, "a.qasm").unwrap();
    assert_eq!(measure_circuit(&c, &no_prefixes()).auxiliary_qubit_count, 3);
    assert_eq!(measure_circuit(&c, &[]).auxiliary_qubit_count, 0);
}

#[test]
fn errors_carry_positions() {
    let err = parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[0];\n", "e.qasm").unwrap_err();
    assert!(matches!(err, QasmError::UndefinedSymbol { .. }), "{err:?}");
    assert_eq!(err.span().map(|s| s.line), Some(3));

    let err = parse_qasm("OPENQASM 3.0;\nqubit q;\n", "v.qasm").unwrap_err();
    assert!(
        matches!(err, QasmError::UnsupportedVersion { .. }),
        "{err:?}"
    );

    let err = parse_qasm("OPENQASM 2.0;\nqreg q[2];\nU(0,0,0) q[2];\n", "i.qasm").unwrap_err();
    assert!(
        matches!(
            err,
            QasmError::IndexOutOfRange {
                index: 2,
                size: 2,
                ..
            }
        ),
        "{err:?}"
    );

    let err = parse_qasm("OPENQASM 2.0;\nqreg q[2]\nCX q[0],q[1];\n", "s.qasm").unwrap_err();
    assert!(matches!(err, QasmError::Syntax { .. }), "{err:?}");
    assert!(err.to_string().contains("syntax error"));
}

#[test]
fn recursive_definition_is_rejected_on_expansion() {
    let src = "OPENQASM 2.0;\nqreg q[1];\ngate loop a { loop a; }\nloop q[0];\n";
    let program = parse_program(src, "loop.qasm").unwrap();
    let err = expand_user_gates(&program.circuit, &program.gates).unwrap_err();
    assert!(matches!(err, QasmError::RecursionLimit { .. }), "{err:?}");
}

#[test]
fn expansion_inlines_nested_definitions() {
    let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[1];\n\
               gate bell a,b { h a; cx a,b; }\n\
               gate twice(t) a,b { bell a,b; rz(t) b; bell b,a; }\n\
               twice(pi/2) q[0],q[1];\nif(c==1) bell q[1],q[0];\n";
    let program = parse_program(src, "n.qasm").unwrap();
    assert_eq!(gate_complexity(&program.circuit).total, 2);
    let flat = expand_user_gates(&program.circuit, &program.gates).unwrap();
    let names: Vec<_> = flat
        .instructions
        .iter()
        .map(|i| i.gate_name.as_str())
        .collect();
    assert_eq!(names, ["h", "cx", "rz", "h", "cx", "h", "cx"]);
    assert_eq!(flat.instructions[3].qubit_operands[0].index, 1);
    assert!(flat.instructions[5].is_conditioned());
    assert!(flat.instructions[6].is_conditioned());
    assert_eq!(flat.instructions[2].params[0].to_string(), "(pi)/(2)");
}

fn random_source(seed: u64, max_ops: usize) -> String {
    common::random_qasm(&mut ChaCha8Rng::seed_from_u64(seed), max_ops)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generated_programs_parse_with_operands_in_range(seed in any::<u64>()) {
        let c = parse_qasm(&random_source(seed, 40), "g.qasm").unwrap();
        for inst in &c.instructions {
            for q in &inst.qubit_operands {
                prop_assert!(c.qubit_index(q).unwrap() < c.num_qubits);
            }
            for b in &inst.clbit_operands {
                prop_assert!(c.clbit_index(b).unwrap() < c.num_clbits);
            }
        }
    }

    #[test]
    fn parsing_is_deterministic(seed in any::<u64>()) {
        let src = random_source(seed, 40);
        prop_assert_eq!(parse_qasm(&src, "g.qasm").unwrap(), parse_qasm(&src, "g.qasm").unwrap());
    }

    #[test]
    fn greedy_depth_matches_dag_oracle(seed in any::<u64>()) {
        let c = parse_qasm(&random_source(seed, 60), "g.qasm").unwrap();
        prop_assert_eq!(circuit_depth(&c), common::oracle_depth(&c));
    }

    #[test]
    fn reserialization_preserves_metrics(seed in any::<u64>()) {
        let program = parse_program(&random_source(seed, 40), "g.qasm").unwrap();
        let again = parse_program(&program.to_qasm(), "g.qasm").unwrap();
        let prefixes = no_prefixes();
        prop_assert_eq!(
            measure_circuit(&program.circuit, &prefixes),
            measure_circuit(&again.circuit, &prefixes)
        );
    }

    #[test]
    fn width_bounds_and_depth_bounds(seed in any::<u64>()) {
        let c = parse_qasm(&random_source(seed, 40), "g.qasm").unwrap();
        let m = measure_circuit(&c, &no_prefixes());
        prop_assert_eq!(m.width, c.num_qubits);
        let non_barrier = c.instructions.iter().filter(|i| i.kind != InstructionKind::Barrier).count();
        prop_assert!(m.depth <= non_barrier);
        prop_assert_eq!(m.depth == 0, non_barrier == 0);
        prop_assert!(m.nonterminal_measure_count <= m.measure_count);
        prop_assert!(m.midcircuit_reset_count <= m.reset_count);
        prop_assert_eq!(m.quantum_cyclomatic, m.conditional_count + 1);
    }
}

/// Wraps random bodies in user gates and checks expansion against the
/// unexpanded circuit.
fn with_user_gates(seed: u64) -> String {
    let body = random_source(seed, 20);
    let mut src = String::new();
    let mut rest = String::new();
    for line in body.lines() {
        if line.starts_with("OPENQASM") || line.starts_with("include") || line.contains("reg ") {
            src.push_str(line);
            src.push('\n');
        } else {
            rest.push_str(line);
            rest.push('\n');
        }
    }
    src.push_str("gate pair a,b { h a; cx a,b; }\n");
    src.push_str("gate wrap(t) a,b { pair b,a; rz(t) a; barrier a,b; }\n");
    src.push_str("gate empty a { barrier a; }\n");
    src.push_str("wrap(0.5) q[0],anc[0];\nempty q[0];\n");
    src.push_str(&rest);
    src.push_str("pair anc[0],q[0];\n");
    src
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn expansion_never_removes_gates_or_changes_width(seed in any::<u64>()) {
        let program = parse_program(&with_user_gates(seed), "u.qasm").unwrap();
        let flat = expand_user_gates(&program.circuit, &program.gates).unwrap();
        prop_assert!(gate_complexity(&flat).total >= gate_complexity(&program.circuit).total);
        prop_assert_eq!(flat.num_qubits, program.circuit.num_qubits);
        prop_assert_eq!(circuit_depth(&flat), common::oracle_depth(&flat));
        let user: Vec<_> = flat.instructions.iter()
            .filter(|i| ["pair", "wrap"].contains(&i.gate_name.as_str()))
            .collect();
        prop_assert!(user.is_empty());
    }
}
