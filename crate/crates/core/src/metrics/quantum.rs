//! Per-circuit measurements for the eight quantum properties.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::qasm::{InstructionKind, QuantumCircuit};

/// Register-name prefixes that mark ancilla registers by default.
pub const DEFAULT_AUXILIARY_PREFIXES: &[&str] = &["anc", "aux"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumMetricSet {
    pub circuit_name: String,
    pub path: String,
    pub width: usize,
    pub depth: usize,
    pub gate_count_total: usize,
    pub gate_count_single: usize,
    pub gate_count_multi: usize,
    pub gate_complexity_score: usize,
    pub conditional_count: usize,
    pub quantum_cyclomatic: usize,
    pub measure_count: usize,
    pub nonterminal_measure_count: usize,
    pub reset_count: usize,
    pub midcircuit_reset_count: usize,
    pub auxiliary_qubit_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub total: usize,
    pub single: usize,
    pub multi: usize,
    pub score: usize,
}

pub fn measure_circuit(
    circuit: &QuantumCircuit,
    auxiliary_prefixes: &[String],
) -> QuantumMetricSet {
    let gates = gate_complexity(circuit);
    let (conditional_count, quantum_cyclomatic) = conditional_metrics(circuit);
    let (measure_count, nonterminal_measure_count) = measurement_metrics(circuit);
    let (reset_count, midcircuit_reset_count) = reset_metrics(circuit);
    QuantumMetricSet {
        circuit_name: circuit.name.clone(),
        path: circuit.source_path.clone(),
        width: circuit_width(circuit),
        depth: circuit_depth(circuit),
        gate_count_total: gates.total,
        gate_count_single: gates.single,
        gate_count_multi: gates.multi,
        gate_complexity_score: gates.score,
        conditional_count,
        quantum_cyclomatic,
        measure_count,
        nonterminal_measure_count,
        reset_count,
        midcircuit_reset_count,
        auxiliary_qubit_count: auxiliary_qubits(circuit, auxiliary_prefixes),
    }
}

/// Declared qubits, used or not.
pub fn circuit_width(circuit: &QuantumCircuit) -> usize {
    circuit.num_qubits
}

/// Greedy layering. Gates, measures and resets each take the next layer
/// after every wire they touch: their qubits, the measured clbit, and all
/// bits of a condition register. Barriers only align their qubit wires.
pub fn circuit_depth(circuit: &QuantumCircuit) -> usize {
    let mut layer = vec![0usize; circuit.num_qubits + circuit.num_clbits];
    for inst in &circuit.instructions {
        let wires = wires_of(circuit, inst);
        let front = wires.iter().map(|w| layer[*w]).max().unwrap_or(0);
        let level = if inst.kind == InstructionKind::Barrier {
            front
        } else {
            front + 1
        };
        for w in wires {
            layer[w] = level;
        }
    }
    layer.into_iter().max().unwrap_or(0)
}

/// Flat wire indices an instruction depends on; clbits follow the qubits.
pub fn wires_of(circuit: &QuantumCircuit, inst: &crate::qasm::Instruction) -> Vec<usize> {
    let mut wires: Vec<usize> = inst
        .qubit_operands
        .iter()
        .filter_map(|op| circuit.qubit_index(op))
        .collect();
    if inst.kind == InstructionKind::Barrier {
        return wires;
    }
    let clbit_base = circuit.num_qubits;
    wires.extend(
        inst.clbit_operands
            .iter()
            .filter_map(|op| circuit.clbit_index(op))
            .map(|c| clbit_base + c),
    );
    if let Some(cond) = &inst.condition {
        for c in circuit.creg_bits(&cond.register) {
            if !wires.contains(&(clbit_base + c)) {
                wires.push(clbit_base + c);
            }
        }
    }
    wires
}

pub fn gate_complexity(circuit: &QuantumCircuit) -> GateCounts {
    let mut counts = GateCounts {
        total: 0,
        single: 0,
        multi: 0,
        score: 0,
    };
    for inst in circuit
        .instructions
        .iter()
        .filter(|i| i.kind == InstructionKind::Gate)
    {
        let arity = inst.qubit_operands.len();
        counts.total += 1;
        if arity >= 2 {
            counts.multi += 1;
        } else {
            counts.single += 1;
        }
        counts.score += arity;
    }
    counts
}

/// `(conditioned instructions, conditioned instructions + 1)`.
pub fn conditional_metrics(circuit: &QuantumCircuit) -> (usize, usize) {
    let conditional = circuit
        .instructions
        .iter()
        .filter(|i| i.is_conditioned())
        .count();
    (conditional, conditional + 1)
}

/// `(measures, measures followed by a later operation on the same qubit)`.
pub fn measurement_metrics(circuit: &QuantumCircuit) -> (usize, usize) {
    let ops = &circuit.instructions;
    let mut total = 0;
    let mut nonterminal = 0;
    for (idx, inst) in ops.iter().enumerate() {
        if inst.kind != InstructionKind::Measure {
            continue;
        }
        total += 1;
        let qubit = &inst.qubit_operands[0];
        let later = ops[idx + 1..].iter().any(|next| {
            next.kind != InstructionKind::Barrier && next.qubit_operands.contains(qubit)
        });
        if later {
            nonterminal += 1;
        }
    }
    (total, nonterminal)
}

/// `(resets, resets preceded by a gate or measure on the same qubit)`.
pub fn reset_metrics(circuit: &QuantumCircuit) -> (usize, usize) {
    let (total, mid) = reset_flags(circuit)
        .into_iter()
        .fold((0, 0), |(t, m), is_mid| (t + 1, m + usize::from(is_mid)));
    (total, mid)
}

fn reset_flags(circuit: &QuantumCircuit) -> Vec<bool> {
    let ops = &circuit.instructions;
    ops.iter()
        .enumerate()
        .filter(|(_, i)| i.kind == InstructionKind::Reset)
        .map(|(idx, inst)| {
            let qubit = &inst.qubit_operands[0];
            ops[..idx].iter().any(|prev| {
                matches!(prev.kind, InstructionKind::Gate | InstructionKind::Measure)
                    && prev.qubit_operands.contains(qubit)
            })
        })
        .collect()
}

/// Distinct qubits that look like ancillas: in a register with a configured
/// prefix, target of a mid-circuit reset, or used by a multi-qubit gate but
/// never measured while something else is.
pub fn auxiliary_qubits(circuit: &QuantumCircuit, prefixes: &[String]) -> usize {
    let mut aux = BTreeSet::new();

    for q in 0..circuit.num_qubits {
        if let Some(reg) = circuit.qubit_register_of(q) {
            let name = reg.name.to_ascii_lowercase();
            if prefixes
                .iter()
                .any(|p| name.starts_with(&p.to_ascii_lowercase()))
            {
                aux.insert(q);
            }
        }
    }

    let mut measured = BTreeSet::new();
    let mut in_multi = BTreeSet::new();
    for inst in &circuit.instructions {
        match inst.kind {
            InstructionKind::Measure => {
                measured.extend(circuit.qubit_index(&inst.qubit_operands[0]));
            }
            InstructionKind::Gate if inst.qubit_operands.len() >= 2 => {
                in_multi.extend(
                    inst.qubit_operands
                        .iter()
                        .filter_map(|o| circuit.qubit_index(o)),
                );
            }
            _ => {}
        }
    }
    if !measured.is_empty() {
        aux.extend(in_multi.difference(&measured).copied());
    }

    let resets = circuit
        .instructions
        .iter()
        .filter(|i| i.kind == InstructionKind::Reset);
    for (inst, mid) in resets.zip(reset_flags(circuit)) {
        if mid {
            aux.extend(circuit.qubit_index(&inst.qubit_operands[0]));
        }
    }
    aux.len()
}
