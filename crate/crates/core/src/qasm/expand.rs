use std::collections::HashMap;

use super::expr::Expr;
use super::ir::{GateBodyOp, GateTable, Instruction, InstructionKind, Operand, QuantumCircuit};
use crate::error::QasmError;

/// Maximum nesting of user gate definitions during expansion.
pub const MAX_EXPANSION_DEPTH: usize = 32;

/// Inlines calls to user-defined gates, recursively, substituting operands
/// and parameters. Standard and opaque gates are left as they are.
///
/// A definition whose body contains no gate at all (only barriers, or
/// nothing) has no decomposition and stays a single call, so expansion never
/// lowers the gate count.
pub fn expand_user_gates(
    circuit: &QuantumCircuit,
    definitions: &GateTable,
) -> Result<QuantumCircuit, QasmError> {
    let mut out = circuit.clone();
    out.instructions.clear();
    let mut stack = Vec::new();
    for inst in &circuit.instructions {
        out.instructions
            .extend(expand_instruction(inst, definitions, &mut stack)?);
    }
    Ok(out)
}

fn expand_instruction(
    inst: &Instruction,
    definitions: &GateTable,
    stack: &mut Vec<String>,
) -> Result<Vec<Instruction>, QasmError> {
    if inst.kind != InstructionKind::Gate {
        return Ok(vec![inst.clone()]);
    }
    let Some(def) = definitions.get(&inst.gate_name) else {
        return Ok(vec![inst.clone()]);
    };
    let Some(body) = &def.body else {
        return Ok(vec![inst.clone()]);
    };
    if stack.len() >= MAX_EXPANSION_DEPTH || stack.contains(&def.name) {
        return Err(QasmError::RecursionLimit {
            gate: def.name.clone(),
            limit: MAX_EXPANSION_DEPTH,
        });
    }

    let qubit_map: HashMap<&str, &Operand> = def
        .qubits
        .iter()
        .map(String::as_str)
        .zip(&inst.qubit_operands)
        .collect();
    let param_map: HashMap<&str, &Expr> = def
        .params
        .iter()
        .map(String::as_str)
        .zip(&inst.params)
        .collect();
    let map_args = |args: &[String]| -> Vec<Operand> {
        args.iter()
            .map(|a| (*qubit_map[a.as_str()]).clone())
            .collect()
    };

    stack.push(def.name.clone());
    let mut expanded = Vec::new();
    for op in body {
        match op {
            GateBodyOp::Call { name, params, args } => {
                let call = Instruction::gate(
                    name.clone(),
                    params.iter().map(|p| p.substitute(&param_map)).collect(),
                    map_args(args),
                    inst.span,
                )
                .with_condition(inst.condition.clone());
                expanded.extend(expand_instruction(&call, definitions, stack)?);
            }
            GateBodyOp::Barrier { args } => {
                expanded.push(Instruction::barrier(map_args(args), inst.span));
            }
        }
    }
    stack.pop();

    if expanded.iter().any(|i| i.kind == InstructionKind::Gate) {
        Ok(expanded)
    } else {
        Ok(vec![inst.clone()])
    }
}
