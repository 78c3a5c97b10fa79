use std::fmt::Write;

use super::ir::{GateBodyOp, Instruction, InstructionKind, Program};

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn param_suffix<T: ToString>(params: &[T]) -> String {
    if params.is_empty() {
        String::new()
    } else {
        format!("({})", join(params, ","))
    }
}

pub fn write_instruction(out: &mut String, inst: &Instruction) {
    if let Some(cond) = &inst.condition {
        let _ = write!(out, "if({}=={}) ", cond.register, cond.value);
    }
    let _ = match inst.kind {
        InstructionKind::Gate => writeln!(
            out,
            "{}{} {};",
            inst.gate_name,
            param_suffix(&inst.params),
            join(&inst.qubit_operands, ",")
        ),
        InstructionKind::Measure => writeln!(
            out,
            "measure {} -> {};",
            inst.qubit_operands[0], inst.clbit_operands[0]
        ),
        InstructionKind::Reset => writeln!(out, "reset {};", inst.qubit_operands[0]),
        InstructionKind::Barrier => writeln!(out, "barrier {};", join(&inst.qubit_operands, ",")),
    };
}

impl Program {
    /// Serializes back to OpenQASM 2.0 text that parses to the same circuit.
    pub fn to_qasm(&self) -> String {
        let mut out = String::from("OPENQASM 2.0;\n");
        if self.includes_qelib1 {
            out.push_str("include \"qelib1.inc\";\n");
        }
        for def in self.gates.iter() {
            match &def.body {
                None => {
                    let _ = writeln!(
                        out,
                        "opaque {}{} {};",
                        def.name,
                        param_suffix(&def.params),
                        def.qubits.join(",")
                    );
                }
                Some(body) => {
                    let _ = writeln!(
                        out,
                        "gate {}{} {} {{",
                        def.name,
                        param_suffix(&def.params),
                        def.qubits.join(",")
                    );
                    for op in body {
                        let _ = match op {
                            GateBodyOp::Call { name, params, args } => writeln!(
                                out,
                                "  {name}{} {};",
                                param_suffix(params),
                                args.join(",")
                            ),
                            GateBodyOp::Barrier { args } => {
                                writeln!(out, "  barrier {};", args.join(","))
                            }
                        };
                    }
                    out.push_str("}\n");
                }
            }
        }
        for reg in &self.circuit.qubit_registers {
            let _ = writeln!(out, "qreg {}[{}];", reg.name, reg.size);
        }
        for reg in &self.circuit.clbit_registers {
            let _ = writeln!(out, "creg {}[{}];", reg.name, reg.size);
        }
        for inst in &self.circuit.instructions {
            write_instruction(&mut out, inst);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::qasm::parse_program;

    #[test]
    fn print_then_parse_is_stable() {
        let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\ngate g(t) a,b { rz(t*2) a; barrier a,b; cx a,b; }\n\
                   opaque o a;\nqreg q[2]; creg c[2];\nu3(pi/2,-0.5,1e-3) q[0]; g(pi) q[0],q[1]; o q[1];\n\
                   barrier q; if(c==2) x q[1]; measure q -> c; reset q[0];";
        let first = parse_program(src, "a.qasm").unwrap();
        let printed = first.to_qasm();
        let second = parse_program(&printed, "a.qasm").unwrap();
        let shape = |p: &crate::qasm::Program| {
            p.gates
                .iter()
                .map(|d| {
                    (
                        d.name.clone(),
                        d.params.clone(),
                        d.qubits.clone(),
                        d.body.clone(),
                    )
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(shape(&second), shape(&first));
        assert_eq!(
            second.circuit.instructions.len(),
            first.circuit.instructions.len()
        );
        for (a, b) in first
            .circuit
            .instructions
            .iter()
            .zip(&second.circuit.instructions)
        {
            assert_eq!(
                (a.kind, &a.gate_name, &a.params),
                (b.kind, &b.gate_name, &b.params)
            );
            assert_eq!(a.qubit_operands, b.qubit_operands);
            assert_eq!(a.clbit_operands, b.clbit_operands);
            assert_eq!(a.condition, b.condition);
        }
        assert_eq!(second.to_qasm(), printed);
    }
}
