use serde::{Deserialize, Serialize};

use super::expr::Expr;

/// 1-based source position of a statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
}

impl SourceSpan {
    pub fn new(line: usize, column: usize) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        Self { line, column }
    }
}

impl std::fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A named quantum or classical register.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub size: usize,
}

/// A single bit of a register, `name[index]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operand {
    pub register: String,
    pub index: usize,
}

impl Operand {
    pub fn new(register: impl Into<String>, index: usize) -> Self {
        Self {
            register: register.into(),
            index,
        }
    }
}

impl std::fmt::Display for Operand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[{}]", self.register, self.index)
    }
}

/// Classical guard of an `if (creg == value)` statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub register: String,
    pub value: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstructionKind {
    Gate,
    Measure,
    Reset,
    Barrier,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instruction {
    pub kind: InstructionKind,
    /// Gate identifier; empty for non-gate kinds.
    pub gate_name: String,
    /// Angle expressions. Validated by the parser, never evaluated.
    pub params: Vec<Expr>,
    pub qubit_operands: Vec<Operand>,
    pub clbit_operands: Vec<Operand>,
    pub condition: Option<Condition>,
    pub span: SourceSpan,
}

impl Instruction {
    pub fn gate(
        name: impl Into<String>,
        params: Vec<Expr>,
        qubits: Vec<Operand>,
        span: SourceSpan,
    ) -> Self {
        Self {
            kind: InstructionKind::Gate,
            gate_name: name.into(),
            params,
            qubit_operands: qubits,
            clbit_operands: Vec::new(),
            condition: None,
            span,
        }
    }

    pub fn measure(qubit: Operand, clbit: Operand, span: SourceSpan) -> Self {
        Self {
            kind: InstructionKind::Measure,
            gate_name: String::new(),
            params: Vec::new(),
            qubit_operands: vec![qubit],
            clbit_operands: vec![clbit],
            condition: None,
            span,
        }
    }

    pub fn reset(qubit: Operand, span: SourceSpan) -> Self {
        Self {
            kind: InstructionKind::Reset,
            gate_name: String::new(),
            params: Vec::new(),
            qubit_operands: vec![qubit],
            clbit_operands: Vec::new(),
            condition: None,
            span,
        }
    }

    pub fn barrier(qubits: Vec<Operand>, span: SourceSpan) -> Self {
        Self {
            kind: InstructionKind::Barrier,
            gate_name: String::new(),
            params: Vec::new(),
            qubit_operands: qubits,
            clbit_operands: Vec::new(),
            condition: None,
            span,
        }
    }

    pub fn with_condition(mut self, condition: Option<Condition>) -> Self {
        self.condition = condition;
        self
    }

    pub fn is_conditioned(&self) -> bool {
        self.condition.is_some()
    }
}

/// Parsed representation of one OpenQASM 2.0 program.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumCircuit {
    pub name: String,
    pub num_qubits: usize,
    pub num_clbits: usize,
    pub qubit_registers: Vec<Register>,
    pub clbit_registers: Vec<Register>,
    pub instructions: Vec<Instruction>,
    pub source_path: String,
}

impl QuantumCircuit {
    pub fn new(name: impl Into<String>, source_path: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            num_qubits: 0,
            num_clbits: 0,
            qubit_registers: Vec::new(),
            clbit_registers: Vec::new(),
            instructions: Vec::new(),
            source_path: source_path.into(),
        }
    }

    pub fn add_qreg(&mut self, name: impl Into<String>, size: usize) {
        self.qubit_registers.push(Register {
            name: name.into(),
            size,
        });
        self.num_qubits += size;
    }

    pub fn add_creg(&mut self, name: impl Into<String>, size: usize) {
        self.clbit_registers.push(Register {
            name: name.into(),
            size,
        });
        self.num_clbits += size;
    }

    pub fn qreg(&self, name: &str) -> Option<&Register> {
        self.qubit_registers.iter().find(|r| r.name == name)
    }

    pub fn creg(&self, name: &str) -> Option<&Register> {
        self.clbit_registers.iter().find(|r| r.name == name)
    }

    /// Flat wire index of a qubit operand, registers laid out in declaration order.
    pub fn qubit_index(&self, op: &Operand) -> Option<usize> {
        flat_index(&self.qubit_registers, op)
    }

    /// Flat index of a classical bit, registers laid out in declaration order.
    pub fn clbit_index(&self, op: &Operand) -> Option<usize> {
        flat_index(&self.clbit_registers, op)
    }

    /// Flat indices of every bit of a classical register.
    pub fn creg_bits(&self, name: &str) -> Vec<usize> {
        let mut offset = 0;
        for reg in &self.clbit_registers {
            if reg.name == name {
                return (offset..offset + reg.size).collect();
            }
            offset += reg.size;
        }
        Vec::new()
    }

    /// Register name owning the given flat qubit index.
    pub fn qubit_register_of(&self, qubit: usize) -> Option<&Register> {
        let mut offset = 0;
        for reg in &self.qubit_registers {
            if qubit < offset + reg.size {
                return Some(reg);
            }
            offset += reg.size;
        }
        None
    }
}

fn flat_index(registers: &[Register], op: &Operand) -> Option<usize> {
    let mut offset = 0;
    for reg in registers {
        if reg.name == op.register {
            return (op.index < reg.size).then_some(offset + op.index);
        }
        offset += reg.size;
    }
    None
}

/// One statement inside a `gate` body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GateBodyOp {
    Call {
        name: String,
        params: Vec<Expr>,
        args: Vec<String>,
    },
    Barrier {
        args: Vec<String>,
    },
}

/// A `gate` or `opaque` declaration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateDefinition {
    pub name: String,
    pub params: Vec<String>,
    pub qubits: Vec<String>,
    /// `None` for `opaque` declarations.
    pub body: Option<Vec<GateBodyOp>>,
    pub span: SourceSpan,
}

impl GateDefinition {
    pub fn is_opaque(&self) -> bool {
        self.body.is_none()
    }
}

/// User gate declarations in source order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GateTable {
    definitions: Vec<GateDefinition>,
}

impl GateTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, def: GateDefinition) {
        if let Some(existing) = self.definitions.iter_mut().find(|d| d.name == def.name) {
            *existing = def;
        } else {
            self.definitions.push(def);
        }
    }

    pub fn get(&self, name: &str) -> Option<&GateDefinition> {
        self.definitions.iter().find(|d| d.name == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GateDefinition> {
        self.definitions.iter()
    }

    pub fn len(&self) -> usize {
        self.definitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.definitions.is_empty()
    }
}

/// A parsed circuit together with the gate declarations collected alongside it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Program {
    pub circuit: QuantumCircuit,
    pub gates: GateTable,
    pub includes_qelib1: bool,
}
