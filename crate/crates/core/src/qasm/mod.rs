//! OpenQASM 2.0 frontend: lexer, parser, gate expansion and printer.

mod expand;
mod expr;
mod ir;
mod lexer;
mod parser;
mod print;
pub mod stdgates;

pub use expand::{expand_user_gates, MAX_EXPANSION_DEPTH};
pub use expr::{BinaryOp, Expr};
pub use ir::{
    Condition, GateBodyOp, GateDefinition, GateTable, Instruction, InstructionKind, Operand,
    Program, QuantumCircuit, Register, SourceSpan,
};
pub use parser::{parse_program, parse_qasm};
