//! Recursive-descent parser for OpenQASM 2.0.

use std::collections::HashSet;
use std::path::Path;

use super::expr::{BinaryOp, Expr, UNARY_FUNCTIONS};
use super::ir::{
    Condition, GateBodyOp, GateDefinition, GateTable, Instruction, Operand, Program,
    QuantumCircuit, SourceSpan,
};
use super::lexer::{tokenize, Token, TokenKind};
use super::stdgates;
use crate::error::QasmError;

/// Parses a program and returns only the circuit.
pub fn parse_qasm(text: &str, path: &str) -> Result<QuantumCircuit, QasmError> {
    parse_program(text, path).map(|p| p.circuit)
}

/// Parses a program, keeping the user gate declarations for later expansion.
pub fn parse_program(text: &str, path: &str) -> Result<Program, QasmError> {
    let tokens = tokenize(text)?;
    let name = Path::new(path)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string());
    let mut parser = Parser {
        tokens,
        pos: 0,
        circuit: QuantumCircuit::new(name, path),
        gates: GateTable::new(),
        qelib1: false,
    };
    parser.program()?;
    Ok(Program {
        circuit: parser.circuit,
        gates: parser.gates,
        includes_qelib1: parser.qelib1,
    })
}

/// A statement operand before broadcasting: `reg` or `reg[i]`.
struct Argument {
    register: String,
    index: Option<usize>,
    span: SourceSpan,
}

/// Formal names visible while parsing a gate body.
struct GateScope<'a> {
    gate: &'a str,
    params: &'a [String],
    qubits: &'a [String],
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    circuit: QuantumCircuit,
    gates: GateTable,
    qelib1: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    fn eof_span(&self) -> SourceSpan {
        self.tokens
            .last()
            .map(|t| t.span)
            .unwrap_or(SourceSpan::new(1, 1))
    }

    fn current_span(&self) -> SourceSpan {
        self.peek()
            .map(|t| t.span)
            .unwrap_or_else(|| self.eof_span())
    }

    fn next(&mut self) -> Result<Token, QasmError> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| QasmError::syntax(self.eof_span(), "unexpected end of input"))?;
        self.pos += 1;
        Ok(tok)
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Token, QasmError> {
        let tok = self.next()?;
        if tok.kind == kind {
            Ok(tok)
        } else {
            Err(QasmError::syntax(
                tok.span,
                format!(
                    "expected {}, found {}",
                    kind.describe(),
                    tok.kind.describe()
                ),
            ))
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind() == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, SourceSpan), QasmError> {
        let tok = self.next()?;
        match tok.kind {
            TokenKind::Ident(name) => Ok((name, tok.span)),
            other => Err(QasmError::syntax(
                tok.span,
                format!("expected identifier, found {}", other.describe()),
            )),
        }
    }

    fn integer(&mut self) -> Result<(u64, SourceSpan), QasmError> {
        let tok = self.next()?;
        match &tok.kind {
            TokenKind::Int(text) => text
                .parse::<u64>()
                .map(|v| (v, tok.span))
                .map_err(|_| QasmError::syntax(tok.span, "integer literal too large")),
            other => Err(QasmError::syntax(
                tok.span,
                format!("expected integer, found {}", other.describe()),
            )),
        }
    }

    fn program(&mut self) -> Result<(), QasmError> {
        if matches!(self.peek_kind(), Some(TokenKind::Ident(k)) if k == "OPENQASM") {
            self.header()?;
        }
        while let Some(tok) = self.peek() {
            let span = tok.span;
            let TokenKind::Ident(keyword) = tok.kind.clone() else {
                return Err(QasmError::syntax(
                    span,
                    format!("expected statement, found {}", tok.kind.describe()),
                ));
            };
            match keyword.as_str() {
                "OPENQASM" => {
                    return Err(QasmError::syntax(span, "version header must come first"))
                }
                "include" => self.include()?,
                "qreg" | "creg" => self.register_decl()?,
                "gate" => self.gate_decl(false)?,
                "opaque" => self.gate_decl(true)?,
                "if" => self.conditional()?,
                _ => {
                    let instructions = self.quantum_op(None)?;
                    self.circuit.instructions.extend(instructions);
                }
            }
        }
        Ok(())
    }

    fn header(&mut self) -> Result<(), QasmError> {
        let (_, span) = self.ident()?;
        let tok = self.next()?;
        let version = match &tok.kind {
            TokenKind::Real(v) | TokenKind::Int(v) => v.clone(),
            other => {
                return Err(QasmError::syntax(
                    tok.span,
                    format!("expected version number, found {}", other.describe()),
                ))
            }
        };
        if version != "2.0" && version != "2" {
            return Err(QasmError::UnsupportedVersion { span, version });
        }
        self.expect(TokenKind::Semicolon)?;
        Ok(())
    }

    fn include(&mut self) -> Result<(), QasmError> {
        self.next()?;
        let tok = self.next()?;
        let TokenKind::Str(file) = tok.kind else {
            return Err(QasmError::syntax(
                tok.span,
                "expected quoted file name after include",
            ));
        };
        // Other include files are not resolved; gates they would provide
        // surface as undefined symbols at their first use.
        if file == "qelib1.inc" {
            self.qelib1 = true;
        }
        self.expect(TokenKind::Semicolon)?;
        Ok(())
    }

    fn symbol_taken(&self, name: &str) -> bool {
        self.circuit.qreg(name).is_some()
            || self.circuit.creg(name).is_some()
            || self.gates.contains(name)
            || stdgates::lookup(name, self.qelib1).is_some()
    }

    fn register_decl(&mut self) -> Result<(), QasmError> {
        let (keyword, _) = self.ident()?;
        let (name, span) = self.ident()?;
        self.expect(TokenKind::LBracket)?;
        let (size, size_span) = self.integer()?;
        self.expect(TokenKind::RBracket)?;
        self.expect(TokenKind::Semicolon)?;
        if size == 0 {
            return Err(QasmError::syntax(
                size_span,
                "register size must be positive",
            ));
        }
        if self.symbol_taken(&name) {
            return Err(QasmError::syntax(
                span,
                format!("`{name}` is already declared"),
            ));
        }
        if keyword == "qreg" {
            self.circuit.add_qreg(name, size as usize);
        } else {
            self.circuit.add_creg(name, size as usize);
        }
        Ok(())
    }

    fn gate_decl(&mut self, opaque: bool) -> Result<(), QasmError> {
        let (_, decl_span) = self.ident()?;
        let (name, name_span) = self.ident()?;
        if self.symbol_taken(&name) {
            return Err(QasmError::syntax(
                name_span,
                format!("`{name}` is already declared"),
            ));
        }
        let mut params = Vec::new();
        if self.eat(&TokenKind::LParen) && !self.eat(&TokenKind::RParen) {
            params = self.ident_list()?;
            self.expect(TokenKind::RParen)?;
        }
        let qubits = self.ident_list()?;
        check_distinct(&params, name_span, "parameter")?;
        check_distinct(&qubits, name_span, "qubit argument")?;

        let body = if opaque {
            self.expect(TokenKind::Semicolon)?;
            None
        } else {
            self.expect(TokenKind::LBrace)?;
            let scope = GateScope {
                gate: &name,
                params: &params,
                qubits: &qubits,
            };
            let mut body = Vec::new();
            while !self.eat(&TokenKind::RBrace) {
                body.push(self.gate_body_op(&scope)?);
            }
            Some(body)
        };
        self.gates.insert(GateDefinition {
            name,
            params,
            qubits,
            body,
            span: decl_span,
        });
        Ok(())
    }

    fn ident_list(&mut self) -> Result<Vec<String>, QasmError> {
        let mut out = vec![self.ident()?.0];
        while self.eat(&TokenKind::Comma) {
            out.push(self.ident()?.0);
        }
        Ok(out)
    }

    /// Arity of a callable gate as `(params, qubits)`.
    fn gate_signature(&self, name: &str) -> Option<(usize, usize)> {
        stdgates::lookup(name, self.qelib1).or_else(|| {
            self.gates
                .get(name)
                .map(|d| (d.params.len(), d.qubits.len()))
        })
    }

    fn gate_body_op(&mut self, scope: &GateScope<'_>) -> Result<GateBodyOp, QasmError> {
        let (name, span) = self.ident()?;
        if name == "barrier" {
            let args = self.ident_list()?;
            self.expect(TokenKind::Semicolon)?;
            for arg in &args {
                if !scope.qubits.contains(arg) {
                    return Err(QasmError::UndefinedSymbol {
                        span,
                        what: "gate argument",
                        name: arg.clone(),
                    });
                }
            }
            return Ok(GateBodyOp::Barrier { args });
        }
        if matches!(name.as_str(), "measure" | "reset" | "if") {
            return Err(QasmError::syntax(
                span,
                format!("`{name}` is not allowed inside a gate body"),
            ));
        }
        // A body may name its own gate; the expander rejects the cycle.
        let signature = if name == scope.gate {
            Some((scope.params.len(), scope.qubits.len()))
        } else {
            self.gate_signature(&name)
        };
        let Some((n_params, n_qubits)) = signature else {
            return Err(QasmError::UndefinedSymbol {
                span,
                what: "gate",
                name,
            });
        };
        let params = self.param_list(Some(scope.params))?;
        let args = self.ident_list()?;
        self.expect(TokenKind::Semicolon)?;
        check_arity(&name, span, n_params, params.len(), n_qubits, args.len())?;
        for arg in &args {
            if !scope.qubits.contains(arg) {
                return Err(QasmError::UndefinedSymbol {
                    span,
                    what: "gate argument",
                    name: arg.clone(),
                });
            }
        }
        check_distinct(&args, span, "qubit argument")?;
        Ok(GateBodyOp::Call { name, params, args })
    }

    fn param_list(&mut self, formals: Option<&[String]>) -> Result<Vec<Expr>, QasmError> {
        let mut params = Vec::new();
        if self.eat(&TokenKind::LParen) {
            if self.eat(&TokenKind::RParen) {
                return Ok(params);
            }
            params.push(self.expr(formals)?);
            while self.eat(&TokenKind::Comma) {
                params.push(self.expr(formals)?);
            }
            self.expect(TokenKind::RParen)?;
        }
        Ok(params)
    }

    fn conditional(&mut self) -> Result<(), QasmError> {
        let (_, span) = self.ident()?;
        self.expect(TokenKind::LParen)?;
        let (register, reg_span) = self.ident()?;
        self.expect(TokenKind::EqEq)?;
        let (value, _) = self.integer()?;
        self.expect(TokenKind::RParen)?;
        if self.circuit.creg(&register).is_none() {
            return Err(QasmError::UndefinedSymbol {
                span: reg_span,
                what: "classical register",
                name: register,
            });
        }
        if matches!(self.peek_kind(), Some(TokenKind::Ident(k)) if k == "barrier" || k == "if") {
            return Err(QasmError::syntax(
                self.current_span(),
                "only gates, measure and reset may be conditioned",
            ));
        }
        let mut instructions = self.quantum_op(Some(span))?;
        for inst in &mut instructions {
            inst.condition = Some(Condition {
                register: register.clone(),
                value,
            });
        }
        self.circuit.instructions.extend(instructions);
        Ok(())
    }

    /// Parses a gate call, `measure`, `reset` or `barrier`, broadcasting
    /// whole-register operands into one instruction per bit.
    fn quantum_op(&mut self, stmt_span: Option<SourceSpan>) -> Result<Vec<Instruction>, QasmError> {
        let (name, name_span) = self.ident()?;
        let span = stmt_span.unwrap_or(name_span);
        match name.as_str() {
            "measure" => {
                let q = self.argument()?;
                self.expect(TokenKind::Arrow)?;
                let c = self.argument()?;
                self.expect(TokenKind::Semicolon)?;
                let qs = self.resolve_qubits(&q)?;
                let cs = self.resolve_clbits(&c)?;
                if qs.len() != cs.len() {
                    return Err(QasmError::syntax(
                        span,
                        "measure operands have different register sizes",
                    ));
                }
                Ok(qs
                    .into_iter()
                    .zip(cs)
                    .map(|(q, c)| Instruction::measure(q, c, span))
                    .collect())
            }
            "reset" => {
                let q = self.argument()?;
                self.expect(TokenKind::Semicolon)?;
                Ok(self
                    .resolve_qubits(&q)?
                    .into_iter()
                    .map(|q| Instruction::reset(q, span))
                    .collect())
            }
            "barrier" => {
                let args = self.argument_list()?;
                self.expect(TokenKind::Semicolon)?;
                let mut qubits = Vec::new();
                for arg in &args {
                    for q in self.resolve_qubits(arg)? {
                        if !qubits.contains(&q) {
                            qubits.push(q);
                        }
                    }
                }
                Ok(vec![Instruction::barrier(qubits, span)])
            }
            _ => self.gate_call(name, name_span, span),
        }
    }

    fn gate_call(
        &mut self,
        name: String,
        name_span: SourceSpan,
        span: SourceSpan,
    ) -> Result<Vec<Instruction>, QasmError> {
        let Some((n_params, n_qubits)) = self.gate_signature(&name) else {
            return Err(QasmError::UndefinedSymbol {
                span: name_span,
                what: "gate",
                name,
            });
        };
        let params = self.param_list(None)?;
        let args = self.argument_list()?;
        self.expect(TokenKind::Semicolon)?;
        check_arity(&name, span, n_params, params.len(), n_qubits, args.len())?;

        let resolved: Vec<Vec<Operand>> = args
            .iter()
            .map(|a| self.resolve_qubits(a))
            .collect::<Result<_, _>>()?;
        let mut width = 1;
        for (arg, ops) in args.iter().zip(&resolved) {
            if arg.index.is_none() {
                if width != 1 && width != ops.len() {
                    return Err(QasmError::syntax(
                        span,
                        "broadcast registers have different sizes",
                    ));
                }
                width = ops.len();
            }
        }
        let mut out = Vec::with_capacity(width);
        for i in 0..width {
            let qubits: Vec<Operand> = resolved
                .iter()
                .map(|ops| {
                    if ops.len() == 1 {
                        ops[0].clone()
                    } else {
                        ops[i].clone()
                    }
                })
                .collect();
            let distinct: HashSet<&Operand> = qubits.iter().collect();
            if distinct.len() != qubits.len() {
                return Err(QasmError::syntax(
                    span,
                    "duplicate qubit operand in gate call",
                ));
            }
            out.push(Instruction::gate(
                name.clone(),
                params.clone(),
                qubits,
                span,
            ));
        }
        Ok(out)
    }

    fn argument(&mut self) -> Result<Argument, QasmError> {
        let (register, span) = self.ident()?;
        let index = if self.eat(&TokenKind::LBracket) {
            let (i, _) = self.integer()?;
            self.expect(TokenKind::RBracket)?;
            Some(i as usize)
        } else {
            None
        };
        Ok(Argument {
            register,
            index,
            span,
        })
    }

    fn argument_list(&mut self) -> Result<Vec<Argument>, QasmError> {
        let mut out = vec![self.argument()?];
        while self.eat(&TokenKind::Comma) {
            out.push(self.argument()?);
        }
        Ok(out)
    }

    fn resolve_qubits(&self, arg: &Argument) -> Result<Vec<Operand>, QasmError> {
        let Some(reg) = self.circuit.qreg(&arg.register) else {
            return Err(QasmError::UndefinedSymbol {
                span: arg.span,
                what: "quantum register",
                name: arg.register.clone(),
            });
        };
        resolve(arg, &reg.name, reg.size)
    }

    fn resolve_clbits(&self, arg: &Argument) -> Result<Vec<Operand>, QasmError> {
        let Some(reg) = self.circuit.creg(&arg.register) else {
            return Err(QasmError::UndefinedSymbol {
                span: arg.span,
                what: "classical register",
                name: arg.register.clone(),
            });
        };
        resolve(arg, &reg.name, reg.size)
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self, formals: Option<&[String]>) -> Result<Expr, QasmError> {
        let mut lhs = self.term(formals)?;
        loop {
            let op = match self.peek_kind() {
                Some(TokenKind::Plus) => BinaryOp::Add,
                Some(TokenKind::Minus) => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term(formals)?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self, formals: Option<&[String]>) -> Result<Expr, QasmError> {
        let mut lhs = self.unary(formals)?;
        loop {
            let op = match self.peek_kind() {
                Some(TokenKind::Star) => BinaryOp::Mul,
                Some(TokenKind::Slash) => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary(formals)?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self, formals: Option<&[String]>) -> Result<Expr, QasmError> {
        if self.eat(&TokenKind::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary(formals)?)));
        }
        self.power(formals)
    }

    // power := primary ('^' unary)?
    fn power(&mut self, formals: Option<&[String]>) -> Result<Expr, QasmError> {
        let base = self.primary(formals)?;
        if self.eat(&TokenKind::Caret) {
            let exp = self.unary(formals)?;
            return Ok(Expr::Binary(BinaryOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self, formals: Option<&[String]>) -> Result<Expr, QasmError> {
        let tok = self.next()?;
        match tok.kind {
            TokenKind::Int(n) | TokenKind::Real(n) => Ok(Expr::Number(n)),
            TokenKind::LParen => {
                let inner = self.expr(formals)?;
                self.expect(TokenKind::RParen)?;
                Ok(inner)
            }
            TokenKind::Ident(name) if name == "pi" => Ok(Expr::Pi),
            TokenKind::Ident(name) if UNARY_FUNCTIONS.contains(&name.as_str()) => {
                self.expect(TokenKind::LParen)?;
                let arg = self.expr(formals)?;
                self.expect(TokenKind::RParen)?;
                Ok(Expr::Call(name, Box::new(arg)))
            }
            TokenKind::Ident(name) => {
                if formals.is_some_and(|f| f.contains(&name)) {
                    Ok(Expr::Param(name))
                } else {
                    Err(QasmError::UndefinedSymbol {
                        span: tok.span,
                        what: "parameter",
                        name,
                    })
                }
            }
            other => Err(QasmError::syntax(
                tok.span,
                format!("expected expression, found {}", other.describe()),
            )),
        }
    }
}

fn resolve(arg: &Argument, name: &str, size: usize) -> Result<Vec<Operand>, QasmError> {
    match arg.index {
        Some(index) if index >= size => Err(QasmError::IndexOutOfRange {
            span: arg.span,
            register: name.to_string(),
            index,
            size,
        }),
        Some(index) => Ok(vec![Operand::new(name, index)]),
        None => Ok((0..size).map(|i| Operand::new(name, i)).collect()),
    }
}

fn check_arity(
    name: &str,
    span: SourceSpan,
    want_params: usize,
    got_params: usize,
    want_qubits: usize,
    got_qubits: usize,
) -> Result<(), QasmError> {
    if want_params != got_params {
        return Err(QasmError::syntax(
            span,
            format!("gate `{name}` takes {want_params} parameter(s), got {got_params}"),
        ));
    }
    if want_qubits != got_qubits {
        return Err(QasmError::syntax(
            span,
            format!("gate `{name}` acts on {want_qubits} qubit(s), got {got_qubits}"),
        ));
    }
    Ok(())
}

fn check_distinct(names: &[String], span: SourceSpan, what: &str) -> Result<(), QasmError> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(QasmError::syntax(span, format!("duplicate {what} `{n}`")));
        }
    }
    Ok(())
}
