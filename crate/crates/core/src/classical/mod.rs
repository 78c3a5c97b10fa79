//! Fact extraction for classical (Python-style) source files.
//!
//! This is deliberately not a full language frontend. Lines are classified
//! as blank, comment or code; functions are found from `def` headers and
//! indentation; branch keywords are counted per function; and a normalized
//! token stream is kept for clone detection.

mod lexer;

use serde::{Deserialize, Serialize};

use crate::error::ClassicalError;
use lexer::{lex, LogicalLine, PyToken, PyTokenKind};

pub use lexer::KEYWORDS;

/// Placeholder every identifier is normalized to.
pub const IDENT_PLACEHOLDER: &str = "ID";
/// Placeholder every literal is normalized to.
pub const LITERAL_PLACEHOLDER: &str = "LIT";

/// Keywords counted as decision points by default (extended McCabe).
pub const DEFAULT_DECISION_KEYWORDS: &[&str] =
    &["if", "elif", "for", "while", "and", "or", "except", "case"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionUnit {
    pub name: String,
    pub start_line: usize,
    pub end_line: usize,
    pub code_lines: usize,
    pub decision_points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalFileFacts {
    pub path: String,
    pub total_lines: usize,
    pub blank_lines: usize,
    pub comment_lines: usize,
    pub code_lines: usize,
    pub functions: Vec<FunctionUnit>,
    pub token_stream: Vec<String>,
}

/// Which constructs count as branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalRules {
    pub decision_keywords: Vec<String>,
}

impl Default for ClassicalRules {
    fn default() -> Self {
        Self {
            decision_keywords: DEFAULT_DECISION_KEYWORDS
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LineClass {
    Blank,
    Comment,
    Code,
}

pub fn analyze_source(text: &str, path: &str) -> ClassicalFileFacts {
    analyze_source_with(text, path, &ClassicalRules::default())
}

/// Validates that `bytes` is text, then analyzes it.
pub fn analyze_bytes(
    bytes: &[u8],
    path: &str,
    rules: &ClassicalRules,
) -> Result<ClassicalFileFacts, ClassicalError> {
    let text = std::str::from_utf8(bytes).map_err(|_| ClassicalError::NotText)?;
    if text.contains('\0') {
        return Err(ClassicalError::NotText);
    }
    Ok(analyze_source_with(
        text.strip_prefix('\u{feff}').unwrap_or(text),
        path,
        rules,
    ))
}

pub fn analyze_source_with(text: &str, path: &str, rules: &ClassicalRules) -> ClassicalFileFacts {
    let physical: Vec<&str> = text.lines().collect();
    let total_lines = physical.len();
    let lexed = lex(text);
    let docstrings = find_docstrings(&lexed.tokens, &lexed.logical_lines);

    // Index 0 unused; sized to tolerate a trailing token past the last newline.
    let slots = total_lines + 2;
    let mut has_code = vec![false; slots];
    let mut has_doc = vec![false; slots];
    let mut has_comment = vec![false; slots];
    for line in &lexed.comment_lines {
        has_comment[(*line).min(slots - 1)] = true;
    }
    for (idx, tok) in lexed.tokens.iter().enumerate() {
        let target = if docstrings.contains(&idx) {
            &mut has_doc
        } else {
            &mut has_code
        };
        target[tok.start_line..=tok.end_line.min(slots - 1)].fill(true);
    }
    let classes: Vec<LineClass> = (1..=total_lines)
        .map(|line| {
            if has_code[line] {
                LineClass::Code
            } else if has_doc[line] || has_comment[line] {
                LineClass::Comment
            } else {
                LineClass::Blank
            }
        })
        .collect();

    let functions = find_functions(&lexed.tokens, &lexed.logical_lines, &physical);
    let owner = line_owners(&functions, total_lines);
    let mut units: Vec<FunctionUnit> = functions
        .iter()
        .map(|f| FunctionUnit {
            name: f.name.clone(),
            start_line: f.start_line,
            end_line: f.end_line,
            code_lines: 0,
            decision_points: 0,
        })
        .collect();
    for (line_idx, class) in classes.iter().enumerate() {
        if *class == LineClass::Code {
            if let Some(f) = owner[line_idx + 1] {
                units[f].code_lines += 1;
            }
        }
    }
    for (idx, tok) in lexed.tokens.iter().enumerate() {
        if is_decision_point(idx, tok, &lexed.tokens, &lexed.logical_lines, rules) {
            if let Some(f) = owner.get(tok.start_line).copied().flatten() {
                units[f].decision_points += 1;
            }
        }
    }

    let token_stream = lexed
        .tokens
        .iter()
        .enumerate()
        .filter(|(idx, _)| !docstrings.contains(idx))
        .map(|(_, tok)| normalize(tok))
        .collect();

    ClassicalFileFacts {
        path: path.to_string(),
        total_lines,
        blank_lines: classes.iter().filter(|c| **c == LineClass::Blank).count(),
        comment_lines: classes.iter().filter(|c| **c == LineClass::Comment).count(),
        code_lines: classes.iter().filter(|c| **c == LineClass::Code).count(),
        functions: units,
        token_stream,
    }
}

fn normalize(tok: &PyToken) -> String {
    match tok.kind {
        PyTokenKind::Name => IDENT_PLACEHOLDER.to_string(),
        PyTokenKind::Number | PyTokenKind::Str { .. } => LITERAL_PLACEHOLDER.to_string(),
        PyTokenKind::Keyword | PyTokenKind::Op => tok.text.clone(),
    }
}

fn line_tokens<'a>(tokens: &'a [PyToken], line: &LogicalLine) -> &'a [PyToken] {
    &tokens[line.tokens.clone()]
}

/// `def`/`async def`/`class` header ending in `:`.
fn is_block_header(tokens: &[PyToken]) -> bool {
    let opens = match tokens {
        [first, ..] if first.text == "def" || first.text == "class" => true,
        [first, second, ..] if first.text == "async" && second.text == "def" => true,
        _ => false,
    };
    opens
        && tokens
            .last()
            .is_some_and(|t| t.kind == PyTokenKind::Op && t.text == ":")
}

/// Token indices of triple-quoted strings that form a whole statement right
/// after a `def`/`class` header or at the start of the file.
fn find_docstrings(tokens: &[PyToken], lines: &[LogicalLine]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        if line.tokens.len() != 1 {
            continue;
        }
        let idx = line.tokens.start;
        if tokens[idx].kind != (PyTokenKind::Str { triple: true }) {
            continue;
        }
        if i == 0 || is_block_header(line_tokens(tokens, &lines[i - 1])) {
            out.push(idx);
        }
    }
    out
}

fn indentation(line: &str) -> usize {
    let mut width = 0;
    for c in line.chars() {
        match c {
            ' ' => width += 1,
            '\t' => width = (width / 8 + 1) * 8,
            '\x0c' => width = 0,
            _ => break,
        }
    }
    width
}

struct FunctionSpan {
    name: String,
    start_line: usize,
    end_line: usize,
}

fn find_functions(
    tokens: &[PyToken],
    lines: &[LogicalLine],
    physical: &[&str],
) -> Vec<FunctionSpan> {
    let indent_of = |line: &LogicalLine| {
        physical
            .get(line.first_line - 1)
            .map(|l| indentation(l))
            .unwrap_or(0)
    };
    let mut out = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        let toks = line_tokens(tokens, line);
        let name = match toks {
            [d, n, ..] if d.text == "def" && n.kind == PyTokenKind::Name => &n.text,
            [a, d, n, ..]
                if a.text == "async" && d.text == "def" && n.kind == PyTokenKind::Name =>
            {
                &n.text
            }
            _ => continue,
        };
        let header_indent = indent_of(line);
        let mut end_line = line.last_line;
        for body in &lines[i + 1..] {
            if indent_of(body) <= header_indent {
                break;
            }
            end_line = body.last_line;
        }
        out.push(FunctionSpan {
            name: name.clone(),
            start_line: line.first_line,
            end_line,
        });
    }
    out
}

/// Innermost function owning each physical line (1-based index).
fn line_owners(functions: &[FunctionSpan], total_lines: usize) -> Vec<Option<usize>> {
    let mut owner = vec![None; total_lines + 2];
    // Headers appear in source order, so nested units overwrite their parent.
    for (idx, f) in functions.iter().enumerate() {
        for slot in owner
            .iter_mut()
            .take(f.end_line.min(total_lines + 1) + 1)
            .skip(f.start_line)
        {
            *slot = Some(idx);
        }
    }
    owner
}

fn is_decision_point(
    idx: usize,
    tok: &PyToken,
    tokens: &[PyToken],
    lines: &[LogicalLine],
    rules: &ClassicalRules,
) -> bool {
    if !rules.decision_keywords.contains(&tok.text) {
        return false;
    }
    match tok.kind {
        PyTokenKind::Keyword => true,
        // `case` is a soft keyword: only an arm header `case ...:` counts.
        PyTokenKind::Name if tok.text == "case" => lines.iter().any(|l| {
            l.tokens.start == idx && l.tokens.len() > 2 && tokens[l.tokens.end - 1].text == ":"
        }),
        _ => false,
    }
}
