//! Tolerant tokenizer for indentation-structured, Python-style source.
//!
//! Never fails: anything it does not recognize becomes a one-character
//! operator token.

pub const KEYWORDS: &[&str] = &[
    "False", "None", "True", "and", "as", "assert", "async", "await", "break", "class", "continue",
    "def", "del", "elif", "else", "except", "finally", "for", "from", "global", "if", "import",
    "in", "is", "lambda", "nonlocal", "not", "or", "pass", "raise", "return", "try", "while",
    "with", "yield",
];

const OPERATORS_3: &[&str] = &["**=", "//=", ">>=", "<<=", "..."];
const OPERATORS_2: &[&str] = &[
    "**", "//", ">>", "<<", "<=", ">=", "==", "!=", "->", ":=", "+=", "-=", "*=", "/=", "%=", "&=",
    "|=", "^=", "@=",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PyTokenKind {
    Name,
    Keyword,
    Number,
    Str { triple: bool },
    Op,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PyToken {
    pub kind: PyTokenKind,
    pub text: String,
    pub start_line: usize,
    pub end_line: usize,
}

/// A logical line: the tokens between two statement-ending newlines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalLine {
    pub first_line: usize,
    pub last_line: usize,
    /// Token index range into the token vector.
    pub tokens: std::ops::Range<usize>,
}

#[derive(Debug, Default)]
pub struct Lexed {
    pub tokens: Vec<PyToken>,
    pub logical_lines: Vec<LogicalLine>,
    /// Physical lines (1-based) that carry a `#` comment.
    pub comment_lines: Vec<usize>,
}

fn is_string_prefix(word: &str) -> bool {
    word.len() <= 2
        && word
            .chars()
            .all(|c| matches!(c.to_ascii_lowercase(), 'r' | 'b' | 'u' | 'f'))
}

pub fn lex(text: &str) -> Lexed {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Lexed::default();
    let mut i = 0;
    let mut line = 1;
    let mut depth = 0usize;
    let mut logical_start: Option<usize> = None;

    let end_logical = |out: &mut Lexed, logical_start: &mut Option<usize>| {
        if let Some(start) = logical_start.take() {
            let first_line = out.tokens[start].start_line;
            let last_line = out.tokens.last().map_or(first_line, |t| t.end_line);
            out.logical_lines.push(LogicalLine {
                first_line,
                last_line,
                tokens: start..out.tokens.len(),
            });
        }
    };

    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                if depth == 0 {
                    end_logical(&mut out, &mut logical_start);
                }
                line += 1;
                i += 1;
                continue;
            }
            '\\' if chars.get(i + 1) == Some(&'\n') => {
                line += 1;
                i += 2;
                continue;
            }
            '\\' if chars.get(i + 1) == Some(&'\r') && chars.get(i + 2) == Some(&'\n') => {
                line += 1;
                i += 3;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '#' => {
                out.comment_lines.push(line);
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            _ => {}
        }

        let start_line = line;
        let (kind, text_out) = if c == '"' || c == '\'' {
            let (s, consumed, lines) = scan_string(&chars[i..]);
            i += consumed;
            line += lines;
            s
        } else if c.is_ascii_digit()
            || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit))
        {
            let start = i;
            let hex =
                c == '0' && matches!(chars.get(i + 1), Some('x' | 'X' | 'o' | 'O' | 'b' | 'B'));
            while i < chars.len() {
                let ch = chars[i];
                let exponent_sign = (ch == '+' || ch == '-')
                    && !hex
                    && i > start
                    && matches!(chars[i - 1], 'e' | 'E');
                if ch.is_ascii_alphanumeric() || ch == '_' || ch == '.' || exponent_sign {
                    i += 1;
                } else {
                    break;
                }
            }
            (PyTokenKind::Number, chars[start..i].iter().collect())
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if is_string_prefix(&word) && matches!(chars.get(i), Some('"' | '\'')) {
                let (s, consumed, lines) = scan_string(&chars[i..]);
                i += consumed;
                line += lines;
                (s.0, format!("{word}{}", s.1))
            } else if KEYWORDS.contains(&word.as_str()) {
                (PyTokenKind::Keyword, word)
            } else {
                (PyTokenKind::Name, word)
            }
        } else {
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            let op = OPERATORS_3
                .iter()
                .chain(OPERATORS_2)
                .find(|op| rest.starts_with(*op))
                .map(|op| op.to_string())
                .unwrap_or_else(|| c.to_string());
            i += op.chars().count();
            match c {
                '(' | '[' | '{' => depth += 1,
                ')' | ']' | '}' => depth = depth.saturating_sub(1),
                _ => {}
            }
            (PyTokenKind::Op, op)
        };
        if logical_start.is_none() {
            logical_start = Some(out.tokens.len());
        }
        out.tokens.push(PyToken {
            kind,
            text: text_out,
            start_line,
            end_line: line,
        });
    }
    end_logical(&mut out, &mut logical_start);
    out
}

/// Scans a string literal starting at a quote. Returns the token, the number
/// of chars consumed and the number of newlines crossed.
fn scan_string(chars: &[char]) -> ((PyTokenKind, String), usize, usize) {
    let quote = chars[0];
    let triple = chars.len() >= 3 && chars[1] == quote && chars[2] == quote;
    let open = if triple { 3 } else { 1 };
    let mut i = open;
    let mut newlines = 0;
    while let Some(&c) = chars.get(i) {
        if c == '\\' {
            if chars.get(i + 1) == Some(&'\n') {
                newlines += 1;
            }
            i += 2;
            continue;
        }
        if c == '\n' {
            if !triple {
                // Unterminated single-quoted string ends at the line break.
                break;
            }
            newlines += 1;
        }
        if c == quote {
            if !triple {
                i += 1;
                break;
            }
            if chars.get(i + 1) == Some(&quote) && chars.get(i + 2) == Some(&quote) {
                i += 3;
                break;
            }
        }
        i += 1;
    }
    let i = i.min(chars.len());
    (
        (PyTokenKind::Str { triple }, chars[..i].iter().collect()),
        i,
        newlines,
    )
}
