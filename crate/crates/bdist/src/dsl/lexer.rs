//! Tokenizer for the expression language.

use super::ast::Span;
use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// Unsigned number body: digits with an optional fractional part.
    Num(String),
    /// Keyword or name, e.g. `REG`, `CHI2`, `D-`, `LIMF+`, `x`.
    Ident(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Plus,
    Minus,
    Star,
    Dot,
    Slash,
    /// `(x)`
    TensorOp,
    /// `(*)`
    ConvOp,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

/// Identifier stems that absorb a following sign when it introduces a
/// parenthesized argument, as in `D-(`, `LIM+(`, `LIMF-(`, `DF+(`.
const SIGNED_STEMS: [&str; 4] = ["D", "LIM", "LIMF", "DF"];

pub fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
            }
            '(' => {
                // the two-variable and convolution operators are single tokens
                if i + 2 < bytes.len() && bytes[i + 2] as char == ')' {
                    match bytes[i + 1] as char {
                        'x' => {
                            out.push(Token {
                                tok: Tok::TensorOp,
                                span: Span { start, end: i + 3 },
                            });
                            i += 3;
                            continue;
                        }
                        '*' => {
                            out.push(Token {
                                tok: Tok::ConvOp,
                                span: Span { start, end: i + 3 },
                            });
                            i += 3;
                            continue;
                        }
                        _ => {}
                    }
                }
                out.push(Token {
                    tok: Tok::LParen,
                    span: Span { start, end: i + 1 },
                });
                i += 1;
            }
            ')' => {
                out.push(Token {
                    tok: Tok::RParen,
                    span: Span { start, end: i + 1 },
                });
                i += 1;
            }
            '{' => {
                out.push(Token {
                    tok: Tok::LBrace,
                    span: Span { start, end: i + 1 },
                });
                i += 1;
            }
            '}' => {
                out.push(Token {
                    tok: Tok::RBrace,
                    span: Span { start, end: i + 1 },
                });
                i += 1;
            }
            ',' => {
                out.push(Token {
                    tok: Tok::Comma,
                    span: Span { start, end: i + 1 },
                });
                i += 1;
            }
            '+' => {
                out.push(Token {
                    tok: Tok::Plus,
                    span: Span { start, end: i + 1 },
                });
                i += 1;
            }
            '-' => {
                out.push(Token {
                    tok: Tok::Minus,
                    span: Span { start, end: i + 1 },
                });
                i += 1;
            }
            '*' => {
                out.push(Token {
                    tok: Tok::Star,
                    span: Span { start, end: i + 1 },
                });
                i += 1;
            }
            '/' => {
                out.push(Token {
                    tok: Tok::Slash,
                    span: Span { start, end: i + 1 },
                });
                i += 1;
            }
            '.' => {
                out.push(Token {
                    tok: Tok::Dot,
                    span: Span { start, end: i + 1 },
                });
                i += 1;
            }
            '0'..='9' => {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                // a decimal point belongs to the number only when digits follow
                if j + 1 < bytes.len()
                    && bytes[j] as char == '.'
                    && bytes[j + 1].is_ascii_digit()
                {
                    j += 2;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                out.push(Token {
                    tok: Tok::Num(input[i..j].to_string()),
                    span: Span { start, end: j },
                });
                i = j;
            }
            'A'..='Z' | 'a'..='z' => {
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric()) {
                    j += 1;
                }
                let mut word = input[i..j].to_string();
                // absorb the sign of D-( / LIM+( / LIMF-( / DF+(
                if SIGNED_STEMS.contains(&word.as_str())
                    && j + 1 < bytes.len()
                    && (bytes[j] as char == '-' || bytes[j] as char == '+')
                    && bytes[j + 1] as char == '('
                {
                    word.push(bytes[j] as char);
                    j += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(word),
                    span: Span { start, end: j },
                });
                i = j;
            }
            other => {
                return Err(ParseError {
                    pos: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}
