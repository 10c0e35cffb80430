use crate::dyadic::Dyadic;
use crate::error::DyadicError;

use super::ExprError;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Number(Dyadic),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    /// `<`: opens a form literal in operand position, otherwise less-than.
    Lt,
    /// `>`: closes a form literal inside one, otherwise greater-than.
    Gt,
    /// `⟨`
    FormOpen,
    /// `⟩`
    FormClose,
    Bar,
    Comma,
    Le,
    Ge,
    Eq,
    Ne,
    Eof,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    /// Character offset of the token's first character.
    pub pos: usize,
}

pub fn tokenize(input: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '+' => (Tok::Plus, 1),
            '-' | '−' => (Tok::Minus, 1),
            '*' | '×' => (Tok::Star, 1),
            '/' => (Tok::Slash, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '|' => (Tok::Bar, 1),
            ',' => (Tok::Comma, 1),
            '⟨' => (Tok::FormOpen, 1),
            '⟩' => (Tok::FormClose, 1),
            '≤' => (Tok::Le, 1),
            '≥' => (Tok::Ge, 1),
            '≠' => (Tok::Ne, 1),
            '<' if next == Some('=') => (Tok::Le, 2),
            '>' if next == Some('=') => (Tok::Ge, 2),
            '!' if next == Some('=') => (Tok::Ne, 2),
            '=' if next == Some('=') => (Tok::Eq, 2),
            '<' => (Tok::Lt, 1),
            '>' => (Tok::Gt, 1),
            '=' => (Tok::Eq, 1),
            c if c.is_ascii_digit() => {
                let (d, len) = number(&chars, i)?;
                (Tok::Number(d), len)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = chars[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .count();
                (Tok::Ident(chars[i..i + len].iter().collect()), len)
            }
            other => {
                return Err(ExprError::Syntax {
                    pos,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push(Token { tok, pos });
        i += len;
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: chars.len(),
    });
    Ok(out)
}

/// `digits` or `digits/digits` with no spaces around the slash.
fn number(chars: &[char], start: usize) -> Result<(Dyadic, usize), ExprError> {
    let digits = |from: usize| {
        chars[from..]
            .iter()
            .take_while(|c| c.is_ascii_digit())
            .count()
    };
    let n = digits(start);
    let mut len = n;
    let slash = start + n;
    if chars.get(slash) == Some(&'/') && chars.get(slash + 1).is_some_and(|c| c.is_ascii_digit()) {
        len += 1 + digits(slash + 1);
    }
    let text: String = chars[start..start + len].iter().collect();
    match text.parse::<Dyadic>() {
        Ok(d) => Ok((d, len)),
        Err(DyadicError::NotDyadic) => Err(ExprError::NotDyadic),
        Err(e) => Err(ExprError::Syntax {
            pos: start,
            msg: e.to_string(),
        }),
    }
}
