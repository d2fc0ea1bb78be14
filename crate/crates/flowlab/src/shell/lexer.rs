use crate::error::{FlowError, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Id(u32),
    Str(String),
    Dot,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Eq,
    Neq,
    Arrow,
    End,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn err(line: usize, col: usize, msg: impl Into<String>) -> FlowError {
    FlowError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Splits one command line into tokens. `//` starts a comment.
pub fn tokenize(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line, col });
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
            }
            '/' if chars.get(i + 1) == Some(&'/') => break,
            '.' => {
                push(&mut out, Tok::Dot);
                i += 1;
            }
            ',' => {
                push(&mut out, Tok::Comma);
                i += 1;
            }
            '(' => {
                push(&mut out, Tok::LParen);
                i += 1;
            }
            ')' => {
                push(&mut out, Tok::RParen);
                i += 1;
            }
            '{' => {
                push(&mut out, Tok::LBrace);
                i += 1;
            }
            '}' => {
                push(&mut out, Tok::RBrace);
                i += 1;
            }
            '=' => {
                push(&mut out, Tok::Eq);
                i += 1;
            }
            '!' if chars.get(i + 1) == Some(&'=') => {
                push(&mut out, Tok::Neq);
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                push(&mut out, Tok::Arrow);
                i += 2;
            }
            '→' => {
                push(&mut out, Tok::Arrow);
                i += 1;
            }
            '"' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j] != '"' {
                    j += 1;
                }
                if j == chars.len() {
                    return Err(err(line, col, "unterminated string"));
                }
                push(&mut out, Tok::Str(chars[start..j].iter().collect()));
                i = j + 1;
            }
            '#' => {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = chars[i + 1..j].iter().collect();
                let id = digits
                    .parse::<u32>()
                    .map_err(|_| err(line, col, "expected a term id after '#'"))?;
                push(&mut out, Tok::Id(id));
                i = j;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = chars[i..j].iter().collect();
                let n = digits
                    .parse::<u64>()
                    .map_err(|_| err(line, col, "number out of range"))?;
                push(&mut out, Tok::Num(n));
                i = j;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                if chars.get(j) == Some(&'?') {
                    j += 1;
                }
                push(&mut out, Tok::Ident(chars[i..j].iter().collect()));
                i = j;
            }
            c => return Err(err(line, col, format!("unexpected character '{c}'"))),
        }
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col: chars.len() + 1,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s, 1).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            toks("let g = sigma . phi 2 // tail"),
            vec![
                Tok::Ident("let".into()),
                Tok::Ident("g".into()),
                Tok::Eq,
                Tok::Ident("sigma".into()),
                Tok::Dot,
                Tok::Ident("phi".into()),
                Tok::Num(2),
                Tok::End
            ]
        );
        assert_eq!(
            toks("#12 -> x != zf?")[..4],
            [Tok::Id(12), Tok::Arrow, Tok::Ident("x".into()), Tok::Neq]
        );
    }

    #[test]
    fn errors_carry_columns() {
        let e = tokenize("show $", 3).unwrap_err();
        assert_eq!(
            e,
            FlowError::Parse {
                line: 3,
                col: 6,
                msg: "unexpected character '$'".into()
            }
        );
        assert!(tokenize("save \"abc", 1).is_err());
    }
}
