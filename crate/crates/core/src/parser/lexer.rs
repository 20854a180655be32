use num_bigint::BigInt;

use super::{ParseError, ParseErrorKind, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(BigInt),
    /// `y'`, `y''`, `y'''`.
    Jet(u8),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
    Semi,
    Colon,
    Comma,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Int(n) => format!("number {n}"),
            Tok::Jet(k) => format!("'y{}'", "'".repeat(*k as usize)),
            Tok::Eof => "end of input".to_string(),
            t => format!("'{}'", t.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Eq => "=",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Comma => ",",
            _ => "",
        }
    }
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            if word == "y" && i < chars.len() && chars[i] == '\'' {
                let s = i;
                while i < chars.len() && chars[i] == '\'' {
                    i += 1;
                }
                let n = i - s;
                col += n;
                if n > 3 {
                    return Err(ParseError::new(
                        pos,
                        ParseErrorKind::Syntax(format!("derivative of order {n} is not supported")),
                    ));
                }
                out.push((Tok::Jet(n as u8), pos));
            } else {
                out.push((Tok::Ident(word), pos));
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            col += i - start;
            if i < chars.len() && chars[i] == '.' {
                return Err(ParseError::new(
                    pos,
                    ParseErrorKind::Syntax("decimal numbers are not supported; write a fraction".into()),
                ));
            }
            out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            other => {
                return Err(ParseError::new(
                    pos,
                    ParseErrorKind::Syntax(format!("unexpected character {other:?}")),
                ))
            }
        };
        out.push((t, pos));
        i += 1;
        col += 1;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}
