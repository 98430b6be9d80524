use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub tok: Tok,
    pub pos: Pos,
}

/// Splits `text` into tokens. `start` is the position of the first character.
pub fn tokenize(text: &str, start: Pos) -> Result<Vec<Spanned>, (Pos, char)> {
    let mut out = Vec::new();
    let mut pos = start;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let here = pos;
        if c == '\n' {
            chars.next();
            pos.line += 1;
            pos.col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            pos.col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                pos.col += 1;
            }
            out.push(Spanned { tok: Tok::Int(s.parse().expect("digits")), pos: here });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                pos.col += 1;
            }
            out.push(Spanned { tok: Tok::Ident(s), pos: here });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => return Err((here, other)),
        };
        chars.next();
        pos.col += 1;
        out.push(Spanned { tok, pos: here });
    }
    out.push(Spanned { tok: Tok::Eof, pos });
    Ok(out)
}
