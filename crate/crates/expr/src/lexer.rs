use crate::{ExprError, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    /// Decimal digits of a nonnegative integer.
    Number(String),
    ImagUnit,
    Variable(String),
    /// `inv` or `kron`.
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Quote,
    StarQuote,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub span: Span,
}

fn is_variable(word: &str) -> bool {
    let mut chars = word.chars();
    matches!(chars.next(), Some('z' | 'w'))
        && word.len() > 1
        && word[1..].bytes().all(|b| b.is_ascii_digit())
        && !word[1..].starts_with('0')
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        let start = Span { offset: off, len: 0, line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let mut j = i + 1;
        let kind = if c.is_ascii_digit() {
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            if j < chars.len() && chars[j].1 == '.' {
                return Err(ExprError::Lex { found: '.', line, col: col + (j - i) });
            }
            TokenKind::Number(chars[i..j].iter().map(|p| p.1).collect())
        } else if c.is_ascii_alphabetic() || c == '_' {
            while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            let word: String = chars[i..j].iter().map(|p| p.1).collect();
            match word.as_str() {
                "i" => TokenKind::ImagUnit,
                "inv" | "kron" => TokenKind::Ident(word),
                w if is_variable(w) => TokenKind::Variable(word),
                _ => {
                    return Err(ExprError::Parse { msg: format!("unknown identifier {word:?}"), line, col });
                }
            }
        } else {
            match c {
                '+' => TokenKind::Plus,
                '-' => TokenKind::Minus,
                '*' if chars.get(i + 1).map(|p| p.1) == Some('\'') => {
                    j = i + 2;
                    TokenKind::StarQuote
                }
                '*' => TokenKind::Star,
                '/' => TokenKind::Slash,
                '^' => TokenKind::Caret,
                '\'' => TokenKind::Quote,
                ',' => TokenKind::Comma,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                '[' => TokenKind::LBracket,
                ']' => TokenKind::RBracket,
                other => return Err(ExprError::Lex { found: other, line, col }),
            }
        };
        let end = chars.get(j).map_or(src.len(), |p| p.0);
        out.push(Token { kind, lexeme: src[off..end].to_string(), span: Span { len: end - off, ..start } });
        col += j - i;
        i = j;
    }
    out.push(Token { kind: TokenKind::Eof, lexeme: String::new(), span: Span { offset: src.len(), len: 0, line, col } });
    Ok(out)
}
