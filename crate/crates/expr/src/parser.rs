use pencilforge_arith::GR;

use crate::lexer::{tokenize, Token, TokenKind};
use crate::{Ast, ExprError, Node, Span};

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

fn err(tok: &Token, msg: impl Into<String>) -> ExprError {
    ExprError::Parse { msg: msg.into(), line: tok.span.line, col: tok.span.col }
}

fn bin(f: fn(Box<Ast>, Box<Ast>) -> Node, a: Ast, b: Ast, span: Span) -> Ast {
    Ast::new(f(Box::new(a), Box::new(b)), span)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token, ExprError> {
        if self.peek().kind == kind {
            Ok(self.next())
        } else {
            let t = self.peek();
            let found = if t.kind == TokenKind::Eof { "end of input".to_string() } else { format!("{:?}", t.lexeme) };
            Err(err(t, format!("expected {what}, found {found}")))
        }
    }

    fn expr(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Plus => Node::Add,
                TokenKind::Minus => Node::Sub,
                _ => return Ok(lhs),
            };
            let span = self.next().span;
            let rhs = self.term()?;
            lhs = bin(op, lhs, rhs, span);
        }
    }

    fn term(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Star => Node::Mul,
                TokenKind::Slash => Node::Div,
                _ => return Ok(lhs),
            };
            let span = self.next().span;
            let rhs = self.factor()?;
            lhs = bin(op, lhs, rhs, span);
        }
    }

    fn factor(&mut self) -> Result<Ast, ExprError> {
        match self.peek().kind {
            TokenKind::Minus => {
                let span = self.next().span;
                Ok(Ast::new(Node::Neg(Box::new(self.power()?)), span))
            }
            TokenKind::Plus => {
                self.next();
                self.power()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast, ExprError> {
        let base = self.postfix()?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        let span = self.next().span;
        let t = self.next();
        let TokenKind::Number(digits) = &t.kind else {
            return Err(err(&t, "exponent must be a nonnegative integer literal"));
        };
        let e: u32 = digits.parse().map_err(|_| err(&t, "exponent too large"))?;
        Ok(Ast::new(Node::Pow(Box::new(base), e), span))
    }

    fn postfix(&mut self) -> Result<Ast, ExprError> {
        let mut a = self.atom()?;
        loop {
            match self.peek().kind {
                TokenKind::Quote => {
                    let span = self.next().span;
                    a = Ast::new(Node::Transpose(Box::new(a)), span);
                }
                TokenKind::StarQuote => {
                    let span = self.next().span;
                    a = Ast::new(Node::ConjTranspose(Box::new(a)), span);
                }
                _ => return Ok(a),
            }
        }
    }

    fn atom(&mut self) -> Result<Ast, ExprError> {
        let t = self.next();
        match &t.kind {
            TokenKind::Number(digits) => {
                let v: GR = digits.parse().map_err(|_| err(&t, "invalid number"))?;
                Ok(Ast::new(Node::Const(v), t.span))
            }
            TokenKind::ImagUnit => Ok(Ast::new(Node::Const(GR::i()), t.span)),
            TokenKind::Variable(name) => Ok(Ast::new(Node::Var(name.clone()), t.span)),
            TokenKind::LParen => {
                let e = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(e)
            }
            TokenKind::LBracket => self.matrix(t.span),
            TokenKind::Ident(name) if name == "inv" => {
                self.expect(TokenKind::LParen, "'(' after inv")?;
                let e = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(Ast::new(Node::Inv(Box::new(e)), t.span))
            }
            TokenKind::Ident(_) => {
                self.expect(TokenKind::LParen, "'(' after kron")?;
                let a = self.expr()?;
                self.expect(TokenKind::Comma, "',' between kron arguments")?;
                let b = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(bin(Node::Kron, a, b, t.span))
            }
            TokenKind::Eof => Err(err(&t, "unexpected end of input")),
            _ => Err(err(&t, format!("unexpected {:?}", t.lexeme))),
        }
    }

    /// After the outer `[`.
    fn matrix(&mut self, span: Span) -> Result<Ast, ExprError> {
        let mut rows = Vec::new();
        loop {
            let open = self.expect(TokenKind::LBracket, "'[' starting a matrix row")?;
            let mut row = vec![self.expr()?];
            while self.peek().kind == TokenKind::Comma {
                self.next();
                row.push(self.expr()?);
            }
            self.expect(TokenKind::RBracket, "']' closing a matrix row")?;
            if let Some(first) = rows.first() {
                let first: &Vec<Ast> = first;
                if first.len() != row.len() {
                    return Err(err(&open, format!("row has {} entries, expected {}", row.len(), first.len())));
                }
            }
            rows.push(row);
            if self.peek().kind == TokenKind::Comma {
                self.next();
                continue;
            }
            self.expect(TokenKind::RBracket, "']' closing the matrix")?;
            return Ok(Ast::new(Node::MatrixLit(rows), span));
        }
    }
}

pub fn parse(source: &str) -> Result<Ast, ExprError> {
    let mut p = Parser { tokens: tokenize(source)?, pos: 0 };
    let e = p.expr()?;
    if p.peek().kind != TokenKind::Eof {
        let t = p.peek();
        return Err(err(t, format!("unexpected {:?} after expression", t.lexeme)));
    }
    Ok(e)
}
