//! A small expression language for rational matrix functions, lowered to
//! the normal form `f = P/q`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+')? power
//! power  := postfix ('^' INTEGER)?
//! postfix:= atom ("'" | "*'")*
//! atom   := INTEGER | 'i' | VARIABLE | '(' expr ')' | matrix
//!         | "inv" '(' expr ')' | "kron" '(' expr ',' expr ')'
//! matrix := '[' row (',' row)* ']'      row := '[' expr (',' expr)* ']'
//! ```
//!
//! Variables are `z1, z2, …` and `w1, w2, …`; rationals are written `a/b`.
//! Under `'` and `*'` variables are treated as real, so conjugation acts on
//! coefficients only.

mod ast;
mod interp;
mod lexer;
mod lower;
mod parser;

pub use ast::{Ast, Node, Span};
pub use interp::interpret;
pub use lexer::{tokenize, Token, TokenKind};
pub use lower::{lower, PolyMatrix};
pub use parser::parse;

use pencilforge_arith::RationalMatrixFunction;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("{line}:{col}: unexpected character {found:?}")]
    Lex { found: char, line: usize, col: usize },
    #[error("{line}:{col}: {msg}")]
    Parse { msg: String, line: usize, col: usize },
    #[error("{line}:{col}: shape mismatch: {msg}")]
    ShapeMismatch { msg: String, line: usize, col: usize },
    #[error("{line}:{col}: inverse of an identically singular matrix")]
    SingularInverse { line: usize, col: usize },
    #[error("{line}:{col}: divisor is not a scalar")]
    DivisorNotScalar { line: usize, col: usize },
    #[error("{line}:{col}: division by zero")]
    ZeroDivisor { line: usize, col: usize },
    #[error("{line}:{col}: variable {name} is not declared")]
    UnknownVariable { name: String, line: usize, col: usize },
}

impl ExprError {
    /// True for lexing and parsing errors, false for lowering errors.
    pub fn is_syntax(&self) -> bool {
        matches!(self, ExprError::Lex { .. } | ExprError::Parse { .. })
    }

    /// 1-based `(line, column)` of the offending lexeme.
    pub fn position(&self) -> (usize, usize) {
        match self {
            ExprError::Lex { line, col, .. }
            | ExprError::Parse { line, col, .. }
            | ExprError::ShapeMismatch { line, col, .. }
            | ExprError::SingularInverse { line, col }
            | ExprError::DivisorNotScalar { line, col }
            | ExprError::ZeroDivisor { line, col }
            | ExprError::UnknownVariable { line, col, .. } => (*line, *col),
        }
    }
}

/// Variable order used when none is declared: every `z<n>` by index, then
/// every `w<n>` by index.
pub fn infer_variables(ast: &Ast) -> Vec<String> {
    let mut names = Vec::new();
    ast.visit(&mut |n| {
        if let Node::Var(name) = &n.node {
            if !names.contains(name) {
                names.push(name.clone());
            }
        }
    });
    names.sort_by_key(|n: &String| variable_key(n));
    names
}

fn variable_key(name: &str) -> (u8, u64) {
    let (head, digits) = name.split_at(1);
    (if head == "z" { 0 } else { 1 }, digits.parse().unwrap_or(u64::MAX))
}

/// Parse and lower `source`; `vars` fixes the variable order, otherwise it
/// is inferred. Returns the function and the order used.
pub fn compile(source: &str, vars: Option<&[String]>) -> Result<(RationalMatrixFunction, Vec<String>), ExprError> {
    let ast = parse(source)?;
    let vars = match vars {
        Some(v) => v.to_vec(),
        None => infer_variables(&ast),
    };
    Ok((lower(&ast, &vars)?, vars))
}
