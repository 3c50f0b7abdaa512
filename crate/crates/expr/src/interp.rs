use pencilforge_arith::GR;
use pencilforge_blockmat::Matrix;

use crate::{Ast, ExprError, Node, Span};

fn shape_err(span: Span, msg: String) -> ExprError {
    ExprError::ShapeMismatch { msg, line: span.line, col: span.col }
}

fn dims(m: &Matrix) -> String {
    format!("{}x{}", m.rows(), m.cols())
}

/// Evaluate the expression directly at `point` with exact matrix
/// arithmetic, without forming `P/q`. Division by a value that is zero at
/// this point reports `ZeroDivisor`, a singular inverse `SingularInverse`.
pub fn interpret(ast: &Ast, vars: &[String], point: &[GR]) -> Result<Matrix, ExprError> {
    let span = ast.span;
    let (line, col) = (span.line, span.col);
    let rec = |a: &Ast| interpret(a, vars, point);
    Ok(match &ast.node {
        Node::Const(c) => Matrix::scalar(c.clone()),
        Node::Var(name) => {
            let j = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| ExprError::UnknownVariable { name: name.clone(), line, col })?;
            Matrix::scalar(point[j].clone())
        }
        Node::Add(a, b) | Node::Sub(a, b) => {
            let (x, y) = (rec(a)?, rec(b)?);
            let r = if matches!(ast.node, Node::Add(..)) { x.try_add(&y) } else { x.try_sub(&y) };
            r.map_err(|_| shape_err(span, format!("{} and {}", dims(&x), dims(&y))))?
        }
        Node::Mul(a, b) => mul(rec(a)?, rec(b)?, span)?,
        Node::Div(a, b) => {
            let (x, y) = (rec(a)?, rec(b)?);
            if (y.rows(), y.cols()) != (1, 1) {
                return Err(ExprError::DivisorNotScalar { line, col });
            }
            let inv = y.get(0, 0).inv().map_err(|_| ExprError::ZeroDivisor { line, col })?;
            x.scale(&inv)
        }
        Node::Pow(a, e) => {
            let x = rec(a)?;
            if !x.is_square() {
                return Err(shape_err(span, format!("power of a {} matrix", dims(&x))));
            }
            (0..*e).try_fold(Matrix::identity(x.rows()), |acc, _| mul(acc, x.clone(), span))?
        }
        Node::Neg(a) => -&rec(a)?,
        Node::Kron(a, b) => rec(a)?.kron(&rec(b)?),
        Node::Inv(a) => {
            let x = rec(a)?;
            if !x.is_square() {
                return Err(shape_err(span, format!("inverse of a {} matrix", dims(&x))));
            }
            x.inverse().map_err(|_| ExprError::SingularInverse { line, col })?
        }
        Node::Transpose(a) => rec(a)?.transpose(),
        Node::ConjTranspose(a) => rec(a)?.adjoint(),
        Node::MatrixLit(rows) => {
            let mut vals = Vec::new();
            for row in rows {
                let mut r = Vec::new();
                for e in row {
                    let v = rec(e)?;
                    if (v.rows(), v.cols()) != (1, 1) {
                        return Err(shape_err(e.span, format!("matrix entry is {}", dims(&v))));
                    }
                    r.push(v.get(0, 0).clone());
                }
                vals.push(r);
            }
            Matrix::from_rows(vals).expect("rows checked by the parser")
        }
    })
}

fn mul(x: Matrix, y: Matrix, span: Span) -> Result<Matrix, ExprError> {
    if (x.rows(), x.cols()) == (1, 1) {
        return Ok(y.scale(x.get(0, 0)));
    }
    if (y.rows(), y.cols()) == (1, 1) {
        return Ok(x.scale(y.get(0, 0)));
    }
    x.try_mul(&y).map_err(|_| shape_err(span, format!("{} times {}", dims(&x), dims(&y))))
}
