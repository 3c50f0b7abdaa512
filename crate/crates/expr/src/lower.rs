use pencilforge_arith::{MatrixPoly, MultiPoly, RationalMatrixFunction};

use crate::{Ast, ExprError, Node, Span};

/// Rectangular matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<MultiPoly>,
}

impl PolyMatrix {
    fn scalar(p: MultiPoly) -> Self {
        Self { rows: 1, cols: 1, data: vec![p] }
    }

    fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let data = (0..rows * cols).map(|t| f(t / cols, t % cols)).collect();
        Self { rows, cols, data }
    }

    fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.data[i * self.cols + j]
    }

    fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn is_scalar(&self) -> bool {
        self.rows == 1 && self.cols == 1
    }

    fn shape(&self) -> String {
        format!("{}x{}", self.rows, self.cols)
    }

    fn to_square(&self, nvars: usize) -> MatrixPoly {
        MatrixPoly::from_fn(self.rows, nvars, |i, j| self.get(i, j).clone())
    }
}

/// `p / q` with `q ≢ 0`.
#[derive(Clone, Debug)]
struct Frac {
    p: PolyMatrix,
    q: MultiPoly,
}

struct Lowerer<'a> {
    vars: &'a [String],
}

fn shape_err(span: Span, msg: String) -> ExprError {
    ExprError::ShapeMismatch { msg, line: span.line, col: span.col }
}

fn times(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() && a.constant_term().is_one() {
        b.clone()
    } else if b.is_constant() && b.constant_term().is_one() {
        a.clone()
    } else {
        a * b
    }
}

impl Lowerer<'_> {
    fn n(&self) -> usize {
        self.vars.len()
    }

    fn one(&self) -> MultiPoly {
        MultiPoly::one(self.n())
    }

    fn lower(&self, ast: &Ast) -> Result<Frac, ExprError> {
        let span = ast.span;
        let n = self.n();
        Ok(match &ast.node {
            Node::Const(c) => Frac { p: PolyMatrix::scalar(MultiPoly::constant(n, c.clone())), q: self.one() },
            Node::Var(name) => {
                let j = self.vars.iter().position(|v| v == name).ok_or_else(|| ExprError::UnknownVariable {
                    name: name.clone(),
                    line: span.line,
                    col: span.col,
                })?;
                Frac { p: PolyMatrix::scalar(MultiPoly::var(n, j)), q: self.one() }
            }
            Node::Add(a, b) => self.add(self.lower(a)?, self.lower(b)?, false, span)?,
            Node::Sub(a, b) => self.add(self.lower(a)?, self.lower(b)?, true, span)?,
            Node::Mul(a, b) => self.mul(self.lower(a)?, self.lower(b)?, span)?,
            Node::Div(a, b) => {
                let (x, y) = (self.lower(a)?, self.lower(b)?);
                if !y.p.is_scalar() {
                    return Err(ExprError::DivisorNotScalar { line: span.line, col: span.col });
                }
                let d = y.p.data[0].clone();
                if d.is_zero() {
                    return Err(ExprError::ZeroDivisor { line: span.line, col: span.col });
                }
                Frac { p: x.p.map(|e| times(e, &y.q)), q: times(&x.q, &d) }
            }
            Node::Pow(a, e) => {
                let x = self.lower(a)?;
                if x.p.rows != x.p.cols {
                    return Err(shape_err(span, format!("power of a {} matrix", x.p.shape())));
                }
                let mut acc = Frac {
                    p: PolyMatrix::from_fn(x.p.rows, x.p.rows, |i, j| if i == j { self.one() } else { MultiPoly::zero(n) }),
                    q: self.one(),
                };
                for _ in 0..*e {
                    acc = self.mul(acc, x.clone(), span)?;
                }
                acc
            }
            Node::Neg(a) => {
                let x = self.lower(a)?;
                Frac { p: x.p.map(|e| -e), q: x.q }
            }
            Node::Kron(a, b) => {
                let (x, y) = (self.lower(a)?, self.lower(b)?);
                let (r, c) = (x.p.rows * y.p.rows, x.p.cols * y.p.cols);
                let p = PolyMatrix::from_fn(r, c, |i, j| {
                    x.p.get(i / y.p.rows, j / y.p.cols) * y.p.get(i % y.p.rows, j % y.p.cols)
                });
                Frac { p, q: times(&x.q, &y.q) }
            }
            Node::Inv(a) => {
                let x = self.lower(a)?;
                if x.p.rows != x.p.cols {
                    return Err(shape_err(span, format!("inverse of a {} matrix", x.p.shape())));
                }
                // (P/q)⁻¹ = q·adj(P)/det(P)
                let (det, adj) = x.p.to_square(n).det_adj();
                if det.is_zero() {
                    return Err(ExprError::SingularInverse { line: span.line, col: span.col });
                }
                let k = x.p.rows;
                Frac { p: PolyMatrix::from_fn(k, k, |i, j| times(adj.get(i, j), &x.q)), q: det }
            }
            Node::Transpose(a) => {
                let x = self.lower(a)?;
                Frac { p: PolyMatrix::from_fn(x.p.cols, x.p.rows, |i, j| x.p.get(j, i).clone()), q: x.q }
            }
            Node::ConjTranspose(a) => {
                let x = self.lower(a)?;
                Frac { p: PolyMatrix::from_fn(x.p.cols, x.p.rows, |i, j| x.p.get(j, i).conj()), q: x.q.conj() }
            }
            Node::MatrixLit(rows) => {
                let mut entries = Vec::new();
                for e in rows.iter().flatten() {
                    let f = self.lower(e)?;
                    if !f.p.is_scalar() {
                        return Err(shape_err(e.span, format!("matrix entry is {}", f.p.shape())));
                    }
                    entries.push(f);
                }
                // common denominator: product of the distinct entry denominators
                let mut dens: Vec<MultiPoly> = Vec::new();
                for f in &entries {
                    if !(f.q.is_constant() && f.q.constant_term().is_one()) && !dens.contains(&f.q) {
                        dens.push(f.q.clone());
                    }
                }
                let q = dens.iter().fold(self.one(), |acc, d| times(&acc, d));
                let cols = rows[0].len();
                let p = PolyMatrix::from_fn(rows.len(), cols, |i, j| {
                    let f = &entries[i * cols + j];
                    dens.iter().filter(|d| **d != f.q).fold(f.p.data[0].clone(), |acc, d| times(&acc, d))
                });
                Frac { p, q }
            }
        })
    }

    fn add(&self, x: Frac, y: Frac, negate: bool, span: Span) -> Result<Frac, ExprError> {
        if (x.p.rows, x.p.cols) != (y.p.rows, y.p.cols) {
            return Err(shape_err(span, format!("{} and {}", x.p.shape(), y.p.shape())));
        }
        let combine = |a: &MultiPoly, b: &MultiPoly| if negate { a - b } else { a + b };
        if x.q == y.q {
            let p = PolyMatrix { data: x.p.data.iter().zip(&y.p.data).map(|(a, b)| combine(a, b)).collect(), ..x.p };
            return Ok(Frac { p, q: x.q });
        }
        let p = PolyMatrix {
            data: x.p.data.iter().zip(&y.p.data).map(|(a, b)| combine(&times(a, &y.q), &times(b, &x.q))).collect(),
            ..x.p
        };
        Ok(Frac { p, q: times(&x.q, &y.q) })
    }

    fn mul(&self, x: Frac, y: Frac, span: Span) -> Result<Frac, ExprError> {
        let q = times(&x.q, &y.q);
        if x.p.is_scalar() {
            let s = &x.p.data[0];
            return Ok(Frac { p: y.p.map(|e| times(s, e)), q });
        }
        if y.p.is_scalar() {
            let s = &y.p.data[0];
            return Ok(Frac { p: x.p.map(|e| times(e, s)), q });
        }
        if x.p.cols != y.p.rows {
            return Err(shape_err(span, format!("{} times {}", x.p.shape(), y.p.shape())));
        }
        let n = self.n();
        let p = PolyMatrix::from_fn(x.p.rows, y.p.cols, |i, j| {
            (0..x.p.cols).fold(MultiPoly::zero(n), |acc, t| &acc + &(x.p.get(i, t) * y.p.get(t, j)))
        });
        Ok(Frac { p, q })
    }
}

/// `f = P/q` for the expression over the ordered variables `vars`. The
/// result must be square.
pub fn lower(ast: &Ast, vars: &[String]) -> Result<RationalMatrixFunction, ExprError> {
    let f = Lowerer { vars }.lower(ast)?;
    if f.p.rows != f.p.cols {
        return Err(shape_err(ast.span, format!("result is {}, expected a square matrix", f.p.shape())));
    }
    let p = f.p.to_square(vars.len());
    Ok(RationalMatrixFunction::new(p, f.q).expect("denominator is a product of nonzero polynomials"))
}
