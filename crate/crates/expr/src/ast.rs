use pencilforge_arith::GR;

/// Location of a lexeme: byte offset and length, 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub offset: usize,
    pub len: usize,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Const(GR),
    Var(String),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
    Neg(Box<Ast>),
    Kron(Box<Ast>, Box<Ast>),
    Inv(Box<Ast>),
    Transpose(Box<Ast>),
    ConjTranspose(Box<Ast>),
    MatrixLit(Vec<Vec<Ast>>),
}

/// A node with the span of the operator or literal that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ast {
    pub node: Node,
    pub span: Span,
}

impl Ast {
    pub fn new(node: Node, span: Span) -> Self {
        Self { node, span }
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Ast)) {
        f(self);
        match &self.node {
            Node::Const(_) | Node::Var(_) => {}
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) | Node::Kron(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Node::Pow(a, _) | Node::Neg(a) | Node::Inv(a) | Node::Transpose(a) | Node::ConjTranspose(a) => a.visit(f),
            Node::MatrixLit(rows) => rows.iter().flatten().for_each(|e| e.visit(f)),
        }
    }
}
