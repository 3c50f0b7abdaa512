use pencilforge_arith::{MatrixPoly, MultiPoly, GR};
use pencilforge_blockmat::Matrix;
use pencilforge_expr::*;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn var(n: usize, j: usize) -> MultiPoly {
    MultiPoly::var(n, j)
}

fn c(n: usize, v: i64) -> MultiPoly {
    MultiPoly::constant(n, GR::from_int(v))
}

#[test]
fn parses_basic_shapes() {
    let ast = parse("z2/z1").unwrap();
    let Node::Div(a, b) = &ast.node else { panic!("expected a division") };
    assert_eq!(a.node, Node::Var("z2".into()));
    assert_eq!(b.node, Node::Var("z1".into()));

    let ast = parse("[[1+z1, z2],[z2, 1]]").unwrap();
    let Node::MatrixLit(rows) = &ast.node else { panic!("expected a matrix") };
    assert_eq!((rows.len(), rows[0].len()), (2, 2));

    let ast = parse("inv([[1+z1]]) * [[9+55*w1]]").unwrap();
    let Node::Mul(a, _) = &ast.node else { panic!("expected a product") };
    assert!(matches!(a.node, Node::Inv(_)));
    let (f, vars) = compile("inv([[1+z1]]) * [[9+55*w1]]", Some(&names(&["z1", "w1"]))).unwrap();
    assert_eq!(vars, names(&["z1", "w1"]));
    assert_eq!(f.nvars(), 2);
}

#[test]
fn precedence() {
    // -z1^2 is -(z1^2); a - b - c is left associative; * binds tighter than +
    let (f, _) = compile("-z1^2 + 2*z1 - 3 - 1", None).unwrap();
    let expected = &(&(-&var(1, 0).pow(2)) + &var(1, 0).scale(&GR::from_int(2))) - &c(1, 4);
    assert_eq!(f.numerator().get(0, 0), &expected);
    let (f, _) = compile("z1/2/3", None).unwrap();
    assert_eq!(f.eval(&[GR::from_int(12)]).unwrap(), vec![GR::from_int(2)]);
}

#[test]
fn lowers_to_normal_form() {
    let (f, vars) = compile("z2/z1", None).unwrap();
    assert_eq!(vars, names(&["z1", "z2"]));
    assert_eq!(f.numerator(), &MatrixPoly::scalar(var(2, 1)));
    assert_eq!(f.denominator(), &var(2, 0));

    let (f, _) = compile("inv([[3+3*z1]])", None).unwrap();
    assert_eq!(f.numerator(), &MatrixPoly::scalar(c(1, 1)));
    assert_eq!(f.denominator(), &(&c(1, 3) + &var(1, 0).scale(&GR::from_int(3))));

    let (f, _) = compile("inv([[z1, 1],[1, z1]])", None).unwrap();
    let z = var(1, 0);
    let m1 = c(1, -1);
    assert_eq!(f.numerator(), &MatrixPoly::from_rows(1, vec![vec![z.clone(), m1.clone()], vec![m1, z.clone()]]).unwrap());
    assert_eq!(f.denominator(), &(&z.pow(2) - &c(1, 1)));
}

#[test]
fn rationals_and_imaginary_unit() {
    let (f, _) = compile("3/4*z1 + i", None).unwrap();
    let v = f.eval(&[GR::from_int(4)]).unwrap();
    assert_eq!(v[0], &GR::from_int(3) + &GR::i());
    let (f, _) = compile("[[1, i*z1],[-i*z1, 2]]", None).unwrap();
    assert!(f.is_hermitian());
    let (f, _) = compile("[[1, i*z1],[z1, 2]]*'", None).unwrap();
    let v = f.eval(&[GR::from_int(1)]).unwrap();
    assert_eq!(v[2], -&GR::i());
    let (f, _) = compile("[[1, z1],[0, 2]]'", None).unwrap();
    assert_eq!(f.eval(&[GR::from_int(5)]).unwrap()[2], GR::from_int(5));
}

#[test]
fn kronecker_and_powers() {
    let (f, _) = compile("kron([[1, z1],[0, 1]], [[2]])^2", None).unwrap();
    assert_eq!(f.eval(&[GR::from_int(3)]).unwrap(), vec![4, 24, 0, 4].into_iter().map(GR::from_int).collect::<Vec<_>>());
    let (f, _) = compile("[[z1, 1],[0, z1]]^0", None).unwrap();
    assert_eq!(f.numerator(), &MatrixPoly::identity(2, 1));
}

#[test]
fn variable_inference_orders_z_before_w() {
    let ast = parse("w2 + z10 + w1 + z2 + z10").unwrap();
    assert_eq!(infer_variables(&ast), names(&["z2", "z10", "w1", "w2"]));
    let err = compile("z1 + z3", Some(&names(&["z1", "z2"]))).unwrap_err();
    assert!(matches!(err, ExprError::UnknownVariable { ref name, .. } if name == "z3"));
}

#[test]
fn lowering_errors() {
    let e = compile("1/0", None).unwrap_err();
    assert!(matches!(e, ExprError::ZeroDivisor { line: 1, col: 2 }));
    assert!(!e.is_syntax());
    assert!(matches!(compile("z1/[[1,2],[3,4]]", None), Err(ExprError::DivisorNotScalar { .. })));
    assert!(matches!(compile("inv([[z1, z1],[z1, z1]])", None), Err(ExprError::SingularInverse { .. })));
    assert!(matches!(compile("[[1,2]] + [[1],[2]]", None), Err(ExprError::ShapeMismatch { .. })));
    assert!(matches!(compile("[[1,2]]", None), Err(ExprError::ShapeMismatch { .. })));
    assert!(matches!(compile("[[1,2],[3,4]] * [[1,2,3]]", None), Err(ExprError::ShapeMismatch { .. })));
    assert!(compile("z1 - z1 + (z1/z1 - 1)", None).is_ok());
    assert!(matches!(compile("1/(z1 - z1)", None), Err(ExprError::ZeroDivisor { .. })));
}

/// Rejected inputs with the offending lexeme marked by `^`.
#[test]
fn error_positions_point_into_the_lexeme() {
    let cases = [
        ("z1 + 1.5", "      ^"),
        ("z1 + x", "     ^"),
        ("z1 $ 2", "   ^"),
        ("(z1 + 2", "       ^"),
        ("[[1, 2], [3]]", "         ^"),
        ("z1 ^ z2", "     ^^"),
        ("z1 + * 2", "     ^"),
        ("1/0", " ^"),
        ("inv([[z1, z1],[z1, z1]])", "^^^"),
        ("z0", "^^"),
        ("z1 z2", "   ^^"),
        ("kron(z1 z2)", "        ^^"),
    ];
    for (src, marks) in cases {
        let err = compile(src, None).expect_err(src);
        let (line, col) = err.position();
        assert_eq!(line, 1, "{src}");
        let lo = marks.find('^').unwrap() + 1;
        let hi = marks.rfind('^').unwrap() + 1;
        assert!((lo..=hi).contains(&col), "{src}: column {col} outside {lo}..={hi} ({err})");
    }
    let err = parse("z1 +\n  ]").unwrap_err();
    assert_eq!(err.position(), (2, 3));
}

#[test]
fn lowering_agrees_with_direct_interpretation() {
    let corpus = [
        "z1",
        "z2/z1",
        "z2*z3/z1",
        "1 + z1",
        "3 + 3*z1",
        "(9 + 55*w1)/(3 + 3*z1)",
        "inv([[1+z1]]) * [[9+55*w1]]",
        "z1^2 - z2^2",
        "z1^3*z2 + 7",
        "(z1 + z2)/(z1 - z2)",
        "1/z1 + 1/z2",
        "1/(1 + z1^2)",
        "z1/(z2*z3) - z3/(z1*z2)",
        "i*z1 + 2",
        "(1 + i)*z1/(z2 - i)",
        "[[z1, 0],[0, z2]]",
        "[[1+z1, z2],[z2, 1]]",
        "[[z1, i*z2],[-i*z2, z1]]",
        "[[1/z1, 1],[1, 1/z2]]",
        "[[z1, 1],[1, z1]]^2",
        "inv([[z1, 1],[1, z1]])",
        "inv([[3+3*z1]])",
        "inv([[z1, z2],[0, z1]]) * [[1],[1]] * [[1, 1]]",
        "[[1, 2],[3, 4]] * [[z1, 0],[0, z2]]",
        "z1 * [[1, 2],[3, 4]]",
        "[[1, 2],[3, 4]] / (1 + z1)",
        "[[z1, 1],[2, z2]]'",
        "[[z1, i],[2, z2]]*'",
        "kron([[z1]], [[1, z2],[z2, 1]])",
        "kron([[1, z1],[0, 1]], [[2, 0],[w1, 1]])",
        "kron(inv([[1+z1]]), [[w1]])",
        "-z1",
        "-(z1 + z2)^2",
        "+z1 - -z2",
        "2/3*z1 - 5/7",
        "[[z1/2, 1/3],[1/3, z2/5]]",
        "inv([[1, z1],[z1, 1]]) + [[z2, 0],[0, z2]]",
        "inv(inv([[z1, 1],[0, z2]]))",
        "[[1, z1],[z1, 1]] * inv([[1, z1],[z1, 1]])",
        "(z1 + w1)*(z1 - w1)",
        "w1/w2",
        "z1*z2*z3*w1",
        "(z1^2 + 1)/(z2^2 + 1)",
        "[[z1, z2],[z3, z1]]^3 - [[1, 0],[0, 1]]",
        "inv([[z1, 1, 0],[1, z2, 1],[0, 1, z3]])",
        "[[1, 0],[0, 1]] - z1*inv([[z2, 1],[1, z3]])",
        "(z1 - i*z2)*(z1 + i*z2)",
        "[[z1, 1],[0, 1]]^0 + z2*[[0, 1],[1, 0]]",
        "[[1/(z1+1), 0],[0, 1/(z1-1)]] * [[z1, 1],[1, z1]]",
        "kron([[z1, 1],[1, z2]], inv([[w1]]))'",
    ];
    assert_eq!(corpus.len(), 50);
    let mut rng = 0x2545_f491_4f6c_dd1du64;
    let mut next = || {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        (rng % 41) as i64 - 20
    };
    for src in corpus {
        let ast = parse(src).unwrap_or_else(|e| panic!("{src}: {e}"));
        let vars = infer_variables(&ast);
        let f = lower(&ast, &vars).unwrap_or_else(|e| panic!("{src}: {e}"));
        let mut checked = 0;
        for _ in 0..40 {
            let point: Vec<GR> = (0..vars.len()).map(|_| GR::from_int(next())).collect();
            let (Ok(direct), Ok(value)) = (interpret(&ast, &vars, &point), f.eval(&point)) else { continue };
            let k = f.side();
            assert_eq!(direct, Matrix::from_vec(k, k, value).unwrap(), "{src} at {point:?}");
            checked += 1;
            if checked == 5 {
                break;
            }
        }
        assert_eq!(checked, 5, "{src}: too few nonsingular points");
    }
}
