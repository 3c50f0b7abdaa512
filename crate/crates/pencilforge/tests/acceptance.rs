use std::time::{Duration, Instant};

use pencilforge::blockmat::{block_swap_matrix, schur, schur_other, swap_blocks, FactorMode};
use pencilforge::expr::compile;
use pencilforge::realize::{fixtures, pencil_kron_const, realize_simple_product, realize_square, KronFactor};
use pencilforge::schuralg::*;
use pencilforge::{
    check_pencil_structure, check_realization, realize_function, Matrix, PartitionedMatrix, Pencil, RationalMatrixFunction,
    Realization, RealizeOptions, GR,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn func(src: &str) -> RationalMatrixFunction {
    compile(src, None).expect("fixture expression compiles").0
}

fn passes(r: &Realization, f: &RationalMatrixFunction, trials: usize) -> Check {
    let rep = check_realization(r, f, trials, 1, 1 << 16).map_err(|e| e.to_string())?;
    ensure(rep.all_passed, || format!("mismatch at {:?}", rep.first_failure.as_ref().map(|x| &x.point)))
}

fn q(a: i64, b: i64) -> GR {
    GR::ratio(a, b)
}

fn mat(rows: &[&[(i64, i64)]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| q(a, b)).collect()).collect()).unwrap()
}

struct Gen(ChaCha8Rng);

impl Gen {
    fn new(seed: u64) -> Self {
        Gen(ChaCha8Rng::seed_from_u64(seed))
    }

    fn entry(&mut self, complex: bool) -> GR {
        let re = q(self.0.random_range(-5..=5), self.0.random_range(1..=3));
        if complex {
            GR::complex(re, GR::from_int(self.0.random_range(-3..=3)))
        } else {
            re
        }
    }

    fn matrix(&mut self, rows: usize, cols: usize, complex: bool) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| self.entry(complex))
    }

    fn side(&mut self, lo: usize, hi: usize) -> usize {
        self.0.random_range(lo..=hi)
    }

    /// Random `side × side` matrix split at `k`, resampled until `A₂₂` is
    /// invertible.
    fn part(&mut self, side: usize, k: usize, complex: bool) -> PartitionedMatrix {
        loop {
            let p = PartitionedMatrix::new(self.matrix(side, side, complex), k).unwrap();
            if p.a22().is_invertible() {
                return p;
            }
        }
    }

    fn any_part(&mut self, max: usize) -> PartitionedMatrix {
        let n = self.side(1, max);
        let k = self.side(1, n);
        self.part(n, k, true)
    }

    fn point(&mut self, n: usize) -> Vec<GR> {
        (0..n).map(|_| GR::complex(GR::from_int(self.0.random_range(-50..=50)), GR::from_int(self.0.random_range(-50..=50)))).collect()
    }
}

fn sym(p: &PartitionedMatrix) -> PartitionedMatrix {
    p.map(|m| m + &m.transpose())
}

fn herm(p: &PartitionedMatrix) -> PartitionedMatrix {
    p.map(|m| m + &m.adjoint())
}

fn sc(p: &PartitionedMatrix) -> Matrix {
    schur(p).expect("trailing block invertible")
}

fn witness(w: Result<SchurWitness, SchurError>) -> Result<SchurWitness, String> {
    w.map_err(|e| e.to_string())
}

fn same(got: &Matrix, want: &Matrix, what: &str) -> Check {
    ensure(got == want, || format!("{what}: got {got:?}, expected {want:?}"))
}

fn criterion_1() -> Check {
    let r = realize_square(0, 1).map_err(|e| e.to_string())?;
    same(r.pencil.coeff(0), &Matrix::from_i64(&[&[0, 0], &[0, -1]]), "square A0")?;
    same(r.pencil.coeff(1), &Matrix::from_i64(&[&[0, 1], &[1, 0]]), "square A1")?;
    ensure(r.split == 1, || "square split".into())?;

    let p = realize_simple_product(0, 1, 2).map_err(|e| e.to_string())?;
    let z = (0, 1);
    same(p.pencil.coeff(0), &mat(&[&[z, z, z], &[z, (-1, 4), z], &[z, z, (1, 4)]]), "product A0")?;
    same(p.pencil.coeff(1), &mat(&[&[z, (1, 4), (-1, 4)], &[(1, 4), z, z], &[(-1, 4), z, z]]), "product A1")?;
    same(p.pencil.coeff(2), &mat(&[&[z, (1, 4), (1, 4)], &[(1, 4), z, z], &[(1, 4), z, z]]), "product A2")?;
    let det = p.a22_poly().det();
    ensure(det.is_constant() && det.eval(&[GR::zero(), GR::zero()]) == Ok(q(-1, 16)), || format!("det A22 = {det:?}"))
}

fn criterion_2() -> Check {
    let a = fixtures::z2_over_z1();
    ensure(a.side() == 4 && a.split == 1, || "z2/z1 fixture shape".into())?;
    passes(&a, &func("z2/z1"), 20)?;
    let b = fixtures::z2z3_over_z1();
    ensure(b.side() == 3 && b.split == 1 && b.pencil.coeff(0).is_zero(), || "z2z3/z1 fixture shape".into())?;
    passes(&b, &func("z2*z3/z1"), 20)
}

fn criterion_3() -> Check {
    for src in ["z2/z1", "z2*z3/z1"] {
        let f = func(src);
        let r = realize_function(&f, &RealizeOptions::default()).map_err(|e| e.to_string())?;
        passes(&r, &f, 20)?;
        let profile = f.symmetry_profile();
        let got = check_pencil_structure(&r.pencil);
        ensure(got == profile, || format!("{src}: pencil structure {got:?}, profile {profile:?}"))?;
        if profile.homogeneous {
            ensure(r.pencil.coeff(0).is_zero(), || format!("{src}: A0 is not zero"))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    let a = PartitionedMatrix::new(Matrix::from_i64(&[&[0, 2], &[2, 4]]), 1).unwrap();
    let b = PartitionedMatrix::new(Matrix::from_i64(&[&[2, 3], &[3, 5]]), 1).unwrap();
    let right = witness(sc_kron_right(&a, b.matrix()))?;
    same(&right.schur().unwrap(), &Matrix::from_i64(&[&[-2, -3], &[-3, -5]]), "kron right")?;
    let left = witness(sc_kron_left(a.matrix(), &b))?;
    same(&left.schur().unwrap(), &mat(&[&[(0, 1), (2, 5)], &[(2, 5), (4, 5)]]), "kron left")?;
    let both = witness(sc_kron(&a, &b))?;
    same(&both.schur().unwrap(), &mat(&[&[(-1, 5)]]), "kron")?;
    same(both.matrix(), &Matrix::from_i64(&[&[0, 4, 0, 6], &[4, 8, 6, 12], &[0, 6, 0, 10], &[6, 12, 10, 20]]), "kron M")?;
    ensure(both.split() == 1, || "kron split".into())
}

fn criterion_5() -> Check {
    let a = PartitionedMatrix::new(Matrix::from_i64(&[&[4, 3, 1, 1], &[4, 2, 2, 1], &[1, 1, 1, 1], &[2, 1, 2, 1]]), 2).unwrap();
    let c = sc_compose(&a, 1).map_err(|e| e.to_string())?;
    same(&c.witness.schur().unwrap(), &Matrix::from_i64(&[&[-1]]), "C/C22")?;
    same(&c.c22_over_a22, &Matrix::from_i64(&[&[1]]), "C22/A22")
}

fn criterion_6() -> Check {
    let b = Pencil::new(vec![Matrix::from_i64(&[&[9]]), Matrix::zeros(1, 1), Matrix::from_i64(&[&[55]])]).unwrap();
    let r = pencil_kron_const(&fixtures::inverse_example(), &KronFactor::Pencil(b)).map_err(|e| e.to_string())?;
    let d = fixtures::kron_example();
    let mut g = Gen::new(6);
    for _ in 0..20 {
        let z = g.point(2);
        let (x, y) = (r.eval(&z), d.eval(&z));
        ensure(x == y, || format!("constructed and printed pencils differ at {z:?}"))?;
    }
    let entries: Vec<GR> = d.pencil.coeffs().iter().flat_map(|m| (0..4).flat_map(move |i| m.row(i).to_vec())).collect();
    for v in [q(-27, 1), q(165, 4), q(-165, 4)] {
        ensure(entries.contains(&v), || format!("printed pencil lacks {v}"))?;
    }
    passes(&d, &func("(9 + 55*w1)/(3 + 3*z1)"), 20)?;
    passes(&r, &func("(9 + 55*w1)/(3 + 3*z1)"), 20)
}

fn criterion_7() -> Check {
    let mut g = Gen::new(7);
    for case in 0..100 {
        let ctx = |op: &str| format!("case {case}, {op}");
        let a = g.any_part(5);
        let k = a.split();
        let s = sc(&a);

        let lam = loop {
            let l = g.entry(true);
            if !l.is_zero() {
                break l;
            }
        };
        same(&witness(sc_scale(&a, &lam))?.schur().unwrap(), &s.scale(&lam), &ctx("scale"))?;
        let c = g.matrix(k, k, true);
        same(&witness(sc_add_const(&a, &c))?.schur().unwrap(), &(&s + &c), &ctx("add_const"))?;

        let b = {
            let n = k + g.side(0, 5 - k);
            g.part(n, k, true)
        };
        let sb = sc(&b);
        same(&witness(sc_add(&a, &b))?.schur().unwrap(), &(&s + &sb), &ctx("add"))?;
        same(&witness(sc_matmul(&a, &b))?.schur().unwrap(), &(&s * &sb), &ctx("matmul"))?;

        let l = g.side(0, 2);
        same(&witness(sc_short_left(&a, l))?.schur().unwrap(), &s.direct_sum(&Matrix::zeros(l, l)), &ctx("short_left"))?;
        same(&witness(sc_short_right(&a, l))?.schur().unwrap(), &Matrix::zeros(l, l).direct_sum(&s), &ctx("short_right"))?;
        let other = g.any_part(5);
        same(&witness(sc_dsum(&a, &other))?.schur().unwrap(), &s.direct_sum(&sc(&other)), &ctx("dsum"))?;

        let m = g.side(1, 3);
        let (bl, cr) = (g.matrix(m, k, true), g.matrix(k, m, true));
        same(&witness(sc_sandwich(&bl, &a, &cr))?.schur().unwrap(), &(&(&bl * &s) * &cr), &ctx("sandwich"))?;

        if let Ok(inv) = a.matrix().inverse() {
            same(&witness(sc_inv_as_schur(a.matrix()))?.schur().unwrap(), &inv, &ctx("inv_as_schur"))?;
        }
        if let Ok(si) = s.inverse() {
            same(&witness(sc_inv_of_schur(&a))?.schur().unwrap(), &si, &ctx("inv_of_schur"))?;
        }

        let small = g.any_part(3);
        let ss = sc(&small);
        let cm = loop {
            let n = g.side(1, 2);
            let m = g.matrix(n, n, true);
            if m.is_invertible() {
                break m;
            }
        };
        same(&witness(sc_kron_right(&small, &cm))?.schur().unwrap(), &ss.kron(&cm), &ctx("kron_right"))?;
        same(&witness(sc_kron_left(&cm, &small))?.schur().unwrap(), &cm.kron(&ss), &ctx("kron_left"))?;
        if s.is_invertible() && ss.is_invertible() {
            same(&witness(sc_kron(&a, &small))?.schur().unwrap(), &s.kron(&ss), &ctx("kron"))?;
        }

        let one = {
            let n = g.side(1, 5);
            g.part(n, 1, true)
        };
        let bn = g.side(1, 4);
        let bm = g.matrix(bn, bn, true);
        let w = witness(sc_scalar_product(&one, &bm, None))?;
        same(&w.schur().unwrap(), &bm.scale(sc(&one).get(0, 0)), &ctx("scalar_product"))?;

        if k >= 2 {
            let l = g.side(1, k - 1);
            let inner = PartitionedMatrix::new(s.clone(), k - l).unwrap();
            if let Ok(expected) = schur(&inner) {
                let c = sc_compose(&a, l).map_err(|e| format!("{}: {e}", ctx("compose")))?;
                same(&c.witness.schur().unwrap(), &expected, &ctx("compose"))?;
            }
        }

        // structured inputs
        let (sa, ha) = (sym(&a), herm(&a));
        let (sbb, hbb) = (sym(&b), herm(&b));
        let structured = |p: &PartitionedMatrix| p.a22().is_invertible();
        if structured(&sa) && structured(&sbb) {
            ensure(witness(sc_add(&sa, &sbb))?.matrix().is_symmetric(), || ctx("add symmetry"))?;
            ensure(witness(sc_dsum(&sa, &sbb))?.matrix().is_symmetric(), || ctx("dsum symmetry"))?;
            ensure(witness(sc_short_left(&sa, l))?.matrix().is_symmetric(), || ctx("short_left symmetry"))?;
            ensure(witness(sc_sandwich(&bl, &sa, &bl.transpose()))?.matrix().is_symmetric(), || ctx("sandwich symmetry"))?;
            ensure(witness(sc_scale(&sa, &lam))?.matrix().is_symmetric(), || ctx("scale symmetry"))?;
            let cs = &cm + &cm.transpose();
            if cs.is_invertible() {
                ensure(witness(sc_kron_right(&sa, &cs))?.matrix().is_symmetric(), || ctx("kron_right symmetry"))?;
            }
            if sc(&sa).is_invertible() {
                ensure(witness(sc_inv_of_schur(&sa))?.matrix().is_symmetric(), || ctx("inv_of_schur symmetry"))?;
            }
        }
        if structured(&ha) && structured(&hbb) {
            ensure(witness(sc_add(&ha, &hbb))?.matrix().is_hermitian(), || ctx("add hermitian"))?;
            ensure(witness(sc_dsum(&ha, &hbb))?.matrix().is_hermitian(), || ctx("dsum hermitian"))?;
            ensure(witness(sc_short_right(&ha, l))?.matrix().is_hermitian(), || ctx("short_right hermitian"))?;
            ensure(witness(sc_sandwich(&bl, &ha, &bl.adjoint()))?.matrix().is_hermitian(), || ctx("sandwich hermitian"))?;
            let hs = herm(&small);
            if hs.a22().is_invertible() && sc(&ha).is_invertible() && sc(&hs).is_invertible() {
                ensure(witness(sc_kron(&ha, &hs))?.matrix().is_hermitian(), || ctx("kron hermitian"))?;
            }
        }
        let so = sym(&one);
        if so.a22().is_invertible() {
            let bs = &bm + &bm.transpose();
            let w = witness(sc_scalar_product(&so, &bs, Some(FactorMode::Symmetric)))?;
            same(&w.schur().unwrap(), &bs.scale(sc(&so).get(0, 0)), &ctx("symmetric scalar_product"))?;
            ensure(w.matrix().is_symmetric(), || ctx("scalar_product symmetry"))?;
        }
    }
    Ok(())
}

fn random_pencil(g: &mut Gen, side: usize, n: usize, complex: bool) -> Vec<Matrix> {
    (0..=n).map(|_| g.matrix(side, side, complex)).collect()
}

fn criterion_8() -> Check {
    let mut g = Gen::new(8);
    let n = 2;
    let conj = |z: &[GR]| z.iter().map(GR::conj).collect::<Vec<_>>();
    for class in ["real", "symmetric", "hermitian", "homogeneous"] {
        let mut built = 0;
        while built < 25 {
            let side = g.side(2, 4);
            let split = g.side(1, side - 1);
            let coeffs: Vec<Matrix> = match class {
                "real" => random_pencil(&mut g, side, n, false),
                "symmetric" => random_pencil(&mut g, side, n, true).iter().map(|m| m + &m.transpose()).collect(),
                "hermitian" => random_pencil(&mut g, side, n, true).iter().map(|m| m + &m.adjoint()).collect(),
                _ => {
                    let mut c = random_pencil(&mut g, side, n, true);
                    c[0] = Matrix::zeros(side, side);
                    c
                }
            };
            let r = Realization::new(Pencil::new(coeffs).unwrap(), split, class).unwrap();
            if r.eval(&g.point(n)).is_err() {
                continue;
            }
            built += 1;
            let mut checked = 0;
            while checked < 8 {
                let z = g.point(n);
                let ok = match class {
                    "real" => match (r.eval(&z), r.eval(&conj(&z))) {
                        (Ok(a), Ok(b)) => Some(b == a.conj()),
                        _ => None,
                    },
                    "symmetric" => r.eval(&z).ok().map(|a| a == a.transpose()),
                    "hermitian" => match (r.eval(&z), r.eval(&conj(&z))) {
                        (Ok(a), Ok(b)) => Some(b == a.adjoint()),
                        _ => None,
                    },
                    _ => {
                        let lam = g.entry(true);
                        if lam.is_zero() {
                            None
                        } else {
                            let scaled: Vec<GR> = z.iter().map(|x| x * &lam).collect();
                            match (r.eval(&z), r.eval(&scaled)) {
                                (Ok(a), Ok(b)) => Some(b == a.scale(&lam)),
                                _ => None,
                            }
                        }
                    }
                };
                match ok {
                    Some(true) => checked += 1,
                    Some(false) => return Err(format!("{class} identity fails at {z:?}")),
                    None => {}
                }
            }
        }
    }
    Ok(())
}

fn criterion_9() -> Check {
    let mut g = Gen::new(9);
    let mut done = 0;
    while done < 100 {
        let n = g.side(2, 5);
        let k = g.side(1, n - 1);
        let p = n - k;
        let a = PartitionedMatrix::new(g.matrix(n, n, true), k).unwrap();
        if !a.a22().is_invertible() || !a.a11().is_invertible() {
            continue;
        }
        done += 1;
        let ctx = |what: &str| format!("case {done}: {what}");
        let a22i = a.a22().inverse().unwrap();
        let a11i = a.a11().inverse().unwrap();
        let blocks2 = Matrix::from_blocks(
            &[k, p],
            &[k, p],
            &[
                vec![Some(&sc(&a)), Some(&(&a.a12() * &a22i))],
                vec![Some(&-&(&a22i * &a.a21())), Some(&a22i)],
            ],
        )
        .unwrap();
        let t2 = ppt2(&a).map_err(|e| e.to_string())?;
        same(&t2, &blocks2, &ctx("ppt2 blocks"))?;
        let so = schur_other(&a).unwrap();
        let blocks1 = Matrix::from_blocks(
            &[k, p],
            &[k, p],
            &[
                vec![Some(&a11i), Some(&-&(&a11i * &a.a12()))],
                vec![Some(&(&a.a21() * &a11i)), Some(&so)],
            ],
        )
        .unwrap();
        let t1 = ppt1(&a).map_err(|e| e.to_string())?;
        same(&t1, &blocks1, &ctx("ppt1 blocks"))?;

        let u = block_swap_matrix(n, k);
        same(&(&(&u * &ppt2(&swap_blocks(&a)).unwrap()) * &u.transpose()), &t1, &ctx("U-conjugation"))?;

        same(&witness(ppt_as_schur(&a, PptKind::Ppt2, false))?.schur().unwrap(), &t2, &ctx("ppt2 witness"))?;
        same(&witness(ppt_as_schur(&a, PptKind::Ppt1, false))?.schur().unwrap(), &t1, &ctx("ppt1 witness"))?;
        let j = Matrix::identity(k).direct_sum(&-&Matrix::identity(p));
        let kk = (-&Matrix::identity(k)).direct_sum(&Matrix::identity(p));
        same(&witness(ppt_as_schur(&a, PptKind::Ppt2, true))?.schur().unwrap(), &(&j * &t2), &ctx("signed ppt2"))?;
        same(&witness(ppt_as_schur(&a, PptKind::Ppt1, true))?.schur().unwrap(), &(&kk * &t1), &ctx("signed ppt1"))?;

        for (s, check) in [(sym(&a), Matrix::is_symmetric as fn(&Matrix) -> bool), (herm(&a), Matrix::is_hermitian)] {
            if s.a22().is_invertible() {
                ensure(check(witness(ppt_as_schur(&s, PptKind::Ppt2, true))?.matrix()), || ctx("signed ppt2 structure"))?;
            }
            if s.a11().is_invertible() {
                ensure(check(witness(ppt_as_schur(&s, PptKind::Ppt1, true))?.matrix()), || ctx("signed ppt1 structure"))?;
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Check {
    let r = fixtures::homogeneous_with_constant_term();
    let f = func("z1");
    ensure(f.symmetry_profile().homogeneous, || "z1 not reported homogeneous".into())?;
    ensure(!r.pencil.coeff(0).is_zero(), || "fixture has A0 = 0".into())?;
    passes(&r, &f, 20)?;
    let flags = check_pencil_structure(&r.pencil);
    ensure(flags.real && flags.symmetric && flags.hermitian && !flags.homogeneous, || format!("structure {flags:?}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("golden gadgets", criterion_1, Some(Duration::from_secs(1))),
        ("printed pencils as fixtures", criterion_2, Some(Duration::from_secs(1))),
        ("synthesizer soundness", criterion_3, None),
        ("Kronecker examples", criterion_4, None),
        ("composition example", criterion_5, None),
        ("(9+55w1)/(3+3z1) pipeline", criterion_6, None),
        ("calculus oracle suite", criterion_7, Some(Duration::from_secs(30))),
        ("structure converses", criterion_8, None),
        ("PPT suite", criterion_9, None),
        ("homogeneous with A0 != 0", criterion_10, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let res = match (res, limit) {
            (Ok(()), Some(l)) if took > *l => Err(format!("took {took:?}, limit {l:?}")),
            (r, _) => r,
        };
        match res {
            Ok(()) => println!("PASS {:>2} {name} ({:.2?})", i + 1, took),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({:.2?}): {e}", i + 1, took);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
