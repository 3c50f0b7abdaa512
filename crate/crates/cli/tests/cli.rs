use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pencilforge::realize::fixtures;
use pencilforge::{Matrix, Pencil, Realization};
use pencilforge_cli::PencilDocument;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pencilforge"));
    c.env_remove(pencilforge_cli::SEED_ENV);
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("z{i}")).collect()
}

fn write_doc(dir: &Path, name: &str, r: &Realization) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, PencilDocument::from_realization(r, &names(r.nvars())).to_json()).unwrap();
    path
}

fn read_doc(path: &Path) -> PencilDocument {
    PencilDocument::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn constant_doc(dir: &Path, name: &str, rows: &[&[i64]], split: usize) -> PathBuf {
    let r = Realization::new(Pencil::constant(Matrix::from_i64(rows), 0), split, "constant").unwrap();
    write_doc(dir, name, &r)
}

fn read_doc_text(text: &str) -> PencilDocument {
    PencilDocument::from_json(text).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn realize_ratio_writes_verified_document() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out.pencil.json");
    let o = run(&["realize", "-e", "z2/z1", "--symmetry", "auto", "-o", p(&out)]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("flags: real, symmetric, hermitian"), "{err}");
    assert!(err.contains("passed"), "{err}");
    let doc = read_doc(&out);
    assert!(doc.flags.real && doc.flags.symmetric && doc.flags.hermitian);
    assert_eq!(doc.variables, names(2));
    assert_eq!(code(&run(&["verify", p(&out), "-e", "z2/z1", "--trials", "20"])), 0);
}

#[test]
fn realize_homogeneous_force_has_zero_constant_term() {
    let o = run(&["realize", "-e", "[[z2*z3/z1]]", "--homogeneous", "force"]);
    assert_eq!(code(&o), 0);
    let doc = PencilDocument::from_json(&stdout(&o)).unwrap();
    let r = doc.to_realization().unwrap();
    assert!(r.pencil.coeff(0).is_zero());
    assert!(doc.flags.homogeneous);
}

#[test]
fn realize_error_codes() {
    assert_eq!(code(&run(&["realize", "-e", "1/0"])), 3);
    assert_eq!(code(&run(&["realize", "-e", "z1 +"])), 2);
    assert_eq!(code(&run(&["realize", "-e", "z2/z1", "--homogeneous", "force"])), 4);
    assert_eq!(code(&run(&["realize", "-e", "i*z1", "--real", "force"])), 4);
    assert_eq!(code(&run(&["realize"])), 2);
}

#[test]
fn verify_fixture_mutation_and_wrong_expression() {
    let dir = TempDir::new().unwrap();
    let good = write_doc(dir.path(), "good.json", &fixtures::z2_over_z1());
    assert_eq!(code(&run(&["verify", p(&good), "-e", "z2/z1"])), 0);

    let wrong = run(&["verify", p(&good), "-e", "z1/z2"]);
    assert_eq!(code(&wrong), 1);
    assert!(stdout(&wrong).contains("point: ("));

    let mut r = fixtures::z2_over_z1();
    let mut a2 = r.pencil.coeff(2).clone();
    a2.set(0, 1, pencilforge::GR::from_int(2));
    a2.set(1, 0, pencilforge::GR::from_int(2));
    r.pencil.set_coeff(2, a2);
    let bad = write_doc(dir.path(), "bad.json", &r);
    let o = run(&["verify", p(&bad), "-e", "z2/z1"]);
    assert_eq!(code(&o), 1);
    let report = stdout(&o);
    assert!(report.contains("result: fail"));
    assert!(report.contains("expected: [[") && report.contains("got: [["), "{report}");
}

#[test]
fn verify_counterexample_is_exact_and_reproducible() {
    let dir = TempDir::new().unwrap();
    let good = write_doc(dir.path(), "good.json", &fixtures::z2_over_z1());
    let a = stdout(&run(&["verify", p(&good), "-e", "z1/z2", "--seed", "9"]));
    let b = stdout(&bin().env(pencilforge_cli::SEED_ENV, "9").args(["verify", p(&good), "-e", "z1/z2"]).output().unwrap());
    assert_eq!(a, b);
    assert!(a.contains("seed: 9"));
    let c = stdout(&run(&["verify", p(&good), "-e", "z1/z2"]));
    assert!(c.contains("seed: 1"));
}

#[test]
fn verify_rejects_identically_singular_pencil() {
    let dir = TempDir::new().unwrap();
    let r = Realization::new(Pencil::new(vec![Matrix::from_i64(&[&[1, 0], &[0, 0]]), Matrix::zeros(2, 2)]).unwrap(), 1, "x")
        .unwrap();
    let path = write_doc(dir.path(), "sing.json", &r);
    assert_eq!(code(&run(&["verify", p(&path), "-e", "1"])), 5);
}

#[test]
fn transform_ppt2_of_constant_document() {
    let dir = TempDir::new().unwrap();
    let a = constant_doc(dir.path(), "a.json", &[&[0, 2], &[2, 4]], 1);
    let out = dir.path().join("ppt.json");
    assert_eq!(code(&run(&["transform", p(&a), "ppt2", "-o", p(&out)])), 0);
    let doc = read_doc(&out);
    let r = doc.to_realization().unwrap();
    let expected = Matrix::from_vec(
        2,
        2,
        ["-1", "1/2", "-1/2", "1/4"].iter().map(|s| s.parse().unwrap()).collect(),
    )
    .unwrap();
    assert_eq!(r.pencil.coeff(0), &expected);
    assert_eq!(doc.provenance.last().map(String::as_str), Some("ppt2"));
    assert_eq!(code(&run(&["transform", p(&a), "ppt1"])), 6);
}

#[test]
fn transform_compose_on_composition_example() {
    let dir = TempDir::new().unwrap();
    let a = constant_doc(dir.path(), "c.json", &[&[4, 3, 1, 1], &[4, 2, 2, 1], &[1, 1, 1, 1], &[2, 1, 2, 1]], 2);
    let out = dir.path().join("composed.json");
    assert_eq!(code(&run(&["transform", p(&a), "compose", "--inner", "1", "-o", p(&out)])), 0);
    let r = read_doc(&out).to_realization().unwrap();
    assert_eq!(r.split, 1);
    assert_eq!(stdout(&run(&["eval", p(&out)])), "[[-1]]\n");
    let s = read_doc_text(&stdout(&run(&["transform", p(&a), "schur"])));
    assert_eq!(s.to_realization().unwrap().pencil.coeff(0), &Matrix::from_i64(&[&[3, 2], &[2, 1]]));
}

#[test]
fn transform_dsum_add_and_kron() {
    let dir = TempDir::new().unwrap();
    let a = write_doc(dir.path(), "a.json", &fixtures::z2z3_over_z1());
    let b = dir.path().join("b.json");
    assert_eq!(code(&run(&["realize", "-e", "z1 + 2*z3", "--vars", "z1,z2,z3", "-o", p(&b)])), 0);
    let (ra, rb) = (read_doc(&a).to_realization().unwrap(), read_doc(&b).to_realization().unwrap());

    let d = dir.path().join("d.json");
    assert_eq!(code(&run(&["transform", p(&a), "dsum", "--other", p(&b), "-o", p(&d)])), 0);
    let rd = read_doc(&d).to_realization().unwrap();
    assert_eq!(rd.side(), ra.side() + rb.side());
    assert_eq!(rd.split, ra.split + rb.split);
    assert_eq!(stdout(&run(&["eval", p(&d), "--point", "2,4,6"])), "[[12, 0], [0, 14]]\n");

    let s = dir.path().join("s.json");
    assert_eq!(code(&run(&["transform", p(&a), "add", "--other", p(&b), "-o", p(&s)])), 0);
    assert_eq!(code(&run(&["verify", p(&s), "-e", "z2*z3/z1 + z1 + 2*z3"])), 0);

    let k = dir.path().join("k.json");
    assert_eq!(code(&run(&["transform", p(&a), "kron", "--other", p(&b), "-o", p(&k)])), 0);
    assert_eq!(code(&run(&["verify", p(&k), "-e", "z2*z3/z1 * (z1 + 2*z3)"])), 0);

    assert_eq!(code(&run(&["transform", p(&a), "add"])), 2);
    assert_eq!(code(&run(&["transform", p(&a), "ppt2"])), 2);
}

#[test]
fn eval_examples() {
    let dir = TempDir::new().unwrap();
    let a = write_doc(dir.path(), "a.json", &fixtures::z2z3_over_z1());
    assert_eq!(stdout(&run(&["eval", p(&a), "--point", "2,4,6"])), "[[12]]\n");
    let sq = write_doc(dir.path(), "sq.json", &pencilforge::realize::realize_square(0, 1).unwrap());
    assert_eq!(stdout(&run(&["eval", p(&sq), "--point", "5"])), "[[25]]\n");
    let r = write_doc(dir.path(), "r.json", &fixtures::z2_over_z1());
    assert_eq!(stdout(&run(&["eval", p(&r), "--point", "1/2,-i"])), "[[-2*i]]\n");
    assert_eq!(code(&run(&["eval", p(&r), "--point", "0,1"])), 6);
    assert_eq!(code(&run(&["eval", p(&r), "--point", "1"])), 2);
}

#[test]
fn documents_round_trip_byte_identical() {
    let dir = TempDir::new().unwrap();
    for (name, r) in [
        ("a", fixtures::z2_over_z1()),
        ("b", fixtures::z2z3_over_z1()),
        ("c", fixtures::kron_example()),
    ] {
        let path = write_doc(dir.path(), name, &r);
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = PencilDocument::from_json(&text).unwrap();
        assert_eq!(doc.to_realization().unwrap().pencil, r.pencil);
        assert_eq!(doc.to_json(), text);
        let again = PencilDocument::from_realization(&doc.to_realization().unwrap(), &doc.variables);
        assert_eq!(again.to_json(), text);
    }
    let o = run(&["realize", "-e", "[[z1, i], [-i, z2^2]]"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(PencilDocument::from_json(&text).unwrap().to_json(), text);
}

#[test]
fn malformed_documents_exit_2() {
    let dir = TempDir::new().unwrap();
    let good = write_doc(dir.path(), "good.json", &fixtures::z2_over_z1());
    let text = std::fs::read_to_string(&good).unwrap();
    for (i, bad) in [
        text.replacen("\"re_den\": \"1\"", "\"re_den\": \"2\"", 1).replacen("\"re_num\": \"0\"", "\"re_num\": \"2\"", 1),
        text.replacen("\"side\": 4", "\"side\": 5", 1),
        text.replacen("\"format_version\": 1", "\"format_version\": 7", 1),
        text.replacen("{", "{\"extra\": 0,", 1),
        "not json".to_string(),
    ]
    .iter()
    .enumerate()
    {
        let path = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&path, bad).unwrap();
        assert_eq!(code(&run(&["eval", p(&path), "--point", "1,1"])), 2, "case {i}");
    }
    assert_eq!(code(&run(&["eval", "/nonexistent/file.json", "--point", "1,1"])), 2);
}
