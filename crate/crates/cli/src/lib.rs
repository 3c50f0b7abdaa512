//! Command-line frontend: realize expressions, verify and evaluate pencil
//! documents, and apply Schur-complement constructions to them.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 parse or input error,
//! 3 lowering error, 4 unsatisfiable symmetry request, 5 too many singular
//! samples, 6 singular block or singular point.

pub mod document;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pencilforge::expr::{self, ExprError};
use pencilforge::realize::{lift, RealizeError};
use pencilforge::schuralg::{self, PptKind, SchurError};
use pencilforge::verify::{self, VerifyError};
use pencilforge::{Matrix, Pencil, PartitionedMatrix, RationalMatrixFunction, Realization, RealizeOptions, GR};

pub use document::{DocumentError, PencilDocument};

pub const SEED_ENV: &str = "PENCILFORGE_SEED";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Lower(String),
    #[error("{0}")]
    Mode(String),
    #[error("{0}")]
    TooManySingular(String),
    #[error("{0}")]
    Singular(String),
    #[error("verification failed")]
    Mismatch,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch => 1,
            CliError::Parse(_) => 2,
            CliError::Lower(_) => 3,
            CliError::Mode(_) => 4,
            CliError::TooManySingular(_) => 5,
            CliError::Singular(_) => 6,
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        if e.is_syntax() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Lower(e.to_string())
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<RealizeError> for CliError {
    fn from(e: RealizeError) -> Self {
        match e {
            RealizeError::ModeUnsatisfiable(_) => CliError::Mode(e.to_string()),
            RealizeError::SingularAtPoint | RealizeError::IdenticallySingular | RealizeError::IdenticallySingularSchur => {
                CliError::Singular(e.to_string())
            }
            RealizeError::ShapeMismatch(_) | RealizeError::SameVariable(_) | RealizeError::VariableOutOfRange { .. } => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::Lower(e.to_string()),
        }
    }
}

impl From<SchurError> for CliError {
    fn from(e: SchurError) -> Self {
        match e {
            SchurError::ShapeMismatch(_) | SchurError::NotScalarSchur(_) => CliError::Parse(e.to_string()),
            SchurError::ModeUnsatisfiable(_) => CliError::Mode(e.to_string()),
            _ => CliError::Singular(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::TooManySingularSamples { .. } => CliError::TooManySingular(e.to_string()),
            VerifyError::SingularAtPoint => CliError::Singular(e.to_string()),
            VerifyError::ShapeMismatch(_) => CliError::Parse(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "pencilforge", version, about = "Exact linear-pencil realizations of rational matrix functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Realize an expression as a pencil document.
    Realize(RealizeArgs),
    /// Check a pencil document against an expression at random points.
    Verify(VerifyArgs),
    /// Apply a Schur-complement construction to pencil documents.
    Transform(TransformArgs),
    /// Evaluate a pencil document at a point.
    Eval(EvalArgs),
}

#[derive(Args, Debug)]
pub struct Source {
    /// Expression text.
    #[arg(short = 'e', long = "expr", conflicts_with = "expr_file")]
    pub expr: Option<String>,
    /// File holding the expression.
    #[arg(short = 'f', long = "expr-file")]
    pub expr_file: Option<PathBuf>,
    /// Comma-separated variable order, e.g. `z1,w1`. Inferred when absent.
    #[arg(long)]
    pub vars: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Symmetry {
    /// Realize every structure the function has.
    Auto,
    /// Realize only the structures forced below.
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Want {
    Auto,
    Force,
}

#[derive(Args, Debug)]
pub struct RealizeArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_enum, default_value = "auto")]
    pub symmetry: Symmetry,
    #[arg(long, value_enum, default_value = "auto")]
    pub real: Want,
    #[arg(long, value_enum, default_value = "auto")]
    pub symmetric: Want,
    #[arg(long, value_enum, default_value = "auto")]
    pub hermitian: Want,
    #[arg(long, value_enum, default_value = "auto")]
    pub homogeneous: Want,
    /// Require det A22 ≢ 0 symbolically instead of by a sample point.
    #[arg(long)]
    pub exact_certificate: bool,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = verify::DEFAULT_TRIALS)]
    pub trials: usize,
    /// Verification seed; defaults to $PENCILFORGE_SEED, then 1.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub pencil: PathBuf,
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = verify::DEFAULT_TRIALS)]
    pub trials: usize,
    /// Defaults to $PENCILFORGE_SEED, then 1.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = verify::DEFAULT_RANGE)]
    pub range: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Ppt1,
    Ppt2,
    Schur,
    Compose,
    Kron,
    Add,
    Dsum,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    pub pencil: PathBuf,
    #[arg(value_enum)]
    pub op: Op,
    /// Second operand for kron, add and dsum.
    #[arg(long)]
    pub other: Option<PathBuf>,
    /// Size of the inner trailing block for compose.
    #[arg(long)]
    pub inner: Option<usize>,
    /// For ppt1/ppt2: emit the symmetry-preserving witness whose Schur
    /// complement is the sign-flipped transform.
    #[arg(long)]
    pub signed: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    pub pencil: PathBuf,
    /// Comma-separated coordinates, e.g. `2,4,1/2` (may use `i`).
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
}

/// Output of a successful command: text for stdout and diagnostics for
/// stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: Cli) -> Result<Outcome, (CliError, Outcome)> {
    let mut out = Outcome::default();
    let res = match cli.command {
        Command::Realize(a) => cmd_realize(&a, &mut out),
        Command::Verify(a) => cmd_verify(&a, &mut out),
        Command::Transform(a) => cmd_transform(&a, &mut out),
        Command::Eval(a) => cmd_eval(&a, &mut out),
    };
    match res {
        Ok(()) => Ok(out),
        Err(e) => Err((e, out)),
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn read_document(path: &Path) -> Result<(PencilDocument, Realization), CliError> {
    let doc = PencilDocument::from_json(&read_text(path)?)?;
    let r = doc.to_realization()?;
    Ok((doc, r))
}

fn emit(doc: &PencilDocument, output: &Option<PathBuf>, out: &mut Outcome) -> Result<(), CliError> {
    let text = doc.to_json();
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Parse(format!("{}: {e}", p.display()))),
        None => {
            out.stdout.push_str(&text);
            Ok(())
        }
    }
}

fn split_vars(v: &str) -> Vec<String> {
    v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn compile(source: &Source, default_vars: Option<&[String]>) -> Result<(RationalMatrixFunction, Vec<String>), CliError> {
    let text = match (&source.expr, &source.expr_file) {
        (Some(e), _) => e.clone(),
        (None, Some(p)) => read_text(p)?,
        (None, None) => return Err(CliError::Parse("an expression is required (-e or -f)".into())),
    };
    let declared = source.vars.as_deref().map(split_vars);
    let vars = declared.as_deref().or(default_vars);
    Ok(expr::compile(&text, vars)?)
}

fn seed(explicit: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Parse(format!("{SEED_ENV} must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(verify::DEFAULT_SEED),
    }
}

fn flag_names(f: pencilforge::SymmetryFlags) -> String {
    let n = f.names();
    if n.is_empty() {
        "none".into()
    } else {
        n.join(", ")
    }
}

fn cmd_realize(a: &RealizeArgs, out: &mut Outcome) -> Result<(), CliError> {
    let (f, vars) = compile(&a.source, None)?;
    let force = pencilforge::SymmetryFlags {
        real: a.real == Want::Force,
        symmetric: a.symmetric == Want::Force,
        hermitian: a.hermitian == Want::Force,
        homogeneous: a.homogeneous == Want::Force,
    };
    let opts = RealizeOptions { auto: a.symmetry == Symmetry::Auto, force, exact_certificate: a.exact_certificate };
    let r = pencilforge::realize_function(&f, &opts)?;
    let seed = seed(a.seed)?;
    let report = verify::check_realization(&r, &f, a.trials, seed, verify::DEFAULT_RANGE)?;
    let doc = PencilDocument::from_realization(&r, &vars);
    emit(&doc, &a.output, out)?;
    out.stderr.push_str(&format!(
        "realized {k}x{k} function over ({vars}): pencil {s}x{s}, split {k}\nflags: {flags}\nverification: {p}/{t} points {res} (seed {seed})\n",
        k = r.k(),
        s = r.side(),
        vars = vars.join(", "),
        flags = flag_names(r.flags),
        p = if report.all_passed { report.points.len() } else { 0 },
        t = report.trials,
        res = if report.all_passed { "passed" } else { "FAILED" },
    ));
    if report.all_passed {
        Ok(())
    } else {
        Err(CliError::Mismatch)
    }
}

fn fmt_point(p: &[GR]) -> String {
    format!("({})", p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))
}

pub fn fmt_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| format!("[{}]", m.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn cmd_verify(a: &VerifyArgs, out: &mut Outcome) -> Result<(), CliError> {
    let (doc, r) = read_document(&a.pencil)?;
    let (f, _) = compile(&a.source, Some(&doc.variables))?;
    let seed = seed(a.seed)?;
    let rep = verify::check_realization(&r, &f, a.trials, seed, a.range)?;
    let s = &mut out.stdout;
    s.push_str(&format!("result: {}\n", if rep.all_passed { "pass" } else { "fail" }));
    s.push_str(&format!("trials: {}\nskipped_singular: {}\nseed: {}\nrange: {}\n", rep.trials, rep.skipped_singular, rep.seed, rep.range));
    if let Some(fail) = &rep.first_failure {
        s.push_str(&format!(
            "point: {}\nexpected: {}\ngot: {}\n",
            fmt_point(&fail.point),
            fmt_matrix(&fail.expected),
            fmt_matrix(&fail.got)
        ));
        return Err(CliError::Mismatch);
    }
    Ok(())
}

/// The constant matrix of a document whose variable coefficients vanish.
fn constant_matrix(r: &Realization, op: Op) -> Result<PartitionedMatrix, CliError> {
    if r.pencil.coeffs()[1..].iter().any(|m| !m.is_zero()) {
        return Err(CliError::Parse(format!("{op:?} applies to constant documents only")));
    }
    Ok(r.coeff_partitioned(0))
}

fn constant_document(m: Matrix, split: usize, like: &PencilDocument, provenance: Vec<String>) -> Result<PencilDocument, CliError> {
    let pencil = Pencil::constant(m, like.nvars);
    let mut r = Realization::new(pencil, split, "")?;
    r.provenance = provenance;
    r.certificate = None;
    Ok(PencilDocument::from_realization(&r, &like.variables))
}

fn cmd_transform(a: &TransformArgs, out: &mut Outcome) -> Result<(), CliError> {
    let (doc, r) = read_document(&a.pencil)?;
    let mut prov = r.provenance.clone();
    let other = || -> Result<(PencilDocument, Realization), CliError> {
        let p = a.other.as_ref().ok_or_else(|| CliError::Parse(format!("{:?} needs --other", a.op)))?;
        let (d, o) = read_document(p)?;
        if d.variables != doc.variables {
            return Err(CliError::Parse("documents use different variables".into()));
        }
        Ok((d, o))
    };
    let result = match a.op {
        Op::Ppt1 | Op::Ppt2 => {
            let m = constant_matrix(&r, a.op)?;
            let (kind, name) = if a.op == Op::Ppt1 { (PptKind::Ppt1, "ppt1") } else { (PptKind::Ppt2, "ppt2") };
            if a.signed {
                let w = schuralg::ppt_as_schur(&m, kind, true)?;
                prov.push(format!("{name}_signed"));
                constant_document(w.matrix().clone(), w.split(), &doc, prov)?
            } else {
                let p = if kind == PptKind::Ppt1 { schuralg::ppt1(&m)? } else { schuralg::ppt2(&m)? };
                prov.push(name.into());
                constant_document(p, m.split(), &doc, prov)?
            }
        }
        Op::Schur => {
            let m = constant_matrix(&r, a.op)?;
            let s = pencilforge::blockmat::schur(&m).map_err(|e| CliError::Singular(e.to_string()))?;
            prov.push("schur".into());
            let k = s.rows();
            constant_document(s, k, &doc, prov)?
        }
        Op::Compose => {
            let m = constant_matrix(&r, a.op)?;
            let l = a.inner.ok_or_else(|| CliError::Parse("compose needs --inner".into()))?;
            let w = schuralg::sc_compose(&m, l)?;
            let s = w.witness.schur()?;
            out.stderr.push_str(&format!("schur complement: {}\n", fmt_matrix(&s)));
            prov.push(format!("compose[{l}]"));
            constant_document(w.witness.matrix().clone(), w.witness.split(), &doc, prov)?
        }
        Op::Kron | Op::Add | Op::Dsum => {
            let (_, o) = other()?;
            let res = match a.op {
                Op::Kron => lift::kron_realizations(&r, &o)?,
                Op::Add => lift::add(&r, &o)?,
                _ => lift::dsum(&r, &o)?,
            };
            let res = pencilforge::realize::certify(res, false)?;
            PencilDocument::from_realization(&res, &doc.variables)
        }
    };
    emit(&result, &a.output, out)
}

fn parse_point(text: &str) -> Result<Vec<GR>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|c| {
            let ast = expr::parse(c)?;
            let v = expr::interpret(&ast, &[], &[])?;
            if (v.rows(), v.cols()) != (1, 1) {
                return Err(CliError::Parse(format!("coordinate {c:?} is not a scalar")));
            }
            Ok(v.get(0, 0).clone())
        })
        .collect()
}

fn cmd_eval(a: &EvalArgs, out: &mut Outcome) -> Result<(), CliError> {
    let (_, r) = read_document(&a.pencil)?;
    let point = parse_point(a.point.as_deref().unwrap_or(""))?;
    if point.len() != r.nvars() {
        return Err(CliError::Parse(format!("point has {} coordinates, document has {} variables", point.len(), r.nvars())));
    }
    let v = verify::eval_realization(&r, &point)?;
    out.stdout.push_str(&fmt_matrix(&v));
    out.stdout.push('\n');
    Ok(())
}
