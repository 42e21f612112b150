//! Argument grammar and command dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use treesign_core::limits::LimitFamily;
use treesign_core::oracle::random_tree;
use treesign_core::recurrence::{
    ClosedFormSolution, DeltaKind, Evaluation, OrbitStatus, RecurrenceError, RecurrenceParams,
};
use treesign_core::signs::{self, DoubleBroom, PendantConfig, SignsError};
use treesign_core::treediag::{InertiaTriple, MatrixKind, SymmetricTreeMatrix, TreeError};
use treesign_core::BigRational;

use crate::numbers::{rational_arg, to_f64};
use crate::table::{Document, OutputFormat, Table, Value};
use crate::treefile::{format_tree, read_tree, TreeFileError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

const MAX_PLOT_ROWS: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "treesign", version, about = "Rational recurrences and eigenvalue location on trees")]
pub struct Cli {
    /// Output format (default: csv for plot-data and limit, text otherwise).
    #[arg(long, value_enum, global = true)]
    pub format: Option<OutputFormat>,
    /// Worker threads for table sweeps.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify x_{j+1} = alpha + gamma/x_j, print its closed form and iterates.
    Solve(SolveArgs),
    /// Sample the extended solution on a grid of real indices.
    PlotData(PlotArgs),
    /// Count eigenvalues below, at and above a shift.
    Locate(LocateArgs),
    /// Largest eigenvalue.
    Radius(RadiusArgs),
    /// k-th smallest eigenvalue.
    Eigen(EigenArgs),
    /// Alternating-sign lengths of the pendant-path recurrence.
    Mlas(MlasArgs),
    /// Eigenvalues above the average degree of a double broom.
    Broom(BroomArgs),
    /// Spectral radii of T(1, n, n) against their limit.
    Limit(LimitArgs),
    /// Seeded uniformly random labelled tree.
    RandomTree(RandomTreeArgs),
}

#[derive(Debug, Args)]
pub struct Recurrence {
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub alpha: BigRational,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub gamma: BigRational,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub x1: BigRational,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub rec: Recurrence,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// Evaluate the closed form at this real index (repeatable).
    #[arg(long = "eval", allow_hyphen_values = true)]
    pub eval: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub rec: Recurrence,
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long)]
    pub step: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MatrixArg {
    Adjacency,
    Laplacian,
    Normalized,
}

impl From<MatrixArg> for MatrixKind {
    fn from(m: MatrixArg) -> Self {
        match m {
            MatrixArg::Adjacency => MatrixKind::Adjacency,
            MatrixArg::Laplacian => MatrixKind::Laplacian,
            MatrixArg::Normalized => MatrixKind::NormalizedLaplacian,
        }
    }
}

#[derive(Debug, Args)]
pub struct TreeMatrix {
    /// Tree file: one `u v` edge per line, 1-based ids, optional `root k`.
    #[arg(long)]
    pub tree: PathBuf,
    #[arg(long, value_enum)]
    pub matrix: MatrixArg,
}

#[derive(Debug, Args)]
pub struct LocateArgs {
    #[command(flatten)]
    pub tm: TreeMatrix,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub alpha: BigRational,
    /// Diagonalize in exact rational arithmetic.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[command(flatten)]
    pub tm: TreeMatrix,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[command(flatten)]
    pub tm: TreeMatrix,
    /// 1-based, ascending.
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct MlasArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Also scan the exact sequence and report its value.
    #[arg(long)]
    pub direct: bool,
    /// Scan length for --direct (default 4n).
    #[arg(long)]
    pub j_max: Option<usize>,
    /// Emit rows r = 1..=RMAX instead of a single row.
    #[arg(long, value_name = "RMAX")]
    pub table: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BroomArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub rr: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Adjacency,
    Laplacian,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct RandomTreeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl From<TreeFileError> for CliError {
    fn from(e: TreeFileError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<RecurrenceError> for CliError {
    fn from(e: RecurrenceError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<SignsError> for CliError {
    fn from(e: SignsError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Parse `args` (including the program name), run the command and return
/// the process exit code. Data goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if informational { write!(out, "{e}") } else { write!(err, "{e}") };
            return if informational { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(&cli) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let default = match cli.command {
        Command::PlotData(_) | Command::Limit(_) => OutputFormat::Csv,
        _ => OutputFormat::Text,
    };
    let format = cli.format.unwrap_or(default);
    let doc = match &cli.command {
        Command::Solve(a) => solve(a)?,
        Command::PlotData(a) => plot_data(a)?,
        Command::Locate(a) => locate(a)?,
        Command::Radius(a) => radius(a)?,
        Command::Eigen(a) => eigen(a)?,
        Command::Mlas(a) => with_pool(cli.threads, || mlas(a))?,
        Command::Broom(a) => broom(a)?,
        Command::Limit(a) => with_pool(cli.threads, || limit(a))?,
        Command::RandomTree(a) => return random(a, format),
    };
    Ok(doc.render(format))
}

fn with_pool<R: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> Result<R, CliError> + Send,
) -> Result<R, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(f)
}

fn exact(x: &BigRational) -> Value {
    Value::Exact(x.to_string())
}

fn kind_name(kind: DeltaKind) -> &'static str {
    match kind {
        DeltaKind::Repeated => "repeated",
        DeltaKind::RealPair => "real-pair",
        DeltaKind::ComplexPair => "complex-pair",
    }
}

fn float_params(rec: &Recurrence) -> Result<RecurrenceParams<f64>, CliError> {
    Ok(RecurrenceParams::new(to_f64(&rec.alpha), to_f64(&rec.gamma))?)
}

fn closed_form_fields(sol: &ClosedFormSolution) -> Vec<(&'static str, Value)> {
    match *sol {
        ClosedFormSolution::Constant { theta } => vec![("form", "constant".into()), ("theta", theta.into())],
        ClosedFormSolution::RepeatedRoot { theta, beta } => {
            vec![("form", "repeated-root".into()), ("theta", theta.into()), ("beta", beta.into())]
        }
        ClosedFormSolution::RealRoots { theta, theta_prime, beta } => vec![
            ("form", "real-roots".into()),
            ("theta", theta.into()),
            ("theta_prime", theta_prime.into()),
            ("beta", beta.into()),
        ],
        ClosedFormSolution::Oscillating { rho, angle, phase } => vec![
            ("form", "oscillating".into()),
            ("rho", rho.into()),
            ("phi", angle.into()),
            ("omega", phase.into()),
            ("period", sol.period().map_or(Value::Null, Value::Float)),
        ],
        ClosedFormSolution::Alternating { x1, gamma } => {
            vec![("form", "alternating".into()), ("x1", x1.into()), ("x2", (gamma / x1).into())]
        }
    }
}

fn evaluation(e: Evaluation) -> (Value, &'static str) {
    match e {
        Evaluation::Value(v) => (v.into(), "value"),
        Evaluation::Pole => (Value::Null, "pole"),
        Evaluation::Undefined => (Value::Null, "undefined"),
    }
}

fn solve(a: &SolveArgs) -> Result<Document, CliError> {
    let rec = &a.rec;
    let params = RecurrenceParams::new(rec.alpha.clone(), rec.gamma.clone())?;
    let orbit = params.iterate(rec.x1.clone(), a.count)?;
    if let OrbitStatus::HitZero { step } = orbit.status {
        return Err(CliError::Domain(format!(
            "orbit hit zero at step {step}: x_{step} = 0, so x_{} is undefined",
            step + 1
        )));
    }
    let class = params.classify();
    let fp = float_params(rec)?;
    let sol = fp.solve(to_f64(&rec.x1))?;
    let fixed: Vec<String> = fp.fixed_points().iter().map(f64::to_string).collect();

    let mut summary = vec![
        ("alpha", exact(&rec.alpha)),
        ("gamma", exact(&rec.gamma)),
        ("x1", exact(&rec.x1)),
        ("delta", exact(&class.delta)),
        ("kind", kind_name(class.kind).into()),
        ("fixed_points", fixed.join(";").into()),
    ];
    summary.extend(closed_form_fields(&sol));
    let mut doc = Document::single("summary", Table::record(summary));

    let mut iterates = Table::new(&["j", "value", "exact"]);
    for (i, x) in orbit.values.iter().enumerate() {
        iterates.push(vec![(i + 1).into(), to_f64(x).into(), exact(x)]);
    }
    doc.add("iterates", iterates);

    if !a.eval.is_empty() {
        let mut evals = Table::new(&["j", "value", "status"]);
        for &j in &a.eval {
            let (v, status) = evaluation(sol.eval(j));
            evals.push(vec![j.into(), v, status.into()]);
        }
        doc.add("eval", evals);
    }
    Ok(doc)
}

fn plot_data(a: &PlotArgs) -> Result<Document, CliError> {
    if a.step.is_nan() || a.step <= 0.0 || !a.from.is_finite() || !a.to.is_finite() || a.from > a.to {
        return Err(CliError::Usage("need finite --from <= --to and --step > 0".into()));
    }
    let rows = ((a.to - a.from) / a.step + 1e-9).floor() as usize + 1;
    if rows > MAX_PLOT_ROWS {
        return Err(CliError::Usage(format!("{rows} rows requested, the limit is {MAX_PLOT_ROWS}")));
    }
    let sol = float_params(&a.rec)?.solve(to_f64(&a.rec.x1))?;
    let mut t = Table::new(&["j", "value", "is_pole"]);
    for i in 0..rows {
        let j = a.from + i as f64 * a.step;
        let e = sol.eval(j);
        t.push(vec![j.into(), evaluation(e).0, (e == Evaluation::Pole).into()]);
    }
    Ok(Document::single("plot", t))
}

fn inertia_record(n: usize, shift: Value, i: InertiaTriple) -> Table {
    Table::record(vec![
        ("n", n.into()),
        ("shift", shift),
        ("below", i.below.into()),
        ("equal", i.equal.into()),
        ("above", i.above.into()),
    ])
}

fn locate(a: &LocateArgs) -> Result<Document, CliError> {
    let tree = read_tree(&a.tm.tree)?;
    let kind = MatrixKind::from(a.tm.matrix);
    let inertia = if a.exact {
        SymmetricTreeMatrix::<BigRational>::build(&tree, kind)?.locate(&a.alpha)
    } else {
        SymmetricTreeMatrix::<f64>::build(&tree, kind)?.locate(&to_f64(&a.alpha))
    };
    let shift = if a.exact { exact(&a.alpha) } else { to_f64(&a.alpha).into() };
    Ok(Document::single("inertia", inertia_record(tree.len(), shift, inertia)))
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage("--tol must be positive".into()))
    }
}

fn radius(a: &RadiusArgs) -> Result<Document, CliError> {
    check_tol(a.tol)?;
    let tree = read_tree(&a.tm.tree)?;
    let m = SymmetricTreeMatrix::<f64>::build(&tree, a.tm.matrix.into())?;
    Ok(Document::single(
        "radius",
        Table::record(vec![("n", tree.len().into()), ("radius", m.spectral_radius(a.tol).into()), ("tol", a.tol.into())]),
    ))
}

fn eigen(a: &EigenArgs) -> Result<Document, CliError> {
    check_tol(a.tol)?;
    let tree = read_tree(&a.tm.tree)?;
    let m = SymmetricTreeMatrix::<f64>::build(&tree, a.tm.matrix.into())?;
    let value = m.kth_eigenvalue(a.k, a.tol)?;
    Ok(Document::single(
        "eigenvalue",
        Table::record(vec![("n", tree.len().into()), ("k", a.k.into()), ("eigenvalue", value.into()), ("tol", a.tol.into())]),
    ))
}

const MLAS_COLUMNS: [&str; 14] = [
    "n", "r", "k0", "mlas", "lower_bound", "lower_bound_raw", "period", "phi", "omega_r", "j_star", "h",
    "b_2k0_2", "b_2k0_3", "mlas_direct",
];

fn mlas_row(n: usize, r: usize, a: &MlasArgs) -> Result<Vec<Value>, CliError> {
    let cfg = PendantConfig::new(n, r)?;
    let rep = signs::mlas_report(&cfg)?;
    let direct = if a.direct {
        let j_max = a.j_max.unwrap_or_else(|| signs::default_scan_length(n));
        signs::mlas_direct(&cfg, j_max)?.into()
    } else {
        Value::Null
    };
    Ok(vec![
        rep.n.into(),
        rep.r.into(),
        rep.k0.into(),
        rep.mlas.into(),
        rep.lower_bound.into(),
        rep.lower_bound_raw.into(),
        rep.period.into(),
        rep.phi_angle.into(),
        rep.omega_r.into(),
        rep.j_star.into(),
        rep.h_value.into(),
        rep.b_last.into(),
        rep.b_next.into(),
        direct,
    ])
}

fn mlas(a: &MlasArgs) -> Result<Document, CliError> {
    let rs: Vec<usize> = match a.table {
        Some(rmax) => (1..=rmax).collect(),
        None => vec![a.r],
    };
    let rows: Vec<Vec<Value>> = rs.par_iter().map(|&r| mlas_row(a.n, r, a)).collect::<Result<_, _>>()?;
    let keep = if a.direct { MLAS_COLUMNS.len() } else { MLAS_COLUMNS.len() - 1 };
    let mut t = Table::new(&MLAS_COLUMNS[..keep]);
    for mut row in rows {
        row.truncate(keep);
        t.push(row);
    }
    Ok(Document::single("mlas", t))
}

fn broom(a: &BroomArgs) -> Result<Document, CliError> {
    let b = DoubleBroom::new(a.r, a.q, a.p, a.rr)?;
    let rep = signs::double_broom_sigma(&b)?;
    let sign = match rep.root_sign {
        signs::Sign::Negative => "negative",
        signs::Sign::Zero => "zero",
        signs::Sign::Positive => "positive",
    };
    Ok(Document::single(
        "broom",
        Table::record(vec![
            ("n", rep.n.into()),
            ("r", a.r.into()),
            ("q", a.q.into()),
            ("p", a.p.into()),
            ("rr", a.rr.into()),
            ("sigma", rep.sigma.into()),
            ("root_sign", sign.into()),
            ("root_value", exact(&rep.root_value)),
            ("root_value_approx", to_f64(&rep.root_value).into()),
            ("hypotheses_met", rep.hypotheses_met.into()),
            ("below", rep.located.below.into()),
            ("equal", rep.located.equal.into()),
            ("above", rep.located.above.into()),
            ("agrees", rep.agrees.into()),
        ]),
    ))
}

fn limit(a: &LimitArgs) -> Result<Document, CliError> {
    check_tol(a.tol)?;
    if a.n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    let family = match a.family {
        FamilyArg::Adjacency => LimitFamily::Adjacency,
        FamilyArg::Laplacian => LimitFamily::Laplacian,
    };
    let limit = family.limit();
    let radii: Vec<f64> = (1..=a.n_max).into_par_iter().map(|k| family.radius(k, a.tol)).collect();
    let mut t = Table::new(&["n_arm", "radius", "gap"]);
    for (i, rho) in radii.into_iter().enumerate() {
        t.push(vec![(i + 1).into(), rho.into(), (limit - rho).into()]);
    }
    Ok(Document::single("limit", t))
}

fn random(a: &RandomTreeArgs, format: OutputFormat) -> Result<String, CliError> {
    if a.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let tree = random_tree(a.n, a.seed);
    if format == OutputFormat::Text {
        return Ok(format_tree(&tree));
    }
    let mut edges: Vec<(usize, usize)> = tree.edges().collect();
    edges.sort_unstable();
    let mut t = Table::new(&["child", "parent"]);
    for (c, p) in edges {
        t.push(vec![(c + 1).into(), (p + 1).into()]);
    }
    let mut doc = Document::single(
        "tree",
        Table::record(vec![("vertices", a.n.into()), ("root", (tree.root() + 1).into()), ("seed", Value::Exact(a.seed.to_string()))]),
    );
    doc.add("edges", t);
    Ok(doc.render(format))
}
