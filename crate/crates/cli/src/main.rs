mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use fdalg_core::approx::ApproxMethod;
use fdalg_core::catalog::{self, Bounds, CatalogAlgebra, Family};
use fdalg_core::conjectures::{self, ConjectureStatus, ProbeStatus, ScanSummary};
use fdalg_core::correspondence::{self, Verdict};
use fdalg_core::domdim::{self, Method};
use fdalg_core::homology::{self, DimValue};
use fdalg_core::matrix::Span;
use fdalg_core::module::{self, Module};
use fdalg_core::schema;
use fdalg_core::{Algebra, AlgebraError, Fp, ModuleError, SchemaError};

use report::{Outcome, Report, INPUT_ERROR, NEGATIVE, OK, UNCERTIFIED};

#[derive(Parser)]
#[command(
    name = "fdalg",
    version,
    about = "Homological invariants of finite-dimensional algebras over GF(p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the human summary.
    #[arg(long, global = true)]
    json: bool,
    /// Length cap for resolutions and coresolutions.
    #[arg(long, global = true, env = "FDALG_CAP", default_value_t = homology::DEFAULT_CAP)]
    cap: usize,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock time in the report (makes reports run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    /// Run corpus sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra, verify its radical and report its shape.
    CheckAlgebra { algebra: PathBuf },
    /// dim Hom(M, N).
    Hom { m: PathBuf, n: PathBuf },
    /// dim Ext^i(M, N).
    Ext {
        m: PathBuf,
        n: PathBuf,
        #[arg(short = 'i', long, default_value_t = 1)]
        degree: usize,
    },
    /// dim Tor_i(X, Y) for X a right and Y a left module.
    Tor {
        x: PathBuf,
        y: PathBuf,
        #[arg(short = 'i', long, default_value_t = 1)]
        degree: usize,
    },
    /// Projective dimension.
    Pdim { m: PathBuf },
    /// Injective dimension.
    Idim {
        m: PathBuf,
        /// Compute through an injective coresolution instead of the dual.
        #[arg(long)]
        coresolution: bool,
    },
    /// The dual module D M = Hom_k(M, k).
    Dual {
        m: PathBuf,
        #[command(flatten)]
        write: WriteArg,
    },
    /// The endomorphism algebra as a structure-constant table.
    End {
        m: PathBuf,
        #[command(flatten)]
        write: WriteArg,
    },
    /// Is X a direct summand of a power of M?
    AddMember { x: PathBuf, m: PathBuf },
    /// Q-dominant dimension of M.
    Domdim {
        m: PathBuf,
        #[arg(long = "Q", short = 'Q')]
        q: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = ApproxArg::Reduced)]
        approx: ApproxArg,
        /// Codominant dimension instead.
        #[arg(long)]
        co: bool,
    },
    /// Quasi-generator or quasi-cogenerator degree.
    Quasidegree {
        m: PathBuf,
        #[arg(long, conflicts_with = "cogen")]
        gen: bool,
        #[arg(long)]
        cogen: bool,
    },
    /// (B, M) ↦ (End_B(M), M).
    Phi {
        m: PathBuf,
        #[command(flatten)]
        write: WriteArg,
    },
    /// (A, M) ↦ (End_A(M)^op, M).
    Psi {
        m: PathBuf,
        #[command(flatten)]
        write: WriteArg,
    },
    /// Round-trip verification of the correspondence on one module.
    Verify(VerifyArgs),
    /// Sweep a corpus.
    Scan(ScanArgs),
}

#[derive(Args)]
struct WriteArg {
    /// Write the resulting module or algebra as JSON.
    #[arg(long)]
    write: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    m: PathBuf,
    #[arg(long, value_enum)]
    thm: CheckArg,
    /// Claimed quasi-generator degree.
    #[arg(long)]
    n: Option<usize>,
    /// Claimed quasi-cogenerator degree.
    #[arg(long = "m", alias = "m-degree")]
    m_degree: Option<usize>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_enum, default_value_t = ConjectureArg::PdimBound)]
    conjecture: ConjectureArg,
    /// `standard`, `linear-a:N`, `nakayama:c1,c2,…`, `nakayama-cyclic:c1,…`,
    /// `truncated:T` or `file:PATH`. Repeatable.
    #[arg(long, default_value = "standard")]
    family: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    primes: Vec<u32>,
    #[arg(long, default_value_t = Bounds::default().max_dim)]
    max_dim: usize,
    #[arg(long, default_value_t = Bounds::default().max_summands)]
    max_summands: usize,
    /// Leave out A, DA and A⊕DA.
    #[arg(long)]
    no_specials: bool,
    /// Largest Nakayama algebra in the `standard` family.
    #[arg(long, default_value_t = 10)]
    nakayama_dim: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Greedy,
    Criterion,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ApproxArg {
    Reduced,
    Universal,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    /// Quasi-generator correspondence (needs `--n`).
    #[value(name = "33", alias = "generator")]
    Gen,
    /// Quasi-cogenerator correspondence (needs `--m`).
    #[value(name = "34", alias = "cogenerator")]
    Cogen,
    /// Both degrees at once (needs `--n` and `--m`).
    #[value(name = "35", alias = "two-sided")]
    Both,
    Morita,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConjectureArg {
    /// Self-orthogonal n-quasi-generators have pdim at most n.
    #[value(name = "42", alias = "pdim-bound")]
    PdimBound,
    Wakamatsu,
    Gorenstein,
}

enum Failure {
    Schema(SchemaError),
    Module(ModuleError),
    Usage(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Schema(e) => write!(f, "{e}"),
            Failure::Module(e) => write!(f, "{e}"),
            Failure::Usage(e) => write!(f, "{e}"),
        }
    }
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::Schema(e)
    }
}

impl From<ModuleError> for Failure {
    fn from(e: ModuleError) -> Self {
        Failure::Module(e)
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Module(e.into())
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Module(ModuleError::TooLarge(..) | ModuleError::Uncertified(..)) => UNCERTIFIED,
            _ => INPUT_ERROR,
        }
    }
}

type Res = Result<Outcome, Failure>;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(run(&args));
}

fn run(args: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => OK,
                _ => INPUT_ERROR,
            };
        }
    };
    if cli.sequential {
        fdalg_core::par::set_execution(fdalg_core::par::Execution::Sequential);
    }
    let start = Instant::now();
    let outcome = execute(&cli).unwrap_or_else(|e| {
        #[derive(Serialize)]
        struct ErrorResult {
            error: String,
        }
        let msg = e.to_string();
        Outcome::new(format!("error: {msg}"), &ErrorResult { error: msg }, false, e.code())
    });
    let inputs = inputs(&cli.command);
    let report = Report {
        command: &args[1..],
        inputs_digest: report::digest(&inputs),
        seed: cli.seed,
        cap: cli.cap,
        results: &outcome.results,
        certified: outcome.certified,
        exit_code: outcome.code,
        timing_ms: cli.timing.then(|| start.elapsed().as_millis() as u64),
    };
    let text = report::render(&report);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return INPUT_ERROR;
        }
    }
    if cli.json {
        print!("{text}");
    } else if outcome.code == INPUT_ERROR {
        eprintln!("{}", outcome.summary);
    } else {
        println!("{}", outcome.summary);
    }
    outcome.code
}

fn inputs(cmd: &Command) -> Vec<(String, Vec<u8>)> {
    let files: Vec<&PathBuf> = match cmd {
        Command::CheckAlgebra { algebra } => vec![algebra],
        Command::Hom { m, n } | Command::Ext { m, n, .. } => vec![m, n],
        Command::Tor { x, y, .. } => vec![x, y],
        Command::AddMember { x, m } => vec![x, m],
        Command::Domdim { m, q, .. } => vec![m, q],
        Command::Pdim { m }
        | Command::Idim { m, .. }
        | Command::Dual { m, .. }
        | Command::End { m, .. }
        | Command::Quasidegree { m, .. }
        | Command::Phi { m, .. }
        | Command::Psi { m, .. } => vec![m],
        Command::Verify(v) => vec![&v.m],
        Command::Scan(s) => {
            let mut out = Vec::new();
            for fam in &s.family {
                out.push(("family".to_string(), fam.as_bytes().to_vec()));
                if let Some(p) = fam.strip_prefix("file:") {
                    out.push(report::file_input(Path::new(p)));
                }
            }
            return out;
        }
    };
    files.into_iter().map(|p| report::file_input(p)).collect()
}

fn load(path: &Path) -> Result<Module, Failure> {
    Ok(schema::load_module(path)?)
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, schema::to_json(value)).map_err(|source| SchemaError::Io {
            file: p.display().to_string(),
            source,
        })?;
    }
    Ok(())
}

fn dim_code(v: DimValue) -> i32 {
    if v.is_certified() {
        OK
    } else {
        UNCERTIFIED
    }
}

fn execute(cli: &Cli) -> Res {
    let cap = cli.cap;
    match &cli.command {
        Command::CheckAlgebra { algebra } => check_algebra(algebra, cli.seed),
        Command::Hom { m, n } => {
            let (m, n) = (load(m)?, load(n)?);
            let h = module::hom(&m, &n)?;
            #[derive(Serialize)]
            struct R {
                dim: usize,
            }
            Ok(Outcome::new(format!("dim Hom = {}", h.dim()), &R { dim: h.dim() }, true, OK))
        }
        Command::Ext { m, n, degree } => {
            let (m, n) = (load(m)?, load(n)?);
            let d = homology::ext(&m, &n, *degree)?;
            #[derive(Serialize)]
            struct R {
                degree: usize,
                dim: usize,
            }
            Ok(Outcome::new(
                format!("dim Ext^{degree} = {d}"),
                &R { degree: *degree, dim: d },
                true,
                OK,
            ))
        }
        Command::Tor { x, y, degree } => {
            let (x, y) = (load(x)?, load(y)?);
            let d = homology::tor(&x, &y, *degree)?;
            #[derive(Serialize)]
            struct R {
                degree: usize,
                dim: usize,
            }
            Ok(Outcome::new(
                format!("dim Tor_{degree} = {d}"),
                &R { degree: *degree, dim: d },
                true,
                OK,
            ))
        }
        Command::Pdim { m } => {
            let v = homology::pdim(&load(m)?, cap)?;
            dim_outcome("pdim", v)
        }
        Command::Idim { m, coresolution } => {
            let m = load(m)?;
            let v = if *coresolution {
                homology::idim_by_coresolution(&m, cap)?
            } else {
                homology::idim(&m, cap)?
            };
            dim_outcome("idim", v)
        }
        Command::Dual { m, write } => {
            let d = load(m)?.dual();
            write_json(&write.write, &schema::module_spec(&d))?;
            Ok(Outcome::new(
                format!("dual: {} module of dimension {}", d.side(), d.dim()),
                &shape(&d),
                true,
                OK,
            ))
        }
        Command::End { m, write } => {
            let e = module::end_algebra(&load(m)?)?;
            write_json(&write.write, &schema::algebra_spec(&e.algebra))?;
            #[derive(Serialize)]
            struct R {
                dim: usize,
                radical_dim: usize,
            }
            let r = R {
                dim: e.algebra.dim(),
                radical_dim: e.algebra.radical().dim(),
            };
            Ok(Outcome::new(
                format!("dim End = {} (radical {})", r.dim, r.radical_dim),
                &r,
                true,
                OK,
            ))
        }
        Command::AddMember { x, m } => {
            let member = module::in_add(&load(x)?, &load(m)?)?;
            #[derive(Serialize)]
            struct R {
                member: bool,
            }
            Ok(Outcome::new(
                format!("X {} add M", if member { "∈" } else { "∉" }),
                &R { member },
                true,
                OK,
            ))
        }
        Command::Domdim {
            m,
            q,
            method,
            approx,
            co,
        } => {
            let (m, q) = (load(m)?, load(q)?);
            let method = match method {
                MethodArg::Greedy => Method::Greedy,
                MethodArg::Criterion => Method::Criterion,
                MethodArg::Both => Method::Both,
            };
            let approx = match approx {
                ApproxArg::Reduced => ApproxMethod::Reduced,
                ApproxArg::Universal => ApproxMethod::Universal,
            };
            let r = if *co {
                domdim::codomdim(&q, &m, cap, method, approx)?
            } else {
                domdim::domdim(&q, &m, cap, method, approx)?
            };
            let code = if !r.agree {
                NEGATIVE
            } else {
                dim_code(r.value)
            };
            let mut s = format!("{}domdim = {}", if *co { "co" } else { "" }, r.value);
            if let (Some(g), Some(c)) = (r.greedy, r.criterion) {
                let c = c.map_or("inapplicable (< 2)".to_string(), |c| c.to_string());
                let _ = write!(s, " (greedy {g}, criterion {c}, agree: {})", r.agree);
            }
            Ok(Outcome::new(s, &r, r.value.is_certified(), code))
        }
        Command::Quasidegree { m, cogen, .. } => {
            let m = load(m)?;
            let q = if *cogen {
                correspondence::quasi_cogenerator_degree(&m, cap)?
            } else {
                correspondence::quasi_generator_degree(&m, cap)?
            };
            let name = if *cogen { "quasi-cogenerator" } else { "quasi-generator" };
            let code = if q.value.is_certified() { OK } else { UNCERTIFIED };
            Ok(Outcome::new(
                format!("{name} degree: {}", q.value),
                &q,
                q.value.is_certified(),
                code,
            ))
        }
        Command::Phi { m, write } | Command::Psi { m, write } => {
            let m = load(m)?;
            let is_phi = matches!(cli.command, Command::Phi { .. });
            let pair = if is_phi {
                correspondence::phi(&m)?
            } else {
                correspondence::psi(&m)?
            };
            write_json(&write.write, &schema::module_spec(&pair.module))?;
            #[derive(Serialize)]
            struct R {
                end_dim: usize,
                module: Shape,
            }
            let r = R {
                end_dim: pair.algebra.dim(),
                module: shape(&pair.module),
            };
            Ok(Outcome::new(
                format!(
                    "{}: algebra of dimension {}, {} module of dimension {}",
                    if is_phi { "phi" } else { "psi" },
                    r.end_dim,
                    pair.module.side(),
                    pair.module.dim()
                ),
                &r,
                true,
                OK,
            ))
        }
        Command::Verify(v) => verify(v, cap),
        Command::Scan(s) => scan(s, cap),
    }
}

#[derive(Serialize)]
struct Shape {
    side: fdalg_core::module::Side,
    dim: usize,
    dim_vector: Vec<usize>,
}

fn shape(m: &Module) -> Shape {
    Shape {
        side: m.side(),
        dim: m.dim(),
        dim_vector: m.dim_vector(),
    }
}

fn dim_outcome(name: &str, v: DimValue) -> Res {
    #[derive(Serialize)]
    struct R {
        value: DimValue,
    }
    Ok(Outcome::new(format!("{name} = {v}"), &R { value: v }, v.is_certified(), dim_code(v)))
}

fn check_algebra(path: &Path, seed: u64) -> Res {
    let a = schema::load_algebra(path)?;
    let f = a.field();
    let rad = a.radical();
    let mut rad_span = Span::new(f, a.dim());
    for c in 0..rad.dim() {
        rad_span.insert(&rad.basis.col_vec(c));
    }
    // Random spot checks of associativity and of the radical being an ideal.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = |rng: &mut ChaCha8Rng| -> Vec<u32> { (0..a.dim()).map(|_| rng.gen_range(0..a.p())).collect() };
    let checks = 32;
    let mut passed = true;
    for _ in 0..checks {
        let (x, y, z) = (random(&mut rng), random(&mut rng), random(&mut rng));
        passed &= a.mul(&a.mul(&x, &y), &z) == a.mul(&x, &a.mul(&y, &z));
        if rad.dim() > 0 {
            let coeffs: Vec<u32> = (0..rad.dim()).map(|_| rng.gen_range(0..a.p())).collect();
            let r = rad.basis.mul_vec(&coeffs);
            passed &= rad_span.contains(&a.mul(&x, &r)) && rad_span.contains(&a.mul(&r, &x));
        }
    }
    #[derive(Serialize)]
    struct R {
        kind: &'static str,
        p: u32,
        dim: usize,
        basis: Vec<String>,
        idempotents: usize,
        radical_dim: usize,
        projective_dims: Vec<usize>,
        spot_checks: usize,
        spot_checks_passed: bool,
    }
    let r = R {
        kind: if a.presentation().is_some() { "quiver" } else { "table" },
        p: a.p(),
        dim: a.dim(),
        basis: a.labels().to_vec(),
        idempotents: a.idempotents().len(),
        radical_dim: rad.dim(),
        projective_dims: a.projective_bases().iter().map(|b| b.cols()).collect(),
        spot_checks: checks,
        spot_checks_passed: passed,
    };
    let summary = format!(
        "{} algebra over GF({}) of dimension {}, radical dimension {}, projectives {:?}",
        r.kind, r.p, r.dim, r.radical_dim, r.projective_dims
    );
    Ok(Outcome::new(summary, &r, passed, if passed { OK } else { NEGATIVE }))
}

fn verify(v: &VerifyArgs, cap: usize) -> Res {
    let m = load(&v.m)?;
    if let CheckArg::Morita = v.thm {
        let r = correspondence::classical_morita_check(&m)?;
        let summary = format!(
            "generator: {}, projective over End: {}, double centralizer: {}, consistent: {}",
            r.generator, r.projective_over_end, r.double_centralizer, r.consistent
        );
        let code = if r.consistent { OK } else { NEGATIVE };
        return Ok(Outcome::new(summary, &r, true, code));
    }
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| Failure::Usage(format!("this check needs --{flag}")));
    let r = match v.thm {
        CheckArg::Gen => correspondence::verify_quasi_generator(&m, need(v.n, "n")?, cap)?,
        CheckArg::Cogen => correspondence::verify_quasi_cogenerator(&m, need(v.m_degree, "m")?, cap)?,
        CheckArg::Both => correspondence::verify_two_sided(&m, need(v.n, "n")?, need(v.m_degree, "m")?, cap)?,
        CheckArg::Morita => unreachable!(),
    };
    let mut summary = String::new();
    for c in &r.checks {
        let mark = match c.outcome {
            Some(true) => "ok  ",
            Some(false) => "FAIL",
            None => "??  ",
        };
        let _ = writeln!(summary, "{mark} {}: expected {}, observed {}", c.name, c.expected, c.observed);
    }
    let _ = write!(summary, "verdict: {:?}", r.verdict);
    let (code, certified) = match r.verdict {
        Verdict::Pass => (OK, true),
        Verdict::Fail | Verdict::PreconditionFailed => (NEGATIVE, true),
        Verdict::Uncertified => (UNCERTIFIED, false),
    };
    Ok(Outcome::new(summary, &r, certified, code))
}

fn parse_list(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("bad list `{s}`: {e}")))
}

fn catalogs(s: &ScanArgs) -> Result<Vec<CatalogAlgebra>, Failure> {
    let mut out = Vec::new();
    for spec in &s.family {
        if let Some(path) = spec.strip_prefix("file:") {
            let a = schema::load_algebra(Path::new(path))?;
            out.push(catalog::custom_catalog(path, a)?);
            continue;
        }
        let families: Vec<Family> = match spec.split_once(':') {
            None if spec == "standard" => catalog::standard_families(s.nakayama_dim),
            Some(("linear-a", n)) => vec![Family::LinearA {
                n: n.parse().map_err(|_| Failure::Usage(format!("bad family `{spec}`")))?,
            }],
            Some(("truncated", t)) => vec![Family::Truncated {
                t: t.parse().map_err(|_| Failure::Usage(format!("bad family `{spec}`")))?,
            }],
            Some(("nakayama", c)) => vec![Family::Nakayama {
                kupisch: parse_list(c)?,
                cyclic: false,
            }],
            Some(("nakayama-cyclic", c)) => vec![Family::Nakayama {
                kupisch: parse_list(c)?,
                cyclic: true,
            }],
            _ => return Err(Failure::Usage(format!("unknown family `{spec}`"))),
        };
        for &p in &s.primes {
            let f = Fp::new(p).map_err(|e| Failure::Module(e.into()))?;
            for fam in &families {
                out.push(catalog::catalog_algebra(fam, f)?);
            }
        }
    }
    Ok(out)
}

fn scan(s: &ScanArgs, cap: usize) -> Res {
    let cats = catalogs(s)?;
    let bounds = Bounds {
        max_dim: s.max_dim,
        max_summands: s.max_summands,
        specials: !s.no_specials,
    };
    match s.conjecture {
        ConjectureArg::Gorenstein => {
            let algebras: Vec<(String, Arc<Algebra>)> = cats.iter().map(|c| (c.name.clone(), c.algebra.clone())).collect();
            let probes = fdalg_core::par::map(&algebras, |(_, a)| conjectures::gorenstein_probe(a, cap))
                .into_iter()
                .collect::<Result<Vec<_>, _>>()?;
            #[derive(Serialize)]
            struct Row {
                algebra: String,
                probe: conjectures::GorensteinProbe,
            }
            let rows: Vec<Row> = algebras
                .iter()
                .zip(probes)
                .map(|((n, _), probe)| Row {
                    algebra: n.clone(),
                    probe,
                })
                .collect();
            let bad = rows.iter().filter(|r| r.probe.consistent == Some(false)).count();
            let open: Vec<String> = rows
                .iter()
                .filter(|r| r.probe.consistent.is_none())
                .map(|r| r.algebra.clone())
                .collect();
            let mut summary = format!(
                "{} algebras: {} consistent, {} inconsistent, {} undecided",
                rows.len(),
                rows.len() - bad - open.len(),
                bad,
                open.len()
            );
            for o in &open {
                let _ = write!(summary, "\n  undecided: {o}");
            }
            let code = if bad > 0 {
                NEGATIVE
            } else if !open.is_empty() {
                UNCERTIFIED
            } else {
                OK
            };
            Ok(Outcome::new(summary, &rows, open.is_empty(), code))
        }
        ConjectureArg::PdimBound | ConjectureArg::Wakamatsu => {
            let mut instances = Vec::new();
            for c in &cats {
                for (name, m) in catalog::enumerate_modules(c, bounds)? {
                    instances.push((c.name.clone(), name, m));
                }
            }
            if let ConjectureArg::PdimBound = s.conjecture {
                let verdicts = conjectures::scan_pdim_bound(&instances, cap)?;
                let summary_counts = ScanSummary::of(&verdicts);
                let uncertified: Vec<String> = verdicts
                    .iter()
                    .filter(|v| matches!(v.status, ConjectureStatus::Uncertified(_)))
                    .map(|v| format!("{} / {}", v.algebra, v.module))
                    .collect();
                let counterexamples: Vec<String> = verdicts
                    .iter()
                    .filter(|v| matches!(v.status, ConjectureStatus::Counterexample(_)))
                    .map(|v| format!("{} / {}", v.algebra, v.module))
                    .collect();
                #[derive(Serialize)]
                struct R {
                    summary: ScanSummary,
                    uncertified: Vec<String>,
                    counterexamples: Vec<String>,
                    verdicts: Vec<conjectures::ConjectureVerdict>,
                }
                let mut text = format!(
                    "{} instances: {} confirmed, {} not applicable, {} uncertified, {} counterexamples",
                    summary_counts.total,
                    summary_counts.confirmed,
                    summary_counts.not_applicable,
                    summary_counts.uncertified,
                    summary_counts.counterexamples
                );
                for u in &uncertified {
                    let _ = write!(text, "\n  uncertified: {u}");
                }
                for u in &counterexamples {
                    let _ = write!(text, "\n  COUNTEREXAMPLE: {u}");
                }
                let code = if !counterexamples.is_empty() {
                    NEGATIVE
                } else if !uncertified.is_empty() {
                    UNCERTIFIED
                } else {
                    OK
                };
                let certified = uncertified.is_empty();
                let r = R {
                    summary: summary_counts,
                    uncertified,
                    counterexamples,
                    verdicts,
                };
                Ok(Outcome::new(text, &r, certified, code))
            } else {
                let probes = fdalg_core::par::map(&instances, |(_, _, m)| conjectures::wakamatsu_probe(m, cap))
                    .into_iter()
                    .collect::<Result<Vec<_>, _>>()?;
                #[derive(Serialize)]
                struct Row {
                    algebra: String,
                    module: String,
                    probe: conjectures::WakamatsuProbe,
                }
                let rows: Vec<Row> = instances
                    .iter()
                    .zip(probes)
                    .map(|((a, n, _), probe)| Row {
                        algebra: a.clone(),
                        module: n.clone(),
                        probe,
                    })
                    .collect();
                let count = |st: ProbeStatus| rows.iter().filter(|r| r.probe.status == st).count();
                let (conf, counter, open) = (
                    count(ProbeStatus::Confirmed),
                    count(ProbeStatus::Counterexample),
                    count(ProbeStatus::Inconclusive),
                );
                let mut summary = format!(
                    "{} instances: {} confirmed, {} hypotheses not met, {} inconclusive, {} counterexamples",
                    rows.len(),
                    conf,
                    count(ProbeStatus::HypothesesNotMet),
                    open,
                    counter
                );
                for r in rows.iter().filter(|r| r.probe.status == ProbeStatus::Inconclusive) {
                    let _ = write!(summary, "\n  inconclusive: {} / {}", r.algebra, r.module);
                }
                let code = if counter > 0 {
                    NEGATIVE
                } else if open > 0 {
                    UNCERTIFIED
                } else {
                    OK
                };
                Ok(Outcome::new(summary, &rows, open == 0, code))
            }
        }
    }
}
