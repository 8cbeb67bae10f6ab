//! `qgforms`: build forms, algebras and quantum-group presentations, and
//! verify Hopf identities with certificates.
//!
//! Exit codes: 0 success, 1 I/O or parse error, 2 degenerate or invalid input,
//! 3 a check was refuted, 4 a check was inconclusive.

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qgforms::catalog::{CatalogSpec, Side};
use qgforms::forms::{check_preregular, polar, MultilinearForm, Slot};
use qgforms::hopf::{self, Kind, Presentation, Status, VerificationReport, Verifier};
use qgforms::io;
use qgforms::linalg::Matrix;
use qgforms::rational::{parse as parse_rational, Rational};
use qgforms::spalg::derive_relations;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qgforms", version, about = "Universal quantum groups of preregular multilinear forms")]
struct Cli {
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Length bound for certificate search (default 2m + 2).
    #[arg(long, global = true)]
    max_len: Option<usize>,
    /// Seed for randomized inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Preregularity report: nondegeneracy of both slots and the twist matrix.
    Check { form: PathBuf },
    /// Relation space of the superpotential algebra in degree N.
    Algebra {
        form: PathBuf,
        #[arg(long = "N", short = 'N')]
        degree: usize,
    },
    /// Presentation of a quantum group or bialgebra.
    Hopf(HopfArgs),
    /// Run a verification suite on a presentation.
    Verify(VerifyArgs),
    /// Emit a catalog form.
    Catalog(CatalogArgs),
    /// Canonical polar form.
    Polar {
        form: PathBuf,
        #[arg(long, value_enum, default_value_t = SlotArg::First)]
        slot: SlotArg,
    },
    /// Numeric codeterminant of a matrix (random with --seed if none is given).
    Codet {
        form: PathBuf,
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
}

#[derive(Args)]
struct HopfArgs {
    /// Form files: `e` then `f`; a single file is `e` for he/se and `f` for hf/sf.
    forms: Vec<PathBuf>,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Degree of the algebras for `om`.
    #[arg(long = "N", short = 'N', default_value_t = 2)]
    degree: usize,
    /// Parameters of the `ast` presentation, e.g. `p_0_1=2`, `lambda=3`.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, Rational)>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    presentation: PathBuf,
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Re-validate the certificates of this report instead of searching.
    #[arg(long)]
    recheck: Option<PathBuf>,
    /// Second presentation for `--suite equiv`.
    #[arg(long)]
    against: Option<PathBuf>,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(qgforms::catalog::CATALOG_NAMES))]
    name: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, Rational)>,
    #[arg(long, value_enum, default_value_t = SideArg::E)]
    side: SideArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SlotArg {
    First,
    Last,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    E,
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    He,
    Hf,
    Hef,
    Se,
    Sf,
    Sef,
    Gef,
    Om,
    Ast,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Antipode,
    Inverse,
    Central,
    S2,
    Pushout,
    Sovereign,
    Equiv,
    Counit,
    All,
}

fn parse_param(s: &str) -> Result<(String, Rational), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    Ok((k.trim().to_string(), parse_rational(v).map_err(|e| e.to_string())?))
}

/// Failure classes mapped to exit codes.
enum Failure {
    Io(anyhow::Error),
    Invalid(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Invalid(e.into())
    }
}

fn io_err(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Io(e.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(io_err)
}

fn load_form(path: &Path) -> Result<MultilinearForm, Failure> {
    let text = read(path)?;
    match io::form_from_json(&text) {
        Ok(f) => Ok(f),
        Err(io::IoError::Form(e)) => Err(Failure::Invalid(anyhow!("{}: {e}", path.display()))),
        Err(e) => Err(io_err(anyhow!("{}: {e}", path.display()))),
    }
}

fn load_presentation(path: &Path) -> Result<Presentation, Failure> {
    io::presentation_from_json(&read(path)?).map_err(|e| io_err(anyhow!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(io_err),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    io::to_pretty(v)
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Proved => 0,
        Status::Refuted => 3,
        Status::Inconclusive => 4,
    }
}

fn overall(reports: &[VerificationReport]) -> Status {
    reports.iter().map(VerificationReport::status).max_by_key(|s| match s {
        Status::Proved => 0,
        Status::Inconclusive => 1,
        Status::Refuted => 2,
    })
    .unwrap_or(Status::Proved)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if cli.max_len.is_some_and(|l| l < 2) {
        return Err(Failure::Invalid(anyhow!("--max-len must be at least 2")));
    }
    match cli.command {
        Command::Check { form } => {
            let report = check_preregular(&load_form(&form)?);
            emit(&cli.out, &pretty(&io::PreregularityFile::from(&report)))?;
            Ok(if report.is_preregular() { 0 } else { 2 })
        }
        Command::Algebra { form, degree } => {
            let space = derive_relations(&load_form(&form)?, degree)?;
            emit(&cli.out, &pretty(&io::RelationSpaceFile::from(&space)))?;
            Ok(0)
        }
        Command::Hopf(args) => {
            let p = build_presentation(&args)?;
            emit(&cli.out, &io::presentation_to_json(&p))?;
            Ok(0)
        }
        Command::Verify(args) => verify(&cli.out, cli.max_len, &args),
        Command::Catalog(args) => {
            let spec = CatalogSpec { name: args.name, n: args.n, params: args.params.into_iter().collect() };
            let side = match args.side {
                SideArg::E => Side::E,
                SideArg::F => Side::F,
            };
            emit(&cli.out, &io::form_to_json(&spec.build(side)?))?;
            Ok(0)
        }
        Command::Polar { form, slot } => {
            let slot = match slot {
                SlotArg::First => Slot::First,
                SlotArg::Last => Slot::Last,
            };
            emit(&cli.out, &io::form_to_json(&polar(&load_form(&form)?, slot)?))?;
            Ok(0)
        }
        Command::Codet { form, matrix } => {
            let e = load_form(&form)?;
            let m = match matrix {
                Some(path) => io::matrix_from_json(&read(&path)?).map_err(io_err)?,
                None => random_matrix(e.dim(), cli.seed),
            };
            let (value, independent) = hopf::codeterminant_numeric(&e, &m)?;
            let out = serde_json::json!({
                "value": value.to_string(),
                "column_independent": independent,
                "matrix": io::matrix_to_file(&m),
            });
            emit(&cli.out, &pretty(&out))?;
            Ok(0)
        }
    }
}

fn random_matrix(n: usize, seed: u64) -> Matrix {
    let mut rng = StdRng::seed_from_u64(seed);
    let rows = (0..n)
        .map(|_| (0..n).map(|_| Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into())).collect())
        .collect();
    Matrix::from_rows(rows)
}

fn build_presentation(args: &HopfArgs) -> Result<Presentation, Failure> {
    let kind = match args.kind {
        KindArg::He => Kind::He,
        KindArg::Hf => Kind::Hf,
        KindArg::Hef => Kind::Hef,
        KindArg::Se => Kind::Se,
        KindArg::Sf => Kind::Sf,
        KindArg::Sef => Kind::Sef,
        KindArg::Gef => Kind::Gef,
        KindArg::Om => Kind::OM,
        KindArg::Ast => Kind::Ast,
    };
    if kind == Kind::Ast {
        let spec = CatalogSpec { name: "ast".into(), n: args.n, params: args.params.iter().cloned().collect() };
        let (p, lambda) = spec.ast_parameters()?;
        return Ok(hopf::build_ast(&p, &lambda)?);
    }
    let forms = args.forms.iter().map(|p| load_form(p)).collect::<Result<Vec<_>, _>>()?;
    let (e, f) = match (kind, forms.as_slice()) {
        (Kind::Hf | Kind::Sf, [f]) => (None, Some(f)),
        (_, [e]) => (Some(e), None),
        (_, [e, f]) => (Some(e), Some(f)),
        _ => return Err(Failure::Invalid(anyhow!("expected one or two form files"))),
    };
    Ok(hopf::build(kind, e, f, Some(args.degree))?)
}

fn verify(out: &Option<PathBuf>, max_len: Option<usize>, args: &VerifyArgs) -> Result<u8, Failure> {
    let p = load_presentation(&args.presentation)?;
    if let Some(path) = &args.recheck {
        let reports = io::reports_from_json(&read(path)?).map_err(io_err)?;
        let failures: Vec<String> = reports.iter().flat_map(|r| hopf::recheck(r, &p)).collect();
        let summary = serde_json::json!({
            "rechecked": reports.iter().map(|r| r.checks.len()).sum::<usize>(),
            "failed": failures,
        });
        emit(out, &pretty(&summary))?;
        return Ok(if failures.is_empty() { 0 } else { 3 });
    }
    let bound = max_len.unwrap_or(2 * p.m + 2);
    let reports = if args.suite == SuiteArg::Equiv {
        let other_path = args.against.as_ref().ok_or_else(|| Failure::Invalid(anyhow!("--suite equiv needs --against")))?;
        let q = load_presentation(other_path)?;
        let (into_p, into_q) = dictionaries(&p, &q)?;
        vec![
            hopf::equivalence_check(&q, &p, &into_p, bound)?,
            hopf::equivalence_check(&p, &q, &into_q, bound)?,
        ]
    } else {
        let name = match args.suite {
            SuiteArg::Antipode => "antipode",
            SuiteArg::Inverse => "inverse",
            SuiteArg::Central => "central",
            SuiteArg::S2 => "s2",
            SuiteArg::Pushout => "pushout",
            SuiteArg::Sovereign => "sovereign",
            SuiteArg::Counit => "counit",
            SuiteArg::All | SuiteArg::Equiv => "all",
        };
        Verifier::new(&p, bound).suite(name)?
    };
    for r in &reports {
        eprintln!(
            "{}: {} ({} proved, {} refuted, {} inconclusive, max_len {bound})",
            r.suite,
            r.status(),
            r.count(Status::Proved),
            r.count(Status::Refuted),
            r.count(Status::Inconclusive)
        );
    }
    emit(out, &io::reports_to_json(&reports))?;
    Ok(status_code(overall(&reports)))
}

/// Dictionaries `q → p` and `p → q`: the skew-polynomial ones for an `ast`/`hef`
/// pair, otherwise symbols map to their namesakes.
type Dictionary = BTreeMap<String, qgforms::ncpoly::NcPoly>;

fn dictionaries(p: &Presentation, q: &Presentation) -> Result<(Dictionary, Dictionary), Failure> {
    match (p.kind, q.kind) {
        (Kind::Hef, Kind::Ast) => {
            let (to_hef, to_ast) = hopf::ast_dictionaries(q, p)?;
            Ok((to_hef, to_ast))
        }
        (Kind::Ast, Kind::Hef) => {
            let (to_hef, to_ast) = hopf::ast_dictionaries(p, q)?;
            Ok((to_ast, to_hef))
        }
        _ => Ok((BTreeMap::new(), BTreeMap::new())),
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("QGFORMS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
