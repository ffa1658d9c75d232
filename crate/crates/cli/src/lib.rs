//! Command-line front end for `toric-qk`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use toric_qk::ifunction::i_series;
use toric_qk::linalg::{format_rational, format_vector, parse_rational, Rational};
use toric_qk::novikov::{enumerate_degrees, touches_box};
use toric_qk::poly::default_names;
use toric_qk::qde::{check_annihilation, BoxOperator};
use toric_qk::qkirwan::{equivariant_qsr_generator, kirwan_leading, qsr_generator};
use toric_qk::wire::{
    parse_input, AnnihilationDoc, ErrorDoc, ISeriesDoc, KirwanDoc, PolyDoc, PresentationDoc,
    QsrDoc, SectorDoc,
};
use toric_qk::{build_presentation, enumerate_sectors, GitData, NovikovDegree};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] toric_qk::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_precondition() => 2,
            _ => 1,
        }
    }

    pub fn to_doc(&self) -> ErrorDoc {
        match self {
            CliError::Core(e) => ErrorDoc::new(e),
            CliError::Io { .. } => ErrorDoc {
                code: "io".into(),
                message: self.to_string(),
            },
            CliError::Usage(m) => ErrorDoc {
                code: "usage".into(),
                message: m.clone(),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "toric-qk",
    version,
    about = "Exact quantum cohomology data of torus GIT quotients"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON file with weights, polarization and optional labels
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Limits {
    /// Energy cutoff, p/q
    #[arg(long)]
    pub emax: String,
    /// Degree bounds per torus coordinate, lo:hi[,lo:hi...]
    #[arg(long = "box")]
    pub bounds: String,
    /// Degrees are enumerated on the lattice (1/n) Z^r
    #[arg(long)]
    pub denominator: u32,
}

#[derive(Debug, Args)]
pub struct DegreeList {
    /// JSON list of degrees, e.g. "[[1,0],[0,1]]"; "[1,2]" for rank one
    #[arg(long)]
    pub degrees: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical Stanley-Reisner presentation
    Presentation(#[command(flatten)] Common),
    /// Inertia sectors with ages
    Inertia(#[command(flatten)] Common),
    /// Truncated I-function
    Ifunction {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        limits: Limits,
    },
    /// Check that Box_d annihilates the truncated I-function
    CheckQde {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        degrees: DegreeList,
    },
    /// Quantum Stanley-Reisner generators
    Qsr {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degrees: DegreeList,
        /// Emit generators in the k equivariant variables
        #[arg(long)]
        equivariant: bool,
    },
    /// Leading-order quantum Kirwan images
    Kirwan {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degrees: DegreeList,
    },
    /// Deligne-Mumford check and semistability combinatorics
    DmCheck(#[command(flatten)] Common),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope<T> {
    pub command: String,
    pub result: T,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorEnvelope {
    pub command: Option<String>,
    pub error: ErrorDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IFunctionDoc {
    pub variables: Vec<String>,
    pub denominator: u32,
    pub series: ISeriesDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckQdeDoc {
    pub ok: bool,
    pub verified_energy: String,
    pub checks: Vec<AnnihilationDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QsrListDoc {
    pub equivariant: bool,
    pub generators: Vec<QsrDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KirwanListDoc {
    pub terms: Vec<KirwanDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InertiaDoc {
    pub sectors: Vec<SectorDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DmCheckDoc {
    pub is_dm: bool,
    /// 1-based
    pub unstable_primitive_sets: Vec<Vec<usize>>,
    /// 1-based
    pub minimal_semistable_supports: Vec<Vec<usize>>,
}

/// Process exit status with the bytes for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

const NOT_DM_WARNING: &str =
    "not Deligne-Mumford: some minimal semistable support has weights of deficient rank";
const BOX_WARNING: &str =
    "degree box touched: enumerated degrees lie on its boundary, the series may be truncated by the box";
const EMPTY_WARNING: &str = "no degrees enumerated within the given limits";
const CONE_WARNING: &str =
    "span hypothesis holds but the polarization is outside the cone of {mu_j : mu_j(d) >= 0}";

pub fn parse_bounds(s: &str, r: usize) -> Result<Vec<(i64, i64)>, CliError> {
    let bad = || CliError::Usage(format!("invalid --box {s:?}: expected lo:hi[,lo:hi...]"));
    let bounds = s
        .split(',')
        .map(|part| {
            let (lo, hi) = part.trim().split_once(':').ok_or_else(bad)?;
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
            Ok((lo, hi))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    if bounds.len() != r {
        return Err(CliError::Usage(format!(
            "--box has {} ranges, the torus has rank {r}",
            bounds.len()
        )));
    }
    Ok(bounds)
}

fn scalar_rational(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(CliError::Usage(format!(
                "degree entry {n} is not an integer"
            ))),
        },
        Value::String(s) => Ok(parse_rational(s)?),
        other => Err(CliError::Usage(format!("invalid degree entry {other}"))),
    }
}

pub fn parse_degrees(s: &str, git: &GitData) -> Result<Vec<NovikovDegree>, CliError> {
    let value: Value =
        serde_json::from_str(s).map_err(|e| CliError::Usage(format!("invalid --degrees: {e}")))?;
    let Value::Array(items) = value else {
        return Err(CliError::Usage("--degrees must be a JSON array".into()));
    };
    let mut out = Vec::with_capacity(items.len());
    for item in &items {
        let d = match item {
            Value::Array(xs) => xs
                .iter()
                .map(scalar_rational)
                .collect::<Result<Vec<_>, _>>()?,
            scalar if git.r() == 1 => vec![scalar_rational(scalar)?],
            _ => {
                return Err(CliError::Usage(
                    "--degrees entries must be arrays for rank above one".into(),
                ))
            }
        };
        out.push(NovikovDegree::new(git, d)?);
    }
    Ok(out)
}

fn load(common: &Common) -> Result<GitData, CliError> {
    let text = std::fs::read_to_string(&common.input).map_err(|source| CliError::Io {
        path: common.input.display().to_string(),
        source,
    })?;
    Ok(parse_input(&text)?)
}

fn dm_warnings(git: &GitData) -> Vec<String> {
    if git.is_dm() {
        Vec::new()
    } else {
        vec![NOT_DM_WARNING.to_string()]
    }
}

fn one_based(sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    sets.into_iter()
        .map(|s| s.into_iter().map(|j| j + 1).collect())
        .collect()
}

fn poly_text(p: &PolyDoc, names: &[String]) -> Result<String, CliError> {
    let poly = toric_qk::wire::poly_from_doc(p, names.len())?;
    Ok(poly.display_with(names))
}

fn degree_text(d: &[String]) -> String {
    format!("({})", d.join(", "))
}

fn render<T: Serialize>(
    command: &str,
    result: T,
    warnings: Vec<String>,
    format: Format,
    text: impl FnOnce(&T) -> Result<String, CliError>,
) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let env = Envelope {
                command: command.to_string(),
                result,
                warnings,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("documents serialize");
            s.push('\n');
            Ok(s)
        }
        Format::Text => {
            let mut s = text(&result)?;
            for w in &warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            Ok(s)
        }
    }
}

fn series_terms_text(s: &ISeriesDoc, names: &[String]) -> Result<String, CliError> {
    let mut out = String::new();
    for t in &s.terms {
        let parts = t
            .coeff
            .iter()
            .rev()
            .map(|z| {
                Ok(format!(
                    "({})*z^{}",
                    poly_text(&z.value, names)?,
                    z.zeta_exp
                ))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let _ = writeln!(
            out,
            "  q^{} [energy {}]: {}",
            degree_text(&t.degree),
            t.energy,
            parts.join(" + ")
        );
    }
    Ok(out)
}

fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Presentation(common) => {
            let git = load(common)?;
            let pres = build_presentation(&git);
            let doc = PresentationDoc::new(&pres);
            render("presentation", doc, dm_warnings(&git), common.format, |d| {
                let names = &d.variables;
                let mut s = String::new();
                let _ = writeln!(s, "variables: {}", names.join(", "));
                for g in &d.sr_generators {
                    let _ = writeln!(s, "sr generator: {}", poly_text(g, names)?);
                }
                for g in &d.groebner_basis {
                    let _ = writeln!(s, "groebner basis: {}", poly_text(g, names)?);
                }
                match d.dimension {
                    Some(n) => {
                        let _ = writeln!(s, "dimension: {n}");
                    }
                    None => {
                        let _ = writeln!(s, "dimension: infinite");
                    }
                }
                Ok(s)
            })
        }
        Command::Inertia(common) => {
            let git = load(common)?;
            let sectors = enumerate_sectors(&git)?;
            let doc = InertiaDoc {
                sectors: sectors.iter().map(SectorDoc::new).collect(),
            };
            render("inertia", doc, Vec::new(), common.format, |d| {
                let mut s = String::new();
                for sec in &d.sectors {
                    let support: Vec<String> =
                        sec.fixed_support.iter().map(ToString::to_string).collect();
                    let _ = writeln!(
                        s,
                        "xi = {}  age {}  order {}  fixed {{{}}}",
                        degree_text(&sec.xi),
                        sec.age,
                        sec.order,
                        support.join(", ")
                    );
                }
                Ok(s)
            })
        }
        Command::Ifunction { common, limits } => {
            let git = load(common)?;
            let e_max = parse_rational(&limits.emax)?;
            let bounds = parse_bounds(&limits.bounds, git.r())?;
            let degrees = enumerate_degrees(&git, &e_max, &bounds, limits.denominator)?;
            let mut warnings = dm_warnings(&git);
            if degrees.is_empty() {
                warnings.push(EMPTY_WARNING.to_string());
            } else if touches_box(&degrees, &bounds) {
                warnings.push(BOX_WARNING.to_string());
            }
            let pres = build_presentation(&git);
            let series = i_series(&pres, &e_max, &bounds, limits.denominator)?;
            let doc = IFunctionDoc {
                variables: pres.variable_names(),
                denominator: limits.denominator,
                series: ISeriesDoc::new(&series),
            };
            render("ifunction", doc, warnings, common.format, |d| {
                let mut s = format!("I-function up to energy {}:\n", d.series.cutoff);
                s.push_str(&series_terms_text(&d.series, &d.variables)?);
                Ok(s)
            })
        }
        Command::CheckQde {
            common,
            limits,
            degrees,
        } => {
            let git = load(common)?;
            let e_max = parse_rational(&limits.emax)?;
            let bounds = parse_bounds(&limits.bounds, git.r())?;
            let ds = parse_degrees(&degrees.degrees, &git)?;
            let enumerated = enumerate_degrees(&git, &e_max, &bounds, limits.denominator)?;
            let mut warnings = dm_warnings(&git);
            if enumerated.is_empty() {
                warnings.push(EMPTY_WARNING.to_string());
            } else if touches_box(&enumerated, &bounds) {
                warnings.push(BOX_WARNING.to_string());
            }
            let pres = build_presentation(&git);
            let series = i_series(&pres, &e_max, &bounds, limits.denominator)?;
            let mut checks = Vec::with_capacity(ds.len());
            for d in ds {
                let op = BoxOperator::new(&git, d)?;
                let rep = check_annihilation(&op, &series)?;
                checks.push(AnnihilationDoc::new(&op.degree, &rep));
            }
            let doc = CheckQdeDoc {
                ok: checks.iter().all(|c| c.ok),
                verified_energy: format_rational(&e_max),
                checks,
            };
            let names = pres.variable_names();
            render("check-qde", doc, warnings, common.format, |d| {
                let mut s = format!("ok: {}  verified energy: {}\n", d.ok, d.verified_energy);
                for c in &d.checks {
                    let _ = writeln!(
                        s,
                        "Box_{}: {}",
                        degree_text(&c.degree),
                        if c.ok { "annihilates" } else { "residual" }
                    );
                    s.push_str(&series_terms_text(&c.residual, &names)?);
                }
                Ok(s)
            })
        }
        Command::Qsr {
            common,
            degrees,
            equivariant,
        } => {
            let git = load(common)?;
            let ds = parse_degrees(&degrees.degrees, &git)?;
            let generators = if *equivariant {
                let names = default_names("v", git.k());
                ds.iter()
                    .map(|d| {
                        Ok(QsrDoc::from_equivariant(
                            &equivariant_qsr_generator(&git, d)?,
                            names.clone(),
                        ))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?
            } else {
                let names = default_names("u", git.r());
                ds.iter()
                    .map(|d| Ok(QsrDoc::new(&qsr_generator(&git, d)?, names.clone())))
                    .collect::<Result<Vec<_>, CliError>>()?
            };
            let doc = QsrListDoc {
                equivariant: *equivariant,
                generators,
            };
            render("qsr", doc, dm_warnings(&git), common.format, |d| {
                let mut s = String::new();
                for g in &d.generators {
                    let _ = writeln!(
                        s,
                        "d = {}: {} - q^{} * ({})",
                        degree_text(&g.degree),
                        poly_text(&g.classical_part, &g.variables)?,
                        degree_text(&g.degree),
                        poly_text(&g.quantum_part, &g.variables)?
                    );
                }
                Ok(s)
            })
        }
        Command::Kirwan { common, degrees } => {
            let git = load(common)?;
            let ds = parse_degrees(&degrees.degrees, &git)?;
            let pres = build_presentation(&git);
            let mut warnings = dm_warnings(&git);
            let mut terms = Vec::with_capacity(ds.len());
            for d in &ds {
                let t = kirwan_leading(&git, &pres, d)?;
                if t.hypotheses_disagree() {
                    warnings.push(format!("d = {}: {CONE_WARNING}", format_vector(d.vector())));
                }
                terms.push(KirwanDoc::new(&t, pres.variable_names()));
            }
            let doc = KirwanListDoc { terms };
            render("kirwan", doc, warnings, common.format, |d| {
                let mut s = String::new();
                for t in &d.terms {
                    let _ = writeln!(
                        s,
                        "kappa({}) = q^{} * ({}) + higher order  [{}; {}]",
                        poly_text(&t.input_monomial, &t.variables)?,
                        degree_text(&t.degree),
                        poly_text(&t.output, &t.variables)?,
                        t.modulo_note,
                        t.interpretation
                    );
                }
                Ok(s)
            })
        }
        Command::DmCheck(common) => {
            let git = load(common)?;
            let doc = DmCheckDoc {
                is_dm: git.is_dm(),
                unstable_primitive_sets: one_based(git.unstable_primitive_sets()),
                minimal_semistable_supports: one_based(git.minimal_semistable_supports()),
            };
            render("dm-check", doc, dm_warnings(&git), common.format, |d| {
                let sets = |v: &[Vec<usize>]| {
                    v.iter()
                        .map(|s| {
                            format!(
                                "{{{}}}",
                                s.iter()
                                    .map(ToString::to_string)
                                    .collect::<Vec<_>>()
                                    .join(", ")
                            )
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                Ok(format!(
                    "deligne-mumford: {}\nunstable primitive sets: {}\nminimal semistable supports: {}\n",
                    d.is_dm,
                    sets(&d.unstable_primitive_sets),
                    sets(&d.minimal_semistable_supports)
                ))
            })
        }
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Presentation(_) => "presentation",
            Command::Inertia(_) => "inertia",
            Command::Ifunction { .. } => "ifunction",
            Command::CheckQde { .. } => "check-qde",
            Command::Qsr { .. } => "qsr",
            Command::Kirwan { .. } => "kirwan",
            Command::DmCheck(_) => "dm-check",
        }
    }

    fn format(&self) -> Format {
        match self {
            Command::Presentation(c) | Command::Inertia(c) | Command::DmCheck(c) => c.format,
            Command::Ifunction { common, .. }
            | Command::CheckQde { common, .. }
            | Command::Qsr { common, .. }
            | Command::Kirwan { common, .. } => common.format,
        }
    }
}

fn error_output(command: Option<&str>, err: &CliError, format: Format) -> Output {
    let env = ErrorEnvelope {
        command: command.map(str::to_string),
        error: err.to_doc(),
    };
    let (stdout, stderr) = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&env).expect("documents serialize");
            s.push('\n');
            (s, String::new())
        }
        Format::Text => (
            String::new(),
            format!("error [{}]: {}\n", env.error.code, env.error.message),
        ),
    };
    Output {
        code: err.exit_code(),
        stdout,
        stderr,
    }
}

pub fn run(cli: &Cli) -> Output {
    let format = cli.command.format();
    match execute(&cli.command) {
        Ok(stdout) => Output {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => error_output(Some(cli.command.name()), &e, format),
    }
}

/// Parses arguments (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                return Output {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let msg = e.render().to_string();
            let summary = msg
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect::<Vec<_>>()
                .join(" ");
            let summary = summary.trim_start_matches("error: ").to_string();
            let mut out = error_output(None, &CliError::Usage(summary), Format::Json);
            out.stderr = msg;
            out
        }
    }
}
