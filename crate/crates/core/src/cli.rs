//! Command-line front end.
//!
//! Exit codes: 0 success (GO confirmed / all checks match), 1 internal
//! error, 2 malformed input, 3 non-GO certified, 4 indeterminate,
//! 5 reproduction mismatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::gocheck::{lie_group_problem, standard_samples, Arith, GoCertificate, Overall, Tolerances};
use crate::liealg::{build_su2, build_su3, CompactLieAlgebra, Subspace};
use crate::metrics::{make_metric, MetricDescriptor, MetricEndomorphism, ModuleDecomposition};
use crate::ricci::ricci_left_invariant;
use crate::rootsys::RootSystem;
use crate::scalar::{parse_literal, Q};
use crate::spaces::aloff_wallach::{aloff_wallach, aw_go_classify, formulation_agreement, AwClassification};
use crate::spaces::g2::{g2_decomposition, reproduce_main_theorem};
use crate::spaces::AwFormulation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_NON_GO: i32 = 3;
pub const EXIT_INDETERMINATE: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "gometrics", version, about = "Invariant metrics, geodesic-orbit certificates and Einstein checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Arithmetic: exact rationals, floats only (the band between the
    /// tolerances is reported as indeterminate), or auto: exact unless a
    /// coefficient is written as a decimal, then floats with exact escalation.
    #[arg(long, global = true, env = "GOMETRICS_MODE", value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,

    #[arg(long, global = true, env = "GOMETRICS_SEED", default_value_t = 42)]
    pub seed: u64,

    #[arg(long, global = true, env = "GOMETRICS_TOL_FEAS", default_value_t = 1e-9)]
    pub tol_feas: f64,

    #[arg(long, global = true, env = "GOMETRICS_TOL_INFEAS", default_value_t = 1e-3)]
    pub tol_infeas: f64,

    /// Einstein tolerance; defaults to 1e-12 for rational and 1e-5 for
    /// decimal coefficients.
    #[arg(long, global = true, env = "GOMETRICS_TOL_EINSTEIN")]
    pub tol_einstein: Option<f64>,

    /// Output file (written atomically); stdout when absent.
    #[arg(long, global = true, env = "GOMETRICS_OUT")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, env = "GOMETRICS_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Root data and closed symmetric subsystems up to the Weyl group.
    Roots { system: String },
    /// Geodesic-orbit check at seeded tangent vectors.
    GoCheck {
        /// aw:k,l | lie:g2 | lie:su3 | lie:su2
        #[arg(long)]
        space: String,
        /// Comma-separated positive coefficients, one per block.
        #[arg(long)]
        metric: String,
        /// Samples per sampling strategy.
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Criterion used on Aloff–Wallach spaces.
        #[arg(long, value_enum, default_value_t = AwForm::NormalTransitive)]
        formulation: AwForm,
    },
    /// Ricci curvature and Einstein test of a left-invariant metric.
    EinsteinCheck {
        #[arg(long)]
        space: String,
        #[arg(long)]
        metric: String,
    },
    /// Reproduce the Aloff–Wallach classification or the g2 Einstein example.
    Reproduce { target: String },
    /// Structure constants or block tables as JSON/CSV.
    Export {
        /// algebra | aw-brackets | g2-blocks
        what: String,
        #[arg(long, default_value = "lie:g2")]
        space: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AwForm {
    Direct,
    Reduced,
    NormalTransitive,
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Construction(_) | Error::NotSubalgebra(_) => EXIT_INTERNAL,
            _ => EXIT_MALFORMED,
        };
        Failure { code, message: e.to_string() }
    }
}

fn malformed(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_MALFORMED, message: msg.into() }
}

/// Parsed metric coefficients; `decimal` when any was written as a decimal.
struct Coeffs {
    values: Vec<Q>,
    decimal: bool,
}

fn parse_coeffs(s: &str) -> Result<Coeffs, Failure> {
    let mut values = Vec::new();
    let mut decimal = false;
    for part in s.split(',') {
        let lit = parse_literal(part)?;
        decimal |= lit.decimal;
        values.push(lit.value);
    }
    Ok(Coeffs { values, decimal })
}

enum Space {
    Aw(i64, i64),
    Lie(String),
}

fn parse_space(s: &str) -> Result<Space, Failure> {
    if let Some(rest) = s.strip_prefix("aw:") {
        let parts: Vec<&str> = rest.split(',').collect();
        let parse = |p: &str| p.trim().parse::<i64>().map_err(|_| malformed(format!("bad space {s:?}")));
        if parts.len() != 2 {
            return Err(malformed(format!("bad space {s:?}: expected aw:k,l")));
        }
        return Ok(Space::Aw(parse(parts[0])?, parse(parts[1])?));
    }
    match s {
        "lie:g2" | "lie:su3" | "lie:su2" => Ok(Space::Lie(s[4..].to_string())),
        _ => Err(malformed(format!("unknown space {s:?}: expected aw:k,l, lie:g2, lie:su3 or lie:su2"))),
    }
}

/// A compact Lie group with its block decomposition.
struct LieSpace {
    alg: CompactLieAlgebra<Q>,
    blocks: ModuleDecomposition<Q>,
}

fn lie_space(name: &str) -> Result<LieSpace, Failure> {
    match name {
        "g2" => {
            let d = g2_decomposition()?;
            Ok(LieSpace { alg: d.alg, blocks: d.blocks })
        }
        "su3" => {
            let alg = build_su3();
            let mut names = vec!["t".to_string()];
            let mut blocks = vec![alg.cartan_subspace()];
            for p in ["a1", "a2", "a1+a2"] {
                names.push(format!("v_{p}"));
                blocks.push(alg.plane_subspace(p).expect("su(3) root plane"));
            }
            let full = Subspace::full(&alg);
            let blocks = ModuleDecomposition::new(&alg, names, blocks, &full)?;
            Ok(LieSpace { alg, blocks })
        }
        "su2" => {
            let alg = build_su2();
            let blocks = (0..3).map(|i| Subspace::coordinate(&alg, &[i])).collect();
            let names = alg.labels.clone();
            let full = Subspace::full(&alg);
            let blocks = ModuleDecomposition::new(&alg, names, blocks, &full)?;
            Ok(LieSpace { alg, blocks })
        }
        _ => Err(malformed(format!("unknown Lie group {name:?}"))),
    }
}

fn lie_metric(ls: &LieSpace, c: &Coeffs) -> Result<MetricEndomorphism<Q>, Failure> {
    if c.values.len() != ls.blocks.len() {
        return Err(malformed(format!(
            "{} needs {} coefficients ({}), got {}",
            ls.alg.name,
            ls.blocks.len(),
            ls.blocks.names.join(", "),
            c.values.len()
        )));
    }
    Ok(make_metric(&ls.alg, ls.blocks.clone(), c.values.clone())?)
}

impl Cli {
    fn tolerances(&self) -> Result<Tolerances, Failure> {
        let t = Tolerances { feas: self.tol_feas, infeas: self.tol_infeas, ..Tolerances::default() };
        if !(t.feas > 0.0 && t.infeas > 0.0 && t.feas < t.infeas) {
            return Err(malformed("tolerances must be positive with tol-feas < tol-infeas"));
        }
        if self.tol_einstein.is_some_and(|e| e <= 0.0 || e.is_nan()) {
            return Err(malformed("tol-einstein must be positive"));
        }
        Ok(t)
    }

    /// Decimal coefficients force float mode.
    fn arith(&self, decimal: bool) -> Arith {
        match self.mode {
            Mode::Exact if !decimal => Arith::Exact,
            Mode::Auto if !decimal => Arith::Exact,
            _ => Arith::Float,
        }
    }

    fn escalate(&self) -> bool {
        self.mode != Mode::Float
    }
}

/// Write `contents` to `--out` atomically, or to stdout.
fn emit(out: &Option<PathBuf>, contents: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure { code: EXIT_INTERNAL, message: format!("write failed: {e}") };
    match out {
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(contents.as_bytes()).map_err(io)?;
            so.flush().map_err(io)
        }
        Some(path) => write_atomic(path, contents).map_err(io),
    }
}

fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct RootsReport {
    schema: &'static str,
    system: crate::rootsys::RootSystemJson,
    subsystem_classes: Vec<SubsystemClass>,
}

#[derive(Serialize)]
struct SubsystemClass {
    size: usize,
    positive_roots: Vec<String>,
    display: String,
}

fn cmd_roots(cli: &Cli, system: &str) -> Result<i32, Failure> {
    let rs = match system.to_ascii_lowercase().as_str() {
        "g2" | "a2" => RootSystem::by_name(system)?,
        _ => return Err(malformed(format!("unsupported root system {system:?}: expected a2 or g2"))),
    };
    let classes: Vec<SubsystemClass> = rs
        .enumerate_closed_symmetric_subsystems()
        .iter()
        .map(|s| SubsystemClass {
            size: s.len(),
            positive_roots: s.positive_members(&rs).iter().map(|&i| rs.roots[i].name.clone()).collect(),
            display: s.display(&rs),
        })
        .collect();
    let text = match cli.format {
        Format::Json => to_json(&RootsReport { schema: "1", system: rs.to_json(), subsystem_classes: classes }),
        Format::Csv => {
            let mut s = String::from("class,size,positive_roots\n");
            for (i, c) in classes.iter().enumerate() {
                s.push_str(&format!("{},{},{}\n", i + 1, c.size, c.positive_roots.join(" ")));
            }
            s
        }
        Format::Text => {
            let mut s = format!("{}: {} roots, {} classes of proper closed symmetric subsystems\n", rs.name, rs.roots.len(), classes.len());
            for c in &classes {
                s.push_str(&format!("  {}\n", c.display));
            }
            s
        }
    };
    emit(&cli.out, &text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct GoCheckReport {
    schema: &'static str,
    space: String,
    metric: MetricDescriptor,
    #[serde(flatten)]
    certificate: GoCertificate,
}

fn overall_code(o: Overall) -> i32 {
    match o {
        Overall::GoConfirmedOnSamples => EXIT_OK,
        Overall::NonGoCertified => EXIT_NON_GO,
        Overall::Indeterminate => EXIT_INDETERMINATE,
    }
}

fn cmd_go_check(cli: &Cli, space: &str, metric: &str, n: usize, form: AwForm) -> Result<i32, Failure> {
    let tol = cli.tolerances()?;
    let coeffs = parse_coeffs(metric)?;
    let arith = cli.arith(coeffs.decimal);
    let (descriptor, cert) = match parse_space(space)? {
        Space::Aw(k, l) => {
            let aw = aloff_wallach(k, l)?;
            if aw.is_excluded() {
                return Err(malformed(format!(
                    "W_{{{k},{l}}} is excluded: its isometry group is larger than U(3) and the criterion does not apply"
                )));
            }
            if coeffs.values.len() != 4 {
                return Err(malformed(format!("aw needs 4 coefficients (x1,x2,x3,x4), got {}", coeffs.values.len())));
            }
            let x: [Q; 4] = std::array::from_fn(|i| coeffs.values[i].clone());
            let m = aw.metric(&x)?;
            let form = match form {
                AwForm::Direct => AwFormulation::Direct,
                AwForm::Reduced => AwFormulation::Reduced,
                AwForm::NormalTransitive => AwFormulation::NormalTransitive,
            };
            let samples = aw.samples(cli.seed, n);
            let mut p = aw.problem(&m, form)?;
            p.problem.escalate = cli.escalate();
            (m.descriptor(), p.certify(&samples, arith, &tol, cli.seed)?)
        }
        Space::Lie(name) => {
            let ls = lie_space(&name)?;
            let m = lie_metric(&ls, &coeffs)?;
            let samples = standard_samples(&ls.alg, &ls.blocks, cli.seed, n);
            let mut p = lie_group_problem(&ls.alg, &m)?;
            p.escalate = cli.escalate();
            (m.descriptor(), p.certify(&samples, arith, &tol, cli.seed)?)
        }
    };
    let code = overall_code(cert.overall);
    let text = match cli.format {
        Format::Json => to_json(&GoCheckReport { schema: "1", space: space.to_string(), metric: descriptor, certificate: cert }),
        Format::Csv => {
            let mut s = String::from("sample,verdict,decided_by,escalated,residual,sigma_min\n");
            for (i, r) in cert.samples.iter().enumerate() {
                let sigma = r.smallest_nonzero_singular_value.map_or(String::new(), |v| format!("{v:e}"));
                s.push_str(&format!(
                    "{},{},{},{},{:e},{}\n",
                    i,
                    json_tag(&r.verdict),
                    json_tag(&r.decided_by),
                    r.escalated,
                    r.residual,
                    sigma
                ));
            }
            s
        }
        Format::Text => {
            let worst = cert.samples.iter().map(|r| r.residual).fold(0.0, f64::max);
            format!(
                "{space} [{}]: {} over {} samples (largest residual {worst:e})\n",
                cert.mode,
                json_tag(&cert.overall),
                cert.samples.len()
            )
        }
    };
    emit(&cli.out, &text)?;
    Ok(code)
}

fn json_tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

#[derive(Serialize)]
struct EinsteinOutput {
    schema: &'static str,
    space: String,
    gauge: String,
    frame: &'static str,
    is_einstein: bool,
    c: f64,
    deviation: f64,
    scalar_curvature: f64,
    ric_matrix: Vec<Vec<f64>>,
}

fn cmd_einstein(cli: &Cli, space: &str, metric: &str) -> Result<i32, Failure> {
    cli.tolerances()?;
    let coeffs = parse_coeffs(metric)?;
    let Space::Lie(name) = parse_space(space)? else {
        return Err(malformed("einstein-check works on Lie groups (lie:g2, lie:su3, lie:su2)"));
    };
    let ls = lie_space(&name)?;
    let m = lie_metric(&ls, &coeffs)?;
    let tol = cli.tol_einstein.unwrap_or(if coeffs.decimal { 1e-5 } else { 1e-12 });
    let r = match cli.arith(coeffs.decimal) {
        Arith::Exact => ricci_left_invariant(&ls.alg, &m)?,
        Arith::Float => {
            let fa = ls.alg.to_f64();
            ricci_left_invariant(&fa, &m.to_f64(&fa))?
        }
    };
    let is_einstein = r.exact_einstein.unwrap_or(false) || r.deviation <= tol;
    let out = EinsteinOutput {
        schema: "1",
        space: space.to_string(),
        gauge: r.gauge.clone(),
        frame: "orthonormal for <.,.> along the algebra basis",
        is_einstein,
        c: r.einstein_constant,
        deviation: r.deviation,
        scalar_curvature: r.scalar_curvature,
        ric_matrix: r.ric,
    };
    let text = match cli.format {
        Format::Json => to_json(&out),
        Format::Csv => {
            let mut s = String::new();
            for row in &out.ric_matrix {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
        Format::Text => format!(
            "{space}: einstein={} c={} deviation={:e} scalar_curvature={} (gauge {})\n",
            out.is_einstein, out.c, out.deviation, out.scalar_curvature, out.gauge
        ),
    };
    emit(&cli.out, &text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct AwReproduction {
    schema: &'static str,
    seed: u64,
    spaces: Vec<AwClassification>,
    agreement_samples: usize,
    agreement_failures: Vec<String>,
    failures: Vec<String>,
    all_match: bool,
}

/// Spaces covered by `reproduce aw-classification`.
pub const AW_SPACES: [(i64, i64); 4] = [(2, 1), (3, 1), (3, 2), (5, 2)];
pub const AW_AGREEMENT_SAMPLES: usize = 100;

fn cmd_reproduce(cli: &Cli, target: &str) -> Result<i32, Failure> {
    let tol = cli.tolerances()?;
    let (text, failures) = match target {
        "aw-classification" => {
            let spaces: Vec<AwClassification> =
                AW_SPACES.iter().map(|&(k, l)| aw_go_classify(k, l, cli.seed)).collect::<Result<_, _>>()?;
            let agreement = formulation_agreement(cli.seed, AW_AGREEMENT_SAMPLES)?;
            let agreement_failures: Vec<String> = agreement
                .iter()
                .enumerate()
                .filter(|(_, s)| s.feasible.iter().any(|&f| f != s.feasible[0]))
                .map(|(i, s)| format!("sample {i}: W_{{{},{}}} x={:?} verdicts {:?}", s.k, s.l, s.x, s.feasible))
                .collect();
            let mut failures: Vec<String> = spaces
                .iter()
                .filter(|s| !s.matches)
                .map(|s| format!("W_{{{},{}}}: classification mismatch", s.k, s.l))
                .collect();
            failures.extend(agreement_failures.iter().cloned());
            let rep = AwReproduction {
                schema: "1",
                seed: cli.seed,
                spaces,
                agreement_samples: agreement.len(),
                agreement_failures,
                all_match: failures.is_empty(),
                failures: failures.clone(),
            };
            let text = match cli.format {
                Format::Text | Format::Csv => aw_text(&rep),
                Format::Json => to_json(&rep),
            };
            (text, failures)
        }
        "g2-einstein" => {
            let rep = reproduce_main_theorem(cli.seed, &tol, cli.tol_einstein)?;
            let text = match cli.format {
                Format::Json => to_json(&rep),
                Format::Text | Format::Csv => {
                    let mut s = String::from("set,einstein,deviation,naturally_reductive,kmax_dim,go\n");
                    for r in &rep.sets {
                        s.push_str(&format!(
                            "{},{},{:e},{},{},{}\n",
                            r.label,
                            r.einstein.is_einstein,
                            r.einstein.deviation,
                            r.naturally_reductive.as_ref().and_then(|n| n.h_type.clone()).unwrap_or_else(|| "none".into()),
                            r.kmax_dim,
                            json_tag(&r.go.overall)
                        ));
                    }
                    s
                }
            };
            (text, rep.failures)
        }
        _ => return Err(malformed(format!("unknown target {target:?}: expected aw-classification or g2-einstein"))),
    };
    emit(&cli.out, &text)?;
    if failures.is_empty() {
        Ok(EXIT_OK)
    } else {
        for f in &failures {
            eprintln!("mismatch: {f}");
        }
        Ok(EXIT_MISMATCH)
    }
}

fn aw_text(rep: &AwReproduction) -> String {
    let mut s = String::new();
    for sp in &rep.spaces {
        let certified = sp.grid.iter().filter(|e| e.exact_non_go).count();
        s.push_str(&format!(
            "W_{{{},{}}}: {certified}/{} grid metrics exact non-GO, {} witness checks, match={}\n",
            sp.k,
            sp.l,
            sp.grid.len(),
            sp.witnesses.len(),
            sp.matches
        ));
    }
    s.push_str(&format!(
        "formulation agreement: {}/{} samples\n",
        rep.agreement_samples - rep.agreement_failures.len(),
        rep.agreement_samples
    ));
    s
}

fn cmd_export(cli: &Cli, what: &str, space: &str) -> Result<i32, Failure> {
    let text = match what {
        "algebra" => {
            let alg = match parse_space(space)? {
                Space::Aw(k, l) => aloff_wallach(k, l)?.space.alg,
                Space::Lie(name) => lie_space(&name)?.alg,
            };
            match cli.format {
                Format::Csv => alg.bracket_csv(),
                _ => to_json(&alg.descriptor()),
            }
        }
        "aw-brackets" => {
            let Space::Aw(k, l) = parse_space(space)? else {
                return Err(malformed("aw-brackets needs --space aw:k,l"));
            };
            aloff_wallach(k, l)?.space.alg.bracket_csv()
        }
        "g2-blocks" => g2_decomposition()?.bracket_inclusions_csv(),
        _ => return Err(malformed(format!("unknown export {what:?}: expected algebra, aw-brackets or g2-blocks"))),
    };
    emit(&cli.out, &text)?;
    Ok(EXIT_OK)
}

pub fn execute(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::Roots { system } => cmd_roots(cli, system),
        Command::GoCheck { space, metric, samples, formulation } => cmd_go_check(cli, space, metric, *samples, *formulation),
        Command::EinsteinCheck { space, metric } => cmd_einstein(cli, space, metric),
        Command::Reproduce { target } => cmd_reproduce(cli, target),
        Command::Export { what, space } => cmd_export(cli, what, space),
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
