//! Command-line front end: argument parsing, subcommands and exit codes.
//!
//! Exit codes: 0 success, 1 an axiom or cocycle check failed, 2 usage,
//! parse or size-limit error, 3 no free basis of `Ω¹(A)` was found.

pub mod format;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rpoisson_core::catalog::{self, Kind as CatalogKind};
use rpoisson_core::deformations::{extend_deformation, infinitesimal_classes, DeformationError, Extension};
use rpoisson_core::extensions::{build_extension, lr_complex};
use rpoisson_core::kaehler::{find_free_basis, induced_lie_rinehart, kaehler_module, DEFAULT_NODE_BUDGET};
use rpoisson_core::{
    inner_square_candidates, two_map_from_basis, verify_lie, verify_lie_rinehart, verify_lr_module,
    verify_module, verify_restricted_lie, verify_restricted_poisson, AlgebraError, AlgebraPresentation,
    CochainComplex, CochainError, Comparison, ExtensionData, ExtensionError, KaehlerError,
    LieRinehartPresentation, ModulePresentation, RestrictedCochain, Theory, VerificationReport, Violation,
};
use serde::Serialize;
use thiserror::Error;

use format::{
    cochain_values, parse_cocycle, parse_module, parse_presentation, render_elem, render_module,
    render_presentation, ModuleFile, ParseError, Presentation,
};

/// Environment variable overriding the coordinate cap of `cohomology`.
pub const COORD_CAP_ENV: &str = "RPOISSON_COORD_CAP";

#[derive(Debug, Parser)]
#[command(name = "rpoisson", version, about = "Restricted Lie, Lie–Rinehart and Poisson algebras over GF(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a presentation file.
    Verify { file: PathBuf },
    /// Dimensions (and representatives) of a cohomology group.
    Cohomology {
        file: PathBuf,
        /// CE, RES, LR or PA.
        #[arg(long)]
        theory: Theory,
        #[arg(long)]
        degree: usize,
        /// Print a basis of representatives.
        #[arg(long)]
        reps: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Module file (Lie–Rinehart inputs only; default: the base algebra).
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Kähler differentials and the induced Lie–Rinehart algebra.
    Kaehler {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        free_search_budget: usize,
        /// Write the induced Lie–Rinehart algebra here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the Poisson complex with the Lie–Rinehart complex of Ω¹.
    Compare {
        file: PathBuf,
        /// Inclusive range `a..b`, or a single degree.
        #[arg(long, default_value = "0..2")]
        degrees: String,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        free_search_budget: usize,
    },
    /// Infinitesimal deformations and their obstructions.
    Deform {
        file: PathBuf,
        /// Target order of the formal deformation.
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Only this class (1-based) of the H² basis.
        #[arg(long)]
        class: Option<usize>,
    },
    /// Abelian extension of a Lie–Rinehart algebra by a module.
    Extend {
        file: PathBuf,
        module: PathBuf,
        /// Degree-2 cocycle file (default: zero, the semidirect product).
        #[arg(long)]
        cocycle: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    List,
    /// Print an entry as a presentation file.
    Export {
        id: String,
        /// For Lie–Rinehart entries, print the accompanying module instead.
        #[arg(long)]
        module: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Axiom(String),
    #[error("{0}")]
    NotFree(String),
    #[error("{0}")]
    TooLarge(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Axiom(_) | CliError::Compute(_) => 1,
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io { .. } | CliError::TooLarge(_) => 2,
            CliError::NotFree(_) => 3,
        }
    }
}

impl From<CochainError> for CliError {
    fn from(e: CochainError) -> Self {
        match e {
            CochainError::DegreeTooLarge { .. } => CliError::TooLarge(e.to_string()),
            CochainError::ModuleMismatch | CochainError::MissingModuleAction(_) | CochainError::UnknownTheory(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Invalid(v) => CliError::Axiom(v.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<KaehlerError> for CliError {
    fn from(e: KaehlerError) -> Self {
        match e {
            KaehlerError::NotFree => CliError::NotFree(e.to_string()),
            KaehlerError::MissingProduct => CliError::Usage(e.to_string()),
            KaehlerError::Cochain(c) => c.into(),
            KaehlerError::Algebra(a) => a.into(),
            other => CliError::Axiom(other.to_string()),
        }
    }
}

impl From<DeformationError> for CliError {
    fn from(e: DeformationError) -> Self {
        match e {
            DeformationError::Cochain(c) => c.into(),
            DeformationError::Algebra(a) => a.into(),
            DeformationError::NotPoisson(_) | DeformationError::Invalid(_) => CliError::Axiom(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<ExtensionError> for CliError {
    fn from(e: ExtensionError) -> Self {
        match e {
            ExtensionError::Cochain(c) => c.into(),
            ExtensionError::Algebra(a) => a.into(),
            ExtensionError::DimensionMismatch { .. } | ExtensionError::BaseMismatch => CliError::Usage(e.to_string()),
            other => CliError::Axiom(other.to_string()),
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli.command, &mut out) {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn execute(command: &Command, out: &mut String) -> Result<i32, CliError> {
    match command {
        Command::Verify { file } => cmd_verify(file, out),
        Command::Cohomology { file, theory, degree, reps, format, module } => {
            cmd_cohomology(file, *theory, *degree, *reps, *format, module.as_deref(), out)
        }
        Command::Kaehler { file, free_search_budget, output } => {
            cmd_kaehler(file, *free_search_budget, output.as_deref(), out)
        }
        Command::Compare { file, degrees, free_search_budget } => {
            cmd_compare(file, &parse_degrees(degrees)?, *free_search_budget, out)
        }
        Command::Deform { file, order, class } => cmd_deform(file, *order, *class, out),
        Command::Extend { file, module, cocycle, output } => {
            cmd_extend(file, module, cocycle.as_deref(), output.as_deref(), out)
        }
        Command::Catalog { action } => cmd_catalog(action, out),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut String) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            out.push_str(text);
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<Presentation, CliError> {
    parse_presentation(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn load_module(path: &Path, lr: &LieRinehartPresentation) -> Result<ModuleFile, CliError> {
    parse_module(&read(path)?, lr).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn parse_degrees(s: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("invalid degree range `{s}` (expected `a..b` or `n`)"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn coord_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(COORD_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{COORD_CAP_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

/// A failed identity with the basis names the witness indices refer to.
fn describe(v: &Violation, bases: &[(&str, &[String])]) -> String {
    let mut s = v.to_string();
    for (label, names) in bases {
        let _ = write!(s, "\n  {label} basis: {}", names.join(" "));
    }
    s
}

fn checked(report: VerificationReport, bases: &[(&str, &[String])]) -> Result<(), CliError> {
    match report.violation {
        Some(v) => Err(CliError::Axiom(describe(&v, bases))),
        None => Ok(()),
    }
}

/// Validates a Lie algebra and supplies a 2-map when the file has none.
/// Returns the restricted algebra and whether the 2-map was derived.
fn restricted_lie(a: &AlgebraPresentation) -> Result<(AlgebraPresentation, bool), CliError> {
    let names = [("algebra", a.basis_names.as_slice())];
    checked(verify_lie(a)?, &names)?;
    if a.two_map.is_some() {
        checked(verify_restricted_lie(a)?, &names)?;
        return Ok((a.clone(), false));
    }
    match inner_square_candidates(a) {
        Ok(c) => {
            let r = two_map_from_basis(a, &c)?;
            checked(verify_restricted_lie(&r)?, &names)?;
            Ok((r, true))
        }
        Err(i) => Err(CliError::Axiom(format!(
            "(ad {0})^2 is not an inner derivation: no 2-map exists\n  algebra basis: {1}",
            a.basis_names[i],
            a.basis_names.join(" ")
        ))),
    }
}

fn poisson(a: &AlgebraPresentation) -> Result<(), CliError> {
    checked(verify_restricted_poisson(a)?, &[("algebra", &a.basis_names)])
}

fn lie_rinehart(lr: &LieRinehartPresentation) -> Result<(), CliError> {
    checked(
        verify_lie_rinehart(lr)?,
        &[("A", &lr.base.basis_names), ("L", &lr.lie.basis_names)],
    )
}

fn require_poisson(p: Presentation, what: &str) -> Result<AlgebraPresentation, CliError> {
    match p {
        Presentation::Poisson(a) => {
            poisson(&a)?;
            Ok(a)
        }
        other => Err(CliError::Usage(format!(
            "{what} needs a poisson presentation, got {}",
            other.kind().as_str()
        ))),
    }
}

fn cmd_verify(file: &Path, out: &mut String) -> Result<i32, CliError> {
    let p = load(file)?;
    let result = match &p {
        Presentation::Lie(a) => restricted_lie(a).map(|(r, derived)| {
            if derived {
                let _ = writeln!(out, "derived 2-map:");
                for (i, v) in r.two_map.iter().flatten().enumerate() {
                    let _ = writeln!(out, "  {}^[2] = {}", r.basis_names[i], render_elem(&r.basis_names, v));
                }
            }
        }),
        Presentation::Poisson(a) => poisson(a),
        Presentation::LieRinehart(lr) => lie_rinehart(lr),
    };
    match result {
        Ok(()) => {
            let _ = writeln!(out, "PASS {}", p.kind().as_str());
            Ok(0)
        }
        Err(CliError::Axiom(msg)) => {
            let _ = writeln!(out, "FAIL {msg}");
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Serialize)]
struct CohomologyJson {
    theory: String,
    degree: usize,
    dim_c: usize,
    dim_z: usize,
    dim_b: usize,
    dim_h: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    representatives: Option<Vec<RepresentativeJson>>,
}

#[derive(Debug, Serialize)]
struct RepresentativeJson {
    phi: Vec<PhiJson>,
    omega: Vec<OmegaJson>,
}

#[derive(Debug, Serialize)]
struct PhiJson {
    args: Vec<String>,
    value: String,
}

#[derive(Debug, Serialize)]
struct OmegaJson {
    x: String,
    z: Vec<String>,
    value: String,
}

fn representative_json(c: &RestrictedCochain, lie: &[String], module: &[String]) -> RepresentativeJson {
    let (phi, omega) = cochain_values(c);
    let names = |t: &[usize]| t.iter().map(|&i| lie[i].clone()).collect::<Vec<_>>();
    RepresentativeJson {
        phi: phi
            .iter()
            .map(|(t, v)| PhiJson {
                args: names(t),
                value: render_elem(module, v),
            })
            .collect(),
        omega: omega
            .iter()
            .map(|(x, z, v)| OmegaJson {
                x: lie[*x].clone(),
                z: names(z),
                value: render_elem(module, v),
            })
            .collect(),
    }
}

fn write_representative(out: &mut String, r: &RepresentativeJson) {
    if r.phi.is_empty() && r.omega.is_empty() {
        out.push_str("  0\n");
    }
    for p in &r.phi {
        let _ = writeln!(out, "  phi({}) = {}", p.args.join(", "), p.value);
    }
    for o in &r.omega {
        if o.z.is_empty() {
            let _ = writeln!(out, "  omega({}) = {}", o.x, o.value);
        } else {
            let _ = writeln!(out, "  omega({}; {}) = {}", o.x, o.z.join(", "), o.value);
        }
    }
}

/// Names of `GF(2)^n` for a module without a file: `m1 … mn`.
fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn cmd_cohomology(
    file: &Path,
    theory: Theory,
    degree: usize,
    reps: bool,
    format: OutputFormat,
    module: Option<&Path>,
    out: &mut String,
) -> Result<i32, CliError> {
    let p = load(file)?;
    if module.is_some() && !matches!(p, Presentation::LieRinehart(_)) {
        return Err(CliError::Usage("--module applies to lie-rinehart inputs only".into()));
    }
    let mismatch = |kind: &str| CliError::Usage(format!("{theory} cohomology is not defined for a {kind} input"));
    let (complex, lie_names, module_names) = match (&p, theory) {
        (Presentation::Lie(a) | Presentation::Poisson(a), Theory::CE) => {
            checked(verify_lie(a)?, &[("algebra", &a.basis_names)])?;
            (CochainComplex::for_algebra(a, theory)?, a.basis_names.clone(), a.basis_names.clone())
        }
        (Presentation::Lie(a), Theory::RES) => {
            let (r, _) = restricted_lie(a)?;
            (CochainComplex::for_algebra(&r, theory)?, a.basis_names.clone(), a.basis_names.clone())
        }
        (Presentation::Poisson(a), Theory::RES | Theory::PA) => {
            poisson(a)?;
            (CochainComplex::for_algebra(a, theory)?, a.basis_names.clone(), a.basis_names.clone())
        }
        (Presentation::LieRinehart(lr), Theory::LR | Theory::CE | Theory::RES) => {
            lie_rinehart(lr)?;
            let m = match module {
                Some(path) => load_module(path, lr)?,
                None => ModuleFile {
                    names: lr.base.basis_names.clone(),
                    module: ModulePresentation::base(lr),
                },
            };
            let names = [("L", lr.lie.basis_names.as_slice()), ("M", m.names.as_slice())];
            let complex = match theory {
                Theory::LR => {
                    checked(verify_lr_module(lr, &m.module)?, &names)?;
                    CochainComplex::lie_rinehart(lr, &m.module)?
                }
                Theory::RES => {
                    checked(verify_module(&lr.lie, &m.module)?, &names)?;
                    CochainComplex::restricted(&lr.lie, &m.module)?
                }
                _ => CochainComplex::ce(&lr.lie, &m.module)?,
            };
            (complex, lr.lie.basis_names.clone(), m.names)
        }
        (other, _) => return Err(mismatch(other.kind().as_str())),
    };
    let complex = match coord_cap()? {
        Some(cap) => complex.with_cap(cap),
        None => complex,
    };
    let h = complex.cohomology(degree)?;
    let representatives = reps.then(|| {
        h.representatives
            .iter()
            .map(|r| representative_json(r, &lie_names, &module_names))
            .collect::<Vec<_>>()
    });
    let report = CohomologyJson {
        theory: theory.to_string(),
        degree,
        dim_c: h.dim_c,
        dim_z: h.dim_z,
        dim_b: h.dim_b,
        dim_h: h.dim_h,
        representatives,
    };
    match format {
        OutputFormat::Json => {
            let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Compute(e.to_string()))?;
            let _ = writeln!(out, "{text}");
        }
        OutputFormat::Text => {
            let _ = writeln!(out, "theory {} degree {}", report.theory, degree);
            let _ = writeln!(out, "dim C = {}", report.dim_c);
            let _ = writeln!(out, "dim Z = {}", report.dim_z);
            let _ = writeln!(out, "dim B = {}", report.dim_b);
            let _ = writeln!(out, "dim H = {}", report.dim_h);
            for (i, r) in report.representatives.iter().flatten().enumerate() {
                let _ = writeln!(out, "representative {}:", i + 1);
                write_representative(out, r);
            }
        }
    }
    Ok(0)
}

/// Renames basis elements whose names cannot appear in a presentation file.
fn sanitize(p: &mut AlgebraPresentation, prefix: &str) -> Vec<(String, String)> {
    let bad = p
        .basis_names
        .iter()
        .any(|n| n.is_empty() || n == "0" || n.contains(|c: char| c.is_whitespace() || "+#=".contains(c)));
    if !bad {
        return Vec::new();
    }
    let fresh = default_names(prefix, p.dim);
    let pairs = fresh.iter().cloned().zip(p.basis_names.iter().cloned()).collect();
    p.basis_names = fresh;
    pairs
}

fn cmd_kaehler(file: &Path, budget: usize, output: Option<&Path>, out: &mut String) -> Result<i32, CliError> {
    let a = require_poisson(load(file)?, "kaehler")?;
    let mut k = kaehler_module(&a)?;
    let _ = writeln!(out, "dim A = {}", a.dim);
    let _ = writeln!(out, "dim Omega1 = {}", k.dim);
    let search = find_free_basis(&k, a.dim, budget);
    let _ = writeln!(out, "free basis search: {search}");
    let Some(basis) = search.basis() else {
        return Ok(3);
    };
    let _ = writeln!(out, "free basis:");
    for w in basis {
        let _ = writeln!(out, "  {}", k.format_elem(w));
    }
    k.free_basis = Some(basis.to_vec());
    let mut lr = induced_lie_rinehart(&a, &k)?;
    let renamed = sanitize(&mut lr.lie, "w");
    let mut text = String::from("# induced Lie–Rinehart algebra on Omega1\n");
    for (new, old) in &renamed {
        let _ = writeln!(text, "# {new} = {old}");
    }
    text.push_str(&render_presentation(&Presentation::LieRinehart(lr)));
    if output.is_none() {
        out.push('\n');
    }
    write_or_print(output, &text, out)?;
    Ok(0)
}

fn cmd_compare(file: &Path, degrees: &RangeInclusive<usize>, budget: usize, out: &mut String) -> Result<i32, CliError> {
    let a = require_poisson(load(file)?, "compare")?;
    let cmp = Comparison::new(&a, budget)?;
    let report = cmp.verify(degrees.clone())?;
    let mut ok = true;
    for d in &report.degrees {
        ok &= d.bijective;
        let _ = writeln!(
            out,
            "degree {}: dim C_PA = {}, dim C_LR = {}, bijective = {}, dim H_PA = {}, dim H_LR = {}",
            d.degree, d.dim_c_pa, d.dim_c_lr, d.bijective, d.dim_h_pa, d.dim_h_lr
        );
    }
    match &report.report.violation {
        Some(v) => {
            let _ = writeln!(out, "FAIL {} in degree {} on basis cochain {}", v.identity, v.witness[0], v.witness[1] + 1);
            Ok(1)
        }
        None if !ok => {
            let _ = writeln!(out, "FAIL the comparison map is not bijective");
            Ok(1)
        }
        None => {
            let _ = writeln!(out, "PASS chain map on degrees {}..{}", degrees.start(), degrees.end());
            Ok(0)
        }
    }
}

fn write_term(out: &mut String, order: usize, c: &RestrictedCochain, names: &[String]) {
    let r = representative_json(c, names, names);
    let mut parts: Vec<String> = r
        .phi
        .iter()
        .map(|p| format!("mu{order}({}) = {}", p.args.join(", "), p.value))
        .collect();
    parts.extend(r.omega.iter().map(|o| format!("omega{order}({}) = {}", o.x, o.value)));
    if parts.is_empty() {
        parts.push(format!("mu{order} = 0, omega{order} = 0"));
    }
    let _ = writeln!(out, "  order {order}: {}", parts.join("; "));
}

fn cmd_deform(file: &Path, order: usize, class: Option<usize>, out: &mut String) -> Result<i32, CliError> {
    if order == 0 {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    let a = require_poisson(load(file)?, "deform")?;
    let (h, defs) = infinitesimal_classes(&a)?;
    let _ = writeln!(out, "dim H2_PA = {}", h.dim_h);
    if defs.is_empty() {
        let _ = writeln!(out, "no nontrivial infinitesimal deformations");
        return Ok(0);
    }
    let selected: Vec<usize> = match class {
        Some(k) if (1..=defs.len()).contains(&k) => vec![k - 1],
        Some(k) => {
            return Err(CliError::Usage(format!("--class must lie in 1..={}, got {k}", defs.len())));
        }
        None => (0..defs.len()).collect(),
    };
    for k in selected {
        let mut d = defs[k].clone();
        let mut obstructed = None;
        while d.order() < order {
            match extend_deformation(&d)? {
                Extension::Extended(next) => d = next,
                Extension::Obstructed { class, .. } => {
                    obstructed = Some(class);
                    break;
                }
            }
        }
        match &obstructed {
            None => {
                let _ = writeln!(out, "class {}: extends to order {order}", k + 1);
            }
            Some(class) => {
                let where_ = match class {
                    Some(c) => format!("obstruction class {c} in H3_PA"),
                    None => "obstruction is not a cocycle".into(),
                };
                let _ = writeln!(out, "class {}: obstructed at order {} ({where_})", k + 1, d.order() + 1);
            }
        }
        for (i, t) in d.terms.iter().enumerate() {
            let c = d.complex.cochain(2, t.clone())?;
            write_term(out, i + 1, &c, &a.basis_names);
        }
    }
    Ok(0)
}

fn cmd_extend(
    file: &Path,
    module: &Path,
    cocycle: Option<&Path>,
    output: Option<&Path>,
    out: &mut String,
) -> Result<i32, CliError> {
    let lr = match load(file)? {
        Presentation::LieRinehart(lr) => lr,
        other => {
            return Err(CliError::Usage(format!(
                "extend needs a lie-rinehart presentation, got {}",
                other.kind().as_str()
            )))
        }
    };
    lie_rinehart(&lr)?;
    let m = load_module(module, &lr)?;
    checked(
        verify_lr_module(&lr, &m.module)?,
        &[("L", &lr.lie.basis_names), ("M", &m.names)],
    )?;
    let coords = match cocycle {
        Some(path) => {
            let complex = lr_complex(&lr, &m.module)?;
            parse_cocycle(&read(path)?, &complex, &lr.lie.basis_names, &m.names).map_err(|source| {
                CliError::Parse {
                    path: path.display().to_string(),
                    source,
                }
            })?
        }
        None => ExtensionData::semidirect(lr.clone(), m.module.clone())?.cocycle,
    };
    let e = ExtensionData::new(lr.clone(), m.module.clone(), coords)?;
    let mut ext = build_extension(&e)?;
    let clash = m.names.iter().any(|n| lr.lie.basis_names.contains(n));
    if !clash {
        ext.lie.basis_names.truncate(lr.lie.dim);
        ext.lie.basis_names.extend(m.names.iter().cloned());
    }
    lie_rinehart(&ext)?;
    write_or_print(output, &render_presentation(&Presentation::LieRinehart(ext)), out)?;
    Ok(0)
}

fn catalog_kind(k: CatalogKind) -> &'static str {
    match k {
        CatalogKind::Poisson => "poisson",
        CatalogKind::RestrictedLie => "restricted-lie",
        CatalogKind::NotAlternating => "not-alternating",
        CatalogKind::NotRestrictable => "not-restrictable",
    }
}

/// A catalog algebra as a presentation: Poisson when it has a product.
pub fn catalog_presentation(a: AlgebraPresentation) -> Presentation {
    if a.has_product() {
        Presentation::Poisson(a)
    } else {
        Presentation::Lie(a)
    }
}

fn cmd_catalog(action: &CatalogCommand, out: &mut String) -> Result<i32, CliError> {
    match action {
        CatalogCommand::List => {
            for e in catalog::entries() {
                let _ = writeln!(out, "{}\t{}", e.id, catalog_kind(e.kind));
            }
            for (id, _, _) in catalog::lie_rinehart_entries() {
                let _ = writeln!(out, "{id}\tlie-rinehart");
            }
            Ok(0)
        }
        CatalogCommand::Export { id, module } => {
            if let Some((_, lr, m)) = catalog::lie_rinehart_entries().into_iter().find(|(i, _, _)| i == id) {
                if *module {
                    let f = ModuleFile {
                        names: default_names("m", m.dim),
                        module: m,
                    };
                    out.push_str(&render_module(&f, &lr));
                } else {
                    out.push_str(&render_presentation(&Presentation::LieRinehart(lr)));
                }
                return Ok(0);
            }
            let entry = catalog::lookup(id).ok_or_else(|| CliError::Usage(format!("unknown catalog entry `{id}`")))?;
            if *module {
                return Err(CliError::Usage(format!("`{id}` has no accompanying module")));
            }
            out.push_str(&render_presentation(&catalog_presentation((entry.build)())));
            Ok(0)
        }
    }
}
