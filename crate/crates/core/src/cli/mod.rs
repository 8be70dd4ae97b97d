//! Command-line front end. This is the only module that touches files and
//! standard streams.

pub mod file;
pub mod render;

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use thiserror::Error;

use crate::builder::{affine_gamma_search, glue, BuilderError, GlueRecipe, GlueResult};
use crate::fibers::{build_nabla, enumerate_fiber};
use crate::gluing::{enumerate_gluings, GluingCertificate, GluingError, DEFAULT_SPLIT_CAP};
use crate::presentation::{BettiAnalysis, Presentation};
use crate::semigroup::{AbelianGroup, Semigroup, SemigroupError, SplitSpec};

use file::{ParseError, SemigroupFile};
use render::{many_dot, nabla_dot, parse_degree, Labels};

#[derive(Debug, Parser)]
#[command(
    name = "semiglue",
    version,
    about = "Fibers, Betti elements, presentations and gluings of semigroups"
)]
pub struct Cli {
    /// Output format for commands that can draw complexes.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: generators, Betti degrees, presentation, indispensables.
    Analyze {
        file: PathBuf,
        /// Randomize representative choice in the minimal presentation.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Betti degrees with fiber sizes and component counts.
    Betti { file: PathBuf },
    /// A minimal presentation.
    Present {
        file: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The indispensable binomials.
    Indispensable { file: PathBuf },
    /// Tests one split; exits 1 when it is not a gluing.
    IsGlued {
        file: PathBuf,
        /// A split such as `1-4|5-8`, or the name of a split in the file.
        #[arg(long)]
        split: Option<String>,
    },
    /// Lists every split that is a gluing; exits 1 when there is none.
    Gluings { file: PathBuf },
    /// Glues two semigroups along `x^gamma_x - y^gamma_y`.
    Glue {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        gamma_x: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        gamma_y: Vec<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Searches for glue vectors giving a torsion-free glued semigroup.
    GlueAffine {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether the semigroup is a complete intersection.
    IsCi { file: PathBuf },
    /// The gcd-graph of one fiber.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        degree: String,
        /// Label variables x/y by this split; defaults to the file's first split.
        #[arg(long)]
        split: Option<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Invalid { path: PathBuf, source: SemigroupError },
    #[error("{path}: the generators do not span a reduced semigroup")]
    NotReduced { path: PathBuf },
    #[error("bad split: {0}")]
    Split(String),
    #[error("bad degree: {0}")]
    Degree(String),
    #[error("{0}")]
    Inputs(String),
    #[error("no affine glue vector among the first {0} candidates")]
    Exhausted(u64),
    #[error("{0} is not in the semigroup")]
    NotInSemigroup(String),
    #[error("{0}")]
    Failed(String),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Invalid { .. } | CliError::Degree(_) => 2,
            CliError::NotReduced { .. } => 3,
            CliError::Split(_) => 4,
            CliError::Inputs(_) => 5,
            CliError::Exhausted(_) => 6,
            CliError::NotInSemigroup(_) => 7,
            CliError::Failed(_) | CliError::Output(_) => 8,
        }
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

fn load(path: &Path) -> Result<(SemigroupFile, Semigroup), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file = SemigroupFile::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    let s = file.to_semigroup().map_err(|e| match e {
        SemigroupError::NotReduced | SemigroupError::ZeroGenerator(_) => CliError::NotReduced {
            path: path.to_path_buf(),
        },
        source => CliError::Invalid {
            path: path.to_path_buf(),
            source,
        },
    })?;
    Ok((file, s))
}

/// Loads an input of `glue`/`glue-affine`, where an unusable semigroup is
/// an input error.
fn load_input(path: &Path) -> Result<Semigroup, CliError> {
    match load(path) {
        Ok((_, s)) => Ok(s),
        Err(CliError::NotReduced { path }) => {
            Err(CliError::Inputs(format!("{}: not a reduced semigroup", path.display())))
        }
        Err(e) => Err(e),
    }
}

fn resolve_split(file: &SemigroupFile, len: usize, arg: Option<&str>) -> Result<SplitSpec, CliError> {
    match arg {
        Some(text) => match file.split(text) {
            Some(split) => Ok(split.clone()),
            None => SplitSpec::parse(text, len).map_err(|e| CliError::Split(e.to_string())),
        },
        None => file
            .splits
            .first()
            .map(|(_, s)| s.clone())
            .ok_or_else(|| CliError::Split("no --split given and the file names none".into())),
    }
}

pub fn group_name(g: &AbelianGroup) -> String {
    let mut parts: Vec<String> = g.torsion_orders().iter().map(|d| format!("Z/{d}")).collect();
    match g.free_rank() {
        0 => {}
        1 => parts.push("Z".into()),
        k => parts.push(format!("Z^{k}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" x ")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join_bigints(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn write_presentation(out: &mut dyn Write, p: &Presentation, labels: &Labels, indent: &str) -> io::Result<()> {
    for b in &p.binomials {
        writeln!(out, "{indent}{}  {}", b.degree, labels.binomial(b))?;
    }
    Ok(())
}

fn write_betti(out: &mut dyn Write, a: &BettiAnalysis) -> io::Result<()> {
    writeln!(out, "Betti degrees: {}", a.complexes.len())?;
    for c in &a.complexes {
        writeln!(
            out,
            "  {}  fiber {}  components {}",
            c.fiber.degree,
            c.fiber.len(),
            c.component_count()
        )?;
    }
    Ok(())
}

fn write_certificate(out: &mut dyn Write, cert: &GluingCertificate) -> io::Result<()> {
    let labels = Labels::split(&cert.split);
    writeln!(out, "GLUED, d={}", cert.glued_degree)?;
    writeln!(out, "split: {}", cert.split)?;
    writeln!(out, "glued binomial: {}", labels.binomial(&cert.glued_binomial))?;
    writeln!(out, "left presentation: {}", cert.left_presentation.len())?;
    write_presentation(out, &cert.left_presentation, &labels, "  ")?;
    writeln!(out, "right presentation: {}", cert.right_presentation.len())?;
    write_presentation(out, &cert.right_presentation, &labels, "  ")?;
    Ok(())
}

fn glued_file(result: &GlueResult, header: Vec<String>) -> SemigroupFile {
    let mut f = SemigroupFile::from_semigroup(&result.semigroup);
    f.splits.push(("glue".into(), result.split.clone()));
    f.trailer = header;
    f.trailer.extend([
        format!("invariant factors: {}", join_bigints(&result.invariant_factors)),
        format!("affine: {}", yes_no(result.affine)),
        format!("minimal: {}", yes_no(result.minimal)),
        format!("glued: {}", yes_no(result.glued)),
        format!("complete intersection: {}", yes_no(result.complete_intersection)),
        format!("glued degree: {}", result.glued_degree),
    ]);
    f
}

fn emit_file(out: &mut dyn Write, file: &SemigroupFile, path: Option<&Path>) -> Result<(), CliError> {
    let text = file.to_string();
    match path {
        Some(p) => {
            std::fs::write(p, &text).map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            for line in &file.trailer {
                writeln!(out, "{line}")?;
            }
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn builder_error(e: BuilderError) -> CliError {
    match e {
        BuilderError::Exhausted { budget } => CliError::Exhausted(budget),
        e @ (BuilderError::NotMinimal { .. }
        | BuilderError::NotAffine { .. }
        | BuilderError::ZeroGamma { .. }
        | BuilderError::GammaLength { .. }) => CliError::Inputs(e.to_string()),
        e => failed(e),
    }
}

/// Runs one command, writing its report to `out`; returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze { file, seed } => {
            let (_, s) = load(&file)?;
            let labels = Labels::plain(s.len());
            writeln!(out, "generators: {}", s.len())?;
            for (i, g) in s.generators().iter().enumerate() {
                writeln!(out, "  x{} = {}", i + 1, g)?;
            }
            writeln!(out, "group: {}", group_name(s.group()))?;
            writeln!(out, "reduced: yes, grading ({})", join_bigints(s.grading()))?;
            let redundant = s.redundant_generators();
            if redundant.is_empty() {
                writeln!(out, "minimally generated: yes")?;
            } else {
                let names: Vec<String> = redundant.iter().map(|i| format!("x{}", i + 1)).collect();
                writeln!(out, "minimally generated: no, redundant {}", names.join(", "))?;
            }
            let a = BettiAnalysis::new(&s).map_err(failed)?;
            write_betti(out, &a)?;
            let p = a.minimal_presentation(&s, seed).map_err(failed)?;
            writeln!(out, "minimal presentation: {}", p.len())?;
            write_presentation(out, &p, &labels, "  ")?;
            let ind = a.indispensable_binomials(&s).map_err(failed)?;
            writeln!(out, "indispensable binomials: {}", ind.len())?;
            for b in &ind {
                writeln!(out, "  {}  {}", b.degree, labels.binomial(b))?;
            }
            writeln!(out, "uniquely generated: {}", yes_no(a.is_uniquely_generated()))?;
            writeln!(out, "complete intersection: {}", yes_no(a.is_complete_intersection()))?;
            Ok(0)
        }
        Command::Betti { file } => {
            let (_, s) = load(&file)?;
            let a = BettiAnalysis::new(&s).map_err(failed)?;
            match cli.format {
                Format::Text => write_betti(out, &a)?,
                Format::Dot => out.write_all(many_dot(&a.complexes, &Labels::plain(s.len())).as_bytes())?,
            }
            Ok(0)
        }
        Command::Present { file, seed } => {
            let (_, s) = load(&file)?;
            let p = crate::presentation::minimal_presentation(&s, seed).map_err(failed)?;
            writeln!(out, "minimal presentation: {}", p.len())?;
            write_presentation(out, &p, &Labels::plain(s.len()), "  ")?;
            Ok(0)
        }
        Command::Indispensable { file } => {
            let (_, s) = load(&file)?;
            let ind = crate::presentation::indispensable_binomials(&s).map_err(failed)?;
            let labels = Labels::plain(s.len());
            writeln!(out, "indispensable binomials: {}", ind.len())?;
            for b in &ind {
                writeln!(out, "  {}  {}", b.degree, labels.binomial(b))?;
            }
            Ok(0)
        }
        Command::IsGlued { file, split } => {
            let (f, s) = load(&file)?;
            let split = resolve_split(&f, s.len(), split.as_deref())?;
            if split.len() != s.len() {
                return Err(CliError::Split(format!(
                    "split {split} does not cover {} generators",
                    s.len()
                )));
            }
            match crate::gluing::check_gluing(&s, &split) {
                Ok(cert) => {
                    write_certificate(out, &cert)?;
                    Ok(0)
                }
                Err(GluingError::NotGlued(reason)) => {
                    writeln!(out, "NOT GLUED: {reason}")?;
                    Ok(1)
                }
                Err(e @ GluingError::NotMinimal(_)) => Err(CliError::Inputs(e.to_string())),
                Err(e) => Err(failed(e)),
            }
        }
        Command::Gluings { file } => {
            let (_, s) = load(&file)?;
            let found = match enumerate_gluings(&s, DEFAULT_SPLIT_CAP) {
                Ok(found) => found,
                Err(e @ GluingError::NotMinimal(_)) => return Err(CliError::Inputs(e.to_string())),
                Err(e) => return Err(failed(e)),
            };
            if found.is_empty() {
                writeln!(out, "NO GLUING SPLITS")?;
                return Ok(1);
            }
            writeln!(out, "gluing splits: {}", found.len())?;
            for (split, cert) in &found {
                let labels = Labels::split(split);
                writeln!(
                    out,
                    "  {}  d={}  {}",
                    split,
                    cert.glued_degree,
                    labels.binomial(&cert.glued_binomial)
                )?;
            }
            Ok(0)
        }
        Command::Glue {
            first,
            second,
            gamma_x,
            gamma_y,
            output,
        } => {
            let t1 = load_input(&first)?;
            let t2 = load_input(&second)?;
            let recipe = GlueRecipe::new(t1, t2, gamma_x, gamma_y).map_err(builder_error)?;
            let result = glue(&recipe).map_err(builder_error)?;
            let header = vec![format!(
                "glue condition (sum gamma_x)(sum gamma_y) > 1: {}",
                yes_no(recipe.satisfies_glue_condition())
            )];
            emit_file(out, &glued_file(&result, header), output.as_deref())?;
            Ok(0)
        }
        Command::GlueAffine {
            first,
            second,
            budget,
            output,
        } => {
            let t1 = load_input(&first)?;
            let t2 = load_input(&second)?;
            let hit = affine_gamma_search(&t1, &t2, budget).map_err(builder_error)?;
            let fmt = |v: &[u64]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            let header = vec![
                format!("gamma_x: {}", fmt(&hit.recipe.gamma_x)),
                format!("gamma_y: {}", fmt(&hit.recipe.gamma_y)),
                format!("candidates examined: {}", hit.candidates),
            ];
            emit_file(out, &glued_file(&hit.result, header), output.as_deref())?;
            Ok(0)
        }
        Command::IsCi { file } => {
            let (_, s) = load(&file)?;
            let a = BettiAnalysis::new(&s).map_err(failed)?;
            writeln!(
                out,
                "complete intersection: {} ({} minimal binomials, kernel rank {})",
                yes_no(a.is_complete_intersection()),
                a.presentation_size(),
                s.kernel().rank()
            )?;
            Ok(0)
        }
        Command::ExportDot { file, degree, split } => {
            let (f, s) = load(&file)?;
            let m = parse_degree(s.group(), &degree).map_err(CliError::Degree)?;
            let fiber = enumerate_fiber(&s, &m);
            if fiber.is_empty() {
                return Err(CliError::NotInSemigroup(m.to_string()));
            }
            let labels = match (split, f.splits.first()) {
                (Some(text), _) => Labels::split(&resolve_split(&f, s.len(), Some(&text))?),
                (None, Some((_, named))) => Labels::split(named),
                (None, None) => Labels::plain(s.len()),
            };
            let nabla = build_nabla(fiber);
            match cli.format {
                Format::Dot => out.write_all(nabla_dot(&nabla, &labels, "fiber").as_bytes())?,
                Format::Text => {
                    writeln!(
                        out,
                        "C_{}: {} members, {} components",
                        m,
                        nabla.fiber.len(),
                        nabla.component_count()
                    )?;
                    for (c, comp) in nabla.components.iter().enumerate() {
                        let names: Vec<String> =
                            comp.iter().map(|&i| labels.monomial(&nabla.fiber.members[i])).collect();
                        writeln!(out, "  component {}: {}", c + 1, names.join(", "))?;
                    }
                }
            }
            Ok(0)
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
