//! Argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 ok, 1 invariant failure, 2 bad input, 3 out-of-scope request.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use equivect_core::catalog;
use equivect_core::checks::CheckConfig;
use equivect_core::clutching::{DEFAULT_SAMPLES, DEFAULT_TOLERANCE};
use equivect_core::context::Context;
use equivect_core::Error as CoreError;
use serde::Serialize;

use crate::render::render;
use crate::report::{self, wrap};
use crate::spec::{BadInput, GroupSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_OUT_OF_SCOPE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "equivect",
    version,
    about = "Classify equivariant complex vector bundles over RP2 and S2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Character tables of G, H and every stabilizer
    Table(Common),
    /// Stabilizers of the special points and chains on both sides
    Stabilizers(Common),
    /// Admissible triples up to --rank and the Hilbert basis
    Semigroup(Common),
    /// Bundle classes up to --rank with regime and parities
    Classify(Common),
    /// Clutching construction and determinant winding for each class
    ChernDemo {
        #[command(flatten)]
        common: Common,
        /// Write the full argument-lift traces as CSV
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
    /// Run the invariant suite; exit 1 on any failure
    Check(Common),
    /// The equivariant cell structure used for the action
    Model(Common),
    /// List built-in actions, or print one as a spec file
    Catalog {
        /// Print the spec of this built-in action
        #[arg(long, value_name = "NAME")]
        emit: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
struct Common {
    /// Spec file, `-` for stdin, or a built-in name such as Z3, D4, T, Q8xZ3
    #[arg(long)]
    spec: String,
    /// Index of χ in the ordering of Irr(H)
    #[arg(long, default_value_t = 0)]
    chi: usize,
    #[arg(long, default_value_t = 2)]
    rank: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the randomized checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Common {
    fn validate(&self) -> Result<()> {
        if self.rank == 0 {
            bail!(BadInput("--rank must be at least 1".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            bail!(BadInput("--tolerance must be a positive number".into()));
        }
        if self.samples < 16 {
            bail!(BadInput("--samples must be at least 16".into()));
        }
        Ok(())
    }

    fn load(&self, stdin: &mut dyn Read) -> Result<GroupSpec> {
        if self.spec == "-" {
            let mut text = String::new();
            stdin.read_to_string(&mut text).context("reading spec from stdin")?;
            return GroupSpec::parse(&text);
        }
        let path = Path::new(&self.spec);
        if path.is_file() {
            return GroupSpec::load(path);
        }
        if catalog::entry_by_name(&self.spec).is_some() {
            return GroupSpec::builtin(&self.spec);
        }
        bail!(BadInput(format!(
            "{:?} is neither a readable file nor a built-in action",
            self.spec
        )))
    }

    fn context(&self, stdin: &mut dyn Read) -> Result<(GroupSpec, Context)> {
        self.validate()?;
        let spec = self.load(stdin)?;
        let ctx = Context::new(spec.assignment()?, self.chi)?;
        Ok((spec, ctx))
    }
}

/// Exit code for an error, from the first classifiable cause in its chain.
pub fn exit_code(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if cause.is::<BadInput>() || cause.is::<std::io::Error>() || cause.is::<serde_json::Error>() {
            return EXIT_BAD_INPUT;
        }
        if let Some(c) = cause.downcast_ref::<CoreError>() {
            return match c {
                CoreError::OutOfScope(_) => EXIT_OUT_OF_SCOPE,
                CoreError::InvalidInput(_)
                | CoreError::InvalidPermutation(_)
                | CoreError::NotAHomomorphism(_)
                | CoreError::NonStandardImage(_)
                | CoreError::GroupTooLarge { .. } => EXIT_BAD_INPUT,
                _ => EXIT_INVARIANT,
            };
        }
    }
    EXIT_INVARIANT
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, value: &T) -> Result<()> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Table => render(&serde_json::to_value(value)?),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

#[derive(Serialize)]
struct CatalogRow {
    name: &'static str,
    order: usize,
    image_tag: String,
}

#[derive(Serialize)]
struct CatalogReport {
    schema: &'static str,
    command: &'static str,
    forms: &'static [&'static str],
    entries: Vec<CatalogRow>,
}

fn dispatch(cmd: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Table(c) => {
            let (s, ctx) = c.context(stdin)?;
            emit(out, c.format, &wrap("table", &s.name, &ctx, report::tables(&ctx)?))?;
        }
        Command::Stabilizers(c) => {
            let (s, ctx) = c.context(stdin)?;
            emit(
                out,
                c.format,
                &wrap("stabilizers", &s.name, &ctx, report::stabilizers(&ctx)),
            )?;
        }
        Command::Semigroup(c) => {
            let (s, ctx) = c.context(stdin)?;
            emit(
                out,
                c.format,
                &wrap("semigroup", &s.name, &ctx, report::semigroup(&ctx, c.rank)?),
            )?;
        }
        Command::Classify(c) => {
            let (s, ctx) = c.context(stdin)?;
            emit(
                out,
                c.format,
                &wrap("classify", &s.name, &ctx, report::classify(&ctx, c.rank)?),
            )?;
        }
        Command::ChernDemo { common: c, csv } => {
            let (s, ctx) = c.context(stdin)?;
            let (demo, traces) = report::chern_demo(&ctx, c.rank, c.samples, c.tolerance)?;
            if let Some(path) = csv {
                let f = std::fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                traces.write_csv(std::io::BufWriter::new(f))?;
            }
            let ok = demo.all_agree;
            emit(out, c.format, &wrap("chern-demo", &s.name, &ctx, demo))?;
            return Ok(if ok { EXIT_OK } else { EXIT_INVARIANT });
        }
        Command::Check(c) => {
            let (s, ctx) = c.context(stdin)?;
            let cfg = CheckConfig {
                max_rank: c.rank,
                samples: c.samples,
                tolerance: c.tolerance,
                seed: c.seed,
                ..CheckConfig::default()
            };
            let r = report::check(&ctx, &cfg);
            let ok = r.ok();
            emit(out, c.format, &wrap("check", &s.name, &ctx, r))?;
            return Ok(if ok { EXIT_OK } else { EXIT_INVARIANT });
        }
        Command::Model(c) => {
            let (s, ctx) = c.context(stdin)?;
            emit(out, c.format, &wrap("model", &s.name, &ctx, report::model(&ctx)))?;
        }
        Command::Catalog { emit: Some(name), .. } => {
            let spec = GroupSpec::builtin(&name)?;
            out.write_all((serde_json::to_string_pretty(&spec)? + "\n").as_bytes())?;
        }
        Command::Catalog { emit: None, format } => {
            let mut entries = Vec::new();
            for &name in crate::spec::example_specs().values() {
                let spec = GroupSpec::builtin(name)?;
                entries.push(CatalogRow {
                    name,
                    order: spec.assignment()?.group().order(),
                    image_tag: spec.image_tag,
                });
            }
            let r = CatalogReport {
                schema: report::REPORT_SCHEMA,
                command: "catalog",
                forms: catalog::NAMES,
                entries,
            };
            emit(out, format, &r)?;
        }
    }
    Ok(EXIT_OK)
}

/// Runs one invocation and returns its exit code; diagnostics go to `err`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, stdin, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}
