use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use fszlab_core::constructions::FamilySpec;
use fszlab_core::report::{self, Command, Degrees, Format, RunConfig, Source};
use fszlab_core::Result;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Fsz,
    FszPlus,
    Indicators,
    Zeta,
    Catalog,
    VerifyProperties,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fmt {
    Json,
    Csv,
    Text,
}

/// Exact FSZ / FSZ+ decisions for finite groups.
///
/// Exit status: 0 pass, 1 fail (non-FSZ detected, or a property failed),
/// 2 error.
#[derive(Debug, Parser)]
#[command(name = "fszlab", version)]
struct Cli {
    command: Cmd,

    /// Group family and parameters, e.g. `symmetric 6` or `wreath cyclic 3 3`.
    #[arg(long, num_args = 1.., value_name = "NAME PARAMS", conflicts_with = "file")]
    family: Option<Vec<String>>,

    /// Group file in `perm` or `pc` format.
    #[arg(long)]
    file: Option<PathBuf>,

    /// `auto` or a comma-separated list.
    #[arg(long, default_value = "auto")]
    degrees: String,

    #[arg(long)]
    plus: bool,

    #[arg(long)]
    fail_fast: bool,

    #[arg(long, default_value_t = 1)]
    workers: usize,

    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "text")]
    format: Fmt,

    /// Test every divisor of the exponent and skip the element-order certificate.
    #[arg(long)]
    no_reductions: bool,

    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Random instances per property suite.
    #[arg(long, default_value_t = 1000)]
    samples: usize,

    /// With `indicators`: list cyclic-restriction values for classes whose
    /// centralizer is not abelian.
    #[arg(long)]
    cyclic_restrictions: bool,
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let command = match cli.command {
        Cmd::Fsz => Command::Fsz,
        Cmd::FszPlus => Command::FszPlus,
        Cmd::Indicators => Command::Indicators,
        Cmd::Zeta => Command::Zeta,
        Cmd::Catalog => Command::Catalog,
        Cmd::VerifyProperties => Command::VerifyProperties,
    };
    let source = match (&cli.family, &cli.file) {
        (Some(tokens), _) => Some(Source::Family(FamilySpec::parse(tokens)?)),
        (None, Some(path)) => Some(Source::File(path.clone())),
        (None, None) => None,
    };
    let mut c = RunConfig::new(command, source);
    c.degrees = Degrees::parse(&cli.degrees)?;
    c.plus = cli.plus;
    c.fail_fast = cli.fail_fast;
    c.workers = cli.workers;
    c.output = cli.out.clone();
    c.format = match cli.format {
        Fmt::Json => Format::Json,
        Fmt::Csv => Format::Csv,
        Fmt::Text => Format::Text,
    };
    c.reductions = !cli.no_reductions;
    c.seed = cli.seed;
    c.samples = cli.samples;
    c.cyclic_restrictions = cli.cyclic_restrictions;
    Ok(c)
}

fn execute(cli: &Cli) -> Result<bool> {
    let c = config(cli)?;
    let doc = report::run(&c)?;
    match &c.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report::emit(&doc, c.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report::emit(&doc, c.format, &mut lock)?;
        }
    }
    Ok(doc.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fszlab: {e}");
            ExitCode::from(2)
        }
    }
}
