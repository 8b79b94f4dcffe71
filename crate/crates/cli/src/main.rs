mod input;
mod output;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use augq::abgroup::LambdaProfile;
use augq::constructors::{enumerate_subgroups, parse_group_spec, table_of_marks, Family};
use augq::stabilize::{analyze, quotient_sequence, StabilizeError};
use augq::{AugmentedRing, FinAbGroup};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use input::{construct_error, parse_corpus, resolve, ring_of, CorpusEntry, Source};
use output::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "augq", version, about = "Consecutive quotients I^n/I^(n+1) of augmented rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the augmented-ring axioms.
    Validate(RingArgs),
    /// List Q_1 … Q_N.
    Qn(RingArgs),
    /// Detect a stable tail and report bounds and λ diagnostics.
    Stabilize(RingArgs),
    /// Reconstruct a group from a λ-profile given as JSON or a path to JSON.
    Classify {
        profile: String,
        #[command(flatten)]
        common: Common,
    },
    /// Table of marks of a group.
    Marks {
        #[arg(long, alias = "ring")]
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// Stabilization summary for every ring listed in a corpus file.
    Corpus {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct RingArgs {
    /// Ring JSON path, Cayley-table JSON path or group spec.
    #[arg(long, conflicts_with = "group", required_unless_present = "group")]
    ring: Option<String>,
    #[arg(long)]
    group: Option<String>,
    #[arg(long, default_value = "group-ring", value_parser = parse_family)]
    family: Family,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    max_n: u64,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(2..))]
    window: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest group whose subgroups are enumerated.
    #[arg(long, env = "AUGQ_MAX_ORDER", default_value_t = augq::constructors::DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Table,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: augq::constructors::ConstructError| e.to_string())
}

impl Common {
    fn format(&self) -> Format {
        match self.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Table => Format::Table,
        }
    }

    fn max_n(&self) -> usize {
        self.max_n as usize
    }

    fn window(&self) -> Result<usize, CliError> {
        if self.window > self.max_n {
            return Err(CliError::Usage(format!("--window {} exceeds --max-n {}", self.window, self.max_n)));
        }
        Ok(self.window as usize)
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|e| CliError::Failure(format!("{}: {e}", path.display()))),
            None => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(text.as_bytes()).map_err(|e| CliError::Failure(e.to_string()))
            }
        }
    }
}

impl RingArgs {
    fn ring(&self) -> Result<AugmentedRing, CliError> {
        let text = self.ring.as_deref().or(self.group.as_deref()).expect("clap requires one of them");
        ring_of(resolve(text)?, self.family, self.common.max_order)
    }
}

/// Validation failures abort commands that need a valid ring.
fn require_valid(ring: &AugmentedRing, seed: u64) -> Result<(), CliError> {
    let report = ring.validate_with_seed(seed);
    if report.is_valid() {
        return Ok(());
    }
    let failed: Vec<String> = report
        .failures()
        .map(|c| match &c.detail {
            Some(d) => format!("{}: {d}", c.kind),
            None => c.kind.to_string(),
        })
        .collect();
    Err(CliError::Failure(format!("{} is not an augmented ring ({})", ring.name(), failed.join("; "))))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Validate(args) => {
            let ring = args.ring()?;
            let report = ring.validate_with_seed(args.common.seed);
            args.common.emit(&output::validation(&ring, &report, args.common.format()))?;
            Ok(if report.is_valid() { 0 } else { 1 })
        }
        Command::Qn(args) => {
            let ring = args.ring()?;
            require_valid(&ring, args.common.seed)?;
            let qs = quotient_sequence(&ring, args.common.max_n()).map_err(|e| CliError::Failure(e.to_string()))?;
            args.common.emit(&output::quotients(&ring, &qs, args.common.format()))?;
            Ok(0)
        }
        Command::Stabilize(args) => {
            let window = args.common.window()?;
            let ring = args.ring()?;
            require_valid(&ring, args.common.seed)?;
            let report = analyze(&ring, args.common.max_n(), window).map_err(stabilize_error)?;
            args.common.emit(&output::report(&report, args.common.format()))?;
            Ok(if report.stabilized() { 0 } else { 3 })
        }
        Command::Classify { profile, common } => {
            let text = if Path::new(&profile).is_file() {
                fs::read_to_string(&profile).map_err(|e| CliError::Usage(format!("{profile}: {e}")))?
            } else {
                profile
            };
            let profile = LambdaProfile::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))?;
            let group = FinAbGroup::from_lambda_profile(&profile).map_err(|e| CliError::Failure(e.to_string()))?;
            common.emit(&output::group(&group, common.format()))?;
            Ok(0)
        }
        Command::Marks { group, common } => {
            let spec = match resolve(&group)? {
                Source::Group(g) => g,
                Source::Ring(_) => return Err(CliError::Usage(format!("{group}: expected a group, got a ring"))),
            };
            let g = spec.cayley();
            let classes = enumerate_subgroups(&g, common.max_order).map_err(construct_error)?;
            let marks = table_of_marks(&g, &classes);
            common.emit(&output::marks(&marks, common.format()))?;
            Ok(0)
        }
        Command::Corpus { file, common } => {
            let window = common.window()?;
            let text = fs::read_to_string(&file).map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
            let entries = parse_corpus(&text)?;
            let base = file.parent().map(Path::to_path_buf).unwrap_or_default();
            let rows: Vec<output::CorpusRow> =
                entries.par_iter().map(|(line, entry)| corpus_row(*line, entry, &base, &common, window)).collect();
            common.emit(&output::corpus(&rows, common.format()))?;
            Ok(if rows.iter().all(|r| r.ok()) { 0 } else { 1 })
        }
    }
}

fn stabilize_error(e: StabilizeError) -> CliError {
    match e {
        StabilizeError::InvalidMaxN | StabilizeError::InvalidWindow(_) => CliError::Usage(e.to_string()),
        other => CliError::Failure(other.to_string()),
    }
}

fn corpus_row(line: usize, entry: &CorpusEntry, base: &Path, common: &Common, window: usize) -> output::CorpusRow {
    let (id, ring) = match entry {
        CorpusEntry::Family(family, spec) => {
            let id = format!("{family}:{spec}");
            let ring = parse_group_spec(spec)
                .map_err(|e| e.to_string())
                .and_then(|g| augq::build_ring(*family, &g, common.max_order).map_err(|e| e.to_string()));
            (id, ring)
        }
        CorpusEntry::RingFile(path) => {
            let full = base.join(path);
            let ring = match resolve(&full.to_string_lossy()) {
                Ok(Source::Ring(r)) => Ok(r),
                Ok(Source::Group(_)) => Err(format!("{path}: not a ring JSON file")),
                Err(e) => Err(e.to_string()),
            };
            let id = ring.as_ref().map(|r| r.name().to_string()).unwrap_or_else(|_| format!("ring:{path}"));
            (id, ring)
        }
    };
    let result = ring.and_then(|ring| {
        require_valid(&ring, common.seed).map_err(|e| e.to_string())?;
        analyze(&ring, common.max_n(), window).map_err(|e| e.to_string())
    });
    output::CorpusRow { line, id, result }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
