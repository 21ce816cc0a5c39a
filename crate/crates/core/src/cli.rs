//! Argument parsing and dispatch for the `sidki` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::report::{exit_code, ScenarioReport};
use crate::scenarios::{self, IdentityGroup, ScenarioError};
use crate::sidki::RelatorSchedule;
use crate::todd_coxeter::EnumerationLimits;

pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sidki", version, about = "Sidki doubles, coset enumeration and group ring trace audits")]
pub struct Cli {
    /// Coset limit for every enumeration.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    pub max_cosets: usize,
    /// Definition limit for every enumeration.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub max_definitions: usize,
    /// Report runtimeMs as 0 so that repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub omit_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Schedule {
    Full,
    Generators,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Echo the canonical form of a presentation.
    Parse { file: PathBuf },
    /// Coset enumeration over a subgroup (default: trivial).
    Enumerate {
        file: PathBuf,
        /// Comma-separated subgroup generator words.
        #[arg(long, default_value = "")]
        subgroup: String,
        /// Write the table dump here.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Build the double X(G).
    Double {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Schedule::Full)]
        schedule: Schedule,
    },
    /// Build V(G) and enumerate it.
    Rocco { file: PathBuf },
    /// Compute W(G) for a finite base and probe its torsion.
    AnalyzeW { file: PathBuf },
    /// Stem-extension audit for a perfect finite base.
    StemAudit { file: PathBuf },
    /// Sample the two commutator identities inside G×G×G.
    Identities {
        /// `f2`, `z3`, or `finite FILE`.
        #[arg(long, num_args = 1..=2, value_names = ["KIND", "FILE"], default_values = ["f2"])]
        group: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Audit the idempotent corpus and the trace properties.
    RingAudit {
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Run every builtin scenario and write the reports as a JSON array.
    Report {
        #[arg(long)]
        json: PathBuf,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String, ScenarioError> {
    std::fs::read_to_string(path)
        .map_err(|e| ScenarioError::Input(format!("{}: {e}", path.display())))
}

fn identity_group(args: &[String]) -> Result<IdentityGroup, ScenarioError> {
    match args {
        [k] if k == "f2" => Ok(IdentityGroup::F2),
        [k] if k == "z3" => Ok(IdentityGroup::Z3),
        [k, file] if k == "finite" => Ok(IdentityGroup::Finite(read(Path::new(file))?)),
        _ => Err(ScenarioError::Input(
            "--group expects `f2`, `z3` or `finite FILE`".to_string(),
        )),
    }
}

/// Run one command; returns the reports in order.
pub fn execute(cli: &Cli) -> Result<Vec<ScenarioReport>, ScenarioError> {
    let limits = EnumerationLimits::new(cli.max_cosets, cli.max_definitions)
        .map_err(|e| ScenarioError::Input(e.to_string()))?;
    let mut reports = match &cli.command {
        Command::Parse { file } => vec![scenarios::parse_scenario(&read(file)?)?],
        Command::Enumerate {
            file,
            subgroup,
            dump,
        } => {
            let (r, table) = scenarios::enumerate_scenario(&read(file)?, subgroup, limits)?;
            if let (Some(path), Some(t)) = (dump, table) {
                std::fs::write(path, t.dump())
                    .map_err(|e| ScenarioError::Input(format!("{}: {e}", path.display())))?;
            }
            vec![r]
        }
        Command::Double { file, schedule } => {
            let schedule = match schedule {
                Schedule::Full => RelatorSchedule::Full,
                Schedule::Generators => RelatorSchedule::GeneratorOnly,
            };
            vec![scenarios::double_scenario(&read(file)?, schedule, limits)?]
        }
        Command::Rocco { file } => vec![scenarios::rocco_scenario(&read(file)?, limits)?],
        Command::AnalyzeW { file } => vec![scenarios::analyze_w_scenario(&read(file)?, limits)?],
        Command::StemAudit { file } => vec![scenarios::stem_audit_scenario(&read(file)?, limits)?],
        Command::Identities {
            group,
            samples,
            seed,
        } => vec![scenarios::identities_scenario(
            &identity_group(group)?,
            *samples,
            *seed,
            limits,
        )?],
        Command::RingAudit { seed } => vec![scenarios::ring_audit_scenario(*seed)?],
        Command::Report { seed, .. } => scenarios::full_report(*seed, limits)
            .into_iter()
            .collect::<Result<_, _>>()?,
    };
    if cli.omit_timing {
        for r in &mut reports {
            r.runtime_ms = 0;
        }
    }
    Ok(reports)
}

/// Parse `args`, run, print one JSON report per line to `out`, and return
/// the exit code (0 pass, 1 fail, 2 usage, 3 inconclusive).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let reports = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Command::Report { json, .. } = &cli.command {
        let body = serde_json::to_string_pretty(&reports).expect("reports serialize");
        if let Err(e) = std::fs::write(json, body + "\n") {
            let _ = writeln!(err, "error: {}: {e}", json.display());
            return EXIT_USAGE;
        }
        for r in &reports {
            let _ = writeln!(out, "{:<12} {:<13} {}", r.scenario, r.overall(), r.input_digest);
        }
    } else {
        for r in &reports {
            let _ = writeln!(out, "{}", r.to_json());
        }
    }
    exit_code(&reports)
}
