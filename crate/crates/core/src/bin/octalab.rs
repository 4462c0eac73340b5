use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use octalab::gewirtz::IntersectionTable;
use octalab::group::DEFAULT_ELEMENT_BUDGET;
use octalab::octagon::SuborbitComparison;
use octalab::report::Report;
use octalab::workbench::{Config, Instance, Suite, Workbench, WorkbenchError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InstanceArg {
    O2,
    Product,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate L3(4) and its extension by field and graph automorphisms
    Group,
    /// Build the near octagon on central involutions and verify it
    Octagon,
    /// Compare the suborbit diagram with the embedded fixture
    Suborbits,
    /// Quads, the spread and the quotient hexagon
    Quads,
    /// Run the family checker on the octagon and on the product instance
    Family,
    /// Automorphisms of the collinearity graph
    Aut,
    /// Gewirtz graph, special 8-sets and the subconstituent surrogate
    Gewirtz,
    /// Every suite above
    All,
}

#[derive(Debug, Parser)]
#[command(name = "octalab", version, about = "Checks on the near octagon of central involutions of L3(4):2^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Directory for cached group enumerations
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Maximum number of group elements to enumerate
    #[arg(long, default_value_t = DEFAULT_ELEMENT_BUDGET, value_parser = positive, global = true)]
    budget: usize,
    /// Seed for relabelling checks
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Restrict `family` to one instance
    #[arg(long, value_enum, global = true)]
    instance: Option<InstanceArg>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Serialize)]
struct Output<'a> {
    passed: bool,
    reports: &'a [Report],
    #[serde(skip_serializing_if = "Option::is_none")]
    suborbits: Option<&'a SuborbitComparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    intersection_table: Option<&'a IntersectionTable>,
}

fn suite(cli: &Cli) -> Suite {
    match cli.command {
        Command::Group => Suite::Group,
        Command::Octagon => Suite::Octagon,
        Command::Suborbits => Suite::Suborbits,
        Command::Quads => Suite::Quads,
        Command::Family => Suite::Family(cli.instance.map(|i| match i {
            InstanceArg::O2 => Instance::Octagon,
            InstanceArg::Product => Instance::Product,
        })),
        Command::Aut => Suite::Aut,
        Command::Gewirtz => Suite::Gewirtz,
        Command::All => Suite::All,
    }
}

fn run(cli: &Cli, w: &Workbench) -> Result<bool, WorkbenchError> {
    let mut comparison = None;
    let mut table = None;
    let reports = match cli.command {
        Command::Suborbits => {
            let c = w.suborbits()?;
            let r = vec![c.report.clone()];
            comparison = Some(c);
            r
        }
        Command::Gewirtz => {
            let (r, t) = w.gewirtz_report()?;
            table = t;
            vec![r]
        }
        _ => w.run(suite(cli))?,
    };
    let passed = reports.iter().all(Report::passed);
    let mut out = String::new();
    match cli.format {
        Format::Dot => {
            let c = comparison.as_ref().expect("dot is only accepted for suborbits");
            out.push_str(&c.diagram.to_dot());
        }
        Format::Json => {
            let doc = Output { passed, reports: &reports, suborbits: comparison.as_ref(), intersection_table: table.as_ref() };
            out.push_str(&serde_json::to_string_pretty(&doc).expect("serializable"));
            out.push('\n');
        }
        Format::Text => {
            for r in &reports {
                out.push_str(&r.to_text());
            }
            if let Some(c) = &comparison {
                for m in &c.mismatches {
                    let _ = writeln!(out, "diff  {}: expected {}, observed {}", m.cell, m.expected, m.observed);
                }
            }
            if let Some(t) = &table {
                out.push_str(&t.to_text());
            }
            let total: usize = reports.iter().map(|r| r.claims.len()).sum();
            let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
            let _ = writeln!(out, "total: {total} claims, {failed} failed");
        }
    }
    // A closed pipe is not an error.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.format == Format::Dot && !matches!(cli.command, Command::Suborbits) {
        eprintln!("error: --format dot is only available for `suborbits`");
        return ExitCode::from(2);
    }
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let config = Config { cache_dir: cli.cache_dir.clone(), budget: cli.budget, seed: cli.seed };
    let w = Workbench::new(config);
    let result = run(&cli, &w);
    for warning in w.warnings() {
        eprintln!("warning: {warning}");
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
