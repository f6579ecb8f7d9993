//! Command-line front end. Each subcommand returns its standard-output payload
//! so the commands can be exercised without spawning a process.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::census::{build_catalog, enumerate_skeletal, write_catalog, CensusOptions, DEFAULT_MAX_ORDER};
use crate::construct::Construction;
use crate::error::{Error, Result};
use crate::invariants::{dominating_number, dual_dominating_number};
use crate::morphism::{find_morphism, SolverConfig};
use crate::relation::Relation;
use crate::skeleton::{skeleton, skeleton_randomized};

/// Exit status for a domain failure such as a malformed relation file.
pub const EXIT_DOMAIN: i32 = 1;
/// Exit status for a command line that does not parse.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tukey", version, about = "Finite binary relations and Tukey morphisms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the dominating number and the dual dominating number.
    Delta { file: PathBuf },
    /// Print the skeleton of a relation.
    Skeleton {
        file: PathBuf,
        /// Print one line per deletion round before the result.
        #[arg(long)]
        trace: bool,
        /// Also run randomized one-point deletion orders and report their outcomes.
        #[arg(long)]
        randomize: bool,
        #[arg(long, requires = "randomize", default_value_t = 0)]
        seed: u64,
        #[arg(long, requires = "randomize", default_value_t = 100)]
        trials: usize,
    },
    /// Decide whether the first relation maps to the second.
    Morphism {
        source: PathBuf,
        target: PathBuf,
        /// Print a witness after `yes`.
        #[arg(long)]
        witness: bool,
        /// Skip the dominating-number and ladder shortcuts.
        #[arg(long)]
        no_shortcuts: bool,
    },
    /// Classify all relations up to an order and write the catalog.
    Classify {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Accept orders above the default limit.
        #[arg(long)]
        allow_large: bool,
    },
    /// Print one of the standard constructions.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Family {
    /// The n-ladder.
    Ladder { n: usize },
    /// The self-dual block relation with both dominating numbers n.
    Cn { n: usize },
    /// The block relation with dominating numbers n and k.
    Cnk { n: usize, k: usize },
}

impl From<Family> for Construction {
    fn from(f: Family) -> Self {
        match f {
            Family::Ladder { n } => Construction::Ladder(n),
            Family::Cn { n } => Construction::Cn(n),
            Family::Cnk { n, k } => Construction::Cnk(n, k),
        }
    }
}

pub fn read_relation(path: &Path) -> Result<Relation> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Relation::parse(&text)
}

pub fn cmd_delta(file: &Path) -> Result<String> {
    let r = read_relation(file)?;
    Ok(format!(
        "delta={} delta_dual={}\n",
        dominating_number(&r),
        dual_dominating_number(&r)
    ))
}

pub fn cmd_skeleton(file: &Path, trace: bool, randomize: Option<(u64, usize)>) -> Result<String> {
    let r = read_relation(file)?;
    let (s, t) = skeleton(&r);
    let mut out = String::new();
    if trace && !t.rounds.is_empty() {
        let _ = writeln!(out, "{t}");
    }
    let _ = writeln!(out, "{s}");
    if let Some((seed, trials)) = randomize {
        let _ = writeln!(out, "{}", skeleton_randomized(&r, seed, trials)?);
    }
    Ok(out)
}

pub fn cmd_morphism(source: &Path, target: &Path, witness: bool, no_shortcuts: bool) -> Result<String> {
    let a = read_relation(source)?;
    let b = read_relation(target)?;
    let cfg = if no_shortcuts { SolverConfig::no_shortcuts() } else { SolverConfig::default() };
    Ok(match find_morphism(&a, &b, &cfg)? {
        Some(w) if witness => format!("yes\n{w}\n"),
        Some(_) => "yes\n".to_string(),
        None => "no\n".to_string(),
    })
}

pub fn cmd_classify(opts: &CensusOptions, out: &Path) -> Result<String> {
    let forms = enumerate_skeletal(opts)?;
    let cat = build_catalog(forms, opts.jobs)?;
    write_catalog(&cat, out)?;
    Ok(format!(
        "skeletons={} classes={} covers={}\n",
        cat.skeletons.len(),
        cat.classes.len(),
        cat.hasse_edges.len()
    ))
}

pub fn cmd_construct(c: Construction) -> Result<String> {
    Ok(format!("{}\n", c.build()?))
}

pub fn execute(command: &Command) -> Result<String> {
    match command {
        Command::Delta { file } => cmd_delta(file),
        Command::Skeleton {
            file,
            trace,
            randomize,
            seed,
            trials,
        } => cmd_skeleton(file, *trace, randomize.then_some((*seed, *trials))),
        Command::Morphism {
            source,
            target,
            witness,
            no_shortcuts,
        } => cmd_morphism(source, target, *witness, *no_shortcuts),
        Command::Classify {
            max_order,
            out,
            jobs,
            allow_large,
        } => {
            if *allow_large && *max_order > DEFAULT_MAX_ORDER {
                eprintln!("warning: order {max_order} census is far beyond the tested range and may not finish");
            }
            let opts = CensusOptions {
                max_order: *max_order,
                jobs: *jobs,
                allow_large: *allow_large,
            };
            cmd_classify(&opts, out)
        }
        Command::Construct { family } => cmd_construct((*family).into()),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_DOMAIN
        }
    }
}
