use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

mod cache;
mod commands;

use cache::Cache;

#[derive(Parser)]
#[command(name = "linksym", version, about = "Symmetry obstructions for links")]
struct Cli {
    /// Directory for cached subgroup enumerations; caching is off without it.
    #[arg(long, global = true, env = "LINKSYM_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order of the Whitten group on n components.
    GammaOrder {
        #[arg(long)]
        n: usize,
    },
    /// Subgroups of the Whitten group, optionally up to conjugacy.
    GammaSubgroups {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        up_to_conjugacy: bool,
    },
    /// The five open two-component cases and their isomorphism types.
    Gamma2Missing,
    /// Stabilizer of a linking matrix and its permutation image.
    LinkStabilizer {
        #[arg(long)]
        input: PathBuf,
    },
    /// Invariant vertex or edge of a group action on a labeled tree.
    TreeInvariant {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = LabelGroup::Alternating)]
        group: LabelGroup,
        /// Work on the subtree spanned by the labeled vertices.
        #[arg(long)]
        span: bool,
        /// Reject vertices carrying more than one label.
        #[arg(long)]
        single_labels: bool,
    },
    /// Whether a labeled tree is one vertex or a spider with equal legs.
    TreeStructure {
        #[arg(long)]
        input: PathBuf,
    },
    /// Nonabelian simple quotients of rotation groups and their products.
    RotationVerify {
        #[arg(long, default_value_t = 30)]
        max_n: usize,
        /// Two binary groups, e.g. `2I,2I`; checks the quotient of their product.
        #[arg(long, value_parser = parse_pair)]
        so4: Option<[String; 2]>,
        /// Two groups, e.g. `A5,C2`; checks every subgroup of their product.
        #[arg(long, value_parser = parse_pair)]
        pair: Option<[String; 2]>,
    },
    /// Whether the twisted swap transposes the attaching data.
    SeifertCheck {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        w: Option<i64>,
        /// Check every attaching datum with entries bounded by --bound.
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
}

fn parse_pair(text: &str) -> Result<[String; 2], String> {
    match text.split(',').collect::<Vec<_>>().as_slice() {
        [a, b] => Ok([a.trim().to_string(), b.trim().to_string()]),
        _ => Err(format!("expected two comma-separated group names, got {text:?}")),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelGroup {
    Alternating,
    Symmetric,
    Cyclic,
    Dihedral,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(2);
        }
    };
    let cache = Cache::new(cli.cache_dir);
    match commands::run(cli.command, &cache) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{}", outcome.report) {
                if e.kind() != ErrorKind::BrokenPipe {
                    eprintln!("error: cannot write report: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if outcome.verified { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
