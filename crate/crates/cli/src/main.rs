use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use regnum::Error;
use regnum_cli::commands::{self, Expect, Report, Status};
use regnum_cli::config::{Format, RunConfig};
use regnum_cli::expected::TableId;
use regnum_cli::resolve::Class;

#[derive(Parser)]
#[command(
    name = "regnum",
    version,
    about = "Regularity of subgroup tuples in permutation groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Seed for every randomised search.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random conjugate tuples tried before falling back to orbit search.
    #[arg(long = "budget-random", global = true)]
    budget_random: Option<u64>,
    /// Largest coset-space size enumerated exhaustively.
    #[arg(long = "ceiling-exhaustive", global = true)]
    ceiling_exhaustive: Option<u64>,
    /// Largest index for which a coset action is built.
    #[arg(long = "ceiling-index", global = true)]
    ceiling_index: Option<u64>,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Append decided tuples to this ledger file.
    #[arg(long, global = true)]
    ledger: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpectArg {
    Regular,
    Nonregular,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    All,
    Prim,
    Solmax,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether one tuple of subgroups is regular.
    CheckTuple {
        group: String,
        #[arg(required = true)]
        components: Vec<String>,
        #[arg(long, value_enum)]
        expect: Option<ExpectArg>,
    },
    /// Recompute a stored table and compare.
    Table {
        /// prim, maxsol or sporadic
        which: String,
        /// Largest degree to run (default 9, or the table limit with --groups)
        #[arg(long = "max-n")]
        max_n: Option<usize>,
        /// Comma-separated row names, e.g. A8,S8
        #[arg(long, value_delimiter = ',')]
        groups: Option<Vec<String>>,
    },
    /// Exact certificate for pairs of primitive subgroups of S_n, n ≥ 60.
    Certify {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Base number and regularity number of a group.
    Regularity {
        group: String,
        #[arg(long, value_enum, default_value_t = ClassArg::All)]
        class: ClassArg,
    },
    /// Explicit regular witness for intransitive/imprimitive tuples in S_n or A_n.
    Witness {
        group: String,
        #[arg(required = true)]
        components: Vec<String>,
    },
    /// Fixed-point-ratio sum for a tuple, in exact arithmetic.
    Qhat {
        group: String,
        #[arg(required = true)]
        components: Vec<String>,
    },
    /// Inspect the shipped subgroup catalogs.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Re-verify regular witnesses stored in the ledger.
    Ledger {
        #[command(subcommand)]
        action: LedgerCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List {
        group: String,
    },
    /// Rebuild and check every record; `all` covers every shipped catalog.
    Verify {
        #[arg(required = true)]
        groups: Vec<String>,
    },
}

#[derive(Subcommand)]
enum LedgerCmd {
    Replay,
}

fn run_config(g: &Global) -> RunConfig {
    let mut rc = RunConfig::default();
    if let Some(s) = g.seed {
        rc.seed = s;
    }
    if let Some(b) = g.budget_random {
        rc.random_budget = b;
    }
    if let Some(c) = g.ceiling_exhaustive {
        rc.exhaustive_ceiling = c;
    }
    if let Some(c) = g.ceiling_index {
        rc.index_ceiling = c;
    }
    rc.workers = g.workers;
    rc.ledger = g.ledger.clone();
    rc.format = match g.format {
        FormatArg::Text => Format::Text,
        FormatArg::Machine => Format::Machine,
    };
    rc
}

fn dispatch(cmd: Cmd, rc: &RunConfig) -> Result<Report, Error> {
    match cmd {
        Cmd::CheckTuple {
            group,
            components,
            expect,
        } => {
            let e = expect.map(|e| match e {
                ExpectArg::Regular => Expect::Regular,
                ExpectArg::Nonregular => Expect::NonRegular,
            });
            commands::check_tuple(&group, &components, rc, e)
        }
        Cmd::Table {
            which,
            max_n,
            groups,
        } => {
            let t = TableId::parse(&which).ok_or_else(|| {
                Error::Precondition(format!("unknown table '{which}' (prim, maxsol, sporadic)"))
            })?;
            commands::table(t, max_n, groups, rc)
        }
        Cmd::Certify { from, to } => commands::certify(from, to, rc),
        Cmd::Regularity { group, class } => {
            let class = match class {
                ClassArg::All => Class::All,
                ClassArg::Prim => Class::Primitive,
                ClassArg::Solmax => Class::SolubleMaximal,
            };
            commands::regularity(&group, class, rc)
        }
        Cmd::Witness { group, components } => commands::witness(&group, &components, rc),
        Cmd::Qhat { group, components } => commands::qhat_cmd(&group, &components),
        Cmd::Catalog {
            action: CatalogCmd::List { group },
        } => commands::catalog_list(&group, rc),
        Cmd::Catalog {
            action: CatalogCmd::Verify { groups },
        } => {
            let groups = if groups.iter().any(|g| g == "all") {
                commands::all_catalog_groups()
            } else {
                groups
            };
            commands::catalog_verify(&groups, rc)
        }
        Cmd::Ledger {
            action: LedgerCmd::Replay,
        } => commands::replay(rc),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { Status::Usage.code() as u8 } else { 0 });
        }
    };
    let rc = run_config(&cli.global);
    if let Err(msg) = rc.validate() {
        eprintln!("error: {msg}");
        return ExitCode::from(Status::Usage.code() as u8);
    }
    let report = dispatch(cli.cmd, &rc).unwrap_or_else(|e| Report::error(&e));
    for l in &report.lines {
        if report.status == Status::Usage && l.starts_with("error:") {
            eprintln!("{l}");
        } else {
            println!("{l}");
        }
    }
    ExitCode::from(report.status.code() as u8)
}
