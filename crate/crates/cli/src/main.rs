use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qell_cli::commands::{self, Algorithm, Direction, Pick, Space};
use qell_cli::json;
use qell_cli::session::Session;
use qell_cli::verify::{self, Suite};
use qell_cli::{CliError, GroupSpec};

/// Exact quasi-elliptic cohomology of finite group actions.
///
/// Exit codes: 0 ok, 1 verification failure, 2 parse or usage error,
/// 3 size cap exceeded, 4 schema mismatch, 5 failed precondition.
/// QELL_ORDER_CAP overrides the group-order cap.
#[derive(Parser)]
#[command(name = "qell", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print QEll of a point: per-class ranks, basis angles, multiplication tables.
    Point {
        #[arg(long)]
        group: String,
        /// Also write the full structure as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the character table as JSON.
    Table {
        #[arg(long)]
        group: String,
    },
    /// Print an element as JSON.
    Element(ElementArgs),
    /// Apply a structural map to JSON elements.
    #[command(subcommand)]
    Op(Op),
    /// Run the verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ElementArgs {
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value = "point")]
    space: Space,
    #[arg(long, conflicts_with_all = ["random", "basis"])]
    unit: bool,
    /// Seed for a random element.
    #[arg(long, conflicts_with = "basis")]
    random: Option<u64>,
    /// A basis element CLASS:ORBIT:INDEX.
    #[arg(long)]
    basis: Option<String>,
}

#[derive(Subcommand)]
enum Op {
    /// The power map μⁿ.
    Mu {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        input: PathBuf,
    },
    /// Transfer from a subgroup; the input lives over the subgroup.
    Transfer {
        #[arg(long)]
        group: String,
        /// Subgroup spec with the same degree as the group.
        #[arg(long)]
        subgroup: String,
        /// The set acted on by the group.
        #[arg(long, value_enum, default_value = "point")]
        space: Space,
        #[arg(long, value_enum, default_value = "a")]
        algorithm: Algorithm,
        #[arg(long)]
        input: PathBuf,
    },
    /// Change of group between QEll_H(X) and QEll_G(G ×_H X).
    Cog {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        /// The set acted on by the subgroup.
        #[arg(long, value_enum, default_value = "point")]
        space: Space,
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long)]
        input: PathBuf,
    },
    /// Exterior product of two elements.
    Kunneth {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Restriction to a subgroup; the input fixes the group and the set.
    Pullback {
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        input: PathBuf,
    },
}

fn parse(text: &str) -> Result<GroupSpec, CliError> {
    Ok(GroupSpec::parse(text)?)
}

fn run(cli: Cli) -> Result<String, CliError> {
    let mut session = Session::from_env()?;
    match cli.command {
        Command::Point { group, json } => commands::point(&mut session, &parse(&group)?, json.as_deref()),
        Command::Table { group } => commands::table(&mut session, &parse(&group)?),
        Command::Element(a) => {
            let pick = match (a.unit, a.random, a.basis) {
                (_, Some(seed), _) => Pick::Random(seed),
                (_, None, Some(b)) => b.parse()?,
                _ => Pick::Unit,
            };
            commands::element(&mut session, &parse(&a.group)?, a.space, pick)
        }
        Command::Op(op) => match op {
            Op::Mu { n, input } => commands::op_mu(&mut session, n, &commands::read_input(&input)?),
            Op::Transfer {
                group,
                subgroup,
                space,
                algorithm,
                input,
            } => commands::op_transfer(
                &mut session,
                &parse(&group)?,
                &parse(&subgroup)?,
                space,
                algorithm,
                &commands::read_input(&input)?,
            ),
            Op::Cog {
                group,
                subgroup,
                space,
                direction,
                input,
            } => commands::op_cog(
                &mut session,
                &parse(&group)?,
                &parse(&subgroup)?,
                space,
                direction,
                &commands::read_input(&input)?,
            ),
            Op::Kunneth { left, right } => commands::op_kunneth(
                &mut session,
                &commands::read_input(&left)?,
                &commands::read_input(&right)?,
            ),
            Op::Pullback { subgroup, input } => {
                commands::op_pullback(&mut session, &parse(&subgroup)?, &commands::read_input(&input)?)
            }
        },
        Command::Verify { suite, seed, json } => {
            let report = verify::run_suite(suite, seed);
            if let Some(path) = json {
                std::fs::write(path, json::to_string(&verify::report_document(&report)))?;
            }
            let text = verify::format_report(&report);
            if report.pass {
                Ok(text)
            } else {
                print!("{text}");
                let failed = report.checks.iter().filter(|c| !c.pass).count();
                Err(CliError::Verification(format!("{failed} check(s) failed")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
