use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fibrifold::checks::run_all;
use fibrifold::{build_catalog, emit_table, json, locate, Format};
use fibrifold_core::atlas::Which;
use fibrifold_core::basegroups::presentation;
use fibrifold_core::exactnum::{FiberKernel, GridOp, VerticalOp};
use fibrifold_core::fibration::{classify, name_assignment};
use fibrifold_core::irreducible::{inclusion_lattice, irreducible_classes};
use fibrifold_core::notation::{parse, star_rules};
use fibrifold_core::realization::{fingerprint, point_group};

#[derive(Parser)]
#[command(name = "fibrifold", version, about = "Fibered space groups and their names")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fiber {
    Circular,
    Interval,
}

impl From<Fiber> for FiberKernel {
    fn from(f: Fiber) -> Self {
        match f {
            Fiber::Circular => FiberKernel::Circular,
            Fiber::Interval => FiberKernel::Interval,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    #[value(name = "1")]
    One,
    #[value(name = "2a")]
    TwoA,
    #[value(name = "2b")]
    TwoB,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// List the fibration classes over a plane group.
    Enumerate {
        #[arg(long)]
        base: String,
        #[arg(long, value_enum)]
        fiber: Fiber,
    },
    /// Name the fibration given by couplings such as "1/2+ 0- 0-".
    Name {
        #[arg(long)]
        base: String,
        #[arg(long)]
        couplings: String,
        #[arg(long, value_enum, default_value = "circular")]
        fiber: Fiber,
    },
    /// Parse a name and show its structure.
    Parse { name: String },
    /// Print generators of the group with this name.
    Realize {
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the fingerprint of the group with this name.
    Fingerprint {
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// The irreducible groups.
    Irreducible {
        /// Minimal inclusions with their indices.
        #[arg(long, conflicts_with = "list")]
        lattice: bool,
        /// Names, families and orders.
        #[arg(long)]
        list: bool,
    },
    /// Emit a computed table in the row order of the printed one.
    Tables {
        #[arg(long, value_enum)]
        which: TableArg,
        #[arg(long, value_enum, default_value = "tsv")]
        format: FormatArg,
    },
    /// Run the acceptance checks.
    Check,
}

fn couplings(spec: &str) -> Result<Vec<GridOp>> {
    spec.split([' ', ','])
        .filter(|s| !s.is_empty())
        .map(|s| Ok(GridOp::try_from(s.parse::<VerticalOp>()?)?))
        .collect()
}

fn run(command: Command) -> Result<bool> {
    let mut o = std::io::stdout().lock();
    match command {
        Command::Enumerate { base, fiber } => {
            let b = presentation(&base)?;
            let c = classify(&b, fiber.into())?;
            for class in &c.classes {
                let ops: Vec<String> = class.representative.iter().map(ToString::to_string).collect();
                writeln!(o, "{}\t{}", class.name, ops.join(" "))?;
            }
            eprintln!("{} classes from {} assignments", c.classes.len(), c.raw_count);
        }
        Command::Name { base, couplings: spec, fiber } => {
            let b = presentation(&base)?;
            let ops = couplings(&spec)?;
            writeln!(o, "{}", name_assignment(&b, &ops, fiber.into())?)?;
            for (i, rule) in star_rules(&b, &ops, fiber.into())?.into_iter().enumerate() {
                if let Some(r) = rule {
                    eprintln!("token {i}: star subscript by {r:?}");
                }
            }
        }
        Command::Parse { name } => {
            let n = parse(&name)?;
            writeln!(o, "name\t{n}")?;
            writeln!(o, "base\t{}", n.base_symbol())?;
            writeln!(o, "fiber\t{}", if n.is_interval() { "interval" } else { "circular" })?;
            for t in &n.tokens {
                writeln!(o, "token\t{t:?}")?;
            }
        }
        Command::Realize { name, json: as_json } => {
            let loc = locate(&name)?;
            let g = loc.realize()?;
            let pg = point_group(&g)?;
            if as_json {
                writeln!(o, "{}", serde_json::to_string_pretty(&json::group(&g, pg))?)?;
            } else {
                writeln!(o, "{}\tpoint group {pg}", loc.name())?;
                for (m, v) in g.export() {
                    writeln!(o, "{m:?}\t[{}]", v.join(", "))?;
                }
            }
        }
        Command::Fingerprint { name, json: as_json } => {
            let f = fingerprint(&locate(&name)?.realize()?)?;
            if as_json {
                writeln!(o, "{}", serde_json::to_string_pretty(&json::fingerprint(&f))?)?;
            } else {
                writeln!(o, "point group\t{}", f.point_group)?;
                for l in &f.levels {
                    let (n, order, improper, derived) = (l.n, l.order, l.improper, l.derived_order);
                    writeln!(o, "n={n}\torder {order}\timproper {improper}\tderived {derived}\torders {:?}", l.orders)?;
                }
                writeln!(o, "index 2 subgroups\t{}", f.subgroups.len())?;
            }
        }
        Command::Irreducible { lattice, list } => {
            if lattice {
                for (sub, sup, index) in inclusion_lattice() {
                    writeln!(o, "{sub}\t{sup}\t{index}")?;
                }
            } else if list {
                for c in irreducible_classes() {
                    writeln!(o, "{}\t{:?}\t{}", c.name, c.family, c.subgroup.order())?;
                }
            } else {
                bail!("pass --lattice or --list");
            }
        }
        Command::Tables { which, format } => {
            let which = match which {
                TableArg::One => Which::Table1,
                TableArg::TwoA => Which::Table2a,
                TableArg::TwoB => Which::Table2b,
            };
            let format = match format {
                FormatArg::Tsv => Format::Tsv,
                FormatArg::Json => Format::Json,
                FormatArg::Text => Format::Text,
            };
            write!(o, "{}", emit_table(&build_catalog()?, which, format)?)?;
        }
        Command::Check => {
            let outcomes = run_all(&build_catalog());
            for x in &outcomes {
                writeln!(o, "{}", x.line())?;
            }
            return Ok(outcomes.iter().all(|x| x.pass));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|e| e.kind() == ErrorKind::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
