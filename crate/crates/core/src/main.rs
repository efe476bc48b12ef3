use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vgroupoid::constructions::{CATALOG, DEFAULT_MAX_CARRIER};
use vgroupoid::dsl::{self, EvalOptions, Format};
use vgroupoid::sg_cardinality;

/// Exhaustive verifier for finite Brandt groupoids and vector groupoids over Z_p.
#[derive(Parser)]
#[command(name = "vgroupoid", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, build and check a `.gd` definition file.
    Verify {
        file: PathBuf,
        /// Emit the machine-readable JSON report.
        #[arg(long)]
        json: bool,
        /// Witnesses kept per law (overrides VGROUPOID_WITNESS_CAP).
        #[arg(long)]
        witness_cap: Option<usize>,
        /// Refuse constructions whose carrier exceeds this many elements.
        #[arg(long, default_value_t = DEFAULT_MAX_CARRIER)]
        max_carrier: usize,
    },
    /// List the construction kinds.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print |SG_n| and the number of its units.
    SgCard { n: u32 },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { file, json, witness_cap, max_carrier } => verify(&file, json, witness_cap, max_carrier),
        Command::Catalog { action: CatalogAction::List } => {
            for (syntax, about) in CATALOG {
                println!("{syntax:<18} {about}");
            }
            ExitCode::SUCCESS
        }
        Command::SgCard { n } => {
            if n == 0 || n > 100 {
                eprintln!("error: n must be in 1..=100");
                return ExitCode::from(EXIT_INVALID);
            }
            let (total, units) = sg_cardinality(n);
            println!("|SG_{n}| = {total}, |SG_{n},0| = {units}");
            ExitCode::SUCCESS
        }
    }
}

fn verify(file: &PathBuf, json: bool, witness_cap: Option<usize>, max_carrier: usize) -> ExitCode {
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let env = std::env::var(dsl::WITNESS_CAP_ENV).ok();
    let check = dsl::resolve_witness_cap(witness_cap, env.as_deref());
    match dsl::verify_source(&src, &EvalOptions { max_carrier }, &check) {
        Ok((report, warnings)) => {
            for w in &warnings {
                eprintln!("{}:{w}", file.display());
            }
            print!("{}", dsl::emit_report(&report, if json { Format::Json } else { Format::Text }));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(diagnostics) => {
            for d in diagnostics.iter() {
                eprintln!("{}:{d}", file.display());
            }
            ExitCode::from(EXIT_INVALID)
        }
    }
}
