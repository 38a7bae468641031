use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod input;

use commands::{BettiMethod, Caps, CoverMethod, Demo, Report};
use input::Source;

/// Mod-2 Betti numbers of small covers and their double covers.
#[derive(Parser, Debug)]
#[command(name = "smallcover", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,
    /// Upper bound on cells and on monomials per degree.
    #[arg(long, global = true)]
    cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f-vector and h-vector.
    Hvector {
        #[command(flatten)]
        source: Source,
    },
    /// Betti numbers of the small cover.
    Betti {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "both")]
        method: BettiMethod,
    },
    /// Betti numbers of the double cover of a class.
    Doublecover {
        #[command(flatten)]
        source: Source,
        /// Facet names ("L,B"), a 0/1 vector, or a class JSON file.
        #[arg(long)]
        class: String,
        #[arg(long, value_enum, default_value = "both")]
        method: CoverMethod,
    },
    /// Class of a facet or hyperplane section, checked three ways.
    Section {
        #[command(flatten)]
        source: Source,
        #[arg(long, conflicts_with = "hyperplane", required_unless_present = "hyperplane")]
        facet: Option<String>,
        /// "l1,...,ln,c" for the hyperplane <l, x> = c.
        #[arg(long, allow_hyphen_values = true)]
        hyperplane: Option<String>,
    },
    /// Scripted examples.
    Demo {
        #[arg(value_enum)]
        name: Demo,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        class: Option<String>,
    },
    /// The cell complex as JSON.
    Dump {
        #[command(flatten)]
        source: Source,
        /// Dump the double cover of this class instead of the small cover.
        #[arg(long)]
        class: Option<String>,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let caps = Caps::new(cli.cap);
    match &cli.command {
        Command::Hvector { source } => commands::hvector(source),
        Command::Betti { source, method } => commands::betti(source, *method, caps),
        Command::Doublecover { source, class, method } => commands::doublecover(source, class, *method, caps),
        Command::Section { source, facet, hyperplane } => {
            commands::section(source, facet.as_deref(), hyperplane.as_deref(), caps)
        }
        Command::Demo { name, source, class } => commands::demo(*name, source, class.as_deref(), caps),
        Command::Dump { source, class } => commands::dump(source, class.as_deref(), caps),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Table => print!("{}", report.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("JSON values serialize")
                ),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
