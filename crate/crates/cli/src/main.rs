//! `synlat`: canonical automata, syntactic algebras and reversibility of a
//! regular language given as a regular expression.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use synlat_core::config::{Budgets, DEFAULT_MAX_ELEMENTS, DEFAULT_QUADRUPLE_WARNING};
use synlat_core::{cmd_algebra, cmd_automaton, cmd_reversible, AlgebraLevel, AutomatonLevel, Format, RunConfig};

#[derive(Parser)]
#[command(name = "synlat", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical automaton, meet automaton or lattice automaton.
    Automaton {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "dfa")]
        level: AutomatonArg,
    },
    /// Syntactic monoid, semiring or lattice algebra.
    Algebra {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "lattice")]
        level: AlgebraArg,
        /// Show only residual columns other than the empty and full language.
        #[arg(long)]
        suppress_derivable_columns: bool,
    },
    /// Reversibility verdict by both decision methods.
    Reversible {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Pattern over the alphabet; `%e` is the empty word, `%0` the empty set.
    #[arg(long)]
    regex: String,
    /// Letters of the alphabet, e.g. `ab`.
    #[arg(long)]
    alphabet: String,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
    #[arg(long, default_value_t = synlat_core::canonical::DEFAULT_MAX_STATES)]
    budget_states: usize,
    #[arg(long, default_value_t = synlat_core::atoms::DEFAULT_MAX_PROFILES)]
    budget_profiles: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
    budget_elements: usize,
    /// Quadruple count above which the identity check logs a warning.
    #[arg(long, default_value_t = DEFAULT_QUADRUPLE_WARNING)]
    budget_quadruples: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum AutomatonArg {
    Dfa,
    Meet,
    Lattice,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraArg {
    Monoid,
    Semiring,
    Lattice,
}

impl Common {
    fn config(&self, suppress_derivable_columns: bool) -> RunConfig {
        RunConfig {
            alphabet: self.alphabet.clone(),
            regex: self.regex.clone(),
            budgets: Budgets {
                states: self.budget_states,
                profiles: self.budget_profiles,
                elements: self.budget_elements,
                quadruples: self.budget_quadruples,
            },
            format: match self.format {
                FormatArg::Dot => Format::Dot,
                FormatArg::Json => Format::Json,
                FormatArg::Table => Format::Table,
            },
            suppress_derivable_columns,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Automaton { common, level } => {
            let level = match level {
                AutomatonArg::Dfa => AutomatonLevel::Dfa,
                AutomatonArg::Meet => AutomatonLevel::Meet,
                AutomatonArg::Lattice => AutomatonLevel::Lattice,
            };
            cmd_automaton(&common.config(false), level)
        }
        Command::Algebra { common, level, suppress_derivable_columns } => {
            let level = match level {
                AlgebraArg::Monoid => AlgebraLevel::Monoid,
                AlgebraArg::Semiring => AlgebraLevel::Semiring,
                AlgebraArg::Lattice => AlgebraLevel::Lattice,
            };
            cmd_algebra(&common.config(*suppress_derivable_columns), level)
        }
        Command::Reversible { common } => cmd_reversible(&common.config(false)),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("synlat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
