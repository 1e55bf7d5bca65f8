//! `oprime` — exact computations in the highest-weight category of a
//! generalized reductive Lie algebra `g = g0 ⊕ J`.
//!
//! Subcommands cover root-system data, strong linkage, truncated Verma
//! modules, singular vectors, embeddings, `J_2` nilpotency, axiom checks,
//! the non-projectivity witness, Jordan towers, filtrations, the rank-one
//! reciprocity table, and the bundled verification suite.
//!
//! All rationals cross the interface as strings ("p/q" or integer strings);
//! reports are JSON on stdout with fully deterministic key order, and
//! `--recheck` re-parses the emitted report and re-verifies it before the
//! process exits.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;
mod table;

#[derive(Parser)]
#[command(
    name = "oprime",
    version,
    about = "Exact highest-weight computations over generalized reductive Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format for the report on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    /// Re-parse the emitted report and re-verify it before exiting.
    #[arg(long, global = true)]
    pub recheck: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Table,
}

/// How the algebra is described: a spec file and/or inline flags
/// (flags override the file).
#[derive(Args, Clone, Default)]
pub struct AlgebraArgs {
    /// Algebra spec file: {"cartan": "A1" | [[2]], "radical": [[coords], ...],
    /// "g": {"<summand>": ["p/q", ...]}}.
    #[arg(long)]
    pub spec: Option<std::path::PathBuf>,
    /// Cartan matrix: a named type (A1, A2, B2, G2) or a JSON integer matrix.
    #[arg(long)]
    pub cartan: Option<String>,
    /// Radical summand highest weights, JSON array of weight vectors.
    #[arg(long)]
    pub radical: Option<String>,
    /// Functional values on the radical basis, flat JSON array of rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Root system data: positive roots, rho, Weyl group order.
    Roots {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Strong linkage chain from lam down to mu.
    Linkage {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
    },
    /// Weight-space dimensions of M(lam, g), cross-checked against the
    /// Kostant partition function.
    VermaDim {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
        #[arg(long)]
        depth: Option<usize>,
        /// Include the full module dump (basis labels and sparse action
        /// matrices) in the report.
        #[arg(long)]
        dump: bool,
    },
    /// Maximal (singular) vectors of M(lam, g) at weight mu.
    Singular {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Embedding M(mu, g) into M(lam, g) along a strong-linkage chain.
    Embed {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Nilpotency degree of the J2 action on M(lam, g).
    Nilpotency {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Category axiom report for M(lam, g).
    Axioms {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Non-projectivity witness: the lift system of the central-twist
    /// diagram is inconsistent while its g0 restriction is solvable.
    Witness {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Jordan tower T_1..T_k: axioms, connecting maps, nilpotency growth.
    Tower {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
    },
    /// Highest-weight or standard filtration of M(lam, g), optionally
    /// tensored with the finite-dimensional simple L(tensor).
    Filtration {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
        #[arg(long, allow_hyphen_values = true)]
        tensor: Option<String>,
        #[arg(long, value_enum, default_value_t = FiltrationKindArg::Standard)]
        kind: FiltrationKindArg,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// The 2x2 reciprocity table on a rank-one block.
    Reciprocity {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// A weight of the block; defaults to [0].
        #[arg(long, allow_hyphen_values = true)]
        lam: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Run the bundled verification suite.
    VerifyAll {
        #[arg(long, default_value_t = 12)]
        rank1_depth: usize,
        #[arg(long, default_value_t = 6)]
        rank2_depth: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FiltrationKindArg {
    Standard,
    Highest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            match cli.output {
                Output::Json => {
                    let rendered =
                        serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
                    println!("{rendered}");
                }
                Output::Table => {
                    print!("{}", table::render(&outcome.report));
                }
            }
            if cli.recheck {
                match commands::recheck(&cli, &outcome) {
                    Ok(true) => eprintln!("recheck: report re-verified"),
                    Ok(false) => {
                        eprintln!("recheck: report failed re-verification");
                        return ExitCode::from(1);
                    }
                    Err(msg) => {
                        eprintln!("recheck error: {msg}");
                        return ExitCode::from(2);
                    }
                }
            }
            if outcome.assertions_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
