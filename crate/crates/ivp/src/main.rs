use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ivp::cli::{self, Command, Options};

/// Exact analysis of integer-valued polynomials g(x)/d with square-free
/// denominator.
#[derive(Parser)]
#[command(name = "ivp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args)]
struct CommonArgs {
    /// Polynomial expression, e.g. "x*(x-1)*(x-2)/6"; read from standard
    /// input when omitted
    input: Option<String>,
    /// Emit a JSON report instead of text
    #[arg(long)]
    json: bool,
    /// Cross-check the result against the brute-force oracle
    #[arg(long)]
    verify: bool,
    /// Include the covering family and prime partition per factorization
    #[arg(long)]
    certificates: bool,
    /// Degree bound for factoring unfactored numerators
    #[arg(long, default_value_t = ivp::polyz::DEFAULT_DEGREE_BOUND)]
    max_degree: usize,
    /// Evaluation window for the oracle fixed-divisor check
    #[arg(long)]
    window: Option<u64>,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Print the fixed divisor of the numerator
    FixedDivisor(CommonArgs),
    /// Print the root classes of each numerator factor modulo a prime
    Roots {
        /// The prime modulus
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        args: CommonArgs,
    },
    /// Print all minimal p-coverings of the numerator factors
    Covers {
        /// The prime modulus
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        args: CommonArgs,
    },
    /// Decide whether the element has fixed divisor 1
    ImagePrimitive(CommonArgs),
    /// Decide irreducibility in the ring of integer-valued polynomials
    Irreducible(CommonArgs),
    /// Enumerate all essentially different factorizations into irreducibles
    Factor(CommonArgs),
    /// Print the multiset of factorization lengths
    Lengths(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        CliCommand::FixedDivisor(args) => (Command::FixedDivisor, args),
        CliCommand::Roots { prime, args } => (Command::Roots { prime }, args),
        CliCommand::Covers { prime, args } => (Command::Covers { prime }, args),
        CliCommand::ImagePrimitive(args) => (Command::ImagePrimitive, args),
        CliCommand::Irreducible(args) => (Command::Irreducible, args),
        CliCommand::Factor(args) => (Command::Factor, args),
        CliCommand::Lengths(args) => (Command::Lengths, args),
    };
    let input = match &args.input {
        Some(s) => s.clone(),
        None => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                eprintln!("error: cannot read standard input: {e}");
                return ExitCode::from(cli::EXIT_INPUT_ERROR as u8);
            }
            buf.trim().to_string()
        }
    };
    let options = Options {
        json: args.json,
        verify: args.verify,
        certificates: args.certificates,
        max_degree: args.max_degree,
        window: args.window,
    };
    let outcome = cli::run(&command, &input, &options);
    print!("{}", outcome.report);
    ExitCode::from(outcome.code as u8)
}
