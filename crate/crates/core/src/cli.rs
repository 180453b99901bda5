//! Command-line surface. Every subcommand prints records in the selected
//! `--format`; exit codes are 0 on success, 1 when a check fails, 2 on usage
//! errors and 3 when an oracle refuses to run past its bound.

use clap::{Parser, Subcommand};

use crate::arith::parse_angles;
use crate::cohomology::{
    betti_x, graded_invariants, graded_invariants_oracle, total_dim, cohomology_sequence,
    DEFAULT_ORACLE_BOUND,
};
use crate::error::Error;
use crate::ktheory::ktheory_ranks;
use crate::labels::{admissible_n, check_square, LocalFieldData};
use crate::quotient::{enumerate_components, ProjectivePoint};
use crate::report::{self, OutputFormat, Record, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "extquot",
    version,
    about = "Extended quotients (T^n/T)//(Z/nZ): components, Betti numbers, K-theory ranks"
)]
pub struct Cli {
    /// Output format: table, json-records or csv
    #[arg(long, global = true, default_value = "table")]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the components X(n, k, ω) of the extended quotient
    Components { n: u64 },
    /// Cyclic invariants a_j, Betti numbers b_j of X(n), and g(n)
    Betti {
        n: u64,
        /// Also run the brute-force subset oracle and compare
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: u64,
    },
    /// Rational K-theory ranks with per-component breakdown
    Ktheory { n: u64 },
    /// Isotropy, component memberships and fibre size of a point
    Isotropy {
        /// Comma-separated angles, e.g. "0,1/3,2/3"
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// The sequence g(n)/2 for n = 1..=limit
    Sequence {
        #[arg(long, default_value_t = 18)]
        limit: u64,
    },
    /// Check π = inf.ch ∘ μ on the lattice of M-torsion points
    Check {
        n: u64,
        #[arg(name = "M")]
        m: u64,
    },
    /// Divisors n of N admitting a unit character of order n
    Admissible {
        #[arg(name = "N")]
        big_n: u64,
        p: u64,
        q: u64,
    },
}

/// Result of running one command: text for stdout and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn from_error(e: Error) -> Self {
        let code = match e {
            Error::OracleBoundExceeded { .. } => EXIT_REFUSED,
            Error::Integrality { .. } | Error::Consistency { .. } => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        };
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code,
        }
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(&cli.command, cli.format) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::from_error(e),
    }
}

fn execute(command: &Command, format: OutputFormat) -> Result<Outcome, Error> {
    let out = |records: &[Record]| Outcome::ok(report::render(records, format));
    match *command {
        Command::Components { n } => {
            let rows: Vec<_> = enumerate_components(n)?
                .iter()
                .map(report::component_record)
                .collect();
            Ok(out(&rows))
        }
        Command::Betti {
            n,
            oracle,
            oracle_bound,
        } => {
            let g = total_dim(n)?;
            let a = graded_invariants(n)?;
            let b = betti_x(n)?;
            let mut record = report::betti_record(&a, &b, &g);
            let mut matched = true;
            if oracle {
                let brute = graded_invariants_oracle(n, oracle_bound)?;
                matched = brute == a;
                record = record
                    .with("oracle", brute.dims.as_slice())
                    .with(
                        "verdict",
                        if matched { "match" } else { "mismatch" }.to_string(),
                    );
            }
            let mut outcome = out(&[record]);
            if !matched {
                outcome.code = EXIT_CHECK_FAILED;
            }
            Ok(outcome)
        }
        Command::Ktheory { n } => Ok(out(&report::ktheory_records(&ktheory_ranks(n)?))),
        Command::Isotropy { ref point } => {
            let p = ProjectivePoint::normalize(&parse_angles(point)?)?;
            Ok(out(&[report::isotropy_record(&p)]))
        }
        Command::Sequence { limit } => Ok(out(&report::sequence_records(
            &cohomology_sequence(limit)?,
        ))),
        Command::Check { n, m } => {
            let r = check_square(n, m)?;
            let mut outcome = out(&[report::square_record(&r)]);
            if !r.passed {
                outcome.code = EXIT_CHECK_FAILED;
            }
            Ok(outcome)
        }
        Command::Admissible { big_n, p, q } => {
            let field = LocalFieldData::new(p, q)?;
            let ns = admissible_n(big_n, &field)?;
            let mut rows = report::admissible_records(big_n, p, q, &ns);
            if rows.is_empty() {
                rows.push(Record::new().with("n", Value::Empty));
            }
            Ok(out(&rows))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cmd(args: &[&str]) -> Outcome {
        run_args(std::iter::once("extquot").chain(args.iter().copied()))
    }

    #[test]
    fn components_row_counts() {
        for (n, rows) in [("3", 7), ("1", 1), ("4", 11)] {
            let o = run_cmd(&["components", n, "--format", "csv"]);
            assert_eq!(o.code, 0);
            assert_eq!(o.stdout.lines().count(), rows + 1);
        }
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_cmd(&["components", "0"]).code, EXIT_USAGE);
        assert_eq!(run_cmd(&["components", "x"]).code, EXIT_USAGE);
        assert_eq!(run_cmd(&["bogus"]).code, EXIT_USAGE);
        assert_eq!(run_cmd(&["sequence", "--format", "xml"]).code, EXIT_USAGE);
        let o = run_cmd(&["isotropy", "0,1/q,2/3"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("position 2"), "{}", o.stderr);
    }

    #[test]
    fn oracle_refusal_exits_three() {
        let o = run_cmd(&["betti", "17", "--oracle"]);
        assert_eq!(o.code, EXIT_REFUSED);
        assert!(o.stderr.contains("oracle bound exceeded"));
        assert_eq!(run_cmd(&["betti", "6", "--oracle", "--oracle-bound", "5"]).code, EXIT_REFUSED);
        // without --oracle there is no bound
        assert_eq!(run_cmd(&["betti", "40"]).code, 0);
    }

    #[test]
    fn admissible_output() {
        let o = run_cmd(&["admissible", "4", "2", "2", "--format", "csv"]);
        assert_eq!(o.stdout, "N,p,q,n,m\n4,2,2,1,4\n4,2,2,2,2\n4,2,2,4,1\n");
        assert_eq!(run_cmd(&["admissible", "4", "4", "4"]).code, EXIT_USAGE);
    }

    #[test]
    fn help_is_not_an_error() {
        let o = run_cmd(&["--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("ktheory"));
    }
}
