use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homcount::oracle::OracleBudget;
use homcount_cli::cache::{resolve_cache_dir, LambdaCache, CACHE_DIR_ENV};
use homcount_cli::commands::{self, CommandError, Settings};
use homcount_cli::exit;
use homcount_cli::oeis::{self, CheckRequest, Derivation};
use homcount_cli::output::Format;

/// Exact counts of commuting tuples in symmetric groups and of subgroups of Z^r.
#[derive(Parser)]
#[command(name = "homcount", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Bfile)]
    format: Format,
    /// Omit the `#` comment header in b-file output.
    #[arg(long)]
    no_header: bool,
    /// Directory for cached lambda tables.
    #[arg(long, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    /// Do not read or write the lambda-table cache.
    #[arg(long)]
    no_cache: bool,
}

impl OutputArgs {
    fn settings(&self) -> Settings {
        let mut s = Settings::new(self.format);
        s.header = !self.no_header;
        if !self.no_cache {
            s.cache = resolve_cache_dir(self.cache_dir.clone()).map(LambdaCache::new);
        }
        s
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest rank the oracle will enumerate.
    #[arg(long, default_value_t = OracleBudget::default().max_rank)]
    max_rank: usize,
    /// Largest degree the oracle will enumerate.
    #[arg(long, default_value_t = OracleBudget::default().max_degree)]
    max_degree: usize,
    /// Largest degree allowed at the largest rank.
    #[arg(long, default_value_t = OracleBudget::default().max_degree_at_max_rank)]
    max_degree_at_max_rank: usize,
}

impl BudgetArgs {
    fn budget(&self) -> OracleBudget {
        OracleBudget {
            max_rank: self.max_rank,
            max_degree: self.max_degree,
            max_degree_at_max_rank: self.max_degree_at_max_rank,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DerivationKind {
    Sigma,
    Lambda,
    Tuples,
    TuplesNormalized,
}

#[derive(Subcommand)]
enum Command {
    /// Number of index-n subgroups of Z^r, n = 1..max.
    Lambda {
        #[arg(long = "r")]
        r: u32,
        #[arg(long)]
        max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Number of commuting r-tuples in S_n, n = 0..max.
    Count {
        #[arg(long = "r")]
        r: u32,
        #[arg(long)]
        max: usize,
        /// Emit orbit polynomials instead of totals.
        #[arg(long)]
        orbits: bool,
        /// Divide T_r(n) by n!.
        #[arg(long)]
        egf_normalized: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Number of transitive actions of Z^r on n points, n = 1..max.
    Transitive {
        #[arg(long = "r")]
        r: u32,
        #[arg(long)]
        max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// List the Hermite normal forms of index n in Z^r.
    Hnf {
        #[arg(long = "r")]
        r: usize,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Brute-force census of commuting r-tuples in S_n.
    Oracle {
        #[arg(long = "r")]
        r: usize,
        #[arg(long)]
        n: usize,
        /// Split the outer loop across threads.
        #[arg(long)]
        parallel: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the formulas against the brute-force oracle for n = 0..max.
    Verify {
        #[arg(long = "r")]
        r: usize,
        #[arg(long)]
        max: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compare a computed prefix with an OEIS b-file.
    OeisCheck {
        /// Sequence id, e.g. A001001.
        id: String,
        /// Only compare indices up to this value.
        #[arg(long)]
        max: Option<i64>,
        /// Allow downloading the b-file from oeis.org.
        #[arg(long)]
        fetch: bool,
        /// Read the b-file from a local path.
        #[arg(long)]
        bfile: Option<PathBuf>,
        /// Compare against this derivation instead of the registered one.
        #[arg(long, value_enum, requires = "r")]
        derivation: Option<DerivationKind>,
        #[arg(long = "r")]
        r: Option<u32>,
    },
    /// Time the lambda table and both counting routes.
    Bench {
        #[arg(long = "r")]
        r: u32,
        #[arg(long)]
        max: usize,
    },
}

fn run(cli: Cli) -> Result<i32, anyhow::Error> {
    let code = match cli.command {
        Command::Lambda { r, max, out } => emit(commands::lambda_cmd(&out.settings(), r, max))?,
        Command::Count {
            r,
            max,
            orbits,
            egf_normalized,
            out,
        } => emit(commands::count_cmd(&out.settings(), r, max, orbits, egf_normalized))?,
        Command::Transitive { r, max, out } => emit(commands::transitive_cmd(&out.settings(), r, max))?,
        Command::Hnf { r, n, out } => emit(commands::hnf_cmd(&out.settings(), r, n))?,
        Command::Oracle {
            r,
            n,
            parallel,
            budget,
            out,
        } => emit(commands::oracle_cmd(&out.settings(), r, n, parallel, &budget.budget()))?,
        Command::Verify { r, max, budget } => {
            let report = commands::verify(r, max, &budget.budget());
            print!("{}", report.render());
            if report.all_pass() {
                exit::SUCCESS
            } else {
                exit::MISMATCH
            }
        }
        Command::OeisCheck {
            id,
            max,
            fetch,
            bfile,
            derivation,
            r,
        } => {
            let text = bfile.map(std::fs::read_to_string).transpose()?;
            let derivation = derivation.map(|d| {
                let r = r.expect("clap enforces --r");
                match d {
                    DerivationKind::Sigma => Derivation::Sigma,
                    DerivationKind::Lambda => Derivation::Lambda(r),
                    DerivationKind::Tuples => Derivation::Tuples(r),
                    DerivationKind::TuplesNormalized => Derivation::TuplesNormalized(r),
                }
            });
            let report = match oeis::check(&CheckRequest {
                id: &id,
                max_index: max,
                fetch,
                bfile_text: text.as_deref(),
                derivation,
            }) {
                Ok(report) => report,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(exit::USAGE);
                }
            };
            println!("{report}");
            if report.any_match() {
                exit::SUCCESS
            } else {
                exit::MISMATCH
            }
        }
        Command::Bench { r, max } => {
            print!("{}", commands::bench(r, max));
            exit::SUCCESS
        }
    };
    Ok(code)
}

fn emit(result: Result<String, CommandError>) -> Result<i32, anyhow::Error> {
    match result {
        Ok(text) => {
            print!("{text}");
            Ok(exit::SUCCESS)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(exit::USAGE)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::USAGE as u8)
        }
    }
}
