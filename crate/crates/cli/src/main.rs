use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chartheta::harness::{self, table_json, HarnessError, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(name = "chartheta", version, about = "Exact character tables and zero/root-of-unity statistics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the table of a group file and report its statistics.
    Analyze {
        groupfile: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print the exact table of a group file in the exchange format.
    Table {
        groupfile: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Validate an exchange-format table and report its statistics.
    CheckTable {
        tablefile: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Analyze every group file in a directory.
    Verify {
        corpus: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Opts {
    /// Worker threads for `verify` [default: available parallelism]
    #[arg(long)]
    jobs: Option<usize>,
    /// Refuse groups larger than this.
    #[arg(long, default_value_t = chartheta::group::DEFAULT_ORDER_CAP)]
    max_order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the eigenspace splitting.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop `verify` at the first failing entry.
    #[arg(long)]
    fail_fast: bool,
    /// Write the output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Opts {
    fn config(&self) -> Result<RunConfig, String> {
        let mut config = RunConfig {
            max_order: self.max_order,
            seed: self.seed,
            fail_fast: self.fail_fast,
            format: match self.format {
                Format::Text => OutputFormat::Text,
                Format::Json => OutputFormat::Json,
            },
            ..RunConfig::default()
        };
        if let Some(jobs) = self.jobs {
            if jobs == 0 {
                return Err("--jobs must be at least 1".into());
            }
            config.jobs = jobs;
        }
        Ok(config)
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    let usage = |m: String| (1, m);
    let fail = |e: HarnessError| (e.exit_code(), e.to_string());
    let (opts, body, code) = match &cli.command {
        Command::Analyze { groupfile, opts } => {
            let config = opts.config().map_err(usage)?;
            let report = harness::cmd_analyze(groupfile, &config).map_err(fail)?;
            let body = match config.format {
                OutputFormat::Text => report.to_text(),
                OutputFormat::Json => report.to_json(),
            };
            (opts, body, report.exit_code())
        }
        Command::Table { groupfile, opts } => {
            let config = opts.config().map_err(usage)?;
            let table = harness::cmd_table(groupfile, &config).map_err(fail)?;
            (opts, table_json(&table), 0)
        }
        Command::CheckTable { tablefile, opts } => {
            let config = opts.config().map_err(usage)?;
            let report = harness::cmd_check_table(tablefile).map_err(fail)?;
            let body = match config.format {
                OutputFormat::Text => report.to_text(),
                OutputFormat::Json => report.to_json(),
            };
            (opts, body, report.exit_code())
        }
        Command::Verify { corpus, opts } => {
            let config = opts.config().map_err(usage)?;
            let report = harness::cmd_verify(corpus, &config).map_err(fail)?;
            let body = match config.format {
                OutputFormat::Text => report.to_text(),
                OutputFormat::Json => {
                    for (entry, time) in report.entries.iter().zip(&report.timings) {
                        if let Some(t) = time {
                            eprintln!("{}: {:.3}s", entry.file(), t.as_secs_f64());
                        }
                    }
                    report.to_json()
                }
            };
            (opts, body, report.exit_code())
        }
    };
    emit(opts.out.as_deref(), &body).map_err(usage)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("chartheta: {message}");
            ExitCode::from(code)
        }
    }
}
