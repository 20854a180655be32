use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use geolin3::cas::AnsatzWindow;
use geolin3_cli::{FormFlag, GaugeFlag, Options, Report, EXIT_INPUT_ERROR};

/// Linearization of third-order ODEs through geodesic equations.
#[derive(Parser)]
#[command(name = "geolin3", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Equation shape: auto, quintic, semilinear, second or geodesic.
    #[arg(long, default_value = "auto")]
    form: FormFlag,
    /// Gauge for the flatness witness: auto, be0, af0, ab0, ef0 or file.
    #[arg(long, default_value = "auto")]
    gauge: GaugeFlag,
    /// Laurent ansatz window XMIN:XMAX,YMIN:YMAX (default: escalate 4, 6, 8).
    #[arg(long, allow_hyphen_values = true)]
    window: Option<AnsatzWindow>,
    /// File with a second-order equation to try when c = 0.
    #[arg(long)]
    hint: Option<String>,
    /// Emit JSON instead of the commented text report.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide linearizability.
    Check {
        file: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide, then construct the metric, the map and the solution family.
    Linearize {
        file: String,
        #[command(flatten)]
        common: Common,
    },
    /// Produce third-order equations from a map, a second-order equation or seeds.
    Generate {
        file: Option<String>,
        /// First seed of a random batch (GEOLIN3_SEED overrides).
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random samples.
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check a supplied map and/or solution family against the equation.
    Verify {
        file: String,
        #[arg(long, default_value = "auto")]
        form: FormFlag,
        #[arg(long)]
        json: bool,
    },
}

fn read(path: &str) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn failure(command: &str, msg: String) -> Report {
    let mut r = Report::new(command);
    r.status = "input-error".into();
    r.exit_code = EXIT_INPUT_ERROR;
    r.error = Some(msg);
    r
}

fn options(common: &Common) -> Result<Options, String> {
    let hint = match &common.hint {
        Some(path) => Some(geolin3_cli::parse_hint(&read(path)?).map_err(|e| format!("{path}: {e}"))?),
        None => None,
    };
    Ok(Options {
        form: common.form,
        gauge: common.gauge,
        window: common.window,
        hint,
    })
}

fn run_file(command: &str, file: &str, common: &Common, f: fn(&str, &Options) -> Report) -> Report {
    let src = match read(file) {
        Ok(s) => s,
        Err(e) => return failure(command, e),
    };
    match options(common) {
        Ok(o) => f(&src, &o),
        Err(e) => failure(command, e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT_ERROR as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let start = Instant::now();
    let (report, json) = match &cli.command {
        Command::Check { file, common } => (run_file("check", file, common, geolin3_cli::check), common.json),
        Command::Linearize { file, common } => {
            (run_file("linearize", file, common, geolin3_cli::linearize), common.json)
        }
        Command::Verify { file, form, json } => {
            let opts = Options {
                form: *form,
                ..Default::default()
            };
            let r = match read(file) {
                Ok(src) => geolin3_cli::verify(&src, &opts),
                Err(e) => failure("verify", e),
            };
            (r, *json)
        }
        Command::Generate {
            file,
            seed,
            count,
            json,
        } => {
            let env_seed = std::env::var("GEOLIN3_SEED").ok();
            let seed = match env_seed.as_deref().map(str::parse::<u64>) {
                Some(Ok(s)) => Some(s),
                Some(Err(e)) => {
                    let r = failure("generate", format!("GEOLIN3_SEED: {e}"));
                    return finish(&r, *json, start);
                }
                None => *seed,
            };
            let r = match (file, seed) {
                (Some(f), _) => match read(f) {
                    Ok(src) => geolin3_cli::generate(&src),
                    Err(e) => failure("generate", e),
                },
                (None, Some(s)) => geolin3_cli::generate_seeds(s, *count),
                (None, None) => failure("generate", "give an input file or --seed".into()),
            };
            (r, *json)
        }
    };
    finish(&report, json, start)
}

fn finish(report: &Report, json: bool, start: Instant) -> ExitCode {
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
        eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    }
    ExitCode::from(report.exit_code as u8)
}
