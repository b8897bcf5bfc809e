use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use cgheight::cli::{run, JobSpec};
use cgheight::error::{Error, Result};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Text,
    Structured,
}

/// Local p-adic heights and Coleman integrals on odd-degree hyperelliptic curves.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Args {
    /// Job description (TOML); `-` reads standard input.
    #[arg(long)]
    job: String,
    /// 0: results only, 1: intermediate values, 2: everything.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=2))]
    verbosity: u8,
    #[arg(long, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
}

fn read_job(path: &str) -> Result<JobSpec> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?
    };
    JobSpec::from_toml(&text)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = read_job(&args.job).and_then(|job| run(&job));
    match outcome {
        Ok(report) => {
            let out = match args.emit {
                Emit::Text => report.render_text(args.verbosity),
                Emit::Structured => report.render_structured(args.verbosity),
            };
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match args.emit {
                Emit::Text => eprintln!("error[{}]: {e}", e.code()),
                Emit::Structured => println!(
                    "{}",
                    serde_json::json!({ "error": { "code": e.code(), "message": e.to_string() } })
                ),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
