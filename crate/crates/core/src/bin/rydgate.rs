use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rydgate::cli::{self, regress, CliError, ExperimentConfig};

#[derive(Parser)]
#[command(name = "rydgate", version, about = "Rydberg gate protocol simulator")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an experiment config (TOML)
    Run { config: PathBuf },
    /// Run the pinned reference suite
    Regress {
        #[arg(long)]
        json: bool,
    },
    /// List protocols with their parameter schemas
    ListProtocols {
        #[arg(long)]
        json: bool,
    },
}

fn init_pool() -> Result<(), CliError> {
    if let Ok(v) = std::env::var(cli::THREADS_ENV) {
        let n: usize = v.parse().map_err(|_| {
            CliError::Schema(format!("{} must be a positive integer", cli::THREADS_ENV))
        })?;
        if n == 0 {
            return Err(CliError::Schema(format!(
                "{} must be a positive integer",
                cli::THREADS_ENV
            )));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(())
}

fn list(json: bool) {
    let cat = cli::catalog();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&cat).expect("catalog serializes")
        );
        return;
    }
    for p in &cat {
        println!("{}  [{}]", p.name, p.anchor);
        println!("    {}", p.summary);
        for s in &p.params {
            let unit = if s.unit.is_empty() {
                String::new()
            } else {
                format!(" [{}]", s.unit)
            };
            println!(
                "    {:<22} {:?}{unit} = {}  {}",
                s.name,
                s.kind,
                s.default.render(),
                s.help
            );
        }
        println!("    metrics: {}", p.metrics.join(", "));
    }
}

fn execute(args: Args) -> Result<(), CliError> {
    init_pool()?;
    match args.cmd {
        Cmd::Run { config } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::Schema(format!("{}: {e}", config.display())))?;
            let cfg = ExperimentConfig::parse(&text)?;
            cli::run_and_write(&cfg)?;
        }
        Cmd::Regress { json } => {
            let checks = regress::regress();
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&regress::report_json(&checks))
                        .expect("report serializes")
                );
            } else {
                print!("{}", regress::report_text(&checks));
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            if failed > 0 {
                return Err(CliError::Regression(failed));
            }
        }
        Cmd::ListProtocols { json } => list(json),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match execute(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
