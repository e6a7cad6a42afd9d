use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use majprop::algebra::format;
use majprop_cli::error::{CliError, CliResult, EXIT_OK};
use majprop_cli::experiments::{run_fig1, run_fig2, run_propagate};
use majprop_cli::verify::{run_verify, SUITES};
use majprop_cli::{with_threads, ExperimentConfig};

#[derive(Parser)]
#[command(name = "majprop", version, about = "Majorana propagation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON config; flags given here take precedence over its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    flags: ExperimentConfig,
}

impl Common {
    fn resolve(&self) -> CliResult<ExperimentConfig> {
        let base = match &self.config {
            Some(p) => ExperimentConfig::from_file(p)?,
            None => ExperimentConfig::default(),
        };
        Ok(base.overlay(&self.flags))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Distance of truncated MP to Trotter-only evolution, by degree and time.
    Fig1(Common),
    /// Central hole density against time for each (U, ℓ).
    Fig2(Common),
    /// Check the analytic bounds against the dense oracle; JSON report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Run only these suites.
        #[arg(long, value_delimiter = ',', value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: Vec<String>,
    },
    /// One MP run; writes the per-step trace as CSV.
    Propagate {
        #[command(flatten)]
        common: Common,
        /// Also write the final polynomial in majpoly text form.
        #[arg(long)]
        save_polynomial: Option<PathBuf>,
    },
    /// Print the Trotter schedule as JSON.
    Color(Common),
    /// Print structural facts about a Hamiltonian as JSON.
    Validate(Common),
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Fig1(c) => {
            let cfg = c.resolve()?;
            let csv = with_threads(cfg.threads, || run_fig1(&cfg))??;
            emit(cfg.output.as_deref(), &csv)
        }
        Command::Fig2(c) => {
            let cfg = c.resolve()?;
            let csv = with_threads(cfg.threads, || run_fig2(&cfg))??;
            emit(cfg.output.as_deref(), &csv)
        }
        Command::Verify { common, suite } => {
            let cfg = common.resolve()?;
            let settings = cfg.verify()?;
            let report = with_threads(cfg.threads, || run_verify(&settings, &suite))??;
            let mut json = report.to_json();
            json.push('\n');
            emit(cfg.output.as_deref(), &json)?;
            match report.violations() {
                0 => Ok(()),
                n => Err(CliError::BoundViolation(n)),
            }
        }
        Command::Propagate { common, save_polynomial } => {
            let cfg = common.resolve()?;
            let out = with_threads(cfg.threads, || run_propagate(&cfg))??;
            if let Some(p) = save_polynomial {
                std::fs::write(p, format::to_text(&out.polynomial))?;
            }
            emit(cfg.output.as_deref(), &out.csv)
        }
        Command::Color(c) => {
            let cfg = c.resolve()?;
            let model = cfg.model_only()?;
            let doc = serde_json::json!({
                "n_majorana": model.n_modes(),
                "sparsity": model.hamiltonian.sparsity(),
                "n_groups": model.schedule.len(),
                "groups": model.schedule.groups(),
            });
            emit(cfg.output.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")))
        }
        Command::Validate(c) => {
            let cfg = c.resolve()?;
            let model = cfg.model_only()?;
            model.schedule.verify(&model.hamiltonian)?;
            let report = model.hamiltonian.validate();
            emit(cfg.output.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&report).expect("json")))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(EXIT_OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
