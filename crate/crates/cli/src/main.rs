use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use optomech_cli::config::load;
use optomech_cli::{
    evaluate, run_figure, run_sweep, write_dataset, Axis, AxisName, CliError, FigureId, Metadata,
    Output, Result, SweepOptions, SweepSpec, Table,
};
use optomech_core::{solve_steady_states, Config, SpectrumMethod};

#[derive(Parser)]
#[command(
    version,
    about = "Steady states, stability, noise spectra and mode splitting of an optomechanical cavity"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON parameter file; the bundled reference set when omitted
    #[arg(long, global = true)]
    params: Option<PathBuf>,
    /// Output directory for CSV and metadata files
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Override one config key, e.g. --set power_mw=7.6 (repeatable)
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Spectrum formula
    #[arg(long, global = true, default_value = "ANALYTIC_CORRECTED")]
    method: SpectrumMethod,
    /// Add matrix-oracle columns next to the selected spectrum method
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print every steady-state branch as JSON
    SteadyState,
    /// Stability verdicts over a (power, g_q/g_l) grid
    StabilityMap {
        #[arg(long, default_value = "0.1:12:120", allow_hyphen_values = true)]
        power: String,
        #[arg(long, default_value = "-2e-5:2e-5:41", allow_hyphen_values = true)]
        gq: String,
    },
    /// Position noise spectrum at the configured operating point
    Spectrum {
        /// ω/ω_m range as min:max:points
        #[arg(long, default_value = "0.5:1.5:4001")]
        omega: String,
    },
    /// Normal-mode frequencies and widths over a (g_q/g_l, power) grid
    Peaks {
        #[arg(long, default_value = "-12e-6:20e-6:33", allow_hyphen_values = true)]
        gq: String,
        #[arg(long, default_value = "6.9:10.7:2")]
        power: String,
    },
    Fig2a,
    Fig2b,
    Fig3,
    Fig4,
    Fig5,
    /// Full report at the configured operating point
    Point,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn sweep_dataset(
    name: &str,
    config: &Config,
    opts: &SweepOptions,
    out: &Path,
    spec: SweepSpec,
) -> Result<()> {
    let table = run_sweep(config, &spec, opts)?;
    finish(name, config, opts, out, vec![spec], &table)
}

fn finish(
    name: &str,
    config: &Config,
    opts: &SweepOptions,
    out: &Path,
    sweeps: Vec<SweepSpec>,
    table: &Table,
) -> Result<()> {
    let meta = Metadata::new(name, config, opts, sweeps, table);
    for path in write_dataset(out, name, table, &meta)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let c = &cli.common;
    let config = load(c.params.as_deref(), &c.overrides)?;
    let opts = SweepOptions {
        method: c.method,
        oracle: c.oracle,
    };
    match cli.command {
        Command::SteadyState => {
            let params = config.system_params()?;
            let branches = solve_steady_states(&params, &config.drive()?)?;
            println!("{}", to_json(&branches));
        }
        Command::StabilityMap { power, gq } => {
            let spec = SweepSpec {
                axis1: Axis::parse(AxisName::PowerMw, &power)?,
                axis2: Some(Axis::parse(AxisName::GqRatio, &gq)?),
                outputs: vec![Output::Stability],
            };
            sweep_dataset("stability-map", &config, &opts, &c.out, spec)?;
        }
        Command::Spectrum { omega } => {
            let spec = SweepSpec {
                axis1: Axis::parse(AxisName::OmegaOverOmegaM, &omega)?,
                axis2: None,
                outputs: vec![Output::Spectrum],
            };
            sweep_dataset("spectrum", &config, &opts, &c.out, spec)?;
        }
        Command::Peaks { gq, power } => {
            let spec = SweepSpec {
                axis1: Axis::parse(AxisName::GqRatio, &gq)?,
                axis2: Some(Axis::parse(AxisName::PowerMw, &power)?),
                outputs: vec![Output::Peaks, Output::EffectiveCoupling],
            };
            sweep_dataset("peaks", &config, &opts, &c.out, spec)?;
        }
        Command::Fig2a => figure(FigureId::Fig2a, &config, &opts, &c.out)?,
        Command::Fig2b => figure(FigureId::Fig2b, &config, &opts, &c.out)?,
        Command::Fig3 => figure(FigureId::Fig3, &config, &opts, &c.out)?,
        Command::Fig4 => figure(FigureId::Fig4, &config, &opts, &c.out)?,
        Command::Fig5 => figure(FigureId::Fig5, &config, &opts, &c.out)?,
        Command::Point => {
            let report = evaluate(&config)?;
            println!("{}", to_json(&report));
            if !report.stability.eig_stable {
                return Err(CliError::Unstable(format!(
                    "max Re λ = {:e}",
                    report.stability.max_re_eigenvalue
                )));
            }
        }
    }
    Ok(())
}

fn figure(id: FigureId, config: &Config, opts: &SweepOptions, out: &Path) -> Result<()> {
    let table = run_figure(id, config, opts)?;
    let sweeps = optomech_cli::figures::figure_sweeps(id)
        .into_iter()
        .map(|(_, _, s)| s)
        .collect();
    finish(id.as_str(), config, opts, out, sweeps, &table)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}
