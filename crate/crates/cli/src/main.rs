mod settings;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ecaspectrum::eca::{canonical_rules, rule_symmetries};
use ecaspectrum::harness::{emit_outputs, rank_spectrum, ExperimentResults, SpectrumReport};
use ecaspectrum::{run_experiment, ExperimentConfig};

use settings::Settings;

const USAGE_ERROR: u8 = 1;
const RUNTIME_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ecaspectrum",
    version,
    about = "Classical and quantum memory of elementary cellular automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evolve rules from seeded random rows and rank them by C_q growth.
    Run(Box<RunArgs>),
    /// List the 88 canonical rules with their mirror/complement orbits.
    Rules,
}

#[derive(Args, Debug, Default)]
struct RunArgs {
    /// key = value file with any of the settings below; flags take precedence.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Comma list or a-b ranges of rule numbers, `all-canonical` or `all`.
    #[arg(long, value_name = "LIST")]
    rules: Option<String>,
    /// Number of cells W in the recorded row.
    #[arg(long, value_name = "N")]
    width: Option<String>,
    /// Number of update steps.
    #[arg(long, value_name = "N")]
    tmax: Option<String>,
    /// Past and future window length L.
    #[arg(long, value_name = "N")]
    window_l: Option<String>,
    /// Comma list or a-b ranges of seeds.
    #[arg(long, value_name = "LIST")]
    seeds: Option<String>,
    /// Significance level for merging pasts during classical inference.
    #[arg(long, value_name = "ALPHA")]
    chi2_alpha: Option<String>,
    /// Timesteps to measure; defaults to 1..9, 10..90, ... plus tmax.
    #[arg(long, value_name = "LIST")]
    schedule: Option<String>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<String>,
    /// Output formats, any of csv, json, svg.
    #[arg(long, value_name = "LIST")]
    format: Option<String>,
    /// Also infer C_mu (default).
    #[arg(long, overrides_with = "no_classical")]
    classical: bool,
    /// Skip classical inference; the c_mu and n_states columns stay empty.
    #[arg(long)]
    no_classical: bool,
    /// Keep only cells that differ from a neighbour before inference.
    #[arg(long)]
    kink_filter: bool,
    /// Write one PBM image per (rule, seed) trajectory.
    #[arg(long)]
    pbm: bool,
    /// Conditional-future estimator: chained or direct.
    #[arg(long, value_name = "NAME")]
    futures: Option<String>,
    /// Worker threads (defaults to all cores).
    #[arg(long, value_name = "N")]
    threads: Option<String>,
}

impl RunArgs {
    fn settings(&self) -> Result<ExperimentConfig, String> {
        let mut settings = Settings::default();
        if let Some(path) = &self.config {
            let text =
                fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            settings
                .apply_file(&text)
                .map_err(|e| format!("{}: {e}", path.display()))?;
        }
        let valued = [
            ("rules", &self.rules),
            ("width", &self.width),
            ("tmax", &self.tmax),
            ("window-l", &self.window_l),
            ("seeds", &self.seeds),
            ("chi2-alpha", &self.chi2_alpha),
            ("schedule", &self.schedule),
            ("out", &self.out),
            ("format", &self.format),
            ("futures", &self.futures),
            ("threads", &self.threads),
        ];
        for (key, value) in valued {
            if let Some(v) = value {
                settings.set(key, v).map_err(|e| format!("--{key}: {e}"))?;
            }
        }
        if self.classical {
            settings.set("classical", "true")?;
        }
        if self.no_classical {
            settings.set("classical", "false")?;
        }
        if self.kink_filter {
            settings.set("kink-filter", "true")?;
        }
        if self.pbm {
            settings.set("pbm", "true")?;
        }
        settings.finish()
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Rules => {
            print_rules();
            ExitCode::SUCCESS
        }
        Command::Run(args) => match args.settings() {
            Ok(config) => run(&config),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(USAGE_ERROR)
            }
        },
    }
}

fn print_rules() {
    let rules = canonical_rules();
    println!(
        "{} canonical rules (rule: orbit under mirror and complement)",
        rules.len()
    );
    for rule in rules {
        let orbit = rule_symmetries(u32::from(rule)).expect("rule numbers are in range");
        let orbit: Vec<String> = orbit.iter().map(u8::to_string).collect();
        println!("{rule:>3}: {}", orbit.join(" "));
    }
}

fn run(config: &ExperimentConfig) -> ExitCode {
    let results = match run_experiment(config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(RUNTIME_ERROR);
        }
    };
    for f in &results.failures {
        eprintln!("rule {} seed {} failed: {}", f.rule, f.seed, f.error);
    }
    if results.traces.is_empty() {
        eprintln!("error: every (rule, seed) unit failed");
        return ExitCode::from(RUNTIME_ERROR);
    }
    let report = match rank_spectrum(&results.traces) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(RUNTIME_ERROR);
        }
    };
    match emit_outputs(&results, &report, config) {
        Ok(paths) => {
            print_ranking(&report, &results);
            for p in paths {
                println!("wrote {}", p.display());
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(RUNTIME_ERROR);
        }
    }
    if results.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(RUNTIME_ERROR)
    }
}

fn print_ranking(report: &SpectrumReport, results: &ExperimentResults) {
    println!(
        "{} units completed, {} failed",
        results.traces.len(),
        results.failures.len()
    );
    println!("rank  rule  rate (bits per doubling of t)  final C_q");
    for (i, &rule) in report.ranking.iter().enumerate() {
        let summary = report.summary(rule).expect("ranked rules have summaries");
        let rate = summary
            .growth_rate
            .map_or_else(|| "n/a".to_string(), |r| format!("{r:+.4}"));
        let last = summary.c_q_mean.last().copied().unwrap_or(f64::NAN);
        println!("{:>4}  {rule:>4}  {rate:>29}  {last:.4}", i + 1);
    }
}
