use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use depsym::scenario::{list_presets, preset, run, ScenarioConfig};
use depsym::verdict::Tolerances;

#[derive(Parser)]
#[command(name = "depsym", version, about = "Verify dependent symmetries of reduced open-system dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario from a JSON config file
    Run {
        config: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Run a built-in preset
    Preset {
        name: String,
        /// Print the preset config as JSON instead of running it
        #[arg(long)]
        dump: bool,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// List built-in presets
    List,
    /// Parse and validate a config without running it
    Validate { config: PathBuf },
}

#[derive(Args)]
struct RunOpts {
    /// Output directory for report.json and CSV files
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    tol_accept: Option<f64>,
    #[arg(long)]
    tol_reject: Option<f64>,
    #[arg(long)]
    cutoff_bump: Option<usize>,
    #[arg(long)]
    grid_points: Option<usize>,
}

impl RunOpts {
    fn apply(&self, cfg: &mut ScenarioConfig) {
        if self.tol_accept.is_some() || self.tol_reject.is_some() {
            cfg.tolerances = Tolerances {
                accept: self.tol_accept.unwrap_or(cfg.tolerances.accept),
                reject: self.tol_reject.unwrap_or(cfg.tolerances.reject),
            };
        }
        if let Some(b) = self.cutoff_bump {
            cfg.cutoff_bump = b;
        }
        if let Some(p) = self.grid_points {
            cfg.t_grid.points = p;
        }
    }
}

fn load(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ScenarioConfig::from_json(&text).with_context(|| format!("in {}", path.display()))
}

fn execute(mut cfg: ScenarioConfig, opts: &RunOpts) -> Result<bool> {
    opts.apply(&mut cfg);
    let output = run(&cfg)?;
    output.write(&opts.out).with_context(|| format!("writing to {}", opts.out.display()))?;
    let r = &output.report;
    for s in &r.symmetries {
        println!("symmetry {:<28} {:>10.3e}  {:?}", s.unitary.name(), s.max_defect, s.verdict);
    }
    for t in &r.templates {
        println!("template {:<28} {:>10.3e}  {}", t.name, t.max_violation, if t.holds { "holds" } else { "fails" });
    }
    if let Some(scan) = &r.constants_scan {
        println!("constants {:?}", scan.classification);
    }
    for c in &r.claims {
        println!("claim    {:<28} {:>10.3e}  {}", c.observable, c.max_defect, c.statement);
    }
    if let Some(l) = &r.leakage {
        println!("leakage  cutoff {} vs {}  {:.3e}", l.cutoff_used, l.comparison_cutoff, l.max_relative_shift);
    }
    for e in &r.errors {
        eprintln!("error: {e}");
    }
    for x in r.expectations.iter().filter(|x| !x.passed) {
        println!("FAILED   {}: {}", x.check, x.detail);
    }
    println!("{} {}", r.name, if r.passed { "passed" } else { "FAILED" });
    Ok(r.passed)
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<bool> {
    match Cli::parse().command {
        Command::Run { config, opts } => {
            let mut cfg = load(&config)?;
            if cfg.name.is_empty() {
                cfg.name = config.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            }
            execute(cfg, &opts)
        }
        Command::Preset { name, dump, opts } => {
            let cfg = preset(&name)?;
            if dump {
                println!("{}", cfg.to_json()?);
                return Ok(true);
            }
            execute(cfg, &opts)
        }
        Command::List => {
            for p in list_presets() {
                println!("{:<26} {}", p.name, p.summary);
            }
            Ok(true)
        }
        Command::Validate { config } => {
            let cfg = load(&config)?;
            cfg.validate()?;
            println!("{}: ok", config.display());
            Ok(true)
        }
    }
}
