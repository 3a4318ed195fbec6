use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{Map, Value};

use xlag::manybody::{
    constancy_scan_with, local_energy_with, LocalEnergyOptions, ScanStatistics, DEFAULT_FD_STEP,
};
use xlag::model::{derived_params, energy_level, ext_constants, DerivedParams, ExtConstants};
use xlag::{Configuration, ModelParams};

mod tables;
mod verify;

/// Rationally extended truncated Calogero-Sutherland model: tables and
/// numerical verification.
///
/// Exit codes: 0 success, 1 usage or configuration error, 2 verification failure.
#[derive(Parser, Debug)]
#[command(name = "xlag", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Write CSV tables of exceptional Laguerre polynomials (n, m, alpha, g, value).
    #[arg(long, hide = true, value_name = "PATH")]
    dump_polynomials: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print derived quantities: tau, alpha, pair count, E_0..E_4 and, at m = 1, the rational-ansatz constants.
    Params {
        #[command(flatten)]
        model: ModelArgs,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Write a CSV table.
    Table {
        what: TableKind,
        #[command(flatten)]
        model: ModelArgs,
        /// Output file; standard output if absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Outer end of the rho grid (potential and wavefunction tables).
        #[arg(long, value_name = "X")]
        rho_max: Option<f64>,
        /// Number of grid points.
        #[arg(long, value_name = "N")]
        points: Option<usize>,
        /// Number of levels in the spectrum table.
        #[arg(long, value_name = "K", default_value_t = 4)]
        levels: u32,
        /// Level shown in the wavefunction table.
        #[arg(long, value_name = "n", default_value_t = 0)]
        level: u32,
    },
    /// Run verification suites and write JSON and text reports.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        /// Directory for the reports; only printed if absent.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        /// Levels checked by the residual, spectrum and orthogonality suites.
        #[arg(long, value_name = "K", default_value_t = 4)]
        levels: u32,
        /// Coarse grid points of the eigensolver.
        #[arg(long, value_name = "N")]
        points: Option<usize>,
        #[arg(long, value_name = "S", default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Scale V_new by F in the spectrum and local-energy Hamiltonians (negative control).
        #[arg(long, value_name = "F", default_value_t = 1.0)]
        perturb: f64,
    },
    /// Local energy of the N-body ground state over seeded configurations, or at one configuration.
    LocalEnergy {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_name = "S", default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_name = "COUNT", default_value_t = verify::DEFAULT_SAMPLES)]
        samples: usize,
        /// Evaluate at these comma-separated positions instead of sampling.
        #[arg(
            long,
            value_name = "X1,X2,...",
            value_delimiter = ',',
            allow_hyphen_values = true
        )]
        positions: Option<Vec<f64>>,
        /// Finite-difference step.
        #[arg(long, value_name = "H", default_value_t = DEFAULT_FD_STEP)]
        step: f64,
        /// Scale V_new by F in the Hamiltonian (negative control).
        #[arg(long, value_name = "F", default_value_t = 1.0)]
        perturb: f64,
        /// Write the JSON report here as well as to standard output.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Potential,
    Wavefunction,
    Spectrum,
}

/// Parameters from a JSON file, overridden by flags.
#[derive(Args, Debug)]
struct ModelArgs {
    /// JSON file with keys N, lambda, r, omega, s, m.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long = "N", value_name = "N")]
    n_particles: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long = "r", value_name = "R")]
    range: Option<usize>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long = "s", value_name = "S")]
    degree: Option<u32>,
    #[arg(long = "m", value_name = "M")]
    m: Option<u32>,
}

impl ModelArgs {
    fn resolve(&self) -> Result<ModelParams> {
        let mut doc = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                match serde_json::from_str::<Value>(&text)
                    .with_context(|| format!("parsing {}", path.display()))?
                {
                    Value::Object(map) => map,
                    _ => bail!("{}: expected a JSON object", path.display()),
                }
            }
            None => Map::new(),
        };
        let mut set = |key: &str, v: Option<Value>| {
            if let Some(v) = v {
                doc.insert(key.to_string(), v);
            }
        };
        set("N", self.n_particles.map(Value::from));
        set("lambda", self.lambda.map(Value::from));
        set("r", self.range.map(Value::from));
        set("omega", self.omega.map(Value::from));
        set("s", self.degree.map(Value::from));
        set("m", self.m.map(Value::from));
        serde_json::from_value(Value::Object(doc)).map_err(|e| anyhow!("invalid parameters: {e}"))
    }
}

/// Fixed 17-significant-digit formatting for all numeric output.
pub(crate) fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ParamsSummary {
    params: ModelParams,
    derived: DerivedParams,
    energies: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ext_constants: Option<ExtConstants>,
    warnings: Vec<String>,
}

fn cmd_params(p: &ModelParams, json: bool) -> Result<()> {
    let summary = ParamsSummary {
        params: *p,
        derived: derived_params(p),
        energies: (0..5).map(|n| energy_level(n, p)).collect(),
        ext_constants: (p.m() == 1).then(|| ext_constants(p)).transpose()?,
        warnings: p.warnings(),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&summary)?);
        return Ok(());
    }
    let d = summary.derived;
    println!(
        "N={} lambda={} r={} omega={} s={} m={}",
        p.n_particles(),
        p.lambda(),
        p.range(),
        p.omega(),
        p.degree(),
        p.m()
    );
    println!("tau        {}", num(d.tau));
    println!("alpha      {}", num(d.alpha));
    println!("pair_count {}", d.pair_count);
    for (n, e) in summary.energies.iter().enumerate() {
        println!("E_{n}        {}", num(*e));
    }
    if let Some(c) = summary.ext_constants {
        println!("alpha1     {}", num(c.alpha1));
        println!("alpha2     {}", num(c.alpha2));
        println!("beta1      {}", num(c.beta1));
        println!("beta2      {}", num(c.beta2));
    }
    for w in &summary.warnings {
        println!("warning: {w}");
    }
    Ok(())
}

fn cmd_local_energy(
    p: &ModelParams,
    seed: u64,
    samples: usize,
    positions: Option<Vec<f64>>,
    step: f64,
    perturb: f64,
    out: Option<&Path>,
) -> Result<bool> {
    let opts = LocalEnergyOptions {
        step,
        v_new_scale: perturb,
        ..Default::default()
    };
    if let Some(x) = positions {
        let c = Configuration::from_unsorted(x)?;
        let e = local_energy_with(&c, p, &opts)?;
        println!("local_energy {}", num(e));
        println!("E_0          {}", num(energy_level(0, p)));
        return Ok(true);
    }
    let stats: ScanStatistics = constancy_scan_with(p, samples, seed, &opts)?;
    let json = serde_json::to_string_pretty(&stats)?;
    println!("{json}");
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_output(Some(&dir.join("local-energy.json")), &format!("{json}\n"))?;
    }
    Ok(stats.pass)
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("XLAG_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| anyhow!("XLAG_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

/// `Ok(true)` when everything ran and passed, `Ok(false)` on a verification failure.
fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    if let Some(path) = &cli.dump_polynomials {
        write_output(Some(path), &tables::polynomial_dump())?;
        if cli.command.is_none() {
            return Ok(true);
        }
    }
    let Some(command) = cli.command else {
        bail!("no subcommand given; see --help");
    };
    match command {
        Command::Params { model, json } => {
            cmd_params(&model.resolve()?, json)?;
            Ok(true)
        }
        Command::Table {
            what,
            model,
            out,
            rho_max,
            points,
            levels,
            level,
        } => {
            let p = model.resolve()?;
            let csv = match what {
                TableKind::Potential => tables::potential(&p, rho_max, points, level)?,
                TableKind::Wavefunction => tables::wavefunction(&p, rho_max, points, level)?,
                TableKind::Spectrum => tables::spectrum(&p, levels, points)?,
            };
            write_output(out.as_deref(), &csv)?;
            Ok(true)
        }
        Command::Verify {
            model,
            suite,
            out,
            levels,
            points,
            seed,
            perturb,
        } => {
            let p = model.resolve()?;
            let opts = verify::Options {
                levels,
                points,
                seed,
                perturb,
            };
            verify::run(&p, suite, &opts, out.as_deref())
        }
        Command::LocalEnergy {
            model,
            seed,
            samples,
            positions,
            step,
            perturb,
            out,
        } => cmd_local_energy(
            &model.resolve()?,
            seed,
            samples,
            positions,
            step,
            perturb,
            out.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
