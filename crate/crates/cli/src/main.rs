use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grassvol::flag::{flag_descriptor, flag_volume, in_kernel, spectral_type};
use grassvol::grassmann::{grassmann_volume, mc_volume};
use grassvol::holonomy::{
    convergence_table, holonomy, BuiltinFamily, Integrator, ParameterLoop, DEFAULT_STEP,
};
use grassvol::linalg::ComplexMatrix;
use grassvol_cli::checks::{
    gate_checks, pauli_checks, synth_random_check, Check, GATE_T_MAX, MC_MAX_RELATIVE,
    MC_MAX_Z, PAULI_N_MAX,
};
use grassvol_cli::{
    all_pass, emit_report, run_all, run_checks, run_suite, CliError, CliResult, Config,
    ReportFormat, VerificationRecord,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "grassvol", version, about = "Numerical verification of Grassmannian volumes, qubit gate identities and holonomy")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Base seed for every randomised check.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance replacing each deterministic check's default.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// key=value config file; falls back to $GRASSVOL_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Record wall-clock runtimes in reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Grassmannian volumes.
    Grassmann {
        #[command(subcommand)]
        action: GrassmannAction,
    },
    /// Integer-spectrum Hermitian matrices.
    Flag {
        #[command(subcommand)]
        action: FlagAction,
    },
    /// Qubit gate identities.
    Gates {
        #[command(subcommand)]
        action: GatesAction,
    },
    /// Clock and shift matrices.
    Pauli {
        #[command(subcommand)]
        action: PauliAction,
    },
    /// Controlled-gate synthesis.
    Synth {
        #[command(subcommand)]
        action: SynthAction,
    },
    /// Adiabatic holonomy.
    Holonomy {
        #[command(subcommand)]
        action: HolonomyAction,
    },
    /// Every registered check, or the ones named with --only.
    VerifyAll {
        /// Restrict to these check ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Report as CSV (JSON otherwise).
        #[arg(long)]
        csv: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Print the available check ids and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum GrassmannAction {
    /// Monte-Carlo volume against the closed form.
    VerifyVolume {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: Option<u64>,
    },
}

#[derive(Subcommand)]
enum FlagAction {
    /// Spectral type and flag descriptor of a Hermitian matrix stored as JSON.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum GatesAction {
    Verify {
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
}

#[derive(Subcommand)]
enum PauliAction {
    Verify {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum SynthAction {
    Verify {
        #[arg(long, default_value_t = 2)]
        controls: usize,
        #[arg(long)]
        trials: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LoopShape {
    Circle,
}

#[derive(Subcommand)]
enum HolonomyAction {
    /// Holonomy of a circle through the base point.
    Run {
        #[arg(long, default_value = "rotation")]
        family: String,
        #[arg(long = "loop", value_enum, default_value = "circle")]
        shape: LoopShape,
        #[arg(long, default_value_t = 0.8)]
        radius: f64,
        #[arg(long)]
        steps: Option<usize>,
    },
}

fn load_config(g: &GlobalArgs) -> CliResult<Config> {
    let mut c = Config::load(g.config.as_deref())?;
    if let Some(s) = g.seed {
        c.seed = s;
    }
    if let Some(t) = g.tol {
        c.set("tol", &t.to_string())?;
    }
    if let Some(w) = g.workers {
        c.workers = w;
    }
    if g.timing {
        c.timing = true;
    }
    Ok(c)
}

fn print_records(records: &[VerificationRecord], json: bool) -> CliResult<()> {
    if json {
        return emit_report(records, ReportFormat::Json, None);
    }
    for r in records {
        let seed = r.seed.map(|s| format!(" seed={s}")).unwrap_or_default();
        println!(
            "{} {} max_error={:e}{seed}",
            r.status.as_str().to_uppercase(),
            r.check_id,
            r.max_error
        );
    }
    Ok(())
}

fn verdict(records: &[VerificationRecord]) -> u8 {
    if all_pass(records) {
        0
    } else {
        1
    }
}

fn run_group(checks: Vec<Check>, config: &Config, json: bool) -> CliResult<u8> {
    let records = run_checks(&checks, config)?;
    print_records(&records, json)?;
    Ok(verdict(&records))
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| CliError::Serialise(e.to_string()))?;
    println!("{s}");
    Ok(())
}

#[derive(Serialize)]
struct VolumeReport {
    k: usize,
    n: usize,
    closed_form: f64,
    mc_mean: f64,
    mc_stderr: f64,
    z_score: f64,
    samples: u64,
    seed: u64,
}

fn verify_volume(k: usize, n: usize, samples: Option<u64>, config: &Config, json: bool) -> CliResult<u8> {
    let samples = samples.unwrap_or(config.mc_samples);
    let closed_form = grassmann_volume(k as u64, n as u64)?;
    let est = mc_volume(k, n, samples, config.seed)?;
    let z = est.z_score(closed_form);
    let report = VolumeReport {
        k,
        n,
        closed_form,
        mc_mean: est.mean,
        mc_stderr: est.standard_error,
        z_score: z,
        samples,
        seed: config.seed,
    };
    if json {
        print_json(&report)?;
    } else {
        println!(
            "G({k},{n}): closed form {closed_form:.12}, estimate {:.12} ± {:.3e} (z = {z:.3}, {samples} samples, seed {})",
            est.mean, est.standard_error, config.seed
        );
    }
    let rel = (est.mean - closed_form).abs() / closed_form;
    Ok(if z.abs() <= MC_MAX_Z && rel <= MC_MAX_RELATIVE { 0 } else { 1 })
}

#[derive(Serialize)]
struct ClassifyReport {
    in_kernel: bool,
    spectral_type: Vec<(i64, usize)>,
    blocks: Vec<usize>,
    complex_dimension: usize,
    flag_volume: f64,
}

fn read_matrix(path: &Path) -> CliResult<ComplexMatrix> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn classify(input: &Path, config: &Config, json: bool) -> CliResult<u8> {
    let x = read_matrix(input)?;
    if !in_kernel(&x, config.tolerance(1e-9))? {
        if json {
            print_json(&serde_json::json!({ "in_kernel": false }))?;
        } else {
            println!("not in the kernel of exp(2πi·)");
        }
        return Ok(1);
    }
    let t = spectral_type(&x)?;
    let d = flag_descriptor(&t);
    let report = ClassifyReport {
        in_kernel: true,
        spectral_type: t.pairs().to_vec(),
        flag_volume: flag_volume(&d.blocks)?,
        blocks: d.blocks,
        complex_dimension: d.complex_dimension,
    };
    if json {
        print_json(&report)?;
    } else {
        let ty: Vec<String> = report.spectral_type.iter().map(|(v, m)| format!("{v}^{m}")).collect();
        println!("spectral type {}", ty.join(" "));
        println!("blocks {:?}, complex dimension {}", report.blocks, report.complex_dimension);
        println!("flag volume {:.12}", report.flag_volume);
    }
    Ok(0)
}

#[derive(Serialize)]
struct HolonomyReport {
    family: &'static str,
    radius: f64,
    steps: usize,
    /// Row-major `[re, im]` pairs.
    gamma: ComplexMatrix,
    unitarity_deviation: f64,
    connection_residue: f64,
    convergence: Vec<grassvol::holonomy::ConvergenceRow>,
}

fn run_holonomy(family: &str, radius: f64, steps: Option<usize>, config: &Config, json: bool) -> CliResult<u8> {
    let f = BuiltinFamily::from_name(family).map_err(|e| CliError::Config(e.to_string()))?;
    let steps = steps.unwrap_or(config.holonomy_steps);
    let vac = f.vacuum();
    let hol = holonomy(&f, &vac, &ParameterLoop::circle_through_origin(radius, steps)?, DEFAULT_STEP)?;
    let ladder: Vec<usize> = (0..4).map(|i| (steps >> (3 - i)).max(2)).collect();
    let convergence = convergence_table(
        &f,
        &vac,
        |k| ParameterLoop::circle_through_origin(radius, k),
        &ladder,
        DEFAULT_STEP,
        Integrator::Exponential,
    )?;
    let report = HolonomyReport {
        family: f.name(),
        radius,
        steps,
        gamma: hol.gamma,
        unitarity_deviation: hol.unitarity_deviation,
        connection_residue: hol.connection_residue,
        convergence,
    };
    if json {
        print_json(&report)?;
    } else {
        println!("{} around a circle of radius {radius}, {steps} steps", report.family);
        println!("Γ = {:?}", report.gamma);
        println!("unitarity deviation {:e}", report.unitarity_deviation);
        println!("connection residue {:e}", report.connection_residue);
        for row in &report.convergence {
            match row.change {
                Some(c) => println!("  {:>8} steps: change {c:e}", row.steps),
                None => println!("  {:>8} steps", row.steps),
            }
        }
    }
    Ok(0)
}

fn dispatch(cli: Cli) -> CliResult<u8> {
    let config = load_config(&cli.global)?;
    let json = cli.global.json;
    match cli.command {
        Command::Grassmann { action: GrassmannAction::VerifyVolume { k, n, samples } } => {
            verify_volume(k, n, samples, &config, json)
        }
        Command::Flag { action: FlagAction::Classify { input } } => classify(&input, &config, json),
        Command::Gates { action: GatesAction::Verify { t } } => {
            if !(1..=grassvol::gates::MAX_QUBITS).contains(&t) {
                return Err(CliError::Config(format!(
                    "t must be in 1..={}",
                    grassvol::gates::MAX_QUBITS
                )));
            }
            if t > GATE_T_MAX {
                eprintln!("note: t = {t} is beyond the default suite; exhaustive checks grow as 8^t");
            }
            run_group(gate_checks(t), &config, json)
        }
        Command::Pauli { action: PauliAction::Verify { n } } => {
            if n < 2 {
                return Err(CliError::Config("n must be ≥ 2".into()));
            }
            if n > PAULI_N_MAX {
                eprintln!("note: n = {n} is beyond the default suite");
            }
            run_group(pauli_checks(n), &config, json)
        }
        Command::Synth { action: SynthAction::Verify { controls, trials } } => {
            if !(2..=3).contains(&controls) {
                return Err(CliError::Config("controls must be 2 or 3".into()));
            }
            let mut config = config;
            if let Some(t) = trials {
                config.synth_trials = t;
            }
            run_group(vec![synth_random_check(controls)], &config, json)
        }
        Command::Holonomy { action: HolonomyAction::Run { family, shape: LoopShape::Circle, radius, steps } } => {
            run_holonomy(&family, radius, steps, &config, json)
        }
        Command::VerifyAll { only, csv, output, list } => {
            if list {
                for id in grassvol_cli::check_ids() {
                    println!("{id}");
                }
                return Ok(0);
            }
            let records = if only.is_empty() { run_all(&config)? } else { run_suite(&only, &config)? };
            let format = if csv { ReportFormat::Csv } else { ReportFormat::Json };
            emit_report(&records, format, output.as_deref())?;
            Ok(verdict(&records))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
