//! Command-line front-end: spectrum inspection, stability checks, region
//! scans, growth simulations and direct quartic checks, all driven by an
//! INI-style config file. `check` exits 0 when stable, 1 when unstable and
//! 2 on any error; every other command exits 0 on success and 2 on error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use netstab::config::{load_config, RunConfig};
use netstab::csvio::{self, GrowthRecord};
use netstab::report;
use netstab::svg;
use netstab_core::network::{directed_laplacian, spectrum};
use netstab_core::scan::{scan_lambda_plane, scan_parameter_plane, RegionMap, ScanAxis};
use netstab_core::sim::{integrate, perturbation_experiment, perturbed_state, suggested_dt};
use netstab_core::{dispersion, rh, Complex64, ComplexQuartic};

#[derive(Parser)]
#[command(
    name = "netstab",
    version,
    about = "Linear stability of reaction-diffusion dynamics with inertial transport on directed networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the configured network's Laplacian spectrum as CSV
    Spectrum(RunArgs),
    /// Judge stability of the configured model on its network (exit 0 stable, 1 unstable)
    Check(RunArgs),
    /// Map a stability region as CSV; defaults to the eigenvalue plane over
    /// real part [-6, 0] and imaginary part [-3, 3] at resolution 61
    Scan(ScanArgs),
    /// Integrate a seeded perturbation and fit its growth rate
    Simulate(RunArgs),
    /// Judge one quartic z^4 + (a1+i b1) z^3 + ... + (a4+i b4) directly
    Roots(RootsArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Run configuration file
    #[arg(long)]
    config: PathBuf,
    /// Write the command's primary output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replace every seed in the config (network generator and simulation)
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Also write an SVG heatmap next to --out (spectrum overlaid when a
    /// network is configured)
    #[arg(long, requires = "out")]
    svg: bool,
}

#[derive(Args)]
struct RootsArgs {
    /// Eight numbers a1 b1 a2 b2 a3 b3 a4 b4
    #[arg(
        num_args = 8,
        required = true,
        allow_negative_numbers = true,
        value_name = "COEFF"
    )]
    coefficients: Vec<f64>,
}

type CmdResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Spectrum(args) => cmd_spectrum(&args),
        Command::Check(args) => cmd_check(&args),
        Command::Scan(args) => cmd_scan(&args),
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Roots(args) => cmd_roots(&args),
    }
}

fn load(args: &RunArgs) -> Result<RunConfig, Box<dyn std::error::Error>> {
    let mut cfg = load_config(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.override_seeds(seed);
    }
    Ok(cfg)
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_spectrum(args: &RunArgs) -> CmdResult {
    let cfg = load(args)?;
    let a = cfg.adjacency()?;
    let s = spectrum(&directed_laplacian(&a))?;
    emit(&args.out, &csvio::write_spectrum_csv(&s))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(args: &RunArgs) -> CmdResult {
    let cfg = load(args)?;
    let j = cfg.require_model()?.build().jacobian();
    let t = *cfg.require_transport()?;
    let a = cfg.adjacency()?;
    let s = spectrum(&directed_laplacian(&a))?;
    let verdict = dispersion::network_verdict(&j, &t, &s);
    let record = report::build_report(&j, &t, &verdict);

    print!("{}", report::render_text(&record));
    match &args.out {
        Some(path) => fs::write(path, record.to_json())?,
        None => println!("{}", record.to_json()),
    }
    Ok(if record.stable {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn lambda_plane_axes(cfg: &RunConfig) -> bool {
    cfg.scan
        .as_ref()
        .is_some_and(|s| s.axis1.axis == ScanAxis::LambdaRe && s.axis2.axis == ScanAxis::LambdaIm)
}

fn build_map(cfg: &RunConfig) -> Result<RegionMap, Box<dyn std::error::Error>> {
    let scan = cfg.require_scan()?;
    let t = cfg.require_transport()?;
    let model = cfg.require_model()?;
    if lambda_plane_axes(cfg) {
        let j = model.build().jacobian();
        let map = scan_lambda_plane(
            &j,
            t,
            (scan.axis1.min, scan.axis1.max),
            (scan.axis2.min, scan.axis2.max),
            scan.resolution,
        )?;
        return Ok(map);
    }

    // Parameter plane: judge each grid point against fixed eigenvalue
    // samples. An explicit lambda list wins over a configured network.
    let samples: Vec<Complex64> = if let Some(list) = &scan.lambda {
        list.clone()
    } else if cfg.network.is_some() {
        let a = cfg.adjacency()?;
        spectrum(&directed_laplacian(&a))?.eigenvalues().to_vec()
    } else {
        let both_lambda = matches!(scan.axis1.axis, ScanAxis::LambdaRe | ScanAxis::LambdaIm)
            && matches!(scan.axis2.axis, ScanAxis::LambdaRe | ScanAxis::LambdaIm);
        if both_lambda {
            vec![Complex64::new(0.0, 0.0)]
        } else {
            return Err("parameter scans need a [network] section or a lambda sample list".into());
        }
    };
    let map = scan_parameter_plane(
        model.parameters(),
        t,
        scan.axis1,
        scan.axis2,
        scan.resolution,
        &samples,
    )?;
    Ok(map)
}

fn cmd_scan(args: &ScanArgs) -> CmdResult {
    let cfg = load(&args.run)?;
    let map = build_map(&cfg)?;
    emit(&args.run.out, &csvio::write_region_csv(&map))?;
    eprintln!(
        "scan: {}x{} cells, stable fraction {:.3}",
        map.resolution,
        map.resolution,
        map.stable_fraction()
    );

    if args.svg {
        let overlay = if lambda_plane_axes(&cfg) && cfg.network.is_some() {
            let a = cfg.adjacency()?;
            spectrum(&directed_laplacian(&a))?.eigenvalues().to_vec()
        } else {
            Vec::new()
        };
        let mut path = args
            .run
            .out
            .clone()
            .expect("clap enforces --out with --svg");
        path.set_extension("svg");
        fs::write(&path, svg::render_region_svg(&map, &overlay))?;
        eprintln!("svg: {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(args: &RunArgs) -> CmdResult {
    let cfg = load(args)?;
    let model = cfg.require_model()?.build();
    let j = model.jacobian();
    let t = *cfg.require_transport()?;
    let sim = cfg.require_sim()?.clone();
    let a = cfg.adjacency()?;
    let l = directed_laplacian(&a);

    let suggested = suggested_dt(&j, &t, &l);
    let dt = sim.dt.unwrap_or(suggested);
    if dt > 5.0 * suggested {
        eprintln!(
            "warning: dt = {dt} exceeds the step heuristic {suggested:.3e}; expect blow-up or \
             inaccurate rates"
        );
    }

    let est = perturbation_experiment(&model, &t, &l, sim.amplitude, sim.seed, dt, sim.horizon)?;
    let record = GrowthRecord::new(sim.seed, &est);

    // The exported trajectory reproduces the experiment: same seed, same
    // sampling stride.
    let steps = (sim.horizon / dt) as usize;
    let init = perturbed_state(&model, l.n(), sim.amplitude, sim.seed)?;
    let traj = integrate(&model, &t, &l, &init, dt, steps, (steps / 512).max(1))?;
    emit(&args.out, &csvio::write_trajectory_csv(&traj))?;

    let s = spectrum(&l)?;
    let verdict = dispersion::network_verdict(&j, &t, &s);
    let predicted = verdict.dominant.and_then(|d| verdict.modes[d].growth_rate);

    // Keep stdout clean for the CSV when no --out is given.
    let note = |line: String| {
        if args.out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    };
    note(format!(
        "fitted rate    {:+.4e}  (residual {:.2e}, window {:.1}..{:.1})",
        est.rate, est.residual, est.fit_window.0, est.fit_window.1
    ));
    match predicted {
        Some(p) => {
            note(format!("predicted rate {p:+.4e}  (dominant mode)"));
            note(format!("difference     {:+.2e}", est.rate - p));
        }
        None => note(String::from(
            "predicted rate unavailable (root finding failed)",
        )),
    }
    note(format!("verdict        {}", record.verdict));
    note(record.to_json());
    Ok(ExitCode::SUCCESS)
}

const PIVOT_NAMES: [&str; 4] = ["a1_1", "a2_2", "a3_3", "a4_4"];

fn cmd_roots(args: &RootsArgs) -> CmdResult {
    let c = &args.coefficients;
    let q = ComplexQuartic::new([c[0], c[2], c[4], c[6]], [c[1], c[3], c[5], c[7]])?;
    let verdict = rh::is_stable(&q);
    for (name, pivot) in PIVOT_NAMES.iter().zip(verdict.pivots) {
        println!("pivot {name}  {pivot:+.6e}");
    }
    match verdict.failing_index {
        None => println!("verdict: stable (all pivots positive)"),
        Some(i) => println!(
            "verdict: unstable (first nonpositive pivot {})",
            PIVOT_NAMES[i]
        ),
    }

    let mut roots = q.roots()?;
    roots.sort_by(|a, b| b.re.total_cmp(&a.re).then(a.im.total_cmp(&b.im)));
    println!("roots:");
    for z in &roots {
        println!("  {:+.6} {:+.6}i", z.re, z.im);
    }
    Ok(ExitCode::SUCCESS)
}
