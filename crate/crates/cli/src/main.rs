//! Command-line front end: simulate, compare, sweep, mstatic, linkage
//! and correlate subcommands.
//!
//! Exit codes: 0 success, 1 runtime/model/data errors, 2 usage and
//! configuration errors. All angles are degrees at this boundary and all
//! numeric file output carries at least nine significant digits; given
//! the same config file and flags, every output file is byte-identical
//! across runs.

mod config;

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};

use foldwing::linkage::{classify, solve, transmission_ratio, Branch, FourBar, LinkageError};
use foldwing::sim::{
    compare_configs, cycle_average, m_static, sign_noise_floor, simulate_tethered, sweep,
    tethered_average, zero_crossings, SimError, SweepParam,
};
use foldwing::telemetry::{correlate, parse_log};
use foldwing::wing::TwistCommand;

#[derive(Parser)]
#[command(
    name = "foldwing",
    version,
    about = "Articulated-wing ornithopter roll-control simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tethered run: sample the aerodynamic wrench over flapping cycles.
    Simulate {
        /// Run configuration file (TOML).
        #[arg(long)]
        config: PathBuf,
        /// Differential twist command in degrees (positive = left
        /// trailing edge up, right trailing edge down).
        #[arg(long = "twist-deg", allow_negative_numbers = true)]
        twist_deg: f64,
        /// Output CSV time series.
        #[arg(long)]
        out: PathBuf,
        /// Output JSON summary.
        #[arg(long)]
        summary: PathBuf,
    },
    /// Run all four comparison vehicles and report signed roll moments.
    Compare {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "twist-deg", allow_negative_numbers = true)]
        twist_deg: f64,
        /// Optional CSV output (variant,l_bar,sign).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep one parameter over a range of values.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// One of: psi_amp_deg, psi_mid_deg, phi_mid_deg, phase_lag_deg,
        /// u_cruise, h_com, freq_hz.
        #[arg(long)]
        param: String,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        /// Number of sweep points (>= 2), endpoints included.
        #[arg(long)]
        steps: usize,
        #[arg(long = "twist-deg", allow_negative_numbers = true)]
        twist_deg: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Extreme-fold snapshot: vertical outer panels at downstroke rates.
    Mstatic {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "twist-deg", allow_negative_numbers = true)]
        twist_deg: f64,
    },
    /// Solve a planar four-bar linkage position.
    Linkage {
        /// Crank length.
        #[arg(long)]
        a: f64,
        /// Coupler length.
        #[arg(long)]
        b: f64,
        /// Rocker length.
        #[arg(long)]
        c: f64,
        /// Ground length.
        #[arg(long)]
        d: f64,
        #[arg(long = "theta2-deg", allow_negative_numbers = true)]
        theta2_deg: f64,
        /// Assembly circuit: open or crossed.
        #[arg(long, default_value = "open")]
        branch: String,
    },
    /// Lagged control/roll-rate correlation of a flight log.
    Correlate {
        /// CSV log with header t,ctrl,roll_deg.
        #[arg(long)]
        log: PathBuf,
        /// Largest lag scanned, seconds.
        #[arg(long = "max-lag", default_value_t = 2.0)]
        max_lag: f64,
        /// Uniform resampling step, seconds.
        #[arg(long = "resample-dt", default_value_t = 0.02)]
        resample_dt: f64,
    },
}

/// Errors split by exit code.
enum CliError {
    /// Exit 2: bad flags or bad configuration.
    Usage(anyhow::Error),
    /// Exit 1: model, data or I/O failures during a valid run.
    Runtime(anyhow::Error),
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

fn usage<T>(e: impl Into<anyhow::Error>) -> CliResult<T> {
    Err(CliError::Usage(e.into()))
}

fn sim_err(e: SimError) -> CliError {
    match e {
        SimError::Config(_) => CliError::Usage(anyhow!(e)),
        SimError::InsufficientData(_) => CliError::Runtime(anyhow!(e)),
    }
}

fn runtime(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Runtime(e.into())
}

fn load_setup(path: &Path) -> CliResult<config::RunSetup> {
    config::load(path).map_err(CliError::Usage)
}

fn sign_char(sign: i8) -> char {
    match sign.cmp(&0) {
        std::cmp::Ordering::Greater => '+',
        std::cmp::Ordering::Less => '-',
        std::cmp::Ordering::Equal => '0',
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult {
    fs::write(path, contents)
        .with_context(|| format!("cannot write '{}'", path.display()))
        .map_err(runtime)
}

fn cmd_simulate(config_path: &Path, twist_deg: f64, out: &Path, summary_path: &Path) -> CliResult {
    let setup = load_setup(config_path)?;
    config::check_variant(&setup, config_path).map_err(CliError::Usage)?;
    let twist = TwistCommand::differential(twist_deg.to_radians());

    let ts = simulate_tethered(&setup.vehicle, &twist, &setup.settings).map_err(sim_err)?;
    let avg = cycle_average(&ts, setup.vehicle.drive.freq_hz, setup.settings.skip_cycles)
        .map_err(sim_err)?;
    let avg0 =
        tethered_average(&setup.vehicle, &TwistCommand::ZERO, &setup.settings).map_err(sim_err)?;
    let floor = sign_noise_floor(&setup.vehicle, avg0.l_bar);
    let sign_l: i8 = if avg.l_bar.abs() <= floor {
        0
    } else if avg.l_bar > 0.0 {
        1
    } else {
        -1
    };

    let mut csv = String::from("t,phi_deg,psi_deg,delta_a_deg,fx,fy,fz,mx,my,mz\n");
    for r in &ts.rows {
        csv.push_str(&format!(
            "{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e}\n",
            r.t,
            r.phi.to_degrees(),
            r.psi.to_degrees(),
            r.delta_a.to_degrees(),
            r.fx,
            r.fy,
            r.fz,
            r.mx,
            r.my,
            r.mz
        ));
    }
    write_file(out, &csv)?;

    let summary = serde_json::json!({
        "config_hash": setup.config_hash,
        "delta_a_deg": twist_deg,
        "l_bar": avg.l_bar,
        "m_bar": avg.m_bar,
        "n_bar": avg.n_bar,
        "thrust_bar": avg.thrust_bar,
        "lift_bar": avg.lift_bar,
        "sign_l": sign_l,
        "cycles_used": avg.cycles_used,
    });
    let text = serde_json::to_string_pretty(&summary).map_err(runtime)? + "\n";
    write_file(summary_path, &text)?;
    println!(
        "simulate: {} rows, l_bar = {:.9e}, sign_l = {}",
        ts.rows.len(),
        avg.l_bar,
        sign_l
    );
    Ok(())
}

fn cmd_compare(config_path: &Path, twist_deg: f64, out: Option<&Path>) -> CliResult {
    let setup = load_setup(config_path)?;
    config::check_variant(&setup, config_path).map_err(CliError::Usage)?;
    let rows = compare_configs(&setup.vehicle, twist_deg.to_radians(), &setup.settings)
        .map_err(sim_err)?;

    println!("{:<22} {:>20} {:>5}", "variant", "l_bar", "sign");
    for r in &rows {
        println!(
            "{:<22} {:>20.9e} {:>5}",
            r.variant.name(),
            r.l_bar,
            sign_char(r.sign)
        );
    }

    if let Some(path) = out {
        let mut csv = String::from("variant,l_bar,sign\n");
        for r in &rows {
            csv.push_str(&format!(
                "{},{:.9e},{}\n",
                r.variant.name(),
                r.l_bar,
                sign_char(r.sign)
            ));
        }
        write_file(path, &csv)?;
    }
    Ok(())
}

fn gp_script(csv_path: &Path, param: &str) -> String {
    let csv_name = csv_path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| csv_path.display().to_string());
    format!(
        "# gnuplot script for the {param} sweep\n\
         set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel '{param}'\n\
         set ylabel 'cycle average'\n\
         set grid\n\
         plot '{csv_name}' using 2:3 with linespoints title 'l_bar', \\\n\
         \x20    '' using 2:4 with linespoints title 'n_bar', \\\n\
         \x20    '' using 2:5 with linespoints title 'thrust_bar'\n"
    )
}

fn cmd_sweep(
    config_path: &Path,
    param_name: &str,
    from: f64,
    to: f64,
    steps: usize,
    twist_deg: f64,
    out: &Path,
) -> CliResult {
    if steps < 2 {
        return usage(anyhow!("sweep needs at least 2 steps, got {steps}"));
    }
    let param = match SweepParam::parse(param_name) {
        Some(p) => p,
        None => {
            return usage(anyhow!(
                "unknown sweep parameter '{param_name}'; valid: psi_amp_deg, psi_mid_deg, \
                 phi_mid_deg, phase_lag_deg, u_cruise, h_com, freq_hz"
            ))
        }
    };
    let setup = load_setup(config_path)?;

    // CLI units (degrees for angles) -> internal radians
    let cli_values: Vec<f64> =
        (0..steps).map(|i| from + (to - from) * i as f64 / (steps - 1) as f64).collect();
    let internal: Vec<f64> = cli_values
        .iter()
        .map(|v| if param.is_angle() { v.to_radians() } else { *v })
        .collect();

    let rows = sweep(&setup.vehicle, param, &internal, twist_deg.to_radians(), &setup.settings)
        .map_err(sim_err)?;

    let mut csv = String::from("param,value,l_bar,n_bar,thrust_bar\n");
    for (cli_v, r) in cli_values.iter().zip(&rows) {
        csv.push_str(&format!(
            "{},{:.9e},{:.9e},{:.9e},{:.9e}\n",
            param_name, cli_v, r.l_bar, r.n_bar, r.thrust_bar
        ));
    }
    write_file(out, &csv)?;
    let gp_path = out.with_extension("gp");
    write_file(&gp_path, &gp_script(out, param_name))?;

    // report sign crossings in CLI units
    let cli_rows: Vec<foldwing::sim::SweepRow> = cli_values
        .iter()
        .zip(&rows)
        .map(|(v, r)| foldwing::sim::SweepRow { value: *v, ..*r })
        .collect();
    let crossings = zero_crossings(&cli_rows);
    for x in &crossings {
        println!("l_bar crosses zero at {param_name} = {x:.9e}");
    }
    if crossings.is_empty() {
        println!("l_bar does not change sign over the sweep");
    }
    println!(
        "sweep: {} rows -> {}, plot script -> {}",
        rows.len(),
        out.display(),
        gp_path.display()
    );
    Ok(())
}

fn cmd_mstatic(config_path: &Path, twist_deg: f64) -> CliResult {
    let setup = load_setup(config_path)?;
    let cfg = &setup.vehicle;
    let phi = cfg.drive.phi_mid;
    let phi_dot = -cfg.drive.phi_amp * 2.0 * std::f64::consts::PI * cfg.drive.freq_hz;
    let report = m_static(
        &cfg.geom,
        &cfg.aero,
        twist_deg.to_radians(),
        phi,
        std::f64::consts::FRAC_PI_2,
        phi_dot,
        0.0,
        cfg.wing_incidence,
    );

    println!(
        "pose: phi = {:.9e} deg, psi = 90 deg (vertical outer panels), \
         phi_dot = {:.9e} rad/s (downstroke peak)",
        phi.to_degrees(),
        phi_dot
    );
    for p in &report.panels {
        println!(
            "{:?} {:?} panel force: ({:+.9e}, {:+.9e}, {:+.9e}) N",
            p.side, p.section, p.force.x, p.force.y, p.force.z
        );
    }
    let w = &report.wrench;
    println!(
        "total force:  ({:+.9e}, {:+.9e}, {:+.9e}) N",
        w.force.x, w.force.y, w.force.z
    );
    println!(
        "total moment: ({:+.9e}, {:+.9e}, {:+.9e}) N*m about the CoM",
        w.moment.x, w.moment.y, w.moment.z
    );
    println!(
        "outer lateral components: right {:+.9e} N, left {:+.9e} N, net {:+.9e} N",
        report.right_outer_fy, report.left_outer_fy, report.net_outer_lateral
    );

    if report.common_mode_ok {
        println!(
            "common-mode conversion holds: net lateral force and roll moment follow the command sign"
        );
        Ok(())
    } else {
        Err(runtime(anyhow!(
            "common-mode conversion failed: net outer lateral force {:+.9e} N, Mx {:+.9e} N*m \
             for twist {:+.9e} deg",
            report.net_outer_lateral,
            w.moment.x,
            twist_deg
        )))
    }
}

fn cmd_linkage(a: f64, b: f64, c: f64, d: f64, theta2_deg: f64, branch_name: &str) -> CliResult {
    let branch = match branch_name {
        "open" => Branch::Open,
        "crossed" => Branch::Crossed,
        other => return usage(anyhow!("branch must be 'open' or 'crossed', got '{other}'")),
    };
    let fb = match FourBar::new(a, b, c, d, branch) {
        Ok(fb) => fb,
        Err(e) => return usage(anyhow!(e)),
    };
    println!("grashof class: {}", classify(&fb));
    let theta2 = theta2_deg.to_radians();
    let state = match solve(&fb, theta2) {
        Ok(s) => s,
        Err(e @ LinkageError::NotAssemblable { .. }) => {
            return Err(runtime(anyhow!("not assemblable: {e}")))
        }
        Err(e) => return Err(runtime(anyhow!(e))),
    };
    println!("theta2 = {:.9e} deg", theta2_deg);
    println!("theta3 = {:.9e} deg", state.theta3.to_degrees());
    println!("theta4 = {:.9e} deg", state.theta4.to_degrees());
    match transmission_ratio(&fb, theta2) {
        Ok(r) => println!("transmission ratio dtheta4/dtheta2 = {r:.9e}"),
        Err(_) => println!("transmission ratio undefined (toggle configuration)"),
    }
    Ok(())
}

fn cmd_correlate(log_path: &Path, max_lag: f64, resample_dt: f64) -> CliResult {
    let file = fs::File::open(log_path)
        .with_context(|| format!("cannot open log '{}'", log_path.display()))
        .map_err(runtime)?;
    let records = parse_log(BufReader::new(file)).map_err(runtime)?;
    let report = correlate(&records, max_lag, resample_dt).map_err(runtime)?;
    println!("n_samples = {}", report.n_samples);
    println!("best_lag = {:.9e} s", report.best_lag);
    println!("pearson_r_at_best_lag = {:+.9e}", report.pearson_r_at_best_lag);
    println!("sign = {}", report.sign);
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Simulate { config, twist_deg, out, summary } => {
            cmd_simulate(&config, twist_deg, &out, &summary)
        }
        Command::Compare { config, twist_deg, out } => {
            cmd_compare(&config, twist_deg, out.as_deref())
        }
        Command::Sweep { config, param, from, to, steps, twist_deg, out } => {
            cmd_sweep(&config, &param, from, to, steps, twist_deg, &out)
        }
        Command::Mstatic { config, twist_deg } => cmd_mstatic(&config, twist_deg),
        Command::Linkage { a, b, c, d, theta2_deg, branch } => {
            cmd_linkage(a, b, c, d, theta2_deg, &branch)
        }
        Command::Correlate { log, max_lag, resample_dt } => {
            cmd_correlate(&log, max_lag, resample_dt)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
