//! The `hand` command line: `pose`, `forces`, `sweep` and `check`.
//!
//! Exit codes: 0 success, 1 usage, 2 configuration, 3 numerical failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::{load_config, parse_grid, Preset, RunConfig};
use crate::contact::assemble_J;
use crate::error::HandError;
use crate::kinematics::{home_angles, loop_aux, ActiveAngles, FingerState};
use crate::oracle::{Oracle, Ratio};
use crate::stability::{sweep, AxisSpec, GridSpec, StabilityMap};
use crate::transmission::{assemble_T, ratios_with, RatioSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Relative tolerance used by `check`.
pub const CHECK_TOL: f64 = 1e-4;

/// Absolute floor for entries that vanish, well above finite-difference noise.
pub const CHECK_ATOL: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(
    name = "hand",
    version,
    about = "Kinetostatics of a spatial under-actuated finger"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Debug, Clone)]
struct Common {
    /// JSON config with design parameter keys
    #[arg(long)]
    config: Option<PathBuf>,
    /// θ2 in rad (default: home)
    #[arg(long, allow_negative_numbers = true)]
    theta2: Option<f64>,
    /// θ6 in rad (default: home)
    #[arg(long, allow_negative_numbers = true)]
    theta6: Option<f64>,
    /// t2min:t2max:step,t6min:t6max:step
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// output path for CSV (a .gp plot script is written beside it)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print all joint angles of a posture
    Pose(#[command(flatten)] Common),
    /// Contact forces at one posture, as a CSV row
    Forces(#[command(flatten)] Common),
    /// Contact forces over a (θ2, θ6) grid
    Sweep(#[command(flatten)] Common),
    /// Compare closed forms with numeric references
    Check(#[command(flatten)] Common),
}

enum Failure {
    Config(String),
    Numeric(String),
    Io(std::io::Error),
}

impl From<HandError> for Failure {
    fn from(e: HandError) -> Self {
        match e {
            HandError::Config(m) => Failure::Config(m),
            other => Failure::Numeric(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Runs the tool with `args` (including the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.cmd {
        Cmd::Pose(c) => setup(c).and_then(|(cfg, a)| cmd_pose(&cfg, a, out)),
        Cmd::Forces(c) => setup(c).and_then(|(cfg, a)| cmd_forces(&cfg, a, out)),
        Cmd::Sweep(c) => setup(c).and_then(|(cfg, _)| cmd_sweep(&cfg, out)),
        Cmd::Check(c) => setup(c).and_then(|(cfg, a)| cmd_check(&cfg, a, out)),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Config(m)) => {
            let _ = writeln!(err, "hand: {m}");
            EXIT_CONFIG
        }
        Err(Failure::Numeric(m)) => {
            let _ = writeln!(err, "hand: {m}");
            EXIT_NUMERIC
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "hand: {e}");
            EXIT_CONFIG
        }
    }
}

/// Config with command-line overrides, plus the posture to evaluate.
fn setup(c: &Common) -> std::result::Result<(RunConfig, ActiveAngles), Failure> {
    let mut cfg = match &c.config {
        Some(p) => load_config(p)?,
        None => RunConfig::default(),
    };
    if let Some(g) = &c.grid {
        cfg.grid = Some(parse_grid(g)?);
    }
    if let Some(o) = &c.out {
        cfg.out = Some(o.clone());
    }
    if let Some(p) = &c.preset {
        cfg.preset = p.parse::<Preset>()?;
    }
    let mut a = home_angles(&cfg.params)?;
    if let Some(t2) = c.theta2 {
        a.theta2 = t2;
    }
    if let Some(t6) = c.theta6 {
        a.theta6 = t6;
    }
    Ok((cfg, a))
}

fn cmd_pose(cfg: &RunConfig, a: ActiveAngles, out: &mut dyn Write) -> CmdResult {
    let s = FingerState::solve(&cfg.params, a)?;
    let aux = loop_aux(&cfg.params, &s)?;
    writeln!(out, "preset      {}", cfg.preset.name())?;
    let rows = [
        ("theta1", s.theta1),
        ("theta2", s.theta2),
        ("theta3", s.theta3),
        ("theta5", s.theta5),
        ("theta6", s.theta6),
        ("theta7", s.theta7),
        ("nu1", s.nu1),
        ("psi1", s.psi1),
        ("psi2", s.psi2),
        ("psi4", s.psi4),
        ("psi5", s.psi5),
        ("psi6", s.psi6),
        ("d0_mm", aux.d0),
    ];
    for (name, v) in rows {
        writeln!(out, "{name:<11} {v:.10}")?;
    }
    writeln!(out, "assembly    {:?}", s.assembly_mode)?;
    Ok(EXIT_OK)
}

fn cmd_forces(cfg: &RunConfig, a: ActiveAngles, out: &mut dyn Write) -> CmdResult {
    let grid = GridSpec {
        theta2: AxisSpec::single(a.theta2),
        theta6: AxisSpec::single(a.theta6),
    };
    let map = sweep(&cfg.params, &cfg.contact, &grid)?;
    out.write_all(map.to_csv().as_bytes())?;
    Ok(if map.flagged() > 0 {
        EXIT_NUMERIC
    } else {
        EXIT_OK
    })
}

/// gnuplot script drawing the f1 surface from `csv`.
pub fn plot_script(csv: &Path) -> String {
    let name = csv
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    format!(
        "set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel 'theta2 (rad)'\n\
         set ylabel 'theta6 (rad)'\n\
         set zlabel 'f1 (N)'\n\
         set hidden3d\n\
         splot '{name}' using 1:2:3 with lines title 'f1'\n\
         pause -1\n"
    )
}

fn write_summary(map: &StabilityMap, out: &mut dyn Write) -> std::io::Result<()> {
    let (n2, n6) = map.shape();
    let stable = map.samples.iter().filter(|s| s.stable).count();
    writeln!(
        out,
        "samples {} ({n2} x {n6}), flagged {}, stable {stable}",
        map.samples.len(),
        map.flagged()
    )?;
    if let Some(r) = map.variation_ratio() {
        writeln!(
            out,
            "f1 variation ratio (along theta2 / along theta6) {r:.6}"
        )?;
    }
    Ok(())
}

fn cmd_sweep(cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let grid = cfg.grid_or_default()?;
    let map = sweep(&cfg.params, &cfg.contact, &grid)?;
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, map.to_csv())?;
            std::fs::write(path.with_extension("gp"), plot_script(path))?;
            write_summary(&map, out)?;
        }
        None => out.write_all(map.to_csv().as_bytes())?,
    }
    Ok(EXIT_OK)
}

/// Error as a fraction of the allowance `CHECK_TOL * |reference| + CHECK_ATOL`; at most 1 passes.
pub fn check_score(analytic: f64, reference: f64) -> f64 {
    (analytic - reference).abs() / (CHECK_TOL * reference.abs() + CHECK_ATOL)
}

/// Analytic value of `which` from a ratio set.
pub fn ratio_value(r: &RatioSet, which: Ratio) -> f64 {
    match which {
        Ratio::N1Theta2 => r.n1_theta2,
        Ratio::Gamma1Theta2 => r.gamma1_theta2,
        Ratio::Gamma6Theta2 => r.gamma6_theta2,
        Ratio::Gamma5Theta7 => r.gamma5_theta7,
        Ratio::Gamma5Theta6 => r.gamma5_theta6,
        Ratio::Gamma5Gamma6 => r.gamma5_gamma6,
        Ratio::Gamma2Gamma5 => r.gamma2_gamma5,
        Ratio::Gamma2N1 => r.gamma2_n1,
        Ratio::F10Gamma2 => r.f10_gamma2,
        Ratio::F10Gamma1 => r.f10_gamma1,
        Ratio::F10Theta1 => r.f10_theta1,
        Ratio::F10Theta2 => r.f10_theta2,
    }
}

fn cmd_check(cfg: &RunConfig, a: ActiveAngles, out: &mut dyn Write) -> CmdResult {
    let p = &cfg.params;
    let s = FingerState::solve(p, a)?;
    let aux = loop_aux(p, &s)?;
    let r = ratios_with(p, &s, &aux)?;
    let oracle = Oracle::new(p, &s);
    let mut worst: f64 = 0.0;
    let mut line = |out: &mut dyn Write, name: &str, a: f64, o: f64| -> std::io::Result<()> {
        let e = check_score(a, o);
        worst = worst.max(e);
        let verdict = if e <= 1.0 { "ok" } else { "FAIL" };
        writeln!(
            out,
            "{name:<16} analytic {a:>+.9e}  oracle {o:>+.9e}  diff {:.1e}  {verdict}",
            (a - o).abs()
        )
    };
    for which in Ratio::ALL {
        line(
            out,
            which.name(),
            ratio_value(&r, which),
            oracle.ratio(which)?,
        )?;
    }
    let t = assemble_T(p, &s)?;
    let t_ref = oracle.t_row()?;
    for (k, (&a, &o)) in t.row1().iter().zip(&t_ref).enumerate() {
        line(out, &format!("T[1,{}]", k + 1), a, o)?;
    }
    let j = assemble_J(p, &s, &cfg.contact)?;
    let j_ref = oracle.contact_matrix(&cfg.contact)?;
    for row in 0..4 {
        for col in 0..4 {
            if j.0[(row, col)] != 0.0 || j_ref[(row, col)].abs() > 1e-9 {
                line(
                    out,
                    &format!("J[{},{}]", row + 1, col + 1),
                    j.0[(row, col)],
                    j_ref[(row, col)],
                )?;
            }
        }
    }
    writeln!(
        out,
        "worst error {worst:.2e} of allowance (rtol {CHECK_TOL:e}, atol {CHECK_ATOL:e})"
    )?;
    Ok(if worst <= 1.0 { EXIT_OK } else { EXIT_NUMERIC })
}
