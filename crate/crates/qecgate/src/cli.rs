//! `qecgate` subcommands.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use qecgate_core::{
    entanglement, f_min, make_plan, reconstruct, run_exact, run_monte_carlo, run_multipartite, schmidt_decompose,
    states::bell_state, step_count, GateParams, StepMode,
};

use crate::amplitudes::{format_complex, parse_two_qubit};
use crate::records::{fmt_f64, write_plans, write_runs, PlanRecord};
use crate::sweep::{SweepFile, SweepSpec, SweepVariable};
use crate::{CliError, OUT_DIR_ENV};

/// Largest deviation `plan --verify` tolerates between the closed form and the
/// state-vector simulation.
pub const VERIFY_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "qecgate",
    version,
    about = "Plan and simulate entanglement concentration with the G(xi, eta) gate"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form plan for one input angle and gate.
    Plan(PlanArgs),
    /// Plans over a grid of theta0 or delta values, written as CSV.
    Sweep(SweepArgs),
    /// Seeded Monte Carlo sampling of probe outcomes.
    Simulate(SimulateArgs),
    /// Schmidt decomposition of a two-qubit state.
    Schmidt(SchmidtArgs),
    /// Worst-case fidelity for a concentration step.
    Fmin(FminArgs),
    /// Gate applied to party 1 of an n-party GHZ-type state.
    Multi(MultiArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GateArgs {
    /// Gate angle xi, 0 < xi < eta.
    #[arg(long, allow_negative_numbers = true)]
    pub xi: f64,
    /// Gate angle eta, xi < eta < pi/4.
    #[arg(long, allow_negative_numbers = true)]
    pub eta: f64,
}

impl GateArgs {
    fn params(&self) -> Result<GateParams, CliError> {
        Ok(GateParams::new(self.xi, self.eta)?)
    }
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    /// Input Schmidt angle, 0 < theta0 <= pi/4.
    #[arg(long, allow_negative_numbers = true)]
    pub theta0: f64,
    #[command(flatten)]
    pub gate: GateArgs,
    /// Step-count rule: capped or nearest.
    #[arg(long, default_value = "nearest")]
    pub mode: StepMode,
    /// Cross-check the plan against a state-vector simulation.
    #[arg(long)]
    pub verify: bool,
    /// Also write the plan as a one-row CSV.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// TOML file with sweep settings; flags override its values.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Swept variable.
    #[arg(long, value_enum)]
    pub variable: Option<SweepVariable>,
    #[arg(long, allow_negative_numbers = true)]
    pub start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub stop: Option<f64>,
    /// Number of grid points, endpoints included.
    #[arg(long)]
    pub points: Option<usize>,
    /// Fixed input angle (delta sweeps).
    #[arg(long, allow_negative_numbers = true)]
    pub theta0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub xi: Option<f64>,
    /// Fixed eta (theta0 sweeps).
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub mode: Option<String>,
    /// Output CSV path. Defaults to `sweep_<variable>.csv` in the output
    /// directory, or stdout if none is set.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Default output directory.
    #[arg(long, value_name = "DIR", env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub theta0: f64,
    #[command(flatten)]
    pub gate: GateArgs,
    #[arg(long, default_value = "nearest")]
    pub mode: StepMode,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the run as a one-row CSV.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SchmidtArgs {
    /// Four amplitudes in basis order |00>,|01>,|10>,|11>, e.g. "0.6,0,0,0.8j".
    #[arg(long, allow_hyphen_values = true)]
    pub amps: String,
    /// Normalize the input instead of rejecting a non-unit vector.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = true)]
pub struct FminArgs {
    /// Concentration step, delta > 1.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["xi", "eta"])]
    pub delta: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "eta")]
    pub xi: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "xi")]
    pub eta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MultiArgs {
    /// Number of parties, n >= 2.
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub theta0: f64,
    #[command(flatten)]
    pub gate: GateArgs,
    #[arg(long, default_value = "nearest")]
    pub mode: StepMode,
}

/// Runs a parsed command, writing the report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let report = match cli.command {
        Command::Plan(a) => plan(a)?,
        Command::Sweep(a) => sweep(a)?,
        Command::Simulate(a) => simulate(a)?,
        Command::Schmidt(a) => schmidt(a)?,
        Command::Fmin(a) => fmin(a)?,
        Command::Multi(a) => multi(a)?,
    };
    emit(out, &report)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::io("<stdout>", e))
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| fmt_f64(*v)).collect::<Vec<_>>().join(" ")
}

fn plan(a: PlanArgs) -> Result<String, CliError> {
    let params = a.gate.params()?;
    let plan = make_plan(a.theta0, &params, a.mode)?;
    let mut s = String::new();
    let _ = writeln!(s, "theta0      {}", fmt_f64(plan.theta0));
    let _ = writeln!(s, "xi          {}", fmt_f64(params.xi()));
    let _ = writeln!(s, "eta         {}", fmt_f64(params.eta()));
    let _ = writeln!(s, "delta       {}", fmt_f64(params.delta()));
    let _ = writeln!(s, "step        {}", fmt_f64(params.step()));
    let _ = writeln!(s, "mode        {}", plan.mode);
    let _ = writeln!(s, "T           {}", plan.steps);
    let _ = writeln!(s, "Gamma       {}", fmt_f64(plan.total_prob));
    let _ = writeln!(s, "F           {}", fmt_f64(plan.fidelity));
    let _ = writeln!(s, "theta_final {}", fmt_f64(plan.theta_final()));
    let _ = writeln!(s, "thetas      {}", join(&plan.thetas));
    let _ = writeln!(s, "gammas      {}", join(&plan.step_probs));
    let _ = writeln!(s, "entropy     {}", join(&plan.entanglement_trajectory()));

    if a.verify {
        let run = run_exact(plan.theta0, &params, plan.steps)?;
        let angle = run
            .thetas
            .iter()
            .zip(&plan.thetas)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        let prob = (run.success_prob() - plan.total_prob).abs();
        let fid = (bell_state().overlap(&run.final_state)? - plan.fidelity).abs();
        let worst = angle.max(prob).max(fid);
        let _ = writeln!(
            s,
            "verify      angle {angle:.3e}, probability {prob:.3e}, fidelity {fid:.3e}"
        );
        if worst > VERIFY_TOL {
            return Err(CliError::Verify(format!(
                "closed form and simulation differ by {worst:.3e} (tolerance {VERIFY_TOL:e})"
            )));
        }
    }

    if let Some(path) = &a.csv {
        write_plans(create(path)?, &[PlanRecord::from(&plan)], false)?;
    }
    Ok(s)
}

fn sweep(a: SweepArgs) -> Result<String, CliError> {
    let base = match &a.config {
        Some(path) => SweepFile::load(path)?,
        None => SweepFile::default(),
    };
    let flags = SweepFile {
        variable: a.variable,
        start: a.start,
        stop: a.stop,
        points: a.points,
        theta0: a.theta0,
        xi: a.xi,
        eta: a.eta,
        mode: a.mode,
        output: a.out,
    };
    let spec = SweepSpec::try_from(base.merge(flags))?;
    let rows = spec.run()?;
    let with_f_min = spec.variable == SweepVariable::Delta;

    let target = spec.output.clone().or_else(|| {
        a.out_dir
            .map(|d| d.join(format!("sweep_{}.csv", spec.variable.as_str())))
    });
    match target {
        Some(path) => {
            write_plans(create(&path)?, &rows, with_f_min)?;
            Ok(format!("wrote {} rows to {}\n", rows.len(), path.display()))
        }
        None => {
            let mut buf = Vec::new();
            write_plans(&mut buf, &rows, with_f_min)?;
            String::from_utf8(buf).map_err(|e| CliError::io("<stdout>", io::Error::new(io::ErrorKind::InvalidData, e)))
        }
    }
}

fn simulate(a: SimulateArgs) -> Result<String, CliError> {
    let params = a.gate.params()?;
    let rec = run_monte_carlo(a.theta0, &params, a.mode, a.trials, a.seed)?;
    let mut s = String::new();
    let _ = writeln!(s, "seed           {}", rec.seed);
    let _ = writeln!(s, "trials         {}", rec.trials);
    let _ = writeln!(s, "T              {}", rec.steps);
    let _ = writeln!(s, "successes      {}", rec.successes);
    let _ = writeln!(s, "empirical_prob {}", fmt_f64(rec.empirical_prob));
    let _ = writeln!(s, "gamma_analytic {}", fmt_f64(rec.analytic_prob));
    let _ = writeln!(s, "std_error      {}", fmt_f64(rec.std_error()));
    let _ = writeln!(s, "z              {:.4}", rec.z_score());
    if let Some(path) = &a.csv {
        write_runs(create(path)?, std::slice::from_ref(&rec))?;
    }
    Ok(s)
}

fn schmidt(a: SchmidtArgs) -> Result<String, CliError> {
    let mut psi = parse_two_qubit(&a.amps)?;
    if a.normalize {
        psi = psi
            .normalized()
            .ok_or_else(|| CliError::Invalid("cannot normalize the zero vector".into()))?;
    }
    let st = schmidt_decompose(&psi)?;
    let overlap = reconstruct(&st).overlap(&psi)?;
    let mut s = String::new();
    let _ = writeln!(s, "theta   {}", fmt_f64(st.theta));
    let _ = writeln!(s, "entropy {}", fmt_f64(st.entanglement().entropy));
    for (name, m) in [("frame_a", &st.frame_a), ("frame_b", &st.frame_b)] {
        for r in 0..2 {
            let label = if r == 0 { name } else { "" };
            let _ = writeln!(
                s,
                "{label:<7} [{}, {}]",
                format_complex(m[(r, 0)]),
                format_complex(m[(r, 1)])
            );
        }
    }
    let _ = writeln!(s, "overlap {}", fmt_f64(overlap));
    Ok(s)
}

fn fmin(a: FminArgs) -> Result<String, CliError> {
    let step = match (a.delta, a.xi, a.eta) {
        (Some(d), _, _) => d,
        (None, Some(xi), Some(eta)) => GateParams::new(xi, eta)?.step(),
        _ => return Err(CliError::Invalid("fmin needs --delta or both --xi and --eta".into())),
    };
    let f = f_min(step)?;
    Ok(format!("delta {}\nf_min {}\n", fmt_f64(step), fmt_f64(f)))
}

fn multi(a: MultiArgs) -> Result<String, CliError> {
    let params = a.gate.params()?;
    let steps = step_count(a.theta0, &params, a.mode)?;
    let run = run_multipartite(a.n, a.theta0, &params, steps)?;
    let theta_final = *run.thetas.last().expect("trajectory holds theta0");
    let mut s = String::new();
    let _ = writeln!(s, "n           {}", a.n);
    let _ = writeln!(s, "T           {steps}");
    let _ = writeln!(s, "Gamma       {}", fmt_f64(run.success_prob()));
    let _ = writeln!(s, "theta_final {}", fmt_f64(theta_final));
    let _ = writeln!(s, "entropy     {}", fmt_f64(entanglement(theta_final)?.entropy));
    let _ = writeln!(s, "thetas      {}", join(&run.thetas));
    let _ = writeln!(s, "gammas      {}", join(&run.branch_probs));
    Ok(s)
}
