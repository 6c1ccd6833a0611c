//! Flat CSV records.
//!
//! Plan rows: `theta0,xi,eta,delta,step,mode,T,Gamma,F,theta_final`, plus a
//! trailing `f_min` column for sweeps over `Δ`. Run rows:
//! `seed,trials,successes,empirical_prob,gamma_analytic`. Floats are written
//! with 17 significant digits; a header row is always emitted.

use std::io::Write;

use qecgate_core::{ConcentrationPlan, RunRecord};

use crate::CliError;

pub const PLAN_HEADER: [&str; 10] = [
    "theta0",
    "xi",
    "eta",
    "delta",
    "step",
    "mode",
    "T",
    "Gamma",
    "F",
    "theta_final",
];

pub const RUN_HEADER: [&str; 5] = ["seed", "trials", "successes", "empirical_prob", "gamma_analytic"];

/// Scientific notation with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row of the plan table.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanRecord {
    pub theta0: f64,
    pub xi: f64,
    pub eta: f64,
    pub delta: f64,
    pub step: f64,
    pub mode: String,
    pub steps: u32,
    pub total_prob: f64,
    pub fidelity: f64,
    pub theta_final: f64,
    pub f_min: Option<f64>,
}

impl From<&ConcentrationPlan> for PlanRecord {
    fn from(plan: &ConcentrationPlan) -> Self {
        PlanRecord {
            theta0: plan.theta0,
            xi: plan.params.xi(),
            eta: plan.params.eta(),
            delta: plan.params.delta(),
            step: plan.params.step(),
            mode: plan.mode.to_string(),
            steps: plan.steps,
            total_prob: plan.total_prob,
            fidelity: plan.fidelity,
            theta_final: plan.theta_final(),
            f_min: None,
        }
    }
}

impl PlanRecord {
    pub fn fields(&self) -> Vec<String> {
        let mut out = vec![
            fmt_f64(self.theta0),
            fmt_f64(self.xi),
            fmt_f64(self.eta),
            fmt_f64(self.delta),
            fmt_f64(self.step),
            self.mode.clone(),
            self.steps.to_string(),
            fmt_f64(self.total_prob),
            fmt_f64(self.fidelity),
            fmt_f64(self.theta_final),
        ];
        if let Some(f) = self.f_min {
            out.push(fmt_f64(f));
        }
        out
    }
}

pub fn run_fields(rec: &RunRecord) -> Vec<String> {
    vec![
        rec.seed.to_string(),
        rec.trials.to_string(),
        rec.successes.to_string(),
        fmt_f64(rec.empirical_prob),
        fmt_f64(rec.analytic_prob),
    ]
}

/// Writes plan rows with header. `with_f_min` adds the `f_min` column.
pub fn write_plans<W: Write>(out: W, rows: &[PlanRecord], with_f_min: bool) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = PLAN_HEADER.to_vec();
    if with_f_min {
        header.push("f_min");
    }
    w.write_record(&header)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_runs<W: Write>(out: W, rows: &[RunRecord]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RUN_HEADER)?;
    for row in rows {
        w.write_record(run_fields(row))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use qecgate_core::{make_plan, GateParams, StepMode};

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        let x = 0.1f64;
        let s = fmt_f64(x);
        assert_eq!(s.parse::<f64>().unwrap(), x);
        assert_eq!(s.split('e').next().unwrap().replace('.', "").len(), 17);
    }

    #[test]
    fn plan_csv_layout() {
        let p = GateParams::new(0.2, 0.3).unwrap();
        let plan = make_plan(std::f64::consts::FRAC_PI_4, &p, StepMode::Nearest).unwrap();
        let mut buf = Vec::new();
        write_plans(&mut buf, &[PlanRecord::from(&plan)], false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "theta0,xi,eta,delta,step,mode,T,Gamma,F,theta_final"
        );
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 10);
        assert_eq!(row[5], "nearest");
        assert_eq!(row[6], "0");
    }

    #[test]
    fn run_csv_layout() {
        let p = GateParams::new(0.2, 0.3).unwrap();
        let rec = qecgate_core::run_monte_carlo(0.5, &p, StepMode::Nearest, 10, 3).unwrap();
        let mut buf = Vec::new();
        write_runs(&mut buf, std::slice::from_ref(&rec)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "seed,trials,successes,empirical_prob,gamma_analytic");
        assert!(lines[1].starts_with(&format!("3,10,{},", rec.successes)));
    }
}
