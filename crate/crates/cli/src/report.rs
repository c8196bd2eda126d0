//! Serialized output shapes.
//!
//! One stable machine interface for all subcommands: the plan object always
//! carries `case`, `sigma0`, `lambda0`, `bangs`, `t_star`, `switch_point`
//! and `certificate` (the latter two nullable). CSV outputs use 17
//! significant digits with `.` as decimal separator and `\n` line endings
//! so doubles round-trip bit-exactly.

use ditop::{Certificate, OracleResult, Plan, ScaledState, TrajectorySample, VerificationReport};
use serde::Serialize;

/// `case` strings of the plan schema.
pub fn case_name(plan: &Plan) -> &'static str {
    match plan.case_tag {
        ditop::CaseTag::AtOrigin => "at_origin",
        ditop::CaseTag::OnCurve => "on_curve",
        ditop::CaseTag::OffCurve => "off_curve",
    }
}

#[derive(Serialize)]
pub struct BangReport {
    pub u: f64,
    pub duration: f64,
}

#[derive(Serialize)]
pub struct PointReport {
    pub x: f64,
    pub xdot: f64,
}

impl From<ScaledState> for PointReport {
    fn from(s: ScaledState) -> Self {
        Self {
            x: s.x,
            xdot: s.x_dot,
        }
    }
}

#[derive(Serialize)]
pub struct CertificateReport {
    pub rho: f64,
    pub p_x0: f64,
    pub p_xdot0: f64,
}

impl From<&Certificate> for CertificateReport {
    fn from(c: &Certificate) -> Self {
        Self {
            rho: c.rho,
            p_x0: c.p_x0,
            p_xdot0: c.p_xdot0,
        }
    }
}

#[derive(Serialize)]
pub struct PlanReport {
    pub case: &'static str,
    pub sigma0: f64,
    pub lambda0: Option<f64>,
    pub bangs: Vec<BangReport>,
    pub t_star: f64,
    pub switch_point: Option<PointReport>,
    pub certificate: Option<CertificateReport>,
}

impl PlanReport {
    pub fn new(plan: &Plan, certificate: Option<&Certificate>) -> Self {
        Self {
            case: case_name(plan),
            sigma0: plan.sigma0,
            lambda0: plan.lambda0,
            bangs: plan
                .bangs
                .iter()
                .map(|b| BangReport {
                    u: b.u,
                    duration: b.duration,
                })
                .collect(),
            t_star: plan.total_time,
            switch_point: plan.switch_point.map(PointReport::from),
            certificate: certificate.map(CertificateReport::from),
        }
    }
}

#[derive(Serialize)]
pub struct SampleReport {
    pub t: f64,
    pub x: f64,
    pub xdot: f64,
    pub u: f64,
}

impl From<&TrajectorySample> for SampleReport {
    fn from(s: &TrajectorySample) -> Self {
        Self {
            t: s.t,
            x: s.state.x,
            xdot: s.state.x_dot,
            u: s.u,
        }
    }
}

#[derive(Serialize)]
pub struct RegulateReport {
    pub arrival_time: Option<f64>,
    pub t_star: f64,
    pub time_budget: f64,
    pub dt: f64,
    pub deadband: f64,
    pub samples: Vec<SampleReport>,
}

#[derive(Serialize)]
pub struct CertificateCheckReport {
    pub n_samples: usize,
    pub max_abs_hamiltonian: f64,
    pub hamiltonian_tolerance: f64,
    pub sign_changes: usize,
    pub schedule_agreement: bool,
    pub switch_root_rel_error: Option<f64>,
    pub passed: bool,
}

impl From<&VerificationReport> for CertificateCheckReport {
    fn from(r: &VerificationReport) -> Self {
        Self {
            n_samples: r.n_samples,
            max_abs_hamiltonian: r.max_abs_hamiltonian,
            hamiltonian_tolerance: r.hamiltonian_tolerance,
            sign_changes: r.sign_changes,
            schedule_agreement: r.schedule_agreement,
            switch_root_rel_error: r.switch_root_rel_error,
            passed: r.passed,
        }
    }
}

#[derive(Serialize)]
pub struct OracleCheckReport {
    pub best_time: f64,
    pub best_first_control: f64,
    pub best_switch_time: f64,
    pub terminal_miss: f64,
    pub resolution: f64,
    pub time_abs_diff: f64,
    pub time_tolerance: f64,
    pub time_ok: bool,
    pub control_ok: bool,
    pub passed: bool,
}

impl OracleCheckReport {
    pub fn new(result: &OracleResult, plan: &Plan, accept_radius: f64) -> Self {
        let time_abs_diff = (result.best_time - plan.total_time).abs();
        let time_tolerance = 2.0 * result.resolution;
        let time_ok = time_abs_diff <= time_tolerance;
        let control_ok = oracle_control_agrees(result, plan, accept_radius);
        Self {
            best_time: result.best_time,
            best_first_control: result.best_first_control,
            best_switch_time: result.best_switch_time,
            terminal_miss: result.terminal_miss,
            resolution: result.resolution,
            time_abs_diff,
            time_tolerance,
            time_ok,
            control_ok,
            passed: time_ok && control_ok,
        }
    }
}

/// The oracle's first control must match the plan's. States the search
/// cannot distinguish from the switching curve (curve offset within the
/// acceptance radius) may instead ride the curve, so the single-bang
/// control is accepted there too.
pub fn oracle_control_agrees(result: &OracleResult, plan: &Plan, accept_radius: f64) -> bool {
    if let Some(u_first) = plan.first_control() {
        if result.best_first_control == u_first {
            return true;
        }
        let f0 = ditop::switching_curve_value(&plan.initial);
        let ride = -sign_of(plan.initial.x_dot);
        f0.abs() <= accept_radius && result.best_first_control == ride
    } else {
        false
    }
}

fn sign_of(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

#[derive(Serialize)]
pub struct ValidateReport {
    pub initial: PointReport,
    pub case: &'static str,
    pub t_star: f64,
    pub certificate: Option<CertificateCheckReport>,
    pub oracle: Option<OracleCheckReport>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct BatchRow {
    pub x0: f64,
    pub v0: f64,
    pub case: &'static str,
    pub sigma0: f64,
    pub lambda0: Option<f64>,
    pub t_star: f64,
    pub delta1: Option<f64>,
    pub delta2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<BatchValidation>,
}

#[derive(Serialize)]
pub struct BatchValidation {
    pub max_abs_hamiltonian: Option<f64>,
    pub sign_changes: Option<usize>,
    pub schedule_agreement: Option<bool>,
    pub oracle_time: Option<f64>,
    pub oracle_time_abs_diff: Option<f64>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct ScaleReport {
    pub config: ScaleConfigReport,
    pub physical: ScalePhysicalReport,
    pub scaled: ScaleScaledReport,
}

#[derive(Serialize)]
pub struct ScaleConfigReport {
    pub inertia: f64,
    pub control_max: f64,
}

#[derive(Serialize)]
pub struct ScalePhysicalReport {
    pub y: f64,
    pub ydot: f64,
    pub control: f64,
}

#[derive(Serialize)]
pub struct ScaleScaledReport {
    pub x: f64,
    pub xdot: f64,
    pub u: f64,
}

/// 17 significant digits, enough to reconstruct the exact double.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// One CSV line of a trajectory sample.
pub fn sample_csv_line(s: &TrajectorySample) -> String {
    format!(
        "{},{},{},{}\n",
        fmt_f64(s.t),
        fmt_f64(s.state.x),
        fmt_f64(s.state.x_dot),
        fmt_f64(s.u)
    )
}

/// CSV header shared by `simulate` and `regulate`.
pub const SAMPLE_CSV_HEADER: &str = "t,x,xdot,u\n";
