//! Pontryagin optimality certificates for minimum-time plans.
//!
//! A plan is provably optimal when a multiplier `rho > 0` and an initial
//! costate `(p_x0, p_xdot0)` exist such that the Hamiltonian
//! `H = rho + p_x0 * x_dot + (p_xdot0 - p_x0 * t) * u` vanishes identically
//! along the trajectory and `u = -sgn(p_xdot0 - p_x0 * t)` reproduces the
//! schedule. The costate dynamics are linear, so the switching function
//! `p_xdot0 - p_x0 * t` crosses zero at most once: bang-bang with at most
//! one switch.
//!
//! Both cases admit closed-form costates:
//!
//! * single-bang plans: `p_x0 = 0`, `p_xdot0 = sgn(x_dot0) * rho`;
//! * two-bang plans: `p_x0 = rho / (lambda0 * sigma0)`,
//!   `p_xdot0 = p_x0 * delta1`, placing the switching-function root exactly
//!   at the switch instant.
//!
//! Certificates form a ray: any `rho > 0` scales the costate linearly and
//! leaves the control law unchanged. `rho = 0` would force the zero
//! costate, which non-triviality forbids.

use crate::error::{Error, Result};
use crate::synthesis::{sgn, CaseTag, Plan};
use crate::trajectory::plan_state_at;

/// Multiplier, initial costate and the plan they certify.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// Cost multiplier, strictly positive.
    pub rho: f64,
    /// Initial position costate; constant in time.
    pub p_x0: f64,
    /// Initial velocity costate; evolves as `p_xdot0 - p_x0 * t`.
    pub p_xdot0: f64,
    /// The certified plan.
    pub plan: Plan,
}

/// Outcome of sampling a certificate along its plan's trajectory.
///
/// Failures are reported, never thrown: every field is observable and
/// `passed` folds them against the tolerances recorded alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// Number of time samples actually checked (grid plus exact switch
    /// instant).
    pub n_samples: usize,
    /// Largest `|H|` seen along the certified trajectory.
    pub max_abs_hamiltonian: f64,
    /// Acceptance bound for `|H|`: `1e-9 * (1 + ||initial||^2)`.
    pub hamiltonian_tolerance: f64,
    /// Sign changes of the costate control over the samples; at most one
    /// for a valid certificate.
    pub sign_changes: usize,
    /// Whether the costate control equals the scheduled control at every
    /// sample.
    pub schedule_agreement: bool,
    /// Relative error between the switching-function root and the plan's
    /// switch instant (two-bang plans only).
    pub switch_root_rel_error: Option<f64>,
    /// All checks passed at their tolerances.
    pub passed: bool,
}

/// Builds the closed-form certificate for a plan.
///
/// The empty origin plan certifies nothing and `rho <= 0` violates
/// non-triviality; both are errors.
pub fn build_certificate(plan: &Plan, rho: f64) -> Result<Certificate> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::NontrivialMultiplierRequired { rho });
    }
    match plan.case_tag {
        CaseTag::AtOrigin => Err(Error::OriginPlanHasNoCertificate),
        CaseTag::OnCurve => Ok(Certificate {
            rho,
            p_x0: 0.0,
            p_xdot0: sgn(plan.initial.x_dot) * rho,
            plan: plan.clone(),
        }),
        CaseTag::OffCurve => {
            let lambda0 = plan.lambda0.expect("off-curve plan carries lambda0");
            let delta1 = plan.bangs[0].duration;
            let p_x0 = rho / (lambda0 * plan.sigma0);
            Ok(Certificate {
                rho,
                p_x0,
                p_xdot0: p_x0 * delta1,
                plan: plan.clone(),
            })
        }
    }
}

impl Certificate {
    /// The switching function `p_xdot0 - p_x0 * t` whose sign drives the
    /// control law.
    pub fn switching_function(&self, t: f64) -> f64 {
        self.p_xdot0 - self.p_x0 * t
    }

    /// The unique root of the switching function, present for two-bang
    /// plans and located at the switch instant.
    pub fn switch_root(&self) -> Option<f64> {
        (self.plan.case_tag == CaseTag::OffCurve).then(|| self.p_xdot0 / self.p_x0)
    }

    /// Hamiltonian value at time `t` for a given control and velocity.
    /// Along the certified trajectory with the scheduled control this is
    /// identically zero.
    pub fn hamiltonian_at(&self, t: f64, u: f64, x_dot: f64) -> Result<f64> {
        if !(0.0..=self.plan.total_time).contains(&t) {
            return Err(Error::TimeOutOfRange {
                t,
                t_max: self.plan.total_time,
            });
        }
        Ok(self.rho + self.p_x0 * x_dot + self.switching_function(t) * u)
    }

    /// Control dictated by the costate: `-sgn` of the switching function,
    /// with the root itself resolved to the second bang's value (the
    /// schedule assigns the closed interval from the switch instant onward
    /// to the second bang).
    pub fn control_at(&self, t: f64) -> Result<f64> {
        if !(0.0..=self.plan.total_time).contains(&t) {
            return Err(Error::TimeOutOfRange {
                t,
                t_max: self.plan.total_time,
            });
        }
        let s = self.switching_function(t);
        if s == 0.0 {
            if let Some(second) = self.plan.bangs.get(1) {
                return Ok(second.u);
            }
        }
        Ok(-sgn(s))
    }

    /// Samples the certificate along the plan's trajectory: `n_samples`
    /// uniform times in `[0, t_star]` plus the exact switch instant, at
    /// each checking `H = 0`, the control sign-change count and agreement
    /// with the schedule.
    pub fn verify(&self, n_samples: usize) -> Result<VerificationReport> {
        if n_samples < 2 {
            return Err(Error::TooFewSamples {
                n: n_samples,
                min: 2,
            });
        }
        let t_star = self.plan.total_time;
        let last = (n_samples - 1) as f64;
        let mut times: Vec<f64> = (0..n_samples)
            .map(|i| t_star * (i as f64 / last))
            .collect();
        if self.plan.case_tag == CaseTag::OffCurve {
            let delta1 = self.plan.bangs[0].duration;
            if !times.contains(&delta1) {
                times.push(delta1);
                times.sort_by(|a, b| a.partial_cmp(b).expect("finite sample times"));
            }
        }

        let mut max_abs_h: f64 = 0.0;
        let mut sign_changes = 0usize;
        let mut schedule_agreement = true;
        let mut previous_control: Option<f64> = None;
        for &t in &times {
            let (state, u_plan) = plan_state_at(&self.plan, t)?;
            let h = self.hamiltonian_at(t, u_plan, state.x_dot)?;
            max_abs_h = max_abs_h.max(h.abs());
            let u_costate = self.control_at(t)?;
            if u_costate != u_plan {
                schedule_agreement = false;
            }
            if let Some(prev) = previous_control {
                if prev != u_costate {
                    sign_changes += 1;
                }
            }
            previous_control = Some(u_costate);
        }

        let switch_root_rel_error = self.switch_root().map(|root| {
            let delta1 = self.plan.bangs[0].duration;
            (root - delta1).abs() / delta1
        });
        let hamiltonian_tolerance = 1e-9 * (1.0 + self.plan.initial.norm_sq());
        let passed = max_abs_h <= hamiltonian_tolerance
            && sign_changes <= 1
            && schedule_agreement
            && switch_root_rel_error.is_none_or(|e| e <= 1e-12);
        Ok(VerificationReport {
            n_samples: times.len(),
            max_abs_hamiltonian: max_abs_h,
            hamiltonian_tolerance,
            sign_changes,
            schedule_agreement,
            switch_root_rel_error,
            passed,
        })
    }
}
