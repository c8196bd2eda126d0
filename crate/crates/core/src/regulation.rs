//! Discrete closed-loop regulation to the origin.
//!
//! Applies [`feedback_control`] every `dt` to the numerically integrated
//! plant. The ideal synthesis chatters on the switching curve under
//! discretization, so the loop latches "arrived" and outputs `u = 0` once
//! the state enters a small deadband ball around the origin. A run is
//! abandoned after `2 * t_star + 1` simulated seconds; a correct loop never
//! gets near that.

use crate::error::{Error, Result};
use crate::oracle::integrate_schedule;
use crate::scaling::ScaledState;
use crate::synthesis::{feedback_control, plan, DEFAULT_EPS_CURVE};
use crate::trajectory::TrajectorySample;

/// Knobs of the discrete loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegulationParams {
    /// Control update and integration interval.
    pub dt: f64,
    /// Radius of the terminal ball where actuation stops.
    pub deadband: f64,
    /// Curve tolerance handed to the feedback law.
    pub eps_curve: f64,
}

impl Default for RegulationParams {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            deadband: 1e-2,
            eps_curve: DEFAULT_EPS_CURVE,
        }
    }
}

/// Trace and timing of one closed-loop run.
#[derive(Debug, Clone, PartialEq)]
pub struct RegulationOutcome {
    /// First instant the state entered the deadband, if it did within the
    /// time budget.
    pub arrival_time: Option<f64>,
    /// Open-loop minimum time of the initial state, the reference the
    /// closed loop is measured against.
    pub t_star: f64,
    /// Simulated-time budget `2 * t_star + 1` after which the run stops.
    pub time_budget: f64,
    /// Sampled `(t, state, u)` history including the arrival sample.
    pub trace: Vec<TrajectorySample>,
}

/// Runs the discrete feedback loop from an initial state.
pub fn regulate(initial: &ScaledState, params: &RegulationParams) -> Result<RegulationOutcome> {
    if !initial.is_finite() {
        return Err(Error::NonFiniteState);
    }
    if !(params.dt.is_finite() && params.dt > 0.0) {
        return Err(Error::InvalidStep { step: params.dt });
    }
    if !(params.deadband.is_finite() && params.deadband > 0.0) {
        return Err(Error::InvalidRadius {
            radius: params.deadband,
        });
    }

    let reference = plan(initial, params.eps_curve)?;
    let t_star = reference.total_time;
    let time_budget = 2.0 * t_star + 1.0;
    let max_steps = (time_budget / params.dt).ceil() as u64 + 1;

    let mut state = *initial;
    let mut trace = Vec::new();
    let mut arrival_time = None;
    for step in 0..=max_steps {
        let t = step as f64 * params.dt;
        if t > time_budget {
            break;
        }
        if state.norm() <= params.deadband {
            arrival_time = Some(t);
            trace.push(TrajectorySample { t, state, u: 0.0 });
            break;
        }
        let u = feedback_control(&state, params.eps_curve);
        trace.push(TrajectorySample { t, state, u });
        state = integrate_schedule(&state, &[(u, params.dt)], params.dt)?;
    }

    Ok(RegulationOutcome {
        arrival_time,
        t_star,
        time_budget,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regulates_the_demo_state_near_the_open_loop_optimum() {
        let outcome = regulate(&ScaledState::new(2.0, 1.0), &RegulationParams::default()).unwrap();
        let arrival = outcome.arrival_time.unwrap();
        // Tracks the open-loop minimum up to discretization and the
        // deadband (the ball is reached slightly before the origin would
        // be).
        assert!((arrival - outcome.t_star).abs() <= 0.1);
        assert!(arrival <= outcome.time_budget);
        let last = outcome.trace.last().unwrap();
        assert_eq!(last.u, 0.0);
        assert!(last.state.norm() <= 1e-2);
    }

    #[test]
    fn starting_inside_the_deadband_arrives_immediately() {
        let outcome = regulate(&ScaledState::ORIGIN, &RegulationParams::default()).unwrap();
        assert_eq!(outcome.arrival_time, Some(0.0));
        assert_eq!(outcome.trace.len(), 1);
    }

    #[test]
    fn trace_times_step_by_dt() {
        let params = RegulationParams::default();
        let outcome = regulate(&ScaledState::new(1.0, 0.0), &params).unwrap();
        for (i, sample) in outcome.trace.iter().enumerate() {
            assert_eq!(sample.t, i as f64 * params.dt);
        }
        assert!(outcome.arrival_time.is_some());
    }

    #[test]
    fn rejects_bad_parameters() {
        let s = ScaledState::new(1.0, 0.0);
        let bad_dt = RegulationParams {
            dt: 0.0,
            ..RegulationParams::default()
        };
        assert!(regulate(&s, &bad_dt).is_err());
        let bad_deadband = RegulationParams {
            deadband: -1.0,
            ..RegulationParams::default()
        };
        assert!(regulate(&s, &bad_deadband).is_err());
    }
}
