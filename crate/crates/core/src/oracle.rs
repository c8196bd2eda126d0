//! Brute-force validation independent of the closed-form synthesis.
//!
//! Two pieces: a classical fixed-step RK4 integrator for piecewise-constant
//! control histories, and a grid search over single-switch bang-bang
//! schedules that recovers the minimum time numerically. The search knows
//! nothing about switching curves or bang-duration formulas; it only
//! integrates the plant and asks where each candidate schedule ends.
//!
//! RK4 reproduces polynomials of degree four exactly, and under constant
//! control the double integrator's flow is quadratic in time, so every step
//! is exact up to round-off whatever the step size. The integrator
//! therefore agrees with the closed-form propagation to machine precision,
//! which is precisely what makes it a usable referee.

use crate::error::{Error, Result};
use crate::scaling::ScaledState;

/// Outcome of the single-switch schedule search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    /// Fastest total time found.
    pub best_time: f64,
    /// First control of the winning schedule, -1 or +1.
    pub best_first_control: f64,
    /// Switch instant of the winning schedule; never exceeds `best_time`.
    pub best_switch_time: f64,
    /// Distance of the winning schedule's endpoint from the origin.
    pub terminal_miss: f64,
    /// The search grid step.
    pub resolution: f64,
}

/// One classical RK4 step of size `h` under constant control.
fn rk4_step(s: &ScaledState, u: f64, h: f64) -> ScaledState {
    // k-stages of (x' = v, v' = u); the v-derivative is constant.
    let k1 = s.x_dot;
    let k2 = s.x_dot + h * u / 2.0;
    let k3 = k2;
    let k4 = s.x_dot + h * u;
    ScaledState::new(
        s.x + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0,
        s.x_dot + h * u,
    )
}

/// Integrates the plant through a piecewise-constant schedule of
/// `(control, duration)` segments with fixed steps of `dt`, splitting steps
/// exactly at segment boundaries.
pub fn integrate_schedule(
    s: &ScaledState,
    schedule: &[(f64, f64)],
    dt: f64,
) -> Result<ScaledState> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidStep { step: dt });
    }
    if !s.is_finite() {
        return Err(Error::NonFiniteState);
    }
    let mut state = *s;
    for &(u, duration) in schedule {
        if !(duration.is_finite() && duration >= 0.0) {
            return Err(Error::NegativeDuration { duration });
        }
        let whole = (duration / dt).floor();
        for _ in 0..whole as u64 {
            state = rk4_step(&state, u, dt);
        }
        let rem = duration - whole * dt;
        if rem > 0.0 {
            state = rk4_step(&state, u, rem);
        }
    }
    Ok(state)
}

/// A candidate schedule evaluated by the search.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    total_time: f64,
    switch_time: f64,
    miss: f64,
    first_control: f64,
}

/// Endpoint of the unique continuation of a candidate: apply `u1` for
/// `t_s`, then `-u1` until the velocity crosses zero. Returns the signed
/// terminal position (the signed miss) and the candidate.
///
/// Uses one exact RK4 step per leg; see the module notes on exactness.
fn evaluate(s: &ScaledState, u1: f64, t_s: f64) -> (f64, Candidate) {
    let at_switch = if t_s > 0.0 {
        rk4_step(s, u1, t_s)
    } else {
        *s
    };
    // Coast time until x_dot crosses zero under u2 = -u1; non-negative on
    // the searched domain, clamped against round-off.
    let coast = (at_switch.x_dot / u1).max(0.0);
    let end = if coast > 0.0 {
        rk4_step(&at_switch, -u1, coast)
    } else {
        at_switch
    };
    (
        end.x,
        Candidate {
            total_time: t_s + coast,
            switch_time: t_s,
            miss: end.norm(),
            first_control: u1,
        },
    )
}

/// Searches one first-control branch. The valid switch domain starts where
/// the coast time is non-negative; over it the signed miss is monotone, so
/// the branch offers at most one schedule that ends exactly at the origin.
/// If the scan brackets a sign change the root is bisected to convergence,
/// otherwise the domain boundary (the best the branch can do) is returned.
fn search_branch(s: &ScaledState, u1: f64, t_step: f64) -> Candidate {
    let t_left = (-s.x_dot / u1).max(0.0);
    let (g_left, boundary) = evaluate(s, u1, t_left);
    if g_left == 0.0 {
        return boundary;
    }

    // The signed miss is quadratic in the switch time, so a crossing (if
    // any) lies within sqrt(|g_left|) of the domain boundary.
    let cap = t_left + g_left.abs().sqrt() + 2.0 * t_step;
    let mut prev_t = t_left;
    let mut prev_g = g_left;
    let mut k = 1u64;
    loop {
        let t_k = t_left + k as f64 * t_step;
        if t_k > cap {
            return boundary;
        }
        let (g_k, candidate) = evaluate(s, u1, t_k);
        if g_k == 0.0 {
            return candidate;
        }
        if g_k.signum() != prev_g.signum() {
            return bisect(s, u1, prev_t, t_k, prev_g);
        }
        prev_t = t_k;
        prev_g = g_k;
        k += 1;
    }
}

/// Bisects the signed miss to convergence inside a bracketing interval.
fn bisect(s: &ScaledState, u1: f64, mut lo: f64, mut hi: f64, g_lo: f64) -> Candidate {
    let mut lo_sign = g_lo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval collapsed to adjacent floats
        }
        let (g_mid, _) = evaluate(s, u1, mid);
        if g_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if g_mid.signum() == lo_sign {
            lo = mid;
            lo_sign = g_mid.signum();
        } else {
            hi = mid;
        }
    }
    let (g_lo_final, cand_lo) = evaluate(s, u1, lo);
    let (g_hi_final, cand_hi) = evaluate(s, u1, hi);
    if g_lo_final.abs() <= g_hi_final.abs() {
        cand_lo
    } else {
        cand_hi
    }
}

/// Grid search for the minimum transfer time to the origin over
/// single-switch bang-bang schedules.
///
/// Enumerates both first controls and switch times on a `t_step` grid,
/// refines the best schedule of each branch by bisection on the signed
/// terminal position, and returns the fastest candidate whose terminal miss
/// is within `accept_radius`. Ties resolve toward the smaller switch time,
/// then toward first control -1. Deterministic for fixed inputs.
pub fn grid_search_min_time(
    s: &ScaledState,
    t_step: f64,
    accept_radius: f64,
) -> Result<OracleResult> {
    if !s.is_finite() {
        return Err(Error::NonFiniteState);
    }
    if s.x == 0.0 && s.x_dot == 0.0 {
        return Err(Error::OriginExcluded);
    }
    if !(t_step.is_finite() && t_step > 0.0) {
        return Err(Error::InvalidStep { step: t_step });
    }
    if !(accept_radius.is_finite() && accept_radius > 0.0) {
        return Err(Error::InvalidRadius {
            radius: accept_radius,
        });
    }

    let mut best: Option<Candidate> = None;
    let mut best_miss_seen = f64::INFINITY;
    for u1 in [-1.0, 1.0] {
        let candidate = search_branch(s, u1, t_step);
        best_miss_seen = best_miss_seen.min(candidate.miss);
        if candidate.miss > accept_radius {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => {
                candidate.total_time < b.total_time
                    || (candidate.total_time == b.total_time
                        && candidate.switch_time < b.switch_time)
            }
        };
        if better {
            best = Some(candidate);
        }
    }

    match best {
        Some(c) => Ok(OracleResult {
            best_time: c.total_time,
            // A switch at t = 0 is the degenerate single-bang schedule:
            // the first segment is empty and the second control is the one
            // that acts from the start.
            best_first_control: if c.switch_time == 0.0 {
                -c.first_control
            } else {
                c.first_control
            },
            best_switch_time: c.switch_time,
            terminal_miss: c.miss,
            resolution: t_step,
        }),
        None => Err(Error::SearchFailed {
            best_miss: best_miss_seen,
            accept_radius,
        }),
    }
}
