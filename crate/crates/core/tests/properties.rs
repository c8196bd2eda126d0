//! Cross-module invariants: the plan, the closed-form propagation, the
//! numerical integrator and the closed loop must all tell the same story.

use ditop::{
    integrate_schedule, plan, plan_state_at, propagate_const, regulate, time_across_switch,
    to_physical, to_scaled, CaseTag, PhysicalConfig, PhysicalState, RegulationParams, ScaledState,
    DEFAULT_EPS_CURVE,
};
use proptest::prelude::*;

fn arb_state() -> impl Strategy<Value = ScaledState> {
    (-5.0f64..5.0, -5.0f64..5.0).prop_map(|(x, v)| ScaledState::new(x, v))
}

proptest! {
    // Closed-form propagation of the plan ends at the origin.
    #[test]
    fn plans_reach_the_origin(s in arb_state()) {
        let p = plan(&s, DEFAULT_EPS_CURVE).unwrap();
        let (end, _) = plan_state_at(&p, p.total_time).unwrap();
        prop_assert!(end.norm() <= 1e-9 * (1.0 + s.norm_sq()));
    }

    // The RK4 integrator agrees: running the planned schedule numerically
    // also lands on the origin.
    #[test]
    fn integrated_plans_reach_the_origin(s in arb_state()) {
        let p = plan(&s, DEFAULT_EPS_CURVE).unwrap();
        let end = integrate_schedule(&s, &p.control_schedule(), 1e-3).unwrap();
        prop_assert!(end.norm() <= 1e-9 * (1.0 + s.norm_sq()));
    }

    // The velocity-difference identities integrate to the full minimal
    // time across the switch.
    #[test]
    fn whole_trajectory_time_identity(s in arb_state()) {
        let p = plan(&s, DEFAULT_EPS_CURVE).unwrap();
        prop_assume!(p.case_tag == CaseTag::OffCurve);
        let whole = time_across_switch(&s, &ScaledState::ORIGIN, &p).unwrap();
        prop_assert!((whole - p.total_time).abs() <= 1e-12 * p.total_time.max(1.0));
    }

    // The unit scaling leaves time alone: evolving the physical plant
    // y'' = C/I and scaling the result equals scaling first and evolving
    // x'' = u, sample for sample at the same instants.
    #[test]
    fn scaling_commutes_with_time_evolution(
        inertia in 0.1f64..10.0,
        cmax in 0.1f64..10.0,
        y in -5.0f64..5.0,
        ydot in -5.0f64..5.0,
        frac in -1.0f64..1.0,
        t in 0.0f64..5.0,
    ) {
        let cfg = PhysicalConfig::new(inertia, cmax).unwrap();
        let control = frac * cmax;
        let physical0 = PhysicalState::new(y, ydot);
        let (scaled0, u) = to_scaled(&cfg, &physical0, control).unwrap();

        // Physical closed form at time t under constant control.
        let accel = control / inertia;
        let physical_t = PhysicalState::new(
            accel * t * t / 2.0 + ydot * t + y,
            accel * t + ydot,
        );
        // Scaled closed form at the same t, mapped back.
        let scaled_t = propagate_const(&scaled0, u, t).unwrap();
        let (mapped, _) = to_physical(&cfg, &scaled_t, u).unwrap();

        let tol = |v: f64| 1e-9 * (1.0 + v.abs());
        prop_assert!((mapped.y - physical_t.y).abs() <= tol(physical_t.y));
        prop_assert!((mapped.y_dot - physical_t.y_dot).abs() <= tol(physical_t.y_dot));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // The discrete feedback loop tracks the open-loop optimum.
    #[test]
    fn closed_loop_tracks_the_optimum(s in arb_state()) {
        let outcome = regulate(&s, &RegulationParams::default()).unwrap();
        let arrival = outcome.arrival_time.expect("loop must arrive");
        prop_assert!(arrival <= outcome.t_star + 0.1);
        prop_assert!(arrival <= outcome.time_budget);
    }
}
