//! Acceptance suite: every criterion below runs at its stated tolerance and
//! prints one pass/fail line (visible with `--nocapture`).
//!
//! The randomized suites use a fixed ChaCha8 seed so runs are reproducible.

use ditop::{
    build_certificate, feedback_control, grid_search_min_time, plan, plan_state_at, propagate_const,
    regulate, switching_curve_value, time_across_switch, time_between, ArcKind, CaseTag, Plan,
    RegulationParams, ScaledState, DEFAULT_EPS_CURVE,
};
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x0d17_0b4e;
const SQRT_2P5: f64 = 1.5811388300841898;

fn plan_of(s: &ScaledState) -> Plan {
    plan(s, DEFAULT_EPS_CURVE).unwrap()
}

/// 21 x 21 grid over [-5, 5]^2.
fn grid_states() -> Vec<ScaledState> {
    let mut states = Vec::with_capacity(441);
    for i in 0..21 {
        for j in 0..21 {
            let x = -5.0 + 0.5 * i as f64;
            let v = -5.0 + 0.5 * j as f64;
            states.push(ScaledState::new(x, v));
        }
    }
    states
}

fn random_states(n: usize, exclusion_radius: f64) -> Vec<ScaledState> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let axis = Uniform::new_inclusive(-5.0f64, 5.0);
    let mut states = Vec::with_capacity(n);
    while states.len() < n {
        let s = ScaledState::new(axis.sample(&mut rng), axis.sample(&mut rng));
        if s.norm() > exclusion_radius {
            states.push(s);
        }
    }
    states
}

/// All states the endpoint/certificate/inequality suites run over.
fn criterion2_states() -> Vec<ScaledState> {
    let mut states = grid_states();
    states.extend(random_states(10_000, 0.0));
    states
}

fn rel_close(value: f64, expected: f64, rel: f64) -> bool {
    (value - expected).abs() <= rel * expected.abs()
}

#[test]
fn criterion_1_demo_plan_closed_forms() {
    let p = plan_of(&ScaledState::new(2.0, 1.0));
    assert_eq!(p.case_tag, CaseTag::OffCurve);
    assert_eq!(p.sigma0, 1.0);
    assert!(rel_close(p.lambda0.unwrap(), SQRT_2P5, 1e-12));
    assert!(rel_close(p.delta1().unwrap(), 2.58113883008419, 1e-12));
    assert!(rel_close(p.delta2().unwrap(), SQRT_2P5, 1e-12));
    assert!(rel_close(p.total_time, 4.16227766016838, 1e-12));
    let s = p.switch_point.unwrap();
    assert!(rel_close(s.x, 1.25, 1e-12));
    assert!(rel_close(s.x_dot, -SQRT_2P5, 1e-12));
    println!("criterion 1 (closed-form demo plan): PASS");
}

#[test]
fn criterion_2_endpoint_reach() {
    let mut worst: f64 = 0.0;
    for s in criterion2_states() {
        let p = plan_of(&s);
        let (end, _) = plan_state_at(&p, p.total_time).unwrap();
        let tol = 1e-9 * (1.0 + s.norm_sq());
        let miss = end.norm();
        assert!(
            miss <= tol,
            "endpoint miss {miss} exceeds {tol} from ({}, {})",
            s.x,
            s.x_dot
        );
        worst = worst.max(miss / tol);
    }
    println!("criterion 2 (endpoint reach, 10441 states): PASS (worst miss/tol {worst:.2e})");
}

#[test]
fn criterion_3_oracle_equivalence() {
    let t_step = 1e-3;
    // A terminal miss of m near the switching curve shortens the reported
    // time by up to 2*sqrt(m); radius t_step^2 keeps that inside the
    // 2*t_step comparison tolerance.
    let accept_radius = t_step * t_step;
    let states = random_states(500, 0.05);
    let mut worst_diff: f64 = 0.0;
    for s in &states {
        let p = plan_of(s);
        let r = grid_search_min_time(s, t_step, accept_radius).unwrap();
        let diff = (r.best_time - p.total_time).abs();
        assert!(
            diff <= 2.0 * t_step,
            "oracle time {} vs analytic {} at ({}, {})",
            r.best_time,
            p.total_time,
            s.x,
            s.x_dot
        );
        let expected = p.first_control().unwrap();
        let on_curve_ride = if s.x_dot > 0.0 {
            -1.0
        } else if s.x_dot < 0.0 {
            1.0
        } else {
            0.0
        };
        let f0 = switching_curve_value(s);
        let control_ok = r.best_first_control == expected
            || (f0.abs() <= accept_radius && r.best_first_control == on_curve_ride);
        assert!(
            control_ok,
            "oracle control {} vs expected {expected} at ({}, {})",
            r.best_first_control, s.x, s.x_dot
        );
        worst_diff = worst_diff.max(diff);
    }
    println!("criterion 3 (oracle equivalence, 500 states): PASS (worst |dt| {worst_diff:.2e})");
}

#[test]
fn criterion_4_certificate_suite() {
    let mut worst: f64 = 0.0;
    let mut checked = 0usize;
    for s in criterion2_states() {
        let p = plan_of(&s);
        if p.case_tag == CaseTag::AtOrigin {
            continue;
        }
        let cert = build_certificate(&p, 1.0).unwrap();
        let report = cert.verify(1000).unwrap();
        let tol = 1e-9 * (1.0 + s.norm_sq());
        assert!(
            report.max_abs_hamiltonian <= tol,
            "max |H| {} exceeds {tol} at ({}, {})",
            report.max_abs_hamiltonian,
            s.x,
            s.x_dot
        );
        assert!(report.sign_changes <= 1, "{} sign changes", report.sign_changes);
        assert!(report.schedule_agreement, "schedule mismatch at ({}, {})", s.x, s.x_dot);
        if p.case_tag == CaseTag::OffCurve {
            let err = report.switch_root_rel_error.unwrap();
            assert!(err <= 1e-12, "switch root off by {err} rel");
        }
        assert!(report.passed);
        worst = worst.max(report.max_abs_hamiltonian / tol);
        checked += 1;
    }
    println!("criterion 4 (certificate suite, {checked} states x 1000 samples): PASS (worst |H|/tol {worst:.2e})");
}

#[test]
fn criterion_5_inequality_suite() {
    let mut off_curve = 0usize;
    let mut on_curve = 0usize;
    for s in criterion2_states() {
        let p = plan_of(&s);
        match p.case_tag {
            CaseTag::AtOrigin => {}
            CaseTag::OnCurve => {
                assert_eq!(p.total_time, s.x_dot.abs(), "on-curve t_star must be |v0| exactly");
                on_curve += 1;
            }
            CaseTag::OffCurve => {
                let radicand = p.sigma0 * s.x + s.x_dot * s.x_dot / 2.0;
                assert!(radicand > 0.0);
                let lambda0 = p.lambda0.unwrap();
                assert!(lambda0 > 0.0);
                if p.sigma0 * s.x_dot < 0.0 {
                    assert!(lambda0 > s.x_dot.abs());
                }
                assert!(p.delta1().unwrap() > 0.0);
                assert!(p.total_time > s.x_dot.abs());
                off_curve += 1;
            }
        }
    }
    println!(
        "criterion 5 (inequality suite, {off_curve} off-curve / {on_curve} on-curve): PASS (zero violations)"
    );
}

#[test]
fn criterion_6_time_of_flight_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xff);
    let unit = Uniform::new_inclusive(0.0f64, 1.0);
    let mut checked = 0usize;
    for s in random_states(1000, 0.05) {
        let p = plan_of(&s);
        if p.case_tag != CaseTag::OffCurve {
            continue;
        }
        let u1 = -p.sigma0;
        let u2 = p.sigma0;
        let delta1 = p.delta1().unwrap();
        let delta2 = p.delta2().unwrap();
        let switch = p.switch_point.unwrap();

        // Pair on the first arc, generated by propagation.
        let (ta, tb) = {
            let a = unit.sample(&mut rng) * delta1;
            let b = unit.sample(&mut rng) * delta1;
            (a.min(b), a.max(b))
        };
        let a = propagate_const(&s, u1, ta).unwrap();
        let b = propagate_const(&s, u1, tb).unwrap();
        let measured = time_between(&a, &b, ArcKind::P1, p.sigma0).unwrap();
        let expected = tb - ta;
        assert!(
            (measured - expected).abs() <= 1e-12 * expected.max(1.0),
            "p1 pair: {measured} vs {expected}"
        );

        // Pair on the second arc.
        let (tc, td) = {
            let c = unit.sample(&mut rng) * delta2;
            let d = unit.sample(&mut rng) * delta2;
            (c.min(d), c.max(d))
        };
        let c = propagate_const(&switch, u2, tc).unwrap();
        let d = propagate_const(&switch, u2, td).unwrap();
        let measured = time_between(&c, &d, ArcKind::P2, p.sigma0).unwrap();
        let expected = td - tc;
        assert!(
            (measured - expected).abs() <= 1e-12 * expected.max(1.0),
            "p2 pair: {measured} vs {expected}"
        );

        // Across the switch over the full trajectory: initial to origin.
        let whole = time_across_switch(&s, &ScaledState::ORIGIN, &p).unwrap();
        assert!(
            (whole - p.total_time).abs() <= 1e-12 * p.total_time.max(1.0),
            "whole-trajectory time {whole} vs t_star {}",
            p.total_time
        );
        checked += 1;
    }
    assert!(checked >= 990, "expected nearly all 1000 states off-curve");
    println!("criterion 6 (time-of-flight identities, {checked} states): PASS");
}

#[test]
fn criterion_7_closed_loop_regulation() {
    let params = RegulationParams {
        dt: 1e-3,
        deadband: 1e-2,
        eps_curve: DEFAULT_EPS_CURVE,
    };
    let mut worst_overshoot: f64 = f64::NEG_INFINITY;
    for s in grid_states() {
        let outcome = regulate(&s, &params).unwrap();
        let arrival = outcome
            .arrival_time
            .unwrap_or_else(|| panic!("no arrival from ({}, {})", s.x, s.x_dot));
        assert!(
            arrival <= outcome.t_star + 0.1,
            "arrival {arrival} exceeds t_star {} + 0.1 from ({}, {})",
            outcome.t_star,
            s.x,
            s.x_dot
        );
        assert!(arrival <= outcome.time_budget);
        worst_overshoot = worst_overshoot.max(arrival - outcome.t_star);
    }
    println!(
        "criterion 7 (closed-loop regulation, 441 states): PASS (worst arrival - t_star = {worst_overshoot:.2e})"
    );
}

#[test]
fn criterion_8_symmetry() {
    for s in criterion2_states() {
        let p = plan_of(&s);
        let m = plan_of(&ScaledState::new(-s.x, -s.x_dot));
        assert_eq!(p.bangs.len(), m.bangs.len(), "at ({}, {})", s.x, s.x_dot);
        for (a, b) in p.bangs.iter().zip(&m.bangs) {
            assert_eq!(a.duration, b.duration);
            assert_eq!(a.u, -b.u);
        }
        assert_eq!(p.total_time, m.total_time);
    }
    println!("criterion 8 (symmetry, 10441 state pairs): PASS");
}

// The feedback law is the plan's first bang everywhere; exercised across
// the full criterion-2 state set so the closed-loop criterion rests on a
// verified law.
#[test]
fn feedback_is_the_first_bang_everywhere() {
    for s in criterion2_states() {
        let p = plan_of(&s);
        if let Some(u) = p.first_control() {
            assert_eq!(feedback_control(&s, DEFAULT_EPS_CURVE), u);
        }
    }
    println!("feedback law agreement (10441 states): PASS");
}
