use proptest::prelude::*;

use super::*;
use crate::model::set_a;
use crate::spectrum::turing_hopf_point;

fn small(n: usize, horizon: f64) -> SimConfig {
    SimConfig { grid_points: n, horizon, ..Default::default() }
}

fn th_params(tau_eps: f64, d_eps: f64) -> ModelParams {
    let p = set_a();
    let th = turing_hopf_point(&p).unwrap();
    p.with_tau(th.tau0 + tau_eps).with_d(th.d0 + d_eps)
}

#[test]
fn equilibrium_is_a_discrete_fixed_point() {
    let p = th_params(0.0, 0.0);
    let tr = simulate(&p, &InitialCondition::default(), &small(64, 200.0)).unwrap();
    assert!(tr.deviation.iter().all(|d| *d < 1e-10), "{}", tr.monitors.max_deviation);
}

#[test]
fn step_divides_delay_and_respects_bound() {
    let p = th_params(0.5, -0.0009);
    let cfg = SimConfig::default();
    let (dt, k) = time_step(&p, &cfg).unwrap();
    let h = p.l * PI / 256.0;
    assert!((dt * k as f64 - p.tau).abs() < 1e-12 * p.tau);
    assert!(dt <= 0.8 * h * h / (2.0 * p.d.max(1.0 / p.gamma)));
    assert!(p.tau / (k - 1) as f64 > 0.8 * h * h / (2.0 * p.d.max(1.0 / p.gamma)));
}

proptest! {
    #[test]
    fn step_invariants(tau in 0.1f64..20.0, d in 0.01f64..2.0, n in 8usize..512) {
        let p = set_a().with_tau(tau).with_d(d);
        let cfg = small(n, 1.0);
        let (dt, k) = time_step(&p, &cfg).unwrap();
        let h = p.l * PI / n as f64;
        prop_assert!(k >= 1);
        prop_assert!((dt * k as f64 - tau).abs() <= 1e-12 * tau);
        prop_assert!(dt <= 0.8 * h * h / (2.0 * d.max(1.0 / p.gamma)) * (1.0 + 1e-12));
    }
}

/// Independent no-delay integrator: `(m, a)` interleaved, Laplacian as a
/// dense matrix, RK4 at half the step of the solver under test.
fn reference_no_delay(p: &ModelParams, m0: &[f64], a0: &[f64], h: f64, dt: f64, steps: usize) -> (Vec<f64>, Vec<f64>) {
    let np = m0.len();
    let mut lap = vec![vec![0.0; np]; np];
    for i in 0..np {
        lap[i][i] = -2.0 / (h * h);
        let left = if i == 0 { 1 } else { i - 1 };
        let right = if i == np - 1 { np - 2 } else { i + 1 };
        lap[i][left] += 1.0 / (h * h);
        lap[i][right] += 1.0 / (h * h);
    }
    let f = |y: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; 2 * np];
        for i in 0..np {
            let (m, a) = (y[2 * i], y[2 * i + 1]);
            let (mut lm, mut la) = (0.0, 0.0);
            for j in 0..np {
                lm += lap[i][j] * y[2 * j];
                la += lap[i][j] * y[2 * j + 1];
            }
            out[2 * i] = p.d * lm + m * (p.r * a - 1.0 / (1.0 + m));
            out[2 * i + 1] = (la + p.alpha * (1.0 - a) - m * a) / p.gamma;
        }
        out
    };
    let mut y: Vec<f64> = m0.iter().zip(a0).flat_map(|(m, a)| [*m, *a]).collect();
    let hdt = dt / 2.0;
    for _ in 0..2 * steps {
        let k1 = f(&y);
        let y2: Vec<f64> = y.iter().zip(&k1).map(|(y, k)| y + 0.5 * hdt * k).collect();
        let k2 = f(&y2);
        let y3: Vec<f64> = y.iter().zip(&k2).map(|(y, k)| y + 0.5 * hdt * k).collect();
        let k3 = f(&y3);
        let y4: Vec<f64> = y.iter().zip(&k3).map(|(y, k)| y + hdt * k).collect();
        let k4 = f(&y4);
        for i in 0..y.len() {
            y[i] += hdt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    (y.iter().step_by(2).copied().collect(), y.iter().skip(1).step_by(2).copied().collect())
}

#[test]
fn zero_delay_matches_reference_integrator() {
    let p = set_a().with_tau(0.0).with_d(0.05);
    let ic = InitialCondition::cosine(0.1, 0.2, -0.1, -0.2, 4.0);
    let cfg = small(48, 10.0);
    let tr = simulate(&p, &ic, &cfg).unwrap();
    let steps = tr.times.len() - 1;
    assert!((tr.times[steps] - 10.0).abs() < tr.dt);
    let (m0, a0) = ic.profiles(&tr.eq, p.l, &tr.x);
    let h = tr.x[1];
    let (m, a) = reference_no_delay(&p, &m0, &a0, h, tr.dt, (10.0 / tr.dt).round() as usize);
    let last = tr.m.len() - 1;
    for i in 0..m.len() {
        assert!((m[i] - tr.m[last][i]).abs() < 1e-8, "m[{i}]");
        assert!((a[i] - tr.a[last][i]).abs() < 1e-8, "a[{i}]");
    }
}

#[test]
fn even_profiles_stay_symmetric() {
    let p = th_params(0.5, -0.002);
    let ic = InitialCondition::cosine(0.1, 0.3, -0.1, -0.3, 6.0);
    let tr = simulate(&p, &ic, &small(64, 300.0)).unwrap();
    let n = tr.x.len() - 1;
    for (m, a) in tr.m.iter().zip(&tr.a) {
        for i in 0..=n {
            assert!((m[i] - m[n - i]).abs() < 1e-10);
            assert!((a[i] - a[n - i]).abs() < 1e-10);
        }
    }
}

#[test]
fn runs_are_bit_identical() {
    let p = th_params(0.5, -0.0005);
    let ic = InitialCondition::cosine(0.1, 0.3, -0.1, -0.3, 6.0);
    let a = simulate(&p, &ic, &small(32, 100.0)).unwrap();
    let b = simulate(&p, &ic, &small(32, 100.0)).unwrap();
    assert_eq!(a, b);
    let cfg = small(32, 100.0);
    assert_eq!(classify_pattern(&a, &cfg), classify_pattern(&b, &cfg));
}

#[test]
fn spatial_error_is_second_order() {
    let p = set_a().with_tau(1.0).with_d(0.5);
    let ic = InitialCondition::cosine(0.0, 0.2, 0.0, -0.2, 3.0);
    let at = |n: usize| {
        let tr = simulate(&p, &ic, &SimConfig { snapshot_stride: Some(usize::MAX), ..small(n, 2.0) }).unwrap();
        assert!((tr.times.last().unwrap() - 2.0).abs() < 1e-9);
        tr.m.last().unwrap().clone()
    };
    let fine = at(256);
    let err = |n: usize| {
        let u = at(n);
        let s = 256 / n;
        u.iter().enumerate().map(|(i, v)| (v - fine[i * s]).abs()).fold(0.0, f64::max)
    };
    let (e16, e32, e64) = (err(16), err(32), err(64));
    for ratio in [e16 / e32, e32 / e64] {
        assert!((3.5..4.6).contains(&ratio), "{e16} {e32} {e64}");
    }
}

#[test]
fn doubling_grid_keeps_trailing_mean() {
    let p = th_params(-0.5, 0.01);
    let ic = InitialCondition::cosine(0.0, 0.1, 0.0, -0.1, 6.0);
    let mean = |n: usize| {
        let tr = simulate(&p, &ic, &small(n, 400.0)).unwrap();
        let start = tr.times.len() / 2;
        let s: f64 = tr.m[start..].iter().map(|u| u.iter().sum::<f64>() / u.len() as f64).sum();
        s / (tr.m.len() - start) as f64
    };
    let (a, b) = (mean(64), mean(128));
    assert!((a - b).abs() / b < 1e-3);
}

#[test]
fn oversized_step_is_detected() {
    let p = th_params(0.5, -0.002);
    let ic = InitialCondition::cosine(0.1, 0.3, -0.1, -0.3, 6.0);
    let cfg = SimConfig { stability_factor: 4.0, ..small(64, 50.0) };
    assert!(matches!(simulate(&p, &ic, &cfg), Err(Error::SimulationAborted { .. })));
    let tr = simulate(&p, &ic, &SimConfig { abort_on_violation: false, ..cfg }).unwrap();
    assert!(tr.violation.is_some());
    assert!(monitor_wellposedness(&tr).violated);
}

#[test]
fn a_bound_holds_above_one() {
    let p = th_params(0.5, -0.0009);
    let ic = InitialCondition::cosine(0.1, 0.2, 0.2, 0.3, 6.0);
    let tr = simulate(&p, &ic, &small(256, 300.0)).unwrap();
    assert!(tr.monitors.a_bound > 1.2);
    let rep = monitor_wellposedness(&tr);
    assert!(!rep.violated, "{rep:?}");
    assert!(tr.monitors.max_a <= tr.monitors.a_bound + 1e-6);
    assert!(tr.monitors.min_m >= 0.0 && tr.monitors.min_a >= 0.0);
}

#[test]
fn negative_initial_profile_is_rejected() {
    let p = th_params(0.5, -0.0009);
    let ic = InitialCondition::cosine(0.0, 0.5, 0.0, 0.0, 6.0);
    assert!(matches!(simulate(&p, &ic, &small(32, 1.0)), Err(Error::Domain { .. })));
}

fn synthetic(f: impl Fn(f64, f64) -> f64, t_end: f64, snaps: usize) -> FieldTrajectory {
    let p = set_a().with_tau(7.0).with_d(0.05);
    let eq = positive_equilibrium(&p).unwrap();
    let n = 128;
    let x: Vec<f64> = (0..=n).map(|i| i as f64 * p.l * PI / n as f64).collect();
    let times: Vec<f64> = (0..=snaps).map(|i| t_end * i as f64 / snaps as f64).collect();
    let m: Vec<Vec<f64>> = times.iter().map(|&t| x.iter().map(|&x| eq.m_star + f(t, x)).collect()).collect();
    let a = m.clone();
    FieldTrajectory {
        params: p,
        eq,
        x,
        dt: 0.01,
        delay_steps: 700,
        deviation: vec![0.0; times.len()],
        times,
        m,
        a,
        monitors: Monitors { min_m: 0.0, min_a: 0.0, max_a: 1.0, a_bound: 1.0, max_deviation: 0.0 },
        violation: None,
    }
}

#[test]
fn constructed_profiles_classify() {
    let cfg = SimConfig::default();
    let c = classify_pattern(&synthetic(|_, x| 0.05 * (6.0 * x / 6.0).cos(), 1000.0, 500), &cfg);
    assert_eq!(c.pattern, Pattern::InhomogeneousSteady);
    assert_eq!(c.dominant_mode, 6);
    assert!(c.oscillation_amplitude < 1e-12);

    let c = classify_pattern(&synthetic(|t, _| 0.05 * (2.0 * PI * t / 80.0).sin(), 4000.0, 2000), &cfg);
    assert_eq!(c.pattern, Pattern::HomogeneousPeriodic);
    assert_eq!(c.dominant_mode, 0);
    assert!((c.period.unwrap() - 80.0).abs() < 0.5);

    let c = classify_pattern(
        &synthetic(|t, x| 0.05 * (2.0 * PI * t / 80.0).sin() + 0.02 * (3.0 * x / 6.0).cos(), 4000.0, 2000),
        &cfg,
    );
    assert_eq!(c.pattern, Pattern::InhomogeneousPeriodic);
    assert_eq!(c.dominant_mode, 3);

    let c = classify_pattern(&synthetic(|_, _| 0.0, 1000.0, 100), &cfg);
    assert_eq!(c.pattern, Pattern::HomogeneousSteady);
}

#[test]
fn trending_or_short_runs_are_undetermined() {
    let cfg = SimConfig::default();
    let decaying = synthetic(|t, x| 0.05 * (-t / 300.0).exp() * (x / 6.0).cos(), 2000.0, 1000);
    assert_eq!(classify_pattern(&decaying, &cfg).pattern, Pattern::Undetermined);
    let flat = synthetic(|_, _| 0.0, 100.0, 10);
    let c = classify_pattern(&flat, &SimConfig { min_window: 500.0, ..cfg });
    assert_eq!(c.pattern, Pattern::Undetermined);
}

#[test]
fn amplitude_attractors_map_to_patterns() {
    use crate::amplitude::equilibria;
    use crate::normal_form::NormalForm;
    use crate::Tolerances;
    let tol = Tolerances::default();
    let asys = NormalForm::compute(&set_a(), &tol).unwrap().amplitude;
    let at = |t, d| attractor_patterns(&equilibria(&asys, t, d, &tol));
    assert_eq!(at(-0.5, 0.01), [Pattern::HomogeneousSteady]);
    assert_eq!(at(0.5, -0.0005), [Pattern::HomogeneousPeriodic]);
    assert_eq!(at(0.5, -0.0009), [Pattern::HomogeneousPeriodic, Pattern::InhomogeneousSteady]);
    assert_eq!(at(0.5, -0.002), [Pattern::InhomogeneousSteady]);
}
