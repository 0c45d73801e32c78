use std::thread;

use mussel_th_core::amplitude::{bifurcation_lines, classify_region, equilibria, unfolding_case, RegionLabel};
use mussel_th_core::model::{hypotheses, positive_equilibrium};
use mussel_th_core::normal_form::{AmplitudeSystem, NormalForm};
use mussel_th_core::pde::{attractor_patterns, classify_pattern, monitor_wellposedness, simulate};
use mussel_th_core::spectrum::{turing_hopf_point, turing_threshold, Linearization};
use mussel_th_core::Tolerances;
use serde::Serialize;
use serde_json::json;

use crate::config::{linspace, RunConfig};
use crate::output::Out;
use crate::CliError;

pub fn analyze(cfg: &RunConfig, out: &mut Out) -> Result<(), CliError> {
    let p = cfg.model;
    let hyp = hypotheses(&p);
    let eq = if hyp.h1_holds { Some(positive_equilibrium(&p)?) } else { None };
    out.json(
        "analyze.json",
        json!({
            "equilibrium": eq,
            "residuals": eq.map(|e| e.residuals(&p)),
            "hypotheses": hyp,
        }),
    )?;
    hyp.require_h1()?;
    let eq = eq.expect("H1 holds");
    println!("m* = {:.9}  a* = {:.9}", eq.m_star, eq.a_star);
    println!("H1 {}  H2 {:?}", hyp.h1_holds, hyp.h2_holds);
    Ok(())
}

#[derive(Serialize)]
struct HopfRow {
    n: u32,
    omega: f64,
    j: u32,
    tau: f64,
}

pub fn hopf(cfg: &RunConfig, out: &mut Out) -> Result<(), CliError> {
    let lin = Linearization::new(cfg.model)?;
    let mut rows = Vec::new();
    for n in 0..=cfg.hopf.n_max {
        if lin.hopf_frequency(n)?.is_none() {
            continue;
        }
        let br = lin.hopf_branch(n, cfg.hopf.j_max)?;
        for (j, tau) in br.taus.iter().enumerate() {
            rows.push(HopfRow { n, omega: br.omega_n, j: j as u32, tau: *tau });
        }
    }
    let count = rows.len();
    let path = out.csv("hopf", rows)?;
    println!("{count} critical delays -> {}", path.display());
    Ok(())
}

#[derive(Serialize)]
struct TuringRow {
    alpha: f64,
    r: f64,
    d0: f64,
    n2: u32,
    k2_star: f64,
}

pub fn turing(cfg: &RunConfig, out: &mut Out) -> Result<(), CliError> {
    let t = &cfg.turing;
    let mut rows = Vec::new();
    let mut skipped = 0;
    for alpha in linspace(t.alpha_min, t.alpha_max, t.alpha_steps) {
        let p = mussel_th_core::ModelParams { alpha, ..cfg.model };
        let Ok(lin) = Linearization::new(p) else {
            skipped += 1;
            continue;
        };
        match turing_threshold(&lin) {
            Ok(tt) => rows.push(TuringRow { alpha, r: p.r, d0: tt.d0, n2: tt.n2, k2_star: tt.k2_star }),
            Err(_) => skipped += 1,
        }
    }
    let count = rows.len();
    let path = out.csv("turing", rows)?;
    println!("{count} thresholds ({skipped} alpha values outside the admissible range) -> {}", path.display());
    Ok(())
}

pub fn th_point(cfg: &RunConfig, out: &mut Out) -> Result<(), CliError> {
    let th = turing_hopf_point(&cfg.model)?;
    out.json("th_point.json", json!({ "th_point": th }))?;
    println!("tau0 = {:.9}  d0 = {:.9}  n1 = {}  n2 = {}  omega0 = {:.9}", th.tau0, th.d0, th.n1, th.n2, th.omega0);
    Ok(())
}

pub fn normal_form(cfg: &RunConfig, out: &mut Out) -> Result<(), CliError> {
    let nf = NormalForm::compute(&cfg.model, &cfg.tolerances)?;
    let a = &nf.amplitude;
    let lines = bifurcation_lines(a)?;
    let derivs: serde_json::Map<String, serde_json::Value> =
        nf.derivs.entries().into_iter().map(|(k, v)| (k, json!(v))).collect();
    out.json(
        "normal_form.json",
        json!({
            "th_point": a.th,
            "eigen": nf.eigen,
            "derivatives": derivs,
            "appendix_vectors": nf.vectors,
            "coefficients": nf.coeffs,
            "amplitude": a,
            "lines": lines,
            "unfolding_case": unfolding_case(a),
        }),
    )?;
    println!(
        "epsilon = {}  d_hat = {}  b = {:.6}  c = {:.6}  d_hat - bc = {:.6}",
        a.epsilon, a.d_hat, a.b, a.c, a.d_hat_minus_bc
    );
    println!("eps1 = {:.6e} tau_eps + {:.6e} d_eps", a.eps1_map[0], a.eps1_map[1]);
    println!("eps2 = {:.6e} tau_eps + {:.6e} d_eps", a.eps2_map[0], a.eps2_map[1]);
    println!("unfolding case {:?}", unfolding_case(a));
    Ok(())
}

/// Human-readable label.
pub fn describe(label: &RegionLabel) -> String {
    match label {
        RegionLabel::Region(r) => format!("{r:?}: {}", r.description()),
        RegionLabel::Boundary(l) => format!("boundary {l:?}"),
        RegionLabel::Origin => "origin / Turing\u{2013}Hopf point".to_string(),
        RegionLabel::Unlabeled(sig) => format!("unlabeled sector {sig:?}"),
    }
}

/// Short label for tables.
pub fn short(label: &RegionLabel) -> String {
    match label {
        RegionLabel::Region(r) => format!("{r:?}"),
        RegionLabel::Boundary(l) => format!("{l:?}"),
        RegionLabel::Origin => "origin".to_string(),
        RegionLabel::Unlabeled(_) => "unlabeled".to_string(),
    }
}

pub fn classify(cfg: &RunConfig, out: &mut Out) -> Result<(), CliError> {
    let (t, d) = (cfg.classify.tau_eps, cfg.classify.d_eps);
    let a = NormalForm::compute(&cfg.model, &cfg.tolerances)?.amplitude;
    let label = classify_region(&a, t, d, &cfg.tolerances)?;
    let eq = equilibria(&a, t, d, &cfg.tolerances);
    out.json(
        "classify.json",
        json!({
            "tau_eps": t,
            "d_eps": d,
            "eps": [eq.eps1, eq.eps2],
            "label": label,
            "description": describe(&label),
            "equilibria": eq,
        }),
    )?;
    println!("{}", describe(&label));
    Ok(())
}

#[derive(Serialize)]
struct SweepRow {
    tau_eps: f64,
    d_eps: f64,
    eps1: f64,
    eps2: f64,
    label: String,
}

fn sweep_rows(a: &AmplitudeSystem, tol: &Tolerances, points: &[(f64, f64)]) -> Result<Vec<SweepRow>, CliError> {
    let mut rows = Vec::with_capacity(points.len());
    for &(t, d) in points {
        let label = classify_region(a, t, d, tol)?;
        let (eps1, eps2) = a.unfolding(t, d);
        rows.push(SweepRow { tau_eps: t, d_eps: d, eps1, eps2, label: short(&label) });
    }
    Ok(rows)
}

pub fn sweep(cfg: &RunConfig, out: &mut Out) -> Result<(), CliError> {
    let s = &cfg.sweep;
    let a = NormalForm::compute(&cfg.model, &cfg.tolerances)?.amplitude;
    let points: Vec<(f64, f64)> = linspace(s.tau_min, s.tau_max, s.tau_steps)
        .into_iter()
        .flat_map(|t| linspace(s.d_min, s.d_max, s.d_steps).into_iter().map(move |d| (t, d)))
        .collect();
    let workers = thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = points.len().div_ceil(workers).max(1);
    let tol = cfg.tolerances;
    let parts: Vec<Result<Vec<SweepRow>, CliError>> = thread::scope(|sc| {
        let handles: Vec<_> = points.chunks(chunk).map(|c| sc.spawn(|| sweep_rows(&a, &tol, c))).collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    let mut rows = Vec::with_capacity(points.len());
    for p in parts {
        rows.extend(p?);
    }
    let mut regions: Vec<String> = rows.iter().filter(|r| r.label.starts_with('D')).map(|r| r.label.clone()).collect();
    regions.sort();
    regions.dedup();
    let count = rows.len();
    let path = out.csv("sweep", rows)?;
    println!("{count} points, regions: {} -> {}", regions.join(" "), path.display());
    Ok(())
}

#[derive(Serialize)]
struct FieldRow {
    t: f64,
    x: f64,
    m: f64,
    a: f64,
}

pub fn simulate_cmd(cfg: &RunConfig, out: &mut Out) -> Result<(), CliError> {
    let sb = &cfg.simulate;
    let nf = NormalForm::compute(&cfg.model, &cfg.tolerances)?;
    let th = nf.amplitude.th;
    let p = cfg.model.with_tau(th.tau0 + sb.tau_eps).with_d(th.d0 + sb.d_eps);
    let tr = simulate(&p, &sb.initial, &sb.sim)?;
    let class = classify_pattern(&tr, &sb.sim);
    let report = monitor_wellposedness(&tr);
    let region = classify_region(&nf.amplitude, sb.tau_eps, sb.d_eps, &cfg.tolerances)?;
    let predicted = attractor_patterns(&equilibria(&nf.amplitude, sb.tau_eps, sb.d_eps, &cfg.tolerances));

    let rows = tr.times.iter().enumerate().flat_map(|(i, &t)| {
        let (m, a) = (&tr.m[i], &tr.a[i]);
        tr.x.iter().enumerate().map(move |(j, &x)| FieldRow { t, x, m: m[j], a: a[j] })
    });
    out.csv("simulate", rows)?;
    out.json(
        "simulate.json",
        json!({
            "params": p,
            "equilibrium": tr.eq,
            "dt": tr.dt,
            "delay_steps": tr.delay_steps,
            "snapshots": tr.times.len(),
            "pattern": class,
            "monitors": tr.monitors,
            "wellposedness": report,
            "violation": tr.violation.map(|(t, why)| json!({ "time": t, "reason": why })),
            "region": short(&region),
            "amplitude_attractors": predicted,
        }),
    )?;
    println!(
        "{:?} (dominant mode {}, oscillation {:.3e}, period {:?})",
        class.pattern, class.dominant_mode, class.oscillation_amplitude, class.period
    );
    println!("region {}; amplitude system predicts {:?}", short(&region), predicted);
    if report.violated {
        println!("well-posedness monitor tripped: {report:?}");
    }
    Ok(())
}
