use proptest::prelude::*;

use super::*;
use crate::model::set_a;
use crate::normal_form::NormalForm;

fn asys() -> AmplitudeSystem {
    NormalForm::compute(&set_a(), &Tolerances::default()).unwrap().amplitude
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

struct Xorshift(u64);

impl Xorshift {
    fn next(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

const PAPER_POINTS: [((f64, f64), Region); 4] = [
    ((-0.5, 0.01), Region::D1),
    ((0.5, -0.0005), Region::D3),
    ((0.5, -0.0009), Region::D4),
    ((0.5, -0.002), Region::D5),
];

// A representative interior point of every region at set (A).
const REGION_POINTS: [((f64, f64), Region); 6] = [
    ((-0.5, 0.01), Region::D1),
    ((0.5, 0.001), Region::D2),
    ((0.5, -0.0005), Region::D3),
    ((0.5, -0.0009), Region::D4),
    ((0.5, -0.002), Region::D5),
    ((-0.5, -0.001), Region::D6),
];

#[test]
fn origin_of_unfolding_is_marginal() {
    let eq = equilibria_at(&asys(), 0.0, 0.0, &tol());
    assert_eq!(eq.e1.stability, Stability::Marginal);
    assert!(eq.e2.is_none() && eq.e3.is_none() && eq.e4.is_none());
    assert!(eq.on_boundary);
}

#[test]
fn d4_has_all_equilibria_and_they_are_zeros() {
    let s = asys();
    let eq = equilibria(&s, 0.5, -0.0009, &tol());
    assert!(eq.e2.is_some() && eq.e3.is_some() && eq.e4.is_some());
    for p in [Some(eq.e1), eq.e2, eq.e3, eq.e4].into_iter().flatten() {
        for eta in [p.eta, -p.eta] {
            let v = vector_field(&s, eq.eps1, eq.eps2, p.rho, eta);
            assert!(v[0].abs() < 1e-12 && v[1].abs() < 1e-12);
        }
    }
}

#[test]
fn paper_points_classify() {
    let s = asys();
    assert_eq!(unfolding_case(&s), UnfoldingCase::Ia);
    for ((t, d), want) in PAPER_POINTS {
        assert_eq!(classify_region(&s, t, d, &tol()).unwrap(), RegionLabel::Region(want), "({t}, {d})");
    }
    for ((t, d), want) in REGION_POINTS {
        assert_eq!(classify_region(&s, t, d, &tol()).unwrap(), RegionLabel::Region(want), "({t}, {d})");
    }
    assert_eq!(classify_region(&s, 0.0, 0.0, &tol()).unwrap(), RegionLabel::Origin);
}

#[test]
fn region_signatures_are_distinct() {
    for (i, a) in Region::ALL.iter().enumerate() {
        for b in &Region::ALL[i + 1..] {
            assert_ne!(a.signature(), b.signature());
        }
    }
}

#[test]
fn golden_line_slopes() {
    let lines = bifurcation_lines(&asys()).unwrap();
    let slope = |n: LineName| lines.iter().find(|l| l.name == n).unwrap().slope;
    assert_eq!(slope(LineName::L1), None);
    assert!(rel(slope(LineName::T1).unwrap(), -1.253237e-3) < 1e-2);
    assert!(rel(slope(LineName::T2).unwrap(), -1.971431e-3) < 1e-2);
    assert!(rel(slope(LineName::L2).unwrap(), -2.678139e-9) < 1e-2);
}

#[test]
fn existence_flips_across_lines() {
    let s = asys();
    let t = tol();
    let lines = bifurcation_lines(&s).unwrap();
    let slope = |n: LineName| lines.iter().find(|l| l.name == n).unwrap().slope.unwrap();
    let tau = 0.5;
    let h = 1e-7;
    let below = |n: LineName| equilibria(&s, tau, slope(n) * tau - h, &t);
    let above = |n: LineName| equilibria(&s, tau, slope(n) * tau + h, &t);
    assert_ne!(below(LineName::L2).e3.is_some(), above(LineName::L2).e3.is_some());
    assert_ne!(below(LineName::T1).e4.is_some(), above(LineName::T1).e4.is_some());
    assert_ne!(below(LineName::T2).e4.is_some(), above(LineName::T2).e4.is_some());
    let left = equilibria(&s, -1e-6, 0.001, &t);
    let right = equilibria(&s, 1e-6, 0.001, &t);
    assert_ne!(left.e2.is_some(), right.e2.is_some());
}

#[test]
fn points_on_lines_get_boundary_labels() {
    let s = asys();
    let t = tol();
    let lines = bifurcation_lines(&s).unwrap();
    for l in lines {
        let (tau, d) = match l.slope {
            None => (0.0, 0.003),
            Some(k) => (0.5, k * 0.5),
        };
        assert_eq!(classify_region(&s, tau, d, &t).unwrap(), RegionLabel::Boundary(l.name), "{:?}", l.name);
    }
    assert_eq!(classify_region(&s, 0.0, -0.003, &t).unwrap(), RegionLabel::Boundary(LineName::L1));
    assert_eq!(classify_region(&s, -0.5, 2.678139e-9 * 0.5, &t).unwrap(), RegionLabel::Boundary(LineName::L2));
    // T1 and T2 only bound regions where the mixed mode exists.
    let k1 = lines[2].slope.unwrap();
    assert!(matches!(classify_region(&s, -0.5, k1 * -0.5, &t).unwrap(), RegionLabel::Region(_)));
}

#[test]
fn classifier_matches_signature_oracle() {
    let s = asys();
    let t = tol();
    let mut rng = Xorshift(0x9e37_79b9_7f4a_7c15);
    let mut seen = [false; 6];
    for _ in 0..4000 {
        let tau = -0.5 + rng.next();
        let d = -0.002 + 0.012 * rng.next() * rng.next();
        let eq = equilibria(&s, tau, d, &t);
        if eq.on_boundary {
            continue;
        }
        let sig = eq.signature();
        let oracle = Region::ALL.into_iter().find(|r| r.signature() == sig);
        let got = classify_region(&s, tau, d, &t).unwrap();
        match (oracle, got) {
            (Some(r), RegionLabel::Region(g)) => {
                assert_eq!(r, g, "({tau}, {d})");
                seen[r as usize] = true;
            }
            (_, RegionLabel::Boundary(_)) => {}
            other => panic!("({tau}, {d}): {other:?}"),
        }
    }
    assert!(seen.iter().all(|x| *x), "{seen:?}");
}

proptest! {
    #[test]
    fn classification_is_scale_invariant(tau in -1.0f64..1.0, d in -0.01f64..0.01, k in 1e-3f64..1e3) {
        let s = asys();
        let t = tol();
        prop_assume!(tau != 0.0 || d != 0.0);
        let a = classify_region(&s, tau, d, &t).unwrap();
        let b = classify_region(&s, k * tau, k * d, &t).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn other_cases_are_unlabeled() {
    let mut s = asys();
    s.c = -0.5;
    s.d_hat_minus_bc = s.d_hat - s.b * s.c;
    assert_eq!(unfolding_case(&s), UnfoldingCase::II);
    assert!(matches!(classify_region(&s, 0.5, -0.0009, &tol()).unwrap(), RegionLabel::Unlabeled(_)));
}

#[test]
fn unfolding_case_table() {
    use UnfoldingCase::*;
    let mut s = asys();
    let mut case = |d: f64, b: f64, c: f64| {
        s.d_hat = d;
        s.b = b;
        s.c = c;
        s.d_hat_minus_bc = d - b * c;
        unfolding_case(&s)
    };
    let got = [
        case(1.0, 2.0, 2.0),
        case(1.0, 0.2, 0.2),
        case(1.0, 1.0, -1.0),
        case(1.0, -1.0, 1.0),
        case(1.0, -2.0, -2.0),
        case(1.0, -0.2, -0.2),
        case(-1.0, 1.0, 1.0),
        case(-1.0, 2.0, -2.0),
        case(-1.0, 0.2, -0.2),
        case(-1.0, -2.0, 2.0),
        case(-1.0, -0.2, 0.2),
        case(-1.0, -1.0, -1.0),
    ];
    assert_eq!(got, [Ia, Ib, II, III, IVa, IVb, V, VIb, VIa, VIIb, VIIa, VIII]);
}

#[test]
fn degenerate_line_arrangement_is_rejected() {
    let mut s = asys();
    s.eps2_map = [2.0 * s.eps1_map[0], 2.0 * s.eps1_map[1]];
    assert!(matches!(bifurcation_lines(&s), Err(Error::Degenerate(_))));
    let mut s = asys();
    s.b = 0.0;
    assert!(matches!(classify_region(&s, 0.1, 0.1, &tol()), Err(Error::Degenerate(_))));
}

#[test]
fn d1_converges_to_origin() {
    let s = asys();
    let tr = integrate(&s, -0.5, 0.01, (0.05, 0.03), 1e4, 1.0).unwrap();
    let (r, e) = tr.last();
    assert!(r.hypot(e) < 1e-6);
    assert!(tr.diverged_at.is_none());
}

#[test]
fn eta_axis_is_invariant() {
    let s = asys();
    let tr = integrate(&s, 0.5, -0.0009, (0.07, 0.0), 2000.0, 0.5).unwrap();
    assert!(tr.eta.iter().all(|e| *e == 0.0));
}

#[test]
fn d5_generic_start_reaches_turing_state() {
    let s = asys();
    let eq = equilibria(&s, 0.5, -0.002, &tol());
    let e3 = eq.e3.unwrap();
    let tr = integrate(&s, 0.5, -0.002, (0.04, 0.02), 2e4, 0.5).unwrap();
    let (r, e) = tr.last();
    assert!(r.abs() < 1e-6 && (e - e3.eta).abs() < 1e-6);
}

#[test]
fn random_starts_end_at_predicted_stable_equilibria() {
    let s = asys();
    let t = tol();
    let mut rng = Xorshift(0xdead_beef_cafe_f00d);
    for ((tau, d), region) in REGION_POINTS {
        let eq = equilibria(&s, tau, d, &t);
        let stable: Vec<(f64, f64)> = [Some(eq.e1), eq.e2, eq.e3, eq.e4]
            .into_iter()
            .flatten()
            .filter(|p| p.stability == Stability::Stable)
            .map(|p| (p.rho, p.eta))
            .collect();
        assert!(!stable.is_empty());
        for _ in 0..100 {
            let ic = (0.2 * rng.next() + 1e-3, 0.2 * rng.next() + 1e-3);
            let tr = integrate(&s, tau, d, ic, 3e4, 0.5).unwrap();
            assert!(tr.diverged_at.is_none());
            let (r, e) = tr.last();
            let hit = stable.iter().any(|(sr, se)| (r - sr).abs() < 1e-5 && (e.abs() - se).abs() < 1e-5);
            assert!(hit, "{region:?} from {ic:?} ended at ({r}, {e})");
        }
    }
}

#[test]
fn divergence_is_reported() {
    let mut s = asys();
    s.epsilon = 1.0;
    let tr = integrate(&s, 0.5, 0.01, (1.0, 1.0), 100.0, 0.01).unwrap();
    assert!(tr.diverged_at.is_some());
    assert!(integrate(&s, 0.5, 0.01, (-1.0, 0.0), 1.0, 0.1).is_err());
}
