//! Property tests for root systems, metrics, GO verdicts and Ricci curvature.

use num::{One, Zero};
use proptest::prelude::*;

use gometrics::gocheck::{
    lie_group_problem, standard_samples, Arith, Formulation, GoProblem, ReductiveSpace, Setup, Tolerances, Verdict,
};
use gometrics::liealg::{build_abelian, build_su2, CompactLieAlgebra, Subspace};
use gometrics::linalg::{axpy, is_zero_vec, unit};
use gometrics::metrics::{
    detect_naturally_reductive, make_metric, max_right_isometry_algebra, natred_candidates, MetricEndomorphism,
    ModuleDecomposition,
};
use gometrics::ricci::ricci_left_invariant;
use gometrics::rootsys::RootSystem;
use gometrics::scalar::{q, qi};
use gometrics::spaces::aloff_wallach::{aw_vector, AloffWallach};
use gometrics::spaces::{aloff_wallach, g2_decomposition, AwFormulation, G2Decomposition};
use gometrics::{Scalar, Q};

fn rational() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

fn positive() -> impl Strategy<Value = Q> {
    (1i64..=12, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn coordinate_blocks(g: &CompactLieAlgebra<Q>) -> ModuleDecomposition<Q> {
    let blocks: Vec<_> = (0..g.dim).map(|i| Subspace::coordinate(g, &[i])).collect();
    let names = (0..g.dim).map(|i| format!("e{}", i + 1)).collect();
    ModuleDecomposition::new(g, names, blocks, &Subspace::full(g)).unwrap()
}

fn diagonal_metric(g: &CompactLieAlgebra<Q>, a: &[Q]) -> MetricEndomorphism<Q> {
    make_metric(g, coordinate_blocks(g), a.to_vec()).unwrap()
}

/// su(2) ⊕ R
fn u2() -> CompactLieAlgebra<Q> {
    build_su2().direct_sum(&build_abelian(vec![qi(1)]).unwrap(), "u2").unwrap()
}

thread_local! {
    static G2: G2Decomposition = g2_decomposition().unwrap();
    static AW: Vec<AloffWallach> = [(2, 1), (3, 1), (3, 2), (5, 2)].iter().map(|&(k, l)| aloff_wallach(k, l).unwrap()).collect();
}

fn milnor(a: [f64; 3]) -> [f64; 3] {
    let lam = [
        (a[0] / (2.0 * a[1] * a[2])).sqrt(),
        (a[1] / (2.0 * a[2] * a[0])).sqrt(),
        (a[2] / (2.0 * a[0] * a[1])).sqrt(),
    ];
    let s = (lam[0] + lam[1] + lam[2]) / 2.0;
    let mu = lam.map(|l| s - l);
    [2.0 * mu[1] * mu[2], 2.0 * mu[2] * mu[0], 2.0 * mu[0] * mu[1]]
}

/// `(c + i s)^w` for the rational point `((1−t²)/(1+t²), 2t/(1+t²))` on the circle.
fn circle_power(t: &Q, w: i64) -> (Q, Q) {
    let d = Q::one() + t * t;
    let (c, s) = ((Q::one() - t * t) / &d, qi(2) * t / &d);
    let s = if w < 0 { -s } else { s };
    let (mut re, mut im) = (Q::one(), Q::zero());
    for _ in 0..w.abs() {
        let nr = &re * &c - &im * &s;
        im = &re * &s + &im * &c;
        re = nr;
    }
    (re, im)
}

/// Ad(exp θZ) on an Aloff–Wallach algebra for a rational rotation θ.
fn ad_exp_z(aw: &AloffWallach, t: &Q, x: &[Q]) -> Vec<Q> {
    let weights = [aw.k - aw.l, aw.k - aw.m, aw.l - aw.m];
    let mut out = x.to_vec();
    for (b, w) in weights.iter().enumerate() {
        let (c, s) = circle_power(t, *w);
        let (i, j) = (2 + 2 * b, 3 + 2 * b);
        out[i] = &c * &x[i] - &s * &x[j];
        out[j] = &s * &x[i] + &c * &x[j];
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflections_are_isometric_involutions(h in prop::collection::vec(rational(), 2), k in prop::collection::vec(rational(), 2), which in 0usize..12) {
        for rs in [RootSystem::g2(), RootSystem::a2()] {
            let alpha = rs.roots[which % rs.roots.len()].coords.clone();
            let rh = rs.reflect(&alpha, &h).unwrap();
            let rk = rs.reflect(&alpha, &k).unwrap();
            prop_assert_eq!(rs.reflect(&alpha, &rh).unwrap(), h.clone());
            prop_assert_eq!(rs.ip(&rh, &rk), rs.ip(&h, &k));
            let mut images: Vec<_> = rs.roots.iter().map(|r| rs.reflect(&alpha, &r.coords).unwrap()).collect();
            images.sort();
            let mut roots: Vec<_> = rs.roots.iter().map(|r| r.coords.clone()).collect();
            roots.sort();
            prop_assert_eq!(images, roots);
        }
    }

    #[test]
    fn chamber_reduction_keeps_norm(h in prop::collection::vec(rational(), 2)) {
        for rs in [RootSystem::g2(), RootSystem::a2()] {
            let r = rs.chamber_reduce(&h);
            prop_assert!(rs.in_chamber(&r));
            prop_assert_eq!(rs.ip(&r, &r), rs.ip(&h, &h));
            prop_assert_eq!(rs.chamber_reduce(&r), r.clone());
            prop_assert!(rs.vector_orbit(&h).contains(&r));
            let hf: Vec<f64> = h.iter().map(Scalar::to_f64).collect();
            let rf = rs.chamber_reduce(&hf);
            prop_assert!((rs.ip_s(&rf, &rf) - rs.ip_s(&hf, &hf)).abs() <= 1e-12 * (1.0 + rs.ip_s(&hf, &hf)));
        }
    }

    #[test]
    fn g2_metrics_are_self_adjoint_and_positive(u in prop::collection::vec(positive(), 5), x in prop::collection::vec(rational(), 14), y in prop::collection::vec(rational(), 14)) {
        G2.with(|d| {
            let m = d.metric(&std::array::from_fn(|i| u[i].clone())).unwrap();
            prop_assert_eq!(m.inner(&d.alg, &x, &y), m.inner(&d.alg, &y, &x));
            if !is_zero_vec(&x) {
                prop_assert!(Scalar::is_positive(&m.inner(&d.alg, &x, &x)));
            }
            prop_assert_eq!(m.self_adjoint_defect(&d.alg), 0.0);
            Ok(())
        })?;
    }

    #[test]
    fn right_isometry_algebra_is_closed_central_and_skew(a in prop::collection::vec(positive(), 4), pair in any::<bool>()) {
        let g = u2();
        let mut a = a;
        if pair {
            a[1] = a[0].clone();
        }
        let m = diagonal_metric(&g, &a);
        let k = max_right_isometry_algebra(&g, &m);
        prop_assert!(k.is_subalgebra(&g));
        prop_assert!(k.contains(&g, &unit(4, 3)));
        if pair {
            prop_assert!(k.contains(&g, &unit(4, 2)));
        }
        for w in k.basis() {
            let ad = g.ad(w);
            for i in 0..4 {
                for j in 0..4 {
                    let (ei, ej) = (unit(4, i), unit(4, j));
                    let s = m.inner(&g, &ad.mul_vec(&ei), &ej) + m.inner(&g, &ei, &ad.mul_vec(&ej));
                    prop_assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn natural_form_reassembles_the_metric(u in positive(), x in positive(), bi in any::<bool>()) {
        G2.with(|d| {
            let x = if bi { u.clone() } else { x };
            let coeffs = [u.clone(), u.clone(), x.clone(), x.clone(), u.clone()];
            let m = d.metric(&coeffs).unwrap();
            let cands = natred_candidates(&d.alg, &d.blocks, Some(&d.rs));
            let nr = detect_naturally_reductive(&d.alg, &m, &cands).unwrap();
            prop_assert!(nr.is_some());
            let nr = nr.unwrap();
            prop_assert_eq!(nr.reassemble(&d.alg), m.matrix(&d.alg));
            Ok(())
        })?;
    }

    #[test]
    fn go_verdicts_are_homothety_invariant(a in prop::collection::vec(positive(), 3), lambda in positive(), seed in 0u64..1000) {
        let g = build_su2();
        let blocks = coordinate_blocks(&g);
        let samples = standard_samples(&g, &blocks, seed, 2);
        let scaled: Vec<Q> = a.iter().map(|c| c * &lambda).collect();
        let p1 = lie_group_problem(&g, &diagonal_metric(&g, &a)).unwrap();
        let p2 = lie_group_problem(&g, &diagonal_metric(&g, &scaled)).unwrap();
        let tol = Tolerances::default();
        for x in &samples {
            for arith in [Arith::Exact, Arith::Float] {
                prop_assert_eq!(p1.check(x, arith, &tol).unwrap().verdict, p2.check(x, arith, &tol).unwrap().verdict);
            }
        }
    }

    #[test]
    fn aw_verdicts_are_homothety_invariant(s in 0usize..4, x in prop::collection::vec(positive(), 4), lambda in positive(), v in prop::collection::vec(-3i64..=3, 7)) {
        AW.with(|spaces| {
            let aw = &spaces[s];
            let xs: [Q; 4] = std::array::from_fn(|i| x[i].clone());
            let ys: [Q; 4] = std::array::from_fn(|i| &x[i] * &lambda);
            let xv = aw_vector(&qi(v[0]), &std::array::from_fn(|i| qi(v[i + 1])));
            let tol = Tolerances::default();
            for form in AwFormulation::ALL {
                let p = aw.problem(&aw.metric(&xs).unwrap(), form).unwrap();
                let r = aw.problem(&aw.metric(&ys).unwrap(), form).unwrap();
                let a = p.problem.check(&p.lift(&xv), Arith::Exact, &tol).unwrap().verdict;
                let b = r.problem.check(&r.lift(&xv), Arith::Exact, &tol).unwrap().verdict;
                prop_assert_eq!(a, b);
            }
            Ok(())
        })?;
    }

    #[test]
    fn aw_verdicts_are_ad_equivariant(s in 0usize..4, x in prop::collection::vec(positive(), 4), t in rational(), v in prop::collection::vec(-3i64..=3, 7)) {
        AW.with(|spaces| {
            let aw = &spaces[s];
            let g = aw.alg();
            // the rotation is an automorphism that commutes with the metric
            let xs: [Q; 4] = std::array::from_fn(|i| x[i].clone());
            let metric = aw.metric(&xs).unwrap();
            for i in 0..8 {
                let ei = ad_exp_z(aw, &t, &unit(8, i));
                prop_assert_eq!(ad_exp_z(aw, &t, &metric.apply(g, &unit(8, i))), metric.apply(g, &ei));
                for j in 0..8 {
                    let ej = ad_exp_z(aw, &t, &unit(8, j));
                    prop_assert_eq!(ad_exp_z(aw, &t, &g.bracket(&unit(8, i), &unit(8, j))), g.bracket(&ei, &ej));
                }
            }
            let xv = aw_vector(&qi(v[0]), &std::array::from_fn(|i| qi(v[i + 1])));
            let yv = ad_exp_z(aw, &t, &xv);
            let tol = Tolerances::default();
            for form in AwFormulation::ALL {
                let p = aw.problem(&metric, form).unwrap();
                let a = p.problem.check(&p.lift(&xv), Arith::Exact, &tol).unwrap().verdict;
                let b = p.problem.check(&p.lift(&yv), Arith::Exact, &tol).unwrap().verdict;
                prop_assert_eq!(a, b);
            }
            Ok(())
        })?;
    }

    #[test]
    fn aw_centralizer_splits(s in 0usize..4, c in prop::collection::vec(rational(), 8)) {
        AW.with(|spaces| {
            let aw = &spaces[s];
            let g = aw.alg();
            let cent = Subspace::centralizer(g, &aw.space.h);
            let w = cent.combine(&c[..cent.dim()]);
            let w1 = aw.space.project_m(&w);
            let w2: Vec<Q> = w.iter().zip(&w1).map(|(a, b)| a - b).collect();
            prop_assert!(aw.space.h.contains(g, &w2));
            prop_assert!(cent.contains(g, &w1));
            prop_assert!(cent.contains(g, &w2));
            Ok(())
        })?;
    }

    #[test]
    fn witnesses_satisfy_their_systems(a in positive(), c in positive(), seed in 0u64..1000) {
        let g = build_su2();
        let blocks = coordinate_blocks(&g);
        let p = lie_group_problem(&g, &diagonal_metric(&g, &[a.clone(), a.clone(), c])).unwrap();
        let tol = Tolerances::default();
        for x in standard_samples(&g, &blocks, seed, 2) {
            for arith in [Arith::Exact, Arith::Float] {
                let r = p.check(&x, arith, &tol).unwrap();
                prop_assert_eq!(r.verdict, Verdict::Feasible);
                prop_assert!(r.witness.is_some());
                prop_assert!(r.witness_residual.unwrap() <= tol.feas);
            }
        }
    }

    #[test]
    fn ricci_is_homothety_invariant(u in prop::collection::vec(positive(), 5), lambda in positive()) {
        G2.with(|d| {
            let a: [Q; 5] = std::array::from_fn(|i| u[i].clone());
            let b: [Q; 5] = std::array::from_fn(|i| &u[i] * &lambda);
            let r1 = ricci_left_invariant(&d.alg, &d.metric(&a).unwrap()).unwrap();
            let r2 = ricci_left_invariant(&d.alg, &d.metric(&b).unwrap()).unwrap();
            let scale = r1.ric.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
            for (x, y) in r1.ric.iter().flatten().zip(r2.ric.iter().flatten()) {
                prop_assert!((x - y).abs() <= 1e-12 * scale);
            }
            prop_assert!((r1.deviation - r2.deviation).abs() <= 1e-12);
            Ok(())
        })?;
    }

    #[test]
    fn ricci_is_killed_by_isometries(u in prop::collection::vec(positive(), 5), merge in 0usize..3) {
        G2.with(|d| {
            let mut a: [Q; 5] = std::array::from_fn(|i| u[i].clone());
            match merge {
                1 => { a[1] = a[0].clone(); a[4] = a[0].clone(); }
                2 => { a[3] = a[2].clone(); }
                _ => {}
            }
            let m = d.metric(&a).unwrap();
            let r = ricci_left_invariant(&d.alg, &m).unwrap();
            let n: Vec<f64> = (0..14).map(|i| d.alg.inner[(i, i)].to_f64().sqrt()).collect();
            let ric = |i: usize, j: usize| r.ric[i][j] * n[i] * n[j];
            let scale = r.ric.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
            let k = max_right_isometry_algebra(&d.alg, &m);
            prop_assert!(k.dim() >= 4);
            for w in k.basis() {
                let ad = d.alg.ad(w).map(|v| v.to_f64());
                for i in 0..14 {
                    for j in 0..14 {
                        let s: f64 = (0..14).map(|t| ad[(t, i)] * ric(t, j) + ric(i, t) * ad[(t, j)]).sum();
                        prop_assert!(s.abs() <= 1e-10 * scale, "{} at ({}, {})", s, i, j);
                    }
                }
            }
            Ok(())
        })?;
    }

    #[test]
    fn ricci_on_su2_plus_su2_matches_milnor(a in prop::collection::vec(1i64..=9, 6)) {
        let g = build_su2().direct_sum(&build_su2(), "su2+su2").unwrap();
        let coeffs: Vec<Q> = a.iter().map(|&v| qi(v)).collect();
        let r = ricci_left_invariant(&g, &diagonal_metric(&g, &coeffs)).unwrap();
        let af: Vec<f64> = a.iter().map(|&v| v as f64).collect();
        for f in 0..2 {
            let o = 3 * f;
            let expect = milnor([af[o], af[o + 1], af[o + 2]]);
            for i in 0..3 {
                prop_assert!((r.ric[o + i][o + i] / af[o + i] - expect[i]).abs() <= 1e-12);
            }
        }
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    prop_assert!(r.ric[i][j].abs() <= 1e-14);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn infeasible_over_kmax_stays_infeasible_over_subspaces(u in prop::collection::vec(positive(), 5), seed in 0u64..1000, mix in prop::collection::vec(-3i64..=3, 16)) {
        G2.with(|d| {
            let a: [Q; 5] = std::array::from_fn(|i| u[i].clone());
            let m = d.metric(&a).unwrap();
            let full = lie_group_problem(&d.alg, &m).unwrap();
            let Formulation::LieGroup { k } = &full.exact.form else { unreachable!() };
            let r = (mix[0].unsigned_abs() as usize) % (k.dim() + 1);
            let vectors: Vec<Vec<Q>> = (0..r)
                .map(|i| {
                    let mut v = vec![Q::zero(); 14];
                    for (j, b) in k.basis().iter().enumerate() {
                        axpy(&qi(mix[(1 + i * 4 + j) % 16] + if i == j { 5 } else { 0 }), b, &mut v);
                    }
                    v
                })
                .collect();
            let sub = Subspace::span(&d.alg, &vectors);
            prop_assert!(k.contains_subspace(&d.alg, &sub));
            let space = ReductiveSpace::group(d.alg.clone());
            let smaller = GoProblem::new(Setup::new(space, m.clone(), Formulation::LieGroup { k: sub }).unwrap());
            let tol = Tolerances::default();
            let samples = standard_samples(&d.alg, &d.blocks, seed, 1);
            for x in samples.iter().take(6) {
                if full.check(x, Arith::Exact, &tol).unwrap().verdict == Verdict::Infeasible {
                    prop_assert_eq!(smaller.check(x, Arith::Exact, &tol).unwrap().verdict, Verdict::Infeasible);
                }
            }
            Ok(())
        })?;
    }
}
