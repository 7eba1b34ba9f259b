mod support;

use acobs::acx::{
    classify, cross_check_ni, fundamental, integrability_form, leap_residuals, nijenhuis, skew_residual, AcsAt, Class,
    CLASSIFY_TOL,
};
use acobs::algebra::{act_right, InnerProduct};
use acobs::geometry::{sample_point, Chart};
use acobs::zoo::{self, Scenario};
use acobs::Error;
use support::random::{self as rnd, rng};

fn all() -> Vec<Scenario> {
    vec![
        zoo::round_sphere6(1.0).unwrap(),
        zoo::flat_torus6(),
        zoo::hopf6(),
        zoo::product_s2_cubed([1.0, 2.0, 0.5]).unwrap(),
        zoo::perturbed_sphere6(1.0, 0.05, 0.5, true).unwrap(),
        zoo::perturbed_sphere6(1.0, 0.05, 0.5, false).unwrap(),
    ]
}

fn points(sc: &Scenario, seed: u64, count: usize) -> Vec<AcsAt> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| AcsAt::at(sc, &sample_point(sc, &mut r)).unwrap())
        .collect()
}

/// Nijenhuis tensor on coordinate fields from central differences of the
/// structure matrix.
fn nijenhuis_fd(sc: &Scenario, x: &[f64], i: usize, j: usize) -> Vec<f64> {
    let n = 6;
    let h = 1e-5;
    let a0 = sc.structure::<f64>(x);
    let da: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[k] += h;
            xm[k] -= h;
            let (p, m) = (sc.structure::<f64>(&xp), sc.structure::<f64>(&xm));
            p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * h)).collect()
        })
        .collect();
    let a = |p: usize, q: usize| a0[p * n + q];
    // [Ae_i, Ae_j] − A([Ae_i, e_j] + [e_i, Ae_j]); coordinate fields commute
    (0..n)
        .map(|b| {
            let mut s = 0.0;
            for k in 0..n {
                s += a(k, i) * da[k][b * n + j] - a(k, j) * da[k][b * n + i];
                s -= a(b, k) * (da[i][k * n + j] - da[j][k * n + i]);
            }
            s
        })
        .collect()
}

#[test]
fn structure_squares_to_minus_identity_everywhere() {
    for sc in all() {
        for acs in points(&sc, 1, 20) {
            assert!(acs.square_residual() <= 1e-10, "{}", sc.name());
        }
    }
}

#[test]
fn orthogonality_holds_where_declared() {
    for sc in all() {
        let declared = sc.properties().orthogonal;
        for acs in points(&sc, 2, 10) {
            let r = acs.orthogonality_residual();
            if declared {
                assert!(r <= 1e-10, "{} {r:e}", sc.name());
            } else {
                assert!(r > 1e-4, "{} {r:e}", sc.name());
            }
        }
    }
}

#[test]
fn nijenhuis_matches_finite_difference_brackets() {
    for sc in [
        zoo::round_sphere6(1.0).unwrap(),
        zoo::hopf6(),
        zoo::perturbed_sphere6(1.0, 0.1, 0.5, false).unwrap(),
    ] {
        let x = sample_point(&sc, &mut rng(3));
        let acs = AcsAt::at(&sc, &x).unwrap();
        let nij = nijenhuis(&acs);
        for i in 0..6 {
            for j in 0..6 {
                let fd = nijenhuis_fd(&sc, &x, i, j);
                for (b, v) in fd.iter().enumerate() {
                    assert!(
                        (nij.component(&[i, j], b) - v).abs() <= 1e-6,
                        "{} ({i},{j};{b})",
                        sc.name()
                    );
                }
            }
        }
    }
}

#[test]
fn integrable_scenarios_have_vanishing_nijenhuis_and_integrability_form() {
    for sc in [
        zoo::flat_torus6(),
        zoo::hopf6(),
        zoo::product_s2_cubed([1.0, 2.0, 0.5]).unwrap(),
    ] {
        for acs in points(&sc, 4, 20) {
            assert!(nijenhuis(&acs).max_abs() <= 1e-8, "{}", sc.name());
            assert!(integrability_form(&acs).max_abs() <= 1e-8, "{}", sc.name());
        }
    }
}

#[test]
fn six_sphere_is_not_integrable_at_any_sampled_point() {
    let sc = zoo::round_sphere6(1.0).unwrap();
    for acs in points(&sc, 5, 20) {
        assert!(nijenhuis(&acs).max_abs() >= 0.1);
        assert!(integrability_form(&acs).max_abs() >= 0.1);
    }
}

#[test]
fn integrability_form_is_minus_structure_applied_to_nijenhuis() {
    for sc in all() {
        for acs in points(&sc, 6, 5) {
            let r = cross_check_ni(&acs);
            assert!(r <= 1e-8, "{} {r:e}", sc.name());
        }
    }
}

#[test]
fn integrability_form_is_substitution_minus_identity() {
    let sc = zoo::round_sphere6(1.0).unwrap();
    let mut r = rng(7);
    for acs in points(&sc, 7, 3) {
        let i_form = integrability_form(&acs);
        for _ in 0..5 {
            let (x, y) = (rnd::vector(&mut r, 6), rnd::vector(&mut r, 6));
            let lhs = i_form.eval(&[&x, &y]);
            let ax = acs.apply(&x);
            let ay = acs.apply(&y);
            let a = acs.da_xy(&ax, &ay);
            let b = acs.da_xy(&x, &y);
            for k in 0..6 {
                assert!((lhs[k] - (a[k] - b[k])).abs() <= 1e-12);
            }
        }
        // d∇A is A-invariant exactly when I vanishes; here it is not
        let sub = act_right(&acs.da.form, &acs.aa).unwrap();
        assert!(sub.sub(&acs.da.form).max_abs() >= 0.1);
    }
}

#[test]
fn nearly_kahler_sphere_has_integrability_form_minus_four_nabla() {
    let sc = zoo::round_sphere6(1.0).unwrap();
    for acs in points(&sc, 8, 10) {
        let i_form = integrability_form(&acs);
        let mut worst: f64 = 0.0;
        for i in 0..6 {
            for j in 0..6 {
                for p in 0..6 {
                    worst = worst.max((i_form.component(&[i, j], p) + 4.0 * acs.nabla[(i * 6 + p) * 6 + j]).abs());
                }
            }
        }
        assert!(worst <= 1e-8, "{worst:e}");
        assert!(skew_residual(&acs) <= 1e-8);
    }
}

#[test]
fn fundamental_form_properties() {
    // flat torus: Ω = Σ dx^{2b}∧dx^{2b+1}
    let t = zoo::flat_torus6();
    let acs = AcsAt::at(&t, &[1.0; 6]).unwrap();
    let om = fundamental(acs.metric(), acs.matrix()).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            let expect = if j == i + 1 && i % 2 == 0 {
                1.0
            } else if i == j + 1 && j % 2 == 0 {
                -1.0
            } else {
                0.0
            };
            assert_eq!(om.component(&[i, j]), expect, "({i},{j})");
        }
    }

    let sc = zoo::round_sphere6(1.0).unwrap();
    let mut r = rng(9);
    for acs in points(&sc, 9, 5) {
        let om = fundamental(acs.metric(), acs.matrix()).unwrap();
        for _ in 0..5 {
            let (x, y) = (rnd::vector(&mut r, 6), rnd::vector(&mut r, 6));
            let (ax, ay) = (acs.apply(&x), acs.apply(&y));
            assert!((om.eval(&[&x, &y]) + om.eval(&[&y, &x])).abs() <= 1e-12);
            assert!((om.eval(&[&ax, &ay]) - om.eval(&[&x, &y])).abs() <= 1e-10);
            assert!((om.eval(&[&x, &ax]) - acs.metric().norm2(&x)).abs() <= 1e-10);
        }
    }
}

#[test]
fn fundamental_form_rejects_non_orthogonal_structures() {
    let g = InnerProduct::new(2, vec![2.0, 0.0, 0.0, 1.0]).unwrap();
    let a = [0.0, -1.0, 1.0, 0.0];
    assert!(matches!(fundamental(&g, &a), Err(Error::NotOrthogonal { .. })));
    let mut r = rng(10);
    let a = rnd::acs_matrix(&mut r, 6);
    assert!(matches!(
        fundamental(&InnerProduct::euclidean(6), &a),
        Err(Error::NotOrthogonal { .. })
    ));
}

#[test]
fn leap_identities() {
    for sc in all() {
        for acs in points(&sc, 11, 10) {
            let (r1, r2) = leap_residuals(&acs);
            assert!(r1 <= 1e-9, "{} {r1:e}", sc.name());
            let p = sc.properties();
            if p.integrable && p.orthogonal {
                assert!(r2 <= 1e-8, "{} {r2:e}", sc.name());
            }
            if sc.name() == "round_sphere6" {
                assert!(r2 > 0.1);
            }
        }
    }
}

#[test]
fn classification_of_the_zoo() {
    let cases = [
        (zoo::flat_torus6(), Class::Kahler, true),
        (zoo::product_s2_cubed([1.0, 2.0, 0.5]).unwrap(), Class::Kahler, true),
        (zoo::round_sphere6(1.0).unwrap(), Class::NearlyKahler, false),
        (zoo::round_sphere6(2.0).unwrap(), Class::NearlyKahler, false),
        (zoo::hopf6(), Class::General, false),
    ];
    for (sc, class, closed) in cases {
        for acs in points(&sc, 12, 5) {
            let c = classify(&acs, CLASSIFY_TOL);
            assert_eq!(c.class, class, "{}", sc.name());
            assert_eq!(c.closed, closed, "{}", sc.name());
        }
    }
    assert_eq!(Class::NearlyKahler.to_string(), "nearly-Kähler");
}

#[test]
fn numeric_properties_match_declared_properties() {
    for sc in all() {
        let p = sc.properties();
        for acs in points(&sc, 13, 5) {
            let integrable = nijenhuis(&acs).max_abs() <= 1e-8;
            assert_eq!(integrable, p.integrable, "{}", sc.name());
            let c = classify(&acs, CLASSIFY_TOL);
            assert_eq!(c.class == Class::Kahler, p.kahler, "{}", sc.name());
            assert_eq!(c.class == Class::NearlyKahler, p.nearly_kahler, "{}", sc.name());
        }
    }
}
