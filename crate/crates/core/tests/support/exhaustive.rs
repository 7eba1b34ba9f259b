//! Library products against the permutation-sum oracle: exhaustively on
//! basis forms for n ≤ 4, and on random dense inputs at n = 6, 7. Each
//! function returns the worst deviation seen.

#![allow(dead_code)]

use acobs::algebra::{
    act_left_with, act_right_with, wedge_end_with, wedge_g_with, wedge_poly_with, wedge_scalar_with, Backend, EndForm,
    InnerProduct, PolyForm, ScalarForm, VForm,
};
use rand_chacha::ChaCha8Rng;

use super::oracle::{self, max_diff};
use super::random::{self as rnd, rng};

pub const BACKENDS: [Backend; 2] = [Backend::Permutation, Backend::Contraction];

fn basis(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|c| (0..n).map(|r| if r == c { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// Every `m`-tuple of coordinate basis vectors.
fn basis_tuples(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

fn increasing(n: usize, k: usize) -> Vec<Vec<usize>> {
    basis_tuples(n, k)
        .into_iter()
        .filter(|t| t.windows(2).all(|w| w[0] < w[1]))
        .collect()
}

/// Form-basis elements `e^C ⊗ v` with random value blocks `v`.
fn basis_vforms(r: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<VForm> {
    increasing(n, k)
        .into_iter()
        .map(|c| {
            let v = rnd::vector(r, n);
            VForm::from_fn(n, k, |t, a| if t == c.as_slice() { v[a] } else { 0.0 })
        })
        .collect()
}

fn basis_endforms(r: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<EndForm> {
    increasing(n, k)
        .into_iter()
        .map(|c| {
            let v = rnd::vector(r, n * n);
            EndForm::from_fn(n, k, |t, a, b| if t == c.as_slice() { v[a * n + b] } else { 0.0 })
        })
        .collect()
}

fn basis_polyforms(r: &mut ChaCha8Rng, n: usize, p: usize, q: usize) -> Vec<PolyForm> {
    increasing(n, p)
        .into_iter()
        .map(|c| {
            let v = rnd::vector(r, n.pow(q as u32));
            PolyForm::from_fn(n, p, q, |t, a| {
                if t == c.as_slice() {
                    v[a.iter().fold(0, |acc, &i| acc * n + i)]
                } else {
                    0.0
                }
            })
        })
        .collect()
}

fn basis_scalarforms(n: usize, k: usize) -> Vec<ScalarForm> {
    increasing(n, k)
        .into_iter()
        .map(|c| ScalarForm::basis_wedge(n, &c))
        .collect()
}

/// Compares a library result (evaluated on basis tuples) against the oracle
/// on every component.
fn worst_on_basis(n: usize, m: usize, lib: impl Fn(&[&[f64]]) -> Vec<f64>, ora: impl Fn(&[&[f64]]) -> Vec<f64>) -> f64 {
    let e = basis(n);
    let mut worst: f64 = 0.0;
    for t in basis_tuples(n, m) {
        let xs: Vec<&[f64]> = t.iter().map(|&i| e[i].as_slice()).collect();
        worst = worst.max(max_diff(&lib(&xs), &ora(&xs)));
    }
    worst
}

/// Like [`worst_on_basis`] but only on strictly increasing tuples; enough for
/// outputs already known to alternate.
fn worst_on_increasing(
    n: usize,
    m: usize,
    lib: impl Fn(&[&[f64]]) -> Vec<f64>,
    ora: impl Fn(&[&[f64]]) -> Vec<f64>,
) -> f64 {
    let e = basis(n);
    let mut worst: f64 = 0.0;
    for t in increasing(n, m) {
        let xs: Vec<&[f64]> = t.iter().map(|&i| e[i].as_slice()).collect();
        worst = worst.max(max_diff(&lib(&xs), &ora(&xs)));
    }
    worst
}

pub fn endomorphism_products() -> f64 {
    let mut r = rng(11);
    let mut worst: f64 = 0.0;
    for n in 2..=4 {
        for k in 0..=4 {
            for l in 0..=(4 - k) {
                let lefts = basis_endforms(&mut r, n, k);
                let rights = basis_endforms(&mut r, n, l);
                for a in &lefts {
                    for b in &rights {
                        for be in BACKENDS {
                            let prod = wedge_end_with(be, a, b).unwrap();
                            worst = worst.max(prod.antisymmetry_residual());
                            worst = worst.max(worst_on_basis(
                                n,
                                k + l,
                                |xs| prod.eval(xs),
                                |xs| oracle::wedge_end(a, b, xs),
                            ));
                        }
                    }
                }
            }
        }
    }
    worst
}

pub fn left_action() -> f64 {
    let mut r = rng(12);
    let mut worst: f64 = 0.0;
    for n in 2..=4 {
        for k in 0..=4 {
            for s in 0..=(4 - k) {
                let alphas = basis_endforms(&mut r, n, k);
                let rhos = basis_vforms(&mut r, n, s);
                for a in &alphas {
                    for rho in &rhos {
                        for be in BACKENDS {
                            let prod = act_left_with(be, a, rho).unwrap();
                            worst = worst.max(worst_on_basis(
                                n,
                                k + s,
                                |xs| prod.eval(xs),
                                |xs| oracle::act_left(a, rho, xs),
                            ));
                        }
                    }
                }
            }
        }
    }
    worst
}

pub fn polyvector_products() -> f64 {
    let mut r = rng(13);
    let mut worst: f64 = 0.0;
    for n in 2..=4 {
        for i in 0..=4 {
            for k in 0..=(4 - i) {
                for j in 0..=2 {
                    for l in 0..=2 {
                        if j + l > n {
                            continue;
                        }
                        let gs = basis_polyforms(&mut r, n, i, j);
                        let ts = basis_polyforms(&mut r, n, k, l);
                        for g in &gs {
                            for t in &ts {
                                for be in BACKENDS {
                                    let prod = wedge_poly_with(be, g, t).unwrap();
                                    worst = worst.max(prod.antisymmetry_residual());
                                    worst = worst.max(worst_on_increasing(
                                        n,
                                        i + k,
                                        |xs| prod.eval(xs).components().to_vec(),
                                        |xs| oracle::wedge_poly(g, t, xs),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    worst
}

pub fn right_action() -> f64 {
    let mut r = rng(14);
    let mut worst: f64 = 0.0;
    for n in 2..=4 {
        for s in 0usize..=4 {
            for j in 0..=3.min(n) {
                for i in 0..=4 {
                    let out_deg = (s + i).saturating_sub(j);
                    if out_deg > 4 {
                        continue;
                    }
                    let rhos = basis_vforms(&mut r, n, s);
                    let gs = basis_polyforms(&mut r, n, i, j);
                    for rho in &rhos {
                        for g in &gs {
                            for be in BACKENDS {
                                let prod = act_right_with(be, rho, g).unwrap();
                                if s < j {
                                    worst = worst.max(prod.max_abs());
                                    continue;
                                }
                                worst = worst.max(worst_on_basis(
                                    n,
                                    out_deg,
                                    |xs| prod.eval(xs),
                                    |xs| oracle::act_right(rho, g, xs),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    worst
}

pub fn metric_and_scalar_wedges() -> f64 {
    let mut r = rng(15);
    let mut worst: f64 = 0.0;
    for n in 2..=4 {
        let gm = rnd::spd(&mut r, n);
        let g = InnerProduct::new(n, gm.clone()).unwrap();
        for k in 0..=4 {
            for l in 0..=(4 - k) {
                let lefts = basis_vforms(&mut r, n, k);
                let rights = basis_vforms(&mut r, n, l);
                for a in &lefts {
                    for b in &rights {
                        for be in BACKENDS {
                            let prod = wedge_g_with(be, a, b, &g).unwrap();
                            worst = worst.max(worst_on_basis(
                                n,
                                k + l,
                                |xs| vec![prod.eval(xs)],
                                |xs| vec![oracle::wedge_g(a, b, &gm, xs)],
                            ));
                        }
                    }
                }
                for w in basis_scalarforms(n, k) {
                    for e in basis_scalarforms(n, l) {
                        for be in BACKENDS {
                            let prod = wedge_scalar_with(be, &w, &e).unwrap();
                            worst = worst.max(worst_on_basis(
                                n,
                                k + l,
                                |xs| vec![prod.eval(xs)],
                                |xs| vec![oracle::wedge_scalar(&w, &e, xs)],
                            ));
                        }
                    }
                }
            }
        }
    }
    worst
}

/// Worst deviation on random dense inputs at n = 6, 7: 100 inputs per product, evaluated on
/// random vectors.
pub fn random_six_seven() -> f64 {
    let mut r = rng(16);
    let mut worst: f64 = 0.0;
    for n in [6, 7] {
        let gm = rnd::spd(&mut r, n);
        let g = InnerProduct::new(n, gm.clone()).unwrap();
        for trial in 0..100 {
            let (k, l) = [(1, 1), (2, 1), (1, 2), (2, 2)][trial % 4];
            let xs_owned: Vec<Vec<f64>> = (0..k + l).map(|_| rnd::vector(&mut r, n)).collect();
            let xs: Vec<&[f64]> = xs_owned.iter().map(|v| v.as_slice()).collect();

            let a = rnd::endform(&mut r, n, k);
            let b = rnd::endform(&mut r, n, l);
            let rho = rnd::vforms(&mut r, n, l);
            let u = rnd::vforms(&mut r, n, k);
            let (gp, gq) = ([(1, 1), (2, 1), (1, 2), (2, 2)][trial % 4].0, 1 + trial % 2);
            let gam = rnd::polyform(&mut r, n, gp, gq);
            let the = rnd::polyform(&mut r, n, l, 1);
            let w = rnd::scalarform(&mut r, n, k);
            let e = rnd::scalarform(&mut r, n, l);
            let s = l + gq; // right action input degree
            let rr = rnd::vforms(&mut r, n, s);
            let xr_owned: Vec<Vec<f64>> = (0..l + gp).map(|_| rnd::vector(&mut r, n)).collect();
            let xr: Vec<&[f64]> = xr_owned.iter().map(|v| v.as_slice()).collect();
            let xg_owned: Vec<Vec<f64>> = (0..gp + l).map(|_| rnd::vector(&mut r, n)).collect();
            let xg: Vec<&[f64]> = xg_owned.iter().map(|v| v.as_slice()).collect();

            for be in BACKENDS {
                let p = wedge_end_with(be, &a, &b).unwrap();
                worst = worst.max(max_diff(&p.eval(&xs), &oracle::wedge_end(&a, &b, &xs)));
                let p = act_left_with(be, &a, &rho).unwrap();
                worst = worst.max(max_diff(&p.eval(&xs), &oracle::act_left(&a, &rho, &xs)));
                let p = wedge_g_with(be, &u, &rho, &g).unwrap();
                worst = worst.max((p.eval(&xs) - oracle::wedge_g(&u, &rho, &gm, &xs)).abs());
                let p = wedge_scalar_with(be, &w, &e).unwrap();
                worst = worst.max((p.eval(&xs) - oracle::wedge_scalar(&w, &e, &xs)).abs());
                let p = wedge_poly_with(be, &gam, &the).unwrap();
                worst = worst.max(max_diff(p.eval(&xg).components(), &oracle::wedge_poly(&gam, &the, &xg)));
                let p = act_right_with(be, &rr, &gam).unwrap();
                worst = worst.max(max_diff(&p.eval(&xr), &oracle::act_right(&rr, &gam, &xr)));
            }
        }
    }
    worst
}
