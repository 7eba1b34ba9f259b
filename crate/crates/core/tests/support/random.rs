//! Seeded random inputs for the algebra tests.

#![allow(dead_code)]

use acobs::algebra::{EndForm, PolyForm, ScalarForm, VForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

pub fn vforms(rng: &mut ChaCha8Rng, n: usize, k: usize) -> VForm {
    let data = vector(rng, n.pow(k as u32 + 1));
    VForm::from_components(n, k, data)
}

pub fn endform(rng: &mut ChaCha8Rng, n: usize, k: usize) -> EndForm {
    let data = vector(rng, n.pow(k as u32 + 2));
    EndForm::from_components(n, k, data)
}

pub fn polyform(rng: &mut ChaCha8Rng, n: usize, p: usize, q: usize) -> PolyForm {
    let data = vector(rng, n.pow((p + q) as u32));
    PolyForm::from_components(n, p, q, data)
}

pub fn scalarform(rng: &mut ChaCha8Rng, n: usize, k: usize) -> ScalarForm {
    let data = vector(rng, n.pow(k as u32));
    ScalarForm::from_components(n, k, data)
}

/// Symmetric positive-definite matrix `I + 0.3·MᵀM`.
pub fn spd(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let m = vector(rng, n * n);
    let mut g = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let s: f64 = (0..n).map(|k| m[k * n + i] * m[k * n + j]).sum();
            g[i * n + j] = 0.3 * s + if i == j { 1.0 } else { 0.0 };
        }
    }
    g
}

pub fn mat_mul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                c[i * n + j] += a[i * n + k] * b[k * n + j];
            }
        }
    }
    c
}

/// Gauss–Jordan inverse, adequate for the well-conditioned matrices built here.
pub fn mat_inv(n: usize, a: &[f64]) -> Vec<f64> {
    let mut m = a.to_vec();
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| m[x * n + col].abs().total_cmp(&m[y * n + col].abs()))
            .unwrap();
        for j in 0..n {
            m.swap(col * n + j, piv * n + j);
            inv.swap(col * n + j, piv * n + j);
        }
        let d = m[col * n + col];
        for j in 0..n {
            m[col * n + j] /= d;
            inv[col * n + j] /= d;
        }
        for r in 0..n {
            if r != col {
                let f = m[r * n + col];
                for j in 0..n {
                    m[r * n + j] -= f * m[col * n + j];
                    inv[r * n + j] -= f * inv[col * n + j];
                }
            }
        }
    }
    inv
}

/// A random almost-complex structure `P J₀ P⁻¹` on an even-dimensional space.
pub fn acs_matrix(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    assert!(n % 2 == 0);
    let mut j0 = vec![0.0; n * n];
    for b in 0..n / 2 {
        j0[(2 * b + 1) * n + 2 * b] = 1.0;
        j0[(2 * b) * n + 2 * b + 1] = -1.0;
    }
    let mut p = vector(rng, n * n);
    p.iter_mut().for_each(|x| *x *= 0.3);
    for i in 0..n {
        p[i * n + i] += 1.0;
    }
    let pi = mat_inv(n, &p);
    mat_mul(n, &mat_mul(n, &p, &j0), &pi)
}

/// A random endomorphism-valued 2-form satisfying the algebraic Bianchi
/// identity, by removing the cyclic part of a random one.
pub fn bianchi_curvature(rng: &mut ChaCha8Rng, n: usize) -> EndForm {
    let r = endform(rng, n, 2);
    // b(R)(X,Y,W) = R(X,Y)W + R(Y,W)X + R(W,X)Y, in components
    // R^a_{b ij} with (i,j) form slots, b the input index.
    let comp = |i: usize, j: usize, a: usize, b: usize| r.component(&[i, j], a, b);
    EndForm::from_fn(n, 2, |t, a, w| {
        let (x, y) = (t[0], t[1]);
        let cyc = comp(x, y, a, w) + comp(y, w, a, x) + comp(w, x, a, y);
        comp(x, y, a, w) - cyc / 3.0
    })
}

pub fn bianchi_residual(r: &EndForm) -> f64 {
    let n = r.dim();
    let mut worst: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            for w in 0..n {
                for a in 0..n {
                    let c = r.component(&[x, y], a, w) + r.component(&[y, w], a, x) + r.component(&[w, x], a, y);
                    worst = worst.max(c.abs());
                }
            }
        }
    }
    worst
}
