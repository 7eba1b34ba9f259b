//! Naive permutation-sum oracle for the graded products.
//!
//! Evaluates every product directly from its defining sum on explicit
//! vectors. Nothing here calls the library's product kernels, permutation
//! tables or contraction routines: inputs are read through their raw
//! component arrays only.

#![allow(dead_code)]

use acobs::algebra::{EndForm, PolyForm, ScalarForm, VForm};

/// Heap's algorithm; sign flips on every swap.
pub fn heap_perms(m: usize) -> Vec<(Vec<usize>, f64)> {
    fn go(k: usize, a: &mut Vec<usize>, sign: &mut f64, out: &mut Vec<(Vec<usize>, f64)>) {
        if k <= 1 {
            out.push((a.clone(), *sign));
            return;
        }
        for i in 0..k - 1 {
            go(k - 1, a, sign, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
            *sign = -*sign;
        }
        go(k - 1, a, sign, out);
    }
    let mut a: Vec<usize> = (0..m).collect();
    let mut out = Vec::new();
    let mut sign = 1.0;
    go(m, &mut a, &mut sign, &mut out);
    out
}

pub fn fact(m: usize) -> f64 {
    (1..=m).map(|x| x as f64).product()
}

/// `Σ_{i₁…i_k} data[i₁…i_k; ·] X₁^{i₁}…X_k^{i_k}` by brute force.
pub fn eval_raw(n: usize, k: usize, vlen: usize, data: &[f64], xs: &[&[f64]]) -> Vec<f64> {
    assert_eq!(xs.len(), k);
    let mut out = vec![0.0; vlen];
    let total = n.pow(k as u32);
    for flat in 0..total {
        let mut rem = flat;
        let mut coef = 1.0;
        for r in (0..k).rev() {
            coef *= xs[r][rem % n];
            rem /= n;
        }
        if coef == 0.0 {
            continue;
        }
        for v in 0..vlen {
            out[v] += coef * data[flat * vlen + v];
        }
    }
    out
}

fn pick<'a>(xs: &[&'a [f64]], perm: &[usize]) -> Vec<&'a [f64]> {
    perm.iter().map(|&i| xs[i]).collect()
}

/// Literal polyvector product in the determinant convention.
pub fn poly_wedge_raw(n: usize, p: usize, q: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let m = p + q;
    let perms = heap_perms(m);
    let total = n.pow(m as u32);
    let mut out = vec![0.0; total];
    for flat in 0..total {
        let mut idx = vec![0; m];
        let mut rem = flat;
        for r in (0..m).rev() {
            idx[r] = rem % n;
            rem /= n;
        }
        let mut s = 0.0;
        for (pm, sg) in &perms {
            let ia = pm[..p].iter().fold(0, |acc, &r| acc * n + idx[r]);
            let ib = pm[p..].iter().fold(0, |acc, &r| acc * n + idx[r]);
            s += sg * a[ia] * b[ib];
        }
        out[flat] = s / (fact(p) * fact(q));
    }
    out
}

pub fn wedge_end(alpha: &EndForm, beta: &EndForm, xs: &[&[f64]]) -> Vec<f64> {
    let n = alpha.dim();
    let (k, l) = (alpha.degree(), beta.degree());
    let mut out = vec![0.0; n * n];
    for (p, s) in heap_perms(k + l) {
        let xp = pick(xs, &p);
        let ma = eval_raw(n, k, n * n, alpha.components(), &xp[..k]);
        let mb = eval_raw(n, l, n * n, beta.components(), &xp[k..]);
        for a in 0..n {
            for b in 0..n {
                let c: f64 = (0..n).map(|m| ma[a * n + m] * mb[m * n + b]).sum();
                out[a * n + b] += s * c;
            }
        }
    }
    out.iter().map(|x| x / (fact(k) * fact(l))).collect()
}

pub fn act_left(alpha: &EndForm, rho: &VForm, xs: &[&[f64]]) -> Vec<f64> {
    let n = alpha.dim();
    let (k, s) = (alpha.degree(), rho.degree());
    let mut out = vec![0.0; n];
    for (p, sg) in heap_perms(k + s) {
        let xp = pick(xs, &p);
        let m = eval_raw(n, k, n * n, alpha.components(), &xp[..k]);
        let v = eval_raw(n, s, n, rho.components(), &xp[k..]);
        for a in 0..n {
            out[a] += sg * (0..n).map(|b| m[a * n + b] * v[b]).sum::<f64>();
        }
    }
    out.iter().map(|x| x / (fact(k) * fact(s))).collect()
}

pub fn wedge_poly(gamma: &PolyForm, theta: &PolyForm, xs: &[&[f64]]) -> Vec<f64> {
    let n = gamma.dim();
    let (i, j) = (gamma.form_degree(), gamma.poly_degree());
    let (k, l) = (theta.form_degree(), theta.poly_degree());
    let mut out = vec![0.0; n.pow((j + l) as u32)];
    for (p, sg) in heap_perms(i + k) {
        let xp = pick(xs, &p);
        let a = eval_raw(n, i, n.pow(j as u32), gamma.components(), &xp[..i]);
        let b = eval_raw(n, k, n.pow(l as u32), theta.components(), &xp[i..]);
        let w = poly_wedge_raw(n, j, l, &a, &b);
        for (o, x) in out.iter_mut().zip(&w) {
            *o += sg * x;
        }
    }
    out.iter().map(|x| 0.5 * x / (fact(i) * fact(k))).collect()
}

/// Right action with `ρ`'s trailing `j` slots eating the polyvector value.
pub fn act_right(rho: &VForm, gamma: &PolyForm, xs: &[&[f64]]) -> Vec<f64> {
    let n = rho.dim();
    let s = rho.degree();
    let (i, j) = (gamma.form_degree(), gamma.poly_degree());
    if s < j {
        return vec![0.0; n];
    }
    let basis: Vec<Vec<f64>> = (0..n)
        .map(|c| (0..n).map(|r| if r == c { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut out = vec![0.0; n];
    for (p, sg) in heap_perms(s - j + i) {
        let xp = pick(xs, &p);
        let zeta = eval_raw(n, i, n.pow(j as u32), gamma.components(), &xp[s - j..]);
        for (flat, z) in zeta.iter().enumerate() {
            if *z == 0.0 {
                continue;
            }
            let mut args: Vec<&[f64]> = xp[..s - j].to_vec();
            let mut rem = flat;
            let mut tail = vec![0; j];
            for r in (0..j).rev() {
                tail[r] = rem % n;
                rem /= n;
            }
            for &t in &tail {
                args.push(&basis[t]);
            }
            let v = eval_raw(n, s, n, rho.components(), &args);
            for a in 0..n {
                out[a] += sg * z * v[a] / fact(j);
            }
        }
    }
    out.iter().map(|x| x / (fact(s - j) * fact(i))).collect()
}

pub fn wedge_g(alpha: &VForm, beta: &VForm, g: &[f64], xs: &[&[f64]]) -> f64 {
    let n = alpha.dim();
    let (k, l) = (alpha.degree(), beta.degree());
    let mut out = 0.0;
    for (p, sg) in heap_perms(k + l) {
        let xp = pick(xs, &p);
        let u = eval_raw(n, k, n, alpha.components(), &xp[..k]);
        let v = eval_raw(n, l, n, beta.components(), &xp[k..]);
        let mut d = 0.0;
        for a in 0..n {
            for b in 0..n {
                d += u[a] * g[a * n + b] * v[b];
            }
        }
        out += sg * d;
    }
    out / (fact(k) * fact(l))
}

pub fn wedge_scalar(omega: &ScalarForm, eta: &ScalarForm, xs: &[&[f64]]) -> f64 {
    let n = omega.dim();
    let (k, l) = (omega.degree(), eta.degree());
    let mut out = 0.0;
    for (p, sg) in heap_perms(k + l) {
        let xp = pick(xs, &p);
        let u = eval_raw(n, k, 1, omega.components(), &xp[..k])[0];
        let v = eval_raw(n, l, 1, eta.components(), &xp[k..])[0];
        out += sg * u * v;
    }
    out / (fact(k) * fact(l))
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}
