//! Graded products on bundle-valued forms.
//!
//! Every product here has the shape
//!
//! ```text
//! (L ⋆ R)(X₁,…,X_m) = c · Σ_{σ ∈ S_m} sign(σ) · L(X_σ(1),…,X_σ(k)) ⊙ R(X_σ(k+1),…,X_σ(m))
//! ```
//!
//! with a product-specific value pairing `⊙` and prefactor `c`. Two kernels
//! evaluate it: [`Backend::Permutation`] runs the sum literally over every
//! index tuple and is the reference; [`Backend::Contraction`] visits each
//! increasing tuple once, sums over `(k, l)`-shuffles only, and scatters the
//! result by antisymmetry.

use super::dense::Dense;
use super::forms::{check_dims, EndForm, PolyForm, ScalarForm, VForm};
use super::inner::InnerProduct;
use super::perm::{combinations, factorial, permutations, shuffles, TupleIter};
use super::polyvector::{Polyvector, WedgeKernel};
use crate::error::{Error, Result};

/// Which kernel evaluates the permutation sums.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Backend {
    #[default]
    Permutation,
    Contraction,
}

fn graded_product<F>(
    backend: Backend,
    left: &Dense,
    right: &Dense,
    out_value_len: usize,
    prefactor: f64,
    combine: F,
) -> Dense
where
    F: Fn(f64, &[f64], &[f64], &mut [f64]),
{
    let n = left.n;
    let (k, l) = (left.degree, right.degree);
    let m = k + l;
    let mut out = Dense::zeros(n, m, out_value_len);
    if m > n {
        return out;
    }
    match backend {
        Backend::Permutation => {
            let perms = permutations(m);
            let mut lt = vec![0; k];
            let mut rt = vec![0; l];
            for t in TupleIter::new(n, m) {
                let o = out.offset(&t);
                let slot = &mut out.data[o..o + out_value_len];
                for (p, s) in &perms {
                    for r in 0..k {
                        lt[r] = t[p[r]];
                    }
                    for r in 0..l {
                        rt[r] = t[p[k + r]];
                    }
                    combine(s * prefactor, left.value(&lt), right.value(&rt), slot);
                }
            }
        }
        Backend::Contraction => {
            let perms = permutations(m);
            let shuf = shuffles(k, l);
            // each shuffle class stands for k!·l! equal terms of the full sum
            let weight = prefactor * (factorial(k) * factorial(l)) as f64;
            let mut acc = vec![0.0; out_value_len];
            let mut lt = vec![0; k];
            let mut rt = vec![0; l];
            let mut t = vec![0; m];
            for c in combinations(n, m) {
                acc.iter_mut().for_each(|a| *a = 0.0);
                for (lp, rp, s) in &shuf {
                    for (r, &i) in lp.iter().enumerate() {
                        lt[r] = c[i];
                    }
                    for (r, &i) in rp.iter().enumerate() {
                        rt[r] = c[i];
                    }
                    combine(s * weight, left.value(&lt), right.value(&rt), &mut acc);
                }
                for (p, s) in &perms {
                    for (r, &pr) in p.iter().enumerate() {
                        t[r] = c[pr];
                    }
                    for (o, a) in out.value_mut(&t).iter_mut().zip(&acc) {
                        *o = s * a;
                    }
                }
            }
        }
    }
    out
}

/// `(α∧β)` for endomorphism-valued forms; values compose as `α(…)∘β(…)`.
pub fn wedge_end(alpha: &EndForm, beta: &EndForm) -> Result<EndForm> {
    wedge_end_with(Backend::default(), alpha, beta)
}

pub fn wedge_end_with(backend: Backend, alpha: &EndForm, beta: &EndForm) -> Result<EndForm> {
    check_dims(alpha.dim(), beta.dim())?;
    let n = alpha.dim();
    let pre = 1.0 / (factorial(alpha.degree()) * factorial(beta.degree())) as f64;
    let dense = graded_product(backend, &alpha.dense, &beta.dense, n * n, pre, |c, l, r, out| {
        for a in 0..n {
            for m in 0..n {
                let x = l[a * n + m];
                if x == 0.0 {
                    continue;
                }
                let row = &r[m * n..(m + 1) * n];
                for (o, y) in out[a * n..(a + 1) * n].iter_mut().zip(row) {
                    *o += c * x * y;
                }
            }
        }
    });
    Ok(EndForm::from_dense(dense))
}

/// `(γ∧θ)` in the polyvector algebra, with the extra factor ½.
pub fn wedge_poly(gamma: &PolyForm, theta: &PolyForm) -> Result<PolyForm> {
    wedge_poly_with(Backend::default(), gamma, theta)
}

pub fn wedge_poly_with(backend: Backend, gamma: &PolyForm, theta: &PolyForm) -> Result<PolyForm> {
    check_dims(gamma.dim(), theta.dim())?;
    let n = gamma.dim();
    let (q1, q2) = (gamma.poly_degree(), theta.poly_degree());
    let kernel = WedgeKernel::new(n, q1, q2);
    let pre = 0.5 / (factorial(gamma.form_degree()) * factorial(theta.form_degree())) as f64;
    let dense = graded_product(
        backend,
        &gamma.dense,
        &theta.dense,
        kernel.out_len(),
        pre,
        |c, l, r, out| kernel.accumulate(c, l, r, out),
    );
    Ok(PolyForm::from_dense(dense, q1 + q2))
}

/// Left action `(α∧ρ)` of an endomorphism-valued form on a tangent-valued one.
pub fn act_left(alpha: &EndForm, rho: &VForm) -> Result<VForm> {
    act_left_with(Backend::default(), alpha, rho)
}

pub fn act_left_with(backend: Backend, alpha: &EndForm, rho: &VForm) -> Result<VForm> {
    check_dims(alpha.dim(), rho.dim())?;
    let n = alpha.dim();
    let pre = 1.0 / (factorial(alpha.degree()) * factorial(rho.degree())) as f64;
    let dense = graded_product(backend, &alpha.dense, &rho.dense, n, pre, |c, l, r, out| {
        for (a, o) in out.iter_mut().enumerate() {
            let row = &l[a * n..(a + 1) * n];
            *o += c * row.iter().zip(r).map(|(x, y)| x * y).sum::<f64>();
        }
    });
    Ok(VForm::from_dense(dense))
}

/// Right action `(ρ∧γ)` of a polyvector-valued form on a tangent-valued one.
///
/// The last `j` slots of `ρ` absorb the degree-`j` polyvector values of `γ`.
/// When `ρ` has fewer than `j` slots the result is the zero form of degree
/// `max(s − j + i, 0)`.
pub fn act_right(rho: &VForm, gamma: &PolyForm) -> Result<VForm> {
    act_right_with(Backend::default(), rho, gamma)
}

pub fn act_right_with(backend: Backend, rho: &VForm, gamma: &PolyForm) -> Result<VForm> {
    check_dims(rho.dim(), gamma.dim())?;
    let n = rho.dim();
    let (s, i, j) = (rho.degree(), gamma.form_degree(), gamma.poly_degree());
    if s < j {
        return Ok(VForm::zero(n, (s + i).saturating_sub(j)));
    }
    let curried = rho.dense.curry_last(j);
    let poly_len = n.pow(j as u32);
    let inv_j = 1.0 / factorial(j) as f64;
    let pre = 1.0 / (factorial(s - j) * factorial(i)) as f64;
    let dense = graded_product(backend, &curried, &gamma.dense, n, pre, |c, l, r, out| {
        for (a, z) in r.iter().enumerate().take(poly_len) {
            if *z == 0.0 {
                continue;
            }
            let block = &l[a * n..(a + 1) * n];
            for (o, x) in out.iter_mut().zip(block) {
                *o += c * inv_j * z * x;
            }
        }
    });
    Ok(VForm::from_dense(dense))
}

/// `(α ∧_g β)`: the scalar form obtained by pairing tangent values with `g`.
pub fn wedge_g(alpha: &VForm, beta: &VForm, g: &InnerProduct) -> Result<ScalarForm> {
    wedge_g_with(Backend::default(), alpha, beta, g)
}

pub fn wedge_g_with(backend: Backend, alpha: &VForm, beta: &VForm, g: &InnerProduct) -> Result<ScalarForm> {
    check_dims(alpha.dim(), beta.dim())?;
    check_dims(alpha.dim(), g.dim())?;
    let n = alpha.dim();
    // lower the value index of α once so the pairing is a plain dot product
    let mut lowered = alpha.dense.clone();
    for chunk in lowered.data.chunks_mut(n) {
        let low = g.lower(chunk);
        chunk.copy_from_slice(&low);
    }
    let pre = 1.0 / (factorial(alpha.degree()) * factorial(beta.degree())) as f64;
    let dense = graded_product(backend, &lowered, &beta.dense, 1, pre, |c, l, r, out| {
        out[0] += c * l.iter().zip(r).map(|(x, y)| x * y).sum::<f64>();
    });
    Ok(ScalarForm::from_dense(dense))
}

/// `(ω∧η)` for real-valued forms.
pub fn wedge_scalar(omega: &ScalarForm, eta: &ScalarForm) -> Result<ScalarForm> {
    wedge_scalar_with(Backend::default(), omega, eta)
}

pub fn wedge_scalar_with(backend: Backend, omega: &ScalarForm, eta: &ScalarForm) -> Result<ScalarForm> {
    check_dims(omega.dim(), eta.dim())?;
    let pre = 1.0 / (factorial(omega.degree()) * factorial(eta.degree())) as f64;
    let dense = graded_product(backend, &omega.dense, &eta.dense, 1, pre, |c, l, r, out| {
        out[0] += c * l[0] * r[0];
    });
    Ok(ScalarForm::from_dense(dense))
}

fn require_two_form(p: &VForm) -> Result<()> {
    if p.degree() == 2 {
        Ok(())
    } else {
        Err(Error::BadDegree {
            degree: p.degree(),
            reason: "expected a tangent-valued 2-form",
        })
    }
}

/// Extends a tangent-valued 2-form `P` to `Λ^{k+1} → Λ^k`:
///
/// `P(ζ₁∧…∧ζ_{k+1}) = Σ_{i<j} (−1)^{i+j+1} P(ζ_i∧ζ_j) ∧ ζ₁∧…ζ̂_i…ζ̂_j…∧ζ_{k+1}`
///
/// extended linearly from decomposable polyvectors.
pub fn p_extend(p: &VForm, zeta: &Polyvector) -> Result<Polyvector> {
    require_two_form(p)?;
    check_dims(p.dim(), zeta.dim())?;
    let n = p.dim();
    let q = zeta.degree();
    if q < 2 {
        return Err(Error::BadDegree {
            degree: q,
            reason: "the extension acts on polyvectors of degree ≥ 2",
        });
    }
    let mut out = Polyvector::zero(n, q - 1);
    for c in combinations(n, q) {
        let coef = zeta.component(&c);
        if coef == 0.0 {
            continue;
        }
        let basis: Vec<Vec<f64>> = c
            .iter()
            .map(|&i| {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                e
            })
            .collect();
        let refs: Vec<&[f64]> = basis.iter().map(|v| v.as_slice()).collect();
        out = out.add(&p_extend_decomposable(p, &refs)?.scale(coef));
    }
    Ok(out)
}

/// The extension on `ζ₁∧…∧ζ_{k+1}` given by its factors.
pub fn p_extend_decomposable(p: &VForm, zetas: &[&[f64]]) -> Result<Polyvector> {
    require_two_form(p)?;
    let n = p.dim();
    let q = zetas.len();
    let mut out = Polyvector::zero(n, q - 1);
    for i in 0..q {
        for j in (i + 1)..q {
            let sign = if (i + j + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let head = Polyvector::from_vector(&p.eval(&[zetas[i], zetas[j]]));
            let rest: Vec<&[f64]> = (0..q).filter(|&r| r != i && r != j).map(|r| zetas[r]).collect();
            let term = if rest.is_empty() {
                head
            } else {
                head.wedge(&Polyvector::wedge_vectors(&rest))?
            };
            out = out.add(&term.scale(sign));
        }
    }
    Ok(out)
}

/// `P²(X∧Y∧Z) = P(P(X∧Y)∧Z) − P(P(X∧Z)∧Y) + P(P(Y∧Z)∧X)`.
pub fn p_squared(p: &VForm, x: &[f64], y: &[f64], z: &[f64]) -> Result<Vec<f64>> {
    require_two_form(p)?;
    check_dims(p.dim(), x.len())?;
    let pxy = p.eval(&[x, y]);
    let pxz = p.eval(&[x, z]);
    let pyz = p.eval(&[y, z]);
    let a = p.eval(&[&pxy, z]);
    let b = p.eval(&[&pxz, y]);
    let c = p.eval(&[&pyz, x]);
    Ok((0..p.dim()).map(|i| a[i] - b[i] + c[i]).collect())
}
