//! Polyvectors `Λ^q V` stored as fully antisymmetric component arrays.
//!
//! Determinant convention: `u₁∧…∧u_q` has components
//! `det[u_r^{a_s}]`, so `(u∧v)^{ab} = u^a v^b − u^b v^a`, and a `q`-form
//! pairs with a polyvector through `(1/q!) Σ ρ_{a₁…a_q} ζ^{a₁…a_q}`.

use super::forms::check_dims;
use super::perm::{combinations, permutations, shuffles, sort_with_sign, TupleIter};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct Polyvector {
    n: usize,
    q: usize,
    data: Vec<f64>,
}

impl Polyvector {
    pub fn zero(n: usize, q: usize) -> Self {
        Polyvector {
            n,
            q,
            data: vec![0.0; n.pow(q as u32)],
        }
    }

    pub(crate) fn offset_of(n: usize, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * n + i)
    }

    /// Keeps the alternating part of arbitrary component data.
    pub fn from_components(n: usize, q: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n.pow(q as u32));
        let perms = permutations(q);
        let inv = 1.0 / perms.len() as f64;
        let mut out = vec![0.0; data.len()];
        let mut t = vec![0; q];
        for c in combinations(n, q) {
            let mut acc = 0.0;
            for (p, s) in &perms {
                for (r, &pr) in p.iter().enumerate() {
                    t[r] = c[pr];
                }
                acc += s * data[Self::offset_of(n, &t)];
            }
            for (p, s) in &perms {
                for (r, &pr) in p.iter().enumerate() {
                    t[r] = c[pr];
                }
                out[Self::offset_of(n, &t)] = s * acc * inv;
            }
        }
        Polyvector { n, q, data: out }
    }

    pub(crate) fn from_raw(n: usize, q: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n.pow(q as u32));
        Polyvector { n, q, data }
    }

    pub fn from_vector(v: &[f64]) -> Self {
        Polyvector {
            n: v.len(),
            q: 1,
            data: v.to_vec(),
        }
    }

    /// `u₁ ∧ … ∧ u_q`.
    pub fn wedge_vectors(us: &[&[f64]]) -> Self {
        assert!(!us.is_empty());
        let n = us[0].len();
        let q = us.len();
        let mut data = vec![0.0; n.pow(q as u32)];
        let perms = permutations(q);
        for c in combinations(n, q) {
            // determinant of the q×q minor on rows c
            let mut det = 0.0;
            for (p, s) in &perms {
                let mut prod = *s;
                for r in 0..q {
                    prod *= us[r][c[p[r]]];
                }
                det += prod;
            }
            let mut t = vec![0; q];
            for (p, s) in &perms {
                for (r, &pr) in p.iter().enumerate() {
                    t[r] = c[pr];
                }
                data[Self::offset_of(n, &t)] = s * det;
            }
        }
        Polyvector { n, q, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.q
    }

    pub fn component(&self, idx: &[usize]) -> f64 {
        self.data[Self::offset_of(self.n, idx)]
    }

    pub fn components(&self) -> &[f64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn add(&self, other: &Polyvector) -> Polyvector {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Polyvector { data, ..*self }
    }

    pub fn sub(&self, other: &Polyvector) -> Polyvector {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Polyvector { data, ..*self }
    }

    pub fn scale(&self, alpha: f64) -> Polyvector {
        let data = self.data.iter().map(|a| alpha * a).collect();
        Polyvector { data, ..*self }
    }

    /// Exterior product `self ∧ other`.
    pub fn wedge(&self, other: &Polyvector) -> Result<Polyvector> {
        check_dims(self.n, other.n)?;
        let kernel = WedgeKernel::new(self.n, self.q, other.q);
        let mut out = vec![0.0; kernel.out_len()];
        kernel.accumulate(1.0, &self.data, &other.data, &mut out);
        Ok(Polyvector {
            n: self.n,
            q: self.q + other.q,
            data: out,
        })
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for t in TupleIter::new(self.n, self.q) {
            let x = self.component(&t);
            match sort_with_sign(&t) {
                None => worst = worst.max(x.abs()),
                Some((s, sg)) => worst = worst.max((x - sg * self.component(&s)).abs()),
            }
        }
        worst
    }
}

/// Precomputed index tables for repeated polyvector products of fixed degrees.
pub(crate) struct WedgeKernel {
    n: usize,
    p: usize,
    q: usize,
    // (output offsets with signs, left offset, right offset) per increasing tuple
    entries: Vec<(Vec<(usize, f64)>, Vec<(usize, usize, f64)>)>,
}

impl WedgeKernel {
    pub fn new(n: usize, p: usize, q: usize) -> Self {
        let m = p + q;
        let perms = permutations(m);
        let shuf = shuffles(p, q);
        let mut entries = Vec::new();
        for c in combinations(n, m) {
            let scatter = perms
                .iter()
                .map(|(pm, s)| {
                    let t: Vec<usize> = pm.iter().map(|&r| c[r]).collect();
                    (Polyvector::offset_of(n, &t), *s)
                })
                .collect();
            let terms = shuf
                .iter()
                .map(|(l, r, s)| {
                    let lt: Vec<usize> = l.iter().map(|&i| c[i]).collect();
                    let rt: Vec<usize> = r.iter().map(|&i| c[i]).collect();
                    (Polyvector::offset_of(n, &lt), Polyvector::offset_of(n, &rt), *s)
                })
                .collect();
            entries.push((scatter, terms));
        }
        WedgeKernel { n, p, q, entries }
    }

    pub fn out_len(&self) -> usize {
        self.n.pow((self.p + self.q) as u32)
    }

    /// `out += coef · (left ∧ right)` on raw component blocks.
    pub fn accumulate(&self, coef: f64, left: &[f64], right: &[f64], out: &mut [f64]) {
        for (scatter, terms) in &self.entries {
            let v: f64 = terms.iter().map(|&(l, r, s)| s * left[l] * right[r]).sum();
            if v == 0.0 {
                continue;
            }
            for &(o, s) in scatter {
                out[o] += coef * s * v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vector_components() {
        let w = Polyvector::wedge_vectors(&[&[1.0, 2.0, 0.0], &[0.0, 1.0, 3.0]]);
        // (u∧v)^{01} = u0 v1 − u1 v0
        assert_eq!(w.component(&[0, 1]), 1.0);
        assert_eq!(w.component(&[1, 0]), -1.0);
        assert_eq!(w.component(&[1, 2]), 6.0);
        assert_eq!(w.component(&[0, 0]), 0.0);
    }

    #[test]
    fn wedge_is_associative_on_vectors() {
        let u = [1.0, 0.5, -2.0, 0.3];
        let v = [0.2, 1.0, 0.7, -1.1];
        let w = [-0.4, 0.9, 0.1, 2.0];
        let direct = Polyvector::wedge_vectors(&[&u, &v, &w]);
        let step = Polyvector::wedge_vectors(&[&u, &v])
            .wedge(&Polyvector::from_vector(&w))
            .unwrap();
        assert!(direct.sub(&step).max_abs() < 1e-14);
        assert!(direct.antisymmetry_residual() < 1e-15);
    }

    #[test]
    fn vectors_anticommute() {
        let u = Polyvector::from_vector(&[1.0, 2.0, 3.0]);
        let v = Polyvector::from_vector(&[-1.0, 0.5, 4.0]);
        let uv = u.wedge(&v).unwrap();
        let vu = v.wedge(&u).unwrap();
        assert!(uv.add(&vu).max_abs() < 1e-15);
    }
}
