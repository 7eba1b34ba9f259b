//! Alternating forms with tangent, endomorphism, polyvector or scalar values.
//!
//! All four types store every index tuple densely and are antisymmetrized at
//! construction, so the components at a tuple equal the form evaluated on the
//! corresponding coordinate basis vectors.

use super::dense::Dense;
use super::perm::{factorial, permutations, sort_with_sign, TupleIter};
use super::polyvector::Polyvector;
use crate::error::{Error, Result};

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

/// A tangent-valued alternating `k`-form. Components are indexed by the form
/// slots `(i₁,…,i_k)` followed by the value index `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct VForm {
    pub(crate) dense: Dense,
}

impl VForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        VForm {
            dense: Dense::zeros(n, degree, n),
        }
    }

    /// Builds a form from arbitrary (not necessarily alternating) component
    /// data; the alternating part is kept.
    pub fn from_components(n: usize, degree: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n.pow(degree as u32 + 1));
        let mut dense = Dense {
            n,
            degree,
            value_len: n,
            data,
        };
        dense.antisymmetrize();
        VForm { dense }
    }

    /// Component data taken as already alternating (used by kernels whose
    /// output is alternating by construction).
    pub(crate) fn from_dense(dense: Dense) -> Self {
        VForm { dense }
    }

    pub fn from_fn(n: usize, degree: usize, f: impl Fn(&[usize], usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n.pow(degree as u32 + 1));
        for t in TupleIter::new(n, degree) {
            for a in 0..n {
                data.push(f(&t, a));
            }
        }
        Self::from_components(n, degree, data)
    }

    /// A tangent vector as a 0-form.
    pub fn from_vector(v: &[f64]) -> Self {
        VForm {
            dense: Dense {
                n: v.len(),
                degree: 0,
                value_len: v.len(),
                data: v.to_vec(),
            },
        }
    }

    /// The 1-form `X ↦ M X` of a row-major `n × n` matrix.
    pub fn from_matrix(n: usize, m: &[f64]) -> Self {
        assert_eq!(m.len(), n * n);
        let mut dense = Dense::zeros(n, 1, n);
        for b in 0..n {
            for a in 0..n {
                dense.value_mut(&[b])[a] = m[a * n + b];
            }
        }
        VForm { dense }
    }

    /// Row-major matrix of a 1-form.
    pub fn to_matrix(&self) -> Vec<f64> {
        assert_eq!(self.degree(), 1);
        let n = self.dim();
        let mut m = vec![0.0; n * n];
        for b in 0..n {
            for a in 0..n {
                m[a * n + b] = self.dense.value(&[b])[a];
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dense.n
    }

    pub fn degree(&self) -> usize {
        self.dense.degree
    }

    pub fn component(&self, idx: &[usize], a: usize) -> f64 {
        self.dense.value(idx)[a]
    }

    pub fn components(&self) -> &[f64] {
        &self.dense.data
    }

    pub fn eval(&self, xs: &[&[f64]]) -> Vec<f64> {
        self.dense.eval(xs)
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        self.dense.antisymmetry_residual()
    }

    pub fn max_abs(&self) -> f64 {
        self.dense.max_abs()
    }

    pub fn add(&self, other: &VForm) -> VForm {
        let mut d = self.dense.clone();
        d.axpy(1.0, &other.dense);
        VForm { dense: d }
    }

    pub fn sub(&self, other: &VForm) -> VForm {
        let mut d = self.dense.clone();
        d.axpy(-1.0, &other.dense);
        VForm { dense: d }
    }

    pub fn scale(&self, alpha: f64) -> VForm {
        VForm {
            dense: self.dense.scaled(alpha),
        }
    }

    /// The same form seen in `Ω^k(Λ¹)`, the polyvector algebra.
    pub fn as_poly(&self) -> PolyForm {
        PolyForm {
            dense: self.dense.clone(),
            q: 1,
        }
    }

    /// Applies `ρ ∈ Ω^j` as a map `Λ^j → T`: `ρ(ζ₁∧…∧ζ_j) = ρ(ζ₁,…,ζ_j)`.
    pub fn apply_polyvector(&self, zeta: &Polyvector) -> Result<Vec<f64>> {
        check_dims(self.dim(), zeta.dim())?;
        if zeta.degree() != self.degree() {
            return Err(Error::BadDegree {
                degree: zeta.degree(),
                reason: "polyvector degree must match form degree",
            });
        }
        let n = self.dim();
        let inv = 1.0 / factorial(self.degree()) as f64;
        let mut out = vec![0.0; n];
        for t in TupleIter::new(n, self.degree()) {
            let z = zeta.component(&t);
            if z == 0.0 {
                continue;
            }
            for (o, v) in out.iter_mut().zip(self.dense.value(&t)) {
                *o += inv * z * v;
            }
        }
        Ok(out)
    }
}

/// An endomorphism-valued alternating `k`-form; the value block at a tuple is
/// a row-major `n × n` matrix (output index first).
#[derive(Clone, Debug, PartialEq)]
pub struct EndForm {
    pub(crate) dense: Dense,
}

impl EndForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        EndForm {
            dense: Dense::zeros(n, degree, n * n),
        }
    }

    pub fn from_components(n: usize, degree: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n.pow(degree as u32 + 2));
        let mut dense = Dense {
            n,
            degree,
            value_len: n * n,
            data,
        };
        dense.antisymmetrize();
        EndForm { dense }
    }

    pub(crate) fn from_dense(dense: Dense) -> Self {
        EndForm { dense }
    }

    /// `f(form indices, a, b)` gives the `(a, b)` entry of the endomorphism.
    pub fn from_fn(n: usize, degree: usize, f: impl Fn(&[usize], usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n.pow(degree as u32 + 2));
        for t in TupleIter::new(n, degree) {
            for a in 0..n {
                for b in 0..n {
                    data.push(f(&t, a, b));
                }
            }
        }
        Self::from_components(n, degree, data)
    }

    /// An endomorphism as a 0-form.
    pub fn from_endomorphism(n: usize, m: &[f64]) -> Self {
        assert_eq!(m.len(), n * n);
        EndForm {
            dense: Dense {
                n,
                degree: 0,
                value_len: n * n,
                data: m.to_vec(),
            },
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = 1.0;
        }
        Self::from_endomorphism(n, &m)
    }

    pub fn dim(&self) -> usize {
        self.dense.n
    }

    pub fn degree(&self) -> usize {
        self.dense.degree
    }

    pub fn component(&self, idx: &[usize], a: usize, b: usize) -> f64 {
        self.dense.value(idx)[a * self.dim() + b]
    }

    pub fn components(&self) -> &[f64] {
        &self.dense.data
    }

    /// The endomorphism obtained by inserting `xs` into the form slots.
    pub fn eval(&self, xs: &[&[f64]]) -> Vec<f64> {
        self.dense.eval(xs)
    }

    /// `α(X₁,…,X_k)(W)`.
    pub fn apply(&self, xs: &[&[f64]], w: &[f64]) -> Vec<f64> {
        let m = self.eval(xs);
        let n = self.dim();
        (0..n).map(|a| (0..n).map(|b| m[a * n + b] * w[b]).sum()).collect()
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        self.dense.antisymmetry_residual()
    }

    pub fn max_abs(&self) -> f64 {
        self.dense.max_abs()
    }

    pub fn sub(&self, other: &EndForm) -> EndForm {
        let mut d = self.dense.clone();
        d.axpy(-1.0, &other.dense);
        EndForm { dense: d }
    }

    pub fn scale(&self, alpha: f64) -> EndForm {
        EndForm {
            dense: self.dense.scaled(alpha),
        }
    }
}

/// A `p`-form with values in degree-`q` polyvectors. Value blocks use the
/// determinant convention of [`Polyvector`].
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm {
    pub(crate) dense: Dense,
    pub(crate) q: usize,
}

impl PolyForm {
    pub fn zero(n: usize, p: usize, q: usize) -> Self {
        PolyForm {
            dense: Dense::zeros(n, p, n.pow(q as u32)),
            q,
        }
    }

    /// Keeps the part alternating in both index blocks.
    pub fn from_components(n: usize, p: usize, q: usize, data: Vec<f64>) -> Self {
        let vlen = n.pow(q as u32);
        assert_eq!(data.len(), n.pow(p as u32) * vlen);
        let mut dense = Dense {
            n,
            degree: p,
            value_len: vlen,
            data,
        };
        dense.antisymmetrize();
        for chunk in dense.data.chunks_mut(vlen) {
            let pv = Polyvector::from_components(n, q, chunk.to_vec());
            chunk.copy_from_slice(pv.components());
        }
        PolyForm { dense, q }
    }

    pub(crate) fn from_dense(dense: Dense, q: usize) -> Self {
        PolyForm { dense, q }
    }

    pub fn from_fn(n: usize, p: usize, q: usize, f: impl Fn(&[usize], &[usize]) -> f64) -> Self {
        let mut data = Vec::with_capacity(n.pow((p + q) as u32));
        for t in TupleIter::new(n, p) {
            for v in TupleIter::new(n, q) {
                data.push(f(&t, &v));
            }
        }
        Self::from_components(n, p, q, data)
    }

    pub fn dim(&self) -> usize {
        self.dense.n
    }

    pub fn form_degree(&self) -> usize {
        self.dense.degree
    }

    pub fn poly_degree(&self) -> usize {
        self.q
    }

    pub fn components(&self) -> &[f64] {
        &self.dense.data
    }

    pub fn eval(&self, xs: &[&[f64]]) -> Polyvector {
        Polyvector::from_raw(self.dim(), self.q, self.dense.eval(xs))
    }

    /// Largest deviation from antisymmetry in either index block.
    pub fn antisymmetry_residual(&self) -> f64 {
        let form_part = self.dense.antisymmetry_residual();
        let n = self.dim();
        let mut worst = form_part;
        for chunk in self.dense.data.chunks(self.dense.value_len) {
            for v in TupleIter::new(n, self.q) {
                let x = chunk[Polyvector::offset_of(n, &v)];
                match sort_with_sign(&v) {
                    None => worst = worst.max(x.abs()),
                    Some((s, sg)) => {
                        let b = chunk[Polyvector::offset_of(n, &s)];
                        worst = worst.max((x - sg * b).abs());
                    }
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.dense.max_abs()
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        let mut d = self.dense.clone();
        d.axpy(1.0, &other.dense);
        PolyForm { dense: d, q: self.q }
    }

    pub fn sub(&self, other: &PolyForm) -> PolyForm {
        let mut d = self.dense.clone();
        d.axpy(-1.0, &other.dense);
        PolyForm { dense: d, q: self.q }
    }

    pub fn scale(&self, alpha: f64) -> PolyForm {
        PolyForm {
            dense: self.dense.scaled(alpha),
            q: self.q,
        }
    }
}

/// A real-valued alternating `k`-form.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarForm {
    pub(crate) dense: Dense,
}

impl ScalarForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        ScalarForm {
            dense: Dense::zeros(n, degree, 1),
        }
    }

    pub fn from_components(n: usize, degree: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n.pow(degree as u32));
        let mut dense = Dense {
            n,
            degree,
            value_len: 1,
            data,
        };
        dense.antisymmetrize();
        ScalarForm { dense }
    }

    pub(crate) fn from_dense(dense: Dense) -> Self {
        ScalarForm { dense }
    }

    pub fn from_fn(n: usize, degree: usize, f: impl Fn(&[usize]) -> f64) -> Self {
        let data = TupleIter::new(n, degree).map(|t| f(&t)).collect();
        Self::from_components(n, degree, data)
    }

    /// `e^{i₁}∧…∧e^{i_k}` as an alternating form (determinant normalization).
    pub fn basis_wedge(n: usize, idx: &[usize]) -> Self {
        let k = idx.len();
        let mut dense = Dense::zeros(n, k, 1);
        if sort_with_sign(idx).is_some() {
            for (p, s) in permutations(k) {
                let t: Vec<usize> = p.iter().map(|&r| idx[r]).collect();
                dense.value_mut(&t)[0] = s;
            }
        }
        ScalarForm { dense }
    }

    pub fn dim(&self) -> usize {
        self.dense.n
    }

    pub fn degree(&self) -> usize {
        self.dense.degree
    }

    pub fn component(&self, idx: &[usize]) -> f64 {
        self.dense.value(idx)[0]
    }

    pub fn components(&self) -> &[f64] {
        &self.dense.data
    }

    pub fn eval(&self, xs: &[&[f64]]) -> f64 {
        self.dense.eval(xs)[0]
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        self.dense.antisymmetry_residual()
    }

    pub fn max_abs(&self) -> f64 {
        self.dense.max_abs()
    }

    pub fn add(&self, other: &ScalarForm) -> ScalarForm {
        let mut d = self.dense.clone();
        d.axpy(1.0, &other.dense);
        ScalarForm { dense: d }
    }

    pub fn scale(&self, alpha: f64) -> ScalarForm {
        ScalarForm {
            dense: self.dense.scaled(alpha),
        }
    }
}
