//! Almost-complex structures at a point: Nijenhuis tensor, integrability
//! form, fundamental form, covariant-derivative identities and
//! classification.

use serde::{Deserialize, Serialize};

use crate::algebra::{act_right, wedge_poly, InnerProduct, PolyForm, ScalarForm, VForm};
use crate::error::{Error, Result};
use crate::geometry::{cov_deriv_end, cov_ext_deriv_jet, Chart, PointGeometry, VFormJet, VFormJet2};

/// Default threshold for [`classify`].
pub const CLASSIFY_TOL: f64 = 1e-6;

/// The structure field at a point together with its covariant data.
#[derive(Clone, Debug)]
pub struct AcsAt {
    pub geo: PointGeometry,
    /// `A` as a tangent-valued 1-form, with two orders of partials.
    pub a: VFormJet2,
    /// `(∇_i A)^p_b` at `[(i * n + p) * n + b]`
    pub nabla: Vec<f64>,
    /// `d∇A` with its partials.
    pub da: VFormJet,
    /// `A∧A`
    pub aa: PolyForm,
}

impl AcsAt {
    pub fn at<C: Chart + ?Sized>(chart: &C, x: &[f64]) -> Result<Self> {
        Self::from_geometry(PointGeometry::at(chart, x)?)
    }

    pub fn from_geometry(geo: PointGeometry) -> Result<Self> {
        let a = VFormJet2::from_matrix_jet(&geo.jets.a);
        let nabla = cov_deriv_end(&geo.conn, &geo.jets.a);
        let da = cov_ext_deriv_jet(&geo.conn, &a)?;
        let aa = wedge_poly(&a.form.as_poly(), &a.form.as_poly())?;
        Ok(AcsAt { geo, a, nabla, da, aa })
    }

    pub fn dim(&self) -> usize {
        self.geo.dim()
    }

    pub fn metric(&self) -> &InnerProduct {
        self.geo.metric()
    }

    /// Row-major matrix of `A`.
    pub fn matrix(&self) -> &[f64] {
        &self.geo.jets.a.val
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        mat_vec(self.dim(), self.matrix(), v)
    }

    /// Matrix of `∇_X A`.
    pub fn nabla_along(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut m = vec![0.0; n * n];
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0.0 {
                continue;
            }
            for (k, mk) in m.iter_mut().enumerate() {
                *mk += xi * self.nabla[i * n * n + k];
            }
        }
        m
    }

    /// `(∇_X A)Y`
    pub fn nabla_xy(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        mat_vec(self.dim(), &self.nabla_along(x), y)
    }

    /// `d∇A(X,Y)`
    pub fn da_xy(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.da.form.eval(&[x, y])
    }

    /// Largest entry of `A² + Id`.
    pub fn square_residual(&self) -> f64 {
        let n = self.dim();
        let a = self.matrix();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let s: f64 = (0..n).map(|k| a[i * n + k] * a[k * n + j]).sum::<f64>() + if i == j { 1.0 } else { 0.0 };
                worst = worst.max(s.abs());
            }
        }
        worst
    }

    /// Largest entry of `AᵀgA − g`.
    pub fn orthogonality_residual(&self) -> f64 {
        orthogonality_residual(self.metric(), self.matrix())
    }

    /// Largest entry of `∇A`.
    pub fn nabla_norm(&self) -> f64 {
        self.nabla.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn mat_vec(n: usize, m: &[f64], v: &[f64]) -> Vec<f64> {
    (0..n).map(|a| (0..n).map(|b| m[a * n + b] * v[b]).sum()).collect()
}

pub fn orthogonality_residual(g: &InnerProduct, a: &[f64]) -> f64 {
    let n = g.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut s = -g.entry(i, j);
            for k in 0..n {
                for l in 0..n {
                    s += a[k * n + i] * g.entry(k, l) * a[l * n + j];
                }
            }
            worst = worst.max(s.abs());
        }
    }
    worst
}

/// Nijenhuis tensor from coordinate brackets:
/// `N(∂_i,∂_j)^b = A^a_i ∂_a A^b_j − A^a_j ∂_a A^b_i − A^b_c (∂_i A^c_j − ∂_j A^c_i)`.
/// Uses first partials of `A` only.
pub fn nijenhuis(acs: &AcsAt) -> VForm {
    let n = acs.dim();
    let jet = &acs.geo.jets.a;
    let a = |p: usize, q: usize| jet.val[p * n + q];
    let da = |l: usize, p: usize, q: usize| jet.d1[l * n * n + p * n + q];
    VForm::from_fn(n, 2, |t, b| {
        let (i, j) = (t[0], t[1]);
        let mut s = 0.0;
        for k in 0..n {
            s += a(k, i) * da(k, b, j) - a(k, j) * da(k, b, i);
            s -= a(b, k) * (da(i, k, j) - da(j, k, i));
        }
        s
    })
}

/// `I = d∇A∧(A∧A) − d∇A`, equal to `d∇A(A·,A·) − d∇A`.
pub fn integrability_form(acs: &AcsAt) -> VForm {
    act_right(&acs.da.form, &acs.aa).expect("degrees fit").sub(&acs.da.form)
}

/// Largest component of `I + A·N`, where `A·N` applies `A` to the values of
/// the bracket-built Nijenhuis tensor.
pub fn cross_check_ni(acs: &AcsAt) -> f64 {
    let n = acs.dim();
    let i_form = integrability_form(acs);
    let nij = nijenhuis(acs);
    let a = acs.matrix();
    let an = VForm::from_fn(n, 2, |t, p| (0..n).map(|q| a[p * n + q] * nij.component(t, q)).sum());
    i_form.add(&an).max_abs()
}

/// `Ω_A(X,Y) = g(AX, Y)`. Rejects structures that are not orthogonal.
pub fn fundamental(g: &InnerProduct, a: &[f64]) -> Result<ScalarForm> {
    let n = g.dim();
    let scale = g.matrix().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let residual = orthogonality_residual(g, a);
    if residual > 1e-9 * scale {
        return Err(Error::NotOrthogonal { residual });
    }
    Ok(ScalarForm::from_fn(n, 2, |t| {
        (0..n).map(|k| a[k * n + t[0]] * g.entry(k, t[1])).sum()
    }))
}

/// Residuals of `(∇_X A)(AY) + A((∇_X A)Y) = 0` (any structure) and
/// `(∇_{AX} A)Y − A((∇_X A)Y) = 0` (hermitian structures), maximized over
/// coordinate basis vectors.
pub fn leap_residuals(acs: &AcsAt) -> (f64, f64) {
    let n = acs.dim();
    let a = acs.matrix();
    let mut r1: f64 = 0.0;
    let mut r2: f64 = 0.0;
    for i in 0..n {
        let ni = &acs.nabla[i * n * n..(i + 1) * n * n];
        // ∇_{A e_i} A = Σ_k A^k_i ∇_k A
        let mut nai = vec![0.0; n * n];
        for k in 0..n {
            let c = a[k * n + i];
            for (m, v) in nai.iter_mut().enumerate() {
                *v += c * acs.nabla[k * n * n + m];
            }
        }
        for p in 0..n {
            for b in 0..n {
                let mut s1 = 0.0;
                let mut an = 0.0;
                for m in 0..n {
                    s1 += ni[p * n + m] * a[m * n + b] + a[p * n + m] * ni[m * n + b];
                    an += a[p * n + m] * ni[m * n + b];
                }
                r1 = r1.max(s1.abs());
                r2 = r2.max((nai[p * n + b] - an).abs());
            }
        }
    }
    (r1, r2)
}

/// Largest `|(∇_X A)Y + (∇_Y A)X|` over basis pairs; zero iff `(∇_X A)X = 0`
/// for every `X`.
pub fn skew_residual(acs: &AcsAt) -> f64 {
    let n = acs.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                let v = acs.nabla[(i * n + p) * n + j] + acs.nabla[(j * n + p) * n + i];
                worst = worst.max(v.abs());
            }
        }
    }
    worst
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    Kahler,
    NearlyKahler,
    General,
}

impl std::fmt::Display for Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Class::Kahler => "Kähler",
            Class::NearlyKahler => "nearly-Kähler",
            Class::General => "general",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: Class,
    /// `d∇A = 0` within tolerance.
    pub closed: bool,
    pub nabla_norm: f64,
    pub skew_residual: f64,
}

/// Pointwise classification. Norms are taken in a `g`-orthonormal basis so
/// that the threshold does not depend on chart scaling.
pub fn classify(acs: &AcsAt, tol: f64) -> Classification {
    let n = acs.dim();
    let basis: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let e = acs.metric().orthonormalize(&basis);
    let mut nabla_norm: f64 = 0.0;
    let mut skew: f64 = 0.0;
    let mut da: f64 = 0.0;
    for x in &e {
        for y in &e {
            let v = acs.nabla_xy(x, y);
            let w = acs.nabla_xy(y, x);
            nabla_norm = nabla_norm.max(acs.metric().norm2(&v).sqrt());
            let s: Vec<f64> = v.iter().zip(&w).map(|(p, q)| p + q).collect();
            skew = skew.max(acs.metric().norm2(&s).sqrt());
            da = da.max(acs.metric().norm2(&acs.da_xy(x, y)).sqrt());
        }
    }
    let class = if nabla_norm <= tol {
        Class::Kahler
    } else if skew <= tol {
        Class::NearlyKahler
    } else {
        Class::General
    };
    Classification {
        class,
        closed: da <= tol,
        nabla_norm,
        skew_residual: skew,
    }
}
