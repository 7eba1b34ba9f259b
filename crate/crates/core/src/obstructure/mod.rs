//! Obstruction quantities built from `A`, `d∇A` and the curvature, each as a
//! residual evaluator.

mod registry;
mod sweep;

pub use registry::{
    identity, EvalContext, Hypotheses, Identity, IdentityKind, Requirement, IDENTITIES, OBSTRUCT_BUNDLE,
};
pub use sweep::{
    gate, structured_frame, sweep, CurvatureGate, Outcome, Record, Skip, Summary, SweepConfig, SweepReport, GATE_TOL,
};

use crate::acx::{fundamental, integrability_form, AcsAt};
use crate::algebra::{act_left, act_right, p_squared, wedge_g, wedge_poly, wedge_scalar, ScalarForm, VForm};
use crate::error::Result;
use crate::geometry::{cov_ext_deriv, Chart, VFormJet};

/// Obstruction forms at one point.
#[derive(Clone, Debug)]
pub struct ObstructureAt {
    pub acs: AcsAt,
    /// `R∧A`
    pub ra: VForm,
    /// `d∇A∧(d∇A∧A)`
    pub nested: VForm,
    /// `Ω_A`, when `A` is orthogonal.
    pub omega: Option<ScalarForm>,
}

impl ObstructureAt {
    pub fn at<C: Chart + ?Sized>(chart: &C, x: &[f64]) -> Result<Self> {
        Self::new(AcsAt::at(chart, x)?)
    }

    pub fn new(acs: AcsAt) -> Result<Self> {
        let ra = act_left(acs.geo.curv.endform(), &acs.a.form)?;
        let inner = wedge_poly(&acs.da.form.as_poly(), &acs.a.form.as_poly())?;
        let nested = act_right(&acs.da.form, &inner)?;
        let omega = fundamental(acs.metric(), acs.matrix()).ok();
        Ok(ObstructureAt { acs, ra, nested, omega })
    }

    /// `(R∧A)∧(A∧A) + 2 d∇A∧(d∇A∧A) − R∧A`
    pub fn first_obstructure(&self) -> VForm {
        act_right(&self.ra, &self.acs.aa)
            .expect("degrees fit")
            .add(&self.nested.scale(2.0))
            .sub(&self.ra)
    }

    /// `½ R∧A + 2 d∇A∧(d∇A∧A)`
    pub fn simplified_obstructure(&self) -> VForm {
        self.ra.scale(0.5).add(&self.nested.scale(2.0))
    }

    /// `(R∧A)∧(A∧A) − (3/2) R∧A`
    pub fn substitution_coefficient(&self) -> VForm {
        act_right(&self.ra, &self.acs.aa)
            .expect("degrees fit")
            .sub(&self.ra.scale(1.5))
    }

    /// `d∇I` computed by differentiating `I = d∇A(A·,A·) − d∇A` directly,
    /// without the product formula.
    pub fn direct_obstructure(&self) -> VForm {
        let acs = &self.acs;
        let n = acs.dim();
        let jet = &acs.geo.jets.a;
        let a = |p: usize, i: usize| jet.val[p * n + i];
        let form = integrability_form(acs);
        let partials = (0..n)
            .map(|l| {
                let da = &acs.da.form;
                let dda = &acs.da.partials[l];
                let dl = jet.partial(l);
                VForm::from_fn(n, 2, |t, c| {
                    let (i, j) = (t[0], t[1]);
                    let mut s = -dda.component(t, c);
                    for p in 0..n {
                        for q in 0..n {
                            let api = a(p, i);
                            let aqj = a(q, j);
                            s += dda.component(&[p, q], c) * api * aqj
                                + da.component(&[p, q], c) * (dl[p * n + i] * aqj + api * dl[q * n + j]);
                        }
                    }
                    s
                })
            })
            .collect();
        cov_ext_deriv(&acs.geo.conn, &VFormJet { form, partials }).expect("degree fits")
    }

    fn g(&self, u: &[f64], v: &[f64]) -> f64 {
        self.acs.metric().dot(u, v)
    }

    fn ddd(&self, x1: &[f64], x2: &[f64], x3: &[f64]) -> Vec<f64> {
        let acs = &self.acs;
        let t = |p: &[f64], q: &[f64], r: &[f64]| acs.da_xy(&acs.da_xy(p, q), &acs.apply(r));
        let (a, b, c) = (t(x1, x2, x3), t(x2, x3, x1), t(x1, x3, x2));
        (0..a.len()).map(|i| a[i] + b[i] - c[i]).collect()
    }

    /// `R(X₁,X₂)AX₃ + R(X₂,X₃)AX₁ − R(X₁,X₃)AX₂ + 2[d∇A(d∇A(X₁,X₂),AX₃) + …]`
    pub fn expanded_u1(&self, x1: &[f64], x2: &[f64], x3: &[f64]) -> Vec<f64> {
        let r = self.acs.geo.curv.endform();
        let acs = &self.acs;
        let (a1, a2, a3) = (acs.apply(x1), acs.apply(x2), acs.apply(x3));
        let r12 = r.apply(&[x1, x2], &a3);
        let r23 = r.apply(&[x2, x3], &a1);
        let r13 = r.apply(&[x1, x3], &a2);
        let d = self.ddd(x1, x2, x3);
        (0..d.len()).map(|i| r12[i] + r23[i] - r13[i] + 2.0 * d[i]).collect()
    }

    /// `g(u1(X₁,X₂,X₃), X₄)` written with `Rm`.
    pub fn expanded_u2(&self, x: &[&[f64]; 4]) -> f64 {
        let acs = &self.acs;
        let curv = &acs.geo.curv;
        let (a1, a2, a3) = (acs.apply(x[0]), acs.apply(x[1]), acs.apply(x[2]));
        curv.rm_eval(x[0], x[1], &a3, x[3]) + curv.rm_eval(x[1], x[2], &a1, x[3]) - curv.rm_eval(x[0], x[2], &a2, x[3])
            + 2.0 * self.g(&self.ddd(x[0], x[1], x[2]), x[3])
    }

    /// Constant-curvature form with the six `g(·, A·)` terms.
    pub fn const_curv_u3(&self, c: f64, x1: &[f64], x2: &[f64], x3: &[f64]) -> Vec<f64> {
        let acs = &self.acs;
        let (a1, a2, a3) = (acs.apply(x1), acs.apply(x2), acs.apply(x3));
        let k1 = self.g(x2, &a3) - self.g(&a2, x3);
        let k2 = -self.g(x1, &a3) + self.g(&a1, x3);
        let k3 = self.g(x1, &a2) - self.g(&a1, x2);
        let d = self.ddd(x1, x2, x3);
        (0..d.len())
            .map(|i| c * (k1 * x1[i] + k2 * x2[i] + k3 * x3[i]) + 2.0 * d[i])
            .collect()
    }

    pub fn const_curv_u4(&self, c: f64, x: &[&[f64]; 4]) -> f64 {
        self.g(&self.const_curv_u3(c, x[0], x[1], x[2]), x[3])
    }

    /// `c(Ω(X₁,X₃)X₂ − Ω(X₁,X₂)X₃ − Ω(X₂,X₃)X₁) + d∇A(d∇A(X₁,X₂),AX₃) + …`;
    /// `None` for non-orthogonal `A`.
    pub fn const_curv_u5(&self, c: f64, x1: &[f64], x2: &[f64], x3: &[f64]) -> Option<Vec<f64>> {
        let om = self.omega.as_ref()?;
        let o = |p: &[f64], q: &[f64]| om.eval(&[p, q]);
        let (o13, o12, o23) = (o(x1, x3), o(x1, x2), o(x2, x3));
        let d = self.ddd(x1, x2, x3);
        Some(
            (0..d.len())
                .map(|i| c * (o13 * x2[i] - o12 * x3[i] - o23 * x1[i]) + d[i])
                .collect(),
        )
    }

    pub fn const_curv_u6(&self, c: f64, x: &[&[f64]; 4]) -> Option<f64> {
        Some(self.g(&self.const_curv_u5(c, x[0], x[1], x[2])?, x[3]))
    }

    /// `Φ_A(X₁,X₂,X₃,X₄) = g((d∇A)²(X₁∧X₂∧X₃), X₄)`
    pub fn phi(&self, x: &[&[f64]; 4]) -> f64 {
        let p2 = p_squared(&self.acs.da.form, x[0], x[1], x[2]).expect("degree 2");
        self.g(&p2, x[3])
    }

    /// `Φ_A + (c/2) Ω_A∧Ω_A`
    pub fn phi_omega_square(&self, c: f64, x: &[&[f64]; 4]) -> Option<f64> {
        let om = self.omega.as_ref()?;
        let oo = wedge_scalar(om, om).expect("degrees fit");
        Some(self.phi(x) + 0.5 * c * oo.eval(x))
    }

    /// Three-term `∇A` expression for `Φ_A`.
    pub fn phi_via_nabla(&self, x: &[&[f64]; 4]) -> f64 {
        let acs = &self.acs;
        let t = |p: &[f64], q: &[f64], r: &[f64]| self.g(&acs.da_xy(p, q), &acs.nabla_xy(r, x[3]));
        t(x[0], x[1], x[2]) - t(x[0], x[2], x[1]) + t(x[1], x[2], x[0])
    }

    /// Half-sum of `g(d∇A(·,·), d∇A(·,·))` terms.
    pub fn phi_claridad(&self, x: &[&[f64]; 4]) -> f64 {
        let acs = &self.acs;
        let t = |p: &[f64], q: &[f64], r: &[f64], s: &[f64]| self.g(&acs.da_xy(p, q), &acs.da_xy(r, s));
        0.5 * (t(x[0], x[1], x[2], x[3]) - t(x[0], x[2], x[1], x[3]) + t(x[1], x[2], x[0], x[3]))
    }

    /// `g(d∇A(X,Y), (∇_Z A)Z)`
    pub fn aura(&self, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
        self.g(&self.acs.da_xy(x, y), &self.acs.nabla_xy(z, z))
    }

    /// `Ω_A((∇_X A)X, (∇_Y A)Y)`
    pub fn omega_diagonal(&self, x: &[f64], y: &[f64]) -> Option<f64> {
        let om = self.omega.as_ref()?;
        Some(om.eval(&[&self.acs.nabla_xy(x, x), &self.acs.nabla_xy(y, y)]))
    }

    /// `d∇A(X,AX) + 2(∇_X A)X`
    pub fn diagonal_plain(&self, x: &[f64]) -> Vec<f64> {
        let acs = &self.acs;
        let d = acs.da_xy(x, &acs.apply(x));
        let v = acs.nabla_xy(x, x);
        d.iter().zip(&v).map(|(p, q)| p + 2.0 * q).collect()
    }

    /// `d∇A(X,AX) + 2A((∇_X A)X)`
    pub fn diagonal_hermitian(&self, x: &[f64]) -> Vec<f64> {
        let acs = &self.acs;
        let d = acs.da_xy(x, &acs.apply(x));
        let v = acs.apply(&acs.nabla_xy(x, x));
        d.iter().zip(&v).map(|(p, q)| p + 2.0 * q).collect()
    }

    /// `d∇A ∧_g d∇A + 2c Ω_A∧Ω_A`; `None` for non-orthogonal `A`.
    pub fn structure_eq(&self, c: f64) -> Option<ScalarForm> {
        let om = self.omega.as_ref()?;
        let dd = wedge_g(&self.acs.da.form, &self.acs.da.form, self.acs.metric()).expect("degrees fit");
        let oo = wedge_scalar(om, om).expect("degrees fit");
        Some(dd.add(&oo.scale(2.0 * c)))
    }

    /// `‖(∇_X A)Y‖² − g((∇_X A)X, (∇_Y A)Y) + (c/2)(Ω(X,Y)² − ‖X‖²‖Y‖² + g(X,Y)²)`
    pub fn norm_formula(&self, c: f64, x: &[f64], y: &[f64]) -> Option<f64> {
        let om = self.omega.as_ref()?;
        let acs = &self.acs;
        let xy = acs.nabla_xy(x, y);
        let lhs = self.g(&xy, &xy);
        let rhs = self.g(&acs.nabla_xy(x, x), &acs.nabla_xy(y, y))
            - 0.5 * c * (om.eval(&[x, y]).powi(2) - self.g(x, x) * self.g(y, y) + self.g(x, y).powi(2));
        Some(lhs - rhs)
    }

    /// `‖(∇_X A)Y‖ − ‖(∇_Y A)X‖`
    pub fn norm_symmetry(&self, x: &[f64], y: &[f64]) -> f64 {
        let a = self.acs.nabla_xy(x, y);
        let b = self.acs.nabla_xy(y, x);
        self.g(&a, &a).sqrt() - self.g(&b, &b).sqrt()
    }
}
