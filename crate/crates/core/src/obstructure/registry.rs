use serde::Serialize;

use super::ObstructureAt;
use crate::acx::{cross_check_ni, integrability_form, leap_residuals, nijenhuis, skew_residual};
use crate::geometry::{const_curv_r, cov_ext_deriv, VFormJet};

/// A hypothesis an identity may depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    Orthogonal,
    Integrable,
    ConstantCurvature,
    Kahler,
    NearlyKahler,
}

impl std::fmt::Display for Requirement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Requirement::Orthogonal => "orthogonal",
            Requirement::Integrable => "integrable",
            Requirement::ConstantCurvature => "constant-curvature",
            Requirement::Kahler => "kahler",
            Requirement::NearlyKahler => "nearly-kahler",
        })
    }
}

/// Which hypotheses hold for a scenario at run time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Hypotheses {
    pub orthogonal: bool,
    pub integrable: bool,
    pub constant_curvature: bool,
    pub kahler: bool,
    pub nearly_kahler: bool,
}

impl Hypotheses {
    pub fn holds(&self, r: Requirement) -> bool {
        match r {
            Requirement::Orthogonal => self.orthogonal,
            Requirement::Integrable => self.integrable,
            Requirement::ConstantCurvature => self.constant_curvature,
            Requirement::Kahler => self.kahler,
            Requirement::NearlyKahler => self.nearly_kahler || self.kahler,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    /// Evaluated once per point, independent of the frame.
    Pointwise,
    /// Evaluated on each sampled frame.
    Framed,
}

/// Data an evaluator sees at one point.
pub struct EvalContext<'a> {
    pub ob: &'a ObstructureAt,
    /// Curvature constant used by constant-curvature identities.
    pub c: Option<f64>,
    /// Relative deviation of the metric partials from finite differences.
    pub fd_residual: Option<f64>,
    /// Variance of sectional curvatures over random planes at this point.
    pub sectional_variance: f64,
}

/// Returns the residual, signed where the quantity is a scalar; summaries
/// use its absolute value.
type Eval = fn(&EvalContext, &[&[f64]; 4]) -> Option<f64>;

/// A named residual with its hypotheses and tolerance.
pub struct Identity {
    pub name: &'static str,
    pub description: &'static str,
    pub requires: &'static [Requirement],
    pub kind: IdentityKind,
    pub tol: f64,
    /// Reported as a witness even when the listed hypotheses hold.
    pub witness_only: bool,
    eval: Eval,
}

impl Identity {
    pub fn evaluate(&self, ctx: &EvalContext, frame: &[&[f64]; 4]) -> Option<f64> {
        (self.eval)(ctx, frame)
    }

    pub fn needs_curvature_constant(&self) -> bool {
        self.requires.contains(&Requirement::ConstantCurvature)
    }

    /// "check" when every hypothesis holds, "witness" otherwise.
    pub fn is_check(&self, h: &Hypotheses) -> bool {
        !self.witness_only && self.requires.iter().all(|&r| h.holds(r))
    }
}

impl std::fmt::Debug for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Identity").field("name", &self.name).finish()
    }
}

pub fn identity(name: &str) -> Option<&'static Identity> {
    IDENTITIES.iter().find(|i| i.name == name)
}

use IdentityKind::{Framed, Pointwise};
use Requirement::{ConstantCurvature as CC, Integrable as INT, Kahler as KAH, NearlyKahler as NK, Orthogonal as ORTH};

const HERMITIAN: &[Requirement] = &[ORTH, INT];
const HERMITIAN_CC: &[Requirement] = &[ORTH, INT, CC];

fn norm(ctx: &EvalContext, v: &[f64]) -> f64 {
    ctx.ob.acs.metric().norm2(v).sqrt()
}

/// Maximum of `f` over ordered pairs of distinct frame vectors.
fn over_pairs(x: &[&[f64]; 4], mut f: impl FnMut(&[f64], &[f64]) -> Option<f64>) -> Option<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                worst = worst.max(f(x[i], x[j])?.abs());
            }
        }
    }
    Some(worst)
}

pub static IDENTITIES: &[Identity] = &[
    Identity {
        name: "metricity",
        description: "Levi-Civita connection preserves the metric",
        requires: &[],
        kind: Pointwise,
        tol: 1e-10,
        witness_only: false,
        eval: |c, _| Some(c.ob.acs.geo.conn.metricity_residual()),
    },
    Identity {
        name: "torsion_free",
        description: "covariant exterior derivative of the identity 1-form vanishes",
        requires: &[],
        kind: Pointwise,
        tol: 1e-10,
        witness_only: false,
        eval: |c, _| {
            let conn = &c.ob.acs.geo.conn;
            let n = conn.dim();
            let mut id = vec![0.0; n * n];
            for i in 0..n {
                id[i * n + i] = 1.0;
            }
            let jet = VFormJet {
                form: crate::algebra::VForm::from_matrix(n, &id),
                partials: vec![crate::algebra::VForm::zero(n, 1); n],
            };
            Some(cov_ext_deriv(conn, &jet).ok()?.max_abs())
        },
    },
    Identity {
        name: "bianchi",
        description: "algebraic Bianchi identity of the curvature",
        requires: &[],
        kind: Pointwise,
        tol: 1e-9,
        witness_only: false,
        eval: |c, _| Some(c.ob.acs.geo.curv.bianchi_residual()),
    },
    Identity {
        name: "d2_curvature",
        description: "second covariant exterior derivative of A equals R∧A",
        requires: &[],
        kind: Pointwise,
        tol: 1e-7,
        witness_only: false,
        eval: |c, _| {
            let acs = &c.ob.acs;
            let dda = cov_ext_deriv(&acs.geo.conn, &acs.da).ok()?;
            Some(dda.sub(&c.ob.ra).max_abs())
        },
    },
    Identity {
        name: "ad_vs_fd",
        description: "dual-number metric partials against central differences (relative)",
        requires: &[],
        kind: Pointwise,
        tol: 1e-6,
        witness_only: false,
        eval: |c, _| c.fd_residual,
    },
    Identity {
        name: "sectional_variance",
        description: "variance of sectional curvature over random planes",
        requires: &[CC],
        kind: Pointwise,
        tol: 1e-6,
        witness_only: false,
        eval: |c, _| Some(c.sectional_variance),
    },
    Identity {
        name: "const_curvature_model",
        description: "curvature equals c(g(Y,Z)X - g(X,Z)Y)",
        requires: &[CC],
        kind: Pointwise,
        tol: 1e-8,
        witness_only: false,
        eval: |c, _| {
            let geo = &c.ob.acs.geo;
            Some(geo.curv.endform().sub(&const_curv_r(c.c?, geo.metric())).max_abs())
        },
    },
    Identity {
        name: "acs_square",
        description: "A squared is minus the identity",
        requires: &[],
        kind: Pointwise,
        tol: 1e-10,
        witness_only: false,
        eval: |c, _| Some(c.ob.acs.square_residual()),
    },
    Identity {
        name: "orthogonality",
        description: "A preserves the metric",
        requires: &[ORTH],
        kind: Pointwise,
        tol: 1e-10,
        witness_only: false,
        eval: |c, _| Some(c.ob.acs.orthogonality_residual()),
    },
    Identity {
        name: "fundamental_invariance",
        description: "fundamental 2-form is alternating and A-invariant",
        requires: &[ORTH],
        kind: Framed,
        tol: 1e-10,
        witness_only: false,
        eval: |c, x| {
            let om = c.ob.omega.as_ref()?;
            let acs = &c.ob.acs;
            over_pairs(x, |u, v| {
                let inv = om.eval(&[&acs.apply(u), &acs.apply(v)]) - om.eval(&[u, v]);
                let alt = om.eval(&[u, v]) + om.eval(&[v, u]);
                Some(inv.abs().max(alt.abs()))
            })
        },
    },
    Identity {
        name: "nijenhuis",
        description: "Nijenhuis tensor from coordinate brackets",
        requires: &[INT],
        kind: Pointwise,
        tol: 1e-8,
        witness_only: false,
        eval: |c, _| Some(nijenhuis(&c.ob.acs).max_abs()),
    },
    Identity {
        name: "integrability_form",
        description: "I = d∇A∧(A∧A) - d∇A",
        requires: &[INT],
        kind: Pointwise,
        tol: 1e-8,
        witness_only: false,
        eval: |c, _| Some(integrability_form(&c.ob.acs).max_abs()),
    },
    Identity {
        name: "ni_cross_check",
        description: "I + A·N vanishes (integrability form against brackets)",
        requires: &[],
        kind: Pointwise,
        tol: 1e-8,
        witness_only: false,
        eval: |c, _| Some(cross_check_ni(&c.ob.acs)),
    },
    Identity {
        name: "leap1",
        description: "(∇_X A)(AY) = -A((∇_X A)Y)",
        requires: &[],
        kind: Pointwise,
        tol: 1e-9,
        witness_only: false,
        eval: |c, _| Some(leap_residuals(&c.ob.acs).0),
    },
    Identity {
        name: "leap2",
        description: "(∇_{AX} A)Y = A((∇_X A)Y)",
        requires: HERMITIAN,
        kind: Pointwise,
        tol: 1e-8,
        witness_only: false,
        eval: |c, _| Some(leap_residuals(&c.ob.acs).1),
    },
    Identity {
        name: "kahler",
        description: "∇A vanishes",
        requires: &[KAH],
        kind: Pointwise,
        tol: 1e-9,
        witness_only: false,
        eval: |c, _| Some(c.ob.acs.nabla_norm()),
    },
    Identity {
        name: "nearly_kahler_skew",
        description: "(∇_X A)X = 0",
        requires: &[NK],
        kind: Pointwise,
        tol: 1e-8,
        witness_only: false,
        eval: |c, _| Some(skew_residual(&c.ob.acs)),
    },
    Identity {
        name: "nearly_kahler_integrability",
        description: "I(X,Y) = -4(∇_X A)Y",
        requires: &[NK],
        kind: Pointwise,
        tol: 1e-8,
        witness_only: false,
        eval: |c, _| {
            let acs = &c.ob.acs;
            let n = acs.dim();
            let i_form = integrability_form(acs);
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    for p in 0..n {
                        let v = i_form.component(&[i, j], p) + 4.0 * acs.nabla[(i * n + p) * n + j];
                        worst = worst.max(v.abs());
                    }
                }
            }
            Some(worst)
        },
    },
    Identity {
        name: "first_obstructure",
        description: "(R∧A)∧(A∧A) + 2 d∇A∧(d∇A∧A) - R∧A",
        requires: &[INT],
        kind: Pointwise,
        tol: 1e-7,
        witness_only: false,
        eval: |c, _| Some(c.ob.first_obstructure().max_abs()),
    },
    Identity {
        name: "d_integrability",
        description: "d∇I differentiated directly from I",
        requires: &[INT],
        kind: Pointwise,
        tol: 1e-7,
        witness_only: false,
        eval: |c, _| Some(c.ob.direct_obstructure().max_abs()),
    },
    Identity {
        name: "product_rule",
        description: "assembled first obstructure against the direct d∇I",
        requires: &[],
        kind: Pointwise,
        tol: 1e-7,
        witness_only: false,
        eval: |c, _| Some(c.ob.first_obstructure().sub(&c.ob.direct_obstructure()).max_abs()),
    },
    Identity {
        name: "simplified_obstructure",
        description: "½ R∧A + 2 d∇A∧(d∇A∧A)",
        requires: &[INT],
        kind: Pointwise,
        tol: 1e-7,
        witness_only: false,
        eval: |c, _| Some(c.ob.simplified_obstructure().max_abs()),
    },
    Identity {
        name: "simplified_matches_first",
        description: "first obstructure equals its simplified form",
        requires: &[],
        kind: Pointwise,
        tol: 1e-8,
        witness_only: false,
        eval: |c, _| Some(c.ob.first_obstructure().sub(&c.ob.simplified_obstructure()).max_abs()),
    },
    Identity {
        name: "substitution_coefficient",
        description: "(R∧A)∧(A∧A) = (3/2) R∧A",
        requires: &[],
        kind: Pointwise,
        tol: 1e-8,
        witness_only: false,
        eval: |c, _| Some(c.ob.substitution_coefficient().max_abs()),
    },
    Identity {
        name: "expanded_u1",
        description: "expanded vector equation with R(X1,X2)AX3 terms",
        requires: &[INT],
        kind: Framed,
        tol: 1e-7,
        witness_only: false,
        eval: |c, x| Some(norm(c, &c.ob.expanded_u1(x[0], x[1], x[2]))),
    },
    Identity {
        name: "expanded_u2",
        description: "expanded scalar equation with Rm(X1,X2,AX3,X4) terms",
        requires: &[INT],
        kind: Framed,
        tol: 1e-7,
        witness_only: false,
        eval: |c, x| Some(c.ob.expanded_u2(x).abs()),
    },
    Identity {
        name: "const_curv_u3",
        description: "constant-curvature vector equation with g(X, AY) terms",
        requires: &[INT, CC],
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| Some(norm(c, &c.ob.const_curv_u3(c.c?, x[0], x[1], x[2]))),
    },
    Identity {
        name: "const_curv_u4",
        description: "constant-curvature scalar equation with g(X, AY) terms",
        requires: &[INT, CC],
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| Some(c.ob.const_curv_u4(c.c?, x).abs()),
    },
    Identity {
        name: "const_curv_u5",
        description: "hermitian constant-curvature vector equation with Ω terms",
        requires: HERMITIAN_CC,
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| Some(norm(c, &c.ob.const_curv_u5(c.c?, x[0], x[1], x[2])?)),
    },
    Identity {
        name: "const_curv_u6",
        description: "hermitian constant-curvature scalar equation with Ω terms",
        requires: HERMITIAN_CC,
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| Some(c.ob.const_curv_u6(c.c?, x)?.abs()),
    },
    Identity {
        name: "u5_half_u3",
        description: "Ω form of the constant-curvature equation is half the g(X, AY) form",
        requires: &[ORTH],
        kind: Framed,
        tol: 1e-10,
        witness_only: false,
        eval: |c, x| {
            let k = c.c.unwrap_or(1.0);
            let u3 = c.ob.const_curv_u3(k, x[0], x[1], x[2]);
            let u5 = c.ob.const_curv_u5(k, x[0], x[1], x[2])?;
            let d: Vec<f64> = u5.iter().zip(&u3).map(|(p, q)| p - 0.5 * q).collect();
            Some(norm(c, &d))
        },
    },
    Identity {
        name: "phi_antisymmetry",
        description: "Φ_A alternates in its first three slots",
        requires: &[],
        kind: Framed,
        tol: 1e-12,
        witness_only: false,
        eval: |c, x| {
            let base = c.ob.phi(x);
            let mut worst: f64 = 0.0;
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let mut y = *x;
                y.swap(i, j);
                worst = worst.max((c.ob.phi(&y) + base).abs());
            }
            Some(worst)
        },
    },
    Identity {
        name: "phi_four_form",
        description: "Φ_A alternates in its last two slots and is A-invariant",
        requires: HERMITIAN_CC,
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| {
            let acs = &c.ob.acs;
            let base = c.ob.phi(x);
            let swapped = c.ob.phi(&[x[0], x[1], x[3], x[2]]);
            let ax: Vec<Vec<f64>> = x.iter().map(|v| acs.apply(v)).collect();
            let rot = c.ob.phi(&[&ax[0], &ax[1], &ax[2], &ax[3]]);
            Some((base + swapped).abs().max((rot - base).abs()))
        },
    },
    Identity {
        name: "phi_omega_square",
        description: "Φ_A + (c/2) Ω∧Ω",
        requires: HERMITIAN_CC,
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| Some(c.ob.phi_omega_square(c.c?, x)?.abs()),
    },
    Identity {
        name: "phi_nabla_expansion",
        description: "Φ_A against its three-term ∇A expression",
        requires: HERMITIAN_CC,
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| Some((c.ob.phi(x) - c.ob.phi_via_nabla(x)).abs()),
    },
    Identity {
        name: "claridad",
        description: "Φ_A against the half-sum of g(d∇A, d∇A) terms",
        requires: HERMITIAN_CC,
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| Some((c.ob.phi(x) - c.ob.phi_claridad(x)).abs()),
    },
    Identity {
        name: "aura",
        description: "g(d∇A(X,Y), (∇_Z A)Z)",
        requires: HERMITIAN_CC,
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| {
            let mut worst: f64 = 0.0;
            for i in 0..4 {
                for j in i + 1..4 {
                    for z in x {
                        worst = worst.max(c.ob.aura(x[i], x[j], z).abs());
                    }
                }
            }
            Some(worst)
        },
    },
    Identity {
        name: "omega_diagonal",
        description: "Ω_A((∇_X A)X, (∇_Y A)Y)",
        requires: HERMITIAN_CC,
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| over_pairs(x, |u, v| c.ob.omega_diagonal(u, v)),
    },
    Identity {
        name: "diagonal_plain",
        description: "d∇A(X,AX) + 2(∇_X A)X",
        requires: HERMITIAN,
        kind: Framed,
        tol: 1e-9,
        witness_only: true,
        eval: |c, x| Some(x.iter().map(|v| norm(c, &c.ob.diagonal_plain(v))).fold(0.0, f64::max)),
    },
    Identity {
        name: "diagonal_hermitian",
        description: "d∇A(X,AX) + 2A((∇_X A)X)",
        requires: HERMITIAN,
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| {
            Some(
                x.iter()
                    .map(|v| norm(c, &c.ob.diagonal_hermitian(v)))
                    .fold(0.0, f64::max),
            )
        },
    },
    Identity {
        name: "structure_eq",
        description: "d∇A ∧_g d∇A + 2c Ω∧Ω",
        requires: HERMITIAN_CC,
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| Some(c.ob.structure_eq(c.c?)?.eval(x)),
    },
    Identity {
        name: "norm_formula",
        description: "‖(∇_X A)Y‖² against g((∇_X A)X,(∇_Y A)Y) and the c/2 term",
        requires: HERMITIAN_CC,
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| {
            let k = c.c?;
            over_pairs(x, |u, v| c.ob.norm_formula(k, u, v))
        },
    },
    Identity {
        name: "norm_symmetry",
        description: "‖(∇_X A)Y‖ - ‖(∇_Y A)X‖",
        requires: HERMITIAN_CC,
        kind: Framed,
        tol: 1e-9,
        witness_only: false,
        eval: |c, x| over_pairs(x, |u, v| Some(c.ob.norm_symmetry(u, v))),
    },
];

/// The identities evaluated by the structure-equation report.
pub const OBSTRUCT_BUNDLE: [&str; 5] = [
    "structure_eq",
    "norm_formula",
    "aura",
    "omega_diagonal",
    "norm_symmetry",
];
