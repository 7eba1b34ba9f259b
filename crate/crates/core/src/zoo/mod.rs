//! Closed-form scenarios: charts, metrics and structure fields with their
//! declared properties.

pub mod octonion;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{dual::solve, Chart, Scalar};

/// Declared ground truth for a scenario. Every flag is re-verified by tests.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Properties {
    /// Constant sectional curvature, when the metric has one.
    pub constant_curvature: Option<f64>,
    pub integrable: bool,
    pub orthogonal: bool,
    pub kahler: bool,
    pub nearly_kahler: bool,
}

/// Serializable scenario description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Descriptor {
    RoundSphere6 {
        radius: f64,
    },
    FlatTorus6,
    Hopf6,
    ProductS2Cubed {
        radii: [f64; 3],
    },
    PerturbedSphere6 {
        radius: f64,
        eps: f64,
        /// Width of the Gaussian bump added to `g_00`.
        width: f64,
        /// Replace the metric by `½(g + g(A·,A·))`.
        averaged: bool,
    },
}

pub const SCENARIO_NAMES: [&str; 5] = [
    "round_sphere6",
    "flat_torus6",
    "hopf6",
    "product_s2_cubed",
    "perturbed_sphere6",
];

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidScenario(msg.into())
}

impl Descriptor {
    pub fn name(&self) -> &'static str {
        match self {
            Descriptor::RoundSphere6 { .. } => "round_sphere6",
            Descriptor::FlatTorus6 => "flat_torus6",
            Descriptor::Hopf6 => "hopf6",
            Descriptor::ProductS2Cubed { .. } => "product_s2_cubed",
            Descriptor::PerturbedSphere6 { .. } => "perturbed_sphere6",
        }
    }

    /// Builds a descriptor from a scenario name and `key=value` parameters,
    /// filling in defaults.
    pub fn from_params(name: &str, params: &[(String, String)]) -> Result<Self> {
        let num = |key: &str, default: f64| -> Result<f64> {
            match params.iter().rev().find(|(k, _)| k == key) {
                Some((_, v)) => v
                    .parse()
                    .map_err(|_| bad(format!("parameter {key}={v} is not a number"))),
                None => Ok(default),
            }
        };
        let allowed: &[&str] = match name {
            "round_sphere6" => &["r", "radius"],
            "flat_torus6" | "hopf6" => &[],
            "product_s2_cubed" => &["r1", "r2", "r3"],
            "perturbed_sphere6" => &["r", "radius", "eps", "width", "averaged"],
            _ => return Err(bad(format!("unknown scenario `{name}`"))),
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(bad(format!("scenario `{name}` has no parameter `{k}`")));
        }
        let radius = |d: f64| -> Result<f64> { num("radius", num("r", d)?) };
        let d = match name {
            "round_sphere6" => Descriptor::RoundSphere6 { radius: radius(1.0)? },
            "flat_torus6" => Descriptor::FlatTorus6,
            "hopf6" => Descriptor::Hopf6,
            "product_s2_cubed" => Descriptor::ProductS2Cubed {
                radii: [num("r1", 1.0)?, num("r2", 1.0)?, num("r3", 1.0)?],
            },
            _ => {
                let averaged = match params.iter().rev().find(|(k, _)| k == "averaged") {
                    None => true,
                    Some((_, v)) => match v.as_str() {
                        "true" | "1" => true,
                        "false" | "0" => false,
                        _ => return Err(bad(format!("averaged={v} is not a boolean"))),
                    },
                };
                Descriptor::PerturbedSphere6 {
                    radius: radius(1.0)?,
                    eps: num("eps", 0.0)?,
                    width: num("width", 0.5)?,
                    averaged,
                }
            }
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |v: f64, what: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(bad(format!("{what} must be positive and finite, got {v}")))
            }
        };
        match *self {
            Descriptor::RoundSphere6 { radius } => pos(radius, "radius"),
            Descriptor::FlatTorus6 | Descriptor::Hopf6 => Ok(()),
            Descriptor::ProductS2Cubed { radii } => radii.iter().try_for_each(|&r| pos(r, "radius")),
            Descriptor::PerturbedSphere6 { radius, eps, width, .. } => {
                pos(radius, "radius")?;
                pos(width, "width")?;
                if !eps.is_finite() {
                    return Err(bad("eps must be finite"));
                }
                // the bump is at most 1 and the round metric is at least
                // 4r²/s_max² times the identity on the sampling box
                let s_max = 1.0 + 6.0 * SPHERE_BOX * SPHERE_BOX;
                let floor = 4.0 * radius * radius / (s_max * s_max);
                if eps <= -floor {
                    return Err(bad(format!(
                        "eps = {eps} makes g + eps*h indefinite on the sampling box (need eps > {:.6})",
                        -floor
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("descriptor serializes")
    }

    pub fn from_toml(s: &str) -> Result<Self> {
        let d: Descriptor = toml::from_str(s).map_err(|e| bad(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }
}

/// Half-width of the stereographic sampling boxes.
pub const SPHERE_BOX: f64 = 0.6;
const HOPF_BOX: f64 = 1.2;
const HOPF_SHELL: (f64, f64) = (0.5, 2.0);

/// An immutable scenario: descriptor plus derived data.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    desc: Descriptor,
}

impl Scenario {
    pub fn new(desc: Descriptor) -> Result<Self> {
        desc.validate()?;
        Ok(Scenario { desc })
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.desc
    }

    pub fn name(&self) -> &'static str {
        self.desc.name()
    }

    pub fn properties(&self) -> Properties {
        match self.desc {
            Descriptor::RoundSphere6 { radius } => Properties {
                constant_curvature: Some(1.0 / (radius * radius)),
                integrable: false,
                orthogonal: true,
                kahler: false,
                nearly_kahler: true,
            },
            Descriptor::FlatTorus6 => Properties {
                constant_curvature: Some(0.0),
                integrable: true,
                orthogonal: true,
                kahler: true,
                nearly_kahler: false,
            },
            Descriptor::Hopf6 => Properties {
                constant_curvature: None,
                integrable: true,
                orthogonal: true,
                kahler: false,
                nearly_kahler: false,
            },
            Descriptor::ProductS2Cubed { .. } => Properties {
                constant_curvature: None,
                integrable: true,
                orthogonal: true,
                kahler: true,
                nearly_kahler: false,
            },
            Descriptor::PerturbedSphere6 {
                radius, eps, averaged, ..
            } => {
                let round = eps == 0.0;
                Properties {
                    constant_curvature: round.then(|| 1.0 / (radius * radius)),
                    integrable: false,
                    orthogonal: round || averaged,
                    kahler: false,
                    nearly_kahler: round,
                }
            }
        }
    }

    /// Curvature constant of the unperturbed model (differs from
    /// `properties().constant_curvature` only for perturbed spheres).
    pub fn nominal_curvature(&self) -> Option<f64> {
        match self.desc {
            Descriptor::PerturbedSphere6 { radius, .. } => Some(1.0 / (radius * radius)),
            _ => self.properties().constant_curvature,
        }
    }

    pub fn documentation(&self) -> &'static str {
        match self.desc {
            Descriptor::RoundSphere6 { .. } => {
                "Round S^6 of radius r in a stereographic chart; structure p x X from the octonion cross product."
            }
            Descriptor::FlatTorus6 => "Flat torus T^6 with the constant block complex structure.",
            Descriptor::Hopf6 => "C^3 minus the origin with metric |z|^-2 times Euclidean and the standard complex structure.",
            Descriptor::ProductS2Cubed { .. } => "Product of three round 2-spheres with the product complex structure.",
            Descriptor::PerturbedSphere6 { .. } => {
                "Round S^6 metric plus eps times a Gaussian bump in g_00, optionally averaged over the octonionic structure."
            }
        }
    }
}

impl std::str::FromStr for Scenario {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scenario::new(Descriptor::from_params(s, &[])?)
    }
}

pub fn round_sphere6(radius: f64) -> Result<Scenario> {
    Scenario::new(Descriptor::RoundSphere6 { radius })
}

pub fn flat_torus6() -> Scenario {
    Scenario {
        desc: Descriptor::FlatTorus6,
    }
}

pub fn hopf6() -> Scenario {
    Scenario {
        desc: Descriptor::Hopf6,
    }
}

pub fn product_s2_cubed(radii: [f64; 3]) -> Result<Scenario> {
    Scenario::new(Descriptor::ProductS2Cubed { radii })
}

pub fn perturbed_sphere6(radius: f64, eps: f64, width: f64, averaged: bool) -> Result<Scenario> {
    Scenario::new(Descriptor::PerturbedSphere6 {
        radius,
        eps,
        width,
        averaged,
    })
}

/// Inverse stereographic map onto the sphere of radius `r` in ℝ^{m+1} and
/// its Jacobian (row-major, (m+1)×m).
fn stereographic<S: Scalar>(u: &[S], r: f64) -> (Vec<S>, Vec<S>) {
    let m = u.len();
    let mut q = S::zero();
    for &v in u {
        q += v * v;
    }
    let s = S::one() + q;
    let inv = S::one() / s;
    let inv2 = inv * inv;
    let mut phi: Vec<S> = u.iter().map(|&v| (v * inv).scale(2.0 * r)).collect();
    phi.push(((q - S::one()) * inv).scale(r));
    let mut jac = vec![S::zero(); (m + 1) * m];
    for a in 0..m {
        for b in 0..m {
            let mut v = -(u[a] * u[b] * inv2).scale(2.0);
            if a == b {
                v += inv;
            }
            jac[a * m + b] = v.scale(2.0 * r);
        }
    }
    for b in 0..m {
        jac[m * m + b] = (u[b] * inv2).scale(4.0 * r);
    }
    (phi, jac)
}

fn gram<S: Scalar>(rows: usize, cols: usize, jac: &[S]) -> Vec<S> {
    let mut g = vec![S::zero(); cols * cols];
    for i in 0..cols {
        for j in i..cols {
            let mut s = S::zero();
            for a in 0..rows {
                s += jac[a * cols + i] * jac[a * cols + j];
            }
            g[i * cols + j] = s;
            g[j * cols + i] = s;
        }
    }
    g
}

/// `A(X) = p × X` pulled back through the chart: solves `(JᵀJ) A = Jᵀ (p × J)`.
fn octonionic_structure<S: Scalar>(u: &[S], r: f64) -> Vec<S> {
    let (phi, jac) = stereographic(u, r);
    let p: Vec<S> = phi.iter().map(|&v| v.scale(1.0 / r)).collect();
    let g = gram(7, 6, &jac);
    let mut rhs = vec![S::zero(); 36];
    for b in 0..6 {
        let col: Vec<S> = (0..7).map(|a| jac[a * 6 + b]).collect();
        let v = octonion::cross(&p, &col);
        for i in 0..6 {
            let mut s = S::zero();
            for a in 0..7 {
                s += jac[a * 6 + i] * v[a];
            }
            rhs[i * 6 + b] = s;
        }
    }
    solve(6, &g, &rhs, 6).expect("stereographic Gram matrix is invertible")
}

fn standard_structure<S: Scalar>(n: usize) -> Vec<S> {
    let mut a = vec![S::zero(); n * n];
    for b in 0..n / 2 {
        // A e_{2b} = e_{2b+1}, A e_{2b+1} = −e_{2b}
        a[(2 * b + 1) * n + 2 * b] = S::one();
        a[(2 * b) * n + 2 * b + 1] = -S::one();
    }
    a
}

fn sphere_metric<S: Scalar>(u: &[S], r: f64) -> Vec<S> {
    let (_, jac) = stereographic(u, r);
    gram(u.len() + 1, u.len(), &jac)
}

impl Chart for Scenario {
    fn dim(&self) -> usize {
        6
    }

    fn label(&self) -> String {
        self.name().to_string()
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        match self.desc {
            Descriptor::FlatTorus6 => vec![(0.0, std::f64::consts::TAU); 6],
            Descriptor::Hopf6 => vec![(-HOPF_BOX, HOPF_BOX); 6],
            _ => vec![(-SPHERE_BOX, SPHERE_BOX); 6],
        }
    }

    fn in_domain(&self, x: &[f64]) -> bool {
        let boxed = x.len() == 6 && self.bounds().iter().zip(x).all(|(&(lo, hi), &v)| v >= lo && v <= hi);
        match self.desc {
            Descriptor::Hopf6 => {
                let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                boxed && r >= HOPF_SHELL.0 && r <= HOPF_SHELL.1
            }
            _ => boxed,
        }
    }

    fn metric<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        match self.desc {
            Descriptor::RoundSphere6 { radius } => sphere_metric(x, radius),
            Descriptor::FlatTorus6 => {
                let mut g = vec![S::zero(); 36];
                for i in 0..6 {
                    g[i * 7] = S::one();
                }
                g
            }
            Descriptor::Hopf6 => {
                let mut q = S::zero();
                for &v in x {
                    q += v * v;
                }
                let f = S::one() / q;
                let mut g = vec![S::zero(); 36];
                for i in 0..6 {
                    g[i * 7] = f;
                }
                g
            }
            Descriptor::ProductS2Cubed { radii } => {
                let mut g = vec![S::zero(); 36];
                for (f, &r) in radii.iter().enumerate() {
                    let b = sphere_metric(&x[2 * f..2 * f + 2], r);
                    for i in 0..2 {
                        for j in 0..2 {
                            g[(2 * f + i) * 6 + 2 * f + j] = b[i * 2 + j];
                        }
                    }
                }
                g
            }
            Descriptor::PerturbedSphere6 {
                radius,
                eps,
                width,
                averaged,
            } => {
                let mut g = sphere_metric(x, radius);
                let mut q = S::zero();
                for &v in x {
                    q += v * v;
                }
                g[0] += (-q.scale(0.5 / (width * width))).exp().scale(eps);
                if !averaged {
                    return g;
                }
                let a = octonionic_structure(x, radius);
                let mut avg = vec![S::zero(); 36];
                for i in 0..6 {
                    for j in 0..6 {
                        let mut s = S::zero();
                        for k in 0..6 {
                            for l in 0..6 {
                                s += a[k * 6 + i] * g[k * 6 + l] * a[l * 6 + j];
                            }
                        }
                        avg[i * 6 + j] = (g[i * 6 + j] + s).scale(0.5);
                    }
                }
                avg
            }
        }
    }

    fn structure<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        match self.desc {
            Descriptor::RoundSphere6 { radius } | Descriptor::PerturbedSphere6 { radius, .. } => {
                octonionic_structure(x, radius)
            }
            _ => standard_structure(6),
        }
    }
}
