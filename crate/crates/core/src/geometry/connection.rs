use super::chart::{jets, Chart, FieldJets, Jet};
use crate::algebra::{EndForm, InnerProduct, VForm};
use crate::error::{Error, Result};

/// Levi-Civita connection at a point, with first partials of the symbols.
#[derive(Clone, Debug)]
pub struct ConnectionAt {
    pub x: Vec<f64>,
    n: usize,
    g: InnerProduct,
    dg: Vec<f64>,
    gamma: Vec<f64>,
    dgamma: Vec<f64>,
}

impl ConnectionAt {
    /// Christoffel symbols of the second kind from a metric jet.
    pub fn from_metric(x: &[f64], gj: &Jet) -> Result<Self> {
        let n = gj.n;
        let g = InnerProduct::new(n, gj.val.clone()).map_err(|e| match e {
            Error::NotSymmetric { .. } => e,
            _ => Error::SingularMetric { point: x.to_vec() },
        })?;
        let gi = g.inverse();
        let nn = n * n;
        let dg = |m: usize, i: usize, j: usize| gj.d1[m * nn + i * n + j];
        let d2g = |p: usize, m: usize, i: usize, j: usize| gj.d2[(p * n + m) * nn + i * n + j];

        // first kind Γ_{l,ij} and its partials
        let mut first = vec![0.0; n * nn];
        let mut dfirst = vec![0.0; n * n * nn];
        for l in 0..n {
            for i in 0..n {
                for j in 0..n {
                    first[l * nn + i * n + j] = 0.5 * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
                    for p in 0..n {
                        dfirst[(p * n + l) * nn + i * n + j] =
                            0.5 * (d2g(p, i, j, l) + d2g(p, j, i, l) - d2g(p, l, i, j));
                    }
                }
            }
        }
        // ∂_p g^{kl} = −g^{ka} ∂_p g_ab g^{bl}
        let mut dginv = vec![0.0; n * nn];
        for p in 0..n {
            let mut t = vec![0.0; nn];
            for k in 0..n {
                for b in 0..n {
                    t[k * n + b] = (0..n).map(|a| gi[k * n + a] * dg(p, a, b)).sum();
                }
            }
            for k in 0..n {
                for l in 0..n {
                    dginv[p * nn + k * n + l] = -(0..n).map(|b| t[k * n + b] * gi[b * n + l]).sum::<f64>();
                }
            }
        }
        let mut gamma = vec![0.0; n * nn];
        let mut dgamma = vec![0.0; n * n * nn];
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let v: f64 = (0..n).map(|l| gi[k * n + l] * first[l * nn + i * n + j]).sum();
                    gamma[k * nn + i * n + j] = v;
                    gamma[k * nn + j * n + i] = v;
                    for p in 0..n {
                        let d: f64 = (0..n)
                            .map(|l| {
                                dginv[p * nn + k * n + l] * first[l * nn + i * n + j]
                                    + gi[k * n + l] * dfirst[(p * n + l) * nn + i * n + j]
                            })
                            .sum();
                        dgamma[(p * n + k) * nn + i * n + j] = d;
                        dgamma[(p * n + k) * nn + j * n + i] = d;
                    }
                }
            }
        }
        Ok(ConnectionAt {
            x: x.to_vec(),
            n,
            g,
            dg: gj.d1.clone(),
            gamma,
            dgamma,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn metric(&self) -> &InnerProduct {
        &self.g
    }

    /// `Γ^k_ij`
    #[inline]
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> f64 {
        let n = self.n;
        self.gamma[k * n * n + i * n + j]
    }

    /// `∂_p Γ^k_ij`
    #[inline]
    pub fn dgamma(&self, p: usize, k: usize, i: usize, j: usize) -> f64 {
        let n = self.n;
        self.dgamma[(p * n + k) * n * n + i * n + j]
    }

    /// `max |∂_i g_jk − Γ^l_ij g_lk − Γ^l_ik g_jl|`
    pub fn metricity_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut r = self.dg[i * n * n + j * n + k];
                    for l in 0..n {
                        r -= self.gamma(l, i, j) * self.g.entry(l, k) + self.gamma(l, i, k) * self.g.entry(j, l);
                    }
                    worst = worst.max(r.abs());
                }
            }
        }
        worst
    }

    /// Largest `|Γ^k_ij − Γ^k_ji|`.
    pub fn torsion_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max((self.gamma(k, i, j) - self.gamma(k, j, i)).abs());
                }
            }
        }
        worst
    }

    /// Riemann curvature `R(X,Y)` as an endomorphism-valued 2-form.
    pub fn curvature(&self) -> CurvatureAt {
        let n = self.n;
        let r = EndForm::from_fn(n, 2, |t, l, k| {
            let (i, j) = (t[0], t[1]);
            let mut v = self.dgamma(i, l, j, k) - self.dgamma(j, l, i, k);
            for m in 0..n {
                v += self.gamma(l, i, m) * self.gamma(m, j, k) - self.gamma(l, j, m) * self.gamma(m, i, k);
            }
            v
        });
        CurvatureAt::new(r, &self.g)
    }
}

/// Connection at a chart point.
pub fn christoffel<C: Chart + ?Sized>(chart: &C, x: &[f64]) -> Result<ConnectionAt> {
    let j = jets(chart, x)?;
    ConnectionAt::from_metric(x, &j.g)
}

/// Curvature at a chart point.
pub fn curvature<C: Chart + ?Sized>(chart: &C, x: &[f64]) -> Result<CurvatureAt> {
    Ok(christoffel(chart, x)?.curvature())
}

#[derive(Clone, Debug)]
pub struct CurvatureAt {
    r: EndForm,
    rm: Vec<f64>,
}

impl CurvatureAt {
    pub fn new(r: EndForm, g: &InnerProduct) -> Self {
        let n = r.dim();
        let mut rm = vec![0.0; n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        rm[((i * n + j) * n + k) * n + l] =
                            (0..n).map(|a| r.component(&[i, j], a, k) * g.entry(a, l)).sum();
                    }
                }
            }
        }
        CurvatureAt { r, rm }
    }

    pub fn endform(&self) -> &EndForm {
        &self.r
    }

    /// `Rm(e_i, e_j, e_k, e_l) = g(R(e_i,e_j)e_k, e_l)`
    pub fn rm(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let n = self.r.dim();
        self.rm[((i * n + j) * n + k) * n + l]
    }

    pub fn rm_eval(&self, x: &[f64], y: &[f64], z: &[f64], w: &[f64]) -> f64 {
        let n = self.r.dim();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                let c = x[i] * y[j];
                if c == 0.0 {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        s += c * z[k] * w[l] * self.rm(i, j, k, l);
                    }
                }
            }
        }
        s
    }

    /// Largest component of `R(X,Y)W + R(Y,W)X + R(W,X)Y` over basis vectors.
    pub fn bianchi_residual(&self) -> f64 {
        let n = self.r.dim();
        let c = |x, y, a, w| self.r.component(&[x, y], a, w);
        let mut worst: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                for w in 0..n {
                    for a in 0..n {
                        worst = worst.max((c(x, y, a, w) + c(y, w, a, x) + c(w, x, a, y)).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest violation of `Rm(X,Y,Z,W) = −Rm(X,Y,W,Z) = Rm(Z,W,X,Y)`.
    pub fn pair_symmetry_residual(&self) -> f64 {
        let n = self.r.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.rm(i, j, k, l);
                        worst = worst
                            .max((v + self.rm(i, j, l, k)).abs())
                            .max((v - self.rm(k, l, i, j)).abs());
                    }
                }
            }
        }
        worst
    }
}

/// `R(X,Y)Z = c(g(Y,Z)X − g(X,Z)Y)` as an endomorphism-valued 2-form.
pub fn const_curv_r(c: f64, g: &InnerProduct) -> EndForm {
    let n = g.dim();
    EndForm::from_fn(n, 2, |t, a, b| {
        let (i, j) = (t[0], t[1]);
        let di = if a == i { 1.0 } else { 0.0 };
        let dj = if a == j { 1.0 } else { 0.0 };
        c * (g.entry(j, b) * di - g.entry(i, b) * dj)
    })
}

/// Sectional curvature of the plane spanned by `x`, `y`.
pub fn sectional(curv: &CurvatureAt, g: &InnerProduct, x: &[f64], y: &[f64]) -> Result<f64> {
    let area2 = g.norm2(x) * g.norm2(y) - g.dot(x, y).powi(2);
    if area2 < 1e-12 {
        return Err(Error::DegeneratePlane { area2 });
    }
    Ok(curv.rm_eval(x, y, y, x) / area2)
}

/// A vector-valued form together with its coordinate partials.
#[derive(Clone, Debug)]
pub struct VFormJet {
    pub form: VForm,
    /// `partials[l] = ∂_l form`
    pub partials: Vec<VForm>,
}

/// A vector-valued form with first and second coordinate partials.
#[derive(Clone, Debug)]
pub struct VFormJet2 {
    pub form: VForm,
    pub partials: Vec<VForm>,
    /// `seconds[l * n + m] = ∂_l ∂_m form`
    pub seconds: Vec<VForm>,
}

impl VFormJet2 {
    /// The structure field `A` seen as a 1-form, from its matrix jet.
    pub fn from_matrix_jet(a: &Jet) -> Self {
        let n = a.n;
        VFormJet2 {
            form: VForm::from_matrix(n, &a.val),
            partials: (0..n).map(|l| VForm::from_matrix(n, a.partial(l))).collect(),
            seconds: (0..n * n)
                .map(|lm| VForm::from_matrix(n, a.second(lm / n, lm % n)))
                .collect(),
        }
    }

    pub fn first_order(&self) -> VFormJet {
        VFormJet {
            form: self.form.clone(),
            partials: self.partials.clone(),
        }
    }
}

fn skip(t: &[usize], m: usize) -> Vec<usize> {
    t.iter().enumerate().filter(|&(i, _)| i != m).map(|(_, &v)| v).collect()
}

/// `(d∇ρ)_{i₀…i_k} = Σ_m (−1)^m (∂_{i_m} ρ + Γ_{i_m} ρ)_{i₀…î_m…i_k}`
pub fn cov_ext_deriv(conn: &ConnectionAt, rho: &VFormJet) -> Result<VForm> {
    let n = conn.dim();
    let k = rho.form.degree();
    if k + 1 > n {
        return Err(Error::BadDegree {
            degree: k + 1,
            reason: "exceeds dimension",
        });
    }
    Ok(VForm::from_fn(n, k + 1, |t, a| {
        let mut s = 0.0;
        for m in 0..=k {
            let rest = skip(t, m);
            let im = t[m];
            let mut v = rho.partials[im].component(&rest, a);
            for c in 0..n {
                v += conn.gamma(a, im, c) * rho.form.component(&rest, c);
            }
            s += if m % 2 == 0 { v } else { -v };
        }
        s
    }))
}

/// `d∇ρ` together with its coordinate partials.
pub fn cov_ext_deriv_jet(conn: &ConnectionAt, rho: &VFormJet2) -> Result<VFormJet> {
    let n = conn.dim();
    let k = rho.form.degree();
    let form = cov_ext_deriv(conn, &rho.first_order())?;
    let partials = (0..n)
        .map(|l| {
            VForm::from_fn(n, k + 1, |t, a| {
                let mut s = 0.0;
                for m in 0..=k {
                    let rest = skip(t, m);
                    let im = t[m];
                    let mut v = rho.seconds[l * n + im].component(&rest, a);
                    for c in 0..n {
                        v += conn.dgamma(l, a, im, c) * rho.form.component(&rest, c)
                            + conn.gamma(a, im, c) * rho.partials[l].component(&rest, c);
                    }
                    s += if m % 2 == 0 { v } else { -v };
                }
                s
            })
        })
        .collect();
    Ok(VFormJet { form, partials })
}

/// `(∇_i A)^a_b`, stored at `[(i * n + a) * n + b]`.
pub fn cov_deriv_end(conn: &ConnectionAt, a: &Jet) -> Vec<f64> {
    let n = conn.dim();
    let mut out = vec![0.0; n * n * n];
    for i in 0..n {
        let da = a.partial(i);
        for p in 0..n {
            for b in 0..n {
                let mut v = da[p * n + b];
                for m in 0..n {
                    v += conn.gamma(p, i, m) * a.val[m * n + b] - conn.gamma(m, i, b) * a.val[p * n + m];
                }
                out[(i * n + p) * n + b] = v;
            }
        }
    }
    out
}

/// Everything the identities need at one chart point.
#[derive(Clone, Debug)]
pub struct PointGeometry {
    pub jets: FieldJets,
    pub conn: ConnectionAt,
    pub curv: CurvatureAt,
}

impl PointGeometry {
    pub fn at<C: Chart + ?Sized>(chart: &C, x: &[f64]) -> Result<Self> {
        let jets = jets(chart, x)?;
        let conn = ConnectionAt::from_metric(x, &jets.g)?;
        let curv = conn.curvature();
        Ok(PointGeometry { jets, conn, curv })
    }

    pub fn dim(&self) -> usize {
        self.conn.dim()
    }

    pub fn metric(&self) -> &InnerProduct {
        self.conn.metric()
    }
}
