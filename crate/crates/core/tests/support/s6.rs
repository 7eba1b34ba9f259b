//! Ambient model of the nearly-Kähler six-sphere built from Cayley–Dickson
//! doubling, independent of the library's octonion table and charts.
#![allow(dead_code)]

use rand::Rng;

fn conj(x: &[f64]) -> Vec<f64> {
    let mut y: Vec<f64> = x.iter().map(|v| -v).collect();
    y[0] = x[0];
    y
}

/// Cayley–Dickson product: (a,b)(c,d) = (ac − d*b, da + bc*).
pub fn mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = mul(a, c);
    let db = mul(&conj(d), b);
    let da = mul(d, a);
    let bc = mul(b, &conj(c));
    let mut out: Vec<f64> = ac.iter().zip(&db).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

fn embed(v: &[f64]) -> Vec<f64> {
    let mut o = vec![0.0];
    o.extend_from_slice(v);
    o
}

/// Cross product on R⁷ = Im O: the imaginary part of uv.
pub fn cross(u: &[f64], v: &[f64]) -> Vec<f64> {
    mul(&embed(u), &embed(v))[1..].to_vec()
}

pub fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn sub_proj(v: &[f64], e: &[f64]) -> Vec<f64> {
    let c = dot(v, e);
    v.iter().zip(e).map(|(a, b)| a - c * b).collect()
}

fn unit(v: Vec<f64>) -> Vec<f64> {
    let n = dot(&v, &v).sqrt();
    v.into_iter().map(|a| a / n).collect()
}

/// Point on the unit sphere together with the structure `J_p X = p × X`.
pub struct Sphere {
    pub p: Vec<f64>,
}

impl Sphere {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let v: Vec<f64> = (0..7).map(|_| rng.random_range(-1.0..1.0)).collect();
        Sphere { p: unit(v) }
    }

    pub fn j(&self, x: &[f64]) -> Vec<f64> {
        cross(&self.p, x)
    }

    /// `(∇_X J)Y`, the tangential part of `X × Y`.
    pub fn nabla_j(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        sub_proj(&cross(x, y), &self.p)
    }

    pub fn d_j(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let a = self.nabla_j(x, y);
        let b = self.nabla_j(y, x);
        a.iter().zip(&b).map(|(p, q)| p - q).collect()
    }

    pub fn omega(&self, x: &[f64], y: &[f64]) -> f64 {
        dot(&self.j(x), y)
    }

    pub fn random_tangent<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        let v: Vec<f64> = (0..7).map(|_| rng.random_range(-1.0..1.0)).collect();
        unit(sub_proj(&v, &self.p))
    }

    /// Orthonormal `(X, Y, JX, JY)` with `Y ⟂ X, JX`.
    pub fn structured_frame<R: Rng>(&self, rng: &mut R) -> [Vec<f64>; 4] {
        let x = self.random_tangent(rng);
        let jx = self.j(&x);
        let y = unit(sub_proj(&sub_proj(&self.random_tangent(rng), &x), &jx));
        let jy = self.j(&y);
        [x, y, jx, jy]
    }

    /// `(d∇J ∧_g d∇J + 2c Ω∧Ω)(X₁..X₄)` as a brute-force signed sum over
    /// the 24 orderings with weight `1/(2!2!)`.
    pub fn structure_residual(&self, c: f64, f: &[Vec<f64>; 4]) -> f64 {
        let mut s = 0.0;
        for (perm, sign) in perms4() {
            let x: Vec<&[f64]> = perm.iter().map(|&i| f[i].as_slice()).collect();
            let dd = dot(&self.d_j(x[0], x[1]), &self.d_j(x[2], x[3]));
            let oo = self.omega(x[0], x[1]) * self.omega(x[2], x[3]);
            s += sign * (dd + 2.0 * c * oo);
        }
        s / 4.0
    }

    /// LHS − RHS of the norm formula on a pair.
    pub fn norm_residual(&self, c: f64, x: &[f64], y: &[f64]) -> f64 {
        let v = self.nabla_j(x, y);
        let lhs = dot(&v, &v);
        let rhs = dot(&self.nabla_j(x, x), &self.nabla_j(y, y))
            - 0.5 * c * (self.omega(x, y).powi(2) - dot(x, x) * dot(y, y) + dot(x, y).powi(2));
        lhs - rhs
    }
}

fn perms4() -> Vec<([usize; 4], f64)> {
    let mut out = vec![];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
                        continue;
                    }
                    let mut inv = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if p[i] > p[j] {
                                inv += 1;
                            }
                        }
                    }
                    out.push((p, if inv % 2 == 0 { 1.0 } else { -1.0 }));
                }
            }
        }
    }
    out
}
