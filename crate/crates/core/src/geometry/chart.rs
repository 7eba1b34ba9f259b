use rand::Rng;

use super::dual::{Dual, Scalar};
use crate::error::{Error, Result};

/// A coordinate chart carrying closed-form metric and structure fields.
///
/// The evaluators are generic so that the same code runs on plain floats and
/// on nested dual numbers.
pub trait Chart: Send + Sync {
    fn dim(&self) -> usize;

    fn label(&self) -> String;

    /// Coordinate box that points are sampled from.
    fn bounds(&self) -> Vec<(f64, f64)>;

    /// Whether `x` is a valid sample point. Defaults to membership in
    /// [`Chart::bounds`].
    fn in_domain(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && self.bounds().iter().zip(x).all(|(&(lo, hi), &v)| v >= lo && v <= hi)
    }

    /// Row-major metric components `g_ij(x)`.
    fn metric<S: Scalar>(&self, x: &[S]) -> Vec<S>;

    /// Row-major structure components `A^a_b(x)` (output index first).
    fn structure<S: Scalar>(&self, x: &[S]) -> Vec<S>;
}

/// A field with values, first and second partials at a point.
///
/// `d1[l * len + c] = ∂_l f_c`, `d2[(l * n + m) * len + c] = ∂_l ∂_m f_c`.
#[derive(Clone, Debug)]
pub struct Jet {
    pub n: usize,
    pub len: usize,
    pub val: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

impl Jet {
    pub fn partial(&self, l: usize) -> &[f64] {
        &self.d1[l * self.len..(l + 1) * self.len]
    }

    pub fn second(&self, l: usize, m: usize) -> &[f64] {
        let o = (l * self.n + m) * self.len;
        &self.d2[o..o + self.len]
    }
}

/// Metric and structure jets at one point.
#[derive(Clone, Debug)]
pub struct FieldJets {
    pub x: Vec<f64>,
    pub g: Jet,
    pub a: Jet,
}

type D2 = Dual<Dual<f64>>;

/// Evaluates metric and structure with nested duals seeded along every pair
/// of coordinate directions.
pub fn jets<C: Chart + ?Sized>(chart: &C, x: &[f64]) -> Result<FieldJets> {
    let n = chart.dim();
    if x.len() != n || !chart.in_domain(x) || x.iter().any(|v| !v.is_finite()) {
        return Err(Error::OutOfDomain {
            chart: chart.label(),
            point: x.to_vec(),
        });
    }
    let nn = n * n;
    let mut g = Jet {
        n,
        len: nn,
        val: vec![0.0; nn],
        d1: vec![0.0; n * nn],
        d2: vec![0.0; n * n * nn],
    };
    let mut a = g.clone();
    for i in 0..n {
        for j in i..n {
            let xs: Vec<D2> = (0..n)
                .map(|k| {
                    let di = if k == i { 1.0 } else { 0.0 };
                    let dj = if k == j { 1.0 } else { 0.0 };
                    Dual::new(Dual::new(x[k], di), Dual::new(dj, 0.0))
                })
                .collect();
            for (jet, vals) in [(&mut g, chart.metric(&xs)), (&mut a, chart.structure(&xs))] {
                assert_eq!(vals.len(), nn);
                for (c, v) in vals.iter().enumerate() {
                    if i == j {
                        jet.val[c] = v.re.re;
                        jet.d1[i * nn + c] = v.re.du;
                    }
                    jet.d2[(i * n + j) * nn + c] = v.du.du;
                    jet.d2[(j * n + i) * nn + c] = v.du.du;
                }
            }
        }
    }
    Ok(FieldJets { x: x.to_vec(), g, a })
}

/// Largest relative deviation between the dual-number metric partials and
/// central finite differences with step `h`.
pub fn metric_fd_residual<C: Chart + ?Sized>(chart: &C, x: &[f64], h: f64) -> Result<f64> {
    let j = jets(chart, x)?;
    let n = chart.dim();
    let scale = j.g.d1.iter().fold(1e-300f64, |m, v| m.max(v.abs()));
    let mut worst: f64 = 0.0;
    for l in 0..n {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[l] += h;
        xm[l] -= h;
        let gp = chart.metric(&xp);
        let gm = chart.metric(&xm);
        for c in 0..n * n {
            let fd = (gp[c] - gm[c]) / (2.0 * h);
            worst = worst.max((fd - j.g.d1[l * n * n + c]).abs() / scale);
        }
    }
    Ok(worst)
}

/// Uniform sample from the chart's box, rejecting points outside its domain.
pub fn sample_point<C: Chart + ?Sized, R: Rng>(chart: &C, rng: &mut R) -> Vec<f64> {
    let b = chart.bounds();
    loop {
        let x: Vec<f64> = b.iter().map(|&(lo, hi)| rng.random_range(lo..=hi)).collect();
        if chart.in_domain(&x) {
            return x;
        }
    }
}
