//! Forward-mode dual numbers, nestable for second derivatives.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Field operations needed by the chart evaluators.
pub trait Scalar:
    Copy
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn cst(v: f64) -> Self;
    /// The plain real part (used for pivoting).
    fn re(&self) -> f64;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;

    fn zero() -> Self {
        Self::cst(0.0)
    }
    fn one() -> Self {
        Self::cst(1.0)
    }
    fn scale(self, c: f64) -> Self {
        self * Self::cst(c)
    }
}

impl Scalar for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn re(&self) -> f64 {
        *self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
}

/// `re + du·ε` with `ε² = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub du: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(re: T, du: T) -> Self {
        Dual { re, du }
    }

    pub fn var(re: T) -> Self {
        Dual { re, du: T::one() }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.du + o.du)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.du - o.du)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual::new(self.re * o.re, self.re * o.du + self.du * o.re)
    }
}

impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q = self.re / o.re;
        Dual::new(q, (self.du - q * o.du) / o.re)
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.du)
    }
}

impl<T: Scalar> AddAssign for Dual<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> SubAssign for Dual<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Scalar> MulAssign for Dual<T> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn cst(v: f64) -> Self {
        Dual::new(T::cst(v), T::zero())
    }
    fn re(&self) -> f64 {
        self.re.re()
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Dual::new(s, self.du / (s + s))
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        Dual::new(e, self.du * e)
    }
}

/// Solves `M X = B` for row-major `M` (n×n) and `B` (n×m) by Gaussian
/// elimination with partial pivoting on the real parts.
pub fn solve<S: Scalar>(n: usize, m: &[S], b: &[S], cols: usize) -> Option<Vec<S>> {
    let mut a = m.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n).max_by(|&p, &q| a[p * n + col].re().abs().total_cmp(&a[q * n + col].re().abs()))?;
        if a[piv * n + col].re().abs() < 1e-300 {
            return None;
        }
        if piv != col {
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
            }
            for j in 0..cols {
                x.swap(col * cols + j, piv * cols + j);
            }
        }
        let d = a[col * n + col];
        for r in col + 1..n {
            let f = a[r * n + col] / d;
            for j in col..n {
                let t = a[col * n + j];
                a[r * n + j] -= f * t;
            }
            for j in 0..cols {
                let t = x[col * cols + j];
                x[r * cols + j] -= f * t;
            }
        }
    }
    for col in (0..n).rev() {
        let d = a[col * n + col];
        for j in 0..cols {
            let mut s = x[col * cols + j];
            for k in col + 1..n {
                s -= a[col * n + k] * x[k * cols + j];
            }
            x[col * cols + j] = s / d;
        }
    }
    Some(x)
}
