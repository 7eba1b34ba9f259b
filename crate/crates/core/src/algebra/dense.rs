use super::perm::{combinations, permutations, sort_with_sign, TupleIter};

/// Dense storage of an alternating multilinear map with a fixed-size value
/// block per index tuple. Offsets are row-major over the form indices, with
/// the value block innermost.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Dense {
    pub n: usize,
    pub degree: usize,
    pub value_len: usize,
    pub data: Vec<f64>,
}

impl Dense {
    pub fn zeros(n: usize, degree: usize, value_len: usize) -> Self {
        Dense {
            n,
            degree,
            value_len,
            data: vec![0.0; n.pow(degree as u32) * value_len],
        }
    }

    #[inline]
    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.degree);
        idx.iter().fold(0, |acc, &i| acc * self.n + i) * self.value_len
    }

    #[inline]
    pub fn value(&self, idx: &[usize]) -> &[f64] {
        let o = self.offset(idx);
        &self.data[o..o + self.value_len]
    }

    #[inline]
    pub fn value_mut(&mut self, idx: &[usize]) -> &mut [f64] {
        let o = self.offset(idx);
        let len = self.value_len;
        &mut self.data[o..o + len]
    }

    /// Projects onto the alternating part in the form indices.
    pub fn antisymmetrize(&mut self) {
        let perms = permutations(self.degree);
        let inv = 1.0 / perms.len() as f64;
        let mut out = Dense::zeros(self.n, self.degree, self.value_len);
        let mut acc = vec![0.0; self.value_len];
        let mut tuple = vec![0; self.degree];
        for c in combinations(self.n, self.degree) {
            acc.iter_mut().for_each(|a| *a = 0.0);
            for (p, s) in &perms {
                for (r, &pr) in p.iter().enumerate() {
                    tuple[r] = c[pr];
                }
                for (a, v) in acc.iter_mut().zip(self.value(&tuple)) {
                    *a += s * v;
                }
            }
            for (p, s) in &perms {
                for (r, &pr) in p.iter().enumerate() {
                    tuple[r] = c[pr];
                }
                for (o, a) in out.value_mut(&tuple).iter_mut().zip(&acc) {
                    *o = s * a * inv;
                }
            }
        }
        *self = out;
    }

    /// Largest deviation from exact antisymmetry in the form indices.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for t in TupleIter::new(self.n, self.degree) {
            let v = self.value(&t);
            match sort_with_sign(&t) {
                None => worst = v.iter().fold(worst, |w, x| w.max(x.abs())),
                Some((sorted, s)) => {
                    let base = self.value(&sorted);
                    for (x, b) in v.iter().zip(base) {
                        worst = worst.max((x - s * b).abs());
                    }
                }
            }
        }
        worst
    }

    /// Inserts `x` into the first form slot, lowering the degree by one.
    pub fn contract_first(&self, x: &[f64]) -> Dense {
        assert!(self.degree > 0);
        let mut out = Dense::zeros(self.n, self.degree - 1, self.value_len);
        let block = out.data.len();
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0.0 {
                continue;
            }
            let src = &self.data[i * block..(i + 1) * block];
            for (o, s) in out.data.iter_mut().zip(src) {
                *o += xi * s;
            }
        }
        out
    }

    /// Evaluates on `degree` vectors, returning the value block.
    pub fn eval(&self, xs: &[&[f64]]) -> Vec<f64> {
        assert_eq!(xs.len(), self.degree, "wrong number of arguments");
        let mut cur = self.clone();
        for x in xs {
            cur = cur.contract_first(x);
        }
        cur.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn axpy(&mut self, alpha: f64, other: &Dense) {
        debug_assert_eq!(self.data.len(), other.data.len());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
    }

    pub fn scaled(&self, alpha: f64) -> Dense {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|x| *x *= alpha);
        out
    }

    /// Re-reads the trailing `j` form slots as part of the value block.
    pub fn curry_last(&self, j: usize) -> Dense {
        assert!(j <= self.degree);
        Dense {
            n: self.n,
            degree: self.degree - j,
            value_len: self.value_len * self.n.pow(j as u32),
            data: self.data.clone(),
        }
    }
}
