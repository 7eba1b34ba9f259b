//! Cross product on ℝ⁷ from the imaginary octonions.

use crate::geometry::Scalar;

/// Oriented triples `(i, j, k)` with `e_i e_j = e_k`, indices mod 7 of the
/// imaginary units. Each is `(i, i+1, i+3)`.
pub const TRIPLES: [[usize; 3]; 7] = [
    [0, 1, 3],
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 0],
    [5, 6, 1],
    [6, 0, 2],
];

/// Structure constants `ε_ijk`, totally antisymmetric.
pub const fn structure_constants() -> [[[i8; 7]; 7]; 7] {
    let mut e = [[[0i8; 7]; 7]; 7];
    let mut t = 0;
    while t < 7 {
        let [i, j, k] = TRIPLES[t];
        e[i][j][k] = 1;
        e[j][k][i] = 1;
        e[k][i][j] = 1;
        e[j][i][k] = -1;
        e[i][k][j] = -1;
        e[k][j][i] = -1;
        t += 1;
    }
    e
}

const EPS: [[[i8; 7]; 7]; 7] = structure_constants();

/// `(x × y)_k = Σ ε_ijk x_i y_j`
pub fn cross<S: Scalar>(x: &[S], y: &[S]) -> [S; 7] {
    let mut out = [S::zero(); 7];
    for i in 0..7 {
        for j in 0..7 {
            for (k, o) in out.iter_mut().enumerate() {
                match EPS[i][j][k] {
                    1 => *o += x[i] * y[j],
                    -1 => *o -= x[i] * y[j],
                    _ => {}
                }
            }
        }
    }
    out
}
