//! Dense exact rational matrices: products, determinants, solves and the
//! `G = U^T D U` factorization used by the lattice enumerator.

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

pub type RatMatrix = Vec<Vec<Rat>>;

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

/// `B diag(metric) B^T`: the Gram matrix of the rows of `B` under a diagonal form.
pub fn gram_of_rows(rows: &RatMatrix, metric: &[Rat]) -> RatMatrix {
    let n = rows.len();
    let mut g = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v: Rat = rows[i]
                .iter()
                .zip(&rows[j])
                .zip(metric)
                .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
                .map(|((a, b), m)| a * b * m)
                .sum();
            g[j][i] = v.clone();
            g[i][j] = v;
        }
    }
    g
}

/// Row vector times matrix.
pub fn vec_mul(v: &[Rat], m: &RatMatrix) -> Vec<Rat> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| v.iter().zip(m).filter(|(a, _)| !a.is_zero()).map(|(a, row)| a * &row[j]).sum())
        .collect()
}

/// Gaussian elimination to row-echelon form; returns the determinant.
#[allow(clippy::needless_range_loop)]
pub fn det(m: &RatMatrix) -> Rat {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        let pivot = a[col][col].clone();
        d *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    d
}

/// Solves the square system `A x = b`; `None` when `A` is singular.
#[allow(clippy::needless_range_loop)]
pub fn solve(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut aug: RatMatrix = a.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(p, col);
        let pivot = aug[col][col].clone();
        for c in col..=n {
            aug[col][c] /= &pivot;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let f = aug[r][col].clone();
            for c in col..=n {
                let t = &f * &aug[col][c];
                aug[r][c] -= t;
            }
        }
    }
    Some(aug.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

/// Matrix inverse by Gauss-Jordan; `None` when singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rat> = (0..n).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect();
        cols.push(solve(m, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Exact factorization `G = U^T D U` with `U` unit upper triangular, so that
/// `y^T G y = sum_i d_i (y_i + sum_{j>i} u_ij y_j)^2`.
/// Returns `None` unless `G` is positive definite.
pub fn udu(g: &RatMatrix) -> Option<(Vec<Rat>, RatMatrix)> {
    let n = g.len();
    let mut d: Vec<Rat> = Vec::with_capacity(n);
    let mut u = identity(n);
    for i in 0..n {
        let mut di = g[i][i].clone();
        for k in 0..i {
            di -= &u[k][i] * &u[k][i] * &d[k];
        }
        if !di.is_positive() {
            return None;
        }
        for j in i + 1..n {
            let mut s = g[i][j].clone();
            for k in 0..i {
                s -= &u[k][i] * &u[k][j] * &d[k];
            }
            u[i][j] = s / &di;
        }
        d.push(di);
    }
    Some((d, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(det(&a), rat(1));
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[-1, 2]]));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), rat(-1));
    }

    #[test]
    fn udu_reconstructs_quadratic_form() {
        let g = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let (d, u) = udu(&g).unwrap();
        assert_eq!(d, vec![rat(2), frac(3, 2), frac(4, 3)]);
        // U^T D U == G
        for i in 0..3 {
            for j in 0..3 {
                let s: Rat = (0..3).map(|k| &u[k][i] * &d[k] * &u[k][j]).sum();
                assert_eq!(s, g[i][j]);
            }
        }
        assert!(udu(&m(&[&[1, 2], &[2, 1]])).is_none());
    }

    #[test]
    fn gram_with_metric() {
        let rows = m(&[&[1, 1], &[0, 2]]);
        let g = gram_of_rows(&rows, &[frac(1, 2), frac(1, 2)]);
        assert_eq!(g, m(&[&[1, 1], &[1, 2]]));
    }
}
