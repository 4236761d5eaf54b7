use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Int, IntMatrix, IntVector};

/// Determinant of a square matrix by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> Int {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "determinant of a non-square matrix");
    if n == 0 {
        return Int::one();
    }
    let mut m: Vec<Vec<Int>> = a.rows().iter().map(|r| r.to_vec()).collect();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Int::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Adjugate matrix, so that `A · adj(A) = det(A) · I`.
pub fn adjugate(a: &IntMatrix) -> IntMatrix {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "adjugate of a non-square matrix");
    if n == 1 {
        return IntMatrix::identity(1);
    }
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor_rows = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| a.get(r, c).clone())
                        .collect()
                })
                .collect();
            let d = determinant(&IntMatrix::from_rows(n - 1, minor_rows));
            let cof = if (i + j) % 2 == 0 { d } else { -d };
            adj.set(j, i, cof);
        }
    }
    adj
}

/// Solves `A·x = b` over the rationals for square nonsingular `A`.
pub fn solve_rational(a: &IntMatrix, b: &IntVector) -> Option<Vec<BigRational>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    assert_eq!(n, b.len());
    let mut m: Vec<Vec<BigRational>> = a
        .rows()
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| {
            r.iter()
                .chain(std::iter::once(bi))
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        let pivot = m[k][k].clone();
        for x in m[k].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = m[k].clone();
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for (x, y) in m[i][k..].iter_mut().zip(&pivot_row[k..]) {
                    *x -= y * &f;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}
