use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Int, IntMatrix};

/// Row-style Hermite normal form `H = U·A`.
///
/// `h` holds the nonzero rows only; the full product `U·A` has `h` on top
/// followed by `nrows - rank` zero rows, so the bottom rows of `u` span the
/// left kernel of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Pivots are positive and every entry above a pivot lies in `[0, pivot)`.
pub fn hnf(a: &IntMatrix) -> HermiteForm {
    let m = a.nrows();
    let n = a.ncols();
    let mut w = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut row = 0;

    for col in 0..n {
        if row == m {
            break;
        }
        for i in row + 1..m {
            if w.get(i, col).is_zero() {
                continue;
            }
            let x = w.get(row, col).clone();
            let y = w.get(i, col).clone();
            let e = x.extended_gcd(&y);
            let (p, q) = (e.x, e.y);
            let (r, s) = (-(&y / &e.gcd), &x / &e.gcd);
            w.mix_rows(row, i, &p, &q, &r, &s);
            u.mix_rows(row, i, &p, &q, &r, &s);
        }
        if w.get(row, col).is_zero() {
            continue;
        }
        if w.get(row, col).is_negative() {
            w.negate_row(row);
            u.negate_row(row);
        }
        let pivot = w.get(row, col).clone();
        for i in 0..row {
            let q: Int = w.get(i, col).div_floor(&pivot);
            if !q.is_zero() {
                w.add_row_multiple(i, row, &-&q);
                u.add_row_multiple(i, row, &-&q);
            }
        }
        pivots.push(col);
        row += 1;
    }

    let rows = w.into_rows().into_iter().take(row).collect();
    HermiteForm {
        h: IntMatrix::from_rows(n, rows),
        u,
        pivots,
    }
}
